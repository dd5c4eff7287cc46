use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::ring::{same_ring, Ring};
use crate::coeff::Scalar;
use crate::error::{Error, Result};

pub type Term = (Monomial, Scalar);

/// Sparse polynomial; terms strictly descending under the ring's order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub x: u32,
    pub y: u32,
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Selector for [`poly_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic.
pub fn poly_arithmetic(p: &Polynomial, q: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    if !same_ring(&p.ring, &q.ring) {
        return Err(Error::ContextMismatch);
    }
    Ok(match op {
        PolyOp::Add => p.add_ref(q),
        PolyOp::Sub => p.sub_ref(q),
        PolyOp::Mul => p.mul_ref(q),
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts the caller that `terms` already satisfy the invariants.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(self.ring.field().zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Common weighted degree, if weighted-homogeneous and nonzero.
    pub fn weighted_degree(&self, w: &[i64]) -> Option<i64> {
        let d = self.terms.first()?.0.weighted_degree(w);
        self.terms.iter().all(|t| t.0.weighted_degree(w) == d).then_some(d)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exps()[var] as u32).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exps()[var] > 0)
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.involves(i)).collect()
    }

    /// `(x-degree, y-degree)` for a bihomogeneous polynomial of a split ring.
    pub fn bidegree(&self) -> Result<Bidegree> {
        let split = self.ring.block_split().ok_or(Error::NotBihomogeneous)?;
        let n = self.ring.nvars();
        let bd = |m: &Monomial| Bidegree { x: m.partial_degree(0..split), y: m.partial_degree(split..n) };
        let first = self.terms.first().ok_or(Error::NotBihomogeneous)?;
        let b = bd(&first.0);
        if self.terms.iter().all(|t| bd(&t.0) == b) {
            Ok(b)
        } else {
            Err(Error::NotBihomogeneous)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        self.merge(other, true)
    }

    pub fn neg_ref(&self) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let k = m.mul(n);
                let v = c.mul(d);
                match acc.get_mut(&k) {
                    Some(e) => *e = e.add(&v),
                    None => {
                        acc.insert(k, v);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exps()[var];
                let m2 = m.decrement(var)?;
                let c2 = c.mul(&f.from_i64(e as i64));
                (!c2.is_zero()).then_some((m2, c2))
            })
            .collect();
        // Lowering one exponent may reorder terms under non-graded orders.
        Self::from_terms(&self.ring, terms)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(same_ring(&self.ring, &d.ring), "ring mismatch");
        let (lm, lc) = d.lead_term()?;
        if d.terms.len() == 1 {
            let inv = lc.inv()?;
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((lm.quotient_of(m)?, c.mul(&inv)));
            }
            return Some(Polynomial { ring: self.ring.clone(), terms: out });
        }
        let inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead_term() {
            let q = lm.quotient_of(m)?;
            let qc = c.mul(&inv);
            rem = rem.sub_ref(&d.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Polynomial::from_sorted(&self.ring, quot))
    }

    /// The same polynomial sorted for `target`, a ring with the same variables and field.
    pub fn reorder(&self, target: &Ring) -> Result<Self> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if !self.ring.compatible(target) {
            return Err(Error::ContextMismatch);
        }
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Moves into `target` by matching variable names; every variable used
    /// here must exist there.
    pub fn map_to(&self, target: &Ring) -> Result<Self> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(Error::FieldMismatch(self.ring.field(), target.field()));
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            map.push(target.var_index(name));
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = smallvec::SmallVec::<[u16; 16]>::from_elem(0, n);
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    match map[i] {
                        Some(j) => e[j] = x,
                        None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                    }
                }
            }
            terms.push((Monomial::from_vec(e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Ring map: variable `i` goes to `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target = images[0].ring().clone();
        if images.iter().any(|p| !same_ring(p.ring(), &target)) {
            return Err(Error::ContextMismatch);
        }
        if self.ring.field() != target.field() {
            return Err(Error::FieldMismatch(self.ring.field(), target.field()));
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut acc = Polynomial::zero(&target);
        let mut pieces: Vec<Polynomial> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_ref(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_ref(&powers[i][e as usize]);
            }
            pieces.push(t);
            if pieces.len() >= 64 {
                for p in pieces.drain(..) {
                    acc = acc.add_ref(&p);
                }
            }
        }
        for p in pieces {
            acc = acc.add_ref(&p);
        }
        Ok(acc)
    }

    /// Coefficients as a polynomial in `var`: entry `k` is the coefficient of `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without_var(var);
            parts[e as usize].push((rest, c.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect()
    }

    pub fn from_coefficients_in(ring: &Ring, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((m.with_var(var, m.exps()[var] + k as u16), c.clone()));
            }
        }
        Polynomial::from_terms(ring, terms)
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, names)?;
            }
        }
        Ok(())
    }
}
