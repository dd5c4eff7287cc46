use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::engine::{make_monic, sub_mul, GbEngine, MTerm, ModuleOrder};
use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring, RingContext};

/// Default cap on processed S-pairs per Gröbner basis computation.
pub const DEFAULT_MAX_PAIRS: u64 = 2_000_000;

pub(crate) fn to_mterms(p: &Polynomial) -> Vec<MTerm> {
    p.terms().iter().map(|(m, c)| (m.clone(), 0, c.clone())).collect()
}

pub(crate) fn from_mterms(ring: &Ring, v: Vec<MTerm>) -> Polynomial {
    Polynomial::from_sorted(ring, v.into_iter().map(|(m, _, c)| (m, c)).collect())
}

/// A reduced Gröbner basis. Elements live in a ring carrying the basis' order.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    morder: ModuleOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    /// Ring of the elements (the input ring re-ordered).
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lead_monomials(&self) -> Vec<&Monomial> {
        self.elements.iter().map(|p| p.lead_monomial().unwrap()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|p| p.is_constant())
    }

    fn reducer(&self, m: &Monomial) -> Option<&Polynomial> {
        let mut best: Option<&Polynomial> = None;
        for g in &self.elements {
            if g.lead_monomial().unwrap().divides(m) && best.is_none_or(|b| b.len() > g.len()) {
                best = Some(g);
            }
        }
        best
    }

    /// Remainder of `p` on division by the basis, returned in `p`'s ring.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let q = p.reorder(&self.ring).expect("normal form across rings");
        let mut done: Vec<MTerm> = Vec::new();
        let mut cur = to_mterms(&q);
        let mut pos = 0;
        while pos < cur.len() {
            match self.reducer(&cur[pos].0) {
                None => {
                    done.push(cur[pos].clone());
                    pos += 1;
                }
                Some(g) => {
                    let (lm, _) = g.lead_term().unwrap();
                    let quo = lm.quotient_of(&cur[pos].0).unwrap();
                    let c = cur[pos].2.clone();
                    let gt = to_mterms(g);
                    cur = sub_mul(&self.morder, &cur[pos + 1..], &gt[1..], &quo, &c);
                    pos = 0;
                }
            }
        }
        from_mterms(&self.ring, done).reorder(p.ring()).unwrap()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every S-polynomial reduces to zero.
    pub fn check_s_pairs(&self) -> bool {
        let e = &self.elements;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let (a, b) = (e[i].lead_monomial().unwrap(), e[j].lead_monomial().unwrap());
                let l = a.lcm(b);
                let one = self.ring.field().one();
                let s = e[i].mul_term(&a.quotient_of(&l).unwrap(), &one).sub_ref(&e[j].mul_term(&b.quotient_of(&l).unwrap(), &one));
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements.iter().map(|p| p.to_string())).finish()
    }
}

/// Weight vector in which every generator is homogeneous, standard degree if possible.
fn default_weights(ring: &Ring) -> Vec<i64> {
    vec![1; ring.nvars()]
}

/// Runs Buchberger on `gens` (all from one ring) for `order`.
pub fn buchberger_weighted(gens: &[Polynomial], ring: &Ring, order: &MonomialOrder, weights: &[i64], max_pairs: u64) -> Result<GroebnerBasis> {
    let target = ring.with_order(order.clone())?;
    let morder = ModuleOrder::ideal(order.clone());
    let mut eng = GbEngine::new(morder.clone(), weights.to_vec(), vec![0], max_pairs);
    for g in gens {
        if !same_ring(g.ring(), ring) && !g.ring().compatible(ring) {
            return Err(Error::ContextMismatch);
        }
        if !g.is_zero() {
            eng.add_generator(to_mterms(&g.reorder(&target)?));
        }
    }
    eng.complete(None)?;
    let elements = eng.reduced_basis().into_iter().map(|v| from_mterms(&target, v)).collect();
    Ok(GroebnerBasis { ring: target, morder, elements })
}

/// Reduced Gröbner basis of `(gens)` under `order`.
pub fn buchberger(gens: &[Polynomial], ring: &Ring, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_weighted(gens, ring, order, &default_weights(ring), DEFAULT_MAX_PAIRS)
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(p)
}

struct IdealInner {
    ring: Ring,
    gens: Vec<Polynomial>,
    weights: Vec<i64>,
    max_pairs: u64,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

/// An ideal given by generators, with Gröbner bases cached per order.
#[derive(Clone)]
pub struct Ideal(Arc<IdealInner>);

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::ContextMismatch);
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Self::build(ring, out, default_weights(ring), DEFAULT_MAX_PAIRS))
    }

    fn build(ring: &Ring, gens: Vec<Polynomial>, weights: Vec<i64>, max_pairs: u64) -> Self {
        Ideal(Arc::new(IdealInner { ring: ring.clone(), gens, weights, max_pairs, cache: RwLock::new(HashMap::new()) }))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::build(ring, Vec::new(), default_weights(ring), DEFAULT_MAX_PAIRS)
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::build(ring, vec![Polynomial::one(ring)], default_weights(ring), DEFAULT_MAX_PAIRS)
    }

    /// Maximal homogeneous ideal of the variables `vars`.
    pub fn of_variables(ring: &Ring, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|i| Polynomial::var(ring, i)).collect();
        Self::build(ring, gens, default_weights(ring), DEFAULT_MAX_PAIRS)
    }

    /// Same generators with sugar weights `w` (a grading making them homogeneous).
    pub fn with_weights(&self, w: Vec<i64>) -> Self {
        assert_eq!(w.len(), self.0.ring.nvars());
        Self::build(&self.0.ring, self.0.gens.clone(), w, self.0.max_pairs)
    }

    pub fn with_max_pairs(&self, max_pairs: u64) -> Self {
        Self::build(&self.0.ring, self.0.gens.clone(), self.0.weights.clone(), max_pairs)
    }

    /// Same limits and weights, other generators.
    pub fn derive(&self, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Self::build(&self.0.ring, gens, self.0.weights.clone(), self.0.max_pairs)
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.0.gens
    }

    pub fn weights(&self) -> &[i64] {
        &self.0.weights
    }

    pub fn max_pairs(&self) -> u64 {
        self.0.max_pairs
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.is_empty()
    }

    /// Reduced Gröbner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.0.cache.read().unwrap().get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger_weighted(&self.0.gens, &self.0.ring, order, &self.0.weights, self.0.max_pairs)?);
        self.0.cache.write().unwrap().insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Basis for the ring's own order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(self.0.ring.order())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.gb()?.normal_form(p))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let gb = self.gb()?;
        Ok(other.gens().iter().all(|g| gb.contains(g)))
    }

    /// Whether all generators are homogeneous for the ideal's weights.
    pub fn is_homogeneous(&self) -> bool {
        self.0.gens.iter().all(|g| g.weighted_degree(&self.0.weights).is_some())
    }

    /// A minimal homogeneous generating set, chosen greedily in increasing
    /// degree and input order.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let ring = &self.0.ring;
        let mut eng = GbEngine::new(ModuleOrder::ideal(ring.order().clone()), self.0.weights.clone(), vec![0], self.0.max_pairs);
        let ids: Vec<usize> = self.0.gens.iter().map(|g| eng.add_generator(to_mterms(g))).collect();
        eng.complete(None)?;
        let gb = GroebnerBasis {
            ring: ring.clone(),
            morder: eng.order().clone(),
            elements: eng.reduced_basis().into_iter().map(|v| from_mterms(ring, v)).collect(),
        };
        self.0.cache.write().unwrap().entry(ring.order().clone()).or_insert_with(|| Arc::new(gb));
        let mut out: Vec<(i64, usize)> = ids
            .iter()
            .enumerate()
            .filter(|(_, &id)| eng.generator_kept(id) == Some(true))
            .map(|(k, _)| (self.0.gens[k].weighted_degree(&self.0.weights).unwrap(), k))
            .collect();
        out.sort();
        Ok(out.into_iter().map(|(_, k)| self.0.gens[k].clone()).collect())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.gens.iter().map(|p| p.to_string())).finish()
    }
}

fn check_same(i: &Ideal, j: &Ideal) -> Result<()> {
    if same_ring(i.ring(), j.ring()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// Generators of `I ∩ k[keep]`, read off an elimination basis.
pub fn elimination_ideal(i: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let ring = i.ring();
    let elim: Vec<usize> = (0..ring.nvars()).filter(|v| !keep.contains(v)).collect();
    if elim.is_empty() {
        return Ok(i.clone());
    }
    let order = MonomialOrder::elimination(ring.nvars(), &elim);
    let gb = i.groebner(&order)?;
    let gens = gb
        .elements()
        .iter()
        .filter(|p| elim.iter().all(|&v| !p.involves(v)))
        .map(|p| p.reorder(ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(i.derive(gens))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
}

pub fn ideal_compose(i: &Ideal, j: &Ideal, op: IdealOp) -> Result<Ideal> {
    check_same(i, j)?;
    Ok(match op {
        IdealOp::Sum => i.derive(i.gens().iter().chain(j.gens()).cloned().collect()),
        IdealOp::Product => {
            let mut g = Vec::with_capacity(i.gens().len() * j.gens().len());
            for a in i.gens() {
                for b in j.gens() {
                    g.push(a.mul_ref(b));
                }
            }
            i.derive(g)
        }
    })
}

/// `I^r` as the list of products of `r` generators (multisets, no interreduction).
pub fn ideal_power(i: &Ideal, r: u32) -> Ideal {
    if r == 0 {
        return i.derive(vec![Polynomial::one(i.ring())]);
    }
    let g = i.gens();
    let mut cur: Vec<(usize, Polynomial)> = g.iter().cloned().enumerate().collect();
    for _ in 1..r {
        let mut next = Vec::new();
        for (last, p) in &cur {
            for (k, q) in g.iter().enumerate().skip(*last) {
                next.push((k, p.mul_ref(q)));
            }
        }
        cur = next;
    }
    i.derive(cur.into_iter().map(|(_, p)| p).collect())
}

/// Ring with one extra variable prepended, ordered to eliminate it.
fn ring_with_aux(ring: &Ring, base: &str) -> Result<Ring> {
    let name = ring.fresh_name(base);
    let mut vars = vec![name];
    vars.extend(ring.vars().iter().cloned());
    let n = vars.len();
    RingContext::build(ring.field(), vars, None, MonomialOrder::elimination(n, &[0]))
}

/// `I ∩ J` from `u I + (1 - u) J` with `u` eliminated.
pub fn intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    if i.is_zero() || j.is_zero() {
        return Ok(i.derive(Vec::new()));
    }
    let ring = i.ring();
    let ext = ring_with_aux(ring, "u")?;
    let u = Polynomial::var(&ext, 0);
    let one_minus_u = Polynomial::one(&ext).sub_ref(&u);
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(u.mul_ref(&g.map_to(&ext)?));
    }
    for g in j.gens() {
        gens.push(one_minus_u.mul_ref(&g.map_to(&ext)?));
    }
    let mut w = vec![0];
    w.extend_from_slice(i.weights());
    let gb = buchberger_weighted(&gens, &ext, ext.order(), &w, i.max_pairs())?;
    let out = gb
        .elements()
        .iter()
        .filter(|p| !p.involves(0))
        .map(|p| p.map_to(ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(i.derive(out))
}

/// `I : (g) = (I ∩ (g)) / g`.
pub fn colon_principal(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::Input("colon by the zero polynomial".into()));
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    let gi = i.derive(vec![g.clone()]);
    let meet = intersection(i, &gi)?;
    let gens = meet
        .gens()
        .iter()
        .map(|p| p.exact_div(g).ok_or_else(|| Error::Internal("intersection with (g) not divisible by g".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(i.derive(gens))
}

/// `I : J`, intersected over the generators of `J`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(Error::Input("colon by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let c = colon_principal(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersection(&a, &c)?,
        });
    }
    let out = acc.unwrap();
    // Report a reduced basis as generators.
    let gens = out.gb()?.elements().to_vec();
    Ok(i.derive(gens))
}

/// `I : J^∞` and the first exponent `e` with `I : J^e = I : J^(e+1)`.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<(Ideal, usize)> {
    check_same(i, j)?;
    let mut cur = i.clone();
    let mut e = 0;
    loop {
        let next = colon(&cur, j)?;
        if ideal_equal(&next, &cur)? {
            return Ok((cur, e));
        }
        cur = next;
        e += 1;
    }
}

/// Whether the reduced bases for the ring's order coincide.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    check_same(i, j)?;
    let (a, b) = (i.gb()?, j.gb()?);
    Ok(a.elements() == b.elements())
}

/// Kernel of `k[Y] -> k[X]/a`, `Y_j -> forms[j]`, as an ideal of `k[Y]`.
///
/// `target_names` name the `Y` variables; `source` is `a`.
pub fn kernel_of_map(forms: &[Polynomial], source: &Ideal, target_names: &[String]) -> Result<Ideal> {
    if forms.len() != target_names.len() {
        return Err(Error::LengthMismatch { expected: forms.len(), got: target_names.len() });
    }
    let xring = source.ring().clone();
    if forms.iter().any(|f| !same_ring(f.ring(), &xring)) {
        return Err(Error::ContextMismatch);
    }
    let delta = forms.iter().find(|f| !f.is_zero()).map(|f| f.total_degree() as i64).unwrap_or(1).max(1);
    let nx = xring.nvars();
    let mut vars: Vec<String> = xring.vars().to_vec();
    vars.extend(target_names.iter().cloned());
    let n = vars.len();
    let order = MonomialOrder::elimination(n, &(0..nx).collect::<Vec<_>>());
    let ext = RingContext::build(xring.field(), vars, Some(nx), order)?;
    let mut gens = Vec::new();
    for g in source.gens() {
        gens.push(g.map_to(&ext)?);
    }
    for (j, f) in forms.iter().enumerate() {
        gens.push(Polynomial::var(&ext, nx + j).sub_ref(&f.map_to(&ext)?));
    }
    let mut w = vec![1; nx];
    w.extend(std::iter::repeat_n(delta, forms.len()));
    let gb = buchberger_weighted(&gens, &ext, ext.order(), &w, source.max_pairs())?;
    let yring = RingContext::build(xring.field(), target_names.to_vec(), None, MonomialOrder::GrevLex)?;
    let out = gb
        .elements()
        .iter()
        .filter(|p| (0..nx).all(|v| !p.involves(v)))
        .map(|p| p.map_to(&yring))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&yring, out)?.with_max_pairs(source.max_pairs()))
}

/// Largest independent variable set for a family of support masks, as
/// `nvars - min hitting set`.
pub(crate) fn max_independent_set(nvars: usize, supports: &[u64]) -> usize {
    fn search(supports: &[u64], hit: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        let Some(&s) = supports.iter().find(|&&s| s & hit == 0) else {
            *best = size;
            return;
        };
        let mut bits = s;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            search(supports, hit | b, size + 1, best);
            bits &= bits - 1;
        }
    }
    // Minimal supports only.
    let mut sup: Vec<u64> = supports.to_vec();
    sup.sort_by_key(|s| s.count_ones());
    let mut min: Vec<u64> = Vec::new();
    for s in sup {
        if !min.iter().any(|&m| m & !s == 0) {
            min.push(s);
        }
    }
    let mut best = nvars + 1;
    search(&min, 0, 0, &mut best);
    nvars - best
}

/// Krull dimension of `k[vars]/I`, from the leading monomials of a basis.
pub fn krull_dimension(i: &Ideal) -> Result<usize> {
    let gb = i.gb()?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = i.ring().nvars();
    if n > 64 {
        return Err(Error::Input("dimension computation supports at most 64 variables".into()));
    }
    let supports: Vec<u64> = gb.lead_monomials().iter().map(|m| m.support_mask()).collect();
    Ok(max_independent_set(n, &supports))
}

/// Weighted degree truncated basis helper: whether `p` lies in the ideal
/// generated by `gens`, using only S-pairs up to the weighted degree of `p`.
/// Requires everything homogeneous for `weights` with positive weights.
pub fn contains_homogeneous(gens: &[Polynomial], ring: &Ring, weights: &[i64], targets: &[Polynomial], max_pairs: u64) -> Result<bool> {
    let mut eng = GbEngine::new(ModuleOrder::ideal(ring.order().clone()), weights.to_vec(), vec![0], max_pairs);
    for g in gens {
        if !g.is_zero() {
            eng.add_generator(to_mterms(g));
        }
    }
    let mut targets: Vec<&Polynomial> = targets.iter().filter(|p| !p.is_zero()).collect();
    targets.sort_by_key(|p| p.weighted_degree(weights).unwrap_or(i64::MAX));
    for t in targets {
        let d = t.weighted_degree(weights).ok_or(Error::NotHomogeneous)?;
        eng.complete(Some(d))?;
        let mut r = eng.reduce(to_mterms(t));
        make_monic(&mut r);
        if !r.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
