//! Rational maps, Rees algebra presentations, special fibers and reduction numbers.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::linalg::{Echelon, SparseRow};
use crate::coeff::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger_weighted, contains_homogeneous, ideal_power, kernel_of_map, krull_dimension, Ideal, DEFAULT_MAX_PAIRS,
};
use crate::poly::{fresh_name, parse_polynomial, Bidegree, Monomial, MonomialOrder, Polynomial, Ring, RingContext};

/// A representative `(f_0, ..., f_m)` of a rational map from `V(a) ⊂ P^n`.
#[derive(Clone, Debug)]
pub struct RationalMap {
    ring: Ring,
    source: Ideal,
    forms: Vec<Polynomial>,
    delta: u32,
}

impl RationalMap {
    pub fn new(ring: &Ring, source: Vec<Polynomial>, forms: Vec<Polynomial>) -> Result<Self> {
        Self::with_max_pairs(ring, source, forms, DEFAULT_MAX_PAIRS)
    }

    pub fn with_max_pairs(ring: &Ring, source: Vec<Polynomial>, forms: Vec<Polynomial>, max_pairs: u64) -> Result<Self> {
        if ring.order() != &MonomialOrder::GrevLex || ring.block_split().is_some() {
            return Err(Error::InvalidDescriptor("source ring must be a plain graded polynomial ring".into()));
        }
        if forms.len() < 2 {
            return Err(Error::InvalidDescriptor("at least two forms are required".into()));
        }
        let mut delta = None;
        for f in &forms {
            if f.is_zero() {
                return Err(Error::InvalidDescriptor("a form is zero".into()));
            }
            let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if delta.is_some_and(|e| e != d) {
                return Err(Error::InvalidDescriptor("forms have different degrees".into()));
            }
            delta = Some(d);
        }
        if source.iter().any(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        let source = Ideal::new(ring, source)?.with_max_pairs(max_pairs);
        if source.is_unit()? {
            return Err(Error::InvalidDescriptor("source ideal is the unit ideal".into()));
        }
        let gb = source.gb()?;
        if forms.iter().all(|f| gb.contains(f)) {
            return Err(Error::InvalidDescriptor("all forms vanish on the source".into()));
        }
        Ok(RationalMap { ring: ring.clone(), source, forms, delta: delta.unwrap() })
    }

    /// Parses variables, source ideal and forms from text.
    pub fn parse(field: FieldSpec, vars: &[&str], source: &[&str], forms: &[&str]) -> Result<Self> {
        let ring = RingContext::new(field, vars)?;
        let src = source.iter().map(|s| parse_polynomial(s, &ring)).collect::<Result<Vec<_>>>()?;
        let fs = forms.iter().map(|s| parse_polynomial(s, &ring)).collect::<Result<Vec<_>>>()?;
        Self::new(&ring, src, fs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn source(&self) -> &Ideal {
        &self.source
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    /// Common degree of the forms.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Dimension of the ambient source projective space.
    pub fn n(&self) -> usize {
        self.ring.nvars() - 1
    }

    /// Dimension of the target projective space.
    pub fn m(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn max_pairs(&self) -> u64 {
        self.source.max_pairs()
    }

    pub fn source_is_projective_space(&self) -> bool {
        self.source.is_zero()
    }

    pub fn base_ideal(&self) -> Ideal {
        self.source.derive(self.forms.clone())
    }

    /// Names `Y0..Ym` of the target coordinates, renamed on clashes with source variables.
    pub fn y_names(&self) -> Vec<String> {
        let mut taken: Vec<String> = self.ring.vars().to_vec();
        let mut out = Vec::with_capacity(self.forms.len());
        for j in 0..self.forms.len() {
            let name = fresh_name(&taken, &format!("Y{j}"));
            taken.push(name.clone());
            out.push(name);
        }
        out
    }

    /// The bigraded ring `k[X, Y]`.
    pub fn xy_ring(&self) -> Result<Ring> {
        RingContext::bigraded(self.field(), self.ring.vars(), &self.y_names())
    }

    /// The target coordinate ring `k[Y]`.
    pub fn y_ring(&self) -> Result<Ring> {
        RingContext::build(self.field(), self.y_names(), None, MonomialOrder::GrevLex)
    }

    /// Same map with the forms reordered and rescaled.
    pub fn transformed(&self, perm: &[usize], scales: &[Scalar]) -> Result<Self> {
        let forms = perm.iter().zip(scales).map(|(&i, c)| self.forms[i].scale(c)).collect();
        Self::with_max_pairs(&self.ring, self.source.gens().to_vec(), forms, self.max_pairs())
    }

    /// Same map over another coefficient field (coefficients reduced mod p).
    pub fn over_field(&self, field: FieldSpec) -> Result<Self> {
        let ring = self.ring.with_field(field);
        let conv = |p: &Polynomial| -> Result<Polynomial> {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let c = match c.as_rat() {
                        Some(r) => field.from_ratio(&r.numer(), &r.denom())?,
                        None => field.from_i64(c.to_i64().unwrap_or(0)),
                    };
                    Ok((m.clone(), c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::from_terms(&ring, terms))
        };
        let src = self.source.gens().iter().map(conv).collect::<Result<Vec<_>>>()?;
        let forms = self.forms.iter().map(conv).collect::<Result<Vec<_>>>()?;
        Self::with_max_pairs(&ring, src, forms, self.max_pairs())
    }
}

/// Presentation `k[X, Y]/J` of the Rees algebra of the base ideal.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    ring: Ring,
    ideal: Ideal,
    min_gens: Vec<(Polynomial, Bidegree)>,
    relation_type: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesJson {
    pub generators: Vec<String>,
    pub bidegrees: Vec<[u32; 2]>,
    pub relation_type: u32,
}

impl ReesPresentation {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn min_gens(&self) -> &[(Polynomial, Bidegree)] {
        &self.min_gens
    }

    pub fn relation_type(&self) -> u32 {
        self.relation_type
    }

    pub fn bidegrees(&self) -> Vec<Bidegree> {
        self.min_gens.iter().map(|g| g.1).collect()
    }

    pub fn to_json(&self) -> ReesJson {
        ReesJson {
            generators: self.min_gens.iter().map(|g| g.0.to_string()).collect(),
            bidegrees: self.min_gens.iter().map(|g| [g.1.x, g.1.y]).collect(),
            relation_type: self.relation_type,
        }
    }
}

/// `J = (a, Y_j - f_j t) ∩ k[X, Y]`, with a minimal bihomogeneous generating set.
pub fn rees_ideal(f: &RationalMap) -> Result<ReesPresentation> {
    let xring = f.ring();
    let nx = xring.nvars();
    let ny = f.forms().len();
    let xy = f.xy_ring()?;
    let t = fresh_name(xy.vars(), "t");
    let mut vars = vec![t];
    vars.extend(xy.vars().iter().cloned());
    let order = MonomialOrder::blocks(&[vec![0], (1..=nx + ny).collect()]);
    let ext = RingContext::build(f.field(), vars, None, order)?;
    let tv = Polynomial::var(&ext, 0);
    let mut gens = Vec::new();
    for g in f.source().gens() {
        gens.push(g.map_to(&ext)?);
    }
    for (j, fj) in f.forms().iter().enumerate() {
        gens.push(Polynomial::var(&ext, 1 + nx + j).sub_ref(&fj.map_to(&ext)?.mul_ref(&tv)));
    }
    let d = f.delta() as i64;
    let mut w = vec![1i64; 1 + nx];
    w.extend(std::iter::repeat_n(d + 1, ny));
    let gb = buchberger_weighted(&gens, &ext, ext.order(), &w, f.max_pairs())?;
    let jgens = gb
        .elements()
        .iter()
        .filter(|p| !p.involves(0))
        .map(|p| p.map_to(&xy))
        .collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&xy, jgens)?.with_max_pairs(f.max_pairs());
    let mins = ideal.minimal_generators()?;
    let mut min_gens = mins.into_iter().map(|p| p.bidegree().map(|b| (p, b))).collect::<Result<Vec<_>>>()?;
    min_gens.sort_by_key(|(_, b)| (b.x + b.y, b.y));
    let relation_type = min_gens.iter().map(|g| g.1.y).max().unwrap_or(0);
    let pres = ReesPresentation { ring: xy, ideal, min_gens, relation_type };
    check_rees(f, &pres)?;
    Ok(pres)
}

/// Every minimal generator vanishes on `Y = f` modulo `a`, and the Koszul
/// forms `f_i Y_j - f_j Y_i` lie in `J`.
fn check_rees(f: &RationalMap, p: &ReesPresentation) -> Result<()> {
    let xring = f.ring();
    let nx = xring.nvars();
    let mut images: Vec<Polynomial> = (0..nx).map(|i| Polynomial::var(xring, i)).collect();
    images.extend(f.forms().iter().cloned());
    let src = f.source().gb()?;
    for (g, _) in p.min_gens() {
        if !src.contains(&g.substitute(&images)?) {
            return Err(Error::Internal(format!("Rees generator {g} does not vanish on the graph")));
        }
    }
    let xy = p.ring();
    let jgb = p.ideal().gb()?;
    let lifted = f.forms().iter().map(|q| q.map_to(xy)).collect::<Result<Vec<_>>>()?;
    for i in 0..lifted.len() {
        for j in i + 1..lifted.len() {
            let k = lifted[i].mul_ref(&Polynomial::var(xy, nx + j)).sub_ref(&lifted[j].mul_ref(&Polynomial::var(xy, nx + i)));
            if !jgb.contains(&k) {
                return Err(Error::Internal("Koszul relation missing from the Rees ideal".into()));
            }
        }
    }
    Ok(())
}

/// Minimal generators of x-degree one.
pub fn x_linear_part(p: &ReesPresentation) -> Vec<Polynomial> {
    p.min_gens().iter().filter(|g| g.1.x == 1).map(|g| g.0.clone()).collect()
}

/// Defining ideal of the image in `k[Y]`.
pub fn special_fiber(f: &RationalMap) -> Result<Ideal> {
    kernel_of_map(f.forms(), f.source(), &f.y_names())
}

/// Krull dimension of the special fiber ring.
pub fn analytic_spread(f: &RationalMap) -> Result<usize> {
    let b = special_fiber(f)?;
    if b.is_zero() {
        return Ok(f.forms().len());
    }
    krull_dimension(&b)
}

/// Parameters of the randomized reduction number search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionSearch {
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: i64,
    pub cap: usize,
}

impl Default for ReductionSearch {
    fn default() -> Self {
        ReductionSearch { trials: 3, seed: 0x5eed, coeff_bound: 50, cap: 6 }
    }
}

/// Outcome of the randomized search: the least `r` found with
/// `J I^r = I^(r+1)` for a random `J` of `ell` generic combinations.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionNumber {
    pub r: usize,
    pub ell: usize,
    /// Coefficients of the successful combinations, one row per generator of `J`.
    pub combination: Vec<Vec<String>>,
    pub seed: u64,
    pub trials: usize,
    /// Always true: the value bounds the reduction number from above.
    pub upper_estimate: bool,
}

/// Least `n <= cap` with `I^(n+1) ⊆ J I^n + a`, trying `search.trials` random reductions.
///
/// Equality `J I^n = I^(n+1)` in `A = k[X]/a` is containment in one degree,
/// since `J I^n ⊆ I^(n+1)` always holds. Without a source ideal that degree
/// piece is spanned by products of generators, so containment is a rank test.
pub fn reduction_number(f: &RationalMap, ell: usize, search: &ReductionSearch) -> Result<ReductionNumber> {
    let field = f.field();
    let ring = f.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut powers = PowerCache::new(f)?;
    let mut best: Option<(usize, Vec<Vec<Scalar>>)> = None;
    for _ in 0..search.trials.max(1) {
        let coeffs: Vec<Vec<Scalar>> = (0..ell)
            .map(|_| (0..f.forms().len()).map(|_| field.random_nonzero(&mut rng, search.coeff_bound)).collect())
            .collect();
        let jgens: Vec<Polynomial> = coeffs
            .iter()
            .map(|row| {
                row.iter().zip(f.forms()).fold(Polynomial::zero(ring), |acc, (c, g)| acc.add_ref(&g.scale(c)))
            })
            .collect();
        let limit = best.as_ref().map_or(search.cap + 1, |b| b.0);
        for n in 0..limit {
            if powers.is_reduction(&jgens, n)? {
                best = Some((n, coeffs.clone()));
                break;
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == 0) {
            break;
        }
    }
    match best {
        None => Err(Error::NoReductionFound { cap: search.cap }),
        Some((r, coeffs)) => Ok(ReductionNumber {
            r,
            ell,
            combination: coeffs.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect(),
            seed: search.seed,
            trials: search.trials,
            upper_estimate: true,
        }),
    }
}

/// Generators of the powers `I^n`, built on demand.
struct PowerCache<'a> {
    f: &'a RationalMap,
    base: Ideal,
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    fn new(f: &'a RationalMap) -> Result<Self> {
        Ok(PowerCache { f, base: f.base_ideal(), powers: vec![vec![Polynomial::one(f.ring())]] })
    }

    fn linear(&self) -> bool {
        self.f.source().is_zero()
    }

    fn get(&mut self, n: usize) -> Result<&[Polynomial]> {
        while self.powers.len() <= n {
            let k = self.powers.len();
            let next = if self.linear() {
                let prods = self.powers[k - 1].iter().flat_map(|p| self.f.forms().iter().map(move |g| p.mul_ref(g)));
                span_basis(prods)
            } else {
                ideal_power(&self.base, k as u32).minimal_generators()?
            };
            self.powers.push(next);
        }
        Ok(&self.powers[n])
    }

    /// Whether `I^(n+1) ⊆ J I^n + a`.
    fn is_reduction(&mut self, jgens: &[Polynomial], n: usize) -> Result<bool> {
        self.get(n + 1)?;
        let (low, high) = (&self.powers[n], &self.powers[n + 1]);
        let prods = jgens.iter().flat_map(|j| low.iter().map(move |p| j.mul_ref(p)));
        if self.linear() {
            let prods: Vec<Polynomial> = prods.collect();
            return Ok(match self.f.field() {
                FieldSpec::Rationals => modular_rank_reaches(&prods, high.len()),
                _ => span_basis(prods).len() == high.len(),
            });
        }
        let mut gens = self.f.source().gens().to_vec();
        gens.extend(prods);
        let w = vec![1i64; self.f.ring().nvars()];
        contains_homogeneous(&gens, self.f.ring(), &w, high, self.f.max_pairs())
    }
}

/// Rank over `Q` is at least the rank modulo any prime not dividing a denominator,
/// so a full rank modulo one of two large primes proves the rank over `Q`.
/// A miss on both can only overestimate the reduction number.
fn modular_rank_reaches(polys: &[Polynomial], target: usize) -> bool {
    'primes: for p in [2_147_483_647u32, 2_147_483_629] {
        let fp = FieldSpec::Prime(p);
        let mut index: HashMap<&Monomial, usize> = HashMap::new();
        let mut ech = Echelon::new();
        for q in polys {
            let mut row: SparseRow = Vec::with_capacity(q.terms().len());
            for (m, c) in q.terms() {
                let r = c.as_rat().expect("rational coefficients").to_big();
                let Ok(v) = fp.from_ratio(r.numer(), r.denom()) else { continue 'primes };
                if !v.is_zero() {
                    let next = index.len();
                    row.push((*index.entry(m).or_insert(next), v));
                }
            }
            row.sort_by_key(|e| e.0);
            ech.insert(row);
            if ech.rank() >= target {
                return true;
            }
        }
    }
    false
}

/// A linearly independent subset spanning the same space as `polys`.
fn span_basis(polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for p in polys {
        let mut row: SparseRow = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        row.sort_by_key(|e| e.0);
        if ech.insert(row) {
            out.push(p);
        }
    }
    out
}
