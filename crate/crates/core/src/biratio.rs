//! The Jacobian dual criterion for birationality and extraction of inverse maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, Ideal};
use crate::poly::{gcd_all, PolyMatrix, Polynomial};
use crate::rees::{rees_ideal, special_fiber, x_linear_part, RationalMap, ReesPresentation};

/// Partial derivatives of the x-linear Rees equations, with entries in `B = k[Y]/b`.
#[derive(Clone, Debug)]
pub struct JacobianDual {
    psi: PolyMatrix,
    n: usize,
    fiber: Ideal,
}

impl JacobianDual {
    /// Rows are the x-linear generators, columns the source variables.
    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    /// Dimension of the source projective space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The special fiber ideal `b` of the image.
    pub fn fiber(&self) -> &Ideal {
        &self.fiber
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub birational: bool,
    pub rank: usize,
    pub n: usize,
}

/// Forms in `k[Y]` defining the inverse map.
#[derive(Clone, Debug)]
pub struct InverseRepresentative {
    pub forms: Vec<Polynomial>,
    pub degree: u32,
    pub content_removed: bool,
    /// Rows of the Jacobian dual whose signed minors gave the forms.
    pub rows: Vec<usize>,
}

impl InverseRepresentative {
    /// The degree is only an upper bound for the least degree of a representative
    /// when the image is a proper subvariety.
    pub fn upper_estimate(&self) -> bool {
        !self.content_removed
    }
}

pub fn jacobian_dual(f: &RationalMap) -> Result<JacobianDual> {
    let rees = rees_ideal(f)?;
    let fiber = special_fiber(f)?;
    jacobian_dual_with(f, &rees, &fiber)
}

/// Jacobian dual from an already computed Rees ideal and special fiber.
pub fn jacobian_dual_with(f: &RationalMap, rees: &ReesPresentation, fiber: &Ideal) -> Result<JacobianDual> {
    let nx = f.ring().nvars();
    if nx < 2 {
        return Err(Error::InvalidDescriptor("source needs at least two variables".into()));
    }
    let lin = x_linear_part(rees);
    if lin.is_empty() {
        return Err(Error::EmptyLinearPart);
    }
    let yr = fiber.ring().clone();
    let gb = (!fiber.is_zero()).then(|| fiber.gb()).transpose()?;
    let mut rows = Vec::with_capacity(lin.len());
    for p in &lin {
        let mut row = Vec::with_capacity(nx);
        for j in 0..nx {
            let d = p.derivative(j).map_to(&yr)?;
            row.push(reduce(&gb, &d));
        }
        rows.push(row);
    }
    let psi = PolyMatrix::from_rows(&yr, rows)?;
    Ok(JacobianDual { psi, n: nx - 1, fiber: fiber.clone() })
}

fn reduce(gb: &Option<std::sync::Arc<GroebnerBasis>>, p: &Polynomial) -> Polynomial {
    match gb {
        Some(g) => g.normal_form(p),
        None => p.clone(),
    }
}

/// Rank of `m` over the domain `k[Y]/b` by fraction-free elimination; zero tests
/// are normal forms modulo `b`.
pub fn rank_mod(m: &PolyMatrix, b: &Ideal) -> Result<usize> {
    let gb = (!b.is_zero()).then(|| b.gb()).transpose()?;
    let mut rows: Vec<Vec<Polynomial>> = m.rows().iter().map(|r| r.iter().map(|p| reduce(&gb, p)).collect()).collect();
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut rank = 0;
    let mut prev: Option<Polynomial> = None;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(r) = (rank..nr).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        let piv = rows[rank][c].clone();
        for i in rank + 1..nr {
            let a = rows[i][c].clone();
            let mut new: Vec<Polynomial> = (c + 1..nc)
                .map(|j| reduce(&gb, &(&(&piv * &rows[i][j]) - &(&a * &rows[rank][j]))))
                .collect();
            if let Some(d) = &prev {
                // Exact in the polynomial ring when b = 0; otherwise divide only if every entry allows it.
                if let Some(q) = new.iter().map(|p| p.exact_div(d)).collect::<Option<Vec<_>>>() {
                    new = q.iter().map(|p| reduce(&gb, p)).collect();
                } else if gb.is_some() {
                    strip_content(&mut new, &gb);
                }
            }
            for (k, p) in new.into_iter().enumerate() {
                rows[i][c + 1 + k] = p;
            }
            rows[i][c] = Polynomial::zero(m.ring());
        }
        prev = Some(piv);
        rank += 1;
    }
    Ok(rank)
}

fn strip_content(row: &mut [Polynomial], gb: &Option<std::sync::Arc<GroebnerBasis>>) {
    let nz: Vec<Polynomial> = row.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nz.len() < 2 {
        return;
    }
    if let Some(g) = gcd_all(&nz) {
        if !g.is_constant() {
            for p in row.iter_mut() {
                if !p.is_zero() {
                    *p = reduce(gb, &p.exact_div(&g).expect("gcd divides"));
                }
            }
        }
    }
}

/// The criterion: birational iff the Jacobian dual has rank `n` over `B`.
/// A map without x-linear Rees equations fails the criterion.
pub fn is_birational(f: &RationalMap) -> Result<Verdict> {
    match jacobian_dual(f) {
        Ok(jd) => verdict(&jd),
        Err(Error::EmptyLinearPart) => Ok(Verdict { birational: false, rank: 0, n: f.n() }),
        Err(e) => Err(e),
    }
}

pub fn verdict(jd: &JacobianDual) -> Result<Verdict> {
    let rank = rank_mod(&jd.psi, &jd.fiber)?;
    Ok(Verdict { birational: rank == jd.n, rank, n: jd.n })
}

pub fn inverse_representative(f: &RationalMap) -> Result<InverseRepresentative> {
    inverse_from_dual(&jacobian_dual(f)?)
}

/// Signed maximal minors of the first `n` rows (in lexicographic order of row
/// tuples) of rank `n`, reduced modulo `b`; divided by their GCD when `b = 0`.
pub fn inverse_from_dual(jd: &JacobianDual) -> Result<InverseRepresentative> {
    let (psi, n, b) = (&jd.psi, jd.n, &jd.fiber);
    let cols: Vec<usize> = (0..psi.ncols()).collect();
    let mut chosen = None;
    for rows in Combinations::new(psi.nrows(), n) {
        let sub = psi.submatrix(&rows, &cols);
        if rank_mod(&sub, b)? == n {
            chosen = Some((rows, sub));
            break;
        }
    }
    let (rows, sub) = chosen.ok_or(Error::NoRankNSubmatrix(n))?;
    let gb = (!b.is_zero()).then(|| b.gb()).transpose()?;
    let mut forms: Vec<Polynomial> = sub.signed_maximal_minors()?.iter().map(|p| reduce(&gb, p)).collect();
    let content_removed = b.is_zero();
    if content_removed {
        let nz: Vec<Polynomial> = forms.iter().filter(|p| !p.is_zero()).cloned().collect();
        if let Some(g) = gcd_all(&nz) {
            forms = forms.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
        }
    }
    let lead = forms.iter().find(|p| !p.is_zero()).ok_or(Error::NoRankNSubmatrix(n))?;
    let inv = lead.lead_coeff().unwrap().inv().unwrap();
    forms = forms.iter().map(|p| p.scale(&inv)).collect();
    for i in 0..psi.nrows() {
        let mut acc = Polynomial::zero(psi.ring());
        for (j, v) in forms.iter().enumerate() {
            acc = &acc + &(psi.get(i, j) * v);
        }
        if !reduce(&gb, &acc).is_zero() {
            return Err(Error::Internal("inverse forms are not in the null space of the Jacobian dual".into()));
        }
    }
    let degree = forms.iter().find(|p| !p.is_zero()).and_then(|p| p.homogeneous_degree()).ok_or(Error::NotHomogeneous)?;
    Ok(InverseRepresentative { forms, degree, content_removed, rows })
}

/// `G(f_0, ..., f_m)` reduced modulo the source ideal.
pub fn compose(g: &[Polynomial], f: &RationalMap) -> Result<Vec<Polynomial>> {
    let m = f.forms().len();
    let mut out = Vec::with_capacity(g.len());
    for p in g {
        if p.ring().nvars() != m {
            return Err(Error::LengthMismatch { expected: m, got: p.ring().nvars() });
        }
        let q = p.substitute(f.forms())?;
        out.push(if f.source().is_zero() { q } else { f.source().normal_form(&q)? });
    }
    Ok(out)
}

/// Whether `G ∘ F` is the identity of the source: the composite is proportional to
/// `(x_0, ..., x_n)` modulo the source ideal and not identically zero there.
pub fn verify_inverse(f: &RationalMap, g: &[Polynomial]) -> Result<bool> {
    let nx = f.ring().nvars();
    if g.len() != nx {
        return Err(Error::LengthMismatch { expected: nx, got: g.len() });
    }
    let h = compose(g, f)?;
    if h.iter().all(|p| p.is_zero()) {
        return Ok(false);
    }
    let x: Vec<Polynomial> = (0..nx).map(|i| Polynomial::var(f.ring(), i)).collect();
    for i in 0..nx {
        for j in i + 1..nx {
            let c = &(&x[i] * &h[j]) - &(&x[j] * &h[i]);
            if !f.source().contains(&c)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `k`-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for t in i + 1..k {
                    next[t] = next[t - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests;
