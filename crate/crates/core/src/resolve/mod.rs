//! Graded free resolutions by Schreyer's method, Betti tables and the
//! invariants read off them.

mod betti;
mod minimize;
mod schreyer;

pub use betti::BettiTable;
pub use minimize::minimize;
pub use schreyer::schreyer_resolution;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::groebner::{GbEngine, MTerm, ModuleOrder, DEFAULT_MAX_PAIRS};
use crate::poly::{same_ring, Monomial, PolyMatrix, Polynomial, Ring};

/// A (multi)grading by integer weight rows: `deg x_v = (rows[0][v], rows[1][v], ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    rows: Vec<Vec<i64>>,
}

pub type Degree = Vec<i64>;

impl Grading {
    pub fn standard(nvars: usize) -> Self {
        Grading { rows: vec![vec![1; nvars]] }
    }

    /// `deg x = (1, 0)` for the first `split` variables, `deg Y = (0, 1)` for the rest.
    pub fn bigraded(split: usize, nvars: usize) -> Self {
        let x = (0..nvars).map(|v| (v < split) as i64).collect();
        let y = (0..nvars).map(|v| (v >= split) as i64).collect();
        Grading { rows: vec![x, y] }
    }

    /// The grading natural for `ring`: bigraded when it has a block split.
    pub fn of_ring(ring: &Ring) -> Self {
        match ring.block_split() {
            Some(s) => Self::bigraded(s, ring.nvars()),
            None => Self::standard(ring.nvars()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn zero(&self) -> Degree {
        vec![0; self.rows.len()]
    }

    pub fn of_monomial(&self, m: &Monomial) -> Degree {
        self.rows.iter().map(|w| m.weighted_degree(w)).collect()
    }

    /// Sum of the weight rows, used for sugar.
    fn total_weights(&self) -> Vec<i64> {
        let n = self.rows[0].len();
        (0..n).map(|v| self.rows.iter().map(|r| r[v]).sum()).collect()
    }
}

pub(crate) fn add_deg(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A graded map `⊕ R(-cols) -> ⊕ R(-row_degrees)` given by a matrix with homogeneous columns.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    ring: Ring,
    grading: Grading,
    row_degrees: Vec<Degree>,
    matrix: PolyMatrix,
    col_degrees: Vec<Degree>,
    max_pairs: u64,
}

impl GradedModulePresentation {
    pub fn new(grading: Grading, row_degrees: Vec<Degree>, matrix: PolyMatrix) -> Result<Self> {
        let ring = matrix.ring().clone();
        if row_degrees.len() != matrix.nrows() {
            return Err(Error::LengthMismatch { expected: matrix.nrows(), got: row_degrees.len() });
        }
        let bad = if grading.rank() > 1 { Error::NotBihomogeneous } else { Error::NotHomogeneous };
        let mut col_degrees = Vec::with_capacity(matrix.ncols());
        for j in 0..matrix.ncols() {
            let mut deg: Option<Degree> = None;
            for (i, rd) in row_degrees.iter().enumerate() {
                for (m, _) in matrix.get(i, j).terms() {
                    let d = add_deg(&grading.of_monomial(m), rd);
                    match &deg {
                        None => deg = Some(d),
                        Some(e) if *e != d => return Err(bad),
                        _ => {}
                    }
                }
            }
            col_degrees.push(deg.unwrap_or_else(|| grading.zero()));
        }
        Ok(GradedModulePresentation { ring, grading, row_degrees, matrix, col_degrees, max_pairs: DEFAULT_MAX_PAIRS })
    }

    /// Presentation `R^1 <- ⊕ R(-deg g)` of `R/I` for homogeneous generators.
    pub fn of_ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let grading = Grading::of_ring(ring);
        let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        let m = PolyMatrix::from_rows(ring, vec![gens])?;
        let zero = grading.zero();
        Self::new(grading, vec![zero], m)
    }

    pub fn with_max_pairs(mut self, max_pairs: u64) -> Self {
        self.max_pairs = max_pairs;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn row_degrees(&self) -> &[Degree] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[Degree] {
        &self.col_degrees
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn max_pairs(&self) -> u64 {
        self.max_pairs
    }

    fn column_terms(&self, j: usize) -> Vec<MTerm> {
        let mut v = Vec::new();
        for i in 0..self.matrix.nrows() {
            for (m, c) in self.matrix.get(i, j).terms() {
                v.push((m.clone(), i as u32, c.clone()));
            }
        }
        v
    }

    fn sugar_of(&self, d: &Degree) -> i64 {
        d.iter().sum()
    }
}

pub(crate) fn terms_to_column(ring: &Ring, v: &[MTerm], nrows: usize) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, crate::coeff::Scalar)>> = vec![Vec::new(); nrows];
    for (m, comp, s) in v {
        parts[*comp as usize].push((m.clone(), s.clone()));
    }
    parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
}

/// Generators of the kernel of the presentation matrix, minimal and homogeneous.
pub fn syzygies(pres: &GradedModulePresentation) -> Result<PolyMatrix> {
    let ring = pres.ring();
    let (r, c) = (pres.matrix.nrows(), pres.matrix.ncols());
    let base = ring.order().clone();
    let tw = pres.grading.total_weights();
    // Columns (col_j, e_j) in R^r ⊕ R^c, position over term with the R^r part on top.
    let mut comp_deg: Vec<i64> = pres.row_degrees.iter().map(|d| pres.sugar_of(d)).collect();
    comp_deg.extend(pres.col_degrees.iter().map(|d| pres.sugar_of(d)));
    let order = ModuleOrder::pot(base.clone(), r + c);
    let mut eng = GbEngine::new(order, tw.clone(), comp_deg, pres.max_pairs);
    for j in 0..c {
        let mut v = pres.column_terms(j);
        v.push((Monomial::one(ring.nvars()), (r + j) as u32, ring.field().one()));
        eng.add_generator(v);
    }
    eng.complete(None)?;
    let kernel: Vec<Vec<MTerm>> = eng
        .reduced_basis()
        .into_iter()
        .filter(|v| v[0].1 as usize >= r)
        .map(|v| v.into_iter().map(|(m, k, s)| (m, k - r as u32, s)).collect())
        .collect();
    // Prune to a minimal generating set.
    let cd: Vec<i64> = pres.col_degrees.iter().map(|d| pres.sugar_of(d)).collect();
    let mut eng2 = GbEngine::new(ModuleOrder::top(base, c), tw, cd, pres.max_pairs);
    let ids: Vec<usize> = kernel.iter().map(|v| eng2.add_generator(v.clone())).collect();
    eng2.complete(None)?;
    let cols: Vec<Vec<Polynomial>> = ids
        .iter()
        .zip(&kernel)
        .filter(|(id, _)| eng2.generator_kept(**id) == Some(true))
        .map(|(_, v)| terms_to_column(ring, v, c))
        .collect();
    if cols.is_empty() {
        return Ok(PolyMatrix::zeros(ring, c, 0));
    }
    PolyMatrix::from_columns(ring, c, cols)
}

/// A graded free resolution `F_0 <- F_1 <- ... <- F_len`.
///
/// `maps[k]` is `d_(k+1) : F_(k+1) -> F_k`, stored as sparse columns whose
/// component index is the row.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    grading: Grading,
    twists: Vec<Vec<Degree>>,
    maps: Vec<Vec<Vec<MTerm>>>,
    minimal: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.twists.iter().rposition(|t| !t.is_empty()).unwrap_or(0)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(|t| t.len()).collect()
    }

    /// Degrees of the basis of `F_k`.
    pub fn twists(&self, k: usize) -> &[Degree] {
        self.twists.get(k).map_or(&[], |t| t.as_slice())
    }

    /// The differential `d_k : F_k -> F_(k-1)` as a matrix, `k >= 1`.
    pub fn differential(&self, k: usize) -> PolyMatrix {
        let rows = self.twists(k - 1).len();
        match self.maps.get(k - 1) {
            Some(cols) if !cols.is_empty() => {
                let cols = cols.iter().map(|v| terms_to_column(&self.ring, v, rows)).collect();
                PolyMatrix::from_columns(&self.ring, rows, cols).unwrap()
            }
            _ => PolyMatrix::zeros(&self.ring, rows, 0),
        }
    }

    /// Checks `d_k d_(k+1) = 0` for all `k`.
    pub fn check_complex(&self) -> bool {
        (1..self.maps.len()).all(|k| self.differential(k).mul(&self.differential(k + 1)).is_ok_and(|p| p.is_zero()))
    }

    /// Whether some differential has a nonzero constant entry.
    pub fn has_unit_entries(&self) -> bool {
        self.maps.iter().flatten().flatten().any(|t| t.0.is_one())
    }
}

/// Minimal graded free resolution of the cokernel of the presentation.
pub fn minimal_free_resolution(pres: &GradedModulePresentation) -> Result<FreeResolution> {
    let frame = schreyer_resolution(pres)?;
    let res = minimize(&frame);
    if res.length() > pres.ring.nvars() {
        return Err(Error::Internal("resolution longer than the number of variables".into()));
    }
    debug_assert!(res.check_complex());
    Ok(res)
}

/// Betti table of the cokernel, from a Schreyer frame without minimizing it.
pub fn betti_numbers(pres: &GradedModulePresentation) -> Result<BettiTable> {
    Ok(BettiTable::from_frame(&schreyer_resolution(pres)?))
}

/// Betti table of a minimal resolution.
pub fn betti_table(res: &FreeResolution) -> Result<BettiTable> {
    if !res.is_minimal() {
        return Err(Error::NotMinimal);
    }
    Ok(BettiTable::from_twists(res.grading.rank(), &res.twists))
}

pub fn regularity(bt: &BettiTable) -> Option<i64> {
    bt.regularity()
}

pub fn projective_dimension(bt: &BettiTable) -> usize {
    bt.projective_dimension()
}

/// Depth of the resolved module by Auslander–Buchsbaum.
pub fn depth_of_quotient(bt: &BettiTable, ambient_vars: usize) -> usize {
    ambient_vars - bt.projective_dimension()
}

/// Bigraded Betti table of `R/I` for a bihomogeneous ideal of a split ring.
pub fn bigraded_betti(ring: &Ring, gens: &[Polynomial]) -> Result<BettiTable> {
    if ring.block_split().is_none() {
        return Err(Error::NotBihomogeneous);
    }
    betti_numbers(&GradedModulePresentation::of_ideal(ring, gens)?)
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps().cmp(b.exps())
}

#[cfg(test)]
mod tests;
