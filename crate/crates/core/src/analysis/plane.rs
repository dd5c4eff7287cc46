use serde::Serialize;

use super::invariants::is_saturated;
use crate::biratio::rank_mod;
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, krull_dimension, Ideal};
use crate::poly::{PolyMatrix, Polynomial};
use crate::rees::RationalMap;
use crate::resolve::{minimal_free_resolution, syzygies, GradedModulePresentation, Grading};

/// `h f_i = Δ_i` for the signed maximal minors `Δ` of an `(m+1) x m` submatrix of the syzygies.
#[derive(Clone, Debug)]
pub struct Grade2Witness {
    pub h: Polynomial,
    pub minors: Vec<Polynomial>,
    pub columns: Vec<usize>,
    pub submatrix: PolyMatrix,
}

/// Codimension of a homogeneous ideal of the polynomial ring.
pub fn codimension(i: &Ideal) -> Result<usize> {
    Ok(i.ring().nvars() - krull_dimension(i)?)
}

pub fn grade2_check(forms: &[Polynomial]) -> Result<Grade2Witness> {
    let ring = forms.first().ok_or(Error::GradeTooSmall)?.ring().clone();
    let i = Ideal::new(&ring, forms.to_vec())?;
    if codimension(&i)? < 2 {
        return Err(Error::GradeTooSmall);
    }
    let m = forms.len() - 1;
    let row = PolyMatrix::from_rows(&ring, vec![forms.to_vec()])?;
    let syz = syzygies(&GradedModulePresentation::new(Grading::standard(ring.nvars()), vec![vec![0]], row)?)?;
    let rows: Vec<usize> = (0..=m).collect();
    let zero = Ideal::zero(&ring);
    let mut found = None;
    for cols in combinations(syz.ncols(), m) {
        let sub = syz.submatrix(&rows, &cols);
        if rank_mod(&sub, &zero)? == m {
            found = Some((cols, sub));
            break;
        }
    }
    let (columns, submatrix) = found.ok_or(Error::NoFullRankSubmatrix)?;
    let minors = submatrix.transpose().signed_maximal_minors()?;
    let k = forms.iter().position(|f| !f.is_zero()).ok_or(Error::GradeTooSmall)?;
    let h = minors[k].exact_div(&forms[k]).ok_or_else(|| Error::Internal("minor not divisible by its form".into()))?;
    if h.is_zero() || forms.iter().zip(&minors).any(|(f, d)| &(&h * f) != d) {
        return Err(Error::Internal("h f_i = minor_i fails".into()));
    }
    Ok(Grade2Witness { h, minors, columns, submatrix })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// First syzygy matrix of a saturated codimension-two perfect ideal, with the
/// twists of its rows (the generators) and columns.
#[derive(Clone, Debug)]
pub struct HilbertBurch {
    pub matrix: PolyMatrix,
    pub generator_degrees: Vec<i64>,
    pub column_twists: Vec<i64>,
}

pub fn hilbert_burch(i: &Ideal) -> Result<HilbertBurch> {
    let c = codimension(i)?;
    if c != 2 {
        return Err(Error::WrongCodimension { expected: 2, got: c });
    }
    if !is_saturated(i)? {
        return Err(Error::NotSaturated);
    }
    let gens = i.minimal_generators()?;
    let pres = GradedModulePresentation::of_ideal(i.ring(), &gens)?.with_max_pairs(i.max_pairs());
    let res = minimal_free_resolution(&pres)?;
    if res.length() != 2 {
        return Err(Error::WrongCodimension { expected: 2, got: res.length() });
    }
    let d1 = res.differential(1);
    let matrix = res.differential(2);
    let generator_degrees: Vec<i64> = res.twists(1).iter().map(|d| d[0]).collect();
    let column_twists: Vec<i64> = res.twists(2).iter().map(|d| d[0]).collect();
    let minors = matrix.transpose().signed_maximal_minors()?;
    let regen = i.derive(minors);
    let own = i.derive(d1.row(0).to_vec());
    if !ideal_equal(&regen, &own)? {
        return Err(Error::Internal("maximal minors do not regenerate the ideal".into()));
    }
    Ok(HilbertBurch { matrix, generator_degrees, column_twists })
}

/// Saturated, codimension two and perfect with Hilbert–Burch column degrees `{1, d-1}`.
pub fn dejonquieres_test(i: &Ideal, d: u32) -> Result<bool> {
    match hilbert_burch(i) {
        Ok(hb) => {
            if hb.matrix.ncols() != 2 || hb.generator_degrees.iter().any(|&g| g != d as i64) {
                return Ok(false);
            }
            // Entry degrees of each column.
            let mut degs: Vec<i64> = hb.column_twists.iter().map(|t| t - d as i64).collect();
            degs.sort();
            Ok(degs == vec![1, d as i64 - 1])
        }
        Err(Error::NotSaturated | Error::WrongCodimension { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Both sides of the plane classification for a plane Cremona map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneClassification {
    pub degree: u32,
    pub saturated: bool,
    pub rees_cm: bool,
    pub de_jonquieres: bool,
    /// Saturated with Cohen–Macaulay Rees algebra.
    pub a: bool,
    /// `d <= 3`, or `d = 4` and not de Jonquières.
    pub b: bool,
    pub agree: bool,
    pub assumed_three_proper_nonaligned: bool,
    /// The two sides disagree although the base point hypothesis was asserted.
    pub discrepancy: bool,
}

pub fn plane_classification(f: &RationalMap, rees_cm: bool, assume_three_proper_nonaligned: bool) -> Result<PlaneClassification> {
    if !f.source_is_projective_space() || f.ring().nvars() != 3 || f.forms().len() != 3 {
        return Err(Error::InvalidDescriptor("plane classification needs a map of P^2 to P^2".into()));
    }
    let d = f.delta();
    let i = f.base_ideal();
    let saturated = is_saturated(&i)?;
    let de_jonquieres = dejonquieres_test(&i, d)?;
    let a = saturated && rees_cm;
    let b = d <= 3 || (d == 4 && !de_jonquieres);
    Ok(PlaneClassification {
        degree: d,
        saturated,
        rees_cm,
        de_jonquieres,
        a,
        b,
        agree: a == b,
        assumed_three_proper_nonaligned: assume_three_proper_nonaligned,
        discrepancy: assume_three_proper_nonaligned && a != b,
    })
}
