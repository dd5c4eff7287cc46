//! Invariants of a rational map, the bound ledger and the full analysis report.

mod invariants;
mod ledger;
mod oracle;
mod plane;

pub use invariants::{
    base_betti, colon_power, f_function, is_saturated, linear_syzygy_rank, power_betti, rees_betti, rees_is_cm, saturation_colon_check,
    x_regularity, PowerData,
};
pub use ledger::{
    bound_ledger, mayr_ritscher_bound, mayr_ritscher_expression, BoundId, BoundLedgerEntry, LedgerInputs, MayrRitscherBound,
    Status,
};
pub use oracle::{monomial_birationality_oracle, smith_invariants, torus_fiber_size};
pub use plane::{
    codimension, dejonquieres_test, grade2_check, hilbert_burch, plane_classification, Grade2Witness, HilbertBurch,
    PlaneClassification,
};

use serde::Serialize;

use crate::biratio::{inverse_from_dual, jacobian_dual_with, verdict, verify_inverse, Verdict};
use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, DEFAULT_MAX_PAIRS};
use crate::rees::{rees_ideal, reduction_number, special_fiber, RationalMap, ReductionNumber, ReductionSearch};

/// Knobs of a full analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    /// Largest power `r` for `Reg(I^r)`.
    pub r_max: u32,
    /// Run the randomized reduction number search.
    pub reduction: bool,
    pub search: ReductionSearch,
    /// S-pair budget of every Gröbner computation.
    pub max_pairs: u64,
    pub assume_three_proper_nonaligned: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            r_max: 3,
            reduction: true,
            search: ReductionSearch::default(),
            max_pairs: DEFAULT_MAX_PAIRS,
            assume_three_proper_nonaligned: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapEcho {
    pub field: String,
    pub variables: Vec<String>,
    pub source_ideal: Vec<String>,
    pub forms: Vec<String>,
    pub delta: u32,
    pub n: usize,
    pub m: usize,
}

impl MapEcho {
    pub fn of(f: &RationalMap) -> Self {
        MapEcho {
            field: f.field().to_string(),
            variables: f.ring().vars().to_vec(),
            source_ideal: f.source().gens().iter().map(|p| p.to_string()).collect(),
            forms: f.forms().iter().map(|p| p.to_string()).collect(),
            delta: f.delta(),
            n: f.n(),
            m: f.m(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseReport {
    pub forms: Vec<String>,
    pub degree: u32,
    pub upper_estimate: bool,
    pub content_removed: bool,
    /// `G ∘ F` is the identity on the source.
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub delta: u32,
    pub relation_type: u32,
    pub rees_bidegrees: Vec<[u32; 2]>,
    pub analytic_spread: usize,
    pub reduction_number: Option<ReductionNumber>,
    /// `Reg(I^r)` and friends for `r = 1..=r_max`.
    pub powers: Vec<PowerData>,
    pub f_values: Vec<i64>,
    pub x_regularity: i64,
    pub saturated: Option<bool>,
    pub rees_cm: Option<bool>,
    pub grade: Option<usize>,
    pub b1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneClassification>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub map: MapEcho,
    pub birational: bool,
    pub verdict: Verdict,
    pub inverse: Option<InverseReport>,
    pub invariants: Invariants,
    pub ledger: Vec<BoundLedgerEntry>,
    /// Disagreements between independent computations, and skipped stages.
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn entry(&self, id: BoundId) -> Option<&BoundLedgerEntry> {
        self.ledger.iter().find(|e| e.id == id)
    }
}

/// Rees ideal, criterion, inverse, invariants and ledger of one map.
pub fn analyze(f: &RationalMap, cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    let f = &RationalMap::with_max_pairs(f.ring(), f.source().gens().to_vec(), f.forms().to_vec(), cfg.max_pairs)?;
    let mut notes = Vec::new();
    let projective = f.source_is_projective_space();

    let rees = rees_ideal(f)?;
    let fiber = special_fiber(f)?;
    let ell = if fiber.is_zero() { f.forms().len() } else { krull_dimension(&fiber)? };

    let (verdict, inverse) = match jacobian_dual_with(f, &rees, &fiber) {
        Ok(jd) => {
            let v = verdict(&jd)?;
            let inv = if v.birational { Some(inverse_from_dual(&jd)?) } else { None };
            (v, inv)
        }
        Err(Error::EmptyLinearPart) => {
            notes.push("no x-linear Rees equations: the criterion fails".into());
            (Verdict { birational: false, rank: 0, n: f.n() }, None)
        }
        Err(e) => return Err(e),
    };
    let inverse = match inverse {
        Some(inv) => {
            let verified = verify_inverse(f, &inv.forms)?;
            if !verified {
                notes.push("criterion anomaly: the extracted inverse does not compose to the identity".into());
            }
            Some((inv, verified))
        }
        None => None,
    };

    let rees_table = rees_betti(&rees)?;
    let xreg = x_regularity(&rees_table);
    let rees_cm = projective.then(|| rees_is_cm(f, &rees_table)).transpose()?;

    let (powers, saturated, grade, b1) = if projective {
        let powers = f_function(f, cfg.r_max)?;
        let i = f.base_ideal();
        let bt = base_betti(f)?;
        let b1 = bt.entries().filter(|e| e.0 == 2 && e.2 > 0).map(|e| e.1[0]).max();
        (powers, Some(is_saturated(&i)?), Some(codimension(&i)?), b1)
    } else {
        notes.push("source is not a projective space: power regularities, saturation and grade are skipped".into());
        (Vec::new(), None, None, None)
    };
    let f_values: Vec<i64> = powers.iter().map(|p| p.f).collect();
    if let Some(mx) = f_values.iter().max() {
        if *mx > xreg {
            notes.push(format!("max f = {mx} exceeds the x-regularity {xreg}"));
        } else if *mx < xreg {
            notes.push(format!("max f over r <= {} is {mx}, below the x-regularity {xreg}", cfg.r_max));
        }
    }

    let reduction = if cfg.reduction {
        match reduction_number(f, ell, &cfg.search) {
            Ok(r) => Some(r),
            Err(Error::NoReductionFound { cap }) => {
                notes.push(format!("no reduction found with exponent at most {cap}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let cremona = projective && f.n() == f.m();
    let cm = rees_cm == Some(true);
    // Linear maps have an empty base locus; both checks concern maps of degree at least 2.
    let nonlinear = f.delta() >= 2;
    let sat_colon = (cremona && verdict.birational && cm && nonlinear).then(|| saturation_colon_check(f)).transpose()?;
    let plane = if cremona && f.n() == 2 && verdict.birational && nonlinear {
        Some(plane_classification(f, cm, cfg.assume_three_proper_nonaligned)?)
    } else {
        None
    };
    if let Some(p) = &plane {
        if p.discrepancy {
            notes.push("plane classification: the two sides disagree".into());
        }
    }

    let x_relation_type = rees.min_gens().iter().map(|g| g.1.x as u64).max();
    let d0 = f.source().gens().iter().map(|g| g.total_degree() as u64).max().unwrap_or(0);
    let dim_x = if projective { f.n() } else { krull_dimension(f.source())?.saturating_sub(1) };
    let inputs = LedgerInputs {
        n: f.n() as u64,
        m: f.m() as u64,
        dim_x: dim_x as u64,
        delta: f.delta() as u64,
        d0,
        birational: verdict.birational,
        cremona,
        inverse_degree: inverse.as_ref().map(|(i, _)| i.degree as u64),
        x_regularity: Some(xreg),
        rees_cm,
        x_relation_type,
        grade,
        b1,
        sat_colon,
    };
    let ledger = bound_ledger(&inputs);

    Ok(AnalysisReport {
        map: MapEcho::of(f),
        birational: verdict.birational,
        verdict,
        inverse: inverse.map(|(inv, verified)| InverseReport {
            forms: inv.forms.iter().map(|p| p.to_string()).collect(),
            degree: inv.degree,
            upper_estimate: inv.upper_estimate(),
            content_removed: inv.content_removed,
            verified,
        }),
        invariants: Invariants {
            delta: f.delta(),
            relation_type: rees.relation_type(),
            rees_bidegrees: rees.bidegrees().iter().map(|b| [b.x, b.y]).collect(),
            analytic_spread: ell,
            reduction_number: reduction,
            powers,
            f_values,
            x_regularity: xreg,
            saturated,
            rees_cm,
            grade,
            b1,
            plane,
        },
        ledger,
        notes,
    })
}

#[cfg(test)]
mod tests;
