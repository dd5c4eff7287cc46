use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

/// `2n [δ^(2(n+m+1-D)^2)/2 + δ]^(2^(D+2))` with `δ = max(d+1, d0)` and `D = dim X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayrRitscherBound {
    pub delta: u64,
    pub value: BigRational,
}

impl MayrRitscherBound {
    pub fn floor(&self) -> BigInt {
        self.value.floor().to_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_integer()
    }

    /// Number of decimal digits of the integer part.
    pub fn digits(&self) -> usize {
        self.floor().to_string().trim_start_matches('-').len()
    }
}

fn mr_exponents(n: u64, m: u64, dim_x: u64) -> (u64, u64) {
    let k = (n + m + 1).saturating_sub(dim_x);
    (2 * k * k, 1u64 << (dim_x + 2))
}

pub fn mayr_ritscher_bound(n: u64, m: u64, dim_x: u64, d: u64, d0: u64) -> MayrRitscherBound {
    let delta = (d + 1).max(d0);
    let (inner, outer) = mr_exponents(n, m, dim_x);
    let dq = BigRational::from_integer(BigInt::from(delta));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = half * Pow::pow(&dq, inner as u32) + dq;
    let value = BigRational::from_integer(BigInt::from(2 * n)) * Pow::pow(&base, outer as u32);
    MayrRitscherBound { delta, value }
}

/// The bound as a compact exact expression.
pub fn mayr_ritscher_expression(n: u64, m: u64, dim_x: u64, d: u64, d0: u64) -> String {
    let delta = (d + 1).max(d0);
    let (inner, outer) = mr_exponents(n, m, dim_x);
    format!("{}*(1/2*{delta}^{inner} + {delta})^{outer}", 2 * n)
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundId {
    MR,
    B2,
    B21,
    B22,
    CRE_N2,
    RELTYPE_REG,
    GRADE2_DELTA,
    GRADE2_B1,
    SAT_COLON,
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundLedgerEntry {
    pub id: BoundId,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundLedgerEntry {
    fn na(id: BoundId, why: &str) -> Self {
        BoundLedgerEntry { id, lhs: String::new(), rhs: String::new(), status: Status::NotApplicable, note: Some(why.into()) }
    }

    fn le(id: BoundId, lhs: impl fmt::Display, rhs: impl fmt::Display, holds: bool) -> Self {
        let status = if holds { Status::Pass } else { Status::Fail };
        BoundLedgerEntry { id, lhs: lhs.to_string(), rhs: rhs.to_string(), status, note: None }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Invariants the ledger draws on; `None` marks what was not computed.
#[derive(Clone, Debug, Default)]
pub struct LedgerInputs {
    /// Source `X ⊂ P^n`, target `P^m`.
    pub n: u64,
    pub m: u64,
    /// Projective dimension of `X`.
    pub dim_x: u64,
    /// Degree of the given representative.
    pub delta: u64,
    /// Largest degree of a minimal generator of the source ideal, 0 for `P^n`.
    pub d0: u64,
    pub birational: bool,
    /// Source and target are the same projective space.
    pub cremona: bool,
    pub inverse_degree: Option<u64>,
    pub x_regularity: Option<i64>,
    pub rees_cm: Option<bool>,
    /// Largest x-degree of a minimal generator of the Rees ideal.
    pub x_relation_type: Option<u64>,
    /// Codimension of the base ideal in `A`.
    pub grade: Option<usize>,
    /// Largest first-syzygy twist of the base ideal.
    pub b1: Option<i64>,
    pub sat_colon: Option<bool>,
}

fn frac(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn bound_ledger(x: &LedgerInputs) -> Vec<BoundLedgerEntry> {
    use BoundId::*;
    let d = x.dim_x + 1;
    let cm = x.rees_cm == Some(true);
    let mut out = Vec::new();

    out.push(match (x.birational, x.inverse_degree) {
        (true, Some(e)) => {
            let mr = mayr_ritscher_bound(x.n, x.m, x.dim_x, x.delta, x.d0);
            let expr = mayr_ritscher_expression(x.n, x.m, x.dim_x, x.delta, x.d0);
            BoundLedgerEntry::le(MR, e, expr, BigRational::from_integer(BigInt::from(e)) <= mr.value)
        }
        _ => BoundLedgerEntry::na(MR, "map not birational or inverse not computed"),
    });

    out.push(match (x.birational, x.x_regularity) {
        (true, Some(xr)) => {
            let rhs = x.m as i64 * (xr + 1);
            BoundLedgerEntry::le(B2, x.delta, rhs, (x.delta as i64) <= rhs)
                .with_note("lhs is the degree of the given representative; rhs is m*(x-regularity + 1)")
        }
        _ => BoundLedgerEntry::na(B2, "map not birational or x-regularity not computed"),
    });

    out.push(match (x.birational && cm, x.x_regularity) {
        (true, Some(xr)) => {
            let lhs = x.m as i64 * (xr + 1);
            let rhs = (x.m * d) as i64;
            BoundLedgerEntry::le(B21, lhs, rhs, lhs <= rhs)
        }
        _ => BoundLedgerEntry::na(B21, "requires a birational map with Cohen-Macaulay Rees algebra"),
    });

    out.push(match (x.birational && cm, x.inverse_degree) {
        (true, Some(e)) => BoundLedgerEntry::le(B22, e, x.n * d, e <= x.n * d),
        _ => BoundLedgerEntry::na(B22, "requires a birational map with Cohen-Macaulay Rees algebra"),
    });

    out.push(match (x.cremona && x.birational && cm, x.inverse_degree) {
        (true, Some(e)) => {
            let lhs = e.max(x.delta);
            BoundLedgerEntry::le(CRE_N2, lhs, x.n * x.n, lhs <= x.n * x.n)
        }
        _ => BoundLedgerEntry::na(CRE_N2, "requires a Cremona map with Cohen-Macaulay Rees algebra"),
    });

    out.push(match (x.birational, x.x_relation_type, x.x_regularity) {
        (true, Some(t), Some(xr)) => BoundLedgerEntry::le(RELTYPE_REG, t, xr + 1, (t as i64) <= xr + 1),
        _ => BoundLedgerEntry::na(RELTYPE_REG, "map not birational or Rees data missing"),
    });

    match (x.grade, x.b1) {
        (Some(g), Some(b1)) if g >= 2 && x.m >= 1 => {
            let m = x.m as i64;
            let delta = x.delta as i64;
            let rhs = Ratio::new(m * b1, m + 1);
            out.push(BoundLedgerEntry::le(GRADE2_DELTA, delta, frac(rhs), Ratio::from_integer(delta) <= rhs));
            let lhs = Ratio::new((m + 1) * delta, m);
            out.push(BoundLedgerEntry::le(GRADE2_B1, frac(lhs), b1, lhs <= Ratio::from_integer(b1)));
        }
        _ => {
            out.push(BoundLedgerEntry::na(GRADE2_DELTA, "base ideal of grade below two or syzygies not computed"));
            out.push(BoundLedgerEntry::na(GRADE2_B1, "base ideal of grade below two or syzygies not computed"));
        }
    }

    out.push(match (x.cremona && x.birational && cm && x.delta >= 2, x.sat_colon) {
        (true, Some(eq)) => BoundLedgerEntry {
            id: SAT_COLON,
            lhs: "I^sat".into(),
            rhs: format!("I : A_+^{}", x.n.saturating_sub(2)),
            status: if eq { Status::Pass } else { Status::Fail },
            note: None,
        },
        _ => BoundLedgerEntry::na(SAT_COLON, "requires a non-linear Cremona map with Cohen-Macaulay Rees algebra"),
    });
    out
}
