//! Exact coefficient fields: the rationals and prime fields `F_p`.

pub mod linalg;
mod rat;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rat::Rat;

/// The ground field. Characteristic is zero for `Rationals`, otherwise a prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("Fp:{p}")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rat::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rat::from_i64(n)),
            FieldSpec::Prime(p) => Scalar::Fp { v: n.rem_euclid(*p as i64) as u32, p: *p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rat::from_bigint(n.clone())),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let mut r = n % &pb;
                if r < BigInt::zero() {
                    r += &pb;
                }
                Scalar::Fp { v: r.to_u32().unwrap(), p: *p }
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.try_div(&d)
    }

    /// Uniform nonzero scalar: `{-bound..=bound} \ {0}` over the rationals, `F_p \ {0}` otherwise.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                let b = bound.max(1);
                let mut v = rng.gen_range(-b..b);
                if v >= 0 {
                    v += 1;
                }
                self.from_i64(v)
            }
            FieldSpec::Prime(p) => Scalar::Fp { v: rng.gen_range(1..*p), p: *p },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u32 = rest.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues are canonical in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    Fp { v: u32, p: u32 },
}

fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(t0.rem_euclid(p as i64) as u32)
}

/// Arithmetic selector for [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic on scalars of a common field.
pub fn field_arithmetic(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.try_div(b)?,
    })
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Sign used when printing: only rationals can be negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    #[inline]
    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    #[inline]
    pub fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp { v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    #[inline]
    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "field mismatch");
                Scalar::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q),
            Scalar::Fp { v, p } => inv_mod(*v, *p).map(|v| Scalar::Fp { v, p: *p }),
        }
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch(self.field(), o.field()));
        }
        let i = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&i))
    }

    /// Division by a nonzero scalar of the same field; panics otherwise.
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero scalar"))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The value as a rational when it is one (always for `Q`).
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }

    /// Small integer value, if the scalar is (the image of) one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum() {
        let r = field_arithmetic(&q(1, 2), &q(1, 3), FieldOp::Add).unwrap();
        assert_eq!(r, q(5, 6));
        assert_eq!(r.to_string(), "5/6");
    }

    #[test]
    fn annihilation() {
        let z = FieldSpec::Rationals.zero();
        assert!(field_arithmetic(&q(7, 3), &z, FieldOp::Mul).unwrap().is_zero());
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(field_arithmetic(&f7.from_i64(5), &f7.zero(), FieldOp::Mul).unwrap().is_zero());
    }

    #[test]
    fn prime_field_division() {
        let f7 = FieldSpec::prime(7).unwrap();
        let r = field_arithmetic(&f7.from_i64(3), &f7.from_i64(5), FieldOp::Div).unwrap();
        assert_eq!(r, f7.from_i64(2));
    }

    #[test]
    fn errors() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(
            field_arithmetic(&q(1, 2), &f7.one(), FieldOp::Add),
            Err(Error::FieldMismatch(FieldSpec::Rationals, f7))
        );
        assert_eq!(
            field_arithmetic(&q(1, 2), &q(0, 1), FieldOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn field_spec_text() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert!("Fp:32004".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(32003).to_string(), "Fp:32003");
    }

    fn scalar_in(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-1_000_000i64..1_000_000, 1i64..1000)
            .prop_map(move |(n, d)| field.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap_or(field.zero()))
    }

    proptest! {
        #[test]
        fn ring_axioms_q(a in scalar_in(FieldSpec::Rationals), b in scalar_in(FieldSpec::Rationals), c in scalar_in(FieldSpec::Rationals)) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), FieldSpec::Rationals.zero());
        }

        #[test]
        fn ring_axioms_fp(a in scalar_in(FieldSpec::Prime(32003)), b in scalar_in(FieldSpec::Prime(32003)), c in scalar_in(FieldSpec::Prime(32003))) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).mul(&b), a.clone());
            }
        }

        #[test]
        fn canonical_form_unique(n in -10_000i64..10_000, d in 1i64..100, k in 1i64..50) {
            let f = FieldSpec::Rationals;
            let a = f.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap();
            let b = f.from_ratio(&BigInt::from(n * k), &BigInt::from(d * k)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
