use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 16]>;

/// An exponent vector. The total degree and a support bitmask are cached so
/// divisibility tests can reject most candidates without touching the vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
    mask: u64,
}

fn mask_of(exps: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0, mask: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m.mask = 1 << (i % 64);
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            mask: mask_of(exps),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn from_vec(exps: Exponents) -> Self {
        Monomial { deg: exps.iter().map(|&e| e as u32).sum(), mask: mask_of(&exps), exps }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Degree restricted to the given variable indices.
    pub fn partial_degree(&self, vars: impl IntoIterator<Item = usize>) -> u32 {
        vars.into_iter().map(|i| self.exps[i] as u32).sum()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.exps.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), o.exps.len());
        let exps: Exponents = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + o.deg, mask: self.mask | o.mask }
    }

    #[inline]
    pub fn divides(&self, o: &Self) -> bool {
        if self.mask & !o.mask != 0 || self.deg > o.deg {
            return false;
        }
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Self) -> Option<Self> {
        if !self.divides(o) {
            return None;
        }
        let exps: Exponents = o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial::from_vec(exps))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let exps: Exponents = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_vec(exps)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let exps: Exponents = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_vec(exps)
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.mask & o.mask == 0 && self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u16) -> Self {
        let exps: Exponents = self.exps.iter().map(|a| a * e).collect();
        Monomial::from_vec(exps)
    }

    /// Copy with the exponent of `var` cleared; returns the removed exponent too.
    pub fn without_var(&self, var: usize) -> (Self, u16) {
        let mut exps = self.exps.clone();
        let e = exps[var];
        exps[var] = 0;
        (Monomial::from_vec(exps), e)
    }

    pub fn with_var(&self, var: usize, e: u16) -> Self {
        let mut exps = self.exps.clone();
        exps[var] = e;
        Monomial::from_vec(exps)
    }

    /// Drops one exponent of `var` (formal derivative helper).
    pub fn decrement(&self, var: usize) -> Option<Self> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[var] -= 1;
        Some(Monomial::from_vec(exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
