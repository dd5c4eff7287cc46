use serde::Serialize;

use crate::biratio::rank_mod;
use crate::error::{Error, Result};
use crate::groebner::{colon, ideal_equal, ideal_power, saturate, Ideal};
use crate::poly::{PolyMatrix, Polynomial};
use crate::rees::{RationalMap, ReesPresentation};
use crate::resolve::{betti_numbers, bigraded_betti, syzygies, BettiTable, GradedModulePresentation, Grading};

/// Whether `I = I : (x_0, ..., x_n)^∞`.
pub fn is_saturated(i: &Ideal) -> Result<bool> {
    let m = Ideal::of_variables(i.ring(), 0..i.ring().nvars()).with_max_pairs(i.max_pairs());
    let (sat, _) = saturate(i, &m)?;
    ideal_equal(i, &sat)
}

/// `I : A_+^e` by iterated colons.
pub fn colon_power(i: &Ideal, e: usize) -> Result<Ideal> {
    let m = Ideal::of_variables(i.ring(), 0..i.ring().nvars()).with_max_pairs(i.max_pairs());
    let mut cur = i.clone();
    for _ in 0..e {
        cur = colon(&cur, &m)?;
    }
    Ok(cur)
}

/// Whether the saturation of the base ideal of a map of `P^n` equals `I : A_+^(n-2)`.
pub fn saturation_colon_check(f: &RationalMap) -> Result<bool> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    let i = f.base_ideal();
    let m = Ideal::of_variables(i.ring(), 0..i.ring().nvars()).with_max_pairs(i.max_pairs());
    let (sat, _) = saturate(&i, &m)?;
    let c = colon_power(&i, f.n().saturating_sub(2))?;
    ideal_equal(&sat, &c)
}

/// Betti table of `k[X,Y]/J`.
pub fn rees_betti(rees: &ReesPresentation) -> Result<BettiTable> {
    let gens: Vec<_> = rees.min_gens().iter().map(|g| g.0.clone()).collect();
    bigraded_betti(rees.ring(), &gens)
}

/// Cohen–Macaulayness of the Rees algebra for a source `P^n`:
/// `pd k[X,Y]/J` equals `codim J = m`.
pub fn rees_is_cm(f: &RationalMap, rees_table: &BettiTable) -> Result<bool> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    Ok(rees_table.projective_dimension() == f.m())
}

/// `max (a - i)` over the bigraded Betti numbers of `k[X,Y]/J`.
pub fn x_regularity(rees_table: &BettiTable) -> i64 {
    rees_table.x_regularity().unwrap_or(0)
}

/// Regularity data of one power `I^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerData {
    pub r: u32,
    pub generators: usize,
    pub regularity: i64,
    pub depth: usize,
    pub linear: bool,
    pub f: i64,
}

/// `Reg(I^r) - r δ` and related data for `r = 1..=r_max`, from minimal generators of each power.
pub fn f_function(f: &RationalMap, r_max: u32) -> Result<Vec<PowerData>> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    let ring = f.ring();
    let delta = f.delta() as i64;
    let mut out = Vec::new();
    for r in 1..=r_max {
        let (gens, bt) = power_betti_with_gens(f, r)?;
        let reg = bt.ideal_regularity().unwrap_or(0);
        let rd = r as i64 * delta;
        out.push(PowerData {
            r,
            generators: gens.len(),
            regularity: reg,
            depth: ring.nvars() - bt.projective_dimension(),
            linear: reg == rd,
            f: reg - rd,
        });
    }
    Ok(out)
}

/// Betti table of `A/I^r` for the base ideal of a map of `P^n`.
pub fn power_betti(f: &RationalMap, r: u32) -> Result<BettiTable> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    Ok(power_betti_with_gens(f, r)?.1)
}

fn power_betti_with_gens(f: &RationalMap, r: u32) -> Result<(Vec<Polynomial>, BettiTable)> {
    let gens = ideal_power(&f.base_ideal(), r).minimal_generators()?;
    let pres = GradedModulePresentation::of_ideal(f.ring(), &gens)?.with_max_pairs(f.max_pairs());
    let bt = betti_numbers(&pres)?;
    Ok((gens, bt))
}

/// Betti table of `A/I` for the base ideal of a map of `P^n`.
pub fn base_betti(f: &RationalMap) -> Result<BettiTable> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    let gens = f.base_ideal().minimal_generators()?;
    betti_numbers(&GradedModulePresentation::of_ideal(f.ring(), &gens)?.with_max_pairs(f.max_pairs()))
}

/// Rank over `A` of the linear part of the syzygy matrix of the forms.
pub fn linear_syzygy_rank(f: &RationalMap) -> Result<usize> {
    let m = PolyMatrix::from_rows(f.ring(), vec![f.forms().to_vec()])?;
    let pres = GradedModulePresentation::new(Grading::standard(f.ring().nvars()), vec![vec![0]], m)?.with_max_pairs(f.max_pairs());
    let syz = syzygies(&pres)?;
    let lin: Vec<usize> = (0..syz.ncols())
        .filter(|&j| syz.column(j).iter().all(|p| p.is_zero() || p.total_degree() == 1))
        .collect();
    let rows: Vec<usize> = (0..syz.nrows()).collect();
    rank_mod(&syz.submatrix(&rows, &lin), &Ideal::zero(f.ring()))
}
