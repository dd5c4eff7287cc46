use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, saturate, Ideal};
use crate::poly::{MonomialOrder, Polynomial, RingContext};
use crate::rees::RationalMap;

/// Invariant factors (the nonzero diagonal of the Smith normal form) of an integer matrix.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the remaining block goes to (t, t).
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return out;
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                for j in t..cols {
                    a[t][j] += a[i][j];
                }
                continue;
            }
            out.push(p.abs());
            break;
        }
    }
    out
}

fn exponent_rows(f: &RationalMap) -> Result<Vec<Vec<i128>>> {
    if !f.source_is_projective_space() {
        return Err(Error::UnsupportedSource);
    }
    let exps: Vec<Vec<i128>> = f
        .forms()
        .iter()
        .map(|p| match p.terms() {
            [(m, _)] => Ok(m.exps().iter().map(|&e| e as i128).collect()),
            _ => Err(Error::NotMonomial),
        })
        .collect::<Result<_>>()?;
    Ok(exps[1..].iter().map(|e| e.iter().zip(&exps[0]).map(|(a, b)| a - b).collect()).collect())
}

/// A monomial map is birational onto its image iff the exponent differences
/// `exp(f_i) - exp(f_0)` span a saturated lattice of rank `n`.
pub fn monomial_birationality_oracle(f: &RationalMap) -> Result<bool> {
    let inv = smith_invariants(exponent_rows(f)?);
    Ok(inv.len() == f.n() && inv.iter().all(|&d| d == 1))
}

/// Number of points of the fiber through the torus point `(1, point)`, in the
/// torus; `None` when the fiber is positive dimensional. Used to validate the
/// monomial oracle against a direct count.
pub fn torus_fiber_size(f: &RationalMap, point: &[i64]) -> Result<Option<usize>> {
    let xr = f.ring();
    let n = xr.nvars() - 1;
    if point.len() != n || point.contains(&0) {
        return Err(Error::Input("point must have n nonzero coordinates".into()));
    }
    let field = f.field();
    let names: Vec<String> = xr.vars()[1..].to_vec();
    let ar = RingContext::build(field, names, None, MonomialOrder::GrevLex)?;
    let mut images = vec![Polynomial::one(&ar)];
    images.extend((0..n).map(|i| Polynomial::var(&ar, i)));
    let mut pt = vec![Polynomial::one(&ar)];
    pt.extend(point.iter().map(|&v| Polynomial::constant(&ar, field.from_i64(v))));
    let aff: Vec<Polynomial> = f.forms().iter().map(|p| p.substitute(&images)).collect::<Result<_>>()?;
    let val: Vec<Polynomial> = f.forms().iter().map(|p| p.substitute(&pt)).collect::<Result<_>>()?;
    let eqs: Vec<Polynomial> = (1..aff.len()).map(|i| &(&aff[i] * &val[0]) - &(&aff[0] * &val[i])).collect();
    let torus = (0..n).fold(Polynomial::one(&ar), |acc, i| &acc * &Polynomial::var(&ar, i));
    let i = Ideal::new(&ar, eqs)?.with_max_pairs(f.max_pairs());
    let (sat, _) = saturate(&i, &i.derive(vec![torus]))?;
    if krull_dimension(&sat)? > 0 {
        return Ok(None);
    }
    let gb = sat.gb()?;
    let leads = gb.lead_monomials();
    let bounds: Vec<u16> = (0..n)
        .map(|v| {
            leads
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(k, &e)| k == v || e == 0))
                .map(|m| m.exps()[v])
                .min()
                .expect("zero-dimensional basis has a pure power in every variable")
        })
        .collect();
    let mut count = 0;
    let mut e = vec![0u16; n];
    loop {
        let m = crate::poly::Monomial::from_exps(&e);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        while k < n {
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    Ok(Some(count))
}
