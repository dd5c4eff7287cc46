use super::{terms_to_column, FreeResolution};
use crate::groebner::MTerm;
use crate::poly::Polynomial;

/// Prunes a graded free resolution to a minimal one by cancelling unit entries.
///
/// For a unit `u` at row `a`, column `b` of `d_(k+1)`, column operations clear row `a`;
/// then basis element `a` of `F_k` and `b` of `F_(k+1)` split off as a trivial complex.
pub fn minimize(res: &FreeResolution) -> FreeResolution {
    let ring = res.ring.clone();
    let mut twists = res.twists.clone();
    let mut maps: Vec<Vec<Vec<Polynomial>>> = res
        .maps
        .iter()
        .enumerate()
        .map(|(k, cols)| cols.iter().map(|v| terms_to_column(&ring, v, twists[k].len())).collect())
        .collect();

    for k in 0..maps.len() {
        while let Some((a, b)) = find_unit(&maps[k]) {
            let u = maps[k][b][a].constant_value().unwrap();
            let inv = u.inv().unwrap();
            let pivot = maps[k][b].clone();
            for c in 0..maps[k].len() {
                if c == b || maps[k][c][a].is_zero() {
                    continue;
                }
                let lambda = maps[k][c][a].scale(&inv);
                for (row, p) in pivot.iter().enumerate() {
                    if !p.is_zero() {
                        let t = &maps[k][c][row] - &(&lambda * p);
                        maps[k][c][row] = t;
                    }
                }
            }
            maps[k].remove(b);
            for col in maps[k].iter_mut() {
                col.remove(a);
            }
            if k > 0 {
                maps[k - 1].remove(a);
            }
            if k + 1 < maps.len() {
                for col in maps[k + 1].iter_mut() {
                    col.remove(b);
                }
            }
            twists[k].remove(a);
            twists[k + 1].remove(b);
        }
    }
    while twists.len() > 1 && twists.last().is_some_and(|t| t.is_empty()) {
        twists.pop();
        maps.pop();
    }
    let maps = maps
        .into_iter()
        .map(|cols| {
            cols.into_iter()
                .map(|col| {
                    let mut v: Vec<MTerm> = Vec::new();
                    for (row, p) in col.into_iter().enumerate() {
                        v.extend(p.into_terms().into_iter().map(|(m, c)| (m, row as u32, c)));
                    }
                    v
                })
                .collect()
        })
        .collect();
    FreeResolution { ring, grading: res.grading.clone(), twists, maps, minimal: true }
}

fn find_unit(cols: &[Vec<Polynomial>]) -> Option<(usize, usize)> {
    let nrows = cols.first().map_or(0, |c| c.len());
    (0..nrows).find_map(|a| cols.iter().position(|c| !c[a].is_zero() && c[a].is_constant()).map(|b| (a, b)))
}
