use std::collections::HashMap;

use super::{add_deg, lex_cmp, Degree, FreeResolution, GradedModulePresentation};
use crate::error::{Error, Result};
use crate::groebner::engine::{normalize_terms, sub_mul};
use crate::groebner::{GbEngine, MTerm, ModuleOrder};
use crate::poly::Monomial;

/// Order data of one free module of the frame.
struct Frame {
    order: ModuleOrder,
    shifts: Vec<Monomial>,
    prio: Vec<u32>,
}

/// Non-minimal graded free resolution built from a Gröbner basis of the
/// presentation's columns with Schreyer's induced orders.
///
/// Each level is sorted so that, within a component, leading monomials
/// decrease lexicographically; the frame then has length at most the number
/// of variables.
pub fn schreyer_resolution(pres: &GradedModulePresentation) -> Result<FreeResolution> {
    let ring = pres.ring().clone();
    let n = ring.nvars();
    let base = ring.order().clone();
    let grading = pres.grading().clone();
    let r0 = pres.matrix().nrows();

    let sugar_w = grading.total_weights();
    let comp_deg: Vec<i64> = pres.row_degrees().iter().map(|d| d.iter().sum()).collect();
    let top = ModuleOrder::top(base.clone(), r0);
    let mut eng = GbEngine::new(top, sugar_w, comp_deg, pres.max_pairs());
    for j in 0..pres.matrix().ncols() {
        let v = pres.column_terms(j);
        if !v.is_empty() {
            eng.add_generator(v);
        }
    }
    eng.complete(None)?;
    let mut gens = eng.reduced_basis();

    let shifts = vec![Monomial::one(n); r0];
    let prio: Vec<u32> = (0..r0 as u32).rev().collect();
    let mut frame = Frame { order: ModuleOrder::schreyer(base.clone(), shifts.clone(), prio.clone()), shifts, prio };
    let mut twists: Vec<Vec<Degree>> = vec![pres.row_degrees().to_vec()];
    let mut maps: Vec<Vec<Vec<MTerm>>> = Vec::new();

    while !gens.is_empty() {
        if maps.len() > n {
            return Err(Error::Internal("Schreyer frame longer than the number of variables".into()));
        }
        gens.sort_by(|a, b| a[0].1.cmp(&b[0].1).then_with(|| lex_cmp(&b[0].0, &a[0].0)));
        let prev = twists.last().unwrap();
        let degs: Vec<Degree> = gens.iter().map(|g| add_deg(&grading.of_monomial(&g[0].0), &prev[g[0].1 as usize])).collect();

        let shifts: Vec<Monomial> = gens.iter().map(|g| g[0].0.mul(&frame.shifts[g[0].1 as usize])).collect();
        let mut idx: Vec<usize> = (0..gens.len()).collect();
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (frame.prio[gens[a][0].1 as usize], frame.prio[gens[b][0].1 as usize]);
            pa.cmp(&pb).then(b.cmp(&a))
        });
        let mut prio = vec![0u32; gens.len()];
        for (rank, &i) in idx.iter().enumerate() {
            prio[i] = rank as u32;
        }
        let next = Frame { order: ModuleOrder::schreyer(base.clone(), shifts.clone(), prio.clone()), shifts, prio };

        let syz = syzygies_of_basis(&gens, &frame.order, &next.order)?;
        maps.push(gens);
        twists.push(degs);
        gens = syz;
        frame = next;
    }
    Ok(FreeResolution { ring, grading, twists, maps, minimal: false })
}

/// Schreyer syzygies of a Gröbner basis `gens` (monic, sorted) under `order`;
/// the result is a Gröbner basis of the syzygy module under `next`.
fn syzygies_of_basis(gens: &[Vec<MTerm>], order: &ModuleOrder, next: &ModuleOrder) -> Result<Vec<Vec<MTerm>>> {
    let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, g) in gens.iter().enumerate() {
        by_comp.entry(g[0].1).or_default().push(i);
    }
    let field_one = gens[0][0].2.field().one();
    let mut out = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        let (lmi, ci) = (&gi[0].0, gi[0].1);
        let cands: Vec<(usize, Monomial)> = by_comp[&ci]
            .iter()
            .filter(|&&j| j > i)
            .map(|&j| (j, lmi.quotient_of(&lmi.lcm(&gens[j][0].0)).unwrap()))
            .collect();
        for (a, (j, mij)) in cands.iter().enumerate() {
            let redundant = cands.iter().enumerate().any(|(b, (_, m))| {
                b != a && m.divides(mij) && (m != mij || b < a)
            });
            if redundant {
                continue;
            }
            let gj = &gens[*j];
            let lcm = lmi.mul(mij);
            let mji = gj[0].0.quotient_of(&lcm).unwrap();
            let si: Vec<MTerm> = gi[1..].iter().map(|(m, c, s)| (m.mul(mij), *c, s.clone())).collect();
            let mut s = sub_mul(order, &si, &gj[1..], &mji, &field_one);
            let mut syz: Vec<MTerm> = vec![(mij.clone(), i as u32, field_one.clone()), (mji.clone(), *j as u32, field_one.neg())];
            while let Some((m, c, coef)) = s.first() {
                let k = by_comp
                    .get(c)
                    .and_then(|list| list.iter().copied().find(|&k| gens[k][0].0.divides(m)))
                    .ok_or_else(|| Error::Internal("S-vector does not reduce to zero".into()))?;
                let q = gens[k][0].0.quotient_of(m).unwrap();
                let coef = coef.clone();
                s = sub_mul(order, &s[1..], &gens[k][1..], &q, &coef);
                syz.push((q, k as u32, coef.neg()));
            }
            let syz = normalize_terms(next, syz);
            debug_assert!(syz[0].1 == i as u32 && &syz[0].0 == mij, "Schreyer leading term");
            out.push(syz);
        }
    }
    Ok(out)
}
