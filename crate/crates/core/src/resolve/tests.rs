use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::coeff::linalg::{rank, SparseRow};
use crate::coeff::FieldSpec;
use crate::poly::{parse_polynomial, MonomialOrder, RingContext};

fn ring(vars: &[&str]) -> Ring {
    RingContext::new(FieldSpec::Rationals, vars).unwrap()
}

fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|t| parse_polynomial(t, r).unwrap()).collect()
}

fn table(entries: &[(usize, i64, usize)]) -> BettiTable {
    BettiTable::from_entries(1, entries.iter().map(|&(i, j, b)| ((i, vec![j]), b)))
}

fn resolve_ideal(r: &Ring, gens: &[&str]) -> (FreeResolution, BettiTable) {
    let pres = GradedModulePresentation::of_ideal(r, &polys(r, gens)).unwrap();
    let res = minimal_free_resolution(&pres).unwrap();
    let bt = betti_numbers(&pres).unwrap();
    (res, bt)
}

/// Betti numbers of `R/I` for a monomial ideal from the Taylor complex tensored with the field.
fn taylor_betti(gens: &[Monomial]) -> BettiTable {
    let q = FieldSpec::Rationals;
    let k = gens.len();
    let lcm_of = |mask: usize| {
        (0..k).filter(|i| mask >> i & 1 == 1).fold(Monomial::one(gens[0].nvars()), |a, i| a.lcm(&gens[i]))
    };
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for mask in 0..(1usize << k) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    // Constant part of d_i between subsets with equal lcm, grouped by lcm.
    let mut const_rank: Vec<HashMap<Monomial, usize>> = vec![HashMap::new(); k + 2];
    for i in 1..=k {
        let index: HashMap<usize, usize> = by_size[i - 1].iter().enumerate().map(|(n, &m)| (m, n)).collect();
        let mut groups: HashMap<Monomial, Vec<SparseRow>> = HashMap::new();
        for &s in &by_size[i] {
            let l = lcm_of(s);
            let mut row: SparseRow = Vec::new();
            for (pos, g) in (0..k).filter(|g| s >> g & 1 == 1).enumerate() {
                let t = s & !(1 << g);
                if lcm_of(t) == l {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    row.push((index[&t], q.from_i64(sign)));
                }
            }
            row.sort_by_key(|e| e.0);
            groups.entry(l).or_default().push(row);
        }
        for (l, rows) in groups {
            const_rank[i].insert(l, rank(rows));
        }
    }
    let mut counts: HashMap<(usize, Monomial), usize> = HashMap::new();
    for (i, masks) in by_size.iter().enumerate() {
        for &s in masks {
            *counts.entry((i, lcm_of(s))).or_insert(0) += 1;
        }
    }
    BettiTable::from_entries(
        1,
        counts.into_iter().map(|((i, l), n)| {
            let b = n - const_rank[i].get(&l).copied().unwrap_or(0) - const_rank[i + 1].get(&l).copied().unwrap_or(0);
            ((i, vec![l.degree() as i64]), b)
        }),
    )
}

#[test]
fn square_of_the_maximal_ideal() {
    let r = ring(&["x", "y"]);
    let (res, bt) = resolve_ideal(&r, &["x^2", "x*y", "y^2"]);
    let expect = table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    assert_eq!(bt, expect);
    assert_eq!(betti_table(&res).unwrap(), expect);
    assert_eq!(res.ranks(), vec![1, 3, 2]);
    assert!(res.check_complex());
    assert!(!res.has_unit_entries());
    assert_eq!(bt.ideal_regularity(), Some(2));
    assert_eq!(bt.regularity(), Some(1));
    assert_eq!(projective_dimension(&bt), 2);
    assert_eq!(depth_of_quotient(&bt, 2), 0);
}

#[test]
fn principal_ideal() {
    let r = ring(&["x", "y", "z"]);
    let (res, bt) = resolve_ideal(&r, &["x"]);
    assert_eq!(bt, table(&[(0, 0, 1), (1, 1, 1)]));
    assert_eq!(res.length(), 1);
    assert_eq!(depth_of_quotient(&bt, 3), 2);
}

#[test]
fn koszul_complex_of_three_variables() {
    let r = ring(&["x", "y", "z"]);
    let (res, bt) = resolve_ideal(&r, &["x", "y", "z"]);
    assert_eq!(bt, table(&[(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]));
    assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
    assert!(res.check_complex());
}

#[test]
fn twisted_cubic() {
    let r = ring(&["a", "b", "c", "d"]);
    let (res, bt) = resolve_ideal(&r, &["a*c - b^2", "b*d - c^2", "a*d - b*c"]);
    assert_eq!(bt, table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]));
    assert!(!res.has_unit_entries());
    assert_eq!(bt.ideal_regularity(), Some(2));
}

#[test]
fn complete_intersection_with_redundant_generator() {
    let r = ring(&["x", "y", "z"]);
    let (res, bt) = resolve_ideal(&r, &["x^2", "y^3", "x^2*z + y^3"]);
    assert_eq!(bt, table(&[(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 5, 1)]));
    assert_eq!(betti_table(&res).unwrap(), bt);
}

#[test]
fn frame_is_a_complex_and_may_be_non_minimal() {
    let r = ring(&["x", "y", "z"]);
    let pres = GradedModulePresentation::of_ideal(&r, &polys(&r, &["x*y", "x*z", "y*z", "x^2 - y^2"])).unwrap();
    let frame = schreyer_resolution(&pres).unwrap();
    assert!(frame.check_complex());
    assert!(frame.length() <= 3);
    assert!(matches!(betti_table(&frame), Err(Error::NotMinimal)));
    let min = minimize(&frame);
    assert_eq!(BettiTable::from_frame(&frame), betti_table(&min).unwrap());
}

#[test]
fn syzygies_of_generic_linear_forms() {
    let r = ring(&["x", "y"]);
    let m = PolyMatrix::from_rows(&r, vec![polys(&r, &["x", "y"])]).unwrap();
    let pres = GradedModulePresentation::new(Grading::standard(2), vec![vec![0]], m.clone()).unwrap();
    let s = syzygies(&pres).unwrap();
    assert_eq!(s.ncols(), 1);
    assert!(m.mul(&s).unwrap().is_zero());
    let col = s.column(0);
    assert_eq!(col[0].total_degree(), 1);
}

#[test]
fn syzygies_of_quadrics_are_minimal() {
    let r = ring(&["x", "y"]);
    let m = PolyMatrix::from_rows(&r, vec![polys(&r, &["x^2", "x*y", "y^2"])]).unwrap();
    let pres = GradedModulePresentation::new(Grading::standard(2), vec![vec![0]], m.clone()).unwrap();
    let s = syzygies(&pres).unwrap();
    assert_eq!(s.ncols(), 2);
    assert!(m.mul(&s).unwrap().is_zero());
}

#[test]
fn non_homogeneous_input_is_rejected() {
    let r = ring(&["x", "y"]);
    let e = GradedModulePresentation::of_ideal(&r, &polys(&r, &["x^2 + y"])).unwrap_err();
    assert!(matches!(e, Error::NotHomogeneous));
}

#[test]
fn bigraded_tables() {
    let xs: Vec<String> = ["x0", "x1", "x2"].iter().map(|s| s.to_string()).collect();
    let ys: Vec<String> = ["Y0", "Y1", "Y2"].iter().map(|s| s.to_string()).collect();
    let r = RingContext::bigraded(FieldSpec::Rationals, &xs, &ys).unwrap();
    // Rees ideal of the standard quadratic map.
    let gens = polys(&r, &["x0*Y0 - x1*Y1", "x0*Y0 - x2*Y2"]);
    let bt = bigraded_betti(&r, &gens).unwrap();
    let ideal = bt.of_ideal();
    assert_eq!(ideal.get(0, &[1, 1]), 2);
    assert_eq!(ideal.get(1, &[2, 2]), 1);
    assert_eq!(bt.x_regularity(), Some(0));
    let mixed = polys(&r, &["x0*Y0 + x1^2"]);
    assert!(matches!(bigraded_betti(&r, &mixed), Err(Error::NotBihomogeneous)));
    let zero = bigraded_betti(&r, &[]).unwrap();
    assert!(zero.of_ideal().is_empty());
    let json = serde_json::to_string(&ideal.to_json()).unwrap();
    assert!(json.contains("\"j\":[1,1]"));
}

#[test]
fn display_layout() {
    let bt = table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    let s = bt.to_string();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("total:"));
    assert!(lines[3].trim_start().starts_with("1:"));
    assert!(lines[3].ends_with("3 2"));
}

fn monomial_gens() -> impl Strategy<Value = Vec<Vec<u16>>> {
    (2usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u16..3, n), 1..=6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_ideals_match_the_taylor_complex(exps in monomial_gens()) {
        let n = exps[0].len();
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let r = RingContext::build(FieldSpec::Rationals, names, None, MonomialOrder::GrevLex).unwrap();
        let gens: Vec<Monomial> = exps.iter().filter(|e| e.iter().any(|&x| x > 0)).map(|e| Monomial::from_exps(e)).collect();
        prop_assume!(!gens.is_empty());
        let polys: Vec<Polynomial> = gens.iter().map(|m| Polynomial::monomial(&r, m.clone(), r.field().one())).collect();
        let pres = GradedModulePresentation::of_ideal(&r, &polys).unwrap();
        let bt = betti_numbers(&pres).unwrap();
        prop_assert_eq!(&bt, &taylor_betti(&gens));
        let res = minimal_free_resolution(&pres).unwrap();
        prop_assert!(res.check_complex());
        prop_assert!(!res.has_unit_entries());
        prop_assert_eq!(&betti_table(&res).unwrap(), &bt);
        prop_assert!(bt.projective_dimension() <= n);
    }

    #[test]
    fn random_binomial_ideals_frame_and_minimal_agree(
        coeffs in prop::collection::vec(-3i64..=3, 6),
    ) {
        let r = ring(&["x", "y", "z"]);
        let quad = ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"];
        let mk = |i: usize| {
            let a = quad[i % 6];
            let b = quad[(i + 2) % 6];
            parse_polynomial(&format!("{a} + ({})*{b}", coeffs[i]), &r).unwrap()
        };
        let gens: Vec<Polynomial> = (0..3).map(mk).collect();
        let pres = GradedModulePresentation::of_ideal(&r, &gens).unwrap();
        let res = minimal_free_resolution(&pres).unwrap();
        prop_assert!(res.check_complex());
        prop_assert!(!res.has_unit_entries());
        prop_assert_eq!(betti_table(&res).unwrap(), betti_numbers(&pres).unwrap());
        // R/I has rank zero for I nonzero.
        let euler: i64 = res.ranks().iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(euler, 0);
    }
}
