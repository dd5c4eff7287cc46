use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coeff::linalg::rank;
use crate::coeff::FieldSpec;
use crate::poly::{parse_polynomial, Ring, RingContext};

fn plane(forms: &[&str]) -> RationalMap {
    RationalMap::parse(FieldSpec::Rationals, &["x", "y", "z"], &[], forms).unwrap()
}

fn gabber(n: usize, d: usize) -> RationalMap {
    let vars: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut forms = vec![format!("x0^{d}"), format!("x1*x0^{}", d - 1)];
    for i in 2..=n {
        forms.push(format!("x{i}*x0^{} + x{}^{d}", d - 1, i - 1));
    }
    let fs: Vec<&str> = forms.iter().map(|s| s.as_str()).collect();
    RationalMap::parse(FieldSpec::Rationals, &names, &[], &fs).unwrap()
}

fn identity(n: usize) -> RationalMap {
    let vars: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    RationalMap::parse(FieldSpec::Rationals, &names, &[], &names).unwrap()
}

/// Whether `a` and `b` are proportional by a nonzero scalar.
fn proportional(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let Some(i) = a.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let c = b[i].lead_coeff().unwrap().div(a[i].lead_coeff().unwrap());
    a.iter().zip(b).all(|(p, q)| p.scale(&c) == *q)
}

fn ypolys(jd: &JacobianDual, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|t| parse_polynomial(t, jd.psi().ring()).unwrap()).collect()
}

#[test]
fn standard_quadratic_dual_and_inverse() {
    let f = plane(&["y*z", "x*z", "x*y"]);
    let jd = jacobian_dual(&f).unwrap();
    assert_eq!((jd.psi().nrows(), jd.psi().ncols()), (2, 3));
    assert!(jd.fiber().is_zero());
    // Each row is a multiple of one of Y0 x - Y1 y, Y1 y - Y2 z.
    for r in jd.psi().rows() {
        assert!(r.iter().all(|p| p.is_zero() || p.total_degree() == 1));
        assert_eq!(r.iter().filter(|p| p.is_zero()).count(), 1);
    }
    assert_eq!(rank_mod(jd.psi(), jd.fiber()).unwrap(), 2);
    let v = is_birational(&f).unwrap();
    assert_eq!(v, Verdict { birational: true, rank: 2, n: 2 });
    let inv = inverse_representative(&f).unwrap();
    assert_eq!(inv.degree, 2);
    assert!(inv.content_removed);
    assert!(proportional(&inv.forms, &ypolys(&jd, &["Y1*Y2", "Y0*Y2", "Y0*Y1"])));
    assert!(verify_inverse(&f, &inv.forms).unwrap());
}

#[test]
fn veronese_rank_needs_the_fiber() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "x*y", "y^2"]).unwrap();
    let jd = jacobian_dual(&f).unwrap();
    assert_eq!(jd.n(), 1);
    assert_eq!(jd.psi().nrows(), 2);
    let b = jd.fiber();
    assert_eq!(b.gens().len(), 1);
    assert_eq!(rank_mod(jd.psi(), b).unwrap(), 1);
    // Over k[Y] without the relation, the determinant Y0 Y2 - Y1^2 is nonzero.
    assert_eq!(rank_mod(jd.psi(), &Ideal::zero(b.ring())).unwrap(), 2);
    assert!(is_birational(&f).unwrap().birational);
    let inv = inverse_representative(&f).unwrap();
    assert!(!inv.content_removed);
    assert!(verify_inverse(&f, &inv.forms).unwrap());
}

#[test]
fn identity_maps() {
    for n in 1..=4 {
        let f = identity(n);
        let v = is_birational(&f).unwrap();
        assert!(v.birational && v.rank == n);
        let inv = inverse_representative(&f).unwrap();
        assert_eq!(inv.degree, 1);
        let jd = jacobian_dual(&f).unwrap();
        let ys: Vec<String> = (0..=n).map(|i| format!("Y{i}")).collect();
        let ys: Vec<&str> = ys.iter().map(|s| s.as_str()).collect();
        assert!(proportional(&inv.forms, &ypolys(&jd, &ys)));
        assert!(verify_inverse(&f, &inv.forms).unwrap());
    }
}

#[test]
fn reordered_conic_parametrization_is_birational() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "y^2", "x*y"]).unwrap();
    assert_eq!(is_birational(&f).unwrap(), Verdict { birational: true, rank: 1, n: 1 });
}

#[test]
fn double_cover_has_no_linear_equations() {
    let f = RationalMap::parse(FieldSpec::Rationals, &["x", "y"], &[], &["x^2", "y^2"]).unwrap();
    assert!(matches!(jacobian_dual(&f), Err(Error::EmptyLinearPart)));
    assert_eq!(is_birational(&f).unwrap(), Verdict { birational: false, rank: 0, n: 1 });
}

#[test]
fn gabber_plane_quadratic() {
    let f = gabber(2, 2);
    assert!(is_birational(&f).unwrap().birational);
    let inv = inverse_representative(&f).unwrap();
    assert_eq!(inv.degree, 2);
    assert!(verify_inverse(&f, &inv.forms).unwrap());
}

#[test]
fn gabber_inverse_degrees() {
    for (n, d) in [(2, 3), (3, 2)] {
        let f = gabber(n, d);
        let inv = inverse_representative(&f).unwrap();
        assert_eq!(inv.degree as usize, d.pow(n as u32 - 1), "n={n} d={d}");
        assert!(verify_inverse(&f, &inv.forms).unwrap());
    }
}

#[test]
fn composition_examples() {
    let f = plane(&["y*z", "x*z", "x*y"]);
    let yr = f.y_ring().unwrap();
    let g: Vec<Polynomial> = ["Y0*Y0", "Y1^2", "Y2^2"].iter().map(|s| parse_polynomial(s, &yr).unwrap()).collect();
    assert!(!verify_inverse(&f, &g).unwrap());
    let same: Vec<Polynomial> = ["Y1*Y2", "Y0*Y2", "Y0*Y1"].iter().map(|s| parse_polynomial(s, &yr).unwrap()).collect();
    let h = compose(&same, &f).unwrap();
    let x = f.ring();
    let expect: Vec<Polynomial> = ["x^2*y*z", "x*y^2*z", "x*y*z^2"].iter().map(|s| parse_polynomial(s, x).unwrap()).collect();
    assert_eq!(h, expect);
    assert!(verify_inverse(&f, &same).unwrap());
    assert!(matches!(verify_inverse(&f, &same[..2]), Err(Error::LengthMismatch { .. })));
}

#[test]
fn inverse_on_a_quadric_surface() {
    // Projection of a smooth quadric from a point on it.
    let f = RationalMap::parse(FieldSpec::Rationals, &["x", "y", "z", "w"], &["x*w - y*z"], &["x", "y", "z"]).unwrap();
    let v = is_birational(&f).unwrap();
    assert!(v.birational, "{v:?}");
    let inv = inverse_representative(&f).unwrap();
    assert!(verify_inverse(&f, &inv.forms).unwrap());
}

#[test]
fn zero_matrix_has_rank_zero() {
    let r = RingContext::new(FieldSpec::Rationals, &["Y0", "Y1"]).unwrap();
    let m = PolyMatrix::zeros(&r, 3, 2);
    assert_eq!(rank_mod(&m, &Ideal::zero(&r)).unwrap(), 0);
}

#[test]
fn combinations_are_lexicographic() {
    let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
    assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    assert_eq!(Combinations::new(2, 3).count(), 0);
    assert_eq!(Combinations::new(3, 0).count(), 1);
}

/// Rank over the field at random points of the conic `Y0 Y2 = Y1^2`, or of the plane when `on_conic` is false.
fn rank_at_points(m: &PolyMatrix, on_conic: bool, rng: &mut ChaCha8Rng) -> usize {
    let q = FieldSpec::Rationals;
    let ring = m.ring();
    let mut best = 0;
    for _ in 0..4 {
        let pt: Vec<i64> = if on_conic {
            let (s, t) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
            vec![s * s, s * t, t * t]
        } else {
            (0..3).map(|_| rng.gen_range(-20..=20)).collect()
        };
        let images: Vec<Polynomial> = pt.iter().map(|&v| Polynomial::constant(ring, q.from_i64(v))).collect();
        let all = m.rows();
        let rows = all.iter().map(|r| {
            r.iter()
                .enumerate()
                .filter_map(|(j, p)| p.substitute(&images).unwrap().constant_value().filter(|c| !c.is_zero()).map(|c| (j, c)))
                .collect::<Vec<_>>()
        });
        best = best.max(rank(rows));
    }
    best
}

fn random_matrix(r: &Ring, coeffs: &[i64], nr: usize, nc: usize) -> PolyMatrix {
    let mons = ["Y0", "Y1", "Y2", "Y0*Y1", "Y1^2", "Y2^2"];
    let rows = (0..nr)
        .map(|i| {
            (0..nc)
                .map(|j| {
                    let k = (i * nc + j) % coeffs.len();
                    let deg2 = (i + j) % 2 == 0;
                    let (a, b) = if deg2 { (mons[3], mons[4 + (k % 2)]) } else { (mons[k % 3], mons[(k + 1) % 3]) };
                    parse_polynomial(&format!("({})*{a} + ({})*{b}", coeffs[k], coeffs[(k + 1) % coeffs.len()]), r).unwrap()
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(r, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_matches_evaluation_at_points(
        coeffs in prop::collection::vec(-2i64..=2, 8),
        nr in 1usize..4,
        nc in 1usize..4,
        seed in any::<u64>(),
    ) {
        let r = RingContext::new(FieldSpec::Rationals, &["Y0", "Y1", "Y2"]).unwrap();
        let m = random_matrix(&r, &coeffs, nr, nc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(rank_mod(&m, &Ideal::zero(&r)).unwrap(), rank_at_points(&m, false, &mut rng));
        let conic = Ideal::new(&r, vec![parse_polynomial("Y0*Y2 - Y1^2", &r).unwrap()]).unwrap();
        prop_assert_eq!(rank_mod(&m, &conic).unwrap(), rank_at_points(&m, true, &mut rng));
    }

    #[test]
    fn rank_is_invariant_under_permutation_and_scaling(
        coeffs in prop::collection::vec(-2i64..=2, 8),
        rot in 0usize..3,
        scale_row in 0usize..3,
    ) {
        let r = RingContext::new(FieldSpec::Rationals, &["Y0", "Y1", "Y2"]).unwrap();
        let conic = Ideal::new(&r, vec![parse_polynomial("Y0*Y2 - Y1^2", &r).unwrap()]).unwrap();
        let m = random_matrix(&r, &coeffs, 3, 3);
        let base = rank_mod(&m, &conic).unwrap();
        let perm: Vec<usize> = (0..3).map(|i| (i + rot) % 3).collect();
        let permuted = m.submatrix(&perm, &[2, 0, 1]);
        prop_assert_eq!(rank_mod(&permuted, &conic).unwrap(), base);
        // Y0 + Y1 is nonzero modulo the conic.
        let u = parse_polynomial("Y0 + Y1", &r).unwrap();
        let mut rows = m.rows();
        rows[scale_row] = rows[scale_row].iter().map(|p| p * &u).collect();
        let scaled = PolyMatrix::from_rows(&r, rows).unwrap();
        prop_assert_eq!(rank_mod(&scaled, &conic).unwrap(), base);
    }
}
