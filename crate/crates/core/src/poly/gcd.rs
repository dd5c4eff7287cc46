//! Multivariate polynomial GCD over a field by recursive subresultant
//! pseudo-remainder sequences.

use super::polynomial::Polynomial;
use super::ring::same_ring;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert!(same_ring(a.ring(), b.ring()), "ring mismatch");
    gcd_rec(a, b).monic()
}

/// GCD of a list, folded pairwise.
pub fn gcd_all(ps: &[Polynomial]) -> Option<Polynomial> {
    let mut it = ps.iter();
    let mut g = it.next()?.monic();
    for p in it {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd(&g, p);
    }
    Some(g)
}

fn main_var(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    (0..a.ring().nvars()).find(|&v| a.involves(v) || b.involves(v))
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    if a.is_monomial() && b.is_monomial() {
        let m = a.terms()[0].0.gcd(&b.terms()[0].0);
        return Polynomial::monomial(a.ring(), m, a.ring().field().one());
    }
    let v = main_var(a, b).unwrap();
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd_rec(a, &content(b, v));
    }
    if db == 0 {
        return gcd_rec(&content(a, v), b);
    }
    let (ca, cb) = (content(a, v), content(b, v));
    let c = gcd_rec(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = subresultant_gcd(&pa, &pb, v);
    g.mul_ref(&c)
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.ring());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return Polynomial::one(p.ring());
        }
    }
    g.monic()
}

fn lead_coeff_in(p: &Polynomial, v: usize) -> Polynomial {
    p.coefficients_in(v).pop().unwrap_or_else(|| Polynomial::zero(p.ring()))
}

fn var_power(p: &Polynomial, v: usize, e: u32) -> Polynomial {
    Polynomial::var(p.ring(), v).pow(e)
}

/// Pseudo-remainder of `a` by `b` in variable `v`: `lc(b)^(da-db+1) a mod b`.
fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lb = lead_coeff_in(b, v);
    let mut r = a.clone();
    let mut steps = 0u32;
    let total = a.degree_in(v) + 1 - db;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lead_coeff_in(&r, v);
        r = r.mul_ref(&lb).sub_ref(&lr.mul_ref(&var_power(b, v, dr - db)).mul_ref(b));
        steps += 1;
    }
    if steps < total {
        r = r.mul_ref(&lb.pow(total - steps));
    }
    r
}

fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content(p, v);
    p.exact_div(&c).expect("content divides")
}

fn subresultant_gcd(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let ring = a.ring().clone();
    let mut g = Polynomial::one(&ring);
    let mut h = Polynomial::one(&ring);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(&ring);
        }
        let div = g.mul_ref(&h.pow(delta));
        a = b;
        b = r.exact_div(&div).expect("subresultant division is exact");
        g = lead_coeff_in(&a, v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    primitive_part(&b, v)
}
