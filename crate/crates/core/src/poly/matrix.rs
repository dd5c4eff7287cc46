use std::fmt;

use super::polynomial::Polynomial;
use super::ring::{same_ring, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: r.len() });
            }
            for p in r {
                if !same_ring(p.ring(), ring) {
                    return Err(Error::ContextMismatch);
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols, data })
    }

    pub fn from_columns(ring: &Ring, nrows: usize, cols: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut m = Self::zeros(ring, nrows, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::LengthMismatch { expected: nrows, got: c.len() });
            }
            for (i, p) in c.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(same_ring(p.ring(), &self.ring), "ring mismatch");
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &o.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: o.rows });
        }
        let mut out = Self::zeros(&self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                out.data[i * o.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * cols.len() + b] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Same entries moved into `target` by variable names.
    pub fn map_to(&self, target: &Ring) -> Result<Self> {
        let data = self.data.iter().map(|p| p.map_to(target)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a: Vec<Vec<Polynomial>> = self.rows();
        let mut prev = Polynomial::one(&self.ring);
        let mut sign_neg = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_neg = !sign_neg;
                    }
                    None => return Ok(Polynomial::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = num
                        .exact_div(&prev)
                        .ok_or_else(|| Error::Internal("inexact Bareiss division".into()))?;
                }
                a[i][k] = Polynomial::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_neg { d.neg_ref() } else { d })
    }

    /// Signed maximal minors of an `r x (r+1)` matrix: entry `j` is
    /// `(-1)^j` times the determinant with column `j` deleted.
    pub fn signed_maximal_minors(&self) -> Result<Vec<Polynomial>> {
        if self.cols != self.rows + 1 {
            return Err(Error::LengthMismatch { expected: self.rows + 1, got: self.cols });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        (0..self.cols)
            .map(|j| {
                let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
                let d = self.submatrix(&rows, &cols).det()?;
                Ok(if j % 2 == 1 { d.neg_ref() } else { d })
            })
            .collect()
    }
}

/// Matrix of formal partial derivatives `d polys[i] / d x_{wrt[j]}`.
pub fn jacobian(polys: &[Polynomial], wrt: &[usize]) -> Result<PolyMatrix> {
    let ring = match polys.first() {
        Some(p) => p.ring().clone(),
        None => return Err(Error::Input("jacobian of an empty list".into())),
    };
    if let Some(&v) = wrt.iter().find(|&&v| v >= ring.nvars()) {
        return Err(Error::Input(format!("variable index {v} out of range")));
    }
    let rows = polys
        .iter()
        .map(|p| {
            if !same_ring(p.ring(), &ring) {
                return Err(Error::ContextMismatch);
            }
            Ok(wrt.iter().map(|&v| p.derivative(v)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(&ring, rows)
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldSpec;
    use crate::poly::{parse_polynomial, RingContext};
    use proptest::prelude::*;

    fn r6() -> Ring {
        RingContext::bigraded(
            FieldSpec::Rationals,
            &["x".into(), "y".into(), "z".into()],
            &["Y0".into(), "Y1".into(), "Y2".into()],
        )
        .unwrap()
    }

    #[test]
    fn jacobian_of_quadratic_relations() {
        let r = r6();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let j = jacobian(&[p("x*Y0 - y*Y1"), p("z*Y2 - y*Y1")], &[0, 1, 2]).unwrap();
        let want = PolyMatrix::from_rows(
            &r,
            vec![vec![p("Y0"), p("-Y1"), p("0")], vec![p("0"), p("-Y1"), p("Y2")]],
        )
        .unwrap();
        assert_eq!(j, want);
        let q = RingContext::new(FieldSpec::Rationals, &["x", "y"]).unwrap();
        let x2 = parse_polynomial("x^2", &q).unwrap();
        assert_eq!(jacobian(&[x2], &[0]).unwrap().get(0, 0).to_string(), "2*x");
        let y = parse_polynomial("y", &q).unwrap();
        assert!(jacobian(&[y], &[0]).unwrap().get(0, 0).is_zero());
    }

    #[test]
    fn determinant_and_minors() {
        let r = r6();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![p("Y0"), p("-Y1"), p("0")], vec![p("0"), p("-Y1"), p("Y2")]]).unwrap();
        let minors = m.signed_maximal_minors().unwrap();
        assert_eq!(minors, vec![p("-Y1*Y2"), p("-Y0*Y2"), p("-Y0*Y1")]);
        let v = PolyMatrix::from_rows(
            &r,
            vec![vec![p("0"), p("x"), p("y")], vec![p("x"), p("0"), p("z")], vec![p("y"), p("z"), p("0")]],
        )
        .unwrap();
        assert_eq!(v.det().unwrap(), p("2*x*y*z"));
    }

    fn small_poly(r: &Ring) -> impl Strategy<Value = Polynomial> {
        let r = r.clone();
        proptest::collection::vec((-3i64..4, proptest::collection::vec(0u16..3, 6)), 0..4).prop_map(move |ts| {
            let f = r.field();
            Polynomial::from_terms(&r, ts.into_iter().map(|(c, e)| (crate::poly::Monomial::from_exps(&e), f.from_i64(c))).collect())
        })
    }

    proptest! {
        #[test]
        fn jacobian_product_rule(p in small_poly(&r6()), q in small_poly(&r6())) {
            let vars: Vec<usize> = (0..6).collect();
            let jpq = jacobian(&[p.mul_ref(&q)], &vars).unwrap();
            let jp = jacobian(std::slice::from_ref(&p), &vars).unwrap();
            let jq = jacobian(std::slice::from_ref(&q), &vars).unwrap();
            for j in 0..6 {
                let rhs = p.mul_ref(jq.get(0, j)).add_ref(&q.mul_ref(jp.get(0, j)));
                prop_assert_eq!(jpq.get(0, j), &rhs);
            }
        }

        #[test]
        fn det_of_product_is_product_of_dets(
            a in proptest::collection::vec(small_poly(&r6()), 4),
            b in proptest::collection::vec(small_poly(&r6()), 4),
        ) {
            let r = r6();
            let ma = PolyMatrix::from_rows(&r, vec![a[0..2].to_vec(), a[2..4].to_vec()]).unwrap();
            let mb = PolyMatrix::from_rows(&r, vec![b[0..2].to_vec(), b[2..4].to_vec()]).unwrap();
            let lhs = ma.mul(&mb).unwrap().det().unwrap();
            prop_assert_eq!(lhs, ma.det().unwrap().mul_ref(&mb.det().unwrap()));
        }
    }
}
