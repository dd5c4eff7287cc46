//! Sparse Gaussian elimination over a field.

use super::Scalar;

/// A sparse vector: `(index, value)` pairs with strictly increasing indices and nonzero values.
pub type SparseRow = Vec<(usize, Scalar)>;

fn axpy(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    // a - c * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form.
#[derive(Default)]
pub struct Echelon {
    pivots: std::collections::BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` by the stored pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut done: SparseRow = Vec::new();
        while let Some((col, v)) = row.first().cloned() {
            match self.pivots.get(&col) {
                Some(p) => row = axpy(&row, &v, p),
                None => {
                    done.push((col, v));
                    row.remove(0);
                }
            }
        }
        done
    }

    /// Adds `row`; returns whether it was independent of the previous rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.first() {
            None => false,
            Some((col, v)) => {
                let inv = v.inv().unwrap();
                let col = *col;
                let r = r.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
                self.pivots.insert(col, r);
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of the matrix with the given sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
