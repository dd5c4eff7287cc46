use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{Degree, FreeResolution};
use crate::coeff::linalg::{rank, SparseRow};

/// Graded Betti numbers `beta_(i,D)`, indexed by homological degree and internal (multi)degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    grading_rank: usize,
    entries: BTreeMap<(usize, Degree), usize>,
}

/// One nonzero entry in JSON form; `j` is an integer for a standard grading, a pair when bigraded.
#[derive(Clone, Debug, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: serde_json::Value,
    pub beta: usize,
}

impl BettiTable {
    pub fn new(grading_rank: usize) -> Self {
        BettiTable { grading_rank, entries: BTreeMap::new() }
    }

    pub fn from_entries(grading_rank: usize, entries: impl IntoIterator<Item = ((usize, Degree), usize)>) -> Self {
        let mut t = Self::new(grading_rank);
        for (k, v) in entries {
            if v > 0 {
                *t.entries.entry(k).or_insert(0) += v;
            }
        }
        t
    }

    /// Counts basis degrees of a minimal resolution.
    pub fn from_twists(grading_rank: usize, twists: &[Vec<Degree>]) -> Self {
        Self::from_entries(
            grading_rank,
            twists.iter().enumerate().flat_map(|(i, t)| t.iter().map(move |d| ((i, d.clone()), 1))),
        )
    }

    /// Betti numbers of any graded free resolution, minimal or not:
    /// `beta_(k,D) = rank F_k(D) - rank c_k(D) - rank c_(k+1)(D)` where `c_k` is the
    /// constant part of `d_k` between basis elements of degree `D`.
    pub fn from_frame(res: &FreeResolution) -> Self {
        let levels = res.twists.len();
        // const_rank[k][D] = rank of the constant part of d_k in degree D, k >= 1.
        let mut const_rank: Vec<HashMap<Degree, usize>> = vec![HashMap::new(); levels + 1];
        for (k1, cols) in res.maps.iter().enumerate() {
            let degs = &res.twists[k1 + 1];
            let mut groups: HashMap<&Degree, Vec<SparseRow>> = HashMap::new();
            for (b, col) in cols.iter().enumerate() {
                let mut row: SparseRow = col.iter().filter(|t| t.0.is_one()).map(|t| (t.1 as usize, t.2.clone())).collect();
                if row.is_empty() {
                    continue;
                }
                row.sort_by_key(|e| e.0);
                groups.entry(&degs[b]).or_default().push(row);
            }
            for (d, rows) in groups {
                const_rank[k1 + 1].insert(d.clone(), rank(rows));
            }
        }
        let mut counts: BTreeMap<(usize, Degree), usize> = BTreeMap::new();
        for (k, t) in res.twists.iter().enumerate() {
            for d in t {
                *counts.entry((k, d.clone())).or_insert(0) += 1;
            }
        }
        let entries = counts.into_iter().map(|((k, d), n)| {
            let r_in = const_rank[k].get(&d).copied().unwrap_or(0);
            let r_out = const_rank.get(k + 1).and_then(|m| m.get(&d)).copied().unwrap_or(0);
            ((k, d), n - r_in - r_out)
        });
        Self::from_entries(res.grading.rank(), entries)
    }

    pub fn grading_rank(&self) -> usize {
        self.grading_rank
    }

    pub fn get(&self, i: usize, deg: &[i64]) -> usize {
        self.entries.get(&(i, deg.to_vec())).copied().unwrap_or(0)
    }

    /// Nonzero entries in increasing `(i, D)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Degree, usize)> {
        self.entries.iter().map(|((i, d), b)| (*i, d, *b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_D beta_(i,D)`.
    pub fn total(&self, i: usize) -> usize {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Castelnuovo–Mumford regularity `max (|D| - i)` with `|D|` the total degree.
    pub fn regularity(&self) -> Option<i64> {
        self.entries().map(|(i, d, _)| d.iter().sum::<i64>() - i as i64).max()
    }

    /// For the table of `R/I`: the regularity of `I`, `max_(i>=1) (|D| - i + 1)`.
    pub fn ideal_regularity(&self) -> Option<i64> {
        self.entries().filter(|e| e.0 >= 1).map(|(i, d, _)| d.iter().sum::<i64>() - i as i64 + 1).max()
    }

    /// For a bigraded table: `max (a - i)` over entries of degree `(a, b)`.
    pub fn x_regularity(&self) -> Option<i64> {
        self.entries().map(|(i, d, _)| d[0] - i as i64).max()
    }

    /// For the table of `R/I`: the table of `I`, shifting homological degree down by one.
    pub fn of_ideal(&self) -> BettiTable {
        Self::from_entries(
            self.grading_rank,
            self.entries().filter(|e| e.0 >= 1).map(|(i, d, b)| ((i - 1, d.clone()), b)),
        )
    }

    pub fn to_json(&self) -> Vec<BettiEntry> {
        self.entries()
            .map(|(i, d, beta)| {
                let j = if d.len() == 1 { serde_json::json!(d[0]) } else { serde_json::json!(d) };
                BettiEntry { i, j, beta }
            })
            .collect()
    }
}

impl fmt::Display for BettiTable {
    /// Row `s`, column `i` holds `beta_(i, i+s)`; bigraded tables are listed entrywise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(zero)");
        }
        if self.grading_rank != 1 {
            for (i, d, b) in self.entries() {
                let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                writeln!(f, "beta_{i},({}) = {b}", ds.join(","))?;
            }
            return Ok(());
        }
        let pd = self.projective_dimension();
        let rows: BTreeSet<i64> = self.entries().map(|(i, d, _)| d[0] - i as i64).collect();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let width = self.entries().map(|e| e.2.to_string().len()).max().unwrap_or(1).max(
            (0..=pd).map(|i| self.total(i).to_string().len()).max().unwrap_or(1),
        );
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(2).max(6);
        write!(f, "{:>label$}", "")?;
        for i in 0..=pd {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for i in 0..=pd {
            write!(f, " {:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for s in rows {
            write!(f, "{:>label$}", format!("{s}:"))?;
            for i in 0..=pd {
                write!(f, " {:>width$}", cell(self.get(i, &[i as i64 + s])))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
