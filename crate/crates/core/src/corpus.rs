//! Built-in maps with expected analysis results.

use serde::Serialize;

use crate::analysis::AnalysisReport;
use crate::error::{Error, Result};
use crate::mapfile::MapFile;
use crate::rees::RationalMap;

/// Fields of an analysis report that an entry pins. `None` means not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub birational: Option<bool>,
    pub rank: Option<usize>,
    pub inverse_degree: Option<u32>,
    pub relation_type: Option<u32>,
    pub rees_cm: Option<bool>,
    pub saturated: Option<bool>,
    pub analytic_spread: Option<usize>,
    pub x_regularity: Option<i64>,
    /// Prefix of the f profile `Reg(I^r) - r*delta`.
    pub f_values: Option<Vec<i64>>,
    pub de_jonquieres: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub map: MapFile,
    pub expected: Expected,
}

impl CorpusEntry {
    pub fn rational_map(&self) -> Result<RationalMap> {
        self.map.to_map()
    }

    /// Mismatches between the pinned values and a report; empty when all agree.
    pub fn check(&self, rep: &AnalysisReport) -> Vec<String> {
        let e = &self.expected;
        let iv = &rep.invariants;
        let mut bad = Vec::new();
        let mut cmp = |what: &str, want: String, got: String| {
            if want != got {
                bad.push(format!("{}: {what} expected {want}, got {got}", self.name));
            }
        };
        if let Some(b) = e.birational {
            cmp("birational", b.to_string(), rep.birational.to_string());
        }
        if let Some(r) = e.rank {
            cmp("rank", r.to_string(), rep.verdict.rank.to_string());
        }
        if let Some(d) = e.inverse_degree {
            cmp("inverse degree", format!("{:?}", Some(d)), format!("{:?}", rep.inverse.as_ref().map(|i| i.degree)));
        }
        if let Some(t) = e.relation_type {
            cmp("relation type", t.to_string(), iv.relation_type.to_string());
        }
        if let Some(c) = e.rees_cm {
            cmp("rees_cm", format!("{:?}", Some(c)), format!("{:?}", iv.rees_cm));
        }
        if let Some(s) = e.saturated {
            cmp("saturated", format!("{:?}", Some(s)), format!("{:?}", iv.saturated));
        }
        if let Some(l) = e.analytic_spread {
            cmp("analytic spread", l.to_string(), iv.analytic_spread.to_string());
        }
        if let Some(x) = e.x_regularity {
            cmp("x-regularity", x.to_string(), iv.x_regularity.to_string());
        }
        if let Some(fv) = &e.f_values {
            let k = fv.len().min(iv.f_values.len());
            cmp("f values", format!("{:?}", &fv[..k]), format!("{:?}", &iv.f_values[..k]));
        }
        if let Some(dj) = e.de_jonquieres {
            cmp("de Jonquieres", format!("{:?}", Some(dj)), format!("{:?}", iv.plane.as_ref().map(|p| p.de_jonquieres)));
        }
        if let Some(inv) = &rep.inverse {
            if !inv.verified {
                bad.push(format!("{}: inverse does not compose to the identity", self.name));
            }
        }
        bad
    }
}

fn entry(name: &str, description: &str, vars: &[&str], forms: &[&str], expected: Expected) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        description: description.into(),
        map: MapFile {
            field: "Q".into(),
            variables: vars.iter().map(|s| s.to_string()).collect(),
            source_ideal: Vec::new(),
            forms: forms.iter().map(|s| s.to_string()).collect(),
        },
        expected,
    }
}

fn xs(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).collect()
}

/// `(x0^d : x1 x0^(d-1) : x2 x0^(d-1) + x1^d : ... : xn x0^(d-1) + x(n-1)^d)`, inverse of degree `d^(n-1)`.
pub fn gabber_forms(n: usize, d: u32) -> Vec<String> {
    let mut out = vec![format!("x0^{d}"), format!("x1*x0^{}", d - 1)];
    for i in 2..=n {
        out.push(format!("x{i}*x0^{} + x{}^{d}", d - 1, i - 1));
    }
    out
}

fn owned(name: &str, description: &str, vars: Vec<String>, forms: Vec<String>, expected: Expected) -> CorpusEntry {
    let v: Vec<&str> = vars.iter().map(String::as_str).collect();
    let f: Vec<&str> = forms.iter().map(String::as_str).collect();
    entry(name, description, &v, &f, expected)
}

/// Every built-in map, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let v = xs(n);
        out.push(owned(
            &format!("identity-n{n}"),
            "identity of P^n",
            v.clone(),
            v,
            Expected {
                birational: Some(true),
                rank: Some(n),
                inverse_degree: Some(1),
                relation_type: Some(1),
                rees_cm: Some(true),
                // The base ideal is the irrelevant ideal.
                saturated: Some(false),
                analytic_spread: Some(n + 1),
                x_regularity: Some(0),
                f_values: Some(vec![0, 0, 0]),
                ..Expected::default()
            },
        ));
    }
    out.push(entry(
        "std-quadratic",
        "standard quadratic Cremona map of the plane",
        &["x", "y", "z"],
        &["y*z", "x*z", "x*y"],
        Expected {
            birational: Some(true),
            rank: Some(2),
            inverse_degree: Some(2),
            relation_type: Some(1),
            rees_cm: Some(true),
            saturated: Some(true),
            analytic_spread: Some(3),
            x_regularity: Some(0),
            f_values: Some(vec![0, 0, 0]),
            // Every quadratic Cremona map has a base point of multiplicity d - 1 = 1.
            de_jonquieres: Some(true),
        },
    ));
    out.push(entry(
        "veronese",
        "conic parametrization P^1 -> P^2",
        &["x", "y"],
        &["x^2", "x*y", "y^2"],
        Expected {
            birational: Some(true),
            rank: Some(1),
            relation_type: Some(2),
            rees_cm: Some(true),
            saturated: Some(false),
            analytic_spread: Some(2),
            x_regularity: Some(0),
            f_values: Some(vec![0, 0, 0]),
            ..Expected::default()
        },
    ));
    for n in [2, 3] {
        for d in [2u32, 3] {
            out.push(owned(
                &format!("gabber-n{n}-d{d}"),
                "Cremona map whose inverse has degree d^(n-1)",
                xs(n),
                gabber_forms(n, d),
                Expected {
                    birational: Some(true),
                    rank: Some(n),
                    inverse_degree: Some(d.pow(n as u32 - 1)),
                    analytic_spread: Some(n + 1),
                    ..Expected::default()
                },
            ));
        }
    }
    out.push(entry(
        "terai",
        "ten squarefree cubics in six variables with linear resolution",
        &["a", "b", "c", "d", "e", "f"],
        &["a*b*c", "a*b*f", "a*c*e", "a*d*e", "a*d*f", "b*c*d", "b*d*e", "b*e*f", "c*d*f", "c*e*f"],
        Expected {
            birational: Some(true),
            rank: Some(5),
            analytic_spread: Some(6),
            f_values: Some(vec![0, 1]),
            ..Expected::default()
        },
    ));
    out.push(entry(
        "cubic-dejonquieres",
        "de Jonquieres map of degree 3: (x q, y q, x g1 - y g0)",
        &["x", "y", "z"],
        &["x^3 + x^2*y + 2*x*y^2", "x^2*y + x*y^2 + 2*y^3", "-x^2*y + x^2*z + x*y^2 - 3*x*y*z - y^2*z"],
        Expected {
            birational: Some(true),
            inverse_degree: Some(3),
            rees_cm: Some(true),
            saturated: Some(true),
            de_jonquieres: Some(true),
            ..Expected::default()
        },
    ));
    out.push(entry(
        "quintic-dejonquieres",
        "de Jonquieres map of degree 5: (x q, y q, x g1 - y g0)",
        &["x", "y", "z"],
        &[
            "x^5 + x^4*y + x^2*y^3 + 2*x*y^4",
            "x^4*y + x^3*y^2 + x*y^4 + 2*y^5",
            "-x^4*y + x^4*z - x^3*y*z - 2*x^2*y^2*z + x*y^4 + x*y^3*z - y^4*z",
        ],
        Expected {
            birational: Some(true),
            inverse_degree: Some(5),
            rees_cm: Some(false),
            saturated: Some(true),
            de_jonquieres: Some(true),
            ..Expected::default()
        },
    ));
    out.push(entry(
        "quartic",
        "quartic with three double and three simple base points: s L s for the standard quadratic map s",
        &["x", "y", "z"],
        &[
            "-3*x^2*y^2 + 7*x^2*y*z + 6*x^2*z^2 + 2*x*y^2*z + 5*x*y*z^2 + y^2*z^2",
            "-x^2*y^2 + 2*x^2*y*z + 3*x^2*z^2 + 4*x*y*z^2 + y^2*z^2",
            "3*x^2*y^2 + 5*x^2*y*z + 2*x^2*z^2 + 4*x*y^2*z + 3*x*y*z^2 + y^2*z^2",
        ],
        Expected {
            birational: Some(true),
            inverse_degree: Some(4),
            rees_cm: Some(true),
            saturated: Some(true),
            de_jonquieres: Some(false),
            ..Expected::default()
        },
    ));
    out.push(entry(
        "double-cover",
        "two-to-one map P^1 -> P^1",
        &["x", "y"],
        &["x^2", "y^2"],
        Expected { birational: Some(false), rank: Some(0), relation_type: Some(1), ..Expected::default() },
    ));
    out.push(entry(
        "generic-cubics",
        "three cubics without common zeros; a finite map of degree 9",
        &["x", "y", "z"],
        &["x^3 + y^3 + x*y*z + z^3", "x^2*y + 2*y^2*z + 3*x*z^2", "2*x^3 + x*y^2 - y*z^2 + z^3"],
        Expected { birational: Some(false), saturated: Some(false), ..Expected::default() },
    ));
    out
}

pub fn names() -> Vec<String> {
    corpus().into_iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Result<CorpusEntry> {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("unknown corpus entry `{name}`; known: {}", names().join(", "))))
}
