use std::sync::Arc;

use super::order::MonomialOrder;
use crate::coeff::FieldSpec;
use crate::error::{Error, Result};

/// A polynomial ring `k[vars]` together with the order its polynomials are
/// sorted by. An optional `block_split = s` declares the first `s`
/// variables as the X-block of a bigraded ring `k[X, Y]`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    field: FieldSpec,
    vars: Vec<String>,
    block_split: Option<usize>,
    order: MonomialOrder,
}

pub type Ring = Arc<RingContext>;

impl RingContext {
    pub fn new(field: FieldSpec, vars: &[&str]) -> Result<Ring> {
        Self::build(field, vars.iter().map(|s| s.to_string()).collect(), None, MonomialOrder::GrevLex)
    }

    pub fn build(field: FieldSpec, vars: Vec<String>, block_split: Option<usize>, order: MonomialOrder) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
            let mut chars = v.chars();
            let first = chars.next().unwrap();
            if !(first.is_alphabetic() || first == '_') || !chars.all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
        }
        if let Some(s) = block_split {
            if s == 0 || s >= vars.len() {
                return Err(Error::InvalidRing(format!("block split {s} out of range")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(RingContext { field, vars, block_split, order }))
    }

    /// Bigraded ring `k[X, Y]` with `deg x = (1,0)` and `deg Y = (0,1)`.
    pub fn bigraded(field: FieldSpec, xs: &[String], ys: &[String]) -> Result<Ring> {
        let vars: Vec<String> = xs.iter().chain(ys).cloned().collect();
        Self::build(field, vars, Some(xs.len()), MonomialOrder::GrevLex)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn block_split(&self) -> Option<usize> {
        self.block_split
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn x_vars(&self) -> std::ops::Range<usize> {
        0..self.block_split.unwrap_or(self.vars.len())
    }

    pub fn y_vars(&self) -> std::ops::Range<usize> {
        self.block_split.unwrap_or(self.vars.len())..self.vars.len()
    }

    /// Same field and variables; the order may differ.
    pub fn compatible(&self, other: &RingContext) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Result<Ring> {
        if &order == self.order() {
            return Ok(self.clone());
        }
        Self::build(self.field, self.vars.clone(), self.block_split, order)
    }

    pub fn with_field(self: &Arc<Self>, field: FieldSpec) -> Ring {
        Arc::new(RingContext { field, vars: self.vars.clone(), block_split: self.block_split, order: self.order.clone() })
    }

    /// Variable name not used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        fresh_name(&self.vars, base)
    }
}

pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    let mut k = 1;
    loop {
        let c = format!("{base}_{k}");
        if !taken.iter().any(|v| v == &c) {
            return c;
        }
        k += 1;
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
