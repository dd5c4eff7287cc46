use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Order used inside one block of a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockInner {
    Lex,
    GrevLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderBlock {
    pub vars: Vec<usize>,
    pub inner: BlockInner,
}

/// A monomial order. Variable 0 is the largest variable.
///
/// `Block` compares block by block (first block most significant); the
/// blocks must partition the variables. `Weighted` compares the weight
/// dot-product first and breaks ties with `tiebreak`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(Vec<OrderBlock>),
    Weighted { weights: Vec<u32>, tiebreak: Box<MonomialOrder> },
}

fn grevlex_on(a: &[u16], b: &[u16], idx: &[usize]) -> Ordering {
    let da: u32 = idx.iter().map(|&i| a[i] as u32).sum();
    let db: u32 = idx.iter().map(|&i| b[i] as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &i in idx.iter().rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lex_on(a: &[u16], b: &[u16], idx: &[usize]) -> Ordering {
    for &i in idx {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Block order with `eliminate` outermost and the remaining variables
    /// second, grevlex inside each block.
    pub fn elimination(nvars: usize, eliminate: &[usize]) -> Self {
        let mut rest: Vec<usize> = (0..nvars).filter(|i| !eliminate.contains(i)).collect();
        let mut first = eliminate.to_vec();
        first.sort_unstable();
        rest.sort_unstable();
        MonomialOrder::Block(vec![
            OrderBlock { vars: first, inner: BlockInner::GrevLex },
            OrderBlock { vars: rest, inner: BlockInner::GrevLex },
        ])
    }

    /// Block order from a sequence of variable groups, grevlex inside each.
    pub fn blocks(groups: &[Vec<usize>]) -> Self {
        MonomialOrder::Block(
            groups
                .iter()
                .filter(|g| !g.is_empty())
                .map(|g| OrderBlock { vars: g.clone(), inner: BlockInner::GrevLex })
                .collect(),
        )
    }

    /// Checks the order is total on `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrevLex => Ok(()),
            MonomialOrder::Block(blocks) => {
                let mut seen = vec![false; nvars];
                for b in blocks {
                    for &v in &b.vars {
                        if v >= nvars || seen[v] {
                            return Err(Error::InvalidRing(format!("block order does not partition {nvars} variables")));
                        }
                        seen[v] = true;
                    }
                }
                if seen.iter().all(|&s| s) {
                    Ok(())
                } else {
                    Err(Error::InvalidRing(format!("block order does not cover {nvars} variables")))
                }
            }
            MonomialOrder::Weighted { weights, tiebreak } => {
                if weights.len() != nvars {
                    return Err(Error::InvalidRing("weight vector length".into()));
                }
                tiebreak.validate(nvars)
            }
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => {
                if a.degree() != b.degree() {
                    return a.degree().cmp(&b.degree());
                }
                let (x, y) = (a.exps(), b.exps());
                for i in (0..x.len()).rev() {
                    if x[i] != y[i] {
                        return y[i].cmp(&x[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            _ => self.cmp_slices(a.exps(), b.exps()),
        }
    }

    fn cmp_slices(&self, x: &[u16], y: &[u16]) -> Ordering {
        match self {
            MonomialOrder::GrevLex => {
                let dx: u32 = x.iter().map(|&e| e as u32).sum();
                let dy: u32 = y.iter().map(|&e| e as u32).sum();
                if dx != dy {
                    return dx.cmp(&dy);
                }
                for i in (0..x.len()).rev() {
                    if x[i] != y[i] {
                        return y[i].cmp(&x[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => x.cmp(y),
            MonomialOrder::Block(blocks) => {
                for b in blocks {
                    let o = match b.inner {
                        BlockInner::GrevLex => grevlex_on(x, y, &b.vars),
                        BlockInner::Lex => lex_on(x, y, &b.vars),
                    };
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Weighted { weights, tiebreak } => {
                let wx: u64 = x.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wy: u64 = y.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                wx.cmp(&wy).then_with(|| tiebreak.cmp_slices(x, y))
            }
        }
    }

    /// Compares `a * sa` with `b * sb` without materializing the products.
    #[inline]
    pub fn cmp_shifted(&self, a: &Monomial, sa: &Monomial, b: &Monomial, sb: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => {
                let da = a.degree() + sa.degree();
                let db = b.degree() + sb.degree();
                if da != db {
                    return da.cmp(&db);
                }
                let (x, xs, y, ys) = (a.exps(), sa.exps(), b.exps(), sb.exps());
                for i in (0..x.len()).rev() {
                    let (u, v) = (x[i] + xs[i], y[i] + ys[i]);
                    if u != v {
                        return v.cmp(&u);
                    }
                }
                Ordering::Equal
            }
            _ => self.cmp(&a.mul(sa), &b.mul(sb)),
        }
    }

    /// Whether the order restricted to `vars` first compares those variables,
    /// i.e. it eliminates them.
    pub fn eliminates(&self, vars: &[usize]) -> bool {
        match self {
            MonomialOrder::Lex => {
                let mut v = vars.to_vec();
                v.sort_unstable();
                v.iter().enumerate().all(|(i, &x)| i == x)
            }
            MonomialOrder::Block(blocks) => {
                let mut covered = Vec::new();
                for b in blocks {
                    if covered.len() >= vars.len() {
                        break;
                    }
                    covered.extend_from_slice(&b.vars);
                }
                let mut c = covered.clone();
                c.sort_unstable();
                let mut v = vars.to_vec();
                v.sort_unstable();
                c == v
            }
            _ => vars.is_empty(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::elimination(4, &[0, 2]),
            MonomialOrder::Block(vec![
                OrderBlock { vars: vec![3], inner: BlockInner::Lex },
                OrderBlock { vars: vec![0, 1, 2], inner: BlockInner::GrevLex },
            ]),
            MonomialOrder::Weighted { weights: vec![1, 2, 3, 1], tiebreak: Box::new(MonomialOrder::GrevLex) },
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..6, 4).prop_map(|v| Monomial::from_exps(&v))
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        let x = Monomial::from_exps(&[1, 0, 0]);
        let y = Monomial::from_exps(&[0, 1, 0]);
        let z2 = Monomial::from_exps(&[0, 0, 2]);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        assert_eq!(o.cmp(&z2, &x), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&Monomial::from_exps(&[1, 0, 1]), &Monomial::from_exps(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_is_detected() {
        let o = MonomialOrder::elimination(4, &[0, 2]);
        assert!(o.eliminates(&[2, 0]));
        assert!(!o.eliminates(&[1]));
        assert!(o.validate(4).is_ok());
        assert!(MonomialOrder::blocks(&[vec![0], vec![0, 1]]).validate(2).is_err());
    }

    proptest! {
        #[test]
        fn multiplicative_and_total(a in mono(), b in mono(), w in mono()) {
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a.mul(&w), &b.mul(&w)), ab);
                prop_assert_eq!(o.cmp(&b, &a), ab.reverse());
                prop_assert_eq!(o.cmp_shifted(&a, &w, &b, &w), ab);
            }
        }

        #[test]
        fn well_ordered(a in mono()) {
            let one = Monomial::one(4);
            for o in orders() {
                prop_assert!(o.cmp(&a, &one) != Ordering::Less);
            }
        }

        #[test]
        fn transitive(a in mono(), b in mono(), c in mono()) {
            for o in orders() {
                if o.cmp(&a, &b) == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
