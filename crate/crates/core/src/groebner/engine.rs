//! Buchberger's algorithm on vectors of polynomials.
//!
//! An ideal is the rank-one case. Pairs are pruned with the Gebauer–Möller
//! criteria and selected by sugar (weighted degree), S-pairs before input
//! generators of equal sugar, so homogeneous inputs are processed degree by
//! degree and the run can be stopped at any degree and resumed later.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder};

/// A term `coeff * mon * e_comp` of a module element.
pub type MTerm = (Monomial, u32, Scalar);

/// Order on the terms of a free module.
///
/// Terms are compared by `mon * shift[comp]` under `base` (or by component
/// first when `pot`), ties broken by `prio[comp]` (larger wins).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    base: MonomialOrder,
    shifts: Option<Vec<Monomial>>,
    prio: Vec<u32>,
    pot: bool,
}

impl ModuleOrder {
    pub fn ideal(base: MonomialOrder) -> Self {
        ModuleOrder { base, shifts: None, prio: vec![0], pot: false }
    }

    /// Term-over-position; component 0 is the largest.
    pub fn top(base: MonomialOrder, ncomps: usize) -> Self {
        ModuleOrder { base, shifts: None, prio: (0..ncomps as u32).rev().collect(), pot: false }
    }

    /// Position-over-term; component 0 is the largest.
    pub fn pot(base: MonomialOrder, ncomps: usize) -> Self {
        ModuleOrder { base, shifts: None, prio: (0..ncomps as u32).rev().collect(), pot: true }
    }

    /// Induced order: compare `mon * shifts[comp]`, then `prio`.
    pub fn schreyer(base: MonomialOrder, shifts: Vec<Monomial>, prio: Vec<u32>) -> Self {
        assert_eq!(shifts.len(), prio.len());
        ModuleOrder { base, shifts: Some(shifts), prio, pot: false }
    }

    pub fn base(&self) -> &MonomialOrder {
        &self.base
    }

    pub fn ncomps(&self) -> usize {
        self.prio.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, i: u32, b: &Monomial, j: u32) -> Ordering {
        if i == j {
            return self.base.cmp(a, b);
        }
        let (pi, pj) = (self.prio[i as usize], self.prio[j as usize]);
        if self.pot {
            return pi.cmp(&pj);
        }
        let o = match &self.shifts {
            None => self.base.cmp(a, b),
            Some(s) => self.base.cmp_shifted(a, &s[i as usize], b, &s[j as usize]),
        };
        o.then(pi.cmp(&pj))
    }

    #[inline]
    pub fn cmp_terms(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.cmp(&a.0, a.1, &b.0, b.1)
    }
}

/// Sorts terms descending and merges duplicates.
pub fn normalize_terms(order: &ModuleOrder, mut v: Vec<MTerm>) -> Vec<MTerm> {
    v.sort_by(|a, b| order.cmp_terms(b, a));
    let mut out: Vec<MTerm> = Vec::with_capacity(v.len());
    for t in v {
        if let Some(last) = out.last_mut() {
            if last.1 == t.1 && last.0 == t.0 {
                last.2 = last.2.add(&t.2);
                continue;
            }
        }
        out.push(t);
    }
    out.retain(|t| !t.2.is_zero());
    out
}

/// `p - c * m * q` for descending term lists.
pub fn sub_mul(order: &ModuleOrder, p: &[MTerm], q: &[MTerm], m: &Monomial, c: &Scalar) -> Vec<MTerm> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let mut i = 0;
    let mut qi = q.iter().map(|(n, k, d)| (n.mul(m), *k, d.mul(c))).peekable();
    while i < p.len() {
        let Some(t) = qi.peek() else { break };
        match order.cmp(&p[i].0, p[i].1, &t.0, t.1) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let t = qi.next().unwrap();
                out.push((t.0, t.1, t.2.neg()));
            }
            Ordering::Equal => {
                let t = qi.next().unwrap();
                let v = p[i].2.sub(&t.2);
                if !v.is_zero() {
                    out.push((t.0, t.1, v));
                }
                i += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    for t in qi {
        out.push((t.0, t.1, t.2.neg()));
    }
    out
}

pub fn scale_terms(v: &mut [MTerm], c: &Scalar) {
    for t in v.iter_mut() {
        t.2 = t.2.mul(c);
    }
}

pub fn make_monic(v: &mut [MTerm]) {
    if let Some(lc) = v.first().map(|t| t.2.clone()) {
        if !lc.is_one() {
            scale_terms(v, &lc.inv().expect("nonzero lead coefficient"));
        }
    }
}

#[derive(Clone, Debug)]
struct Elem {
    terms: Vec<MTerm>,
    sugar: i64,
    alive: bool,
}

#[derive(Clone, Debug)]
enum Task {
    Pair { i: usize, j: usize, lcm: Monomial },
    Gen(usize),
}

/// Resource counters of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub pairs_created: u64,
    pub zero_reductions: u64,
}

/// Incremental Gröbner basis computation.
pub struct GbEngine {
    order: ModuleOrder,
    weights: Vec<i64>,
    comp_deg: Vec<i64>,
    rank_one: bool,
    elems: Vec<Elem>,
    gens: Vec<(Vec<MTerm>, i64)>,
    kept: Vec<Option<bool>>,
    tasks: Vec<Option<Task>>,
    task_sugar: Vec<i64>,
    live_pairs: Vec<usize>,
    heap: BinaryHeap<Reverse<(i64, u8, u32, usize)>>,
    max_pairs: u64,
    stats: GbStats,
}

impl GbEngine {
    /// `weights` are variable weights for sugar, `comp_deg` the degrees of
    /// the module basis vectors.
    pub fn new(order: ModuleOrder, weights: Vec<i64>, comp_deg: Vec<i64>, max_pairs: u64) -> Self {
        let rank_one = order.ncomps() == 1;
        GbEngine {
            order,
            weights,
            comp_deg,
            rank_one,
            elems: Vec::new(),
            gens: Vec::new(),
            kept: Vec::new(),
            tasks: Vec::new(),
            task_sugar: Vec::new(),
            live_pairs: Vec::new(),
            heap: BinaryHeap::new(),
            max_pairs,
            stats: GbStats::default(),
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    fn sugar_of(&self, v: &[MTerm]) -> i64 {
        v.iter().map(|(m, c, _)| m.weighted_degree(&self.weights) + self.comp_deg[*c as usize]).max().unwrap_or(0)
    }

    fn push_task(&mut self, task: Task, sugar: i64) -> usize {
        let seq = self.tasks.len();
        let (kind, deg) = match &task {
            Task::Pair { lcm, .. } => (0u8, lcm.degree()),
            Task::Gen(_) => (1u8, 0),
        };
        if matches!(task, Task::Pair { .. }) {
            self.live_pairs.push(seq);
            self.stats.pairs_created += 1;
        }
        self.tasks.push(Some(task));
        self.task_sugar.push(sugar);
        self.heap.push(Reverse((sugar, kind, deg, seq)));
        seq
    }

    /// Queues an input generator; returns its id.
    pub fn add_generator(&mut self, v: Vec<MTerm>) -> usize {
        let v = normalize_terms(&self.order, v);
        let sugar = self.sugar_of(&v);
        let id = self.gens.len();
        self.gens.push((v, sugar));
        self.kept.push(None);
        self.push_task(Task::Gen(id), sugar);
        id
    }

    /// Whether generator `id` was found independent of everything processed before it.
    /// `None` while it is still queued.
    pub fn generator_kept(&self, id: usize) -> Option<bool> {
        self.kept[id]
    }

    /// Smallest sugar still queued.
    pub fn next_sugar(&self) -> Option<i64> {
        self.heap.peek().map(|Reverse(k)| k.0)
    }

    /// Runs until no task with sugar `<= max_sugar` remains (all tasks when `None`).
    pub fn complete(&mut self, max_sugar: Option<i64>) -> Result<()> {
        while let Some(Reverse((sugar, _, _, seq))) = self.heap.peek().copied() {
            if max_sugar.is_some_and(|m| sugar > m) {
                break;
            }
            self.heap.pop();
            let Some(task) = self.tasks[seq].take() else { continue };
            match task {
                Task::Pair { i, j, lcm } => {
                    self.stats.pairs_processed += 1;
                    if self.stats.pairs_processed > self.max_pairs {
                        return Err(Error::ResourceLimit(format!("more than {} S-pairs", self.max_pairs)));
                    }
                    let s = self.spoly(i, j, &lcm);
                    let h = self.reduce_top(s);
                    if h.is_empty() {
                        self.stats.zero_reductions += 1;
                    } else {
                        self.insert(h, sugar);
                    }
                }
                Task::Gen(id) => {
                    let v = self.gens[id].0.clone();
                    let h = self.reduce_top(v);
                    self.kept[id] = Some(!h.is_empty());
                    if !h.is_empty() {
                        self.insert(h, sugar);
                    }
                }
            }
        }
        Ok(())
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Vec<MTerm> {
        let (a, b) = (&self.elems[i].terms, &self.elems[j].terms);
        let ma = a[0].0.quotient_of(lcm).unwrap();
        let mb = b[0].0.quotient_of(lcm).unwrap();
        let sa: Vec<MTerm> = a[1..].iter().map(|(m, k, c)| (m.mul(&ma), *k, c.clone())).collect();
        sub_mul(&self.order, &sa, &b[1..], &mb, &b[0].2)
    }

    fn find_reducer(&self, m: &Monomial, comp: u32) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, e) in self.elems.iter().enumerate() {
            if !e.alive {
                continue;
            }
            let (lm, lc) = (&e.terms[0].0, e.terms[0].1);
            if lc == comp && lm.divides(m) {
                match best {
                    Some(b) if self.elems[b].terms.len() <= e.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Reduces until the leading term is irreducible; result monic.
    fn reduce_top(&self, mut v: Vec<MTerm>) -> Vec<MTerm> {
        while let Some((m, comp, c)) = v.first() {
            let Some(k) = self.find_reducer(m, *comp) else { break };
            let g = &self.elems[k].terms;
            let q = g[0].0.quotient_of(m).unwrap();
            let c = c.clone();
            v = sub_mul(&self.order, &v[1..], &g[1..], &q, &c);
        }
        make_monic(&mut v);
        v
    }

    /// Full normal form with respect to the alive elements, optionally skipping one.
    fn reduce_full_skip(&self, v: Vec<MTerm>, skip: Option<usize>) -> Vec<MTerm> {
        let mut done: Vec<MTerm> = Vec::new();
        let mut cur = v;
        let mut pos = 0;
        while pos < cur.len() {
            let (m, comp, c) = &cur[pos];
            let r = self.find_reducer_skip(m, *comp, skip);
            match r {
                None => {
                    done.push(cur[pos].clone());
                    pos += 1;
                }
                Some(k) => {
                    let g = &self.elems[k].terms;
                    let q = g[0].0.quotient_of(m).unwrap();
                    let c = c.clone();
                    cur = sub_mul(&self.order, &cur[pos + 1..], &g[1..], &q, &c);
                    pos = 0;
                }
            }
        }
        done
    }

    fn find_reducer_skip(&self, m: &Monomial, comp: u32, skip: Option<usize>) -> Option<usize> {
        match skip {
            None => self.find_reducer(m, comp),
            Some(s) => {
                let mut best: Option<usize> = None;
                for (k, e) in self.elems.iter().enumerate() {
                    if !e.alive || k == s {
                        continue;
                    }
                    if e.terms[0].1 == comp && e.terms[0].0.divides(m) {
                        match best {
                            Some(b) if self.elems[b].terms.len() <= e.terms.len() => {}
                            _ => best = Some(k),
                        }
                    }
                }
                best
            }
        }
    }

    /// Normal form of `v` modulo the current basis.
    pub fn reduce(&self, v: Vec<MTerm>) -> Vec<MTerm> {
        let v = normalize_terms(&self.order, v);
        self.reduce_full_skip(v, None)
    }

    fn insert(&mut self, mut h: Vec<MTerm>, sugar: i64) {
        // Tail reduction keeps the basis sparse.
        let head = h[0].clone();
        let tail = self.reduce_full_skip(h.split_off(1), None);
        h.truncate(1);
        h[0] = head;
        h.extend(tail);
        make_monic(&mut h);
        let k = self.elems.len();
        let (hm, hc) = (h[0].0.clone(), h[0].1);

        // Gebauer–Möller: prune old pairs whose lcm is a proper multiple through h.
        let mut retained = Vec::with_capacity(self.live_pairs.len());
        for &seq in &self.live_pairs {
            let drop = match &self.tasks[seq] {
                None => continue,
                Some(Task::Pair { i, j, lcm }) => {
                    let ci = self.elems[*i].terms[0].1;
                    ci == hc && hm.divides(lcm) && {
                        let li = self.elems[*i].terms[0].0.lcm(&hm);
                        let lj = self.elems[*j].terms[0].0.lcm(&hm);
                        li != *lcm && lj != *lcm
                    }
                }
                Some(Task::Gen(_)) => false,
            };
            if drop {
                self.tasks[seq] = None;
            } else {
                retained.push(seq);
            }
        }
        self.live_pairs = retained;

        // Candidate new pairs (g, h).
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, e) in self.elems.iter().enumerate() {
            if !e.alive || e.terms[0].1 != hc {
                continue;
            }
            let gm = &e.terms[0].0;
            cands.push((g, gm.lcm(&hm), self.rank_one && gm.is_coprime(&hm)));
        }
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && cands[b].1 != cands[a].1 {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Among equal lcms keep one representative; drop the class if any is coprime.
        let mut handled = vec![false; cands.len()];
        for a in 0..cands.len() {
            if !keep[a] || handled[a] {
                continue;
            }
            let class: Vec<usize> = (a..cands.len()).filter(|&b| keep[b] && cands[b].1 == cands[a].1).collect();
            let any_coprime = class.iter().any(|&b| cands[b].2);
            for &b in &class {
                handled[b] = true;
                keep[b] = false;
            }
            if !any_coprime {
                keep[a] = true;
            }
        }

        for e in self.elems.iter_mut() {
            if e.alive && e.terms[0].1 == hc && hm.divides(&e.terms[0].0) {
                e.alive = false;
            }
        }
        self.elems.push(Elem { terms: h, sugar, alive: true });

        for (idx, (g, lcm, _)) in cands.into_iter().enumerate() {
            if !keep[idx] {
                continue;
            }
            let eg = &self.elems[g];
            let gm = &eg.terms[0].0;
            let hm = &self.elems[k].terms[0].0;
            let s1 = eg.sugar + gm.quotient_of(&lcm).unwrap().weighted_degree(&self.weights);
            let s2 = sugar + hm.quotient_of(&lcm).unwrap().weighted_degree(&self.weights);
            self.push_task(Task::Pair { i: g, j: k, lcm }, s1.max(s2));
        }
    }

    /// Current minimal basis (alive elements), unsorted, not interreduced.
    pub fn basis(&self) -> Vec<&[MTerm]> {
        self.elems.iter().filter(|e| e.alive).map(|e| e.terms.as_slice()).collect()
    }

    /// Reduced basis: interreduced, monic, sorted by leading term ascending.
    pub fn reduced_basis(&self) -> Vec<Vec<MTerm>> {
        let mut out: Vec<Vec<MTerm>> = Vec::new();
        for (k, e) in self.elems.iter().enumerate() {
            if !e.alive {
                continue;
            }
            let mut h = vec![e.terms[0].clone()];
            h.extend(self.reduce_full_skip(e.terms[1..].to_vec(), Some(k)));
            make_monic(&mut h);
            out.push(h);
        }
        out.sort_by(|a, b| self.order.cmp_terms(&a[0], &b[0]));
        out
    }

    /// Whether every queued task has been processed.
    pub fn is_complete(&self) -> bool {
        self.heap.iter().all(|Reverse(k)| self.tasks[k.3].is_none())
    }
}
