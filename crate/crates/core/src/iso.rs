//! Automorphisms, canonical forms and isomorphism of quandles.
//!
//! Everything here is driven by *generated labelings*: given an ordered list of
//! generators, elements are numbered by closing the labeled set under `⋆`,
//! visiting label pairs in shell order (all pairs with `max(i, j) = k` before
//! those with `max(i, j) = k + 1`). When the closure stalls, the next generator
//! is taken from the unlabeled elements. Because this process commutes with
//! relabeling, the least table it can produce is a canonical form.
//!
//! Generator choices are restricted to elements of least invariant (column
//! cycle type, then the number of fixed points in the row), and choices that
//! differ by an automorphism fixing the earlier generators are explored once.

use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

const UNSET: usize = usize::MAX;

/// Isomorphism-invariant data about one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementInvariant {
    column_type: Vec<u8>,
    row_fixed: u8,
}

fn invariants(q: &QuandleTable) -> Vec<ElementInvariant> {
    let n = q.order();
    (0..n)
        .map(|x| ElementInvariant {
            column_type: q.translation(x).cycle_type().iter().map(|&l| l as u8).collect(),
            row_fixed: (0..n).filter(|&y| q.op(x, y) == x).count() as u8,
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
enum Step {
    /// Label the next generator.
    Generator,
    /// Label `a⋆b` (label indices) as a new element.
    Product(usize, usize),
    /// `a⋆b` is the already labeled `c`.
    Check(usize, usize, usize),
}

/// Incremental generated labeling of a quandle.
#[derive(Clone)]
struct Labeling<'a> {
    q: &'a QuandleTable,
    order: Vec<usize>,
    label: Vec<usize>,
    shells_done: usize,
    generators: Vec<usize>,
}

impl<'a> Labeling<'a> {
    fn new(q: &'a QuandleTable) -> Self {
        Labeling {
            q,
            order: Vec::with_capacity(q.order()),
            label: vec![UNSET; q.order()],
            shells_done: 0,
            generators: Vec::new(),
        }
    }

    fn is_complete(&self) -> bool {
        self.order.len() == self.q.order()
    }

    fn push(&mut self, x: usize) {
        self.label[x] = self.order.len();
        self.order.push(x);
    }

    /// Adds generator `g` and closes; returns the program steps taken.
    fn add_generator(&mut self, g: usize, steps: Option<&mut Vec<Step>>) {
        debug_assert_eq!(self.label[g], UNSET);
        self.generators.push(g);
        self.push(g);
        let mut sink = Vec::new();
        let steps = match steps {
            Some(s) => s,
            None => &mut sink,
        };
        steps.push(Step::Generator);
        while self.shells_done < self.order.len() {
            let k = self.shells_done;
            for (i, j) in shell_pairs(k) {
                let p = self.q.op(self.order[i], self.order[j]);
                if self.label[p] == UNSET {
                    steps.push(Step::Product(i, j));
                    self.push(p);
                } else {
                    steps.push(Step::Check(i, j, self.label[p]));
                }
            }
            self.shells_done += 1;
        }
    }

    /// Shell-ordered entries of the labeled block, in label space.
    fn shell_entries(&self) -> Vec<u8> {
        let m = self.order.len();
        let mut out = Vec::with_capacity(m * m);
        for k in 0..m {
            for (i, j) in shell_pairs(k) {
                out.push(self.label[self.q.op(self.order[i], self.order[j])] as u8);
            }
        }
        out
    }
}

fn shell_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=k).map(move |j| (k, j)).chain((0..k).map(move |i| (i, k)))
}

/// Rebuilds a row-major table from shell-ordered entries.
fn table_from_shells(n: usize, shells: &[u8]) -> Vec<u8> {
    let mut table = vec![0u8; n * n];
    let mut idx = 0;
    for k in 0..n {
        for (i, j) in shell_pairs(k) {
            table[i * n + j] = shells[idx];
            idx += 1;
        }
    }
    table
}

/// Generators chosen greedily (least unlabeled element), with the program
/// that reproduces and checks the whole table from them.
fn greedy_program(q: &QuandleTable) -> (Vec<usize>, Vec<Step>) {
    let mut lab = Labeling::new(q);
    let mut steps = Vec::new();
    while !lab.is_complete() {
        let g = (0..q.order()).find(|&x| lab.label[x] == UNSET).unwrap();
        lab.add_generator(g, Some(&mut steps));
    }
    (lab.generators.clone(), steps)
}

/// Searches for an isomorphism `src → dst` sending the program generators
/// to `prefix` followed by any admissible images.
struct Extender<'a> {
    dst: &'a QuandleTable,
    steps: &'a [Step],
    src_gens: &'a [usize],
    src_inv: &'a [ElementInvariant],
    dst_inv: &'a [ElementInvariant],
    /// source element carrying each label
    src_order: Vec<usize>,
}

impl<'a> Extender<'a> {
    fn new(
        src: &'a QuandleTable,
        dst: &'a QuandleTable,
        src_gens: &'a [usize],
        steps: &'a [Step],
        src_inv: &'a [ElementInvariant],
        dst_inv: &'a [ElementInvariant],
    ) -> Self {
        // replay to recover the source element of every label
        let mut src_order: Vec<usize> = Vec::with_capacity(src.order());
        let mut g = 0;
        for step in steps {
            match *step {
                Step::Generator => {
                    src_order.push(src_gens[g]);
                    g += 1;
                }
                Step::Product(i, j) => src_order.push(src.op(src_order[i], src_order[j])),
                Step::Check(..) => {}
            }
        }
        Extender {
            dst,
            steps,
            src_gens,
            src_inv,
            dst_inv,
            src_order,
        }
    }

    fn run(&self, prefix: &[usize]) -> Option<Permutation> {
        let n = self.dst.order();
        let mut images: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.dfs(0, 0, prefix, &mut images, &mut used).map(|images| {
            let mut map = vec![0usize; n];
            for (label, &x) in self.src_order.iter().enumerate() {
                map[x] = images[label];
            }
            Permutation::from_images(map).expect("extender produces bijections")
        })
    }

    fn dfs(
        &self,
        mut step: usize,
        gen: usize,
        prefix: &[usize],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<Vec<usize>> {
        let mark = images.len();
        let undo = |images: &mut Vec<usize>, used: &mut Vec<bool>| {
            for &y in &images[mark..] {
                used[y] = false;
            }
            images.truncate(mark);
        };
        while step < self.steps.len() {
            match self.steps[step] {
                Step::Generator => {
                    let want = &self.src_inv[self.src_gens[gen]];
                    let candidates: Vec<usize> = if gen < prefix.len() {
                        vec![prefix[gen]]
                    } else {
                        (0..self.dst.order()).collect()
                    };
                    for h in candidates {
                        if used[h] || self.dst_inv[h] != *want {
                            continue;
                        }
                        images.push(h);
                        used[h] = true;
                        if let Some(done) = self.dfs(step + 1, gen + 1, prefix, images, used) {
                            return Some(done);
                        }
                        images.pop();
                        used[h] = false;
                    }
                    undo(images, used);
                    return None;
                }
                Step::Product(i, j) => {
                    let y = self.dst.op(images[i], images[j]);
                    let label = images.len();
                    if used[y] || self.dst_inv[y] != self.src_inv[self.src_order[label]] {
                        undo(images, used);
                        return None;
                    }
                    used[y] = true;
                    images.push(y);
                }
                Step::Check(i, j, c) => {
                    if self.dst.op(images[i], images[j]) != images[c] {
                        undo(images, used);
                        return None;
                    }
                }
            }
            step += 1;
        }
        Some(images.clone())
    }
}

/// The automorphism group, as generators forming a strong generating set
/// relative to a greedy generating sequence.
pub fn automorphisms(q: &QuandleTable) -> GroupHandle {
    let n = q.order();
    if n <= 1 {
        return GroupHandle::trivial(n);
    }
    let inv = invariants(q);
    let (gens, steps) = greedy_program(q);
    let ext = Extender::new(q, q, &gens, &steps, &inv, &inv);
    let mut found: Vec<Permutation> = Vec::new();
    for level in (0..gens.len()).rev() {
        // elements of the subquandle generated by the earlier generators are fixed
        let mut fixed = Labeling::new(q);
        for &g in &gens[..level] {
            fixed.add_generator(g, None);
        }
        let target = gens[level];
        let mut orbit = GroupHandle::new(n, found.clone()).orbit(target);
        for h in 0..n {
            if fixed.label[h] != UNSET || inv[h] != inv[target] || orbit.binary_search(&h).is_ok() {
                continue;
            }
            let mut prefix = gens[..level].to_vec();
            prefix.push(h);
            if let Some(sigma) = ext.run(&prefix) {
                found.push(sigma);
                orbit = GroupHandle::new(n, found.clone()).orbit(target);
            }
        }
    }
    GroupHandle::new(n, found)
}

/// The canonical table together with the relabeling (old label ↦ new label)
/// that produces it from `q`.
pub fn canonical_labeling(q: &QuandleTable) -> (QuandleTable, Permutation) {
    let n = q.order();
    if n <= 1 {
        return (q.clone(), Permutation::identity(n));
    }
    let aut = automorphisms(q);
    let inv = invariants(q);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    canonical_dfs(Labeling::new(q), &aut, &inv, &mut best);
    let (shells, order) = best.expect("at least one labeling exists");
    let mut images = vec![0usize; n];
    for (label, &x) in order.iter().enumerate() {
        images[x] = label;
    }
    let table = QuandleTable::from_zero_based_unchecked(n, table_from_shells(n, &shells));
    (table, Permutation::from_images(images).unwrap())
}

fn canonical_dfs(
    lab: Labeling<'_>,
    aut: &GroupHandle,
    inv: &[ElementInvariant],
    best: &mut Option<(Vec<u8>, Vec<usize>)>,
) {
    let shells = lab.shell_entries();
    if let Some((b, _)) = best.as_ref() {
        if shells.as_slice() > &b[..shells.len()] {
            return;
        }
    }
    if lab.is_complete() {
        if best.as_ref().is_none_or(|(b, _)| shells < *b) {
            *best = Some((shells, lab.order.clone()));
        }
        return;
    }
    let unlabeled: Vec<usize> = (0..lab.q.order()).filter(|&x| lab.label[x] == UNSET).collect();
    let least = unlabeled.iter().map(|&x| &inv[x]).min().unwrap().clone();
    let stab = aut.pointwise_stabilizer(&lab.generators);
    let mut tried: Vec<usize> = Vec::new();
    for &c in &unlabeled {
        if inv[c] != least || tried.contains(&c) {
            continue;
        }
        tried.extend(stab.orbit(c));
        let mut next = lab.clone();
        next.add_generator(c, None);
        canonical_dfs(next, aut, inv, best);
    }
}

pub fn canonical_form(q: &QuandleTable) -> QuandleTable {
    canonical_labeling(q).0
}

/// An isomorphism `p → r` (as the image list of `p`'s elements) when one exists.
/// The witness is checked to be a bijective homomorphism before it is returned.
pub fn are_isomorphic(p: &QuandleTable, r: &QuandleTable) -> Option<Permutation> {
    if p.order() != r.order() {
        return None;
    }
    let (cp, lp) = canonical_labeling(p);
    let (cr, lr) = canonical_labeling(r);
    if cp != cr {
        return None;
    }
    let witness = lp.then(&lr.inverse());
    let map: Vec<usize> = witness.images().iter().map(|&x| x as usize).collect();
    assert!(p.is_homomorphism_to(r, &map), "canonical labeling produced a non-isomorphism");
    Some(witness)
}

/// Direct search for an isomorphism, without canonical forms.
pub fn find_isomorphism(p: &QuandleTable, r: &QuandleTable) -> Option<Permutation> {
    if p.order() != r.order() {
        return None;
    }
    if p.order() == 0 {
        return Some(Permutation::identity(0));
    }
    let (pi, ri) = (invariants(p), invariants(r));
    let mut a = pi.clone();
    let mut b = ri.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let (gens, steps) = greedy_program(p);
    Extender::new(p, r, &gens, &steps, &pi, &ri).run(&[])
}
