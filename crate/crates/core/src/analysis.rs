//! Congruences, quotients and simplicity.
//!
//! A congruence is a partition compatible with `⋆` and with right division;
//! congruences are exactly the kernels of surjective quandle homomorphisms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::iso::{are_isomorphic, canonical_form};
use crate::quandle::QuandleTable;

/// A partition of the elements, with blocks numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

impl Congruence {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber: Vec<(usize, usize)> = Vec::new();
        let block_of = labels
            .iter()
            .map(|l| match renumber.iter().find(|(k, _)| k == l) {
                Some(&(_, b)) => b,
                None => {
                    let b = renumber.len();
                    renumber.push((*l, b));
                    b
                }
            })
            .collect();
        Congruence { block_of }
    }

    pub fn discrete(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Congruence {
            block_of: vec![0; n],
        }
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_map(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count() == self.block_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.block_of.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in (x + 1)..n {
                if self.block_of[x] == self.block_of[y] || other.block_of[x] == other.block_of[y] {
                    uf.union(x, y);
                }
            }
        }
        uf.into_congruence()
    }

    /// Whether the partition is compatible with `⋆` and right division on `q`.
    pub fn is_compatible(&self, q: &QuandleTable) -> bool {
        let n = q.order();
        if self.block_of.len() != n {
            return false;
        }
        let div = division_table(q);
        let same = |a: usize, b: usize| self.block_of[a] == self.block_of[b];
        for a in 0..n {
            for a2 in (a + 1)..n {
                if !same(a, a2) {
                    continue;
                }
                for b in 0..n {
                    if !same(q.op(a, b), q.op(a2, b))
                        || !same(q.op(b, a), q.op(b, a2))
                        || !same(div[a * n + b], div[a2 * n + b])
                        || !same(div[b * n + a], div[b * n + a2])
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `div[a·n + b]` is the `c` with `c⋆b = a`.
fn division_table(q: &QuandleTable) -> Vec<usize> {
    let n = q.order();
    let mut div = vec![0usize; n * n];
    for c in 0..n {
        for b in 0..n {
            div[q.op(c, b) * n + b] = c;
        }
    }
    div
}

/// The least congruence identifying `a` and `b` (0-based).
pub fn principal_congruence(q: &QuandleTable, a: usize, b: usize) -> Congruence {
    let n = q.order();
    let div = division_table(q);
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for z in 0..n {
            queue.push((q.op(x, z), q.op(y, z)));
            queue.push((q.op(z, x), q.op(z, y)));
            queue.push((div[x * n + z], div[y * n + z]));
            queue.push((div[z * n + x], div[z * n + y]));
        }
    }
    uf.into_congruence()
}

/// The whole congruence lattice: discrete, full and every join of principal
/// congruences. Sorted by decreasing number of blocks, then by block map.
pub fn all_congruences(q: &QuandleTable) -> Vec<Congruence> {
    let n = q.order();
    let mut set: BTreeSet<Congruence> = BTreeSet::new();
    set.insert(Congruence::discrete(n));
    let mut principals: BTreeSet<Congruence> = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            principals.insert(principal_congruence(q, a, b));
        }
    }
    let principals: Vec<Congruence> = principals.into_iter().collect();
    let mut frontier: Vec<Congruence> = principals.clone();
    set.extend(principals.iter().cloned());
    while let Some(c) = frontier.pop() {
        for p in &principals {
            let j = c.join(p);
            if set.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    set.insert(Congruence::full(n));
    let mut out: Vec<Congruence> = set.into_iter().collect();
    out.sort_by(|x, y| {
        y.block_count()
            .cmp(&x.block_count())
            .then_with(|| x.block_of.cmp(&y.block_of))
    });
    out
}

/// The quotient by `theta` and the block map onto it.
pub fn quotient(q: &QuandleTable, theta: &Congruence) -> Result<(QuandleTable, Vec<usize>)> {
    if !theta.is_compatible(q) {
        return Err(Error::Congruence("partition is not compatible with ⋆".into()));
    }
    let blocks = theta.blocks();
    let m = blocks.len();
    let mut table = Vec::with_capacity(m * m);
    for bi in &blocks {
        for bj in &blocks {
            table.push(theta.block_of(q.op(bi[0], bj[0])) as u8);
        }
    }
    let p = QuandleTable::from_zero_based(m, table)?;
    Ok((p, theta.block_map().to_vec()))
}

fn require_connected(q: &QuandleTable) -> Result<()> {
    if q.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition("quandle is not connected".into()))
    }
}

/// Connected, of order > 1, and every non-trivial congruence is full.
pub fn is_simple(q: &QuandleTable) -> Result<bool> {
    require_connected(q)?;
    let n = q.order();
    if n <= 1 {
        return Ok(false);
    }
    // every congruence is a join of principal ones
    Ok((0..n).all(|a| ((a + 1)..n).all(|b| principal_congruence(q, a, b).is_full())))
}

/// Simplicity through the inner group: faithful and `Int(Q)` image-cyclic.
pub fn is_simple_via_group(q: &QuandleTable) -> Result<bool> {
    require_connected(q)?;
    if q.order() <= 1 || !q.is_faithful() {
        return Ok(false);
    }
    q.inner_group().is_image_cyclic()
}

/// The proper non-trivial quotients up to isomorphism, ordered by size and
/// then canonical table.
pub fn proper_quotients(q: &QuandleTable) -> Vec<QuandleTable> {
    let mut found: BTreeSet<(usize, QuandleTable)> = BTreeSet::new();
    for theta in all_congruences(q) {
        if theta.is_discrete() || theta.is_full() {
            continue;
        }
        let (p, _) = quotient(q, &theta).expect("lattice members are congruences");
        let c = canonical_form(&p);
        found.insert((c.order(), c));
    }
    found.into_iter().map(|(_, c)| c).collect()
}

/// A congruence whose quotient is isomorphic to `target`, if any.
pub fn surjection_onto(q: &QuandleTable, target: &QuandleTable) -> Option<(Congruence, Vec<usize>)> {
    if target.order() == 0 || (q.is_connected() && !q.order().is_multiple_of(target.order())) {
        return None;
    }
    for theta in all_congruences(q) {
        if theta.block_count() != target.order() {
            continue;
        }
        let (p, map) = quotient(q, &theta).ok()?;
        if let Some(w) = are_isomorphic(&p, target) {
            let rho = map.iter().map(|&b| w.apply(b)).collect();
            return Some((theta, rho));
        }
    }
    None
}
