//! Exhaustive, isomorph-free enumeration of connected quandles.
//!
//! The search assigns the translations `φ_b` entry by entry. In a connected
//! quandle every `φ_b` is conjugate to `φ_0`, so each run fixes `φ_0` to a
//! representative of one cycle type (a root) and fills the rest of the table
//! under the constraints
//!
//! * `φ_b(b) = b` and every `φ_b` is a bijection of the root's cycle type,
//! * every row has as many fixed entries as a column has fixed points,
//! * `φ_z(φ_y(x)) = φ_{φ_z(y)}(φ_z(x))`, which is right self-distributivity.
//!
//! Branching is on a single entry and only one value per orbit of the
//! relabelings that fix everything decided so far is tried. Whatever
//! duplicates survive are merged by canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{is_simple, proper_quotients};
use crate::construct::{alexander_quandle, connected_alexander_specs};
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::iso::canonical_form;
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

pub const MAX_ORDER: usize = 14;

const UNK: u8 = u8::MAX;

/// Below this many pending subtrees the frontier is expanded one more level.
const MIN_TASKS: usize = 96;

/// Cycle types of a root, as a sorted list of cycle lengths.
pub type CycleType = Vec<usize>;

/// Cycle types allowed for `φ_0`: at least one fixed point, not the identity unless `n = 1`.
pub fn root_cycle_types(n: usize) -> Vec<CycleType> {
    fn partitions(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    partitions(n, 1, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|p| p.first() == Some(&1) && (n == 1 || p.iter().any(|&l| l > 1)))
        .collect()
}

/// Fixed points `0..f`, then cycles of increasing length on consecutive points.
pub fn root_permutation(n: usize, cycle_type: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &len in cycle_type {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(images).expect("cycle type sums to n")
}

/// Relabelings fixing 0 and commuting with the root permutation.
fn root_symmetry(n: usize, cycle_type: &[usize]) -> GroupHandle {
    let mut gens = Vec::new();
    let mut starts = Vec::new();
    let mut start = 0;
    for &len in cycle_type {
        starts.push((start, len));
        start += len;
    }
    // the cycle of 0 is the first fixed point and stays put
    for (i, &(s, len)) in starts.iter().enumerate() {
        if len > 1 {
            let mut images: Vec<usize> = (0..n).collect();
            for k in 0..len {
                images[s + k] = s + (k + 1) % len;
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
        if i >= 1 {
            let (prev, prev_len) = starts[i - 1];
            if prev_len == len && (len > 1 || i >= 2) {
                let mut images: Vec<usize> = (0..n).collect();
                for k in 0..len {
                    images[prev + k] = s + k;
                    images[s + k] = prev + k;
                }
                gens.push(Permutation::from_images(images).unwrap());
            }
        }
    }
    GroupHandle::new(n, gens)
}

fn describe_cycle_type(cycle_type: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < cycle_type.len() {
        let len = cycle_type[i];
        let count = cycle_type[i..].iter().take_while(|&&l| l == len).count();
        parts.push(if count == 1 {
            len.to_string()
        } else {
            format!("{len}^{count}")
        });
        i += count;
    }
    parts.join(" ")
}

#[derive(Clone)]
struct Shape {
    n: usize,
    fixed: u8,
    /// `lambda[l]` = number of cycles of length `l`.
    lambda: Vec<u8>,
}

struct Conflict;

type Step = std::result::Result<(), Conflict>;

#[derive(Clone)]
struct State {
    /// `fwd[c·n + x] = φ_c(x)`.
    fwd: Vec<u8>,
    /// `inv[c·n + v] = φ_c⁻¹(v)`.
    inv: Vec<u8>,
    col_known: Vec<u8>,
    row_fixed: Vec<u8>,
    row_moved: Vec<u8>,
    /// `closed[c·(n+1) + l]` = closed cycles of length `l` in column `c`.
    closed: Vec<u8>,
    unknown: usize,
    queue: Vec<(u8, u8)>,
}

impl State {
    fn new(n: usize) -> Self {
        State {
            fwd: vec![UNK; n * n],
            inv: vec![UNK; n * n],
            col_known: vec![0; n],
            row_fixed: vec![0; n],
            row_moved: vec![0; n],
            closed: vec![0; n * (n + 1)],
            unknown: n * n,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn fwd(&self, n: usize, c: usize, x: usize) -> u8 {
        self.fwd[c * n + x]
    }

    #[inline]
    fn inv(&self, n: usize, c: usize, v: usize) -> u8 {
        self.inv[c * n + v]
    }

    /// Length of the cycle closed by `x ↦ v`, or the node count of the path it extends.
    fn chain_through(&self, n: usize, c: usize, x: usize, v: usize) -> (bool, usize) {
        if v == x {
            return (true, 1);
        }
        let mut nodes = 2;
        let mut w = v;
        loop {
            let next = self.fwd(n, c, w);
            if next == UNK {
                break;
            }
            if next as usize == x {
                return (true, nodes);
            }
            nodes += 1;
            w = next as usize;
        }
        let mut w = x;
        loop {
            let prev = self.inv(n, c, w);
            if prev == UNK {
                break;
            }
            nodes += 1;
            w = prev as usize;
        }
        (false, nodes)
    }

    fn admissible(&self, shape: &Shape, c: usize, x: usize, v: usize) -> bool {
        let n = shape.n;
        if self.inv(n, c, v) != UNK {
            return false;
        }
        if v == x {
            if self.row_fixed[x] >= shape.fixed {
                return false;
            }
        } else if self.row_moved[x] as usize >= n - shape.fixed as usize {
            return false;
        }
        let closed = &self.closed[c * (n + 1)..(c + 1) * (n + 1)];
        match self.chain_through(n, c, x, v) {
            (true, len) => closed[len] < shape.lambda[len],
            (false, nodes) => (nodes..=n).any(|l| closed[l] < shape.lambda[l]),
        }
    }

    fn set(&mut self, shape: &Shape, c: usize, x: usize, v: usize) -> Step {
        let n = shape.n;
        let cur = self.fwd(n, c, x);
        if cur != UNK {
            return if cur as usize == v { Ok(()) } else { Err(Conflict) };
        }
        if !self.admissible(shape, c, x, v) {
            return Err(Conflict);
        }
        if let (true, len) = self.chain_through(n, c, x, v) {
            self.closed[c * (n + 1) + len] += 1;
        }
        self.fwd[c * n + x] = v as u8;
        self.inv[c * n + v] = x as u8;
        self.col_known[c] += 1;
        if v == x {
            self.row_fixed[x] += 1;
        } else {
            self.row_moved[x] += 1;
        }
        self.unknown -= 1;
        self.queue.push((c as u8, x as u8));
        Ok(())
    }

    /// Applies the self-distributivity relation on the triple `(x, y, z)`:
    /// with `A = φ_y(x)`, `B = φ_z(y)`, `C = φ_z(x)` it requires `φ_z(A) = φ_B(C)`.
    fn relate(&mut self, shape: &Shape, x: usize, y: usize, z: usize) -> Step {
        let n = shape.n;
        let b = self.fwd(n, z, y);
        if b == UNK {
            return Ok(());
        }
        let b = b as usize;
        let a = self.fwd(n, y, x);
        let c = self.fwd(n, z, x);
        if a != UNK {
            let a = a as usize;
            let d = self.fwd(n, z, a);
            if c != UNK {
                let c = c as usize;
                let e = self.fwd(n, b, c);
                match (d, e) {
                    (UNK, UNK) => Ok(()),
                    (UNK, e) => self.set(shape, z, a, e as usize),
                    (d, UNK) => self.set(shape, b, c, d as usize),
                    (d, e) if d == e => Ok(()),
                    _ => Err(Conflict),
                }
            } else if d != UNK {
                match self.inv(n, b, d as usize) {
                    UNK => Ok(()),
                    c => self.set(shape, z, x, c as usize),
                }
            } else {
                Ok(())
            }
        } else if c != UNK {
            let e = self.fwd(n, b, c as usize);
            if e == UNK {
                return Ok(());
            }
            match self.inv(n, z, e as usize) {
                UNK => Ok(()),
                a => self.set(shape, y, x, a as usize),
            }
        } else {
            Ok(())
        }
    }

    /// Re-examines every triple in which the entry `φ_c(d) = e` takes part,
    /// directly or through an inverse lookup.
    fn triggers(&mut self, shape: &Shape, c: usize, d: usize, e: usize) -> Step {
        let n = shape.n;
        for z in 0..n {
            // as A = φ_y(x)
            self.relate(shape, d, c, z)?;
        }
        for x in 0..n {
            // as B = φ_z(y)
            self.relate(shape, x, d, c)?;
        }
        for y in 0..n {
            // as C = φ_z(x)
            self.relate(shape, d, y, c)?;
        }
        for y in 0..n {
            // as D = φ_z(A)
            let x = self.inv(n, y, d);
            if x != UNK {
                self.relate(shape, x as usize, y, c)?;
            }
        }
        for z in 0..n {
            // as E = φ_B(C), and as the lookup φ_B⁻¹(D)
            let y = self.inv(n, z, c);
            if y == UNK {
                continue;
            }
            let x = self.inv(n, z, d);
            if x != UNK {
                self.relate(shape, x as usize, y as usize, z)?;
            }
            let a = self.inv(n, z, e);
            if a != UNK {
                let x = self.inv(n, y as usize, a as usize);
                if x != UNK {
                    self.relate(shape, x as usize, y as usize, z)?;
                }
            }
        }
        for y in 0..n {
            // as the lookup φ_z⁻¹(E)
            let b = self.fwd(n, c, y);
            if b == UNK {
                continue;
            }
            let cc = self.inv(n, b as usize, e);
            if cc == UNK {
                continue;
            }
            let x = self.inv(n, c, cc as usize);
            if x != UNK {
                self.relate(shape, x as usize, y, c)?;
            }
        }
        Ok(())
    }

    fn propagate(&mut self, shape: &Shape) -> Step {
        let n = shape.n;
        let moved_cap = (n - shape.fixed as usize) as u8;
        while let Some((c, d)) = self.queue.pop() {
            let (c, d) = (c as usize, d as usize);
            let e = self.fwd(n, c, d) as usize;
            self.triggers(shape, c, d, e)?;
            if self.col_known[c] as usize == n - 1 {
                let x = (0..n).find(|&x| self.fwd(n, c, x) == UNK).unwrap();
                let v = (0..n).find(|&v| self.inv(n, c, v) == UNK).unwrap();
                self.set(shape, c, x, v)?;
            }
            // a row whose moved entries are used up is fixed everywhere else
            let row = d;
            if e != d && self.row_moved[row] == moved_cap && self.row_fixed[row] < shape.fixed {
                for b in 0..n {
                    if self.fwd(n, b, row) == UNK {
                        self.set(shape, b, row, row)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `Int` can still act transitively: joins `x` to every value
    /// an unknown `φ_c(x)` could still take and tests the join for connectivity.
    fn may_connect(&self, shape: &Shape) -> bool {
        let n = shape.n;
        let moved_cap = (n - shape.fixed as usize) as u8;
        let mut free = [0u16; MAX_ORDER];
        for c in 0..n {
            for v in 0..n {
                if self.inv[c * n + v] == UNK {
                    free[c] |= 1 << v;
                }
            }
        }
        let mut adj = [0u16; MAX_ORDER];
        for c in 0..n {
            for x in 0..n {
                match self.fwd[c * n + x] {
                    UNK => {
                        if self.row_moved[x] < moved_cap {
                            adj[x] |= free[c];
                        }
                    }
                    v => adj[x] |= 1 << v,
                }
            }
        }
        for x in 0..n {
            let mut m = adj[x];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[v] |= 1 << x;
            }
        }
        let all: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        let mut reach: u16 = 1;
        loop {
            let mut next = reach;
            let mut m = reach;
            while m != 0 {
                let y = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= adj[y];
            }
            if next == reach {
                return reach == all;
            }
            reach = next;
        }
    }

    fn to_table(&self, n: usize) -> QuandleTable {
        let mut table = vec![0u8; n * n];
        for b in 0..n {
            for a in 0..n {
                table[a * n + b] = self.fwd[b * n + a];
            }
        }
        QuandleTable::from_zero_based_unchecked(n, table)
    }
}

struct Node {
    state: State,
    /// Relabelings preserving the node; `None` when trivial.
    symmetry: Option<GroupHandle>,
}

enum Expansion {
    Leaf(QuandleTable),
    Dead,
    Children(Vec<Node>),
}

struct Search<'a> {
    shape: Shape,
    counters: &'a Counters,
    stop: &'a AtomicBool,
    deadline: Option<Instant>,
}

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    leaves: AtomicU64,
}

impl Search<'_> {
    fn root(&self, cycle_type: &[usize]) -> Option<Node> {
        let n = self.shape.n;
        let mut state = State::new(n);
        let r = root_permutation(n, cycle_type);
        for c in 0..n {
            state.set(&self.shape, c, c, c).ok()?;
        }
        for x in 0..n {
            state.set(&self.shape, 0, x, r.apply(x)).ok()?;
        }
        state.propagate(&self.shape).ok()?;
        let k = root_symmetry(n, cycle_type);
        Some(Node {
            state,
            symmetry: (!k.is_trivial()).then_some(k),
        })
    }

    /// Picks the unknown entry to branch on: the fullest incomplete column,
    /// then the entry with the fewest admissible values.
    fn choose(&self, state: &State) -> (usize, usize, Vec<usize>) {
        let n = self.shape.n;
        let c = (0..n)
            .filter(|&c| (state.col_known[c] as usize) < n)
            .max_by_key(|&c| (state.col_known[c], std::cmp::Reverse(c)))
            .expect("an unknown entry exists");
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..n {
            if state.fwd(n, c, x) != UNK {
                continue;
            }
            let values: Vec<usize> = (0..n).filter(|&v| state.admissible(&self.shape, c, x, v)).collect();
            if best.as_ref().is_none_or(|(_, b)| values.len() < b.len()) {
                let done = values.len() <= 1;
                best = Some((x, values));
                if done {
                    break;
                }
            }
        }
        let (x, values) = best.unwrap();
        (c, x, values)
    }

    fn expand(&self, node: Node) -> Expansion {
        self.counters.nodes.fetch_add(1, Ordering::Relaxed);
        let n = self.shape.n;
        if !node.state.may_connect(&self.shape) {
            return Expansion::Dead;
        }
        if node.state.unknown == 0 {
            self.counters.leaves.fetch_add(1, Ordering::Relaxed);
            let q = node.state.to_table(n);
            return if q.is_connected() {
                debug_assert!(QuandleTable::from_zero_based(n, q.raw().to_vec()).is_ok());
                Expansion::Leaf(q)
            } else {
                Expansion::Dead
            };
        }
        let (c, x, values) = self.choose(&node.state);
        let local = node.symmetry.as_ref().map(|k| k.pointwise_stabilizer(&[c, x]));
        let local = local.filter(|k| !k.is_trivial());
        let mut children = Vec::new();
        let mut covered = vec![false; n];
        for v in values {
            if covered[v] {
                continue;
            }
            let symmetry = match &local {
                Some(k) => {
                    for w in k.orbit(v) {
                        covered[w] = true;
                    }
                    let s = k.pointwise_stabilizer(&[c, x, v]);
                    (!s.is_trivial()).then_some(s)
                }
                None => None,
            };
            let mut state = node.state.clone();
            if state.set(&self.shape, c, x, v).is_ok() && state.propagate(&self.shape).is_ok() {
                children.push(Node { state, symmetry });
            }
        }
        if children.is_empty() {
            Expansion::Dead
        } else {
            Expansion::Children(children)
        }
    }

    fn over_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if self.counters.nodes.load(Ordering::Relaxed).is_multiple_of(256) && Instant::now() >= d {
                self.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    /// Depth-first search below `node`; `None` when stopped by the budget.
    fn run(&self, node: Node, out: &mut Vec<QuandleTable>) -> Option<()> {
        let mut stack = vec![node];
        while let Some(node) = stack.pop() {
            if self.over_budget() {
                return None;
            }
            match self.expand(node) {
                Expansion::Leaf(q) => out.push(q),
                Expansion::Dead => {}
                Expansion::Children(mut ch) => {
                    ch.reverse();
                    stack.extend(ch);
                }
            }
        }
        Some(())
    }
}

/// Everything known about one enumerated class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub table: QuandleTable,
    pub int_order: u64,
    pub faithful: bool,
    pub phi_image_order: usize,
    pub simple: bool,
    /// Parameters of an isomorphic Alexander quandle, if there is one.
    pub alexander: Option<String>,
    /// Proper non-trivial quotients, as canonical tables.
    pub quotients: Vec<QuandleTable>,
}

impl ClassInfo {
    pub fn compute(name: String, table: QuandleTable, alexander: Option<String>) -> Self {
        let int_order = table.inner_group().order();
        let (image, _) = table.phi_image();
        let simple = table.order() > 1 && is_simple(&table).unwrap_or(false);
        ClassInfo {
            name,
            int_order,
            faithful: table.is_faithful(),
            phi_image_order: image.order(),
            simple,
            alexander,
            quotients: proper_quotients(&table),
            table,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub order: usize,
    pub classes: Vec<ClassInfo>,
    pub elapsed: Duration,
    pub nodes: u64,
    pub leaves: u64,
}

impl EnumerationReport {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn tables(&self) -> Vec<&QuandleTable> {
        self.classes.iter().map(|c| &c.table).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Wall-clock limit for the search itself.
    pub budget: Option<Duration>,
    /// Progress file read on start and written when the budget runs out.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    order: usize,
    completed_roots: Vec<CycleType>,
    /// Canonical tables found so far, rows 1-based.
    found: Vec<Vec<Vec<usize>>>,
}

impl Checkpoint {
    fn load(path: &Path, n: usize) -> Result<Option<Checkpoint>> {
        if !path.exists() {
            return Ok(None);
        }
        let cp: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if cp.order != n {
            return Err(Error::Precondition(format!(
                "checkpoint {} is for order {}, not {n}",
                path.display(),
                cp.order
            )));
        }
        Ok(Some(cp))
    }
}

struct Task {
    root: usize,
    node: Node,
}

/// Lists the connected quandles of order `n`, one canonical table per
/// isomorphism class, sorted.
pub fn connected_tables(n: usize, options: &EnumerateOptions) -> Result<(Vec<QuandleTable>, u64, u64)> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Precondition(format!("order must be in 1..={MAX_ORDER}, got {n}")));
    }
    let run = || search_all(n, options);
    match options.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn search_all(n: usize, options: &EnumerateOptions) -> Result<(Vec<QuandleTable>, u64, u64)> {
    let started = Instant::now();
    let roots = root_cycle_types(n);
    let mut found: BTreeSet<QuandleTable> = BTreeSet::new();
    let mut completed: BTreeSet<CycleType> = BTreeSet::new();
    if let Some(path) = &options.checkpoint {
        if let Some(cp) = Checkpoint::load(path, n)? {
            completed.extend(cp.completed_roots);
            for rows in cp.found {
                found.insert(crate::quandle::verify_axioms(&rows)?);
            }
        }
    }
    let counters = Counters::default();
    let stop = AtomicBool::new(false);
    let deadline = options.budget.map(|b| started + b);

    // per root: shape, then a frontier of independent subtrees
    let mut searches = Vec::new();
    let mut tasks: Vec<Task> = Vec::new();
    let mut leaves_per_root: Vec<Vec<QuandleTable>> = Vec::new();
    for (i, ct) in roots.iter().enumerate() {
        let mut lambda = vec![0u8; n + 1];
        for &l in ct {
            lambda[l] += 1;
        }
        let s = Search {
            shape: Shape {
                n,
                fixed: lambda[1],
                lambda,
            },
            counters: &counters,
            stop: &stop,
            deadline,
        };
        leaves_per_root.push(Vec::new());
        if !completed.contains(ct) {
            if let Some(node) = s.root(ct) {
                tasks.push(Task { root: i, node });
            }
        }
        searches.push(s);
    }
    while tasks.len() < MIN_TASKS && tasks.iter().any(|t| t.node.state.unknown > 0) {
        let mut next = Vec::new();
        for t in tasks {
            if t.node.state.unknown == 0 {
                next.push(t);
                continue;
            }
            match searches[t.root].expand(t.node) {
                Expansion::Leaf(q) => leaves_per_root[t.root].push(q),
                Expansion::Dead => {}
                Expansion::Children(ch) => next.extend(ch.into_iter().map(|node| Task { root: t.root, node })),
            }
        }
        tasks = next;
    }

    let results: Vec<(usize, Option<Vec<QuandleTable>>)> = tasks
        .into_par_iter()
        .map(|t| {
            let mut out = Vec::new();
            let done = searches[t.root].run(t.node, &mut out);
            let canon = out.iter().map(canonical_form).collect();
            (t.root, done.map(|_| canon))
        })
        .collect();

    let mut unfinished = vec![false; roots.len()];
    for leaves in &leaves_per_root {
        found.extend(leaves.iter().map(canonical_form));
    }
    for (root, r) in results {
        match r {
            Some(tables) => found.extend(tables),
            None => unfinished[root] = true,
        }
    }
    for (i, ct) in roots.iter().enumerate() {
        if !unfinished[i] {
            completed.insert(ct.clone());
        }
    }
    let nodes = counters.nodes.load(Ordering::Relaxed);
    let leaves = counters.leaves.load(Ordering::Relaxed);
    if unfinished.iter().any(|&u| u) {
        if let Some(path) = &options.checkpoint {
            let cp = Checkpoint {
                order: n,
                completed_roots: completed.into_iter().collect(),
                found: found.iter().map(QuandleTable::rows).collect(),
            };
            std::fs::write(path, serde_json::to_string_pretty(&cp)?)?;
        }
        return Err(Error::Budget {
            elapsed_secs: started.elapsed().as_secs_f64(),
            checkpoint: options.checkpoint.clone(),
        });
    }
    Ok((found.into_iter().collect(), nodes, leaves))
}

/// Canonical forms of the connected Alexander quandles of order `n`, with their parameters.
pub fn alexander_index(n: usize) -> BTreeMap<QuandleTable, String> {
    let mut index = BTreeMap::new();
    for spec in connected_alexander_specs(n) {
        let q = alexander_quandle(&spec).expect("listed specs are valid");
        index.entry(canonical_form(&q)).or_insert_with(|| spec.to_string());
    }
    index
}

pub fn enumerate_connected(n: usize, options: &EnumerateOptions) -> Result<EnumerationReport> {
    let started = Instant::now();
    let (tables, nodes, leaves) = connected_tables(n, options)?;
    let alex = alexander_index(n);
    let classes = tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let a = alex.get(&t).cloned();
            ClassInfo::compute(format!("c{n}_{:02}", i + 1), t, a)
        })
        .collect();
    Ok(EnumerationReport {
        order: n,
        classes,
        elapsed: started.elapsed(),
        nodes,
        leaves,
    })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// For `n = 2p`, `p ≥ 5` prime: whether every listed class is simple.
pub fn verify_2p(report: &EnumerationReport) -> Result<bool> {
    let n = report.order;
    if !n.is_multiple_of(2) || !is_prime(n / 2) || n / 2 < 5 {
        return Err(Error::Precondition(format!(
            "order {n} is not twice a prime of at least 5"
        )));
    }
    Ok(report.classes.iter().all(|c| c.simple))
}

/// Reports for every order `1..=n_max`.
pub fn classify_range(n_max: usize, options: &EnumerateOptions) -> Result<Vec<EnumerationReport>> {
    (1..=n_max).map(|n| enumerate_connected(n, options)).collect()
}

/// Per-order class counts.
pub fn counts(reports: &[EnumerationReport]) -> Vec<(usize, usize)> {
    reports.iter().map(|r| (r.order, r.count())).collect()
}

/// One line per root with its cycle type, used in diagnostics.
pub fn describe_roots(n: usize) -> Vec<String> {
    root_cycle_types(n).iter().map(|c| describe_cycle_type(c)).collect()
}
