//! Cayley-table quandles.
//!
//! Row `a`, column `b` holds `a⋆b`. Elements are 0-based internally; every
//! textual interface (tables, witnesses, error reports) is 1-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    table: Vec<u8>,
}

/// The first axiom failure found, with 1-based witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `a⋆a ≠ a`.
    Idempotence { a: usize },
    /// Column `b` takes the same value in rows `a1` and `a2`.
    RightInvertibility { b: usize, a1: usize, a2: usize },
    /// `(a⋆b)⋆c ≠ (a⋆c)⋆(b⋆c)`.
    SelfDistributivity { a: usize, b: usize, c: usize },
}

impl AxiomViolation {
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomViolation::Idempotence { .. } => 1,
            AxiomViolation::SelfDistributivity { .. } => 2,
            AxiomViolation::RightInvertibility { .. } => 3,
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Idempotence { a } => {
                write!(f, "axiom 1 (idempotence) fails: {a}⋆{a} ≠ {a}")
            }
            AxiomViolation::RightInvertibility { b, a1, a2 } => write!(
                f,
                "axiom 3 (right invertibility) fails in column {b}: rows {a1} and {a2} agree"
            ),
            AxiomViolation::SelfDistributivity { a, b, c } => write!(
                f,
                "axiom 2 (self-distributivity) fails: ({a}⋆{b})⋆{c} ≠ ({a}⋆{c})⋆({b}⋆{c})"
            ),
        }
    }
}

/// Validates a 1-based `n×n` table. Axioms are checked in the order 1, 3, 2 and
/// each in lexicographic order of its witnesses, so the report is reproducible.
pub fn verify_axioms(rows: &[Vec<usize>]) -> Result<QuandleTable> {
    let n = rows.len();
    if n == 0 || n > 255 {
        return Err(Error::Precondition(format!("order {n} is outside 1..=255")));
    }
    let mut table = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse {
                line: r + 1,
                column: 0,
                message: format!("row {} has {} entries, expected {n}", r + 1, row.len()),
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::EntryOutOfRange {
                    row: r + 1,
                    column: c + 1,
                    value: v,
                    n,
                });
            }
            table.push((v - 1) as u8);
        }
    }
    QuandleTable::from_zero_based(n, table)
}

impl QuandleTable {
    /// Validates a 0-based row-major table.
    pub fn from_zero_based(n: usize, table: Vec<u8>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&v| v as usize >= n) {
            return Err(Error::Precondition("malformed 0-based table".into()));
        }
        let q = QuandleTable { n, table };
        match q.first_violation() {
            None => Ok(q),
            Some(v) => Err(Error::Axiom(v)),
        }
    }

    /// Caller guarantees the table satisfies the axioms.
    pub(crate) fn from_zero_based_unchecked(n: usize, table: Vec<u8>) -> Self {
        let q = QuandleTable { n, table };
        debug_assert!(q.first_violation().is_none());
        q
    }

    pub fn trivial(n: usize) -> Self {
        let table = (0..n).flat_map(|a| std::iter::repeat_n(a as u8, n)).collect();
        QuandleTable { n, table }
    }

    /// The dihedral quandle `a⋆b = 2b − a` on `Z/n`.
    pub fn dihedral(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((2 * b + n - a) % n) as u8);
            }
        }
        QuandleTable::from_zero_based_unchecked(n, table)
    }

    fn first_violation(&self) -> Option<AxiomViolation> {
        let n = self.n;
        for a in 0..n {
            if self.op(a, a) != a {
                return Some(AxiomViolation::Idempotence { a: a + 1 });
            }
        }
        for b in 0..n {
            let mut row_of = vec![usize::MAX; n];
            for a in 0..n {
                let v = self.op(a, b);
                if row_of[v] != usize::MAX {
                    return Some(AxiomViolation::RightInvertibility {
                        b: b + 1,
                        a1: row_of[v] + 1,
                        a2: a + 1,
                    });
                }
                row_of[v] = a;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(self.op(a, c), self.op(b, c)) {
                        return Some(AxiomViolation::SelfDistributivity {
                            a: a + 1,
                            b: b + 1,
                            c: c + 1,
                        });
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// 0-based `a⋆b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// 0-based `c` with `c⋆b = a`.
    pub fn left_divide_raw(&self, a: usize, b: usize) -> usize {
        (0..self.n)
            .find(|&c| self.op(c, b) == a)
            .expect("columns of a quandle are bijections")
    }

    /// 1-based `a⋆b`.
    pub fn star(&self, a: usize, b: usize) -> Result<usize> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(self.op(a - 1, b - 1) + 1)
    }

    /// 1-based: the unique `c` with `c⋆b = a`.
    pub fn left_divide(&self, a: usize, b: usize) -> Result<usize> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(self.left_divide_raw(a - 1, b - 1) + 1)
    }

    fn check_label(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::Precondition(format!("label {x} outside 1..={}", self.n)))
        } else {
            Ok(())
        }
    }

    /// Row-major 0-based entries.
    pub fn raw(&self) -> &[u8] {
        &self.table
    }

    /// 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.op(a, b) + 1).collect())
            .collect()
    }

    /// The translation `φ_b : a ↦ a⋆b` (0-based `b`).
    pub fn translation(&self, b: usize) -> Permutation {
        Permutation::from_bytes_unchecked((0..self.n).map(|a| self.table[a * self.n + b]).collect())
    }

    /// `φ_b` for every `b`, in order.
    pub fn translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|b| self.translation(b)).collect()
    }

    pub fn inner_group(&self) -> GroupHandle {
        GroupHandle::new(self.n, self.translations())
    }

    /// Orbit of element `0` under the translations, by direct search.
    pub fn is_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for b in 0..n {
                let y = self.op(x, b);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    pub fn is_faithful(&self) -> bool {
        let cols = self.translations();
        let mut sorted = cols.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == cols.len()
    }

    /// The image of `a ↦ φ_a` with `φ_a⋆φ_b = φ_b⁻¹φ_aφ_b`, plus the quotient map.
    /// Image elements are numbered by first occurrence.
    pub fn phi_image(&self) -> (QuandleTable, Vec<usize>) {
        let cols = self.translations();
        let mut distinct: Vec<Permutation> = Vec::new();
        let mut map = Vec::with_capacity(self.n);
        for c in &cols {
            match distinct.iter().position(|d| d == c) {
                Some(i) => map.push(i),
                None => {
                    map.push(distinct.len());
                    distinct.push(c.clone());
                }
            }
        }
        let m = distinct.len();
        let mut table = Vec::with_capacity(m * m);
        for a in &distinct {
            for b in &distinct {
                let c = a.conjugate_by(b);
                let idx = distinct
                    .iter()
                    .position(|d| *d == c)
                    .expect("translations are closed under conjugation");
                table.push(idx as u8);
            }
        }
        (QuandleTable::from_zero_based_unchecked(m, table), map)
    }

    /// The table after renaming every element `x` to `perm[x]`.
    pub fn relabel(&self, perm: &Permutation) -> QuandleTable {
        let n = self.n;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm.apply(a) * n + perm.apply(b)] = perm.apply(self.op(a, b)) as u8;
            }
        }
        QuandleTable { n, table }
    }

    /// Whether `map` (0-based, from `self` into `target`) preserves `⋆`.
    pub fn is_homomorphism_to(&self, target: &QuandleTable, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&x| x < target.n)
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| map[self.op(a, b)] == target.op(map[a], map[b]))
            })
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuandleTable({})", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}
