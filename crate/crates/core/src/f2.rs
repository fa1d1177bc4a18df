//! Linear algebra over the two-element field with packed bit rows.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A row-echelon basis built incrementally. Rows are kept fully reduced
/// against each other, pivots are the lowest set index of each row.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Reduced rows ordered by pivot.
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of `{v : r·v = 0 for every row r}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.width)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.width);
                v.set(f, true);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Solves `Σ_j x_j·columns[j] = target`; free variables are set to 0.
pub fn solve(columns: &[BitVec], target: &BitVec) -> Option<BitVec> {
    let m = target.len();
    let k = columns.len();
    // rows of the augmented system [A | b], one per coordinate
    let mut ech = Echelon::new(k + 1);
    for i in 0..m {
        let mut row = BitVec::zeros(k + 1);
        for (j, c) in columns.iter().enumerate() {
            if c.get(i) {
                row.set(j, true);
            }
        }
        if target.get(i) {
            row.set(k, true);
        }
        ech.insert(row);
    }
    if ech.pivots().contains(&k) {
        return None;
    }
    let mut x = BitVec::zeros(k);
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        if row.get(k) {
            x.set(p, true);
        }
    }
    Some(x)
}

/// Every vector in the span of `basis`, in Gray-code order starting at 0.
pub fn span_elements(basis: &[BitVec], width: usize) -> impl Iterator<Item = BitVec> + '_ {
    let total: u64 = 1u64 << basis.len();
    let mut current = BitVec::zeros(width);
    (0..total).map(move |i| {
        if i > 0 {
            current.xor_assign(&basis[i.trailing_zeros() as usize]);
        }
        current.clone()
    })
}
