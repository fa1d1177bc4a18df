//! Extensions with a two-element fiber and cohomology with coefficients in F₂.
//!
//! A fiber-2 dynamical cocycle is `α_{x,y}(s,t) = β(x,y) + s + γ(x,y)·t`.
//! The cocycle identity splits into
//!
//! ```text
//! β(x⋆y,z) + β(x,y) = β(x⋆z,y⋆z) + β(x,z) + γ(x⋆z,y⋆z)·β(y,z)
//! γ(x,y)            = γ(x⋆z,y⋆z)
//! γ(x⋆y,z)          = γ(x,z) + γ(x⋆z,y⋆z)·γ(y,z)
//! ```
//!
//! together with `β(x,x) = γ(x,x) = 0`. For a fixed `γ` the first line is
//! linear in `β`, and the second forces `γ` to be constant on the orbits of
//! `Int(Q)` acting diagonally on `Q×Q`; that is how every pair is listed.

use std::collections::BTreeMap;

use crate::construct::{alexander_quandle, extension_table, product_quandle, AlexanderSpec, DynamicalCocycle};
use crate::error::{Error, Result};
use crate::f2::{solve, span_elements, BitVec, Echelon};
use crate::iso::canonical_form;
use crate::quandle::QuandleTable;

/// Refuse to list more than `2^MAX_LISTED_DIMENSION` cocycles for one `γ`.
const MAX_LISTED_DIMENSION: usize = 24;
/// Refuse to try more than `2^MAX_GAMMA_ORBITALS` candidate `γ`.
const MAX_GAMMA_ORBITALS: usize = 24;

/// The pair `(β, γ)` describing a fiber-2 dynamical cocycle. Both maps are
/// stored row-major, `x·n + y`, with values in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCocyclePair {
    base: QuandleTable,
    beta: Vec<u8>,
    gamma: Vec<u8>,
}

impl BinaryCocyclePair {
    pub fn new(base: QuandleTable, beta: Vec<u8>, gamma: Vec<u8>) -> Result<Self> {
        let nn = base.order() * base.order();
        if beta.len() != nn || gamma.len() != nn || beta.iter().chain(&gamma).any(|&v| v > 1) {
            return Err(Error::Cocycle("β and γ must be n×n arrays of bits".into()));
        }
        let pair = BinaryCocyclePair { base, beta, gamma };
        pair.check()?;
        Ok(pair)
    }

    pub fn base(&self) -> &QuandleTable {
        &self.base
    }

    pub fn beta(&self, x: usize, y: usize) -> u8 {
        self.beta[x * self.base.order() + y]
    }

    pub fn gamma(&self, x: usize, y: usize) -> u8 {
        self.gamma[x * self.base.order() + y]
    }

    pub fn beta_bits(&self) -> &[u8] {
        &self.beta
    }

    pub fn gamma_bits(&self) -> &[u8] {
        &self.gamma
    }

    pub fn gamma_vanishes(&self) -> bool {
        self.gamma.iter().all(|&v| v == 0)
    }

    /// Checks the split conditions directly.
    pub fn check(&self) -> Result<()> {
        let q = &self.base;
        let n = q.order();
        for x in 0..n {
            if self.beta(x, x) != 0 || self.gamma(x, x) != 0 {
                return Err(Error::Cocycle(format!("β or γ is nonzero at ({0},{0})", x + 1)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = q.op(x, y);
                for z in 0..n {
                    let (xz, yz) = (q.op(x, z), q.op(y, z));
                    let g = self.gamma(xz, yz);
                    let triple = || format!("x={}, y={}, z={}", x + 1, y + 1, z + 1);
                    if self.gamma(x, y) != g {
                        return Err(Error::Cocycle(format!("γ is not Int-invariant at {}", triple())));
                    }
                    if self.gamma(xy, z) != self.gamma(x, z) ^ (g & self.gamma(y, z)) {
                        return Err(Error::Cocycle(format!("γ condition fails at {}", triple())));
                    }
                    let lhs = self.beta(xy, z) ^ self.beta(x, y);
                    let rhs = self.beta(xz, yz) ^ self.beta(x, z) ^ (g & self.beta(y, z));
                    if lhs != rhs {
                        return Err(Error::Cocycle(format!("β condition fails at {}", triple())));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Splits a fiber-2 cocycle into `(β, γ)`. The result is not checked.
pub fn decompose_alpha(c: &DynamicalCocycle) -> Result<BinaryCocyclePair> {
    if c.fiber() != 2 {
        return Err(Error::Cocycle(format!("fiber has size {}, expected 2", c.fiber())));
    }
    let n = c.base().order();
    let mut beta = Vec::with_capacity(n * n);
    let mut gamma = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let b = c.alpha(x, y, 0, 0) as u8;
            let g = c.alpha(x, y, 0, 1) as u8 ^ b;
            // with s ↦ α(s,t) bijective these are the only possibilities
            if c.alpha(x, y, 1, 0) as u8 != b ^ 1 || c.alpha(x, y, 1, 1) as u8 != b ^ 1 ^ g {
                return Err(Error::Cocycle(format!(
                    "α_{{{},{}}} is not of the form β + s + γ·t",
                    x + 1,
                    y + 1
                )));
            }
            beta.push(b);
            gamma.push(g);
        }
    }
    Ok(BinaryCocyclePair {
        base: c.base().clone(),
        beta,
        gamma,
    })
}

/// `α_{x,y}(s,t) = β(x,y) + s + γ(x,y)·t`.
pub fn recompose(p: &BinaryCocyclePair) -> DynamicalCocycle {
    DynamicalCocycle::from_fn(p.base.clone(), 2, |x, y, s, t| {
        (p.beta(x, y) as usize + s + p.gamma(x, y) as usize * t) % 2
    })
}

/// `μ(x) = γ(x, 0)` on an Alexander base, so that `γ(x,y) = μ(x − y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuFunction {
    spec: AlexanderSpec,
    mu: Vec<u8>,
}

impl MuFunction {
    pub fn spec(&self) -> &AlexanderSpec {
        &self.spec
    }

    pub fn value(&self, x: usize) -> u8 {
        self.mu[x]
    }

    pub fn values(&self) -> &[u8] {
        &self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().all(|&v| v == 0)
    }

    /// `N = μ⁻¹(0)`, sorted.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.mu.len()).filter(|&x| self.mu[x] == 0).collect()
    }
}

pub fn extract_mu(p: &BinaryCocyclePair, spec: &AlexanderSpec) -> Result<MuFunction> {
    let base = alexander_quandle(spec)?;
    if base != p.base {
        return Err(Error::Cocycle(format!("pair is not defined over {spec}")));
    }
    if !spec.one_minus_t_invertible() {
        return Err(Error::Precondition(format!("{spec} is not connected")));
    }
    let n = base.order();
    let mu: Vec<u8> = (0..n).map(|x| p.gamma(x, 0)).collect();
    for x in 0..n {
        for y in 0..n {
            if p.gamma(x, y) != mu[spec.sub(x, y)] {
                return Err(Error::Cocycle(format!("γ({},{}) ≠ μ(x−y)", x + 1, y + 1)));
            }
        }
        if mu[spec.apply_t(x)] != mu[x] {
            return Err(Error::Cocycle(format!("μ(Tx) ≠ μ(x) at x={}", x + 1)));
        }
    }
    for x in 0..n {
        let tx = spec.apply_t(x);
        for y in 0..n {
            if mu[spec.add(x, y)] ^ (mu[x] & mu[y]) != mu[spec.add(tx, y)] {
                return Err(Error::Cocycle(format!(
                    "μ(x+y) + μ(x)μ(y) ≠ μ(Tx+y) at x={}, y={}",
                    x + 1,
                    y + 1
                )));
            }
        }
    }
    Ok(MuFunction { spec: spec.clone(), mu })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// `μ ≡ 0` follows for every fiber-2 cocycle over this base.
    Forced,
    /// The sufficient conditions do not apply. This does not mean a nonzero `μ` exists.
    NotForced,
}

/// Tests the two sufficient conditions for `μ ≡ 0`: `1+T` and `2` invertible,
/// or `2` and `3` invertible with `T = −1`.
pub fn check_vanishing(spec: &AlexanderSpec) -> Vanishing {
    let two = spec.scalar_invertible(2);
    if (two && spec.one_plus_t_invertible()) || (two && spec.scalar_invertible(3) && spec.t_is_minus_one()) {
        Vanishing::Forced
    } else {
        Vanishing::NotForced
    }
}

/// Whether `beta` (row-major bits) satisfies the F₂ cocycle conditions on `q`.
pub fn is_cocycle(q: &QuandleTable, beta: &[u8]) -> bool {
    let n = q.order();
    beta.len() == n * n
        && (0..n).all(|x| beta[x * n + x] == 0)
        && (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = q.op(x, y);
                (0..n).all(|z| {
                    let (xz, yz) = (q.op(x, z), q.op(y, z));
                    beta[xy * n + z] ^ beta[x * n + y] == beta[xz * n + yz] ^ beta[x * n + z]
                })
            })
        })
}

/// `δg(x,y) = g(x⋆y) + g(x)`.
pub fn coboundary(q: &QuandleTable, g: &[u8]) -> Vec<u8> {
    let n = q.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push((g[q.op(x, y)] ^ g[x]) & 1);
        }
    }
    out
}

/// Cocycle equations for a fixed `γ`, as rows over the `n²` unknowns `β(x,y)`.
fn beta_system(q: &QuandleTable, gamma: Option<&[u8]>) -> Echelon {
    let n = q.order();
    let mut ech = Echelon::new(n * n);
    for x in 0..n {
        let mut row = BitVec::zeros(n * n);
        row.set(x * n + x, true);
        ech.insert(row);
    }
    for x in 0..n {
        for y in 0..n {
            let xy = q.op(x, y);
            for z in 0..n {
                let (xz, yz) = (q.op(x, z), q.op(y, z));
                let mut row = BitVec::zeros(n * n);
                row.flip(xy * n + z);
                row.flip(x * n + y);
                row.flip(xz * n + yz);
                row.flip(x * n + z);
                if gamma.is_some_and(|g| g[xz * n + yz] == 1) {
                    row.flip(y * n + z);
                }
                if !row.is_zero() {
                    ech.insert(row);
                }
            }
        }
    }
    ech
}

/// Bases of `Z²(Q; F₂)` and `B²(Q; F₂)` as row-major bit vectors of length `n²`.
#[derive(Clone, Debug)]
pub struct F2Cohomology {
    pub order: usize,
    pub cocycles: Vec<BitVec>,
    pub coboundaries: Vec<BitVec>,
}

impl F2Cohomology {
    pub fn dim_cocycles(&self) -> usize {
        self.cocycles.len()
    }

    pub fn dim_coboundaries(&self) -> usize {
        self.coboundaries.len()
    }

    pub fn dim_quotient(&self) -> usize {
        self.cocycles.len() - self.coboundaries.len()
    }
}

pub fn f2_cocycles(q: &QuandleTable) -> F2Cohomology {
    let n = q.order();
    let cocycles = beta_system(q, None).nullspace();
    let mut b = Echelon::new(n * n);
    for i in 0..n {
        let mut g = vec![0u8; n];
        g[i] = 1;
        b.insert(BitVec::from_bits(&coboundary(q, &g)));
    }
    F2Cohomology {
        order: n,
        cocycles,
        coboundaries: b.rows().to_vec(),
    }
}

/// `Some(g)` with `β = δg` when `β` is a coboundary. The returned `g` is
/// checked to turn the extension into the product with the trivial 2-quandle.
pub fn is_coboundary(q: &QuandleTable, beta: &[u8]) -> Result<Option<Vec<u8>>> {
    if !is_cocycle(q, beta) {
        return Err(Error::Cocycle("β is not an F₂ cocycle".into()));
    }
    let n = q.order();
    let columns: Vec<BitVec> = (0..n)
        .map(|i| {
            let mut g = vec![0u8; n];
            g[i] = 1;
            BitVec::from_bits(&coboundary(q, &g))
        })
        .collect();
    let Some(x) = solve(&columns, &BitVec::from_bits(beta)) else {
        return Ok(None);
    };
    let g = x.to_bits();
    assert_eq!(coboundary(q, &g), beta);
    let ext = extension_table(&DynamicalCocycle::from_fn(q.clone(), 2, |x, y, s, _| {
        (s + beta[x * n + y] as usize) % 2
    }));
    let product = product_quandle(q, &QuandleTable::trivial(2))?;
    let map: Vec<usize> = (0..2 * n).map(|a| 2 * (a / 2) + ((a % 2) ^ g[a / 2] as usize)).collect();
    assert!(ext.is_homomorphism_to(&product, &map));
    Ok(Some(g))
}

/// Orbits of `Int(Q)` on `Q×Q` acting by `(x,y) ↦ (x⋆z, y⋆z)`, as an orbit
/// label per pair `x·n + y`, numbered by first appearance.
fn diagonal_orbitals(q: &QuandleTable) -> Vec<usize> {
    let n = q.order();
    let mut label = vec![usize::MAX; n * n];
    let mut next = 0;
    for start in 0..n * n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            let (x, y) = (p / n, p % n);
            for z in 0..n {
                let image = q.op(x, z) * n + q.op(y, z);
                if label[image] == usize::MAX {
                    label[image] = next;
                    stack.push(image);
                }
            }
        }
        next += 1;
    }
    label
}

/// Every `γ` satisfying its two conditions, in increasing order of the
/// bit pattern on the off-diagonal orbitals.
pub fn gamma_candidates(q: &QuandleTable) -> Result<Vec<Vec<u8>>> {
    let n = q.order();
    let orbital = diagonal_orbitals(q);
    let mut diagonal = vec![false; orbital.iter().max().map_or(0, |m| m + 1)];
    for x in 0..n {
        diagonal[orbital[x * n + x]] = true;
    }
    let free: Vec<usize> = (0..diagonal.len()).filter(|&o| !diagonal[o]).collect();
    if free.len() > MAX_GAMMA_ORBITALS {
        return Err(Error::Precondition(format!(
            "{} off-diagonal orbitals is too many to search",
            free.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut value = vec![0u8; diagonal.len()];
        for (i, &o) in free.iter().enumerate() {
            value[o] = (mask >> i & 1) as u8;
        }
        let gamma: Vec<u8> = orbital.iter().map(|&o| value[o]).collect();
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = q.op(x, y);
                (0..n).all(|z| {
                    let (xz, yz) = (q.op(x, z), q.op(y, z));
                    gamma[xy * n + z] == gamma[x * n + z] ^ (gamma[xz * n + yz] & gamma[y * n + z])
                })
            })
        });
        if ok {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// Every valid fiber-2 dynamical cocycle over `q`, as `(β, γ)` pairs.
pub fn binary_cocycle_pairs(q: &QuandleTable) -> Result<Vec<BinaryCocyclePair>> {
    let n = q.order();
    let mut out = Vec::new();
    for gamma in gamma_candidates(q)? {
        let basis = beta_system(q, Some(&gamma)).nullspace();
        if basis.len() > MAX_LISTED_DIMENSION {
            return Err(Error::Precondition(format!(
                "2^{} cocycles for one γ is too many to list",
                basis.len()
            )));
        }
        for beta in span_elements(&basis, n * n) {
            out.push(BinaryCocyclePair {
                base: q.clone(),
                beta: beta.to_bits(),
                gamma: gamma.clone(),
            });
        }
    }
    Ok(out)
}

/// The connected quandles `E` of order `2n` obtained from fiber-2 cocycles
/// over `q`, one per isomorphism class, keyed by canonical form and paired
/// with the first cocycle found for it.
pub fn connected_binary_extensions(q: &QuandleTable) -> Result<Vec<(QuandleTable, BinaryCocyclePair)>> {
    let mut found: BTreeMap<QuandleTable, BinaryCocyclePair> = BTreeMap::new();
    for pair in binary_cocycle_pairs(q)? {
        let e = extension_table(&recompose(&pair));
        if e.is_connected() {
            found.entry(canonical_form(&e)).or_insert(pair);
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::dynamical_extension;

    fn q4() -> QuandleTable {
        alexander_quandle(&AlexanderSpec::new(vec![2, 2], vec![vec![0, 1], vec![1, 1]]).unwrap()).unwrap()
    }

    #[test]
    fn trivial_alpha_decomposes_to_zero() {
        let c = DynamicalCocycle::trivial(QuandleTable::dihedral(3), 2);
        let p = decompose_alpha(&c).unwrap();
        assert!(p.beta_bits().iter().all(|&b| b == 0));
        assert!(p.gamma_vanishes());
        assert_eq!(recompose(&p), c);
    }

    #[test]
    fn fiber_three_is_rejected() {
        let c = DynamicalCocycle::trivial(QuandleTable::dihedral(3), 3);
        assert!(decompose_alpha(&c).is_err());
    }

    #[test]
    fn split_conditions_match_the_cocycle_identity() {
        // every α over a small base, checked both ways
        let base = QuandleTable::dihedral(3);
        let pairs = binary_cocycle_pairs(&base).unwrap();
        assert!(!pairs.is_empty());
        for p in &pairs {
            let c = recompose(p);
            c.validate().unwrap();
            assert_eq!(&decompose_alpha(&c).unwrap(), p);
        }
        let bad = DynamicalCocycle::from_fn(base, 2, |x, y, s, t| if (x, y) == (0, 1) { s ^ t } else { s });
        assert!(bad.validate().is_err());
        assert!(decompose_alpha(&bad).unwrap().check().is_err());
    }

    #[test]
    fn vanishing_hypotheses() {
        assert_eq!(check_vanishing(&AlexanderSpec::cyclic(5, 2)), Vanishing::Forced);
        assert_eq!(check_vanishing(&AlexanderSpec::cyclic(5, 4)), Vanishing::Forced);
        let f4 = AlexanderSpec::new(vec![2, 2], vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(check_vanishing(&f4), Vanishing::NotForced);
    }

    #[test]
    fn mu_of_zero_gamma() {
        let spec = AlexanderSpec::cyclic(5, 2);
        let base = alexander_quandle(&spec).unwrap();
        let n = base.order();
        let p = BinaryCocyclePair::new(base, vec![0; n * n], vec![0; n * n]).unwrap();
        let mu = extract_mu(&p, &spec).unwrap();
        assert!(mu.is_zero());
        assert_eq!(mu.kernel(), (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn small_cohomology() {
        let one = f2_cocycles(&QuandleTable::trivial(1));
        assert_eq!((one.dim_cocycles(), one.dim_coboundaries()), (0, 0));
        let q5 = f2_cocycles(&alexander_quandle(&AlexanderSpec::cyclic(5, 2)).unwrap());
        assert_eq!(q5.dim_coboundaries(), 4);
        assert_eq!(q5.dim_quotient(), 0);
        let h = f2_cocycles(&q4());
        assert_eq!(h.dim_coboundaries(), 3);
        assert!(h.dim_quotient() >= 1);
        for z in &h.cocycles {
            assert!(is_cocycle(&q4(), &z.to_bits()));
        }
    }

    #[test]
    fn coboundaries_are_recognised() {
        let q = QuandleTable::dihedral(5);
        let g = [1u8, 0, 1, 1, 0];
        let beta = coboundary(&q, &g);
        let found = is_coboundary(&q, &beta).unwrap().unwrap();
        assert_eq!(coboundary(&q, &found), beta);
        assert_eq!(is_coboundary(&q, &[0; 25]).unwrap(), Some(vec![0; 5]));
        assert!(is_coboundary(&q, &{
            let mut b = vec![0u8; 25];
            b[1] = 1;
            b
        })
        .is_err());
    }

    #[test]
    fn q4_has_a_connected_double_cover() {
        let ext = connected_binary_extensions(&q4()).unwrap();
        assert_eq!(ext.len(), 1);
        let (e, pair) = &ext[0];
        assert_eq!(e.order(), 8);
        assert!(pair.gamma_vanishes());
        assert!(is_coboundary(&q4(), pair.beta_bits()).unwrap().is_none());
        assert!(dynamical_extension(&recompose(pair)).unwrap().is_connected());
    }
}
