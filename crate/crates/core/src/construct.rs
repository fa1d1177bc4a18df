//! Quandle constructions: Alexander quandles, conjugacy classes, products,
//! extensions by dynamical and group cocycles, and the inverse operation of
//! decomposing a quandle over a quotient.
//!
//! Element orderings are fixed so every construction is byte-reproducible:
//! Alexander quandles use mixed radix with the first coordinate most
//! significant, conjugacy-class quandles the sorted class, products and
//! extensions row-major `(x, s) ↦ x·|S| + s`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

/// An abelian group `M = ⊕ Z/mᵢ` with an endomorphism `T` given by an integer
/// matrix: `(Tx)ᵢ = Σⱼ T[i][j]·xⱼ mod mᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderSpec {
    pub moduli: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl AlexanderSpec {
    /// `Z/m` with `T` multiplication by `w`.
    pub fn cyclic(m: u64, w: i64) -> Self {
        AlexanderSpec {
            moduli: vec![m],
            matrix: vec![vec![w]],
        }
    }

    pub fn new(moduli: Vec<u64>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let spec = AlexanderSpec { moduli, matrix };
        spec.check_shape()?;
        Ok(spec)
    }

    fn check_shape(&self) -> Result<()> {
        let k = self.moduli.len();
        if k == 0 {
            return Err(Error::Alexander("no moduli given".into()));
        }
        if self.moduli.contains(&0) {
            return Err(Error::Alexander("moduli must be positive".into()));
        }
        if self.matrix.len() != k || self.matrix.iter().any(|r| r.len() != k) {
            return Err(Error::Alexander(format!("matrix must be {k}×{k}")));
        }
        if self.size() > 255 {
            return Err(Error::Alexander(format!("|M| = {} exceeds 255", self.size())));
        }
        for i in 0..k {
            for j in 0..k {
                let mi = self.moduli[i] as i128;
                if (self.matrix[i][j] as i128 * self.moduli[j] as i128).rem_euclid(mi) != 0 {
                    return Err(Error::Alexander(format!(
                        "entry ({},{}) does not define a map Z/{} → Z/{}",
                        i + 1,
                        j + 1,
                        self.moduli[j],
                        self.moduli[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut coords = vec![0u64; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i] as usize;
            coords[i] = (idx % m) as u64;
            idx /= m;
        }
        coords
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.decode(a);
        let s: Vec<u64> = x.iter().zip(&self.moduli).map(|(&u, &m)| (m - u) % m).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `c·a` for an integer scalar.
    pub fn scale(&self, c: i64, a: usize) -> usize {
        let x = self.decode(a);
        let s: Vec<u64> = x
            .iter()
            .zip(&self.moduli)
            .map(|(&u, &m)| ((c as i128 * u as i128).rem_euclid(m as i128)) as u64)
            .collect();
        self.encode(&s)
    }

    pub fn apply_t(&self, a: usize) -> usize {
        let x = self.decode(a);
        let k = self.moduli.len();
        let s: Vec<u64> = (0..k)
            .map(|i| {
                let m = self.moduli[i] as i128;
                let v: i128 = (0..k)
                    .map(|j| self.matrix[i][j] as i128 * x[j] as i128)
                    .sum();
                v.rem_euclid(m) as u64
            })
            .collect();
        self.encode(&s)
    }

    /// Whether `x ↦ f(x)` is a bijection of `M`.
    fn is_bijective(&self, f: impl Fn(usize) -> usize) -> bool {
        let n = self.size();
        let mut seen = vec![false; n];
        (0..n).all(|x| {
            let y = f(x);
            !std::mem::replace(&mut seen[y], true)
        })
    }

    pub fn t_invertible(&self) -> bool {
        self.is_bijective(|x| self.apply_t(x))
    }

    /// `1 − T` invertible; equivalent to the quandle being connected.
    pub fn one_minus_t_invertible(&self) -> bool {
        self.is_bijective(|x| self.sub(x, self.apply_t(x)))
    }

    pub fn one_plus_t_invertible(&self) -> bool {
        self.is_bijective(|x| self.add(x, self.apply_t(x)))
    }

    /// Multiplication by `c` is invertible on `M`.
    pub fn scalar_invertible(&self, c: i64) -> bool {
        self.is_bijective(|x| self.scale(c, x))
    }

    pub fn t_is_minus_one(&self) -> bool {
        (0..self.size()).all(|x| self.apply_t(x) == self.neg(x))
    }
}

impl fmt::Display for AlexanderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "Alex({}; T={})", m.join("+"), rows.join(";"))
    }
}

/// `a⋆b = T(a) + b − T(b)` on `M`.
pub fn alexander_quandle(spec: &AlexanderSpec) -> Result<QuandleTable> {
    spec.check_shape()?;
    if !spec.t_invertible() {
        return Err(Error::Alexander(format!("T is not invertible in {spec}")));
    }
    let n = spec.size();
    let t: Vec<usize> = (0..n).map(|x| spec.apply_t(x)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(spec.add(t[a], spec.sub(b, t[b])) as u8);
        }
    }
    Ok(QuandleTable::from_zero_based_unchecked(n, table))
}

/// Elementary-divisor decompositions of the abelian groups of order `n`.
pub fn abelian_groups(n: usize) -> Vec<Vec<u64>> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(e)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n as u64;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factors {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut h = g.clone();
                h.extend(part.iter().map(|&k| p.pow(k)));
                next.push(h);
            }
        }
        groups = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    groups
}

/// Every `(M, T)` with `|M| = n`, `T` an automorphism and `1 − T` invertible.
/// Isomorphic quandles appear repeatedly.
pub fn connected_alexander_specs(n: usize) -> Vec<AlexanderSpec> {
    let mut out = Vec::new();
    for moduli in abelian_groups(n) {
        let k = moduli.len();
        let choices: Vec<Vec<i64>> = (0..k * k)
            .map(|idx| {
                let (i, j) = (idx / k, idx % k);
                (0..moduli[i] as i64)
                    .filter(|&v| (v as u64 * moduli[j]).is_multiple_of(moduli[i]))
                    .collect()
            })
            .collect();
        let mut digits = vec![0usize; k * k];
        loop {
            let matrix: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| choices[i * k + j][digits[i * k + j]]).collect())
                .collect();
            let spec = AlexanderSpec {
                moduli: moduli.clone(),
                matrix,
            };
            if spec.t_invertible() && spec.one_minus_t_invertible() {
                out.push(spec);
            }
            let mut pos = 0;
            loop {
                if pos == k * k {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < choices[pos].len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == k * k {
                break;
            }
        }
    }
    out
}

/// The conjugacy class of `g` in `G` with `a⋆b = b⁻¹ab`, elements in sorted order.
pub fn conjugacy_class_quandle(group: &GroupHandle, g: &Permutation) -> Result<QuandleTable> {
    let class = group.conjugacy_class_of(g)?;
    let n = class.len();
    if n > 255 {
        return Err(Error::Precondition(format!("class of size {n} is too large")));
    }
    let mut table = Vec::with_capacity(n * n);
    for a in &class {
        for b in &class {
            let c = a.conjugate_by(b);
            table.push(class.binary_search(&c).expect("class is closed") as u8);
        }
    }
    Ok(QuandleTable::from_zero_based_unchecked(n, table))
}

/// Componentwise product; `(p, r)` is element `p·|R| + r`.
pub fn product_quandle(p: &QuandleTable, r: &QuandleTable) -> Result<QuandleTable> {
    let (np, nr) = (p.order(), r.order());
    let n = np * nr;
    if n > 255 {
        return Err(Error::Precondition(format!("product order {n} exceeds 255")));
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let x = p.op(a / nr, b / nr);
            let y = r.op(a % nr, b % nr);
            table.push((x * nr + y) as u8);
        }
    }
    Ok(QuandleTable::from_zero_based_unchecked(n, table))
}

/// `α : Q×Q×S×S → S`, stored as one `|S|×|S|` table per base pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalCocycle {
    base: QuandleTable,
    fiber: usize,
    alpha: Vec<u8>,
}

impl DynamicalCocycle {
    /// Builds a cocycle from `f(x, y, s, t)`; no validation is performed.
    pub fn from_fn(
        base: QuandleTable,
        fiber: usize,
        f: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Self {
        let n = base.order();
        let mut alpha = Vec::with_capacity(n * n * fiber * fiber);
        for x in 0..n {
            for y in 0..n {
                for s in 0..fiber {
                    for t in 0..fiber {
                        alpha.push(f(x, y, s, t) as u8);
                    }
                }
            }
        }
        DynamicalCocycle { base, fiber, alpha }
    }

    /// `α_{x,y}(s,t) = s`.
    pub fn trivial(base: QuandleTable, fiber: usize) -> Self {
        DynamicalCocycle::from_fn(base, fiber, |_, _, s, _| s)
    }

    pub fn base(&self) -> &QuandleTable {
        &self.base
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        let n = self.base.order();
        let f = self.fiber;
        self.alpha[((x * n + y) * f + s) * f + t] as usize
    }

    /// Checks the three defining identities, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        let n = self.base.order();
        let f = self.fiber;
        if f == 0 || self.alpha.iter().any(|&v| v as usize >= f) {
            return Err(Error::Cocycle("values outside the fiber".into()));
        }
        for x in 0..n {
            for s in 0..f {
                if self.alpha(x, x, s, s) != s {
                    return Err(Error::Cocycle(format!(
                        "α_{{x,x}}(s,s) ≠ s at x={}, s={}",
                        x + 1,
                        s + 1
                    )));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for t in 0..f {
                    let mut seen = vec![false; f];
                    for s in 0..f {
                        if std::mem::replace(&mut seen[self.alpha(x, y, s, t)], true) {
                            return Err(Error::Cocycle(format!(
                                "s ↦ α_{{x,y}}(s,t) is not bijective at x={}, y={}, t={}",
                                x + 1,
                                y + 1,
                                t + 1
                            )));
                        }
                    }
                }
            }
        }
        let q = &self.base;
        for x in 0..n {
            for y in 0..n {
                let xy = q.op(x, y);
                for z in 0..n {
                    let (xz, yz) = (q.op(x, z), q.op(y, z));
                    for s in 0..f {
                        for t in 0..f {
                            let st = self.alpha(x, y, s, t);
                            for u in 0..f {
                                let lhs = self.alpha(xy, z, st, u);
                                let rhs = self.alpha(xz, yz, self.alpha(x, z, s, u), self.alpha(y, z, t, u));
                                if lhs != rhs {
                                    return Err(Error::Cocycle(format!(
                                        "cocycle identity fails at x={}, y={}, z={}, s={}, t={}, u={}",
                                        x + 1,
                                        y + 1,
                                        z + 1,
                                        s + 1,
                                        t + 1,
                                        u + 1
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The same cocycle over the base relabeled by `perm`.
    pub fn relabel_base(&self, perm: &Permutation) -> DynamicalCocycle {
        let inv = perm.inverse();
        DynamicalCocycle::from_fn(self.base.relabel(perm), self.fiber, |x, y, s, t| {
            self.alpha(inv.apply(x), inv.apply(y), s, t)
        })
    }
}

/// `(x,s)⋆(y,t) = (x⋆y, α_{x,y}(s,t))` on `Q×S`.
pub fn dynamical_extension(c: &DynamicalCocycle) -> Result<QuandleTable> {
    c.validate()?;
    Ok(extension_table(c))
}

pub(crate) fn extension_table(c: &DynamicalCocycle) -> QuandleTable {
    let n = c.base.order();
    let f = c.fiber;
    let m = n * f;
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let (x, s, y, t) = (a / f, a % f, b / f, b % f);
            table.push((c.base.op(x, y) * f + c.alpha(x, y, s, t)) as u8);
        }
    }
    QuandleTable::from_zero_based_unchecked(m, table)
}

/// `β : Q×Q → H` with `H` a permutation group on the fiber.
#[derive(Clone, Debug)]
pub struct GroupCocycle {
    pub base: QuandleTable,
    pub group: GroupHandle,
    /// `beta[x·n + y]`.
    pub beta: Vec<Permutation>,
}

impl GroupCocycle {
    pub fn beta(&self, x: usize, y: usize) -> &Permutation {
        &self.beta[x * self.base.order() + y]
    }

    /// `β(x,x) = 1` and `β(x⋆y,z)β(x,y) = β(x⋆z,y⋆z)β(x,z)`, where the product
    /// acts on the fiber with the right factor applied first.
    pub fn validate(&self) -> Result<()> {
        let n = self.base.order();
        let deg = self.group.degree();
        if self.beta.len() != n * n || self.beta.iter().any(|b| b.degree() != deg) {
            return Err(Error::Cocycle("β has the wrong shape".into()));
        }
        if let Some(b) = self.beta.iter().find(|b| !self.group.contains(b)) {
            return Err(Error::Cocycle(format!("β value {b} is not in H")));
        }
        for x in 0..n {
            if !self.beta(x, x).is_identity() {
                return Err(Error::Cocycle(format!("β(x,x) ≠ 1 at x={}", x + 1)));
            }
        }
        let q = &self.base;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.beta(x, y).then(self.beta(q.op(x, y), z));
                    let rhs = self.beta(x, z).then(self.beta(q.op(x, z), q.op(y, z)));
                    if lhs != rhs {
                        return Err(Error::Cocycle(format!(
                            "group cocycle identity fails at x={}, y={}, z={}",
                            x + 1,
                            y + 1,
                            z + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `α_{x,y}(s,t) = β(x,y)·s`.
    pub fn to_dynamical(&self) -> DynamicalCocycle {
        DynamicalCocycle::from_fn(self.base.clone(), self.group.degree(), |x, y, s, _| {
            self.beta(x, y).apply(s)
        })
    }
}

pub fn cocycle_extension(c: &GroupCocycle) -> Result<QuandleTable> {
    c.validate()?;
    dynamical_extension(&c.to_dynamical())
}

/// Checks that `rho` is a surjective homomorphism `q → p` with equal fibers
/// and returns the sorted fibers.
fn checked_fibers(q: &QuandleTable, p: &QuandleTable, rho: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !q.is_homomorphism_to(p, rho) {
        return Err(Error::Homomorphism("map does not preserve ⋆".into()));
    }
    let mut fibers = vec![Vec::new(); p.order()];
    for (x, &px) in rho.iter().enumerate() {
        fibers[px].push(x);
    }
    if fibers.iter().any(Vec::is_empty) {
        return Err(Error::Homomorphism("map is not surjective".into()));
    }
    let s = fibers[0].len();
    if fibers.iter().any(|f| f.len() != s) {
        return Err(Error::Homomorphism(
            "fibers have different sizes; the source is not connected".into(),
        ));
    }
    Ok(fibers)
}

/// Writes `q` as an extension of `p` along the surjection `rho`.
///
/// Each fiber is identified with `{0..s-1}` in increasing element order, and
/// `α_{x,y}(s,t) = g_{x⋆y}(g_x⁻¹(s) ⋆ g_y⁻¹(t))`.
pub fn fiber_decompose(q: &QuandleTable, p: &QuandleTable, rho: &[usize]) -> Result<DynamicalCocycle> {
    let fibers = checked_fibers(q, p, rho)?;
    let s = fibers[0].len();
    let mut coord = vec![0usize; q.order()];
    for fiber in &fibers {
        for (i, &x) in fiber.iter().enumerate() {
            coord[x] = i;
        }
    }
    Ok(DynamicalCocycle::from_fn(p.clone(), s, |x, y, a, b| {
        coord[q.op(fibers[x][a], fibers[y][b])]
    }))
}

/// The isomorphism `q → extension(fiber_decompose(q, p, rho))`, `x ↦ (ρ(x), g_{ρ(x)}(x))`.
pub fn fiber_isomorphism(q: &QuandleTable, p: &QuandleTable, rho: &[usize]) -> Result<Permutation> {
    let fibers = checked_fibers(q, p, rho)?;
    let s = fibers[0].len();
    let mut images = vec![0usize; q.order()];
    for (px, fiber) in fibers.iter().enumerate() {
        for (i, &x) in fiber.iter().enumerate() {
            images[x] = px * s + i;
        }
    }
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alexander_z3() {
        let q = alexander_quandle(&AlexanderSpec::cyclic(3, 2)).unwrap();
        assert_eq!(q.rows(), vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]);
        assert!(q.is_connected());
    }

    #[test]
    fn alexander_rejects_bad_data() {
        assert!(alexander_quandle(&AlexanderSpec::cyclic(6, 2)).is_err());
        assert!(AlexanderSpec::new(vec![2, 3], vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(AlexanderSpec::new(vec![2], vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn no_connected_alexander_quandle_of_order_14() {
        for w in 0..14 {
            let spec = AlexanderSpec::cyclic(14, w);
            if spec.t_invertible() {
                assert!(!spec.one_minus_t_invertible(), "w = {w}");
            }
        }
        assert!(connected_alexander_specs(14).is_empty());
    }

    #[test]
    fn connectedness_iff_one_minus_t_invertible() {
        for n in 1..=16 {
            for moduli in abelian_groups(n) {
                let k = moduli.len();
                // a handful of matrices per group, including non-connected ones
                for seed in 0..40i64 {
                    let matrix: Vec<Vec<i64>> = (0..k)
                        .map(|i| (0..k).map(|j| (seed * 7 + (i * 3 + j) as i64 * seed) % moduli[i] as i64).collect())
                        .collect();
                    let Ok(spec) = AlexanderSpec::new(moduli.clone(), matrix) else { continue };
                    if !spec.t_invertible() {
                        continue;
                    }
                    let q = alexander_quandle(&spec).unwrap();
                    assert_eq!(q.is_connected(), spec.one_minus_t_invertible(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn abelian_group_lists() {
        assert_eq!(abelian_groups(12), vec![vec![4, 3], vec![2, 2, 3]]);
        assert_eq!(abelian_groups(8).len(), 3);
        assert_eq!(abelian_groups(16).len(), 5);
        assert_eq!(abelian_groups(13), vec![vec![13]]);
    }

    #[test]
    fn product_with_trivial_one_is_identity() {
        let q = alexander_quandle(&AlexanderSpec::cyclic(5, 2)).unwrap();
        assert_eq!(product_quandle(&QuandleTable::trivial(1), &q).unwrap(), q);
        let q33 = product_quandle(&QuandleTable::dihedral(3), &QuandleTable::dihedral(3)).unwrap();
        assert_eq!(q33.order(), 9);
        assert!(q33.is_connected());
    }

    #[test]
    fn trivial_cocycle_gives_disconnected_product() {
        let base = QuandleTable::dihedral(3);
        let c = DynamicalCocycle::trivial(base.clone(), 2);
        let e = dynamical_extension(&c).unwrap();
        assert_eq!(e, product_quandle(&base, &QuandleTable::trivial(2)).unwrap());
        assert!(!e.is_connected());
    }

    #[test]
    fn invalid_cocycle_is_reported() {
        let base = QuandleTable::dihedral(3);
        let c = DynamicalCocycle::from_fn(base, 2, |x, y, s, _| if x == 0 && y == 1 { 0 } else { s });
        assert!(matches!(dynamical_extension(&c), Err(Error::Cocycle(_))));
    }

    #[test]
    fn identity_fiber_decomposition() {
        let q = QuandleTable::dihedral(5);
        let id: Vec<usize> = (0..5).collect();
        let c = fiber_decompose(&q, &q, &id).unwrap();
        assert_eq!(c.fiber(), 1);
        assert_eq!(dynamical_extension(&c).unwrap(), q);
    }

    #[test]
    fn fiber_decompose_rejects_non_homomorphisms() {
        let q = QuandleTable::dihedral(3);
        let t = QuandleTable::trivial(1);
        assert!(fiber_decompose(&q, &t, &[0, 0, 0]).is_ok());
        assert!(fiber_decompose(&q, &q, &[0, 2, 2]).is_err());
    }
}
