//! Permutations of `{0..n-1}`.
//!
//! Products use the "apply the left argument first" convention:
//! `p.then(&q)` (equivalently [`compose`]`(p, q)`) maps `x` to `q(p(x))`.
//! Under this convention the conjugate `b⁻¹ab` is the map `x ↦ b(a(b⁻¹(x)))`,
//! which is exactly how translations of a quandle transform:
//! `φ_{a⋆b} = φ_b ∘ φ_a ∘ φ_b⁻¹`.
//!
//! Points are 0-based in memory and 1-based in cycle notation.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= 256, "degree {degree} exceeds 256");
        Permutation {
            images: (0..degree).map(|x| x as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        if n > 256 {
            return Err(Error::InvalidPermutation(format!("degree {n} exceeds 256")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on {n} points"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// Caller guarantees `images` is a bijection on `0..images.len()`.
    pub(crate) fn from_bytes_unchecked(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&x| {
                let fresh = !seen[x as usize];
                seen[x as usize] = true;
                fresh
            })
        });
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, Error> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint on {degree} points"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ · self · g` in apply-left-first order, i.e. `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.degree()];
        for x in 0..self.degree() {
            out[g.apply(x)] = g.images[self.apply(x)];
        }
        Permutation { images: out }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// Disjoint cycles (0-based), each starting at its least point, ordered by that point.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, sorted ascending; they sum to the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `x ↦ q(p(x))`. Fails when the degrees differ.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, Error> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.then(q))
}

pub fn cycle_type(p: &Permutation) -> Vec<usize> {
    p.cycle_type()
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Parses cycle notation such as `"(1 2)(3 4)"` against a known degree.
/// Points are 1-based and may be separated by spaces or commas.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, Error> {
    let bad = |msg: &str| Error::Parse {
        line: 1,
        column: 0,
        message: format!("{msg} in cycle notation {text:?}"),
    };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| bad("unbalanced parentheses"))?;
        let body = &rest[1..body_end + 1];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok.parse().map_err(|_| bad("non-numeric point"))?;
            if v == 0 || v > degree {
                return Err(bad("point out of range"));
            }
            cycle.push(v - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[body_end + 2..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation, taking the degree to be the largest point mentioned.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        parse_cycles(s, max)
    }
}
