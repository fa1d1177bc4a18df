//! Helpers shared by the integration tests: an independent brute-force
//! enumerator and the randomized property checks.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use quandle_core::catalog::catalog;
use quandle_core::construct::{dynamical_extension, fiber_decompose, fiber_isomorphism, DynamicalCocycle};
use quandle_core::iso::{are_isomorphic, canonical_form};
use quandle_core::{Permutation, QuandleTable};

/// Row-major 0-based table, `t[a][b] = a⋆b`.
pub type Raw = Vec<Vec<usize>>;

fn sd_holds_where_known(t: &[Vec<Option<usize>>]) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = t[a][b] else { continue };
            for c in 0..n {
                let (Some(ac), Some(bc)) = (t[a][c], t[b][c]) else { continue };
                if let (Some(l), Some(r)) = (t[ab][c], t[ac][bc]) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn raw_connected(t: &Raw) -> bool {
    let n = t.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..n {
            // orbits of the group generated by the columns
            for next in [t[a][b], (0..n).find(|&x| t[x][b] == a).unwrap()] {
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Whether some bijection `s` satisfies `s(a⋆b) = s(a)⋆s(b)`, by trying all of them.
pub fn brute_isomorphic(p: &Raw, q: &Raw) -> bool {
    let n = p.len();
    n == q.len()
        && permutations(n).iter().any(|s| {
            (0..n).all(|a| (0..n).all(|b| s[p[a][b]] == q[s[a]][s[b]]))
        })
}

/// Every connected quandle of order `n`, one per isomorphism class, by
/// filling the Cayley table one column at a time.
pub fn naive_connected(n: usize) -> Vec<Raw> {
    fn fill(t: &mut Vec<Vec<Option<usize>>>, cell: usize, found: &mut Vec<Raw>) {
        let n = t.len();
        if cell == n * n {
            let raw: Raw = t.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect();
            if raw_connected(&raw) && !found.iter().any(|f| brute_isomorphic(f, &raw)) {
                found.push(raw);
            }
            return;
        }
        let (a, b) = (cell % n, cell / n);
        // b⋆b = b, and every column is a bijection
        let candidates: Vec<usize> = if a == b {
            vec![b]
        } else {
            (0..n).filter(|&v| v != b && (0..a).all(|x| t[x][b] != Some(v))).collect()
        };
        for v in candidates {
            t[a][b] = Some(v);
            if sd_holds_where_known(t) {
                fill(t, cell + 1, found);
            }
            t[a][b] = None;
        }
    }
    let mut found = Vec::new();
    fill(&mut vec![vec![None; n]; n], 0, &mut found);
    found
}

pub fn raw_of(q: &QuandleTable) -> Raw {
    q.rows().into_iter().map(|r| r.into_iter().map(|v| v - 1).collect()).collect()
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Axiom 2 stated as `φ_{φ_c(b)} = φ_c ∘ φ_b ∘ φ_c⁻¹`, for a table whose
/// columns are bijections.
pub fn equivariance_holds(q: &QuandleTable) -> bool {
    let n = q.order();
    let phi = q.translations();
    (0..n).all(|b| {
        (0..n).all(|c| {
            let lhs = &phi[q.op(b, c)];
            // apply φ_c⁻¹ first, then φ_b, then φ_c
            let rhs = phi[c].inverse().then(&phi[b]).then(&phi[c]);
            *lhs == rhs
        })
    })
}

/// Compares `verify_axioms` with the equivariance form of axiom 2 on one
/// idempotent table with bijective columns. Returns a description of a disagreement.
pub fn check_axiom_equivalence(rows: &[Vec<usize>]) -> Result<(), String> {
    let n = rows.len();
    let accepted = quandle_core::quandle::verify_axioms(rows).is_ok();
    let col = |b: usize| Permutation::from_images((0..n).map(|a| rows[a][b] - 1).collect()).unwrap();
    let phi: Vec<Permutation> = (0..n).map(col).collect();
    let equivariant = (0..n).all(|b| {
        (0..n).all(|c| {
            let bc = rows[b][c] - 1;
            phi[bc] == phi[c].inverse().then(&phi[b]).then(&phi[c])
        })
    });
    if accepted == equivariant {
        Ok(())
    } else {
        Err(format!("axioms: {accepted}, equivariance: {equivariant}, table {rows:?}"))
    }
}

/// Idempotent table with bijective columns: either a relabeled catalog
/// quandle or one with two entries of a column swapped.
pub fn random_column_table(rng: &mut StdRng) -> Vec<Vec<usize>> {
    let entries = catalog();
    let q = &entries[rng.gen_range(0..entries.len())].table;
    let q = q.relabel(&random_permutation(rng, q.order()));
    let mut rows = q.rows();
    let n = rows.len();
    if rng.gen_bool(0.5) {
        let b = rng.gen_range(0..n);
        let others: Vec<usize> = (0..n).filter(|&a| a != b && rows[a][b] != b + 1).collect();
        if others.len() >= 2 {
            let i = rng.gen_range(0..others.len());
            let j = (i + 1 + rng.gen_range(0..others.len() - 1)) % others.len();
            let (a1, a2) = (others[i], others[j]);
            let tmp = rows[a1][b];
            rows[a1][b] = rows[a2][b];
            rows[a2][b] = tmp;
        }
    }
    rows
}

/// `α_{x,y}(s,t) = g_{x⋆y}(g_x⁻¹(s))` for random fiber permutations `g`.
pub fn random_trivializable_cocycle(rng: &mut StdRng, base: &QuandleTable, fiber: usize) -> DynamicalCocycle {
    let g: Vec<Permutation> = (0..base.order()).map(|_| random_permutation(rng, fiber)).collect();
    let ginv: Vec<Permutation> = g.iter().map(Permutation::inverse).collect();
    DynamicalCocycle::from_fn(base.clone(), fiber, |x, y, s, _| g[base.op(x, y)].apply(ginv[x].apply(s)))
}

/// Extension then decomposition along the projection gives back the cocycle;
/// decomposing a relabeled copy of the extension gives a cocycle whose
/// extension is isomorphic to it through `fiber_isomorphism`.
pub fn check_round_trip(rng: &mut StdRng, c: &DynamicalCocycle) -> Result<(), String> {
    let e = dynamical_extension(c).map_err(|e| e.to_string())?;
    let s = c.fiber();
    let rho: Vec<usize> = (0..e.order()).map(|a| a / s).collect();
    let back = fiber_decompose(&e, c.base(), &rho).map_err(|e| e.to_string())?;
    if &back != c {
        return Err("decomposing the extension changed the cocycle".into());
    }
    let sigma = random_permutation(rng, e.order());
    let moved = e.relabel(&sigma);
    let inv = sigma.inverse();
    let rho_moved: Vec<usize> = (0..e.order()).map(|a| rho[inv.apply(a)]).collect();
    let c2 = fiber_decompose(&moved, c.base(), &rho_moved).map_err(|e| e.to_string())?;
    let rebuilt = dynamical_extension(&c2).map_err(|e| e.to_string())?;
    let iso = fiber_isomorphism(&moved, c.base(), &rho_moved).map_err(|e| e.to_string())?;
    if moved.relabel(&iso) != rebuilt {
        return Err("fiber isomorphism does not map onto the rebuilt extension".into());
    }
    Ok(())
}

/// `count` random relabelings keep the canonical form and are recognised as isomorphic.
pub fn check_canonical_invariance(rng: &mut StdRng, q: &QuandleTable, count: usize) -> Result<(), String> {
    let c = canonical_form(q);
    for _ in 0..count {
        let s = random_permutation(rng, q.order());
        let r = q.relabel(&s);
        if canonical_form(&r) != c {
            return Err(format!("canonical form changed under {s}"));
        }
        let w = are_isomorphic(q, &r).ok_or("relabeled copy not recognised")?;
        if q.relabel(&w) != r {
            return Err("isomorphism witness is wrong".into());
        }
    }
    Ok(())
}

/// Cocycles with `|base|·|fiber| ≤ 12`: trivial and randomly trivializable
/// ones over small bases, every binary pair over Q4, and the decompositions
/// of catalog entries along their recorded quotients.
pub fn round_trip_cases(rng: &mut StdRng) -> Vec<DynamicalCocycle> {
    use quandle_core::analysis::surjection_onto;
    use quandle_core::catalog::entry;
    use quandle_core::cocycle2::{binary_cocycle_pairs, recompose};

    let mut bases: Vec<QuandleTable> = (1..=6).map(QuandleTable::trivial).collect();
    bases.extend([QuandleTable::dihedral(3), QuandleTable::dihedral(5)]);
    bases.extend(["Q4", "Q6_2", "Q6_4"].map(|n| entry(n).unwrap().table.clone()));
    let mut out = Vec::new();
    for base in &bases {
        for fiber in 1..=12 / base.order() {
            out.push(DynamicalCocycle::trivial(base.clone(), fiber));
            for _ in 0..3 {
                out.push(random_trivializable_cocycle(rng, base, fiber));
            }
        }
    }
    let q4 = &entry("Q4").unwrap().table;
    out.extend(binary_cocycle_pairs(q4).unwrap().iter().map(recompose));
    for e in catalog() {
        for target in e.expected.surjects_to {
            let p = &entry(target).unwrap().table;
            let (_, map) = surjection_onto(&e.table, p).expect("recorded quotient exists");
            out.push(fiber_decompose(&e.table, p, &map).unwrap());
        }
    }
    out
}
