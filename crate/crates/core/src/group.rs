//! Permutation groups given by generators.
//!
//! The order and membership come from a deterministic Schreier–Sims
//! stabilizer chain. Element lists, conjugacy classes, the center and the
//! normal-subgroup lattice are computed from the full element list and are only
//! available when the order is at most [`ELEMENT_BUDGET`].
//!
//! A [`GroupHandle`] is immutable; lazily computed data is initialised once
//! and can be shared between threads.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest group order for which elements are listed explicitly.
pub const ELEMENT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`; `None` off the orbit.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            base_point,
            gens,
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<(Permutation, Permutation)>> = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[self.base_point] = Some((id.clone(), id));
        let mut orbit = vec![self.base_point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            let u = transversal[p].as_ref().unwrap().0.clone();
            for s in &self.gens {
                let q = s.apply(p);
                if transversal[q].is_none() {
                    let uq = u.then(s);
                    let inv = uq.inverse();
                    transversal[q] = Some((uq, inv));
                    orbit.push(q);
                }
            }
            i += 1;
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = base_prefix.to_vec();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(first_moved(g));
            }
        }
        let mut levels: Vec<Level> = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let level_gens = strong
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            levels.push(Level::new(degree, b, level_gens));
        }
        let mut chain = StabChain { degree, levels };

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.find_missing_generator(lvl) {
                Some((residue, drop)) => {
                    if drop == chain.levels.len() {
                        let point = first_moved(&residue);
                        chain.levels.push(Level::new(degree, point, Vec::new()));
                    }
                    for j in (lvl + 1)..=drop {
                        chain.levels[j].gens.push(residue.clone());
                        chain.levels[j].rebuild(degree);
                    }
                    i = drop as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// Sifts every Schreier generator of level `lvl` through the deeper
    /// levels and returns the first non-trivial residue with its drop-out level.
    fn find_missing_generator(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for &p in &level.orbit {
            let (up, _) = level.transversal[p].as_ref().unwrap();
            for s in &level.gens {
                let q = s.apply(p);
                let (_, uq_inv) = level.transversal[q].as_ref().unwrap();
                let h = up.then(s).then(uq_inv);
                if h.is_identity() {
                    continue;
                }
                let (residue, drop) = self.sift(h, lvl + 1);
                if !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let b = g.apply(level.base_point);
            match &level.transversal[b] {
                None => return (g, j),
                Some((_, u_inv)) => g = g.then(u_inv),
            }
        }
        (g, self.levels.len())
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, drop) = self.sift(g.clone(), 0);
        drop == self.levels.len() && residue.is_identity()
    }

    /// Strong generators fixing the first `k` base points.
    fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        if k >= self.levels.len() {
            Vec::new()
        } else {
            self.levels[k].gens.clone()
        }
    }

    fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for g in &acc {
                for &p in &level.orbit {
                    next.push(g.then(&level.transversal[p].as_ref().unwrap().0));
                }
            }
            acc = next;
        }
        acc
    }
}

fn first_moved(g: &Permutation) -> usize {
    (0..g.degree()).find(|&x| g.apply(x) != x).expect("identity has no moved point")
}

#[derive(Clone, Debug)]
struct ClassData {
    classes: Vec<Vec<Permutation>>,
    class_of: HashMap<Permutation, usize>,
}

#[derive(Clone, Debug)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Vec<Permutation>>,
    classes: OnceLock<ClassData>,
}

/// The group generated by `gens`. All generators must share one degree.
pub fn group_generate(gens: &[Permutation]) -> Result<GroupHandle> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("group_generate needs at least one generator".into()))?;
    if let Some(g) = gens.iter().find(|g| g.degree() != first.degree()) {
        return Err(Error::DegreeMismatch(first.degree(), g.degree()));
    }
    Ok(GroupHandle::new(first.degree(), gens.to_vec()))
}

impl GroupHandle {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        debug_assert!(generators.iter().all(|g| g.degree() == degree));
        GroupHandle {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        GroupHandle::new(degree, Vec::new())
    }

    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree > 1 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        if degree > 2 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).unwrap());
        }
        GroupHandle::new(degree, gens)
    }

    /// The alternating group, generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|k| Permutation::from_cycles(degree, &[&[0, 1, k]]).unwrap())
            .collect();
        GroupHandle::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    /// Base points and basic orbit lengths of the stabilizer chain.
    pub fn base_orbit_lengths(&self) -> Vec<(usize, usize)> {
        self.chain()
            .levels
            .iter()
            .map(|l| (l.base_point, l.orbit.len()))
            .collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit partition, each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p);
                for &q in &orbit {
                    seen[q] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> GroupHandle {
        if self.is_trivial() {
            return GroupHandle::trivial(self.degree);
        }
        let chain = StabChain::build(self.degree, &self.generators, points);
        GroupHandle::new(self.degree, chain.stabilizer_gens(points.len()))
    }

    fn check_budget(&self, what: &str) -> Result<()> {
        let order = self.order();
        if order > ELEMENT_BUDGET {
            return Err(Error::GroupBudget(format!(
                "{what} needs the element list of a group of order {order} (limit {ELEMENT_BUDGET})"
            )));
        }
        Ok(())
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        self.check_budget("element listing")?;
        Ok(self.elements.get_or_init(|| {
            let mut els = self.chain().elements();
            els.sort_unstable();
            els
        }))
    }

    fn class_data(&self) -> Result<&ClassData> {
        let elements = self.elements()?;
        Ok(self.classes.get_or_init(|| {
            let mut class_of: HashMap<Permutation, usize> = HashMap::with_capacity(elements.len());
            let mut classes = Vec::new();
            for g in elements {
                if class_of.contains_key(g) {
                    continue;
                }
                let class = conjugation_orbit(g, &self.generators);
                let idx = classes.len();
                for h in &class {
                    class_of.insert(h.clone(), idx);
                }
                classes.push(class);
            }
            ClassData { classes, class_of }
        }))
    }

    /// Conjugacy classes, each sorted; ordered by their least element.
    pub fn conjugacy_classes(&self) -> Result<&[Vec<Permutation>]> {
        Ok(&self.class_data()?.classes)
    }

    pub fn conjugacy_class_of(&self, g: &Permutation) -> Result<Vec<Permutation>> {
        if !self.contains(g) {
            return Err(Error::NotAMember);
        }
        Ok(conjugation_orbit(g, &self.generators))
    }

    pub fn center(&self) -> Result<GroupHandle> {
        let central: Vec<Permutation> = self
            .elements()?
            .iter()
            .filter(|g| !g.is_identity() && self.generators.iter().all(|s| s.commutes_with(g)))
            .cloned()
            .collect();
        Ok(GroupHandle::new(self.degree, central))
    }

    /// All normal subgroups, ordered by size and then by the classes they contain.
    ///
    /// A normal subgroup is a union of conjugacy classes, and it is generated by
    /// the classes it contains; so the lattice is the join-closure of the normal
    /// closures of single classes.
    pub fn normal_subgroups(&self) -> Result<Vec<GroupHandle>> {
        let data = self.class_data()?;
        let class_count = data.classes.len();
        let to_mask = |h: &GroupHandle| -> Vec<bool> {
            data.classes.iter().map(|c| h.contains(&c[0])).collect()
        };
        let from_mask = |mask: &[bool]| -> GroupHandle {
            let gens: Vec<Permutation> = data
                .classes
                .iter()
                .zip(mask)
                .filter(|(c, &m)| m && !c[0].is_identity())
                .flat_map(|(c, _)| c.iter().cloned())
                .collect();
            GroupHandle::new(self.degree, gens)
        };

        let mut found: Vec<Vec<bool>> = Vec::new();
        let mut trivial = vec![false; class_count];
        trivial[data.class_of[&Permutation::identity(self.degree)]] = true;
        found.push(trivial);
        let minimal: Vec<Vec<bool>> = (0..class_count)
            .map(|i| {
                let mut m = vec![false; class_count];
                m[i] = true;
                to_mask(&from_mask(&m))
            })
            .collect();
        for m in &minimal {
            if !found.contains(m) {
                found.push(m.clone());
            }
        }
        let mut i = 0;
        while i < found.len() {
            for m in &minimal {
                let joined: Vec<bool> = found[i].iter().zip(m).map(|(a, b)| *a || *b).collect();
                if found.contains(&joined) {
                    continue;
                }
                let closed = to_mask(&from_mask(&joined));
                if !found.contains(&closed) {
                    found.push(closed);
                }
            }
            i += 1;
        }
        let size = |mask: &Vec<bool>| -> usize {
            mask.iter()
                .zip(&data.classes)
                .filter(|(m, _)| **m)
                .map(|(_, c)| c.len())
                .sum()
        };
        found.sort_by(|a, b| size(a).cmp(&size(b)).then_with(|| b.cmp(a)));
        Ok(found.iter().map(|m| from_mask(m)).collect())
    }

    /// Whether every quotient by a non-trivial normal subgroup is cyclic.
    pub fn is_image_cyclic(&self) -> Result<bool> {
        let order = self.order();
        let reps: Vec<Permutation> = self
            .conjugacy_classes()?
            .iter()
            .map(|c| c[0].clone())
            .collect();
        for n in self.normal_subgroups()? {
            let n_order = n.order();
            if n_order == 1 || n_order == order {
                continue;
            }
            // G/N is cyclic iff some coset gN generates it; conjugates of g generate
            // the same quotient, so class representatives suffice.
            let cyclic = reps.iter().any(|g| {
                let mut gens = n.generators().to_vec();
                gens.push(g.clone());
                GroupHandle::new(self.degree, gens).order() == order
            });
            if !cyclic {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Orbit of `g` under conjugation by the group generated by `gens`, sorted.
fn conjugation_orbit(g: &Permutation, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(g.clone(), ());
    while let Some(h) = queue.pop_front() {
        for s in gens {
            let c = h.conjugate_by(s);
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), ());
                queue.push_back(c);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_keys().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use std::collections::HashSet;

    /// Naive closure of the generators under multiplication.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        let mut frontier: Vec<Permutation> = set.iter().cloned().collect();
        while let Some(g) = frontier.pop() {
            for s in gens {
                let h = g.then(s);
                if set.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        set
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 1..=9u64 {
            assert_eq!(GroupHandle::symmetric(n as usize).order(), factorial(n));
            if n >= 2 {
                assert_eq!(GroupHandle::alternating(n as usize).order(), factorial(n) / 2);
            }
        }
        assert_eq!(GroupHandle::symmetric(14).order(), factorial(14));
    }

    #[test]
    fn trivial_group() {
        let g = group_generate(&[Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbits().len(), 5);
        assert!(g.orbits().iter().all(|o| o.len() == 1));
        assert_eq!(g.normal_subgroups().unwrap().len(), 1);
        assert!(group_generate(&[]).is_err());
    }

    #[test]
    fn order_matches_closure() {
        let gens = vec![
            parse_cycles("(1 2 3 4 5 6)", 8).unwrap(),
            parse_cycles("(1 7)(2 8)", 8).unwrap(),
        ];
        let g = group_generate(&gens).unwrap();
        let naive = closure(8, &gens);
        assert_eq!(g.order(), naive.len() as u64);
        assert_eq!(g.elements().unwrap().len(), naive.len());
        for e in g.elements().unwrap() {
            assert!(naive.contains(e));
        }
        assert_eq!(factorial(8) % g.order(), 0);
    }

    #[test]
    fn membership_is_consistent_with_closure() {
        let gens = vec![parse_cycles("(1 2 3)", 5).unwrap(), parse_cycles("(3 4 5)", 5).unwrap()];
        let g = group_generate(&gens).unwrap();
        let naive = closure(5, &gens);
        for p in GroupHandle::symmetric(5).elements().unwrap() {
            assert_eq!(g.contains(p), naive.contains(p), "{p}");
        }
    }

    #[test]
    fn conjugacy_classes_of_transpositions() {
        let s4 = GroupHandle::symmetric(4);
        let t = parse_cycles("(1 2)", 4).unwrap();
        assert_eq!(s4.conjugacy_class_of(&t).unwrap().len(), 6);
        let s5 = GroupHandle::symmetric(5);
        let t5 = parse_cycles("(1 2)", 5).unwrap();
        assert_eq!(s5.conjugacy_class_of(&t5).unwrap().len(), 10);
        assert_eq!(
            s4.conjugacy_class_of(&Permutation::identity(4)).unwrap(),
            vec![Permutation::identity(4)]
        );
        let a4 = GroupHandle::alternating(4);
        assert!(matches!(a4.conjugacy_class_of(&t), Err(Error::NotAMember)));
    }

    #[test]
    fn centers() {
        let cyclic = group_generate(&[parse_cycles("(1 2 3 4 5)", 5).unwrap()]).unwrap();
        assert_eq!(cyclic.center().unwrap().order(), 5);
        assert_eq!(GroupHandle::symmetric(3).center().unwrap().order(), 1);
        assert_eq!(GroupHandle::symmetric(5).center().unwrap().order(), 1);
        // dihedral group of order 8 has center of order 2
        let d4 = group_generate(&[
            parse_cycles("(1 2 3 4)", 4).unwrap(),
            parse_cycles("(1 3)", 4).unwrap(),
        ])
        .unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().unwrap().order(), 2);
    }

    #[test]
    fn normal_subgroups_of_s4_and_a5() {
        let orders: Vec<u64> = GroupHandle::symmetric(4)
            .normal_subgroups()
            .unwrap()
            .iter()
            .map(GroupHandle::order)
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let orders: Vec<u64> = GroupHandle::alternating(5)
            .normal_subgroups()
            .unwrap()
            .iter()
            .map(GroupHandle::order)
            .collect();
        assert_eq!(orders, vec![1, 60]);
    }

    /// Brute-force normal subgroup test: subsets closed under products that
    /// are unions of classes. Only feasible for tiny groups.
    fn brute_force_image_cyclic(g: &GroupHandle) -> bool {
        let els = g.elements().unwrap().to_vec();
        let classes = g.conjugacy_classes().unwrap();
        let k = classes.len();
        let order = els.len();
        for mask in 1u32..(1 << k) {
            let set: HashSet<Permutation> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| classes[i].iter().cloned())
                .collect();
            if !set.contains(&Permutation::identity(g.degree())) || !order.is_multiple_of(set.len()) {
                continue;
            }
            if !set.iter().all(|a| set.iter().all(|b| set.contains(&a.then(b)))) {
                continue;
            }
            if set.len() == 1 || set.len() == order {
                continue;
            }
            // quotient cyclic iff some element's powers meet every coset
            let index = order / set.len();
            let cyclic = els.iter().any(|x| {
                let mut cosets: Vec<HashSet<Permutation>> = Vec::new();
                let mut p = Permutation::identity(g.degree());
                for _ in 0..index {
                    let coset: HashSet<Permutation> = set.iter().map(|n| n.then(&p)).collect();
                    if !cosets.contains(&coset) {
                        cosets.push(coset);
                    }
                    p = p.then(x);
                }
                cosets.len() == index
            });
            if !cyclic {
                return false;
            }
        }
        true
    }

    #[test]
    fn image_cyclic_agrees_with_brute_force() {
        let groups = vec![
            GroupHandle::symmetric(3),
            GroupHandle::symmetric(4),
            GroupHandle::alternating(4),
            GroupHandle::alternating(5),
            group_generate(&[parse_cycles("(1 2 3 4 5 6)", 6).unwrap()]).unwrap(),
            group_generate(&[
                parse_cycles("(1 2 3 4)", 4).unwrap(),
                parse_cycles("(1 3)", 4).unwrap(),
            ])
            .unwrap(),
        ];
        for g in &groups {
            assert_eq!(g.is_image_cyclic().unwrap(), brute_force_image_cyclic(g), "order {}", g.order());
        }
        assert!(!GroupHandle::symmetric(4).is_image_cyclic().unwrap());
        assert!(GroupHandle::alternating(5).is_image_cyclic().unwrap());
        assert!(GroupHandle::symmetric(5).is_image_cyclic().unwrap());
    }

    #[test]
    fn pointwise_stabilizers() {
        let s6 = GroupHandle::symmetric(6);
        assert_eq!(s6.pointwise_stabilizer(&[0]).order(), 120);
        assert_eq!(s6.pointwise_stabilizer(&[3, 1]).order(), 24);
        let h = s6.pointwise_stabilizer(&[0, 1, 2, 3, 4]);
        assert_eq!(h.order(), 1);
        let stab = s6.pointwise_stabilizer(&[2, 5]);
        for g in stab.generators() {
            assert_eq!(g.apply(2), 2);
            assert_eq!(g.apply(5), 5);
        }
    }

    #[test]
    fn budget_guard() {
        let s12 = GroupHandle::symmetric(12);
        assert!(matches!(s12.elements(), Err(Error::GroupBudget(_))));
        assert!(matches!(s12.normal_subgroups(), Err(Error::GroupBudget(_))));
    }
}
