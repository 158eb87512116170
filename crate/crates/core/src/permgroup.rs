//! Permutation groups given by generators, backed by a Schreier–Sims
//! stabilizer chain.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::perm::Perm;

/// Default cap on whole-group listings (centralizers, element enumeration).
pub const DEFAULT_ENUMERATION_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermGroupError {
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch { index: usize, found: usize, expected: usize },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderOverflow { order: u128, bound: usize },
    #[error("permutation {0} is not an element of the group")]
    NotMember(Perm),
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    orbit: Vec<usize>,
    /// `transversal[x]` maps `point` to `x`, for `x` in the orbit.
    transversal: Vec<Option<Perm>>,
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    enumeration_bound: usize,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, PermGroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(PermGroupError::DegreeMismatch { index, found: g.degree(), expected: degree });
            }
        }
        let mut group = PermGroup {
            degree,
            generators,
            strong: Vec::new(),
            levels: Vec::new(),
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        };
        group.schreier_sims();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[1, 2]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (1..=n).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (3..=n)
            .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn with_enumeration_bound(mut self, bound: usize) -> Self {
        self.enumeration_bound = bound;
        self
    }

    pub fn enumeration_bound(&self) -> usize {
        self.enumeration_bound
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Group order from the stabilizer chain, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(point, &self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    fn check_enumerable(&self) -> Result<usize, PermGroupError> {
        let order = self.order();
        if order > self.enumeration_bound as u128 {
            return Err(PermGroupError::OrderOverflow { order, bound: self.enumeration_bound });
        }
        Ok(order as usize)
    }

    /// Every element, sorted by image array (so the identity comes first).
    pub fn elements(&self) -> Result<Vec<Perm>, PermGroupError> {
        let order = self.check_enumerable()?;
        let mut out = Vec::with_capacity(order);
        let mut stack: Vec<(usize, Perm)> = vec![(0, Perm::identity(self.degree))];
        while let Some((depth, g)) = stack.pop() {
            if depth == self.levels.len() {
                out.push(g);
                continue;
            }
            let level = &self.levels[depth];
            for &x in &level.orbit {
                let u = level.transversal[x].as_ref().expect("orbit point has transversal");
                stack.push((depth + 1, u.then(&g)));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Point stabilizer via Schreier's lemma on the orbit of `point`.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let (orbit, transversal) = orbit_transversal(point, &self.generators, self.degree);
        let mut stab = PermGroup::trivial(self.degree).with_enumeration_bound(self.enumeration_bound);
        let mut pending = Vec::new();
        for &x in &orbit {
            let ux = transversal[x].as_ref().unwrap();
            for s in &self.generators {
                let y = s.apply(x);
                let uy = transversal[y].as_ref().unwrap();
                let schreier = ux.then(s).then(&uy.inverse());
                if !schreier.is_identity() {
                    pending.push(schreier);
                }
            }
        }
        for g in pending {
            if !stab.contains(&g) {
                stab.add_generator(g);
            }
        }
        stab
    }

    /// Commutator subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut derived = PermGroup::trivial(self.degree).with_enumeration_bound(self.enumeration_bound);
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !derived.contains(&c) {
                    derived.add_generator(c);
                }
            }
        }
        self.close_under_conjugation(&mut derived);
        derived
    }

    fn close_under_conjugation(&self, sub: &mut PermGroup) {
        let mut k = 0;
        while k < sub.generators.len() {
            let d = sub.generators[k].clone();
            for g in &self.generators {
                let c = d.conjugate_by(g);
                if !sub.contains(&c) {
                    sub.add_generator(c);
                }
            }
            k += 1;
        }
    }

    /// Elements commuting with `x`, found by listing the group.
    pub fn centralizer(&self, x: &Perm) -> Result<PermGroup, PermGroupError> {
        if !self.contains(x) {
            return Err(PermGroupError::NotMember(x.clone()));
        }
        let elements = self.elements()?;
        let mut cent = PermGroup::trivial(self.degree).with_enumeration_bound(self.enumeration_bound);
        for g in elements {
            if g.then(x) == x.then(&g) && !cent.contains(&g) {
                cent.add_generator(g);
            }
        }
        Ok(cent)
    }

    /// Orbit of `x` under conjugation, in breadth-first discovery order.
    pub fn conjugacy_class(&self, x: &Perm) -> Result<Vec<Perm>, PermGroupError> {
        if !self.contains(x) {
            return Err(PermGroupError::NotMember(x.clone()));
        }
        let mut seen: HashSet<Perm> = HashSet::from([x.clone()]);
        let mut class = vec![x.clone()];
        let mut k = 0;
        while k < class.len() {
            for g in &self.generators {
                let y = class[k].conjugate_by(g);
                if !seen.contains(&y) {
                    if class.len() >= self.enumeration_bound {
                        return Err(PermGroupError::OrderOverflow {
                            order: self.order(),
                            bound: self.enumeration_bound,
                        });
                    }
                    seen.insert(y.clone());
                    class.push(y);
                }
            }
            k += 1;
        }
        Ok(class)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.generators
            .iter()
            .all(|d| other.generators.iter().all(|g| self.contains(&d.conjugate_by(g))))
    }

    pub fn add_generator(&mut self, g: Perm) {
        assert_eq!(g.degree(), self.degree);
        self.generators.push(g);
        self.schreier_sims();
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` when it went all the way).
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.point);
            match &level.transversal[b] {
                None => return (h, j),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn level_generators(&self, i: usize) -> Vec<Perm> {
        let fixed: Vec<usize> = self.levels[..i].iter().map(|l| l.point).collect();
        self.strong
            .iter()
            .filter(|s| fixed.iter().all(|&p| s.apply(p) == p))
            .cloned()
            .collect()
    }

    fn refresh_level(&mut self, i: usize) {
        let gens = self.level_generators(i);
        let (orbit, transversal) = orbit_transversal(self.levels[i].point, &gens, self.degree);
        self.levels[i].orbit = orbit;
        self.levels[i].transversal = transversal;
    }

    fn push_level_for(&mut self, h: &Perm) {
        let point = (0..self.degree).find(|&p| h.apply(p) != p).expect("non-identity");
        self.levels.push(Level { point, orbit: vec![point], transversal: Vec::new() });
    }

    fn schreier_sims(&mut self) {
        self.strong.clear();
        self.levels.clear();
        for g in self.generators.clone() {
            if g.is_identity() {
                continue;
            }
            if self.levels.iter().all(|l| g.apply(l.point) == l.point) {
                self.push_level_for(&g);
            }
            self.strong.push(g);
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            self.refresh_level(level);
            let gens = self.level_generators(level);
            let mut added = None;
            'scan: for x in self.levels[level].orbit.clone() {
                let ux = self.levels[level].transversal[x].clone().unwrap();
                for s in &gens {
                    let y = s.apply(x);
                    let uy = self.levels[level].transversal[y].as_ref().unwrap();
                    let schreier = ux.then(s).then(&uy.inverse());
                    let (h, j) = self.sift(&schreier, level + 1);
                    if !h.is_identity() {
                        added = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match added {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        self.push_level_for(&h);
                    }
                    self.strong.push(h);
                    i = j as isize;
                }
            }
        }
    }
}

fn orbit_of(point: usize, gens: &[Perm], degree: usize) -> Vec<usize> {
    orbit_transversal(point, gens, degree).0
}

fn orbit_transversal(point: usize, gens: &[Perm], degree: usize) -> (Vec<usize>, Vec<Option<Perm>>) {
    let mut transversal: Vec<Option<Perm>> = vec![None; degree];
    transversal[point] = Some(Perm::identity(degree));
    let mut orbit = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        let ux = transversal[x].clone().unwrap();
        for g in gens {
            let y = g.apply(x);
            if transversal[y].is_none() {
                transversal[y] = Some(ux.then(g));
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }
    (orbit, transversal)
}

/// Closure of a generating set by brute force; a reference oracle for tests
/// and small computations.
pub fn brute_force_closure(degree: usize, gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut all = vec![id];
    let mut k = 0;
    while k < all.len() {
        for g in gens {
            let y = all[k].then(g);
            if !seen.contains_key(&y) {
                if all.len() >= limit {
                    return None;
                }
                seen.insert(y.clone(), ());
                all.push(y);
            }
        }
        k += 1;
    }
    all.sort_unstable();
    Some(all)
}
