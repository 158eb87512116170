//! Finite groups given by Cayley tables, their subgroups and automorphisms.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Files and
//! error messages use 1-based labels, so element `i` prints as label `i + 1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::perm::Perm;

/// Groups up to this order get an exhaustive associativity check; larger
/// tables are checked with Light's test over a generating set.
pub const EXHAUSTIVE_ASSOCIATIVITY_BOUND: usize = 256;

/// Default largest group order for which [`enumerate_automorphisms`] runs.
pub const DEFAULT_AUTOMORPHISM_ORDER_BOUND: usize = 64;

/// Hard cap on |Aut(G)| during enumeration.
pub const AUTOMORPHISM_COUNT_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(a) => write!(f, "row {}", a + 1),
            Line::Column(b) => write!(f, "column {}", b + 1),
        }
    }
}

/// Witnesses carry 0-based indices; `Display` prints 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry at ({}, {}) is out of range", .row + 1, .col + 1)]
    LabelOutOfRange { row: usize, col: usize },
    #[error("label 1 is not a two-sided identity")]
    NoIdentity,
    #[error("{0} is not a permutation")]
    NotLatinSquare(Line),
    #[error("element {} has no two-sided inverse", .0 + 1)]
    NoInverse(usize),
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})", a = .0 + 1, b = .1 + 1, c = .2 + 1)]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected} images, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("map is not a bijection of the group")]
    NotBijective,
    #[error("not a homomorphism: f({a}·{b}) ≠ f({a})·f({b})", a = .0 + 1, b = .1 + 1)]
    NotHomomorphism(usize, usize),
    #[error("subset is not a subgroup: {} · {} leaves it", .0 + 1, .1 + 1)]
    NotClosed(usize, usize),
    #[error("group of order {order} exceeds the automorphism enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("more than {0} automorphisms; supply the automorphism explicitly")]
    TooManyAutomorphisms(usize),
    #[error("permutations do not form a group: product leaves the set")]
    PermutationsNotClosed,
}

/// A finite group stored as a flat Cayley table with identity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Validates a 0-based multiplication table. Checks run in the order
    /// range, identity, Latin square, inverses, associativity and the first
    /// violation is reported with a witness.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(GroupError::LabelOutOfRange { row: i, col: j });
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(GroupError::NoIdentity);
        }
        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        for a in 0..n {
            stamp += 1;
            for b in 0..n {
                let x = at(a, b);
                if seen[x] == stamp {
                    return Err(GroupError::NotLatinSquare(Line::Row(a)));
                }
                seen[x] = stamp;
            }
        }
        for b in 0..n {
            stamp += 1;
            for a in 0..n {
                let x = at(a, b);
                if seen[x] == stamp {
                    return Err(GroupError::NotLatinSquare(Line::Column(b)));
                }
                seen[x] = stamp;
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| at(a, b) == 0).expect("latin row contains identity");
            if at(b, a) != 0 {
                return Err(GroupError::NoInverse(a));
            }
            inverse[a] = b as u32;
        }
        let group = FiniteGroup { order: n, table, inverse };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        let middles: Vec<usize> = if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND {
            (0..n).collect()
        } else {
            self.magma_generators()
        };
        for &b in &middles {
            for a in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements generating the table as a magma (closure under the product,
    /// no associativity assumed).
    fn magma_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut inside = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut gens = Vec::new();
        for candidate in 0..n {
            if inside[candidate] {
                continue;
            }
            gens.push(candidate);
            let mut queue = vec![candidate];
            inside[candidate] = true;
            while let Some(x) = queue.pop() {
                members.push(x);
                for i in 0..members.len() {
                    let y = members[i];
                    for z in [self.mul(x, y), self.mul(y, x)] {
                        if !inside[z] {
                            inside[z] = true;
                            queue.push(z);
                        }
                    }
                }
            }
        }
        gens
    }

    /// Cyclic group of order `n`; element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteGroup { order: n, table, inverse }
    }

    /// Direct product; `(a, b)` is element `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.order, h.order);
        let n = m * k;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = g.mul(x / k, y / k);
                let b = h.mul(x % k, y % k);
                table.push((a * k + b) as u32);
            }
        }
        let inverse = (0..n).map(|x| (g.inv(x / k) * k + h.inv(x % k)) as u32).collect();
        FiniteGroup { order: n, table, inverse }
    }

    /// Group on a list of permutations closed under composition. The identity
    /// is moved to the front; other elements keep their relative order. The
    /// returned vector gives the permutation behind each element.
    pub fn from_permutations(elements: Vec<Perm>) -> Result<(Self, Vec<Perm>), GroupError> {
        if elements.is_empty() {
            return Err(GroupError::Empty);
        }
        let mut elements = elements;
        let id = elements
            .iter()
            .position(|p| p.is_identity())
            .ok_or(GroupError::PermutationsNotClosed)?;
        let identity = elements.remove(id);
        elements.insert(0, identity);
        let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elements.len() {
            return Err(GroupError::PermutationsNotClosed);
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = index.get(&a.then(b)).ok_or(GroupError::PermutationsNotClosed)?;
                table.push(*c as u32);
            }
        }
        let inverse = elements
            .iter()
            .map(|p| index.get(&p.inverse()).map(|&i| i as u32).ok_or(GroupError::PermutationsNotClosed))
            .collect::<Result<_, _>>()?;
        let group = FiniteGroup { order: n, table, inverse };
        Ok((group, elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: elements of largest order first, each added only
    /// when it lies outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for a in candidates {
            if inside[a] {
                continue;
            }
            gens.push(a);
            inside = self.closure_mask(&gens);
            if inside.iter().all(|&b| b) {
                break;
            }
        }
        gens
    }

    fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }
}

/// A subgroup of a [`FiniteGroup`], as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { elements: group.elements().collect() }
    }

    pub fn generated_by(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mask = group.closure_mask(gens);
        Subgroup { elements: (0..group.order()).filter(|&a| mask[a]).collect() }
    }

    /// Validates closure under product and inverse.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let mut mask = vec![false; group.order()];
        for &a in elements {
            if a >= group.order() {
                return Err(GroupError::LabelOutOfRange { row: a, col: 0 });
            }
            mask[a] = true;
        }
        if !mask[0] {
            return Err(GroupError::NotClosed(0, 0));
        }
        for &a in elements {
            if !mask[group.inv(a)] {
                return Err(GroupError::NotClosed(a, group.inv(a)));
            }
            for &b in elements {
                if !mask[group.mul(a, b)] {
                    return Err(GroupError::NotClosed(a, b));
                }
            }
        }
        Ok(Subgroup { elements: (0..group.order()).filter(|&a| mask[a]).collect() })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| group.mul(a, b) == group.mul(b, a)))
    }

    /// The subgroup as a standalone group. Entry `k` of the returned vector is
    /// the parent element behind new element `k`; identity stays first.
    pub fn as_group(&self, group: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let n = self.elements.len();
        let pos: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(pos[&group.mul(a, b)] as u32);
            }
        }
        let inverse = self.elements.iter().map(|&a| pos[&group.inv(a)] as u32).collect();
        (FiniteGroup { order: n, table, inverse }, self.elements.clone())
    }

    /// Right cosets `Hg`, each sorted, ordered by minimal representative.
    pub fn right_cosets(&self, group: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; group.order()];
        let mut cosets = Vec::new();
        for g in group.elements() {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| group.mul(h, g)).collect();
            coset.sort_unstable();
            for &x in &coset {
                assigned[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

/// An automorphism of a [`FiniteGroup`] given by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    images: Vec<u32>,
}

impl GroupAutomorphism {
    pub fn identity(group: &FiniteGroup) -> Self {
        GroupAutomorphism { images: (0..group.order() as u32).collect() }
    }

    pub fn from_images(group: &FiniteGroup, images: &[usize]) -> Result<Self, GroupError> {
        let n = group.order();
        if images.len() != n {
            return Err(GroupError::WrongLength { expected: n, got: images.len() });
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(GroupError::NotBijective);
            }
            seen[x] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if images[group.mul(a, b)] != group.mul(images[a], images[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupAutomorphism { images: images.iter().map(|&x| x as u32).collect() })
    }

    pub fn from_fn(group: &FiniteGroup, f: impl Fn(usize) -> usize) -> Result<Self, GroupError> {
        let images: Vec<usize> = group.elements().map(f).collect();
        Self::from_images(group, &images)
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut inv = vec![0u32; self.images.len()];
        for (a, &x) in self.images.iter().enumerate() {
            inv[x as usize] = a as u32;
        }
        GroupAutomorphism { images: inv }
    }

    /// `g f g⁻¹` as maps, i.e. `x ↦ g(f(g⁻¹(x)))`.
    pub fn conjugate_by(&self, g: &GroupAutomorphism) -> GroupAutomorphism {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &x)| a == x as usize)
    }
}

/// `Fix(G, f)`: the elements fixed by `f`.
pub fn fix_subgroup(group: &FiniteGroup, f: &GroupAutomorphism) -> Subgroup {
    Subgroup { elements: group.elements().filter(|&a| f.apply(a) == a).collect() }
}

/// All automorphisms of a group together with their conjugacy classes in
/// Aut(G). Classes list indices into `automorphisms`, each class sorted and
/// classes ordered by first member.
#[derive(Debug, Clone)]
pub struct AutomorphismClasses {
    pub automorphisms: Vec<GroupAutomorphism>,
    pub classes: Vec<Vec<usize>>,
}

impl AutomorphismClasses {
    pub fn representatives(&self) -> impl Iterator<Item = &GroupAutomorphism> {
        self.classes.iter().map(|c| &self.automorphisms[c[0]])
    }
}

pub fn enumerate_automorphisms(group: &FiniteGroup) -> Result<AutomorphismClasses, GroupError> {
    enumerate_automorphisms_bounded(group, DEFAULT_AUTOMORPHISM_ORDER_BOUND)
}

/// Backtracks over images of a greedy generating set, restricted to elements
/// of equal order, and partitions the result into Aut(G)-conjugacy classes.
pub fn enumerate_automorphisms_bounded(
    group: &FiniteGroup,
    max_order: usize,
) -> Result<AutomorphismClasses, GroupError> {
    let n = group.order();
    if n > max_order {
        return Err(GroupError::GroupTooLarge { order: n, bound: max_order });
    }
    let gens = group.generating_set();
    let orders: Vec<usize> = group.elements().map(|a| group.element_order(a)).collect();
    let mut search = AutSearch {
        group,
        gens: &gens,
        orders: &orders,
        found: Vec::new(),
        overflow: false,
    };
    let mut partial = vec![u32::MAX; n];
    partial[0] = 0;
    search.extend(0, &partial);
    if search.overflow {
        return Err(GroupError::TooManyAutomorphisms(AUTOMORPHISM_COUNT_LIMIT));
    }
    let automorphisms = search.found;
    let classes = conjugacy_classes(&automorphisms);
    Ok(AutomorphismClasses { automorphisms, classes })
}

struct AutSearch<'a> {
    group: &'a FiniteGroup,
    gens: &'a [usize],
    orders: &'a [usize],
    found: Vec<GroupAutomorphism>,
    overflow: bool,
}

impl AutSearch<'_> {
    fn extend(&mut self, depth: usize, partial: &[u32]) {
        if self.overflow {
            return;
        }
        if depth == self.gens.len() {
            if partial.iter().all(|&x| x != u32::MAX) {
                if self.found.len() == AUTOMORPHISM_COUNT_LIMIT {
                    self.overflow = true;
                    return;
                }
                self.found.push(GroupAutomorphism { images: partial.to_vec() });
            }
            return;
        }
        let g = self.gens[depth];
        for candidate in self.group.elements() {
            if self.orders[candidate] != self.orders[g] {
                continue;
            }
            if let Some(next) = self.close(partial, depth, candidate) {
                self.extend(depth + 1, &next);
            }
        }
    }

    /// Extends the partial map to the subgroup generated by the first
    /// `depth + 1` generators, failing on any inconsistency or collision.
    fn close(&self, partial: &[u32], depth: usize, image: usize) -> Option<Vec<u32>> {
        let group = self.group;
        let n = group.order();
        let gens = &self.gens[..=depth];
        let images: Vec<usize> = gens
            .iter()
            .enumerate()
            .map(|(i, &g)| if i == depth { image } else { partial[g] as usize })
            .collect();
        let mut map = vec![u32::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &gi) in gens.iter().zip(&images) {
                let y = group.mul(x, g);
                let fy = group.mul(map[x] as usize, gi);
                if map[y] == u32::MAX {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy as u32;
                    used[fy] = true;
                    queue.push_back(y);
                } else if map[y] as usize != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
}

fn conjugacy_classes(autos: &[GroupAutomorphism]) -> Vec<Vec<usize>> {
    if autos.is_empty() {
        return Vec::new();
    }
    let index: HashMap<&GroupAutomorphism, usize> = autos.iter().enumerate().map(|(i, f)| (f, i)).collect();
    // Generators of Aut(G), chosen greedily by closure.
    let mut inside = vec![false; autos.len()];
    let mut gens: Vec<usize> = Vec::new();
    for start in 0..autos.len() {
        if inside[start] {
            continue;
        }
        gens.push(start);
        inside.iter_mut().for_each(|b| *b = false);
        let id = GroupAutomorphism { images: (0..autos[0].images.len() as u32).collect() };
        let id_idx = index[&id];
        inside[id_idx] = true;
        let mut queue = VecDeque::from([id_idx]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = index[&autos[x].then(&autos[g])];
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if inside.iter().all(|&b| b) {
            break;
        }
    }
    let mut class_of = vec![usize::MAX; autos.len()];
    let mut classes = Vec::new();
    for start in 0..autos.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = index[&autos[x].conjugate_by(&autos[g])];
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}
