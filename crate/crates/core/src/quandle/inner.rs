use std::collections::HashMap;

use crate::perm::Perm;
use crate::permgroup::PermGroup;

use super::{Quandle, QuandleError};

/// Inn(Q): the permutation group generated by the right translations.
#[derive(Debug, Clone)]
pub struct InnerGroup {
    pub perm_group: PermGroup,
    /// Distinct right translations, numbered by first appearance.
    pub columns: Vec<Perm>,
    /// `inn_map[a]` indexes `columns`: the translation `R_a`.
    pub inn_map: Vec<usize>,
}

impl InnerGroup {
    pub(super) fn new(q: &Quandle) -> Self {
        let mut index: HashMap<Perm, usize> = HashMap::new();
        let mut columns = Vec::new();
        let inn_map = (0..q.order())
            .map(|b| {
                let col = q.column(b);
                *index.entry(col.clone()).or_insert_with(|| {
                    columns.push(col);
                    columns.len() - 1
                })
            })
            .collect();
        let gens = columns.iter().filter(|c| !c.is_identity()).cloned().collect();
        let perm_group = PermGroup::new(q.order(), gens).expect("columns have quandle degree");
        InnerGroup { perm_group, columns, inn_map }
    }

    pub fn order(&self) -> u128 {
        self.perm_group.order()
    }

    pub fn translation(&self, a: usize) -> &Perm {
        &self.columns[self.inn_map[a]]
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.perm_group.derived_subgroup()
    }
}

/// Labels pairs `(x, y)` by their Inn(Q)-orbit, exploring from each fiber
/// pair `(e, b)`. Returns the class index of every fiber position.
fn fiber_pair_orbits(q: &Quandle, fiber: &[usize], gens: &[usize]) -> Vec<usize> {
    let n = q.order();
    let e = fiber[0];
    let mut label = vec![u32::MAX; n * n];
    let mut class_of = vec![usize::MAX; fiber.len()];
    let mut next = 0usize;
    for (pos, &b) in fiber.iter().enumerate() {
        let start = e * n + b;
        if label[start] != u32::MAX {
            continue;
        }
        let id = next as u32;
        next += 1;
        label[start] = id;
        let mut stack = vec![(e, b)];
        while let Some((x, y)) = stack.pop() {
            for &c in gens {
                let (u, v) = (q.op(x, c), q.op(y, c));
                if label[u * n + v] == u32::MAX {
                    label[u * n + v] = id;
                    stack.push((u, v));
                }
            }
        }
        class_of[pos] = pos;
    }
    for (pos, &b) in fiber.iter().enumerate() {
        if class_of[pos] == usize::MAX {
            let id = label[e * n + b];
            let rep = fiber
                .iter()
                .position(|&r| label[e * n + r] == id)
                .expect("orbit representative precedes");
            class_of[pos] = rep;
        }
    }
    class_of
}

fn generator_elements(q: &Quandle) -> Vec<usize> {
    let inner = q.inner_group();
    let mut first = vec![usize::MAX; inner.columns.len()];
    for (a, &k) in inner.inn_map.iter().enumerate() {
        if first[k] == usize::MAX {
            first[k] = a;
        }
    }
    first
}

/// Partition of `fiber(e)` by the Inn(Q)-orbits of the pairs `(e, b)`.
/// Blocks are ascending; the block of `e` is first, the rest follow by least
/// member.
pub fn pair_orbit_classes(q: &Quandle, e: usize) -> Result<Vec<Vec<usize>>, QuandleError> {
    if !q.is_connected() {
        return Err(QuandleError::NotConnected);
    }
    let fiber = q.fiber(e);
    let gens = generator_elements(q);
    let class_of = fiber_pair_orbits(q, &fiber.elements, &gens);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_rep: HashMap<usize, usize> = HashMap::new();
    for (pos, &rep) in class_of.iter().enumerate() {
        let k = *block_of_rep.entry(rep).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[k].push(fiber.elements[pos]);
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks[1..].sort_by_key(|b| b[0]);
    Ok(blocks)
}

/// The involution `p` on fiber positions with `Ψ(rm K)_j = Ψ(K)_{p(j)}`.
///
/// For each fiber element `b_j` an inner automorphism `f_j` with
/// `f_j(b_j) = e` is found by search, and `p(j)` is the position of
/// `f_j(e)`, reduced to the first position of its pair-orbit class.
pub fn end_permutation_p(q: &Quandle, e: usize) -> Result<Vec<usize>, QuandleError> {
    if !q.is_connected() {
        return Err(QuandleError::NotConnected);
    }
    let fiber = q.fiber(e);
    let gens = generator_elements(q);
    let class_of = fiber_pair_orbits(q, &fiber.elements, &gens);
    let n = q.order();
    let mut p = Vec::with_capacity(fiber.len());
    for &b in &fiber.elements {
        // image_of_e[y]: where e lands under the path that carried b to y
        let mut image_of_e = vec![usize::MAX; n];
        image_of_e[b] = e;
        let mut queue = std::collections::VecDeque::from([b]);
        while image_of_e[e] == usize::MAX {
            let y = queue.pop_front().expect("connected quandle reaches e");
            for &c in &gens {
                let z = q.op(y, c);
                if image_of_e[z] == usize::MAX {
                    image_of_e[z] = q.op(image_of_e[y], c);
                    queue.push_back(z);
                }
            }
        }
        let x = image_of_e[e];
        let pos = fiber.position(x).expect("inner automorphisms preserve the fiber of e");
        p.push(class_of[pos]);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faithful_quandle_has_single_class() {
        let q = Quandle::dihedral(3);
        assert_eq!(pair_orbit_classes(&q, 0).unwrap(), vec![vec![0]]);
        assert_eq!(end_permutation_p(&q, 0).unwrap(), vec![0]);
    }

    #[test]
    fn disconnected_is_rejected() {
        assert_eq!(pair_orbit_classes(&Quandle::trivial(2), 0), Err(QuandleError::NotConnected));
    }

    #[test]
    fn inn_map_groups_equal_columns() {
        let q = Quandle::trivial(3);
        let inner = q.inner_group();
        assert_eq!(inner.inn_map, vec![0, 0, 0]);
        assert_eq!(inner.columns.len(), 1);
        assert!(inner.perm_group.is_trivial());
    }
}
