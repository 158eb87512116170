//! Small standard groups as Cayley tables.

use crate::group::{FiniteGroup, GroupAutomorphism, GroupError};
use crate::perm::Perm;
use crate::permgroup::{PermGroup, PermGroupError};

/// A permutation group listed as a Cayley table; `perms[k]` is element `k`.
#[derive(Debug, Clone)]
pub struct PermutationTable {
    pub group: FiniteGroup,
    pub perms: Vec<Perm>,
}

impl PermutationTable {
    pub fn from_perm_group(group: &PermGroup) -> Result<Self, PermGroupError> {
        let elements = group.elements()?;
        let (table, perms) =
            FiniteGroup::from_permutations(elements).expect("group elements are closed");
        Ok(PermutationTable { group: table, perms })
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perms.iter().position(|q| q == p)
    }

    /// `g ↦ x⁻¹ g x` for a permutation `x` normalizing the group.
    pub fn conjugation_automorphism(&self, x: &Perm) -> Result<GroupAutomorphism, GroupError> {
        let index: std::collections::HashMap<&Perm, usize> =
            self.perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let images: Option<Vec<usize>> = self
            .perms
            .iter()
            .map(|p| index.get(&p.conjugate_by(x)).copied())
            .collect();
        let images = images.ok_or(GroupError::NotBijective)?;
        GroupAutomorphism::from_images(&self.group, &images)
    }
}

pub fn symmetric(n: usize) -> PermutationTable {
    PermutationTable::from_perm_group(&PermGroup::symmetric(n)).expect("small symmetric group")
}

pub fn alternating(n: usize) -> PermutationTable {
    PermutationTable::from_perm_group(&PermGroup::alternating(n)).expect("small alternating group")
}

/// SL(2, p) for a prime `p`. Matrices `[[a, b], [c, d]]` are listed
/// lexicographically by `(a, b, c, d)` with the identity moved to the front.
pub fn special_linear_2(p: usize) -> FiniteGroup {
    assert!(p >= 2 && (2..p).all(|d| p % d != 0), "p must be prime");
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c % p) % p == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    let identity = mats.remove(id);
    mats.insert(0, identity);
    let index = |m: [usize; 4]| mats.iter().position(|x| *x == m).unwrap();
    let rows: Vec<Vec<usize>> = mats
        .iter()
        .map(|x| {
            mats.iter()
                .map(|y| {
                    index([
                        (x[0] * y[0] + x[1] * y[2]) % p,
                        (x[0] * y[1] + x[1] * y[3]) % p,
                        (x[2] * y[0] + x[3] * y[2]) % p,
                        (x[2] * y[1] + x[3] * y[3]) % p,
                    ])
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows).expect("matrix multiplication is a group")
}
