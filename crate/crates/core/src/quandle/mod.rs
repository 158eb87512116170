//! Finite quandles as right-action tables `table[i][j] = i * j`.
//!
//! Elements are indices `0..order`. Column `b` of the table is the right
//! translation `R_b: x ↦ x * b`.

mod inner;
mod iso;

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Perm;
use crate::permgroup::{PermGroup, PermGroupError};

pub use inner::{end_permutation_p, pair_orbit_classes, InnerGroup};
pub use iso::{quandle_isomorphic, quandle_isomorphic_bounded, DEFAULT_ISOMORPHISM_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry at ({}, {}) is out of range", .row + 1, .col + 1)]
    LabelOutOfRange { row: usize, col: usize },
    #[error("not idempotent: {a} * {a} ≠ {a}", a = .0 + 1)]
    NotIdempotent(usize),
    #[error("column {} is not a bijection", .0 + 1)]
    ColumnNotBijective(usize),
    #[error("not right self-distributive at ({a}, {b}, {c})", a = .0 + 1, b = .1 + 1, c = .2 + 1)]
    NotDistributive(usize, usize, usize),
    #[error("quandle is not connected")]
    NotConnected,
    #[error("quandle order {order} exceeds the bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error(transparent)]
    PermGroup(#[from] PermGroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quandle {
    order: usize,
    table: Vec<u32>,
    /// `right_div[b * n + c]` is the unique `a` with `a * b = c`.
    right_div: Vec<u32>,
}

impl Quandle {
    /// Validates a 0-based table against idempotency, right invertibility and
    /// right self-distributivity, in that order.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuandleError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(QuandleError::LabelOutOfRange { row: i, col: j });
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>) -> Result<Self, QuandleError> {
        for a in 0..n {
            if table[a * n + a] as usize != a {
                return Err(QuandleError::NotIdempotent(a));
            }
        }
        let mut right_div = vec![u32::MAX; n * n];
        for b in 0..n {
            for a in 0..n {
                let c = table[a * n + b] as usize;
                if right_div[b * n + c] != u32::MAX {
                    return Err(QuandleError::ColumnNotBijective(b));
                }
                right_div[b * n + c] = a as u32;
            }
        }
        let q = Quandle { order: n, table, right_div };
        for a in 0..n {
            for b in 0..n {
                let ab = q.op(a, b);
                for c in 0..n {
                    if q.op(ab, c) != q.op(q.op(a, c), q.op(b, c)) {
                        return Err(QuandleError::NotDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(q)
    }

    /// Builds a quandle from a product known to satisfy the axioms.
    pub(crate) fn from_fn_trusted(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<u32> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| op(a, b) as u32).collect();
        let mut right_div = vec![0u32; n * n];
        for b in 0..n {
            for a in 0..n {
                right_div[b * n + table[a * n + b] as usize] = a as u32;
            }
        }
        let q = Quandle { order: n, table, right_div };
        debug_assert!(Quandle::from_flat(n, q.table.clone()).is_ok());
        q
    }

    /// `x * y = x` on `n` points.
    pub fn trivial(n: usize) -> Self {
        Quandle::from_fn_trusted(n, |a, _| a)
    }

    /// Dihedral quandle `R_n`: `i * j = 2j − i mod n`.
    pub fn dihedral(n: usize) -> Self {
        Quandle::from_fn_trusted(n, |i, j| (2 * j + n - i) % n)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// The unique `a` with `a * b = c`.
    #[inline]
    pub fn star_inv(&self, c: usize, b: usize) -> usize {
        self.right_div[b * self.order + c] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// Right translation `R_b` as a permutation.
    pub fn column(&self, b: usize) -> Perm {
        Perm::from_images_unchecked((0..self.order).map(|x| self.op(x, b) as u32).collect())
    }

    fn columns_equal(&self, a: usize, b: usize) -> bool {
        (0..self.order).all(|x| self.op(x, a) == self.op(x, b))
    }

    /// Orbit of `x` under Inn(Q), ascending.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let n = self.order;
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for b in 0..n {
                let z = self.op(y, b);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        (0..n).filter(|&y| seen[y]).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.orbit(0).len() == self.order
    }

    pub fn is_faithful(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.order).all(|b| seen.insert(self.column(b)))
    }

    /// Elements sharing the right translation of `e`: `e` first, then the
    /// rest ascending.
    pub fn fiber(&self, e: usize) -> Fiber {
        let mut elements = vec![e];
        elements.extend((0..self.order).filter(|&b| b != e && self.columns_equal(b, e)));
        Fiber { base: e, elements }
    }

    /// Partition of the quandle into fibers of `inn`, ordered by least member.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut groups: HashMap<Perm, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for b in 0..self.order {
            let k = *groups.entry(self.column(b)).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(b);
        }
        out
    }

    pub fn inner_group(&self) -> InnerGroup {
        InnerGroup::new(self)
    }

    /// Whether `map` (self → other) preserves the product.
    pub fn is_homomorphism_to(&self, other: &Quandle, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < other.order)
            && (0..self.order).all(|a| (0..self.order).all(|b| map[self.op(a, b)] == other.op(map[a], map[b])))
    }

    /// The quandle transported along a bijection: `σ(a) * σ(b) = σ(a * b)`.
    pub fn relabel(&self, sigma: &[usize]) -> Quandle {
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[sigma[a] * n + sigma[b]] = sigma[self.op(a, b)] as u32;
            }
        }
        Quandle::from_flat(n, table).expect("relabeling preserves the axioms")
    }

    /// Image of `inn`: the distinct right translations, with product
    /// `R_a * R_b = R_{a*b}` (conjugation in Inn(Q)). The map sends each element
    /// to its column's index, columns numbered by first appearance.
    pub fn inn_image(&self) -> (Quandle, Vec<usize>) {
        let mut index: HashMap<Perm, usize> = HashMap::new();
        let mut reps = Vec::new();
        let map: Vec<usize> = (0..self.order)
            .map(|b| {
                *index.entry(self.column(b)).or_insert_with(|| {
                    reps.push(b);
                    reps.len() - 1
                })
            })
            .collect();
        let k = reps.len();
        let image = Quandle::from_fn_trusted(k, |i, j| map[self.op(reps[i], reps[j])]);
        (image, map)
    }
}

/// `inn⁻¹(R_e)`, with the base element first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub base: usize,
    pub elements: Vec<usize>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.iter().position(|&y| y == x)
    }
}

/// Conjugation quandle on the class of `x` in `group`: `a * b = b⁻¹ a b`.
/// Element `k` is the `k`-th class member in discovery order, returned
/// alongside the quandle.
pub fn conj_quandle(group: &PermGroup, x: &Perm) -> Result<(Quandle, Vec<Perm>), QuandleError> {
    let class = group.conjugacy_class(x)?;
    let index: HashMap<&Perm, usize> = class.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = class.len();
    let q = Quandle::from_fn_trusted(n, |a, b| index[&class[a].conjugate_by(&class[b])]);
    Ok((q, class))
}
