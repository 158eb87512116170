//! The tangle invariant `Ψ^e_Q`, the cocycle state sum `Φ_φ`, and symmetry
//! reports comparing a knot with its mirror and reverses.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::braid::BraidWord;
use crate::coloring::{tangle_counts, weighted_closure_counts};
use crate::extension::{Cocycle, CocycleViolation, ExtensionQuandle};
use crate::group::FiniteGroup;
use crate::quandle::{end_permutation_p, Quandle, QuandleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("quandle is not connected")]
    NotConnected,
    #[error("base point {} is out of range", .0 + 1)]
    BadBase(usize),
    #[error("state sums need abelian coefficients")]
    NonAbelianCoefficients,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(CocycleViolation),
    #[error("projection is not equivalent to inn: the fiber of the base point is not Λ × {{x}}")]
    ProjectionNotInnEquivalent,
    #[error("Ψ vector does not belong to this quandle")]
    Mismatch,
    #[error("Ψ(rm K) is not the p-permuted Ψ(K) at fiber position {}", .0 + 1)]
    ReverseMirrorLaw(usize),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

/// `Ψ^e_Q(K)`: tangle colorings with top arc `e`, counted by bottom arc
/// color over the fiber of `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PsiVector {
    pub base: usize,
    pub fiber: Vec<usize>,
    pub counts: Vec<u64>,
}

impl PsiVector {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The count at the base point, i.e. `Col_Q(K) / |Q|`.
    pub fn at_base(&self) -> u64 {
        self.counts[0]
    }

    /// Counts sorted descending, for comparisons up to relabeling.
    pub fn multiset(&self) -> Vec<u64> {
        let mut m = self.counts.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

impl fmt::Display for PsiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn psi(q: &Quandle, e: usize, b: &BraidWord) -> Result<PsiVector, PsiError> {
    if e >= q.order() {
        return Err(PsiError::BadBase(e));
    }
    if !q.is_connected() {
        return Err(PsiError::NotConnected);
    }
    let fiber = q.fiber(e);
    let all = tangle_counts(q, b, e);
    let mut counts = vec![0u64; fiber.len()];
    for (y, &k) in all.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let pos = fiber
            .position(y)
            .unwrap_or_else(|| panic!("end-arc law: bottom color {} has a column different from R_e", y + 1));
        counts[pos] = k;
    }
    Ok(PsiVector { base: e, fiber: fiber.elements, counts })
}

/// An element `Σ n_λ λ` of the group ring `ℤ[Λ]` with non-negative
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<u64>,
}

impl GroupRingElement {
    pub fn new(group: Arc<FiniteGroup>, coeffs: Vec<u64>) -> Self {
        assert_eq!(group.order(), coeffs.len(), "one coefficient per group element");
        GroupRingElement { group, coeffs }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, lambda: usize) -> u64 {
        self.coeffs[lambda]
    }

    /// `Σ n_λ λ⁻¹`.
    pub fn conjugate(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (l, &c) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inv(l)] += c;
        }
        GroupRingElement { group: Arc::clone(&self.group), coeffs }
    }

    pub fn augmentation(&self) -> u64 {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for GroupRingElement {
    /// `n·g<label>` terms joined by ` + `, identity written `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(l, c)| if l == 0 { format!("{c}") } else { format!("{c}·g{}", l + 1) })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `Φ_φ(K) = Σ_C Π_τ φ(x_τ, y_τ)^{ε(τ)}` over all closure colorings.
pub fn phi_state_sum(phi: &Cocycle, b: &BraidWord) -> Result<GroupRingElement, PsiError> {
    if !phi.coefficients().is_abelian() {
        return Err(PsiError::NonAbelianCoefficients);
    }
    phi.validate().map_err(PsiError::InvalidCocycle)?;
    let coeffs = weighted_closure_counts(phi, b);
    Ok(GroupRingElement::new(Arc::new(phi.coefficients().clone()), coeffs))
}

/// `|X| · Ψ` read in `ℤ[Λ]` through the fiber identification
/// `(λ, x₀) ↦ λ`.
pub fn phi_from_psi(v: &PsiVector, ext: &ExtensionQuandle) -> Result<GroupRingElement, PsiError> {
    let lam = ext.cocycle.coefficients();
    let x = ext.cocycle.base();
    if v.fiber.first() != Some(&v.base) || v.base >= ext.quandle.order() || v.counts.len() != v.fiber.len() {
        return Err(PsiError::Mismatch);
    }
    let (l0, x0) = ext.split(v.base);
    let mut expected: Vec<usize> = lam.elements().map(|l| ext.index(lam.mul(l0, l), x0)).collect();
    expected.sort_unstable();
    let mut fiber = ext.quandle.fiber(v.base).elements;
    fiber.sort_unstable();
    if fiber != expected {
        return Err(PsiError::ProjectionNotInnEquivalent);
    }
    let mut coeffs = vec![0u64; lam.order()];
    for (&y, &c) in v.fiber.iter().zip(&v.counts) {
        let (l, _) = ext.split(y);
        coeffs[lam.mul(lam.inv(l0), l)] += c * x.order() as u64;
    }
    Ok(GroupRingElement::new(Arc::new(lam.clone()), coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Mirror,
    Reverse,
    ReverseMirror,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Mirror, Symmetry::Reverse, Symmetry::ReverseMirror];

    pub fn apply(self, b: &BraidWord) -> BraidWord {
        match self {
            Symmetry::Mirror => b.mirror(),
            Symmetry::Reverse => b.reverse(),
            Symmetry::ReverseMirror => b.reverse_mirror(),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Mirror => "m",
            Symmetry::Reverse => "r",
            Symmetry::ReverseMirror => "rm",
        })
    }
}

impl std::str::FromStr for Symmetry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m" => Ok(Symmetry::Mirror),
            "r" => Ok(Symmetry::Reverse),
            "rm" => Ok(Symmetry::ReverseMirror),
            _ => Err(format!("unknown symmetry {s:?}, expected m, r or rm")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub psi: PsiVector,
    pub psi_m: PsiVector,
    pub psi_r: PsiVector,
    pub psi_rm: PsiVector,
    /// Sorted; only symmetries that were asked about.
    pub distinguished: Vec<Symmetry>,
}

impl SymmetryReport {
    pub fn vector(&self, s: Symmetry) -> &PsiVector {
        match s {
            Symmetry::Mirror => &self.psi_m,
            Symmetry::Reverse => &self.psi_r,
            Symmetry::ReverseMirror => &self.psi_rm,
        }
    }
}

pub fn symmetry_report(q: &Quandle, e: usize, b: &BraidWord) -> Result<SymmetryReport, PsiError> {
    symmetry_report_for(q, e, b, &Symmetry::ALL)
}

/// Computes `Ψ` of `K, mK, rK, rmK` and checks `Ψ(rm K)_j = Ψ(K)_{p(j)}`.
pub fn symmetry_report_for(
    q: &Quandle,
    e: usize,
    b: &BraidWord,
    symmetries: &[Symmetry],
) -> Result<SymmetryReport, PsiError> {
    let psi_k = psi(q, e, b)?;
    let psi_m = psi(q, e, &b.mirror())?;
    let psi_r = psi(q, e, &b.reverse())?;
    let psi_rm = psi(q, e, &b.reverse_mirror())?;
    if psi_k.fiber.len() > 1 {
        let p = end_permutation_p(q, e)?;
        if let Some(j) = (0..p.len()).find(|&j| psi_rm.counts[j] != psi_k.counts[p[j]]) {
            return Err(PsiError::ReverseMirrorLaw(j));
        }
    }
    let mut report = SymmetryReport { psi: psi_k, psi_m, psi_r, psi_rm, distinguished: Vec::new() };
    let mut distinguished: Vec<Symmetry> = symmetries
        .iter()
        .copied()
        .filter(|&s| report.vector(s).counts != report.psi.counts)
        .collect();
    distinguished.sort_unstable();
    distinguished.dedup();
    report.distinguished = distinguished;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn braid(n: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn r3_trefoil() {
        let v = psi(&Quandle::dihedral(3), 0, &braid(2, &[1, 1, 1])).unwrap();
        assert_eq!(v.counts, vec![3]);
        let u = psi(&Quandle::dihedral(3), 0, &BraidWord::unknot()).unwrap();
        assert_eq!(u.counts, vec![1]);
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(psi(&Quandle::trivial(2), 0, &BraidWord::unknot()), Err(PsiError::NotConnected));
    }

    #[test]
    fn conjugate_in_z4() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let g = GroupRingElement::new(Arc::clone(&z4), vec![3, 2, 0, 0]);
        assert_eq!(g.conjugate().coeffs(), &[3, 0, 0, 2]);
        assert_eq!(g.conjugate().conjugate(), g);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let h = GroupRingElement::new(z2, vec![5, 7]);
        assert_eq!(h.conjugate(), h);
    }

    #[test]
    fn trivial_cocycle_state_sum_is_col() {
        let x = Quandle::dihedral(3);
        let phi = Cocycle::trivial(x.clone(), FiniteGroup::cyclic(2));
        let t = braid(2, &[1, 1, 1]);
        assert_eq!(phi_state_sum(&phi, &t).unwrap().coeffs(), &[9, 0]);
        assert_eq!(phi_state_sum(&phi, &BraidWord::unknot()).unwrap().coeffs(), &[3, 0]);
    }

    #[test]
    fn figure_eight_is_symmetric() {
        let r = symmetry_report(&Quandle::dihedral(5), 0, &braid(3, &[1, -2, 1, -2])).unwrap();
        assert!(r.distinguished.is_empty());
    }
}
