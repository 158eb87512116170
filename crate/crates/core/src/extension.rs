//! Generalized Alexander quandles, homogeneous quandles, coverings, and
//! extensions `Λ ×_φ X` by (not necessarily abelian) cocycles.

use std::fmt;

use thiserror::Error;

use crate::catalog::PermutationTable;
use crate::group::{enumerate_automorphisms, fix_subgroup, FiniteGroup, GroupAutomorphism, GroupError, Subgroup};
use crate::perm::Perm;
use crate::permgroup::PermGroupError;
use crate::quandle::{Quandle, QuandleError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `φ(a, a) ≠ 1`
    NotNormalized(usize),
    /// `φ(a,b)φ(a*b,c) ≠ φ(a,c)φ(a*c,b*c)`
    CocycleIdentity(usize, usize, usize),
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CocycleViolation::NotNormalized(a) => write!(f, "φ({0}, {0}) is not the identity", a + 1),
            CocycleViolation::CocycleIdentity(a, b, c) => {
                write!(f, "cocycle identity fails at ({}, {}, {})", a + 1, b + 1, c + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("subgroup element {} is not fixed by the automorphism", .0 + 1)]
    NotFixed(usize),
    #[error("the generalized Alexander quandle is not connected")]
    NotConnected,
    #[error("map is not a covering: {0}")]
    NotACovering(&'static str),
    #[error("section is invalid at base element {}", .0 + 1)]
    BadSection(usize),
    #[error("action table has the wrong shape")]
    ActionShape,
    #[error("action is not a left group action at ({}, {})", .0 + 1, .1 + 1)]
    NotAnAction(usize, usize),
    #[error("action element {} is not a deck transformation", .0 + 1)]
    NotDeckTransformation(usize),
    #[error("action is not free on the fiber over {}", .0 + 1)]
    ActionNotFree(usize),
    #[error("action is not transitive on the fiber over {}", .0 + 1)]
    ActionNotTransitiveOnFiber(usize),
    #[error("cocycle table has the wrong shape")]
    CocycleShape,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(CocycleViolation),
    #[error("inn is not equivalent to the Fix-coset projection: witness ({}, {})", .0 + 1, .1 + 1)]
    InnEquivalenceBroken(usize, usize),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    PermGroup(#[from] PermGroupError),
}

/// `GAlex(G, f)`: `x * y = f(x y⁻¹) y` on the elements of `G`.
pub fn galex(group: &FiniteGroup, f: &GroupAutomorphism) -> Quandle {
    Quandle::from_fn_trusted(group.order(), |x, y| {
        group.mul(f.apply(group.mul(x, group.inv(y))), y)
    })
}

/// `𝓗(G, H, f)` together with its coset bookkeeping.
#[derive(Debug, Clone)]
pub struct Homogeneous {
    pub quandle: Quandle,
    /// Right cosets `Hg`, sorted, ordered by minimal representative; coset
    /// `k` is quandle element `k`.
    pub cosets: Vec<Vec<usize>>,
    /// Group element to coset index.
    pub coset_of: Vec<usize>,
}

impl Homogeneous {
    pub fn representative(&self, k: usize) -> usize {
        self.cosets[k][0]
    }
}

fn check_fixed(f: &GroupAutomorphism, h: &Subgroup) -> Result<(), ExtensionError> {
    match h.elements().iter().find(|&&x| f.apply(x) != x) {
        Some(&x) => Err(ExtensionError::NotFixed(x)),
        None => Ok(()),
    }
}

/// Quandle on right cosets with `Ha * Hb = H f(a b⁻¹) b`. Requires `H ≤ Fix(G, f)`.
pub fn homogeneous_quandle(
    group: &FiniteGroup,
    h: &Subgroup,
    f: &GroupAutomorphism,
) -> Result<Homogeneous, ExtensionError> {
    check_fixed(f, h)?;
    let cosets = h.right_cosets(group);
    let mut coset_of = vec![0; group.order()];
    for (k, c) in cosets.iter().enumerate() {
        for &g in c {
            coset_of[g] = k;
        }
    }
    let quandle = Quandle::from_fn_trusted(cosets.len(), |i, j| {
        let (a, b) = (cosets[i][0], cosets[j][0]);
        coset_of[group.mul(f.apply(group.mul(a, group.inv(b))), b)]
    });
    Ok(Homogeneous { quandle, cosets, coset_of })
}

/// A quandle epimorphism where equal images force equal right translations.
#[derive(Debug, Clone)]
pub struct Covering {
    pub total: Quandle,
    pub base: Quandle,
    pub map: Vec<usize>,
}

impl Covering {
    pub fn new(total: Quandle, base: Quandle, map: Vec<usize>) -> Result<Self, ExtensionError> {
        covering_violation(&map, &total, &base).map_or(Ok(()), |why| Err(ExtensionError::NotACovering(why)))?;
        Ok(Covering { total, base, map })
    }

    /// `map⁻¹(q)`, ascending.
    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.total.order()).filter(|&y| self.map[y] == q).collect()
    }
}

fn covering_violation(map: &[usize], total: &Quandle, base: &Quandle) -> Option<&'static str> {
    if map.len() != total.order() || map.iter().any(|&x| x >= base.order()) {
        return Some("map has the wrong shape");
    }
    let mut hit = vec![false; base.order()];
    map.iter().for_each(|&x| hit[x] = true);
    if !hit.iter().all(|&h| h) {
        return Some("not surjective");
    }
    if !total.is_homomorphism_to(base, map) {
        return Some("not a homomorphism");
    }
    let n = total.order();
    let mut first = vec![usize::MAX; base.order()];
    for y in 0..n {
        let rep = &mut first[map[y]];
        if *rep == usize::MAX {
            *rep = y;
        } else if (0..n).any(|a| total.op(a, y) != total.op(a, *rep)) {
            return Some("equal images with different right translations");
        }
    }
    None
}

pub fn is_covering(map: &[usize], total: &Quandle, base: &Quandle) -> bool {
    covering_violation(map, total, base).is_none()
}

/// A left action of a group `Λ` on the total space of a covering:
/// `table[λ][y] = λ(y)`.
#[derive(Debug, Clone)]
pub struct LambdaAction {
    pub group: FiniteGroup,
    pub table: Vec<Vec<usize>>,
}

/// The covering `p_Λ: GAlex(G, f) → 𝓗(G, Λ, f)`, `g ↦ Λg`, with `Λ` acting by
/// left multiplication and the minimal coset representatives as section.
#[derive(Debug, Clone)]
pub struct GalexCovering {
    pub covering: Covering,
    pub homogeneous: Homogeneous,
    pub action: LambdaAction,
    /// `Λ`-element `k` is group element `lambda_in_group[k]`.
    pub lambda_in_group: Vec<usize>,
    pub section: Vec<usize>,
}

impl GalexCovering {
    /// The map `(λ, Λg) ↦ λ·s(Λg)` from `Λ ×_φ 𝓗` (in extension encoding) to
    /// the elements of `G`.
    pub fn extension_map(&self, group: &FiniteGroup) -> Vec<usize> {
        let l = self.lambda_in_group.len();
        (0..l * self.section.len())
            .map(|i| group.mul(self.lambda_in_group[i % l], self.section[i / l]))
            .collect()
    }

    pub fn extract_cocycle(&self) -> Result<Cocycle, ExtensionError> {
        extract_cocycle(&self.covering, &self.action, &self.section)
    }
}

pub fn covering_p_lambda(
    group: &FiniteGroup,
    f: &GroupAutomorphism,
    lambda: &Subgroup,
) -> Result<GalexCovering, ExtensionError> {
    let homogeneous = homogeneous_quandle(group, lambda, f)?;
    let total = galex(group, f);
    let map = homogeneous.coset_of.clone();
    let section: Vec<usize> = homogeneous.cosets.iter().map(|c| c[0]).collect();
    let covering = Covering::new(total, homogeneous.quandle.clone(), map)?;
    let (lambda_group, lambda_in_group) = lambda.as_group(group);
    let table = lambda_in_group
        .iter()
        .map(|&l| group.elements().map(|g| group.mul(l, g)).collect())
        .collect();
    Ok(GalexCovering {
        covering,
        homogeneous,
        action: LambdaAction { group: lambda_group, table },
        lambda_in_group,
        section,
    })
}

/// A `Λ`-valued function on `X × X`, stored with its base quandle and
/// coefficient group. The section it was extracted with, if any, is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    base: Quandle,
    coefficients: FiniteGroup,
    table: Vec<u32>,
    section: Option<Vec<usize>>,
}

impl Cocycle {
    pub fn new(
        base: Quandle,
        coefficients: FiniteGroup,
        rows: &[Vec<usize>],
        section: Option<Vec<usize>>,
    ) -> Result<Self, ExtensionError> {
        let n = base.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= coefficients.order())) {
            return Err(ExtensionError::CocycleShape);
        }
        if section.as_ref().is_some_and(|s| s.len() != n) {
            return Err(ExtensionError::CocycleShape);
        }
        let table = rows.iter().flatten().map(|&x| x as u32).collect();
        Ok(Cocycle { base, coefficients, table, section })
    }

    /// The constant cocycle `φ ≡ 1`.
    pub fn trivial(base: Quandle, coefficients: FiniteGroup) -> Self {
        let n = base.order();
        Cocycle { base, coefficients, table: vec![0; n * n], section: None }
    }

    pub fn base(&self) -> &Quandle {
        &self.base
    }

    pub fn coefficients(&self) -> &FiniteGroup {
        &self.coefficients
    }

    pub fn section(&self) -> Option<&[usize]> {
        self.section.as_deref()
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> usize {
        self.table[a * self.base.order() + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.base.order();
        (0..n).map(|a| (0..n).map(|b| self.value(a, b)).collect()).collect()
    }

    /// Exhaustive check of `φ(a,a) = 1` and the cocycle identity.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        let (x, l) = (&self.base, &self.coefficients);
        let n = x.order();
        if let Some(a) = (0..n).find(|&a| self.value(a, a) != 0) {
            return Err(CocycleViolation::NotNormalized(a));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = x.op(a, b);
                let left_ab = self.value(a, b);
                for c in 0..n {
                    let lhs = l.mul(left_ab, self.value(ab, c));
                    let rhs = l.mul(self.value(a, c), self.value(x.op(a, c), x.op(b, c)));
                    if lhs != rhs {
                        return Err(CocycleViolation::CocycleIdentity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn validate_cocycle(phi: &Cocycle) -> Result<(), CocycleViolation> {
    phi.validate()
}

/// Recovers `φ` from a covering with a free, fiber-transitive action of
/// deck transformations: `s(x) * s(y) = φ(x, y) · s(x * y)`.
pub fn extract_cocycle(
    cov: &Covering,
    action: &LambdaAction,
    section: &[usize],
) -> Result<Cocycle, ExtensionError> {
    let (total, base) = (&cov.total, &cov.base);
    let (n, m) = (total.order(), base.order());
    let lam = &action.group;
    if section.len() != m {
        return Err(ExtensionError::BadSection(section.len().min(m.saturating_sub(1))));
    }
    if let Some(q) = (0..m).find(|&q| section[q] >= n || cov.map[section[q]] != q) {
        return Err(ExtensionError::BadSection(q));
    }
    if action.table.len() != lam.order() || action.table.iter().any(|r| r.len() != n || r.iter().any(|&y| y >= n)) {
        return Err(ExtensionError::ActionShape);
    }
    for a in lam.elements() {
        for b in lam.elements() {
            let ab = lam.mul(a, b);
            if (0..n).any(|y| action.table[ab][y] != action.table[a][action.table[b][y]]) {
                return Err(ExtensionError::NotAnAction(a, b));
            }
        }
    }
    for l in lam.elements() {
        let act = &action.table[l];
        let preserves_fibers = (0..n).all(|y| cov.map[act[y]] == cov.map[y]);
        let automorphism = (0..n).all(|a| (0..n).all(|b| act[total.op(a, b)] == total.op(act[a], act[b])));
        if !preserves_fibers || !automorphism {
            return Err(ExtensionError::NotDeckTransformation(l));
        }
    }
    // lambda_of[z]: the λ with λ(s(p(z))) = z
    let mut lambda_of = vec![usize::MAX; n];
    for (q, &s) in section.iter().enumerate() {
        for l in lam.elements() {
            let z = action.table[l][s];
            if lambda_of[z] != usize::MAX {
                return Err(ExtensionError::ActionNotFree(q));
            }
            lambda_of[z] = l;
        }
    }
    if let Some(z) = (0..n).find(|&z| lambda_of[z] == usize::MAX) {
        return Err(ExtensionError::ActionNotTransitiveOnFiber(cov.map[z]));
    }
    let rows: Vec<Vec<usize>> = (0..m)
        .map(|x| (0..m).map(|y| lambda_of[total.op(section[x], section[y])]).collect())
        .collect();
    Cocycle::new(base.clone(), lam.clone(), &rows, Some(section.to_vec()))
}

/// `Λ ×_φ X` with element `(λ, x)` encoded as `x·|Λ| + λ`.
#[derive(Debug, Clone)]
pub struct ExtensionQuandle {
    pub cocycle: Cocycle,
    pub quandle: Quandle,
}

impl ExtensionQuandle {
    pub fn index(&self, lambda: usize, x: usize) -> usize {
        x * self.cocycle.coefficients().order() + lambda
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        let l = self.cocycle.coefficients().order();
        (i % l, i / l)
    }

    pub fn projection(&self) -> Vec<usize> {
        (0..self.quandle.order()).map(|i| self.split(i).1).collect()
    }

    pub fn covering(&self) -> Result<Covering, ExtensionError> {
        Covering::new(self.quandle.clone(), self.cocycle.base().clone(), self.projection())
    }

    /// The free, fiber-transitive action `λ(μ, x) = (λμ, x)`.
    pub fn lambda_action(&self) -> LambdaAction {
        let lam = self.cocycle.coefficients();
        let table = lam
            .elements()
            .map(|l| {
                (0..self.quandle.order())
                    .map(|i| {
                        let (mu, x) = self.split(i);
                        self.index(lam.mul(l, mu), x)
                    })
                    .collect()
            })
            .collect();
        LambdaAction { group: lam.clone(), table }
    }
}

pub fn extension_quandle(phi: &Cocycle) -> Result<ExtensionQuandle, ExtensionError> {
    phi.validate().map_err(ExtensionError::InvalidCocycle)?;
    let x = phi.base();
    let lam = phi.coefficients();
    let l = lam.order();
    let quandle = Quandle::from_fn_trusted(l * x.order(), |i, j| {
        let (lambda, a) = (i % l, i / l);
        let b = j / l;
        (x.op(a, b)) * l + lam.mul(lambda, phi.value(a, b))
    });
    Ok(ExtensionQuandle { cocycle: phi.clone(), quandle })
}

/// How `GAlex(G, f)` sits over the image of `inn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionClass {
    Faithful,
    AbelianExtension(Subgroup),
    NonAbelianExtension(Subgroup),
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionClass::Faithful => write!(f, "faithful"),
            ExtensionClass::AbelianExtension(l) => write!(f, "abelian_extension(|Λ|={})", l.order()),
            ExtensionClass::NonAbelianExtension(l) => write!(f, "nonabelian_extension(|Λ|={})", l.order()),
        }
    }
}

/// Connected `GAlex(G, f)` is faithful iff `Fix(G, f)` is trivial, and
/// otherwise an extension of the image of `inn` by `Λ = Fix(G, f)`.
pub fn classify_extension(group: &FiniteGroup, f: &GroupAutomorphism) -> Result<ExtensionClass, ExtensionError> {
    if !galex(group, f).is_connected() {
        return Err(ExtensionError::NotConnected);
    }
    let fix = fix_subgroup(group, f);
    Ok(if fix.is_trivial() {
        ExtensionClass::Faithful
    } else if fix.is_abelian(group) {
        ExtensionClass::AbelianExtension(fix)
    } else {
        ExtensionClass::NonAbelianExtension(fix)
    })
}

/// Checks that `τ(R_g) = Fix·g` is a well-defined quandle isomorphism from
/// the image of `inn` onto `𝓗(G, Fix(G, f), f)`.
pub fn inn_equivalence_check(group: &FiniteGroup, f: &GroupAutomorphism) -> Result<(), ExtensionError> {
    let q = galex(group, f);
    let fix = fix_subgroup(group, f);
    let hom = homogeneous_quandle(group, &fix, f)?;
    let (image, inn_map) = q.inn_image();
    let mut tau = vec![usize::MAX; image.order()];
    for g in group.elements() {
        let slot = &mut tau[inn_map[g]];
        if *slot == usize::MAX {
            *slot = hom.coset_of[g];
        } else if *slot != hom.coset_of[g] {
            let h = group.elements().find(|&h| inn_map[h] == inn_map[g]).unwrap();
            return Err(ExtensionError::InnEquivalenceBroken(h, g));
        }
    }
    let mut hit = vec![false; hom.quandle.order()];
    for (k, &t) in tau.iter().enumerate() {
        if hit[t] {
            let g = inn_map.iter().position(|&c| c == k).unwrap();
            let h = group.elements().find(|&h| hom.coset_of[h] == t).unwrap();
            return Err(ExtensionError::InnEquivalenceBroken(h, g));
        }
        hit[t] = true;
    }
    if tau.len() != hom.quandle.order() || !image.is_homomorphism_to(&hom.quandle, &tau) {
        return Err(ExtensionError::InnEquivalenceBroken(0, 0));
    }
    Ok(())
}

/// The first automorphism class representative with `|Fix(G, f)| = fix_order`
/// whose GAlex is connected.
pub fn find_galex_automorphism(
    group: &FiniteGroup,
    fix_order: usize,
) -> Result<Option<GroupAutomorphism>, ExtensionError> {
    let classes = enumerate_automorphisms(group)?;
    let found = classes
        .representatives()
        .find(|f| fix_subgroup(group, f).order() == fix_order && galex(group, f).is_connected())
        .cloned();
    Ok(found)
}

/// `G = Inn(Q)′` as a group with `f(g) = R_e⁻¹ g R_e`, and the isomorphism
/// `g ↦ e·g` from `GAlex(G, f)` onto `Q`.
#[derive(Debug, Clone)]
pub struct GalexReconstruction {
    pub group: PermutationTable,
    pub automorphism: GroupAutomorphism,
    pub isomorphism: Vec<usize>,
}

/// Decides whether a connected quandle is a generalized Alexander quandle
/// by comparing `|Q|` with `|Inn(Q)′|`, and reconstructs `(G, f)` if so.
pub fn galex_criterion(q: &Quandle, e: usize) -> Result<Option<GalexReconstruction>, ExtensionError> {
    galex_criterion_bounded(q, e, crate::permgroup::DEFAULT_ENUMERATION_BOUND)
}

pub fn galex_criterion_bounded(
    q: &Quandle,
    e: usize,
    bound: usize,
) -> Result<Option<GalexReconstruction>, ExtensionError> {
    if !q.is_connected() {
        return Err(ExtensionError::NotConnected);
    }
    let inner = q.inner_group();
    let derived = inner.derived_subgroup().with_enumeration_bound(bound);
    if derived.order() != q.order() as u128 {
        return Ok(None);
    }
    let table = PermutationTable::from_perm_group(&derived)?;
    let r_e: Perm = q.column(e);
    let automorphism = table.conjugation_automorphism(&r_e)?;
    let isomorphism: Vec<usize> = table.perms.iter().map(|g| g.apply(e)).collect();
    let rebuilt = galex(&table.group, &automorphism);
    let mut hit = vec![false; q.order()];
    for &x in &isomorphism {
        assert!(!hit[x], "Inn(Q)′ acts regularly when orders agree");
        hit[x] = true;
    }
    assert!(
        rebuilt.is_homomorphism_to(q, &isomorphism),
        "g ↦ e·g must be a quandle isomorphism"
    );
    Ok(Some(GalexReconstruction { group: table, automorphism, isomorphism }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::quandle_isomorphic;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn mult(n: usize, k: usize) -> GroupAutomorphism {
        GroupAutomorphism::from_fn(&z(n), |x| k * x % n).unwrap()
    }

    #[test]
    fn galex_of_negation_on_z3_is_r3() {
        assert_eq!(galex(&z(3), &mult(3, 2)), Quandle::dihedral(3));
    }

    #[test]
    fn galex_of_identity_is_trivial() {
        let g = crate::catalog::special_linear_2(3);
        assert_eq!(galex(&g, &GroupAutomorphism::identity(&g)), Quandle::trivial(24));
    }

    #[test]
    fn homogeneous_with_trivial_subgroup_is_galex() {
        let h = homogeneous_quandle(&z(5), &Subgroup::trivial(), &mult(5, 2)).unwrap();
        assert_eq!(h.quandle, galex(&z(5), &mult(5, 2)));
    }

    #[test]
    fn homogeneous_requires_fixed_subgroup() {
        let g = z(4);
        let h = Subgroup::generated_by(&g, &[1]);
        assert_eq!(
            homogeneous_quandle(&g, &h, &mult(4, 3)).unwrap_err(),
            ExtensionError::NotFixed(1)
        );
    }

    #[test]
    fn identity_and_constant_coverings() {
        let r3 = Quandle::dihedral(3);
        assert!(is_covering(&[0, 1, 2], &r3, &r3));
        // constant map onto a point: columns of R3 differ
        assert!(!is_covering(&[0, 0, 0], &r3, &Quandle::trivial(1)));
        let t = Quandle::trivial(3);
        assert!(is_covering(&[0, 0, 0], &t, &Quandle::trivial(1)));
    }

    #[test]
    fn inn_is_a_covering() {
        let g = z(4);
        let q = galex(&g, &mult(4, 3));
        let (image, map) = q.inn_image();
        assert!(is_covering(&map, &q, &image));
    }

    #[test]
    fn cocycle_validation() {
        let r3 = Quandle::dihedral(3);
        let trivial = Cocycle::trivial(r3.clone(), z(2));
        assert_eq!(trivial.validate(), Ok(()));
        let mut rows = trivial.rows();
        rows[1][1] = 1;
        let bad = Cocycle::new(r3, z(2), &rows, None).unwrap();
        assert_eq!(bad.validate(), Err(CocycleViolation::NotNormalized(1)));
    }

    #[test]
    fn trivial_covering_gives_trivial_cocycle() {
        let g = z(5);
        let cov = covering_p_lambda(&g, &mult(5, 2), &Subgroup::trivial()).unwrap();
        let phi = cov.extract_cocycle().unwrap();
        assert!(phi.rows().iter().flatten().all(|&x| x == 0));
        let ext = extension_quandle(&phi).unwrap();
        assert_eq!(ext.quandle, galex(&g, &mult(5, 2)));
    }

    #[test]
    fn constant_cocycle_extension_is_disconnected() {
        let ext = extension_quandle(&Cocycle::trivial(Quandle::dihedral(3), z(2))).unwrap();
        assert_eq!(ext.quandle.order(), 6);
        assert!(!ext.quandle.is_connected());
        assert!(ext.covering().is_ok());
    }

    #[test]
    fn extract_rejects_bad_section() {
        let g = z(4);
        let fix = Subgroup::generated_by(&g, &[2]);
        let cov = covering_p_lambda(&g, &mult(4, 3), &fix).unwrap();
        let mut s = cov.section.clone();
        s.swap(0, 1);
        assert!(matches!(
            extract_cocycle(&cov.covering, &cov.action, &s),
            Err(ExtensionError::BadSection(0))
        ));
    }

    #[test]
    fn extract_rejects_non_transitive_action() {
        let g = z(4);
        let fix = Subgroup::generated_by(&g, &[2]);
        let cov = covering_p_lambda(&g, &mult(4, 3), &fix).unwrap();
        let trivial = LambdaAction { group: z(1), table: vec![(0..4).collect()] };
        assert!(matches!(
            extract_cocycle(&cov.covering, &trivial, &cov.section),
            Err(ExtensionError::ActionNotTransitiveOnFiber(_))
        ));
    }

    #[test]
    fn classify_z5_doubling() {
        assert_eq!(classify_extension(&z(5), &mult(5, 2)).unwrap(), ExtensionClass::Faithful);
        assert_eq!(classify_extension(&z(4), &mult(4, 3)), Err(ExtensionError::NotConnected));
    }

    #[test]
    fn inn_equivalence_on_z5() {
        assert_eq!(inn_equivalence_check(&z(5), &mult(5, 2)), Ok(()));
    }

    #[test]
    fn criterion_on_r3() {
        let rec = galex_criterion(&Quandle::dihedral(3), 0).unwrap().unwrap();
        assert_eq!(rec.group.group.order(), 3);
        assert!(rec.group.group.is_abelian());
        let rebuilt = galex(&rec.group.group, &rec.automorphism);
        assert!(quandle_isomorphic(&rebuilt, &Quandle::dihedral(3)).unwrap().is_some());
    }
}
