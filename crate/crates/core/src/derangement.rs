//! Derangement classification and certificates for intersecting subsets.
//!
//! For a transitive action, every conjugacy class either consists of
//! derangements (elements fixing no point) or of point-fixing elements;
//! fixing at least one point is a class function. The [`ActionProfile`]
//! records this partition once, after which intersecting and semiregular
//! checks are constant-time class lookups per element pair.

use std::sync::Arc;

use num_rational::Ratio;
use thiserror::Error;

use crate::perm::TransitiveAction;

#[derive(Debug, Error)]
pub enum DerangementError {
    #[error("subset must contain the identity")]
    IdentityMissing,
    #[error("subset is not semiregular")]
    NotSemiregular,
    #[error("certificate inconsistent: lower witness {lower} exceeds upper bound {upper}")]
    InconsistentCertificate { lower: u64, upper: f64 },
    #[error("empty subset")]
    EmptySubset,
}

/// Partition of conjugacy classes into point-fixing and derangement classes.
#[derive(Debug)]
pub struct ActionProfile {
    action: Arc<TransitiveAction>,
    /// `fixing[c]` is true when class `c` fixes at least one point.
    fixing: Vec<bool>,
    derangement_count: u64,
}

/// Tags a class as fixing or deranging by scanning one representative over
/// all points.
pub fn profile(action: &Arc<TransitiveAction>) -> ActionProfile {
    let table = action.group();
    let k = table.n_classes();
    let mut fixing = Vec::with_capacity(k);
    let mut derangement_count = 0u64;
    for c in 0..k as u32 {
        let rep = table.class_rep(c);
        let f = action.fixes_some_point(rep);
        if !f {
            derangement_count += table.class_size(c);
        }
        fixing.push(f);
    }
    debug_assert!(fixing[0], "the identity always fixes points");
    ActionProfile { action: action.clone(), fixing, derangement_count }
}

impl ActionProfile {
    pub fn action(&self) -> &Arc<TransitiveAction> {
        &self.action
    }

    pub fn is_fixing_class(&self, c: u32) -> bool {
        self.fixing[c as usize]
    }

    pub fn fixing_classes(&self) -> Vec<u32> {
        (0..self.fixing.len() as u32).filter(|&c| self.fixing[c as usize]).collect()
    }

    pub fn derangement_classes(&self) -> Vec<u32> {
        (0..self.fixing.len() as u32).filter(|&c| !self.fixing[c as usize]).collect()
    }

    pub fn derangement_count(&self) -> u64 {
        self.derangement_count
    }

    /// All derangement elements, ascending.
    pub fn derangement_elements(&self) -> Vec<u32> {
        let table = self.action.group();
        (0..table.order() as u32)
            .filter(|&i| !self.fixing[table.class_of(i) as usize])
            .collect()
    }

    fn ratio_fixes(&self, x: u32, y: u32) -> bool {
        let table = self.action.group();
        let r = table.mul(x, table.inv(y));
        self.fixing[table.class_of(r) as usize]
    }
}

/// True when every ratio `x y^{-1}` of subset members fixes a point.
/// Pairwise scan; use [`is_intersecting_subgroup`] for closed subsets.
pub fn is_intersecting(profile: &ActionProfile, subset: &[u32]) -> Result<bool, DerangementError> {
    if subset.is_empty() {
        return Err(DerangementError::EmptySubset);
    }
    for (i, &x) in subset.iter().enumerate() {
        for &y in &subset[i + 1..] {
            if !profile.ratio_fixes(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For a subgroup, ratios of members are again members, so the subgroup is
/// intersecting exactly when every member lies in a fixing class.
pub fn is_intersecting_subgroup(profile: &ActionProfile, subgroup: &[u32]) -> bool {
    let table = profile.action.group();
    subgroup.iter().all(|&x| profile.fixing[table.class_of(x) as usize])
}

/// True when all ratios of distinct members are derangements. The subset
/// must contain the identity.
pub fn is_semiregular(profile: &ActionProfile, subset: &[u32]) -> Result<bool, DerangementError> {
    if !subset.contains(&0) {
        return Err(DerangementError::IdentityMissing);
    }
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate() {
            if i != j && profile.ratio_fixes(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|G| / |R|` for a verified semiregular subset `R`: an upper bound on every
/// intersecting subset.
pub fn semiregular_upper_bound(
    profile: &ActionProfile,
    subset: &[u32],
) -> Result<u64, DerangementError> {
    if !is_semiregular(profile, subset)? {
        return Err(DerangementError::NotSemiregular);
    }
    Ok(profile.action.group().order() as u64 / subset.len() as u64)
}

/// An exact nonnegative value of the form `sqrt(a/b)`, stored as the exact
/// rational `a/b` alongside a float rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Radical {
    square: Ratio<u64>,
}

impl Radical {
    pub fn from_square(num: u64, den: u64) -> Self {
        Radical { square: Ratio::new(num, den) }
    }

    pub fn square(&self) -> Ratio<u64> {
        self.square
    }

    pub fn to_f64(&self) -> f64 {
        (*self.square.numer() as f64 / *self.square.denom() as f64).sqrt()
    }
}

impl std::fmt::Display for Radical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sqrt({}/{})", self.square.numer(), self.square.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperKind {
    Hoffman,
    SemiregularClique,
    ExactSolver,
    Trivial,
}

impl std::fmt::Display for UpperKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            UpperKind::Hoffman => "hoffman",
            UpperKind::SemiregularClique => "semiregular_clique",
            UpperKind::ExactSolver => "exact_solver",
            UpperKind::Trivial => "trivial",
        };
        f.write_str(s)
    }
}

/// One upper-bound source feeding a certificate.
#[derive(Debug, Clone, Copy)]
pub enum UpperSource {
    Hoffman(f64),
    SemiregularClique(u64),
    ExactSolver(u64),
}

impl UpperSource {
    fn value(&self) -> f64 {
        match *self {
            UpperSource::Hoffman(v) => v,
            UpperSource::SemiregularClique(v) => v as f64,
            UpperSource::ExactSolver(v) => v as f64,
        }
    }

    fn kind(&self) -> UpperKind {
        match self {
            UpperSource::Hoffman(_) => UpperKind::Hoffman,
            UpperSource::SemiregularClique(_) => UpperKind::SemiregularClique,
            UpperSource::ExactSolver(_) => UpperKind::ExactSolver,
        }
    }
}

/// A certified interval for the maximum intersecting subset size and the
/// derived interval for `rho(G/Omega) = |S| / (|G_omega| sqrt(|Omega|))`.
#[derive(Debug, Clone)]
pub struct RhoCertificate {
    pub lower_witness: Vec<u32>,
    pub upper_bound: f64,
    pub upper_kind: UpperKind,
    /// Exact `rho` lower bound: `sqrt(|S|^2 / (|G_w|^2 |Omega|))`.
    pub rho_lower: Radical,
    pub rho_upper: f64,
    /// Exact upper radical when the upper source is an integer bound.
    pub rho_upper_exact: Option<Radical>,
    pub tight: bool,
}

/// Combines a verified intersecting witness with the best available upper
/// bound. With no sources, the trivial bound `|S| <= |G|` applies and the
/// certificate is never tight.
pub fn certify_rho(
    profile: &ActionProfile,
    lower_witness: Vec<u32>,
    upper_sources: &[UpperSource],
) -> Result<RhoCertificate, DerangementError> {
    let action = profile.action();
    let table = action.group();
    let order = table.order() as f64;
    let (mut upper_bound, mut upper_kind, mut upper_int): (f64, UpperKind, Option<u64>) =
        (order, UpperKind::Trivial, Some(table.order() as u64));
    for src in upper_sources {
        let v = src.value();
        if v < upper_bound {
            upper_bound = v;
            upper_kind = src.kind();
            upper_int = match *src {
                // |S| is an integer, so the floor is also a valid bound; the
                // nudge guards against a value sitting just below an integer
                // it equals mathematically
                UpperSource::Hoffman(h) => Some((h + 1e-9).floor() as u64),
                UpperSource::SemiregularClique(v) | UpperSource::ExactSolver(v) => Some(v),
            };
        }
    }
    let s = lower_witness.len() as u64;
    if (s as f64) > upper_bound + 1e-9 {
        return Err(DerangementError::InconsistentCertificate { lower: s, upper: upper_bound });
    }
    let stab = action.stabilizer_order();
    let omega = action.omega_size() as u64;
    let rho_lower = Radical::from_square(s * s, stab * stab * omega);
    let rho_upper_exact =
        upper_int.map(|u| Radical::from_square(u * u, stab * stab * omega));
    let rho_upper = match rho_upper_exact {
        Some(r) => r.to_f64(),
        None => upper_bound / (stab as f64 * (omega as f64).sqrt()),
    };
    let tight = match upper_int {
        Some(u) => u == s,
        None => (rho_upper - rho_lower.to_f64()).abs() <= 1e-9 * rho_upper.max(1.0),
    };
    Ok(RhoCertificate {
        lower_witness,
        upper_bound,
        upper_kind,
        rho_lower,
        rho_upper,
        rho_upper_exact,
        tight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{coset_action, find_subgroup, GroupTable, Permutation, SubgroupShape};

    fn a5() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        GroupTable::close_group(5, &[a, b]).unwrap()
    }

    #[test]
    fn regular_action_profile() {
        let t = a5();
        let act = coset_action(t, &[0]).unwrap();
        let prof = profile(&act);
        // all non-identity classes are derangement classes
        assert_eq!(prof.fixing_classes(), vec![0]);
        assert_eq!(prof.derangement_count(), 59);
    }

    #[test]
    fn a5_on_ten_points_derangements() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t.clone(), &h).unwrap();
        let prof = profile(&act);
        // derangements are exactly the two order-5 classes: 24 elements
        assert_eq!(prof.derangement_count(), 24);
        for c in prof.derangement_classes() {
            assert_eq!(t.element_order(t.class_rep(c)), 5);
        }
    }

    #[test]
    fn stabilizer_is_intersecting_and_singletons_too() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        assert!(is_intersecting(&prof, &act.point_stabilizer()).unwrap());
        assert!(is_intersecting_subgroup(&prof, &act.point_stabilizer()));
        assert!(is_intersecting(&prof, &[17]).unwrap());
    }

    #[test]
    fn z5_is_semiregular_on_ten_points() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t.clone(), &h).unwrap();
        let prof = profile(&act);
        let z5 = find_subgroup(&t, 5, &SubgroupShape::Cyclic).unwrap();
        assert!(is_semiregular(&prof, &z5).unwrap());
        assert_eq!(semiregular_upper_bound(&prof, &z5).unwrap(), 12);
        assert!(matches!(
            is_semiregular(&prof, &[1, 2]),
            Err(DerangementError::IdentityMissing)
        ));
    }

    #[test]
    fn regular_action_certificate_is_tight_for_identity() {
        let t = a5();
        let act = coset_action(t, &[0]).unwrap();
        let prof = profile(&act);
        // in a regular action the derangement graph is complete; the whole
        // group is a semiregular subset giving bound 1
        let all: Vec<u32> = (0..60).collect();
        let bound = semiregular_upper_bound(&prof, &all).unwrap();
        assert_eq!(bound, 1);
        let cert =
            certify_rho(&prof, vec![0], &[UpperSource::SemiregularClique(bound)]).unwrap();
        assert!(cert.tight);
        assert_eq!(cert.rho_lower, Radical::from_square(1, 60));
    }

    #[test]
    fn inconsistent_certificate_detected() {
        let t = a5();
        let act = coset_action(t, &[0]).unwrap();
        let prof = profile(&act);
        let witness: Vec<u32> = vec![0, 1];
        assert!(matches!(
            certify_rho(&prof, witness, &[UpperSource::ExactSolver(1)]),
            Err(DerangementError::InconsistentCertificate { .. })
        ));
    }

    #[test]
    fn radical_rendering() {
        let r = Radical::from_square(200 * 200, 20 * 20 * 30);
        assert_eq!(format!("{}", r), "sqrt(10/3)");
        assert!((r.to_f64() - (10.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }
}
