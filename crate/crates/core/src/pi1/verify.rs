//! Comparison of an edge-path group with a target presentation.

use serde::Serialize;

use crate::finspace::{FinitePoset, PosetError};
use crate::group::{abelian_invariants, todd_coxeter, AbelianInvariants, GroupError, DEFAULT_MAX_COSETS};
use crate::presentation::Presentation;

use super::{edge_path_presentation, tietze_simplify};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationStatus {
    /// Isomorphism established: free groups of equal rank, or finite groups
    /// whose order and abelianization determine the isomorphism class.
    Verified,
    /// All computed invariants agree but do not pin the class.
    Consistent,
    /// Some invariant could not be computed within the limits.
    Inconclusive,
    /// A computed invariant differs.
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyLimits {
    pub max_cosets: usize,
    pub tietze_budget: usize,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits { max_cosets: DEFAULT_MAX_COSETS, tietze_budget: 10_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub status: VerificationStatus,
    pub abelianization_match: bool,
    /// `None` unless both orders were computed.
    pub order_match: Option<bool>,
    pub space_abelianization: Option<AbelianInvariants>,
    pub target_abelianization: Option<AbelianInvariants>,
    pub space_order: Option<usize>,
    pub target_order: Option<usize>,
    pub edge_path_generators: usize,
    pub edge_path_relators: usize,
    /// The simplified edge-path presentation.
    pub simplified_presentation: String,
    pub simplified_target: String,
    pub tietze_budget_exhausted: bool,
    pub reason: String,
    #[serde(skip)]
    pub simplified: Presentation,
}

/// Computes the edge-path group of `space`, simplifies it, and compares it
/// with `target`.
pub fn verify_pi1(
    space: &FinitePoset,
    target: &Presentation,
    limits: VerifyLimits,
) -> Result<VerificationReport, PosetError> {
    let edge_path = edge_path_presentation(space)?;
    let ours = tietze_simplify(&edge_path.presentation, limits.tietze_budget);
    let theirs = tietze_simplify(target, limits.tietze_budget);
    let (a, b) = (&ours.presentation, &theirs.presentation);
    let mut report = VerificationReport {
        status: VerificationStatus::Inconclusive,
        abelianization_match: false,
        order_match: None,
        space_abelianization: None,
        target_abelianization: None,
        space_order: None,
        target_order: None,
        edge_path_generators: edge_path.presentation.num_generators(),
        edge_path_relators: edge_path.presentation.relators().len(),
        simplified_presentation: a.to_string(),
        simplified_target: b.to_string(),
        tietze_budget_exhausted: ours.budget_exhausted || theirs.budget_exhausted,
        reason: String::new(),
        simplified: a.clone(),
    };
    let (inv_a, inv_b) = match (abelian_invariants(a), abelian_invariants(b)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => {
            report.reason = "abelian invariants overflowed".into();
            return Ok(report);
        }
    };
    report.space_abelianization = Some(inv_a.clone());
    report.target_abelianization = Some(inv_b.clone());
    report.abelianization_match = inv_a == inv_b;
    if !report.abelianization_match {
        report.status = VerificationStatus::Refuted;
        report.reason = format!("abelianizations differ: {inv_a} vs {inv_b}");
        return Ok(report);
    }
    if a.relators().is_empty() && b.relators().is_empty() && a.num_generators() == b.num_generators() {
        report.status = VerificationStatus::Verified;
        report.reason = format!("both free of rank {}", a.num_generators());
        return Ok(report);
    }
    if inv_a.free_rank > 0 {
        report.status = VerificationStatus::Consistent;
        report.reason = format!("infinite abelianization {inv_a} agrees; isomorphism not decidable here");
        return Ok(report);
    }
    let order = |p: &Presentation| match todd_coxeter(p, limits.max_cosets) {
        Ok(t) => Some(t.size()),
        Err(GroupError::NotEnumerated { .. }) | Err(_) => None,
    };
    report.space_order = order(a);
    report.target_order = order(b);
    let (Some(na), Some(nb)) = (report.space_order, report.target_order) else {
        report.reason = format!("coset enumeration did not finish within {} cosets", limits.max_cosets);
        return Ok(report);
    };
    report.order_match = Some(na == nb);
    if na != nb {
        report.status = VerificationStatus::Refuted;
        report.reason = format!("orders differ: {na} vs {nb}");
    } else if let Some(why) = pinned(na, &inv_a) {
        report.status = VerificationStatus::Verified;
        report.reason = format!("order {na} and abelianization {inv_a} agree; {why}");
    } else {
        report.status = VerificationStatus::Consistent;
        report.reason = format!("order {na} and abelianization {inv_a} agree but do not determine the group");
    }
    Ok(report)
}

/// Why a finite group of order `n` with abelianization `ab` is determined
/// up to isomorphism, if it is.
fn pinned(n: usize, ab: &AbelianInvariants) -> Option<&'static str> {
    if n == 1 {
        return Some("trivial group");
    }
    if ab.order() == Some(n as u64) {
        return Some("the group is abelian, so its invariants determine it");
    }
    if gcd(n, euler_phi(n)) == 1 {
        return Some("every group of this order is cyclic");
    }
    if n.is_multiple_of(2) && is_odd_prime(n / 2) && ab.torsion == [2] {
        return Some("the only non-abelian group of order 2p is dihedral");
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn is_odd_prime(p: usize) -> bool {
    p > 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pseudocircle() -> FinitePoset {
        FinitePoset::from_covers((0..4).map(|i| i.to_string()).collect(), &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn circle_is_z() {
        let r = verify_pi1(&pseudocircle(), &parse_presentation("<a|>").unwrap(), VerifyLimits::default()).unwrap();
        assert_eq!(r.status, VerificationStatus::Verified);
        assert_eq!(r.simplified_presentation, "< x1_3 | >");
    }

    #[test]
    fn circle_is_not_z2() {
        let r = verify_pi1(&pseudocircle(), &parse_presentation("<a|a^2>").unwrap(), VerifyLimits::default()).unwrap();
        assert_eq!(r.status, VerificationStatus::Refuted);
        assert!(!r.abelianization_match);
    }

    #[test]
    fn contractible_is_trivial() {
        let p = FinitePoset::chain(3).product(&FinitePoset::chain(2));
        let trivial = Presentation::new_allow_empty(vec![], vec![]).unwrap();
        let r = verify_pi1(&p, &trivial, VerifyLimits::default()).unwrap();
        assert_eq!(r.status, VerificationStatus::Verified);
    }

    #[test]
    fn catalogue() {
        let z = |t: &[u64]| AbelianInvariants { torsion: t.to_vec(), free_rank: 0 };
        assert!(pinned(6, &z(&[2])).is_some());
        assert!(pinned(15, &z(&[15])).is_some());
        assert!(pinned(8, &z(&[2, 2])).is_none());
        assert!(pinned(4, &z(&[4])).is_some());
        assert!(is_odd_prime(3) && !is_odd_prime(9) && !is_odd_prime(2));
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn report_serializes() {
        let r = verify_pi1(&pseudocircle(), &parse_presentation("<a|>").unwrap(), VerifyLimits::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "verified");
        assert_eq!(v["space_abelianization"]["free_rank"], 1);
    }
}
