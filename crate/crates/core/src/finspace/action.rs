//! Group actions on finite posets, the properly-discontinuous check on
//! minimal open sets, and orbit spaces.

use serde::Serialize;

use super::{BitSet, ChainSpace, FinitePoset, PosetError};

/// A finite group acting by permutations. Element 0 is the identity;
/// `multiplication[g][h]` is the index of `gh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    perms: Vec<Vec<usize>>,
    multiplication: Vec<Vec<usize>>,
}

impl ActionTable {
    pub fn new(perms: Vec<Vec<usize>>, multiplication: Vec<Vec<usize>>) -> Result<Self, PosetError> {
        let order = perms.len();
        if order == 0 || multiplication.len() != order || multiplication.iter().any(|r| r.len() != order) {
            return Err(PosetError::InvalidAction("multiplication table shape".into()));
        }
        let n = perms[0].len();
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || !p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true)) {
                return Err(PosetError::InvalidAction(format!("element {g} is not a permutation")));
            }
        }
        Ok(ActionTable { perms, multiplication })
    }

    /// The trivial group acting on `n` points.
    pub fn trivial(n: usize) -> Self {
        ActionTable { perms: vec![(0..n).collect()], multiplication: vec![vec![0]] }
    }

    /// The cyclic group generated by `generator`, elements ordered as powers
    /// `g^0, g^1, ...`.
    pub fn cyclic(generator: Vec<usize>) -> Result<Self, PosetError> {
        let n = generator.len();
        let identity: Vec<usize> = (0..n).collect();
        let mut perms = vec![identity.clone()];
        let mut current = generator.clone();
        while current != identity {
            if perms.len() > n.max(1) * n.max(1) + 1 {
                return Err(PosetError::InvalidAction("generator is not a permutation".into()));
            }
            perms.push(current.clone());
            current = current.iter().map(|&x| generator[x]).collect();
        }
        let k = perms.len();
        let multiplication = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        ActionTable::new(perms, multiplication)
    }

    pub fn group_order(&self) -> usize {
        self.perms.len()
    }

    pub fn num_points(&self) -> usize {
        self.perms[0].len()
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.multiplication[g][h]
    }

    /// Checks `τ_e = id`, `τ_g ∘ τ_h = τ_{gh}`, and that every `τ_g` is an
    /// order automorphism of `space`.
    pub fn validate(&self, space: &FinitePoset) -> Result<(), PosetError> {
        if self.num_points() != space.len() {
            return Err(PosetError::InvalidAction("action and space sizes differ".into()));
        }
        if self.perms[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(PosetError::InvalidAction("element 0 is not the identity".into()));
        }
        for g in 0..self.group_order() {
            for h in 0..self.group_order() {
                let gh = self.multiply(g, h);
                if (0..self.num_points()).any(|x| self.apply(g, self.apply(h, x)) != self.apply(gh, x)) {
                    return Err(PosetError::InvalidAction(format!("composition law fails for ({g}, {h})")));
                }
            }
            check_automorphism(space, g, &self.perms[g])?;
        }
        Ok(())
    }

    /// Orbits, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.num_points();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.perms.iter().map(|p| p[x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}

fn check_automorphism(space: &FinitePoset, element: usize, perm: &[usize]) -> Result<(), PosetError> {
    for y in 0..space.len() {
        for x in space.down_set(y).iter() {
            if !space.leq(perm[x], perm[y]) {
                return Err(PosetError::NotOrderPreserving { element, x, y });
            }
        }
        // A bijection preserving ⪯ on a finite poset maps down-sets onto
        // down-sets of equal size, hence reflects the order as well.
        if space.down_set(perm[y]).count() != space.down_set(y).count() {
            return Err(PosetError::NotOrderPreserving { element, x: y, y: perm[y] });
        }
    }
    Ok(())
}

/// Lifts an action on the cells of `cs.base()` to the chain space via
/// `gσ = {gx : x ∈ σ}`. The base action must consist of order
/// automorphisms, preserve dimension, and be free on cells for `g ≠ e`.
pub fn induced_action(base_action: &ActionTable, cs: &ChainSpace) -> Result<ActionTable, PosetError> {
    let base = cs.base();
    base_action.validate(base)?;
    let heights = base.heights();
    for g in 1..base_action.group_order() {
        for x in 0..base.len() {
            let gx = base_action.apply(g, x);
            if gx == x {
                return Err(PosetError::HasFixedPoint { element: g, point: x });
            }
            if heights[gx] != heights[x] {
                return Err(PosetError::DimensionNotPreserved { element: g, point: x });
            }
        }
    }
    let perms = (0..base_action.group_order())
        .map(|g| {
            (0..cs.len())
                .map(|sigma| {
                    let image: Vec<usize> = cs.chain(sigma).iter().map(|&x| base_action.apply(g, x)).collect();
                    cs.index_of(&image).expect("automorphisms send chains to chains")
                })
                .collect()
        })
        .collect();
    let action = ActionTable::new(perms, base_action.multiplication.clone())?;
    action.validate(cs.poset())?;
    Ok(action)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscontinuityWitness {
    pub point: usize,
    pub element: usize,
    /// A point in `U_x ∩ g·U_x`.
    pub common: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscontinuityReport {
    pub pairs_checked: usize,
    pub violations: Vec<DiscontinuityWitness>,
}

impl DiscontinuityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `U_x ∩ g(U_x) = ∅` for every point `x` and every `g ≠ e`.
/// Since `g` is an automorphism, `g(U_x) = U_{gx}`.
pub fn check_properly_discontinuous(space: &FinitePoset, action: &ActionTable) -> DiscontinuityReport {
    let mut report = DiscontinuityReport { pairs_checked: 0, violations: Vec::new() };
    for x in 0..space.len() {
        for g in 1..action.group_order() {
            report.pairs_checked += 1;
            let image: BitSet = {
                let mut b = BitSet::new(space.len());
                for y in space.down_set(x).iter() {
                    b.insert(action.apply(g, y));
                }
                b
            };
            if image.intersects(space.down_set(x)) {
                let mut common = image;
                common.intersect_with(space.down_set(x));
                report.violations.push(DiscontinuityWitness {
                    point: x,
                    element: g,
                    common: common.iter().next().unwrap(),
                });
            }
        }
    }
    report
}

/// An orbit space together with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub poset: FinitePoset,
    /// `orbit_of[x]` is the quotient point of `x`.
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

/// Orbit space with `[σ] ⪯ [τ]` iff `gσ ⪯ τ` for some `g`. Orbits are
/// numbered by smallest member and labelled `[label of that member]`.
pub fn quotient(space: &FinitePoset, action: &ActionTable) -> Result<Quotient, PosetError> {
    if action.num_points() != space.len() {
        return Err(PosetError::InvalidAction("action and space sizes differ".into()));
    }
    let orbits = action.orbits();
    let mut orbit_of = vec![0; space.len()];
    for (k, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = k;
        }
    }
    let m = orbits.len();
    let down: Vec<BitSet> = orbits
        .iter()
        .map(|o| {
            let mut b = BitSet::new(m);
            for &tau in o {
                for x in space.down_set(tau).iter() {
                    b.insert(orbit_of[x]);
                }
            }
            b
        })
        .collect();
    let labels = orbits.iter().map(|o| format!("[{}]", space.label(o[0]))).collect();
    let poset = FinitePoset::from_down_sets(labels, down).map_err(|e| match e {
        PosetError::NotAntisymmetric(a, b) => PosetError::QuotientNotT0(a, b),
        other => other,
    })?;
    Ok(Quotient { poset, orbit_of, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> FinitePoset {
        let labels = ["x0", "x1", "y0", "y1"].map(String::from).to_vec();
        FinitePoset::from_covers(labels, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let p = circle();
        let a = ActionTable::trivial(4);
        a.validate(&p).unwrap();
        assert!(check_properly_discontinuous(&p, &a).passed());
        let q = quotient(&p, &a).unwrap();
        assert_eq!(q.poset.hasse(), p.hasse());
    }

    #[test]
    fn swap_with_fixed_minimal_opens_fails_discontinuity() {
        // Rotating the pseudocircle by swapping both levels: U_y0 = {x0,x1,y0}
        // meets its image {x1,x0,y1}.
        let p = circle();
        let a = ActionTable::cyclic(vec![1, 0, 3, 2]).unwrap();
        a.validate(&p).unwrap();
        let rep = check_properly_discontinuous(&p, &a);
        assert!(!rep.passed());
        assert_eq!(rep.violations[0].element, 1);
        // The orbit space is the two-point chain.
        let q = quotient(&p, &a).unwrap();
        assert_eq!(q.poset.len(), 2);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let p = circle();
        let a = ActionTable::cyclic(vec![2, 3, 0, 1]).unwrap();
        assert!(matches!(a.validate(&p), Err(PosetError::NotOrderPreserving { .. })));
    }

    #[test]
    fn quotient_antisymmetry_failure_is_reported() {
        // Reversing the chain 0 < 1 < 2 is not an automorphism; the orbit
        // relation then puts {0,2} and {1} below each other.
        let p = FinitePoset::chain(3);
        let a = ActionTable::cyclic(vec![2, 1, 0]).unwrap();
        assert!(a.validate(&p).is_err());
        assert!(matches!(quotient(&p, &a), Err(PosetError::QuotientNotT0(..))));
    }
}
