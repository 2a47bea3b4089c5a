//! Finite T0 spaces as finite posets.
//!
//! The order is the specialization order: `x ⪯ y` iff `x` lies in every
//! open set containing `y`, so the minimal open set `U_y` is the down-set of
//! `y` and Hasse covers are drawn with the smaller point below.

mod action;
mod bits;
mod chain;
mod complex;
mod export;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use action::{
    check_properly_discontinuous, induced_action, quotient, ActionTable, DiscontinuityReport, DiscontinuityWitness,
    Quotient,
};
pub use bits::BitSet;
pub use chain::{chain_space, ChainSpace};
pub use complex::{order_complex, simplices, OrderComplex};
pub use export::{PointJson, PosetJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover relation contains a cycle through {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point {0}")]
    UnknownPoint(usize),
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} and {1} are mutually below each other")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("orbit order is not antisymmetric: orbits {0} and {1}")]
    QuotientNotT0(usize, usize),
    #[error("group element {element} does not preserve the order at ({x}, {y})")]
    NotOrderPreserving { element: usize, x: usize, y: usize },
    #[error("group element {element} fixes point {point}")]
    HasFixedPoint { element: usize, point: usize },
    #[error("group element {element} changes the dimension of point {point}")]
    DimensionNotPreserved { element: usize, point: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("poset is not connected")]
    NotConnected,
}

/// A finite partial order with labelled points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
}

fn check_labels(labels: &[String]) -> Result<(), PosetError> {
    let mut seen = HashMap::with_capacity(labels.len());
    for l in labels {
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn transpose(down: &[BitSet]) -> Vec<BitSet> {
    let n = down.len();
    let mut up = vec![BitSet::new(n); n];
    for (x, d) in down.iter().enumerate() {
        for y in d.iter() {
            up[y].insert(x);
        }
    }
    up
}

impl FinitePoset {
    /// Reflexive-transitive closure of `covers`, each pair `(lo, hi)`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            for p in [lo, hi] {
                if p >= n {
                    return Err(PosetError::UnknownPoint(p));
                }
            }
            if lo == hi {
                return Err(PosetError::CycleDetected { cycle: vec![lo] });
            }
            below[hi].push(lo);
            above[lo].push(hi);
        }
        // Kahn's algorithm from the minimal points upward.
        let mut indegree: Vec<usize> = below.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &above[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() < n {
            return Err(PosetError::CycleDetected { cycle: find_cycle(&above, &indegree) });
        }
        let mut down = vec![BitSet::new(n); n];
        for &y in &order {
            down[y].insert(y);
            for &x in &below[y] {
                let dx = down[x].clone();
                down[y].union_with(&dx);
            }
        }
        let up = transpose(&down);
        Ok(FinitePoset { labels, down, up })
    }

    /// Builds a poset from down-sets `down[x] = {y : y ⪯ x}`, checking the
    /// partial-order axioms.
    pub fn from_down_sets(labels: Vec<String>, down: Vec<BitSet>) -> Result<Self, PosetError> {
        check_labels(&labels)?;
        let n = labels.len();
        assert_eq!(down.len(), n, "one down-set per point");
        for (x, d) in down.iter().enumerate() {
            if !d.contains(x) {
                return Err(PosetError::NotReflexive(x));
            }
            for y in d.iter() {
                if y != x && down[y].contains(x) {
                    return Err(PosetError::NotAntisymmetric(y, x));
                }
                if !down[y].is_subset(d) {
                    let z = down[y].iter().find(|&z| !d.contains(z)).unwrap();
                    return Err(PosetError::NotTransitive(z, y, x));
                }
            }
        }
        let up = transpose(&down);
        Ok(FinitePoset { labels, down, up })
    }

    /// The one-point space.
    pub fn point(label: impl Into<String>) -> Self {
        FinitePoset::from_covers(vec![label.into()], &[]).unwrap()
    }

    /// A chain `0 < 1 < ... < n-1` labelled by index.
    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_covers((0..n).map(|i| i.to_string()).collect(), &covers).unwrap()
    }

    /// `n` pairwise incomparable points.
    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_covers((0..n).map(|i| i.to_string()).collect(), &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : y ⪯ x}` as a bit set.
    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// `{y : x ⪯ y}` as a bit set.
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// The minimal open set `U_x`, sorted.
    pub fn minimal_open(&self, x: usize) -> Result<Vec<usize>, PosetError> {
        self.down.get(x).map(|d| d.iter().collect()).ok_or(PosetError::UnknownPoint(x))
    }

    /// Number of comparable pairs `x < y`.
    pub fn strict_relation_count(&self) -> usize {
        self.down.iter().map(|d| d.count() - 1).sum()
    }

    /// Transitive reduction as `(lo, hi)` pairs, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for y in 0..n {
            let mut strict = self.down[y].clone();
            strict.remove(y);
            let mut candidates = strict.clone();
            for z in strict.iter() {
                let mut below_z = self.down[z].clone();
                below_z.remove(z);
                candidates.difference_with(&below_z);
            }
            covers.extend(candidates.iter().map(|x| (x, y)));
        }
        covers.sort_unstable();
        covers
    }

    /// Points covered by `x` and points covering `x`.
    pub fn cover_lists(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut below = vec![Vec::new(); self.len()];
        let mut above = vec![Vec::new(); self.len()];
        for (lo, hi) in self.hasse() {
            below[hi].push(lo);
            above[lo].push(hi);
        }
        (below, above)
    }

    /// Connectedness of the comparability graph, which for finite spaces is
    /// equivalent to path-connectedness.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                for y in self.down[x].iter().chain(self.up[x].iter()) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Length of the longest chain ending at each point (minimal points are 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.down[x].count());
        for &x in &order {
            h[x] = self.down[x].iter().filter(|&y| y != x).map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].count() == 1).collect()
    }

    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].count() == 1).collect()
    }

    /// Points whose strict down-set has a maximum or whose strict up-set
    /// has a minimum, i.e. points with exactly one lower or exactly one
    /// upper cover.
    pub fn beat_points(&self) -> Vec<usize> {
        let (below, above) = self.cover_lists();
        (0..self.len()).filter(|&x| below[x].len() == 1 || above[x].len() == 1).collect()
    }

    /// Product order on pairs; point `(x, y)` has id `x * q.len() + y` and
    /// label `(lx,ly)`.
    pub fn product(&self, q: &FinitePoset) -> FinitePoset {
        let (n, m) = (self.len(), q.len());
        let labels = (0..n)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.labels[x], q.labels[y]))
            .collect();
        let mut down = vec![BitSet::new(n * m); n * m];
        for x in 0..n {
            for y in 0..m {
                let d = &mut down[x * m + y];
                for x2 in self.down[x].iter() {
                    for y2 in q.down[y].iter() {
                        d.insert(x2 * m + y2);
                    }
                }
            }
        }
        let up = transpose(&down);
        FinitePoset { labels, down, up }
    }

    /// Relabels points; labels must stay unique.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<FinitePoset, PosetError> {
        assert_eq!(labels.len(), self.len());
        check_labels(&labels)?;
        Ok(FinitePoset { labels, ..self.clone() })
    }

    /// Whether the minimal open sets satisfy the basis axiom: every
    /// intersection `U_x ∩ U_y` is a union of minimal open sets.
    pub fn minimal_opens_form_basis(&self) -> bool {
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| {
                let mut inter = self.down[x].clone();
                inter.intersect_with(&self.down[y]);
                let closed = inter.iter().all(|z| self.down[z].is_subset(&inter));
                closed
            })
        })
    }
}

/// Builds the poset generated by `covers` (each `(lo, hi)`).
pub fn poset_from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<FinitePoset, PosetError> {
    FinitePoset::from_covers(labels, covers)
}

fn find_cycle(above: &[Vec<usize>], indegree: &[usize]) -> Vec<usize> {
    // Every point left with positive indegree lies on or above a cycle;
    // walk predecessors within that set until a point repeats.
    let n = above.len();
    let stuck: Vec<bool> = indegree.iter().map(|&d| d > 0).collect();
    let mut pred = vec![usize::MAX; n];
    for x in 0..n {
        for &y in &above[x] {
            if stuck[x] && stuck[y] && pred[y] == usize::MAX {
                pred[y] = x;
            }
        }
    }
    let start = (0..n).find(|&x| stuck[x]).unwrap();
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut x = start;
    while seen[x] == usize::MAX {
        seen[x] = path.len();
        path.push(x);
        x = pred[x];
    }
    let mut cycle = path[seen[x]..].to_vec();
    cycle.reverse();
    cycle
}
