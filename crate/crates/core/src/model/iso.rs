//! Order-isomorphism search between finite posets: colour refinement on the
//! Hasse diagram followed by backtracking over equally coloured points.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::finspace::FinitePoset;

pub const DEFAULT_ISO_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism search exceeded {0} backtracking nodes")]
    SearchBudgetExceeded(usize),
}

/// `isomorphic_with_budget` with [`DEFAULT_ISO_BUDGET`].
pub fn isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<Option<Vec<usize>>, IsoError> {
    isomorphic_with_budget(p, q, DEFAULT_ISO_BUDGET)
}

/// Finds `f` with `x ⪯ y ⟺ f[x] ⪯ f[y]`, or `None` if no such bijection
/// exists. The search is deterministic.
pub fn isomorphic_with_budget(p: &FinitePoset, q: &FinitePoset, budget: usize) -> Result<Option<Vec<usize>>, IsoError> {
    if p.len() != q.len() || p.strict_relation_count() != q.strict_relation_count() {
        return Ok(None);
    }
    let (cp, cq) = refine(p, q);
    let histogram = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&cp) != histogram(&cq) {
        return Ok(None);
    }
    let order = search_order(p);
    let mut search = Search {
        p,
        q,
        cp: &cp,
        cq: &cq,
        order: &order,
        map: vec![usize::MAX; p.len()],
        used: vec![false; q.len()],
        nodes: 0,
        budget,
    };
    Ok(if search.extend(0)? { Some(search.map) } else { None })
}

type Signature = (usize, Vec<usize>, Vec<usize>);

/// Joint colour refinement so that colours are comparable across `p` and `q`.
fn refine(p: &FinitePoset, q: &FinitePoset) -> (Vec<usize>, Vec<usize>) {
    let heights = (p.heights(), q.heights());
    let start = |s: &FinitePoset, h: &[usize]| -> Vec<(usize, usize, usize)> {
        (0..s.len()).map(|x| (h[x], s.down_set(x).count(), s.up_set(x).count())).collect()
    };
    let (sp, sq) = (start(p, &heights.0), start(q, &heights.1));
    let (mut cp, mut cq) = relabel(&sp, &sq);
    let covers = (p.cover_lists(), q.cover_lists());
    let mut classes = count_classes(&cp, &cq);
    loop {
        let sig = |c: &[usize], (below, above): &(Vec<Vec<usize>>, Vec<Vec<usize>>)| -> Vec<Signature> {
            (0..c.len())
                .map(|x| {
                    let mut lo: Vec<usize> = below[x].iter().map(|&y| c[y]).collect();
                    let mut hi: Vec<usize> = above[x].iter().map(|&y| c[y]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    (c[x], lo, hi)
                })
                .collect()
        };
        let (np, nq) = relabel(&sig(&cp, &covers.0), &sig(&cq, &covers.1));
        let next = count_classes(&np, &nq);
        cp = np;
        cq = nq;
        if next == classes {
            return (cp, cq);
        }
        classes = next;
    }
}

fn relabel<T: Ord + Clone>(a: &[T], b: &[T]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<T, usize> = a.iter().chain(b).map(|s| (s.clone(), 0)).collect();
    for (k, v) in ids.values_mut().enumerate() {
        *v = k;
    }
    (a.iter().map(|s| ids[s]).collect(), b.iter().map(|s| ids[s]).collect())
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Breadth-first over the Hasse diagram so each point after the first in a
/// component is adjacent to an already placed point.
fn search_order(p: &FinitePoset) -> Vec<usize> {
    let (below, above) = p.cover_lists();
    let mut seen = vec![false; p.len()];
    let mut order = Vec::with_capacity(p.len());
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut k = start;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for &y in below[x].iter().chain(&above[x]) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    cp: &'a [usize],
    cq: &'a [usize],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool, IsoError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        for y in 0..self.q.len() {
            if self.used[y] || self.cq[y] != self.cp[x] || !self.consistent(depth, x, y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(IsoError::SearchBudgetExceeded(self.budget));
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        Ok(false)
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&x2| {
            let y2 = self.map[x2];
            self.p.leq(x2, x) == self.q.leq(y2, y) && self.p.leq(x, x2) == self.q.leq(y, y2)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_iso(p: &FinitePoset, q: &FinitePoset, f: &[usize]) -> bool {
        (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(f[x], f[y])))
    }

    #[test]
    fn chain_vs_antichain() {
        assert_eq!(isomorphic(&FinitePoset::chain(3), &FinitePoset::antichain(3)).unwrap(), None);
    }

    #[test]
    fn identity_found() {
        let p = FinitePoset::chain(3).product(&FinitePoset::chain(2));
        let f = isomorphic(&p, &p).unwrap().unwrap();
        assert!(is_iso(&p, &p, &f));
    }

    #[test]
    fn relabelled_poset() {
        // The pseudocircle with the two levels listed in opposite orders.
        let a = FinitePoset::from_covers((0..4).map(|i| i.to_string()).collect(), &[(0, 2), (0, 3), (1, 2), (1, 3)])
            .unwrap();
        let b = FinitePoset::from_covers((0..4).map(|i| i.to_string()).collect(), &[(3, 0), (3, 1), (2, 0), (2, 1)])
            .unwrap();
        let f = isomorphic(&a, &b).unwrap().unwrap();
        assert!(is_iso(&a, &b, &f));
    }

    #[test]
    fn same_counts_different_shape() {
        // Four points and four strict relations each: the pseudocircle and
        // the chain 0 < 1 < 2 with 3 < 2.
        let names = || (0..4).map(|i| i.to_string()).collect();
        let circle = FinitePoset::from_covers(names(), &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let y = FinitePoset::from_covers(names(), &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(circle.strict_relation_count(), y.strict_relation_count());
        assert_eq!(isomorphic(&circle, &y).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let p = FinitePoset::antichain(8);
        assert_eq!(isomorphic_with_budget(&p, &p, 3), Err(IsoError::SearchBudgetExceeded(3)));
    }
}
