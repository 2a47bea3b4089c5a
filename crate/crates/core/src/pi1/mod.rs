//! Fundamental groups of finite spaces as edge-path groups of their order
//! complexes, Tietze simplification, and comparison with a target group.

mod tietze;
mod verify;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::finspace::{order_complex, FinitePoset, PosetError};
use crate::presentation::{Generator, Letter, Presentation, Word};

pub use tietze::{tietze_simplify, tietze_simplify_traced, TietzeOutcome};
pub use verify::{verify_pi1, VerificationReport, VerificationStatus, VerifyLimits};

/// How the spanning tree of the 1-skeleton is grown from the basepoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeStrategy {
    #[default]
    BreadthFirst,
    DepthFirst,
}

/// Edge-path group of the order complex: one generator `x<lo>_<hi>` per
/// non-tree edge `lo < hi`, one relator per triangle.
#[derive(Clone, Debug)]
pub struct EdgePathPresentation {
    pub presentation: Presentation,
    /// Tree edges `[lo, hi]` with `lo < hi` in the poset, sorted.
    pub spanning_tree: Vec<[usize; 2]>,
    pub basepoint: usize,
    /// Non-tree edge of each generator.
    pub generator_edges: Vec<[usize; 2]>,
}

/// Breadth-first spanning tree from the minimum-id point.
pub fn edge_path_presentation(p: &FinitePoset) -> Result<EdgePathPresentation, PosetError> {
    edge_path_presentation_with(p, TreeStrategy::BreadthFirst)
}

pub fn edge_path_presentation_with(
    p: &FinitePoset,
    strategy: TreeStrategy,
) -> Result<EdgePathPresentation, PosetError> {
    if p.is_empty() || !p.is_connected() {
        return Err(PosetError::NotConnected);
    }
    let complex = order_complex(p);
    let basepoint = 0;
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for &[x, y] in &complex.edges {
        neighbours[x].push(y);
        neighbours[y].push(x);
    }
    for n in &mut neighbours {
        n.sort_unstable();
    }
    let mut tree = spanning_tree(&neighbours, basepoint, strategy);
    for e in &mut tree {
        // Orient along the order, not along the traversal.
        if !p.leq(e[0], e[1]) {
            e.swap(0, 1);
        }
    }
    tree.sort_unstable();

    let in_tree: std::collections::HashSet<[usize; 2]> = tree.iter().copied().collect();
    let mut generators = Vec::new();
    let mut generator_edges = Vec::new();
    let mut index: HashMap<[usize; 2], usize> = HashMap::new();
    for &e in &complex.edges {
        if !in_tree.contains(&e) {
            index.insert(e, generators.len());
            generators.push(Generator::new(format!("x{}_{}", e[0], e[1])).expect("generated names are valid"));
            generator_edges.push(e);
        }
    }
    let letter = |a: usize, b: usize, inverse: bool| index.get(&[a, b]).map(|&g| Letter { generator: g, inverse });
    let relators = complex
        .triangles
        .iter()
        .map(|&[x, y, z]| {
            [letter(x, y, false), letter(y, z, false), letter(x, z, true)].into_iter().flatten().collect()
        })
        .collect::<Vec<Word>>();
    let presentation = Presentation::new_allow_empty(generators, relators).expect("edge letters are in range");
    Ok(EdgePathPresentation { presentation, spanning_tree: tree, basepoint, generator_edges })
}

fn spanning_tree(neighbours: &[Vec<usize>], root: usize, strategy: TreeStrategy) -> Vec<[usize; 2]> {
    let mut seen = vec![false; neighbours.len()];
    let mut tree = Vec::new();
    seen[root] = true;
    match strategy {
        TreeStrategy::BreadthFirst => {
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &neighbours[x] {
                    if !seen[y] {
                        seen[y] = true;
                        tree.push([x, y]);
                        queue.push_back(y);
                    }
                }
            }
        }
        TreeStrategy::DepthFirst => {
            // Iterative DFS: (vertex, next neighbour position).
            let mut stack = vec![(root, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (x, k) = *top;
                if k == neighbours[x].len() {
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let y = neighbours[x][k];
                if !seen[y] {
                    seen[y] = true;
                    tree.push([x, y]);
                    stack.push((y, 0));
                }
            }
        }
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian_invariants;

    fn pseudocircle() -> FinitePoset {
        FinitePoset::from_covers((0..4).map(|i| i.to_string()).collect(), &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn pseudocircle_has_one_free_generator() {
        let e = edge_path_presentation(&pseudocircle()).unwrap();
        assert_eq!(e.presentation.num_generators(), 1);
        assert!(e.presentation.relators().is_empty());
        assert_eq!(e.spanning_tree.len(), 3);
    }

    #[test]
    fn chain_is_simply_connected() {
        let e = edge_path_presentation(&FinitePoset::chain(3)).unwrap();
        assert_eq!(e.presentation.num_generators(), 1);
        assert_eq!(e.presentation.relators().len(), 1);
        let s = tietze_simplify(&e.presentation, 100);
        assert_eq!(s.presentation.num_generators(), 0);
    }

    #[test]
    fn disconnected_is_rejected() {
        assert!(matches!(edge_path_presentation(&FinitePoset::antichain(2)), Err(PosetError::NotConnected)));
    }

    #[test]
    fn tree_strategies_agree_on_invariants() {
        let p = pseudocircle().product(&pseudocircle());
        let bfs = edge_path_presentation_with(&p, TreeStrategy::BreadthFirst).unwrap();
        let dfs = edge_path_presentation_with(&p, TreeStrategy::DepthFirst).unwrap();
        assert_ne!(bfs.spanning_tree, dfs.spanning_tree);
        let a = abelian_invariants(&bfs.presentation).unwrap();
        assert_eq!(a, abelian_invariants(&dfs.presentation).unwrap());
        assert_eq!(a.free_rank, 2);
        assert!(a.torsion.is_empty());
    }
}
