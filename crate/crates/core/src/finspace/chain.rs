//! Chain spaces: the nonempty chains of a finite poset of cells, ordered by
//! reverse inclusion so that the minimal open set of a chain is its star.

use std::collections::HashMap;

use super::FinitePoset;

/// Points are the nonempty chains of `base`; `σ ⪯ τ` iff `τ ⊆ σ`.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    base: FinitePoset,
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    poset: FinitePoset,
}

impl ChainSpace {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Base elements of chain `id`, sorted by id.
    pub fn chain(&self, id: usize) -> &[usize] {
        &self.chains[id]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    /// Looks up a chain given as any ordering of its elements.
    pub fn index_of(&self, elements: &[usize]) -> Option<usize> {
        let mut key = elements.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// `star(σ) = {λ : σ ⊆ λ}`, the minimal open set of `σ`.
    pub fn star(&self, id: usize) -> Vec<usize> {
        self.poset.down_set(id).iter().collect()
    }
}

/// Enumerates the nonempty chains of `base` (the strict order being "is in
/// the boundary of"). Chains are numbered by size, then lexicographically
/// by sorted element ids.
pub fn chain_space(base: &FinitePoset) -> ChainSpace {
    let n = base.len();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    // Extend chains upward: every chain is listed bottom-first exactly once.
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|x| vec![x]).collect();
    while let Some(c) = stack.pop() {
        let top = *c.last().unwrap();
        for y in base.up_set(top).iter().filter(|&y| y != top) {
            let mut next = c.clone();
            next.push(y);
            stack.push(next);
        }
        chains.push(c);
    }
    for c in &mut chains {
        c.sort_unstable();
    }
    chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Vec<usize>, usize> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();

    let mut covers = Vec::new();
    for (sigma, c) in chains.iter().enumerate() {
        if c.len() < 2 {
            continue;
        }
        for skip in 0..c.len() {
            let face: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
            covers.push((sigma, index[&face]));
        }
    }
    let labels = chains
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&x| base.label(x)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let poset = FinitePoset::from_covers(labels, &covers).expect("reverse inclusion of chains is a partial order");
    ChainSpace { base: base.clone(), chains, index, poset }
}
