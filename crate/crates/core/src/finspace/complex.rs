//! Order complexes: the simplicial complex of chains of a finite poset.

use super::FinitePoset;

/// Simplices of dimension ≤ 2 of the order complex. Vertices are the points
/// of the poset; each simplex lists its vertices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplex {
    pub vertices: usize,
    /// Pairs `[x, y]` with `x < y`.
    pub edges: Vec<[usize; 2]>,
    /// Triples `[x, y, z]` with `x < y < z`.
    pub triangles: Vec<[usize; 3]>,
}

impl OrderComplex {
    /// Euler characteristic of the 2-skeleton.
    pub fn euler_characteristic_2(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

pub fn order_complex(p: &FinitePoset) -> OrderComplex {
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for x in 0..p.len() {
        for y in p.up_set(x).iter().filter(|&y| y != x) {
            edges.push([x, y]);
            for z in p.up_set(y).iter().filter(|&z| z != y) {
                triangles.push([x, y, z]);
            }
        }
    }
    OrderComplex { vertices: p.len(), edges, triangles }
}

/// All chains with exactly `k + 1` points (the `k`-simplices), each listed
/// bottom-first, in lexicographic order.
pub fn simplices(p: &FinitePoset, k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<Vec<usize>> = (0..p.len()).map(|x| vec![x]).collect();
    for _ in 0..k {
        current = current
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                p.up_set(top).iter().filter(move |&y| y != top).map(move |y| {
                    let mut next = c.clone();
                    next.push(y);
                    next
                })
            })
            .collect();
    }
    current
}
