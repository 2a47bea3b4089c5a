//! Deterministic Tietze simplification.
//!
//! Moves, repeated until none applies or the budget is spent:
//! relators of length 1 kill a generator and relators `x^±1 y^±1` identify
//! two generators (applied in batches through a signed union-find); then a
//! generator occurring exactly once in the shortest such relator is solved
//! for and substituted away. Relators are kept cyclically reduced, with
//! empty relators dropped and duplicates (up to rotation and inversion)
//! merged.

use std::collections::HashSet;

use crate::group::{abelian_invariants, AbelianInvariants, GroupError};
use crate::presentation::{Letter, Presentation, Word};

#[derive(Clone, Debug)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// Generators eliminated.
    pub moves: usize,
    /// The budget ran out before a fixpoint; the presentation is still
    /// equivalent to the input, just less simplified.
    pub budget_exhausted: bool,
    /// Abelian invariants of the input and after every step; empty unless
    /// traced.
    pub trace: Vec<Result<AbelianInvariants, GroupError>>,
}

pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    run(p, budget, false)
}

/// Like [`tietze_simplify`] but records the abelian invariants after each
/// step, so callers can check that every move preserved them.
pub fn tietze_simplify_traced(p: &Presentation, budget: usize) -> TietzeOutcome {
    run(p, budget, true)
}

struct State {
    parent: Vec<usize>,
    /// `x = parent[x]^-1` when set.
    flip: Vec<bool>,
    /// Meaningful at roots: the whole class is trivial.
    trivial: Vec<bool>,
    /// Removed by substitution.
    eliminated: Vec<bool>,
    relators: Vec<Vec<Letter>>,
}

impl State {
    /// Root of `x` and whether `x = root^-1`, compressing the path.
    fn find(&mut self, x: usize) -> (usize, bool) {
        let (mut root, mut parity) = (x, false);
        while self.parent[root] != root {
            parity ^= self.flip[root];
            root = self.parent[root];
        }
        let (mut z, mut pz) = (x, parity);
        while self.parent[z] != z {
            let (next, fz) = (self.parent[z], self.flip[z]);
            self.parent[z] = root;
            self.flip[z] = pz;
            pz ^= fz;
            z = next;
        }
        (root, parity)
    }

    fn is_alive(&self, g: usize) -> bool {
        self.parent[g] == g && !self.trivial[g] && !self.eliminated[g]
    }

    fn alive_count(&self) -> usize {
        (0..self.parent.len()).filter(|&g| self.is_alive(g)).count()
    }

    /// Applies `relator = 1` for a relator of length 1 or 2; returns whether
    /// a generator disappeared.
    fn absorb(&mut self, relator: &[Letter]) -> bool {
        let before = self.alive_count();
        match *relator {
            [l] => {
                let (r, _) = self.find(l.generator);
                self.trivial[r] = true;
            }
            [a, b] => {
                let (ra, fa) = self.find(a.generator);
                let (rb, fb) = self.find(b.generator);
                if ra != rb {
                    // ra^sa rb^sb = 1 with sa, sb = ±1, so rb = ra^(-sa·sb).
                    let sa = a.inverse ^ fa;
                    let sb = b.inverse ^ fb;
                    self.parent[rb] = ra;
                    self.flip[rb] = !(sa ^ sb);
                    if self.trivial[rb] {
                        self.trivial[ra] = true;
                    }
                }
            }
            _ => unreachable!("only short relators are absorbed"),
        }
        self.alive_count() < before
    }

    fn rewrite(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        self.relators = relators
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter_map(|l| {
                        let (root, flip) = self.find(l.generator);
                        (!self.trivial[root]).then_some(Letter { generator: root, inverse: l.inverse ^ flip })
                    })
                    .collect()
            })
            .collect();
    }

    fn normalize(&mut self) {
        let mut seen = HashSet::new();
        let relators = std::mem::take(&mut self.relators);
        self.relators = relators
            .into_iter()
            .map(|r| Word(r).cyclic_reduce().0)
            .filter(|r| !r.is_empty())
            .map(|r| canonical(&r))
            .filter(|r| seen.insert(r.clone()))
            .collect();
    }

    fn short_relators(&self) -> Vec<Vec<Letter>> {
        self.relators
            .iter()
            .filter(|r| r.len() == 1 || (r.len() == 2 && r[0].generator != r[1].generator))
            .cloned()
            .collect()
    }

    /// Solves the shortest relator containing a generator exactly once for
    /// that generator and substitutes it everywhere else.
    fn eliminate_once(&mut self) -> bool {
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&k| self.relators[k].len());
        for k in order {
            let r = &self.relators[k];
            let Some(pos) = (0..r.len()).find(|&i| r.iter().filter(|l| l.generator == r[i].generator).count() == 1)
            else {
                continue;
            };
            let x = r[pos];
            // r = x^ε w after rotation; x = w^-1 when ε = +1, x = w otherwise.
            let w: Vec<Letter> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
            let value = if x.is_positive() { Word(w).inverse().0 } else { w };
            let value_inv = Word(value.clone()).inverse().0;
            self.relators.remove(k);
            for rel in &mut self.relators {
                if rel.iter().any(|l| l.generator == x.generator) {
                    *rel = rel
                        .iter()
                        .flat_map(|&l| {
                            if l.generator != x.generator {
                                vec![l]
                            } else if l.inverse {
                                value_inv.clone()
                            } else {
                                value.clone()
                            }
                        })
                        .collect();
                }
            }
            self.eliminated[x.generator] = true;
            return true;
        }
        false
    }
}

/// Smallest rotation of `r` or of its inverse.
fn canonical(r: &[Letter]) -> Vec<Letter> {
    let inv = Word(r.to_vec()).inverse().0;
    let mut best = r.to_vec();
    for w in [r, &inv[..]] {
        for k in 0..w.len() {
            let rot: Vec<Letter> = w[k..].iter().chain(&w[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn run(p: &Presentation, budget: usize, traced: bool) -> TietzeOutcome {
    let n = p.num_generators();
    let mut s = State {
        parent: (0..n).collect(),
        flip: vec![false; n],
        trivial: vec![false; n],
        eliminated: vec![false; n],
        relators: p.relators().iter().map(|r| r.0.clone()).collect(),
    };
    let mut trace = Vec::new();
    if traced {
        trace.push(abelian_invariants(p));
    }
    s.normalize();
    let mut moves = 0;
    let mut budget_exhausted = false;
    loop {
        if moves >= budget {
            budget_exhausted = !s.short_relators().is_empty() || has_candidate(&s);
            break;
        }
        let short = s.short_relators();
        let mut progressed = false;
        for r in &short {
            if moves < budget && s.absorb(r) {
                moves += 1;
                progressed = true;
            }
        }
        if progressed {
            s.rewrite();
            s.normalize();
        } else if s.eliminate_once() {
            moves += 1;
            s.normalize();
        } else {
            break;
        }
        if traced {
            trace.push(abelian_invariants(&compact(p, &s)));
        }
    }
    TietzeOutcome { presentation: compact(p, &s), moves, budget_exhausted, trace }
}

fn has_candidate(s: &State) -> bool {
    s.relators.iter().any(|r| r.iter().any(|l| r.iter().filter(|m| m.generator == l.generator).count() == 1))
}

fn compact(p: &Presentation, s: &State) -> Presentation {
    let mut map = vec![usize::MAX; s.parent.len()];
    let mut gens = Vec::new();
    for (g, slot) in map.iter_mut().enumerate() {
        if s.is_alive(g) {
            *slot = gens.len();
            gens.push(p.generators()[g].clone());
        }
    }
    let relators = s
        .relators
        .iter()
        .map(|r| r.iter().map(|l| Letter { generator: map[l.generator], inverse: l.inverse }).collect())
        .collect();
    Presentation::new_allow_empty(gens, relators).expect("relators only use surviving generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn simp(text: &str) -> String {
        tietze_simplify(&parse_presentation(text).unwrap(), 1000).presentation.to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(simp("<x,y|x y^-1>"), "< x | >");
        assert_eq!(simp("<x|1>"), "< x | >");
        assert_eq!(simp("<x,y|x>"), "< y | >");
        assert_eq!(simp("<x,y,z|x y, y z, x^3>"), "< x | x^3 >");
        assert_eq!(simp("<a,b|a b a^-1 b^-1, a^2 b>"), "< a | >");
    }

    #[test]
    fn signed_union_find() {
        // y = x^-1, z = y^-1 = x, then x z^-1 is trivial and x^2 y^-1 = x^3.
        assert_eq!(simp("<x,y,z|x y, y z, x z^-1, x^2 y^-1>"), "< x | x^3 >");
    }

    #[test]
    fn unique_occurrence_elimination() {
        // a b c = 1 gives b = a^-1 c^-1; then b^2 c a^-1 c has no unique
        // generator left, and the abelianization is Z3 x Z.
        let out = tietze_simplify(&parse_presentation("<a,b,c|a b c, b^2 c a^-1 c>").unwrap(), 100);
        assert_eq!(out.presentation.num_generators(), 2);
        assert_eq!(out.presentation.relators().len(), 1);
        assert_eq!(abelian_invariants(&out.presentation).unwrap().to_string(), "Z3 x Z");
    }

    #[test]
    fn trace_preserves_invariants() {
        let p = parse_presentation("<a,b,c,d|a b, b c^-1, c^4 d, d a b^2>").unwrap();
        let out = tietze_simplify_traced(&p, 100);
        let first = out.trace[0].clone().unwrap();
        assert!(out.trace.len() > 1);
        assert!(out.trace.iter().all(|t| t.as_ref().unwrap() == &first));
    }

    #[test]
    fn budget_flag() {
        let p = parse_presentation("<a,b,c|a b^-1, b c^-1>").unwrap();
        let out = tietze_simplify(&p, 1);
        assert!(out.budget_exhausted);
        assert_eq!(out.moves, 1);
        assert_eq!(abelian_invariants(&out.presentation).unwrap().free_rank, 1);
    }
}
