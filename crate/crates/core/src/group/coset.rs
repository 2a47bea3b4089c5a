//! Coset enumeration over the trivial subgroup (HLT strategy with
//! lookahead), yielding the regular permutation representation of a
//! finite presented group.

use std::collections::VecDeque;

use crate::presentation::{Letter, Presentation, Word};

use super::GroupError;

const UNDEF: usize = usize::MAX;

/// A complete coset table. Cosets are numbered breadth-first from the
/// identity (coset 0), scanning columns `s_1, s_1^-1, s_2, s_2^-1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    presentation: Presentation,
    ncols: usize,
    rows: Vec<usize>,
    size: usize,
    complete: bool,
    /// Breadth-first representative word of every coset.
    representatives: Vec<Word>,
}

impl CosetTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `coset · letter`.
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset * self.ncols + letter.column()]
    }

    /// Reads `letters` starting from `coset`.
    pub fn trace(&self, coset: usize, letters: &[Letter]) -> usize {
        letters.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The coset reached from the identity by reading `w`; `w` is trivial in
    /// the group iff the result is 0.
    pub fn word_to_element(&self, w: &Word) -> Result<usize, GroupError> {
        if !self.complete {
            return Err(GroupError::Incomplete);
        }
        if let Some(l) = w.0.iter().find(|l| l.generator >= self.presentation.num_generators()) {
            return Err(GroupError::GeneratorOutOfRange(l.generator));
        }
        Ok(self.trace(0, &w.0))
    }

    pub fn representative(&self, element: usize) -> &Word {
        &self.representatives[element]
    }

    /// Group product `g · h` under the identification of cosets with
    /// group elements.
    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.trace(g, &self.representatives[h].0)
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.trace(0, &self.representatives[g].inverse().0)
    }

    /// Full multiplication table, `table[g][h] = g·h`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|g| (0..self.size).map(|h| self.multiply(g, h)).collect()).collect()
    }

    /// Every relator acts as the identity permutation.
    pub fn relators_trivial(&self) -> bool {
        self.presentation.relators().iter().all(|r| (0..self.size).all(|c| self.trace(c, &r.0) == c))
    }

    /// Every column is a permutation and `s^-1` columns invert `s` columns.
    pub fn is_bijective(&self) -> bool {
        (0..self.presentation.num_generators()).all(|g| {
            let mut seen = vec![false; self.size];
            (0..self.size).all(|c| {
                let d = self.act(c, Letter::pos(g));
                let fresh = d < self.size && !std::mem::replace(&mut seen[d], true);
                fresh && self.act(d, Letter::neg(g)) == c
            })
        })
    }
}

struct Enumerator {
    ncols: usize,
    relators: Vec<Vec<usize>>,
    rows: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    max: usize,
    queue: Vec<usize>,
}

struct OutOfSpace;

impl Enumerator {
    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn get(&self, c: usize, x: usize) -> usize {
        self.rows[c * self.ncols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.rows[c * self.ncols + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), OutOfSpace> {
        if self.live >= self.max {
            return Err(OutOfSpace);
        }
        let d = self.allocated();
        self.rows.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.parent.push(d);
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Scans relator `k` from coset `c`, filling gaps with new cosets when
    /// `fill` is set. Returns early on a coincidence.
    fn scan(&mut self, c: usize, k: usize, fill: bool) -> Result<(), OutOfSpace> {
        let len = self.relators[k].len();
        if len == 0 {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, len as isize - 1);
        loop {
            while (i as isize) <= j {
                let next = self.get(f, self.relators[k][i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, self.relators[k][j as usize] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = self.relators[k][i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, self.relators[k][i])?;
        }
    }

    fn process(&mut self, c: usize) -> Result<(), OutOfSpace> {
        for k in 0..self.relators.len() {
            self.scan(c, k, true)?;
            if !self.is_live(c) {
                return Ok(());
            }
        }
        for x in 0..self.ncols {
            if !self.is_live(c) {
                break;
            }
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.allocated() {
            for k in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, k, false);
            }
            c += 1;
        }
    }

    /// Drops dead rows, keeping live cosets in order. Returns the old→new map
    /// for live cosets.
    fn compact(&mut self) -> Vec<usize> {
        let n = self.allocated();
        let mut map = vec![UNDEF; n];
        let mut next = 0;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c {
                *slot = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next * self.ncols);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(c, x);
                rows.push(if d == UNDEF { UNDEF } else { map[self.rep(d)] });
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        map
    }

    fn run(&mut self) -> Result<(), GroupError> {
        let mut c = 0;
        while c < self.allocated() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            match self.process(c) {
                Ok(()) => c += 1,
                Err(OutOfSpace) => {
                    let before = self.live;
                    self.lookahead();
                    if self.live == before || self.live >= self.max {
                        return Err(GroupError::NotEnumerated { max_cosets: self.max });
                    }
                    let map = self.compact();
                    c = (c..map.len()).map(|k| map[k]).find(|&k| k != UNDEF).unwrap_or(self.allocated());
                }
            }
        }
        Ok(())
    }
}

/// Enumerates the cosets of the trivial subgroup. Fails with
/// [`GroupError::NotEnumerated`] when more than `max_cosets` live cosets
/// would be needed (in particular for every infinite group).
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable, GroupError> {
    let ncols = 2 * p.num_generators();
    let relators: Vec<Vec<usize>> =
        p.relators().iter().map(|r| r.free_reduce().0.iter().map(|l| l.column()).collect()).collect();
    let mut e = Enumerator {
        ncols,
        relators,
        rows: vec![UNDEF; ncols],
        parent: vec![0],
        live: 1,
        max: max_cosets.max(1),
        queue: Vec::new(),
    };
    e.run()?;
    e.compact();

    // Standardize breadth-first.
    let n = e.allocated();
    let mut order = vec![UNDEF; n];
    let mut reps = vec![Word::empty(); n];
    let mut seen = Vec::with_capacity(n);
    order[0] = 0;
    seen.push(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..ncols {
            let d = e.get(c, x);
            if d == UNDEF {
                return Err(GroupError::Incomplete);
            }
            if order[d] == UNDEF {
                order[d] = seen.len();
                seen.push(d);
                let mut w = reps[order[c]].clone();
                w.0.push(Letter { generator: x / 2, inverse: x % 2 == 1 });
                reps[order[d]] = w;
                queue.push_back(d);
            }
        }
    }
    if seen.len() != n {
        return Err(GroupError::Incomplete);
    }
    let mut rows = vec![UNDEF; n * ncols];
    for (new, &old) in seen.iter().enumerate() {
        for x in 0..ncols {
            rows[new * ncols + x] = order[e.get(old, x)];
        }
    }
    reps.truncate(n);
    let table = CosetTable { presentation: p.clone(), ncols, rows, size: n, complete: true, representatives: reps };
    debug_assert!(table.relators_trivial() && table.is_bijective());
    Ok(table)
}
