//! Concrete realizations of presented groups: coset enumeration for finite
//! groups, abelian invariants via Smith normal form, and word-problem
//! oracles built from either.

mod coset;
mod snf;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use coset::{todd_coxeter, CosetTable};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use crate::presentation::{Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("coset enumeration did not complete within {max_cosets} cosets (group may be infinite)")]
    NotEnumerated { max_cosets: usize },
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
}

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Answer of a word-problem oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triviality {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Decides (or declines to decide) whether a word is trivial in a fixed
/// presented group.
pub trait GroupOracle {
    fn triviality(&self, w: &Word) -> Triviality;
    fn name(&self) -> &str;
}

/// Exact oracle backed by a complete coset table.
#[derive(Clone, Debug)]
pub struct CosetTableOracle {
    table: CosetTable,
}

impl CosetTableOracle {
    pub fn new(table: CosetTable) -> Self {
        CosetTableOracle { table }
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }
}

impl GroupOracle for CosetTableOracle {
    fn triviality(&self, w: &Word) -> Triviality {
        match self.table.word_to_element(w) {
            Ok(0) => Triviality::Trivial,
            Ok(_) => Triviality::Nontrivial,
            Err(_) => Triviality::Unknown,
        }
    }

    fn name(&self) -> &str {
        "coset-table"
    }
}

/// Necessary-condition oracle: freely trivial words are trivial, words with
/// nonzero image in the abelianization are nontrivial, everything else is
/// unknown.
#[derive(Clone, Debug)]
pub struct AbelianOracle {
    num_generators: usize,
    diagonal: Vec<i64>,
    right: IntMatrix,
}

impl AbelianOracle {
    pub fn new(p: &Presentation) -> Result<Self, GroupError> {
        let snf = smith_normal_form(&relation_matrix(p))?;
        Ok(AbelianOracle { num_generators: p.num_generators(), diagonal: snf.diagonal, right: snf.right })
    }

    /// Whether the exponent vector of `w` lies in the relation lattice.
    fn abelian_image_is_zero(&self, w: &Word) -> Option<bool> {
        let v = w.exponent_sums(self.num_generators);
        for j in 0..self.num_generators {
            let mut u: i64 = 0;
            for (i, &vi) in v.iter().enumerate() {
                u = u.checked_add(vi.checked_mul(self.right[(i, j)])?)?;
            }
            let d = self.diagonal.get(j).copied().unwrap_or(0);
            let zero = if d == 0 { u == 0 } else { u % d == 0 };
            if !zero {
                return Some(false);
            }
        }
        Some(true)
    }
}

impl GroupOracle for AbelianOracle {
    fn triviality(&self, w: &Word) -> Triviality {
        if w.free_reduce().is_empty() {
            return Triviality::Trivial;
        }
        match self.abelian_image_is_zero(w) {
            Some(false) => Triviality::Nontrivial,
            _ => Triviality::Unknown,
        }
    }

    fn name(&self) -> &str {
        "abelianization"
    }
}

/// The exact coset-table oracle when enumeration finishes within
/// `max_cosets`, else the abelianization oracle.
pub fn best_oracle(p: &Presentation, max_cosets: usize) -> Result<Box<dyn GroupOracle>, GroupError> {
    match todd_coxeter(p, max_cosets) {
        Ok(t) => Ok(Box::new(CosetTableOracle::new(t))),
        Err(GroupError::NotEnumerated { .. }) => Ok(Box::new(AbelianOracle::new(p)?)),
        Err(e) => Err(e),
    }
}

/// The `|R| × |S|` exponent-sum matrix.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(p.num_generators())).collect();
    IntMatrix::from_rows(p.num_generators(), &rows)
}

/// `Z^free_rank × Z_{d1} × ... × Z_{dk}` with `d1 | d2 | ... | dk`, all > 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

pub fn abelian_invariants(p: &Presentation) -> Result<AbelianInvariants, GroupError> {
    let snf = smith_normal_form(&relation_matrix(p))?;
    let zeros = snf.diagonal.iter().filter(|&&d| d == 0).count();
    Ok(AbelianInvariants {
        torsion: snf.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(),
        free_rank: zeros + p.num_generators() - snf.diagonal.len(),
    })
}
