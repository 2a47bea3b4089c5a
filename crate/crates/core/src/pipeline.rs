//! The explicit orbit-space construction for finite groups: coset table,
//! Cayley complex, chain space, induced action, orbit space.

use thiserror::Error;

use crate::cayley::{build_cayley_complex, CayleyComplex, CayleyError};
use crate::finspace::{
    chain_space, check_properly_discontinuous, induced_action, quotient, ActionTable, ChainSpace, DiscontinuityReport,
    PosetError, Quotient,
};
use crate::group::{todd_coxeter, CosetTable, CosetTableOracle, GroupError};
use crate::presentation::{Presentation, ReduceError, ReducedPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Every intermediate object of the explicit construction.
#[derive(Clone, Debug)]
pub struct ExplicitConstruction {
    pub complex: CayleyComplex,
    pub chains: ChainSpace,
    pub action: ActionTable,
    pub discontinuity: DiscontinuityReport,
    pub quotient: Quotient,
}

/// Runs the construction for a reduced presentation over its complete
/// coset table.
pub fn explicit_quotient(rp: &ReducedPresentation, t: &CosetTable) -> Result<ExplicitConstruction, PipelineError> {
    let complex = build_cayley_complex(rp, t)?;
    let chains = chain_space(&complex.face_poset());
    let action = induced_action(&complex.group_action(), &chains)?;
    let discontinuity = check_properly_discontinuous(chains.poset(), &action);
    let quotient = quotient(chains.poset(), &action)?;
    Ok(ExplicitConstruction { complex, chains, action, discontinuity, quotient })
}

/// Enumerates the group, certifies `p` as reduced with the exact oracle and
/// runs [`explicit_quotient`].
pub fn explicit_from_presentation(p: &Presentation, max_cosets: usize) -> Result<ExplicitConstruction, PipelineError> {
    let t = todd_coxeter(p, max_cosets)?;
    let rp = ReducedPresentation::certify(p.clone(), &CosetTableOracle::new(t.clone()))?;
    explicit_quotient(&rp, &t)
}
