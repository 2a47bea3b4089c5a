//! Finite topological spaces whose fundamental group is a given finitely
//! presented group.
//!
//! The pipeline runs from a [`Presentation`] through reducedness checking,
//! the Cayley complex of a finite group, its chain space with the induced
//! group action and the orbit space, to a symbolic orbit-space model that
//! works for any reduced presentation. Fundamental groups of finite spaces
//! are computed as edge-path groups of order complexes. The [`zn`] module
//! builds the explicit spaces for cyclic groups and their products.

pub mod cayley;
pub mod finspace;
pub mod group;
pub mod model;
pub mod pi1;
pub mod pipeline;
pub mod presentation;
pub mod zn;

pub use cayley::{build_cayley_complex, CayleyComplex, Cell};
pub use finspace::{FinitePoset, PosetError};
pub use group::{abelian_invariants, todd_coxeter, AbelianInvariants, CosetTable, GroupError, GroupOracle};
pub use model::{isomorphic, predicted_cardinality, quotient_model, OrbitPoint, SpaceModel};
pub use pi1::{edge_path_presentation, tietze_simplify, verify_pi1, VerificationReport, VerificationStatus};
pub use presentation::{parse_presentation, reduce, Presentation, ReducedPresentation, Word};
