//! Representations of acyclic bound quivers over `F_2`, `F_3` and `F_5`.
//!
//! These give concrete finite-length abelian categories. Subrepresentations
//! are enumerated exhaustively, so everything here is limited to small total
//! dimension (see [`DEFAULT_DIM_BOUND`]).

pub mod linalg;
mod quiver;
mod rep;
mod subquotient;

pub use linalg::{all_subspaces, Fp, Matrix, Subspace};
pub use quiver::{Arrow, BoundQuiver, Relation};
pub use rep::{
    find_isomorphism, hom_basis, hom_dim, is_isomorphic, is_morphism, Representation, DEFAULT_DIM_BOUND,
    EXTENDED_DIM_BOUND,
};
pub use subquotient::{
    common_subquotient, dimension_vectors, factor, is_quasifinal, is_subquotient, isoclasses,
    representations_with_dims, serre_membership_chain, serre_membership_chain_with, serre_membership_support,
    subrepresentations, succeeds, ChainCertificate, SubquotientCatalog, SubquotientWitness, SubspaceTuple,
};
