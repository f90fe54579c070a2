//! Finite posets, their up-set frames, and finite topologies.
//!
//! Every frame here is the lattice of up-sets of a base poset, so meets and
//! joins are set intersection and union. Conventions used throughout the crate:
//!
//! * the top element is never prime (a prime ideal is proper);
//! * the Alexandrov topology of an order has the up-closed sets as opens, so
//!   its specialisation order is the original order;
//! * `birkhoff_poset` orders join-irreducibles by reverse inclusion, which makes
//!   `upset_frame(birkhoff_poset(F))` isomorphic to `F` and `birkhoff_poset`
//!   of `upset_frame(P)` equal to `P`.

mod elemset;
mod lattice;
mod poset;
mod topology;

pub use elemset::{ElemSet, MAX_POINTS};
pub use lattice::{
    check_lattice_isomorphism, upset_frame, Frame, FrameMap, Point, PrimeCharacterizations,
    MAX_FRAME_BASE,
};
pub use poset::{FinitePoset, Preorder};
pub use topology::{
    alexandrov, alexandrov_poset, check_prime_opens_vs_irreducible_closeds, compare_topologies,
    topology_from_subbasis, TopologyComparison, TopologySpace,
};

/// Heyting implication `a -> b` in `frame`.
pub fn heyting_implies(frame: &Frame, a: ElemSet, b: ElemSet) -> crate::Result<ElemSet> {
    frame.implies(a, b)
}

/// Whether `a` is a prime element, with all three characterizations cross-checked.
pub fn is_prime(frame: &Frame, a: ElemSet) -> crate::Result<bool> {
    frame.is_prime(a)
}

pub fn primes(frame: &Frame) -> Vec<ElemSet> {
    frame.primes()
}

pub fn points(frame: &Frame) -> Vec<Point> {
    frame.points()
}

pub fn birkhoff_poset(frame: &Frame) -> FinitePoset {
    frame.birkhoff_poset()
}
