//! Lattices of Serre subcategories for small presented abelian categories.
//!
//! The crate models three kinds of category at desk scale: module categories
//! of bound quivers over small prime fields ([`quiverrep`]), finite posets
//! standing for the prime spectrum of a commutative noetherian ring, and
//! semisimple exact subcategories of a quiver model. For each it computes the
//! frame of Serre subcategories, its prime elements, locality, quotients, the
//! Zariski locale on that frame ([`serre`]), maps induced by exact functors
//! ([`functor`]) and the torsion-theory and topology dictionary on spectral
//! posets ([`commspec`]).

pub mod cli;
pub mod commspec;
pub mod dot;
mod error;
pub mod fixtures;
pub mod frame;
pub mod functor;
pub mod quiverrep;
pub mod serre;
pub mod verify;

pub use error::{Error, Result};
