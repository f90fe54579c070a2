//! Category models and their lattices of Serre subcategories.
//!
//! Every model encodes `Ser(A)` as the up-sets of a base poset: vertices of
//! a quiver (discretely ordered) for length categories, declared simple
//! objects for semisimple exact subcategories, and the prime spectrum for
//! spectral models. An object's Serre subcategory `⟨A⟩` is its support.

mod locality;
mod model;
mod zariski;

pub use locality::{classify_local, sp, LocalityVerdict, PrimeSpectrum};
pub use model::{cross_check_generated, CategoryModel, ExactSubModel, ModelObject, SerreSub};
pub use zariski::{
    generic_point_correspondence, is_quasisimple, is_s_simple, is_serre_local, maximal_avoiding,
    no_intermediate_check, quotient_model, s_simple_by_subobjects, s_simple_by_support, serre_below,
    serre_local_basics, serre_local_characterizations, zariski_locale, GenericPointRow, QuotientCertificate,
    QuotientModel, SerreLocalCharacterizations, ZariskiLocale,
};

#[cfg(test)]
mod tests;
