use serde::Serialize;

use super::model::CategoryModel;
use crate::error::{invariant, Result};
use crate::frame::{ElemSet, Frame};

/// The primes of `Ser(A)`, each paired with the base point it comes from.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeSpectrum {
    /// `(point, prime)` with `prime = base \ ↓point`, in base order.
    pub pairs: Vec<(usize, ElemSet)>,
}

impl PrimeSpectrum {
    pub fn primes(&self) -> Vec<ElemSet> {
        self.pairs.iter().map(|&(_, p)| p).collect()
    }
}

/// The primes of the Serre lattice, matched with the base points and
/// certified order-reversing: `x <= y` iff `S_y ⊆ S_x`.
pub fn sp(model: &CategoryModel) -> Result<PrimeSpectrum> {
    let frame = model.serre_lattice()?;
    sp_of_frame(&frame)
}

pub(crate) fn sp_of_frame(frame: &Frame) -> Result<PrimeSpectrum> {
    let base = frame.base();
    let check = "primes correspond order-reversingly to points";
    let mut primes = frame.primes();
    primes.sort();
    let pairs: Vec<(usize, ElemSet)> = (0..base.len())
        .map(|x| (x, base.all().difference(base.down(x))))
        .collect();
    let mut from_points: Vec<ElemSet> = pairs.iter().map(|&(_, p)| p).collect();
    from_points.sort();
    if from_points != primes {
        return Err(invariant(
            check,
            format!("primes {primes:?} but point complements {from_points:?}"),
        ));
    }
    for &(x, sx) in &pairs {
        if !frame.is_prime(sx)? {
            return Err(invariant(check, format!("{} is not prime", frame.describe(sx))));
        }
        for &(y, sy) in &pairs {
            if base.leq(x, y) != sy.is_subset(sx) {
                return Err(invariant(check, format!("order not reversed at ({x}, {y})")));
            }
        }
    }
    Ok(PrimeSpectrum { pairs })
}

/// Whether `0` is prime in `Ser(A)`, and in which way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum LocalityVerdict {
    /// Two nonzero Serre subcategories meeting in `0`; absent for the zero category.
    NotLocal { witness: Option<(ElemSet, ElemSet)> },
    /// There is a simple object, necessarily unique; it generates the minimal
    /// nonzero Serre subcategory.
    Case1 { simple: String, minimal: ElemSet },
    /// Minimal nonzero Serre subcategory without a simple object. Finite
    /// models never produce this.
    Case2 { minimal: ElemSet },
    /// No minimal nonzero Serre subcategory. Finite models never produce this.
    Case3,
}

impl LocalityVerdict {
    pub fn is_local(&self) -> bool {
        !matches!(self, LocalityVerdict::NotLocal { .. })
    }
}

pub fn classify_local(model: &CategoryModel) -> Result<LocalityVerdict> {
    let frame = model.serre_lattice()?;
    let base = frame.base();
    let bottom = frame.bottom();
    let atoms = frame.upper_covers(bottom);
    if !frame.is_prime(bottom)? {
        let witness = if atoms.len() >= 2 {
            let (a, b) = (atoms[0], atoms[1]);
            if frame.meet(a, b) != bottom {
                return Err(invariant("distinct atoms meet in zero", format!("{a:?}, {b:?}")));
            }
            Some((a, b))
        } else {
            None
        };
        return Ok(LocalityVerdict::NotLocal { witness });
    }
    let minimal = atoms[0];
    // Atoms of an up-set frame are singletons of maximal points, each the
    // support of a simple object.
    if minimal.len() == 1 {
        let x = minimal.first().unwrap();
        let simples = base.maximal(base.all());
        if simples.len() != 1 {
            return Err(invariant(
                "a local category has exactly one simple object",
                format!("{} maximal points", simples.len()),
            ));
        }
        Ok(LocalityVerdict::Case1 {
            simple: model.simple_name(x),
            minimal,
        })
    } else {
        Ok(LocalityVerdict::Case2 { minimal })
    }
}
