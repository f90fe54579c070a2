use std::sync::Arc;

use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::frame::{upset_frame, ElemSet, FinitePoset, Frame};
use crate::quiverrep::{
    find_isomorphism, hom_dim, serre_membership_chain, serre_membership_support, BoundQuiver, Representation,
};

/// A semisimple exact subcategory of a length category, presented by its
/// simple objects (pairwise hom-orthogonal, each with endomorphism ring `k`).
#[derive(Clone, Debug)]
pub struct ExactSubModel {
    ambient: Arc<BoundQuiver>,
    labels: Vec<String>,
    simples: Vec<Representation>,
}

impl ExactSubModel {
    pub fn new(ambient: Arc<BoundQuiver>, labels: Vec<String>, simples: Vec<Representation>) -> Result<Self> {
        if labels.len() != simples.len() {
            return Err(Error::InvalidSubcategory("one label per simple object is required".into()));
        }
        for (i, t) in simples.iter().enumerate() {
            if t.quiver() != &ambient {
                return Err(Error::InvalidSubcategory(format!("`{}` lives over another quiver", labels[i])));
            }
            if t.is_zero() {
                return Err(Error::InvalidSubcategory(format!("`{}` is zero", labels[i])));
            }
            if hom_dim(t, t) != 1 {
                return Err(Error::InvalidSubcategory(format!(
                    "End(`{}`) has dimension {}, expected 1",
                    labels[i],
                    hom_dim(t, t)
                )));
            }
            for (j, u) in simples.iter().enumerate() {
                if i != j && hom_dim(t, u) != 0 {
                    return Err(Error::InvalidSubcategory(format!(
                        "Hom(`{}`, `{}`) is nonzero",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        // Reject duplicate labels through the poset constructor.
        FinitePoset::antichain(labels.clone()).map_err(|e| Error::InvalidSubcategory(e.to_string()))?;
        Ok(ExactSubModel {
            ambient,
            labels,
            simples,
        })
    }

    pub fn ambient(&self) -> &Arc<BoundQuiver> {
        &self.ambient
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn simples(&self) -> &[Representation] {
        &self.simples
    }

    /// Multiplicity of each declared simple in `x`, verified by an explicit
    /// isomorphism with the corresponding direct sum.
    pub fn multiplicities(&self, x: &Representation) -> Result<Vec<usize>> {
        if x.quiver() != &self.ambient {
            return Err(Error::ObjectMismatch("representation over another quiver".into()));
        }
        let mult: Vec<usize> = self.simples.iter().map(|t| hom_dim(t, x)).collect();
        let sum = self.realize(&mult)?;
        if find_isomorphism(&sum, x)?.is_none() {
            return Err(Error::ObjectMismatch(
                "object is not a direct sum of the declared simples".into(),
            ));
        }
        Ok(mult)
    }

    /// The direct sum with the given multiplicities.
    pub fn realize(&self, mult: &[usize]) -> Result<Representation> {
        if mult.len() != self.simples.len() {
            return Err(Error::ObjectMismatch("multiplicity vector has the wrong length".into()));
        }
        let mut acc = Representation::zero(self.ambient.clone());
        for (t, &m) in self.simples.iter().zip(mult) {
            acc = acc.direct_sum(&t.power(m))?;
        }
        Ok(acc)
    }
}

/// A presented small abelian category.
#[derive(Clone, Debug)]
pub enum CategoryModel {
    /// Finite-dimensional representations of a bound quiver.
    Length(Arc<BoundQuiver>),
    /// Finitely generated modules over a commutative noetherian ring, seen
    /// only through its prime spectrum (smaller = more generic).
    Spectral(FinitePoset),
    ExactSub(ExactSubModel),
}

/// An object of a model.
#[derive(Clone, Debug)]
pub enum ModelObject {
    Rep(Representation),
    /// Direct sum of the basic simples with these multiplicities, one per base element.
    Semisimple(Vec<usize>),
    /// Spectral models only: the object `R/I` with `V(I)` the up-closure of these points.
    Generators(ElemSet),
}

/// A Serre subcategory together with the labels of the base elements it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreSub {
    pub element: ElemSet,
    pub members: Vec<String>,
}

impl CategoryModel {
    pub fn kind(&self) -> &'static str {
        match self {
            CategoryModel::Length(_) => "length",
            CategoryModel::Spectral(_) => "spectral",
            CategoryModel::ExactSub(_) => "exactsub",
        }
    }

    /// The poset whose up-sets are the Serre subcategories: vertices (no
    /// order) for length models, declared simples for exact-sub models, the
    /// spectrum for spectral models.
    pub fn base(&self) -> FinitePoset {
        match self {
            CategoryModel::Length(q) => FinitePoset::antichain(q.vertices().to_vec()).expect("vertex labels are unique"),
            CategoryModel::Spectral(p) => p.clone(),
            CategoryModel::ExactSub(m) => FinitePoset::antichain(m.labels.clone()).expect("checked on construction"),
        }
    }

    /// `Ser(A)` as a frame of up-sets of [`CategoryModel::base`].
    pub fn serre_lattice(&self) -> Result<Frame> {
        upset_frame(&self.base())
    }

    pub fn decode(&self, e: ElemSet) -> SerreSub {
        SerreSub {
            element: e,
            members: self.base().sorted_labels_of(e),
        }
    }

    /// `⟨A⟩` as an element of the Serre lattice.
    pub fn support(&self, obj: &ModelObject) -> Result<ElemSet> {
        let base = self.base();
        match (self, obj) {
            (CategoryModel::Length(q), ModelObject::Rep(r)) => {
                if r.quiver() != q {
                    return Err(Error::ObjectMismatch("representation over another quiver".into()));
                }
                Ok(r.support())
            }
            (CategoryModel::ExactSub(m), ModelObject::Rep(r)) => {
                let mult = m.multiplicities(r)?;
                Ok(mult.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect())
            }
            (CategoryModel::Length(_) | CategoryModel::ExactSub(_), ModelObject::Semisimple(mult)) => {
                if mult.len() != base.len() {
                    return Err(Error::ObjectMismatch("multiplicity vector has the wrong length".into()));
                }
                Ok(mult.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect())
            }
            (CategoryModel::Spectral(p), ModelObject::Generators(g)) => {
                if !g.is_subset(p.all()) {
                    return Err(Error::ObjectMismatch(format!("{g:?} is not a set of points")));
                }
                Ok(p.up_closure(*g))
            }
            _ => Err(Error::ObjectMismatch(format!(
                "object kind does not belong to a {} model",
                self.kind()
            ))),
        }
    }

    /// The least Serre subcategory containing `objects`.
    pub fn serre_generated(&self, objects: &[ModelObject]) -> Result<ElemSet> {
        objects
            .iter()
            .try_fold(ElemSet::EMPTY, |acc, o| Ok(acc.union(self.support(o)?)))
    }

    pub fn contains(&self, s: ElemSet, obj: &ModelObject) -> Result<bool> {
        Ok(self.support(obj)?.is_subset(s))
    }

    /// An object generating the Serre subcategory `s`.
    pub fn generator_of(&self, s: ElemSet) -> Result<ModelObject> {
        let base = self.base();
        if !base.is_up_set(s) {
            return Err(Error::NotAnElement(format!("{s:?}")));
        }
        Ok(match self {
            CategoryModel::Length(q) => ModelObject::Rep(Representation::semisimple(
                q.clone(),
                (0..base.len()).map(|v| usize::from(s.contains(v))).collect(),
            )),
            CategoryModel::ExactSub(m) => {
                ModelObject::Rep(m.realize(&(0..base.len()).map(|v| usize::from(s.contains(v))).collect::<Vec<_>>())?)
            }
            CategoryModel::Spectral(p) => ModelObject::Generators(p.minimal(s)),
        })
    }

    /// Name of the simple object attached to a base element.
    pub fn simple_name(&self, x: usize) -> String {
        match self {
            CategoryModel::Length(q) => format!("S_{}", q.vertices()[x]),
            CategoryModel::Spectral(p) => format!("R/{}", p.label(x)),
            CategoryModel::ExactSub(m) => m.labels[x].clone(),
        }
    }
}

/// Membership in `⟨gens⟩` decided by the composition-chain search and by
/// supports, for each candidate; fails if the two disagree anywhere.
pub fn cross_check_generated(gens: &[Representation], candidates: &[Representation], bound: usize) -> Result<usize> {
    for a in candidates {
        let chain = serre_membership_chain(a, gens, bound)?.is_some();
        let support = serre_membership_support(a, gens);
        if chain != support {
            return Err(invariant(
                "composition-chain membership agrees with support membership",
                format!("dims {:?}: chain {chain}, support {support}", a.dims()),
            ));
        }
    }
    Ok(candidates.len())
}
