use std::collections::BTreeSet;

use serde::Serialize;

use super::model::{CategoryModel, ExactSubModel, ModelObject};
use crate::error::{invariant, Error, Result};
use crate::frame::{alexandrov_poset, upset_frame, ElemSet, Frame};
use crate::quiverrep::{subrepresentations, Representation};

/// `Ser(A)` with its Zariski topology: opens are the up-sets of the poset
/// `Ser(A)`, with basics `[A] = ↑⟨A⟩`. Locale elements are sets of indices
/// into `ser.elements()`.
#[derive(Clone, Debug)]
pub struct ZariskiLocale {
    pub ser: Frame,
    pub locale: Frame,
}

impl ZariskiLocale {
    /// `[A] = {S : ⟨A⟩ ⊆ S}` for a Serre element `a = ⟨A⟩`.
    pub fn basic_open(&self, a: ElemSet) -> Result<ElemSet> {
        self.ser.check(a)?;
        Ok(self
            .ser
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, s)| a.is_subset(**s))
            .map(|(i, _)| i)
            .collect())
    }

    pub fn opens(&self) -> &[ElemSet] {
        self.locale.elements()
    }
}

pub fn zariski_locale(model: &CategoryModel) -> Result<ZariskiLocale> {
    let ser = model.serre_lattice()?;
    zariski_of_frame(ser)
}

pub(crate) fn zariski_of_frame(ser: Frame) -> Result<ZariskiLocale> {
    let locale = upset_frame(&ser.as_poset())?;
    Ok(ZariskiLocale { ser, locale })
}

/// The quotient `A/S` with `Ser(A/S)` embedded onto the interval `[S, ⊤]`.
#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub model: CategoryModel,
    /// Base element of the quotient → base element of the original model.
    pub kept: Vec<usize>,
    /// Each element of `Ser(A/S)` with its image in `Ser(A)`.
    pub embedding: Vec<(ElemSet, ElemSet)>,
    pub certificate: QuotientCertificate,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub interval_size: usize,
    /// The embedding is a bijection onto `[S, ⊤]` preserving meets and joins.
    pub interval_isomorphism: bool,
    /// The Zariski topology induced on the interval equals the quotient's own.
    pub zariski_topologies_agree: bool,
}

impl QuotientModel {
    /// Image of a Serre subcategory of the quotient.
    pub fn embed(&self, e: ElemSet) -> ElemSet {
        self.embedding
            .iter()
            .find(|(q, _)| *q == e)
            .map(|&(_, a)| a)
            .expect("element of the quotient lattice")
    }
}

pub fn quotient_model(model: &CategoryModel, s: ElemSet) -> Result<QuotientModel> {
    let ser = model.serre_lattice()?;
    ser.check(s)?;
    let base = model.base();
    let kept: Vec<usize> = (0..base.len()).filter(|x| !s.contains(*x)).collect();
    let removed: Vec<usize> = s.iter().collect();
    let quotient = match model {
        CategoryModel::Length(q) => CategoryModel::Length(std::sync::Arc::new(q.delete_vertices(&removed))),
        CategoryModel::Spectral(p) => CategoryModel::Spectral(p.restrict(p.all().difference(s)).0),
        CategoryModel::ExactSub(m) => {
            let labels = kept.iter().map(|&i| m.labels()[i].clone()).collect();
            let simples = kept.iter().map(|&i| m.simples()[i].clone()).collect();
            CategoryModel::ExactSub(ExactSubModel::new(m.ambient().clone(), labels, simples)?)
        }
    };
    let qser = quotient.serre_lattice()?;
    let lift = |e: ElemSet| e.iter().map(|i| kept[i]).collect::<ElemSet>().union(s);
    let embedding: Vec<(ElemSet, ElemSet)> = qser.elements().iter().map(|&e| (e, lift(e))).collect();

    let interval: BTreeSet<ElemSet> = ser.interval(s, ser.top()).into_iter().collect();
    let images: BTreeSet<ElemSet> = embedding.iter().map(|&(_, a)| a).collect();
    let preserves = embedding.iter().all(|&(x, fx)| {
        embedding
            .iter()
            .all(|&(y, fy)| lift(x.union(y)) == fx.union(fy) && lift(x.intersection(y)) == fx.intersection(fy))
    });
    let interval_isomorphism = images == interval && images.len() == embedding.len() && preserves;

    let zariski_topologies_agree = zariski_agrees(&ser, &qser, &embedding)?;
    Ok(QuotientModel {
        model: quotient,
        kept,
        embedding,
        certificate: QuotientCertificate {
            interval_size: interval.len(),
            interval_isomorphism,
            zariski_topologies_agree,
        },
    })
}

/// Compares the Zariski opens of `Ser(A)` restricted to the embedded copy of
/// `Ser(A/S)` with the Zariski opens of `Ser(A/S)`, as families of subsets of
/// the quotient's elements.
fn zariski_agrees(ser: &Frame, qser: &Frame, embedding: &[(ElemSet, ElemSet)]) -> Result<bool> {
    let big = zariski_of_frame(ser.clone())?;
    let small = zariski_of_frame(qser.clone())?;
    // Quotient element index → ambient element index.
    let to_ambient: Vec<usize> = embedding
        .iter()
        .map(|&(q, a)| {
            debug_assert_eq!(qser.index_of(q), embedding.iter().position(|&(x, _)| x == q));
            ser.index_of(a).expect("embedding lands in the lattice")
        })
        .collect();
    let induced: BTreeSet<ElemSet> = big
        .opens()
        .iter()
        .map(|u| (0..to_ambient.len()).filter(|&i| u.contains(to_ambient[i])).collect())
        .collect();
    let intrinsic: BTreeSet<ElemSet> = small.opens().iter().copied().collect();
    Ok(induced == intrinsic)
}

/// The three element-level descriptions of a Serre-local object, plus the
/// composition-chain description when the model has objects.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SerreLocalCharacterizations {
    /// The join of the Serre subcategories strictly below `⟨A⟩` is strictly below it.
    pub proper_join: bool,
    /// `[A]` is prime in the Zariski locale.
    pub zariski_prime: bool,
    /// There is exactly one maximal Serre subcategory not containing `A`.
    pub unique_maximal_avoiding: bool,
    /// Every composition chain of `A` has a factor generating `⟨A⟩`.
    pub chain_condition: Option<bool>,
}

impl SerreLocalCharacterizations {
    pub fn agree(&self) -> bool {
        self.proper_join == self.zariski_prime
            && self.zariski_prime == self.unique_maximal_avoiding
            && self.chain_condition.is_none_or(|c| c == self.proper_join)
    }
}

fn below_join(ser: &Frame, a: ElemSet) -> ElemSet {
    ser.join_all(ser.elements().iter().copied().filter(|s| s.is_proper_subset(a)))
}

/// Maximal elements of `{S : a ⊄ S}`.
fn maximal_not_above(ser: &Frame, a: ElemSet) -> Vec<ElemSet> {
    let avoid: Vec<ElemSet> = ser.elements().iter().copied().filter(|s| !a.is_subset(*s)).collect();
    avoid
        .iter()
        .copied()
        .filter(|s| !avoid.iter().any(|t| s.is_proper_subset(*t)))
        .collect()
}

pub fn serre_local_characterizations(
    model: &CategoryModel,
    obj: &ModelObject,
    bound: usize,
) -> Result<SerreLocalCharacterizations> {
    let a = model.support(obj)?;
    let z = zariski_locale(model)?;
    let proper_join = below_join(&z.ser, a) != a;
    let zariski_prime = z.locale.is_prime(z.basic_open(a)?)?;
    let unique_maximal_avoiding = maximal_not_above(&z.ser, a).len() == 1;
    let chain_condition = match (model, obj) {
        (CategoryModel::Length(_), ModelObject::Rep(r)) => Some(every_chain_has_full_factor(r, bound)?),
        _ => None,
    };
    Ok(SerreLocalCharacterizations {
        proper_join,
        zariski_prime,
        unique_maximal_avoiding,
        chain_condition,
    })
}

/// True iff no chain `0 = A_0 < ... < A_n = A` of subrepresentations has all
/// factors supported on a proper subset of `supp A`. Decided by reachability
/// over the subrepresentation poset.
fn every_chain_has_full_factor(a: &Representation, bound: usize) -> Result<bool> {
    let subs = subrepresentations(a, bound)?;
    let full = a.support();
    let support_of = |dims: Vec<usize>| -> ElemSet {
        dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| v).collect()
    };
    // reach[i]: some chain from 0 to subs[i] uses only small factors.
    let mut reach = vec![false; subs.len()];
    for i in 0..subs.len() {
        if subs[i].total_dim() == 0 {
            reach[i] = true;
            continue;
        }
        reach[i] = (0..i).any(|j| {
            reach[j]
                && subs[j].total_dim() < subs[i].total_dim()
                && subs[j].is_within(&subs[i])
                && {
                    let d: Vec<usize> = subs[i].dims().iter().zip(subs[j].dims()).map(|(x, y)| x - y).collect();
                    support_of(d) != full
                }
        });
    }
    Ok(!reach[subs.len() - 1])
}

/// Serre-locality; all available characterizations must agree.
pub fn is_serre_local(model: &CategoryModel, obj: &ModelObject, bound: usize) -> Result<bool> {
    let c = serre_local_characterizations(model, obj, bound)?;
    if !c.agree() {
        return Err(invariant("Serre-local characterizations agree", format!("{c:?}")));
    }
    Ok(c.proper_join)
}

/// Serre subcategories `⟨A⟩` with `A` Serre-local.
pub fn serre_local_basics(model: &CategoryModel) -> Result<Vec<ElemSet>> {
    let z = zariski_locale(model)?;
    let mut out = Vec::new();
    for &a in z.ser.elements() {
        let by_join = below_join(&z.ser, a) != a;
        let by_prime = z.locale.is_prime(z.basic_open(a)?)?;
        if by_join != by_prime {
            return Err(invariant(
                "Serre-local characterizations agree",
                format!("element {}", z.ser.describe(a)),
            ));
        }
        if by_join {
            out.push(a);
        }
    }
    Ok(out)
}

fn length_rep<'a>(model: &CategoryModel, a: &'a Representation) -> Result<&'a Representation> {
    match model {
        CategoryModel::Length(q) if a.quiver() == q => Ok(a),
        CategoryModel::Length(_) => Err(Error::ObjectMismatch("representation over another quiver".into())),
        _ => Err(Error::Unsupported(format!(
            "object-level exact sequences are not available in a {} model",
            model.kind()
        ))),
    }
}

/// `A_S` simple, decided by counting composition factors outside `S`.
pub fn s_simple_by_support(model: &CategoryModel, a: &Representation, s: ElemSet) -> Result<bool> {
    let a = length_rep(model, a)?;
    model.serre_lattice()?.check(s)?;
    let outside: usize = a
        .dims()
        .iter()
        .enumerate()
        .filter(|(v, _)| !s.contains(*v))
        .map(|(_, d)| d)
        .sum();
    Ok(outside == 1)
}

/// `A ∉ S`, and for every subobject `A'` exactly one of `A'`, `A/A'` lies in `S`.
pub fn s_simple_by_subobjects(model: &CategoryModel, a: &Representation, s: ElemSet, bound: usize) -> Result<bool> {
    let a = length_rep(model, a)?;
    model.serre_lattice()?.check(s)?;
    let in_s = |dims: &[usize]| dims.iter().enumerate().all(|(v, &d)| d == 0 || s.contains(v));
    if in_s(a.dims()) {
        return Ok(false);
    }
    for sub in subrepresentations(a, bound)? {
        let d = sub.dims();
        let q: Vec<usize> = a.dims().iter().zip(&d).map(|(x, y)| x - y).collect();
        if in_s(&d) == in_s(&q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S`-simplicity; the two criteria must agree.
pub fn is_s_simple(model: &CategoryModel, a: &Representation, s: ElemSet, bound: usize) -> Result<bool> {
    let by_support = s_simple_by_support(model, a, s)?;
    let by_subobjects = s_simple_by_subobjects(model, a, s, bound)?;
    if by_support != by_subobjects {
        return Err(invariant(
            "S-simplicity by supports agrees with subobject enumeration",
            format!("dims {:?}, S = {s:?}", a.dims()),
        ));
    }
    Ok(by_support)
}

/// `S_{<A}`: join of the Serre subcategories strictly below `⟨A⟩`.
pub fn serre_below(model: &CategoryModel, obj: &ModelObject) -> Result<ElemSet> {
    let ser = model.serre_lattice()?;
    Ok(below_join(&ser, model.support(obj)?))
}

pub fn is_quasisimple(model: &CategoryModel, a: &Representation, bound: usize) -> Result<bool> {
    let below = serre_below(model, &ModelObject::Rep(a.clone()))?;
    is_s_simple(model, a, below, bound)
}

/// Serre subcategories maximal among those not containing `obj`; each is
/// certified prime.
pub fn maximal_avoiding(model: &CategoryModel, obj: &ModelObject) -> Result<Vec<ElemSet>> {
    let ser = model.serre_lattice()?;
    let a = model.support(obj)?;
    let out = maximal_not_above(&ser, a);
    for &m in &out {
        if !ser.is_prime(m)? {
            return Err(invariant(
                "maximal Serre subcategory avoiding an object is prime",
                ser.describe(m),
            ));
        }
    }
    Ok(out)
}

/// For `A` `S`-simple: nothing lies strictly between `S` and `S ∨ ⟨A⟩`.
pub fn no_intermediate_check(model: &CategoryModel, a: &Representation, s: ElemSet, bound: usize) -> Result<bool> {
    if !is_s_simple(model, a, s, bound)? {
        return Err(Error::Precondition("object is not S-simple".into()));
    }
    let ser = model.serre_lattice()?;
    let hi = s.union(a.support());
    Ok(ser
        .interval(s, hi)
        .iter()
        .all(|&t| t == s || t == hi))
}

/// One row of the point-indexed correspondence between Ziegler and Zariski primes.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GenericPointRow {
    pub point: String,
    /// Prime open of the Ziegler space whose closed complement has this generic point.
    pub ziegler_prime: ElemSet,
    /// The same for the Zariski space.
    pub zariski_prime: ElemSet,
}

/// Points index both the Ziegler primes and the Zariski primes whose
/// irreducible closed complements have generic points.
///
/// On a spectral model the Ziegler opens are the up-sets and the Zariski
/// opens are the down-sets. Each topology's primes are computed on their own
/// and matched through generic points.
pub fn generic_point_correspondence(model: &CategoryModel) -> Result<Vec<GenericPointRow>> {
    let CategoryModel::Spectral(spec) = model else {
        return Err(Error::Unsupported("points are only available for spectral models".into()));
    };
    let ziegler = alexandrov_poset(spec)?;
    let zariski = alexandrov_poset(&spec.opposite())?;
    let check = "Ziegler and Zariski primes with generic points correspond through points";
    let by_point = |t: &crate::frame::TopologySpace| -> Result<Vec<ElemSet>> {
        let mut slot: Vec<Option<ElemSet>> = vec![None; spec.len()];
        for u in t.prime_opens() {
            let closed = u.complement(spec.len());
            if !t.is_irreducible_closed(closed) {
                return Err(invariant(check, format!("complement of prime {u:?} is reducible")));
            }
            let Some(g) = t.generic_point(closed) else {
                continue;
            };
            if slot[g].replace(u).is_some() {
                return Err(invariant(check, format!("point {g} is generic twice")));
            }
        }
        slot.into_iter()
            .enumerate()
            .map(|(x, u)| u.ok_or_else(|| invariant(check, format!("point {x} is generic for no prime"))))
            .collect()
    };
    let zg = by_point(&ziegler)?;
    let zr = by_point(&zariski)?;
    // Ziegler opens are the Serre subcategories; its primes must be Sp(A).
    let sp: BTreeSet<ElemSet> = model.serre_lattice()?.primes().into_iter().collect();
    if zg.iter().copied().collect::<BTreeSet<_>>() != sp {
        return Err(invariant(check, "Ziegler primes differ from the primes of Ser(A)"));
    }
    Ok((0..spec.len())
        .map(|x| GenericPointRow {
            point: spec.label(x).to_string(),
            ziegler_prime: zg[x],
            zariski_prime: zr[x],
        })
        .collect())
}
