//! Exact functors between category models and the maps `Ser(f)` they induce.
//!
//! An exact functor is determined on Serre subcategories by where it sends
//! the basic objects (one per base element of the source): `f^{-1}T` is the
//! set of base elements `x` with `⟨f x⟩ ⊆ T`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{ElemSet, Frame};
use crate::quiverrep::Representation;
use crate::serre::{quotient_model, CategoryModel, ExactSubModel, ModelObject, SerreSub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctorKind {
    Identity,
    Inclusion,
    Quotient,
    Composite,
    Explicit,
}

#[derive(Clone, Debug)]
enum ObjectMap {
    Identity,
    Inclusion,
    Quotient { removed: ElemSet, kept: Vec<usize> },
    Composite(Box<ExactFunctorModel>, Box<ExactFunctorModel>),
    Explicit,
}

#[derive(Clone, Debug)]
pub struct ExactFunctorModel {
    source: CategoryModel,
    target: CategoryModel,
    kind: FunctorKind,
    /// `⟨f x⟩` in `Ser(target)` for each base element `x` of the source.
    images: Vec<ElemSet>,
    map: ObjectMap,
}

fn same_model(a: &CategoryModel, b: &CategoryModel) -> bool {
    match (a, b) {
        (CategoryModel::Length(p), CategoryModel::Length(q)) => p == q,
        (CategoryModel::Spectral(p), CategoryModel::Spectral(q)) => p == q,
        (CategoryModel::ExactSub(m), CategoryModel::ExactSub(n)) => {
            m.ambient() == n.ambient() && m.labels() == n.labels() && m.simples() == n.simples()
        }
        _ => false,
    }
}

impl ExactFunctorModel {
    fn build(source: CategoryModel, target: CategoryModel, kind: FunctorKind, map: ObjectMap) -> Result<Self> {
        let mut f = ExactFunctorModel {
            source,
            target,
            kind,
            images: vec![],
            map,
        };
        let base = f.source.base();
        f.images = (0..base.len())
            .map(|x| {
                let obj = f.source.generator_of(base.up(x))?;
                f.target.support(&f.apply(&obj)?)
            })
            .collect::<Result<_>>()?;
        f.validate()?;
        Ok(f)
    }

    pub fn identity(model: CategoryModel) -> Result<Self> {
        Self::build(model.clone(), model, FunctorKind::Identity, ObjectMap::Identity)
    }

    /// Inclusion of a semisimple exact subcategory into its ambient length category.
    pub fn inclusion(sub: ExactSubModel) -> Result<Self> {
        let target = CategoryModel::Length(sub.ambient().clone());
        Self::build(CategoryModel::ExactSub(sub), target, FunctorKind::Inclusion, ObjectMap::Inclusion)
    }

    /// The localisation `A -> A/S`.
    pub fn quotient(model: &CategoryModel, s: ElemSet) -> Result<Self> {
        let q = quotient_model(model, s)?;
        Self::build(
            model.clone(),
            q.model,
            FunctorKind::Quotient,
            ObjectMap::Quotient {
                removed: s,
                kept: q.kept,
            },
        )
    }

    /// `second ∘ first`.
    pub fn composite(first: ExactFunctorModel, second: ExactFunctorModel) -> Result<Self> {
        if !same_model(&first.target, &second.source) {
            return Err(Error::InvalidFunctor(
                "target of the first functor is not the source of the second".into(),
            ));
        }
        let source = first.source.clone();
        let target = second.target.clone();
        Self::build(
            source,
            target,
            FunctorKind::Composite,
            ObjectMap::Composite(Box::new(first), Box::new(second)),
        )
    }

    /// A functor into a spectral model given only by `⟨f x⟩` for each source base element.
    pub fn explicit(source: CategoryModel, target: CategoryModel, images: Vec<ElemSet>) -> Result<Self> {
        if !matches!(target, CategoryModel::Spectral(_)) {
            return Err(Error::InvalidFunctor("explicit object maps need a spectral target".into()));
        }
        if images.len() != source.base().len() {
            return Err(Error::InvalidFunctor("one image per source base element is required".into()));
        }
        let f = ExactFunctorModel {
            source,
            target,
            kind: FunctorKind::Explicit,
            images,
            map: ObjectMap::Explicit,
        };
        f.validate()?;
        Ok(f)
    }

    /// Images are Serre subcategories, and `x <= y` forces `⟨f y⟩ ⊆ ⟨f x⟩`
    /// since `⟨y⟩ ⊆ ⟨x⟩` in the source.
    fn validate(&self) -> Result<()> {
        let tbase = self.target.base();
        let sbase = self.source.base();
        for (x, &im) in self.images.iter().enumerate() {
            if !im.is_subset(tbase.all()) || !tbase.is_up_set(im) {
                return Err(Error::InvalidFunctor(format!(
                    "image of `{}` is not a Serre subcategory",
                    sbase.label(x)
                )));
            }
            for y in sbase.up(x).iter() {
                if !self.images[y].is_subset(im) {
                    return Err(Error::InvalidFunctor(format!(
                        "images of `{}` and `{}` are not nested",
                        sbase.label(x),
                        sbase.label(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &CategoryModel {
        &self.source
    }

    pub fn target(&self) -> &CategoryModel {
        &self.target
    }

    pub fn kind(&self) -> FunctorKind {
        self.kind
    }

    pub fn images(&self) -> &[ElemSet] {
        &self.images
    }

    /// The object `fA`.
    pub fn apply(&self, obj: &ModelObject) -> Result<ModelObject> {
        // Reject objects that do not belong to the source.
        let support = self.source.support(obj)?;
        match &self.map {
            ObjectMap::Identity => Ok(obj.clone()),
            ObjectMap::Inclusion => {
                let CategoryModel::ExactSub(sub) = &self.source else {
                    unreachable!("inclusions start at exact subcategories")
                };
                Ok(ModelObject::Rep(match obj {
                    ModelObject::Rep(r) => r.clone(),
                    ModelObject::Semisimple(m) => sub.realize(m)?,
                    ModelObject::Generators(_) => unreachable!("support() rejects generators here"),
                }))
            }
            ObjectMap::Quotient { removed, kept } => match (&self.source, &self.target, obj) {
                (CategoryModel::Length(_), CategoryModel::Length(tq), ModelObject::Rep(r)) => {
                    let rem: Vec<usize> = removed.iter().collect();
                    Ok(ModelObject::Rep(r.delete_vertices(tq.clone(), &rem)))
                }
                (CategoryModel::ExactSub(sub), _, ModelObject::Rep(r)) => {
                    let m = sub.multiplicities(r)?;
                    Ok(ModelObject::Semisimple(kept.iter().map(|&i| m[i]).collect()))
                }
                (_, _, ModelObject::Semisimple(m)) => Ok(ModelObject::Semisimple(kept.iter().map(|&i| m[i]).collect())),
                (CategoryModel::Spectral(_), CategoryModel::Spectral(tp), ModelObject::Generators(_)) => {
                    let survivors: ElemSet = kept
                        .iter()
                        .enumerate()
                        .filter(|(_, &old)| support.contains(old))
                        .map(|(new, _)| new)
                        .collect();
                    Ok(ModelObject::Generators(tp.minimal(survivors)))
                }
                _ => Err(Error::ObjectMismatch("object cannot be localised in this model".into())),
            },
            ObjectMap::Composite(f, g) => g.apply(&f.apply(obj)?),
            ObjectMap::Explicit => {
                let CategoryModel::Spectral(tp) = &self.target else {
                    unreachable!("checked on construction")
                };
                let image = support
                    .iter()
                    .fold(ElemSet::EMPTY, |acc, x| acc.union(self.images[x]));
                Ok(ModelObject::Generators(tp.minimal(image)))
            }
        }
    }

    /// `Ser(f)(t) = f^{-1} t`.
    pub fn pullback(&self, t: ElemSet) -> Result<ElemSet> {
        self.target.serre_lattice()?.check(t)?;
        Ok(self
            .images
            .iter()
            .enumerate()
            .filter(|(_, im)| im.is_subset(t))
            .map(|(x, _)| x)
            .collect())
    }
}

/// `f^{-1}(S ∨ S') ≠ f^{-1}S ∨ f^{-1}S'`.
#[derive(Clone, Debug, Serialize)]
pub struct JoinFailure {
    pub s: SerreSub,
    pub t: SerreSub,
    pub pullback_of_join: SerreSub,
    pub join_of_pullbacks: SerreSub,
    /// A source object in the first but not the second.
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub preserves_order: bool,
    /// Binary meets and the empty meet (top).
    pub preserves_meets: bool,
    pub join_failures: Vec<JoinFailure>,
    /// Primes of the target lattice whose pullback is not prime.
    pub sp_failures: Vec<SerreSub>,
}

pub fn pullback_report(f: &ExactFunctorModel) -> Result<PullbackReport> {
    let tser = f.target.serre_lattice()?;
    let sser = f.source.serre_lattice()?;
    let els = tser.elements();
    let pulled: Vec<ElemSet> = els.iter().map(|&t| f.pullback(t)).collect::<Result<_>>()?;
    let mut preserves_order = true;
    let mut preserves_meets = f.pullback(tser.top())? == sser.top();
    let mut join_failures = Vec::new();
    for i in 0..els.len() {
        for j in 0..els.len() {
            let (a, b) = (els[i], els[j]);
            if a.is_subset(b) && !pulled[i].is_subset(pulled[j]) {
                preserves_order = false;
            }
            if f.pullback(a.intersection(b))? != pulled[i].intersection(pulled[j]) {
                preserves_meets = false;
            }
            if i < j {
                let pj = f.pullback(a.union(b))?;
                let jp = pulled[i].union(pulled[j]);
                if pj != jp {
                    let x = pj.difference(jp).first().expect("join of pullbacks lies below");
                    join_failures.push(JoinFailure {
                        s: f.target.decode(a),
                        t: f.target.decode(b),
                        pullback_of_join: f.source.decode(pj),
                        join_of_pullbacks: f.source.decode(jp),
                        witness: f.source.simple_name(x),
                    });
                }
            }
        }
    }
    let mut sp_failures = Vec::new();
    for t in tser.primes() {
        if !sser.is_prime(f.pullback(t)?)? {
            sp_failures.push(f.target.decode(t));
        }
    }
    Ok(PullbackReport {
        preserves_order,
        preserves_meets,
        join_failures,
        sp_failures,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub basics_checked: usize,
    /// `Ser(f)^{-1}[A] = [fA]` for every basic `[A]`.
    pub basic_preimages: bool,
    /// Preimages of unions of basics are the unions `⋃[fA]` and are Zariski-open.
    pub unions: bool,
    /// Preimages of intersections of basics are `⋂[fA]` and are basic closed in the Ziegler sense.
    pub intersections: bool,
}

impl ContinuityCertificate {
    pub fn passed(&self) -> bool {
        self.basic_preimages && self.unions && self.intersections
    }
}

/// Largest source lattice for which every family of basics is enumerated.
const MAX_BASIC_FAMILY: usize = 16;

/// `[A]` as a set of indices into `ser.elements()`.
fn basic(ser: &Frame, a: ElemSet) -> ElemSet {
    ser.elements()
        .iter()
        .enumerate()
        .filter(|(_, s)| a.is_subset(**s))
        .map(|(i, _)| i)
        .collect()
}

pub fn continuity_check(f: &ExactFunctorModel) -> Result<ContinuityCertificate> {
    let sser = f.source.serre_lattice()?;
    let tser = f.target.serre_lattice()?;
    if sser.len() > MAX_BASIC_FAMILY {
        return Err(Error::SizeGuard {
            what: "source Serre lattice for continuity check",
            actual: sser.len(),
            limit: MAX_BASIC_FAMILY,
        });
    }
    let pulled: Vec<ElemSet> = tser.elements().iter().map(|&t| f.pullback(t)).collect::<Result<_>>()?;
    let preimage = |u: ElemSet| -> ElemSet {
        // u: indices into sser.elements().
        (0..pulled.len())
            .filter(|&t| u.contains(sser.index_of(pulled[t]).expect("pullback is a Serre subcategory")))
            .collect()
    };

    let mut basic_preimages = true;
    let mut fa_basics = Vec::new();
    let mut source_basics = Vec::new();
    for &a in sser.elements() {
        let obj = f.source.generator_of(a)?;
        let fa = f.target.support(&f.apply(&obj)?)?;
        let want = basic(&tser, fa);
        let src = basic(&sser, a);
        if preimage(src) != want {
            basic_preimages = false;
        }
        source_basics.push(src);
        fa_basics.push((fa, want));
    }

    let t_up = tser.as_poset();
    let mut unions = true;
    let mut intersections = true;
    let n = source_basics.len();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let u = members.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(source_basics[i]));
        let want_u = members.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(fa_basics[i].1));
        let got_u = preimage(u);
        if got_u != want_u || !t_up.is_up_set(got_u) {
            unions = false;
        }
        let all_s = ElemSet::full(sser.len());
        let all_t = ElemSet::full(tser.len());
        let c = members.iter().fold(all_s, |acc, &i| acc.intersection(source_basics[i]));
        let want_c = members.iter().fold(all_t, |acc, &i| acc.intersection(fa_basics[i].1));
        let got_c = preimage(c);
        // An intersection of basics is again basic: [⋁ fA].
        let joined = members.iter().fold(ElemSet::EMPTY, |acc, &i| acc.union(fa_basics[i].0));
        if got_c != want_c || got_c != basic(&tser, joined) {
            intersections = false;
        }
    }
    Ok(ContinuityCertificate {
        basics_checked: n,
        basic_preimages,
        unions,
        intersections,
    })
}

/// `Ser(g ∘ f) = Ser(f) ∘ Ser(g)` on every Serre subcategory of the final target.
pub fn composition_check(composite: &ExactFunctorModel) -> Result<bool> {
    let ObjectMap::Composite(f, g) = &composite.map else {
        return Err(Error::Precondition("functor is not a composite".into()));
    };
    for &t in composite.target.serre_lattice()?.elements() {
        if composite.pullback(t)? != f.pullback(g.pullback(t)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The representation, if the functor is between length-type models.
pub fn apply_rep(f: &ExactFunctorModel, r: &Representation) -> Result<Option<Representation>> {
    Ok(match f.apply(&ModelObject::Rep(r.clone()))? {
        ModelObject::Rep(out) => Some(out),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::frame::FinitePoset;
    use crate::quiverrep::BoundQuiver;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn a2() -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))], &[], 2).unwrap())
    }

    fn a3_sink() -> Arc<BoundQuiver> {
        Arc::new(
            BoundQuiver::new(
                vec![s("0"), s("1"), s("2")],
                &[(s("a"), s("1"), s("0")), (s("b"), s("2"), s("0"))],
                &[],
                2,
            )
            .unwrap(),
        )
    }

    fn a2_inclusion() -> ExactFunctorModel {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 0).unwrap();
        ExactFunctorModel::inclusion(ExactSubModel::new(q, vec![s("T")], vec![p1]).unwrap()).unwrap()
    }

    fn a3_sink_composite() -> ExactFunctorModel {
        let q = a3_sink();
        let p1 = Representation::projective(q.clone(), 1).unwrap();
        let p2 = Representation::projective(q.clone(), 2).unwrap();
        let incl = ExactFunctorModel::inclusion(ExactSubModel::new(q.clone(), vec![s("P1"), s("P2")], vec![p1, p2]).unwrap())
            .unwrap();
        let model = CategoryModel::Length(q);
        let by = model.base().set_of(&["1", "2"]).unwrap();
        let quot = ExactFunctorModel::quotient(&model, by).unwrap();
        ExactFunctorModel::composite(incl, quot).unwrap()
    }

    #[test]
    fn join_failure_in_example_51() {
        let f = a2_inclusion();
        let t = f.target().clone();
        let s1 = t.base().set_of(&["1"]).unwrap();
        let s2 = t.base().set_of(&["2"]).unwrap();
        assert_eq!(f.pullback(s1).unwrap(), ElemSet::EMPTY);
        assert_eq!(f.pullback(s2).unwrap(), ElemSet::EMPTY);
        assert_eq!(f.pullback(s1.union(s2)).unwrap(), ElemSet::singleton(0));
        let r = pullback_report(&f).unwrap();
        assert!(r.preserves_order && r.preserves_meets);
        assert!(r
            .join_failures
            .iter()
            .any(|j| j.s.element == s1 && j.t.element == s2 && j.witness == "T"));
        assert!(continuity_check(&f).unwrap().passed());
    }

    #[test]
    fn sp_failure_in_example_53() {
        let f = a3_sink_composite();
        assert_eq!(f.target().serre_lattice().unwrap().len(), 2);
        assert_eq!(f.pullback(ElemSet::EMPTY).unwrap(), ElemSet::EMPTY);
        let r = pullback_report(&f).unwrap();
        assert!(r.preserves_order && r.preserves_meets);
        assert_eq!(r.sp_failures.len(), 1);
        assert_eq!(r.sp_failures[0].element, ElemSet::EMPTY);
        assert!(continuity_check(&f).unwrap().passed());
        assert!(composition_check(&f).unwrap());
        // Both projectives become the simple at the sink.
        let p1 = Representation::projective(a3_sink(), 1).unwrap();
        let image = apply_rep(&f, &p1).unwrap().unwrap();
        assert_eq!(image.dims(), &[1]);
    }

    #[test]
    fn identity_is_trivial() {
        for model in [
            CategoryModel::Length(a3_sink()),
            CategoryModel::Spectral(FinitePoset::from_covers(vec![s("g"), s("m")], &[("g", "m")]).unwrap()),
        ] {
            let f = ExactFunctorModel::identity(model.clone()).unwrap();
            let r = pullback_report(&f).unwrap();
            assert!(r.join_failures.is_empty() && r.sp_failures.is_empty());
            for &t in model.serre_lattice().unwrap().elements() {
                assert_eq!(f.pullback(t).unwrap(), t);
            }
            assert!(continuity_check(&f).unwrap().passed());
        }
    }

    #[test]
    fn explicit_map_validated() {
        let chain = FinitePoset::from_covers(vec![s("g"), s("m")], &[("g", "m")]).unwrap();
        let src = CategoryModel::Spectral(chain.clone());
        let tgt = CategoryModel::Spectral(chain);
        // g below m, so the image of m must sit inside the image of g.
        let bad = ExactFunctorModel::explicit(src.clone(), tgt.clone(), vec![ElemSet::singleton(1), ElemSet::full(2)]);
        assert!(bad.is_err());
        let ok = ExactFunctorModel::explicit(src, tgt, vec![ElemSet::full(2), ElemSet::singleton(1)]).unwrap();
        assert!(pullback_report(&ok).unwrap().join_failures.is_empty());
    }

    #[test]
    fn spectral_quotient_composes() {
        let d = FinitePoset::from_covers(
            vec![s("g"), s("p1"), s("p2"), s("m")],
            &[("g", "p1"), ("g", "p2"), ("p1", "m"), ("p2", "m")],
        )
        .unwrap();
        let model = CategoryModel::Spectral(d);
        let m = model.base().set_of(&["m"]).unwrap();
        let f = ExactFunctorModel::quotient(&model, m).unwrap();
        let q = f.target().clone();
        let p1 = q.base().set_of(&["p1"]).unwrap();
        let g = ExactFunctorModel::quotient(&q, p1).unwrap();
        let h = ExactFunctorModel::composite(f, g).unwrap();
        assert!(composition_check(&h).unwrap());
        assert!(continuity_check(&h).unwrap().passed());
    }
}
