//! JSON fixture documents and the bundled fixture set.
//!
//! A document is either a model (`"kind"`: `length`, `spectral`, `exactsub`)
//! or a functor (`inclusion`, `quotient`, `composite`, `explicit`). A bare
//! `{"elements", "covers"}` poset is read as a spectral model. Models inside
//! a functor document are given inline or by name; names resolve to bundled
//! fixtures, or to sibling files when loading from disk.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::commspec::SpectralPoset;
use crate::error::{Error, Result};
use crate::frame::{ElemSet, FinitePoset};
use crate::functor::ExactFunctorModel;
use crate::quiverrep::{BoundQuiver, Representation};
use crate::serre::{CategoryModel, ExactSubModel, ModelObject};

/// Bundled fixtures as `(name, json)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("chain2", include_str!("../../../fixtures/chain2.json")),
    ("fan3", include_str!("../../../fixtures/fan3.json")),
    ("fan3-coarse-fg", include_str!("../../../fixtures/fan3-coarse-fg.json")),
    ("diamond", include_str!("../../../fixtures/diamond.json")),
    ("antichain2", include_str!("../../../fixtures/antichain2.json")),
    ("a2-quiver", include_str!("../../../fixtures/a2-quiver.json")),
    ("a3-sink", include_str!("../../../fixtures/a3-sink.json")),
    ("a2-inclusion", include_str!("../../../fixtures/a2-inclusion.json")),
    ("a3-sink-composite", include_str!("../../../fixtures/a3-sink-composite.json")),
];

#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub model: CategoryModel,
    /// Present for spectral models, with their ideal families.
    pub spectral: Option<SpectralPoset>,
    /// Named objects, sorted by name.
    pub objects: Vec<(String, ModelObject)>,
}

impl LoadedModel {
    pub fn object(&self, name: &str) -> Result<&ModelObject> {
        self.objects
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// Representations among the named objects.
    pub fn reps(&self) -> Vec<(&str, &Representation)> {
        self.objects
            .iter()
            .filter_map(|(n, o)| match o {
                ModelObject::Rep(r) => Some((n.as_str(), r)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Model(LoadedModel),
    Functor(ExactFunctorModel),
}

impl Fixture {
    pub fn as_model(&self) -> Option<&LoadedModel> {
        match self {
            Fixture::Model(m) => Some(m),
            Fixture::Functor(_) => None,
        }
    }

    pub fn as_functor(&self) -> Option<&ExactFunctorModel> {
        match self {
            Fixture::Functor(f) => Some(f),
            Fixture::Model(_) => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
    #[serde(default)]
    relations: Vec<Vec<TermDoc>>,
    #[serde(rename = "char")]
    characteristic: u8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: String,
    src: String,
    dst: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coef: i64,
    path: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedRepDoc {
    name: String,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Doc {
    Length {
        quiver: QuiverDoc,
        #[serde(default)]
        objects: BTreeMap<String, RepDoc>,
    },
    Spectral {
        elements: Vec<String>,
        #[serde(default)]
        covers: Vec<(String, String)>,
        fg: Option<Vec<Vec<String>>>,
        pp: Option<Vec<Vec<String>>>,
        /// Named objects `R/I`, given by generators of `V(I)`.
        #[serde(default)]
        objects: BTreeMap<String, Vec<String>>,
    },
    Exactsub {
        quiver: QuiverDoc,
        simples: Vec<NamedRepDoc>,
        #[serde(default)]
        objects: BTreeMap<String, RepDoc>,
    },
    Inclusion {
        source: Box<Ref>,
        target: Option<Box<Ref>>,
    },
    Quotient {
        source: Box<Ref>,
        by: Vec<String>,
    },
    Composite {
        first: Box<Ref>,
        second: Box<Ref>,
    },
    Explicit {
        source: Box<Ref>,
        target: Box<Ref>,
        /// Source base label to generators of `⟨f x⟩` in the target.
        object_map: BTreeMap<String, Vec<String>>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Ref {
    Name(String),
    Inline(Doc),
}

/// Looks up referenced documents by name.
pub trait Resolver {
    fn resolve(&self, name: &str) -> Result<String>;
}

/// Resolves names against the bundled set only.
pub struct BundledResolver;

impl Resolver for BundledResolver {
    fn resolve(&self, name: &str) -> Result<String> {
        bundled_source(name).map(str::to_string)
    }
}

/// Resolves names to `<dir>/<name>` or `<dir>/<name>.json`, then the bundled set.
pub struct DirResolver<'a>(pub &'a Path);

impl Resolver for DirResolver<'_> {
    fn resolve(&self, name: &str) -> Result<String> {
        for candidate in [self.0.join(name), self.0.join(format!("{name}.json"))] {
            if candidate.is_file() {
                return std::fs::read_to_string(&candidate)
                    .map_err(|e| Error::Fixture(format!("{}: {e}", candidate.display())));
            }
        }
        bundled_source(name).map(str::to_string)
    }
}

pub fn bundled_source(name: &str) -> Result<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Fixture(format!("no fixture named `{name}`")))
}

pub fn bundled(name: &str) -> Result<Fixture> {
    parse(bundled_source(name)?, &BundledResolver)
}

/// Every bundled fixture, in a fixed order.
pub fn all_bundled() -> Result<Vec<(&'static str, Fixture)>> {
    BUNDLED.iter().map(|(n, s)| Ok((*n, parse(s, &BundledResolver)?))).collect()
}

pub fn load_path(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    parse(&text, &DirResolver(dir))
}

pub fn parse(json: &str, resolver: &dyn Resolver) -> Result<Fixture> {
    build(read_doc(json).map_err(Error::Fixture)?, resolver, 0)
}

fn read_doc(json: &str) -> std::result::Result<Doc, String> {
    let mut value: Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    if let Value::Object(map) = &mut value {
        if !map.contains_key("kind") && map.contains_key("elements") {
            map.insert("kind".into(), Value::String("spectral".into()));
        }
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

/// Bounds reference chains, so a self-referencing file cannot loop.
const MAX_DEPTH: usize = 16;

fn resolve(r: Ref, resolver: &dyn Resolver, depth: usize) -> Result<Fixture> {
    if depth > MAX_DEPTH {
        return Err(Error::Fixture("fixture references nest too deeply".into()));
    }
    match r {
        Ref::Inline(doc) => build(doc, resolver, depth + 1),
        Ref::Name(name) => {
            let text = resolver.resolve(&name)?;
            let doc = read_doc(&text).map_err(|e| Error::Fixture(format!("{name}: {e}")))?;
            build(doc, resolver, depth + 1)
        }
    }
}

fn resolve_model(r: Ref, resolver: &dyn Resolver, depth: usize) -> Result<LoadedModel> {
    match resolve(r, resolver, depth)? {
        Fixture::Model(m) => Ok(m),
        Fixture::Functor(_) => Err(Error::Fixture("expected a model, found a functor".into())),
    }
}

fn resolve_functor(r: Ref, resolver: &dyn Resolver, depth: usize) -> Result<ExactFunctorModel> {
    match resolve(r, resolver, depth)? {
        Fixture::Functor(f) => Ok(f),
        Fixture::Model(_) => Err(Error::Fixture("expected a functor, found a model".into())),
    }
}

fn build_quiver(q: QuiverDoc) -> Result<Arc<BoundQuiver>> {
    let arrows: Vec<(String, String, String)> = q.arrows.into_iter().map(|a| (a.name, a.src, a.dst)).collect();
    let relations: Vec<Vec<(i64, Vec<String>)>> = q
        .relations
        .into_iter()
        .map(|r| r.into_iter().map(|t| (t.coef, t.path)).collect())
        .collect();
    Ok(Arc::new(BoundQuiver::new(q.vertices, &arrows, &relations, q.characteristic)?))
}

fn build_rep(
    quiver: &Arc<BoundQuiver>,
    dims: BTreeMap<String, usize>,
    mut maps: BTreeMap<String, Vec<Vec<i64>>>,
) -> Result<Representation> {
    let mut d = vec![0; quiver.num_vertices()];
    for (v, n) in dims {
        d[quiver.vertex_index(&v)?] = n;
    }
    let mut ints = Vec::new();
    for a in quiver.arrows() {
        ints.push(
            maps.remove(&a.name)
                .unwrap_or_else(|| vec![vec![0; d[a.src]]; d[a.dst]]),
        );
    }
    if let Some(name) = maps.keys().next() {
        return Err(Error::UnknownLabel(name.clone()));
    }
    Representation::from_int_maps(quiver.clone(), d, &ints)
}

fn labels_to_set(p: &FinitePoset, labels: &[String]) -> Result<ElemSet> {
    p.set_of(labels).map_err(|_| {
        let bad = labels.iter().find(|l| p.set_of(&[l.as_str()]).is_err());
        Error::UnknownLabel(bad.cloned().unwrap_or_default())
    })
}

fn build(doc: Doc, resolver: &dyn Resolver, depth: usize) -> Result<Fixture> {
    Ok(match doc {
        Doc::Length { quiver, objects } => {
            let q = build_quiver(quiver)?;
            let objects = objects
                .into_iter()
                .map(|(n, r)| Ok((n, ModelObject::Rep(build_rep(&q, r.dims, r.maps)?))))
                .collect::<Result<_>>()?;
            Fixture::Model(LoadedModel {
                model: CategoryModel::Length(q),
                spectral: None,
                objects,
            })
        }
        Doc::Spectral {
            elements,
            covers,
            fg,
            pp,
            objects,
        } => {
            let spec = FinitePoset::from_covers(elements, &covers)?;
            let family = |f: Option<Vec<Vec<String>>>| -> Result<Option<Vec<ElemSet>>> {
                f.map(|gs| gs.iter().map(|g| labels_to_set(&spec, g)).collect()).transpose()
            };
            let fg = family(fg)?;
            let pp = family(pp)?;
            let objects = objects
                .into_iter()
                .map(|(n, g)| Ok((n, ModelObject::Generators(labels_to_set(&spec, &g)?))))
                .collect::<Result<_>>()?;
            let sp = SpectralPoset::new(spec, fg.as_deref(), pp.as_deref())?;
            Fixture::Model(LoadedModel {
                model: sp.model(),
                spectral: Some(sp),
                objects,
            })
        }
        Doc::Exactsub { quiver, simples, objects } => {
            let q = build_quiver(quiver)?;
            let mut labels = Vec::new();
            let mut reps = Vec::new();
            for s in simples {
                reps.push(build_rep(&q, s.dims, s.maps)?);
                labels.push(s.name);
            }
            let sub = ExactSubModel::new(q.clone(), labels, reps)?;
            let objects = objects
                .into_iter()
                .map(|(n, r)| Ok((n, ModelObject::Rep(build_rep(&q, r.dims, r.maps)?))))
                .collect::<Result<Vec<_>>>()?;
            let model = CategoryModel::ExactSub(sub);
            for (_, o) in &objects {
                model.support(o)?;
            }
            Fixture::Model(LoadedModel {
                model,
                spectral: None,
                objects,
            })
        }
        Doc::Inclusion { source, target } => {
            let src = resolve_model(*source, resolver, depth)?;
            let CategoryModel::ExactSub(sub) = src.model else {
                return Err(Error::InvalidFunctor("an inclusion starts at an exact subcategory".into()));
            };
            if let Some(t) = target {
                let t = resolve_model(*t, resolver, depth)?;
                match &t.model {
                    CategoryModel::Length(q) if q == sub.ambient() => {}
                    _ => {
                        return Err(Error::InvalidFunctor(
                            "inclusion target is not the ambient category of the source".into(),
                        ))
                    }
                }
            }
            Fixture::Functor(ExactFunctorModel::inclusion(sub)?)
        }
        Doc::Quotient { source, by } => {
            let src = resolve_model(*source, resolver, depth)?;
            let s = labels_to_set(&src.model.base(), &by)?;
            Fixture::Functor(ExactFunctorModel::quotient(&src.model, s)?)
        }
        Doc::Composite { first, second } => {
            let f = resolve_functor(*first, resolver, depth)?;
            let g = resolve_functor(*second, resolver, depth)?;
            Fixture::Functor(ExactFunctorModel::composite(f, g)?)
        }
        Doc::Explicit {
            source,
            target,
            mut object_map,
        } => {
            let src = resolve_model(*source, resolver, depth)?;
            let tgt = resolve_model(*target, resolver, depth)?;
            let (sb, tb) = (src.model.base(), tgt.model.base());
            let mut images = Vec::new();
            for x in sb.labels() {
                let gens = object_map
                    .remove(x)
                    .ok_or_else(|| Error::InvalidFunctor(format!("no image given for `{x}`")))?;
                images.push(tb.up_closure(labels_to_set(&tb, &gens)?));
            }
            if let Some(extra) = object_map.keys().next() {
                return Err(Error::UnknownLabel(extra.clone()));
            }
            Fixture::Functor(ExactFunctorModel::explicit(src.model, tgt.model, images)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse() {
        let all = all_bundled().unwrap();
        assert_eq!(all.len(), BUNDLED.len());
        let chain = bundled("chain2").unwrap();
        assert_eq!(chain.as_model().unwrap().model.serre_lattice().unwrap().len(), 3);
        assert!(bundled("a3-sink-composite").unwrap().as_functor().is_some());
    }

    #[test]
    fn bare_poset_is_spectral() {
        let f = parse(r#"{"elements": ["a", "b"], "covers": [["a", "b"]]}"#, &BundledResolver).unwrap();
        assert_eq!(f.as_model().unwrap().model.kind(), "spectral");
    }

    #[test]
    fn malformed_documents_rejected() {
        for bad in [
            "{",
            r#"{"kind": "cubic"}"#,
            r#"{"elements": ["a"], "covers": [["a", "z"]]}"#,
            r#"{"kind": "length", "quiver": {"vertices": ["1"], "char": 4}}"#,
            r#"{"kind": "length", "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "src": "1", "dst": "2"}], "char": 2},
                "objects": {"X": {"dims": {"1": 1, "2": 1}, "maps": {"a": [[1, 0]]}}}}"#,
            r#"{"kind": "quotient", "source": "nowhere", "by": []}"#,
            r#"{"kind": "quotient", "source": "chain2", "by": ["g"]}"#,
        ] {
            assert!(parse(bad, &BundledResolver).is_err(), "{bad}");
        }
    }

    #[test]
    fn explicit_functor_document() {
        let doc = r#"{"kind": "explicit", "source": "chain2", "target": "chain2",
                      "object_map": {"g": ["g"], "m": ["m"]}}"#;
        let f = parse(doc, &BundledResolver).unwrap();
        assert_eq!(f.as_functor().unwrap().images().len(), 2);
    }
}
