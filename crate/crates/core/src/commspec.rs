//! Finite spectral posets standing for `Spec(R)` of a commutative noetherian
//! ring, with families of ideals seen through their closed sets `V(I)`.
//!
//! Direction conventions, fixed throughout:
//!
//! | object | order-theoretic shape |
//! |---|---|
//! | `P <= Q` | `P ⊆ Q` as primes; smaller is more generic |
//! | `V(I)`, torsion supports `Y` | up-sets (specialisation-closed) |
//! | `D(I)`, cogenerating sets `X`, `D_τ` | down-sets (generalisation-closed) |
//! | Serre subcategories | up-sets, as torsion supports |
//! | Ziegler opens on `{E_P}` | up-sets |
//! | Zariski opens on `{E_P}` | generated by the `D(I)` |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::frame::{
    alexandrov_poset, compare_topologies, topology_from_subbasis, upset_frame, ElemSet, FinitePoset,
    TopologyComparison, TopologySpace,
};
use crate::serre::{classify_local, sp, CategoryModel, LocalityVerdict};

/// Which family of ideals generates a topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Flag {
    /// All ideals.
    #[serde(rename = "ALL")]
    All,
    /// Ideals defined by pp conditions; abstract data here.
    #[serde(rename = "PP")]
    Pp,
    /// Finitely generated ideals.
    #[serde(rename = "FG")]
    Fg,
}

impl Flag {
    pub const ALL_FLAGS: [Flag; 3] = [Flag::All, Flag::Pp, Flag::Fg];
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ALL" => Ok(Flag::All),
            "PP" => Ok(Flag::Pp),
            "FG" => Ok(Flag::Fg),
            _ => Err(Error::UnknownFlag(s.to_string())),
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::All => "ALL",
            Flag::Pp => "PP",
            Flag::Fg => "FG",
        })
    }
}

/// A spectrum with its ideal families, each member stored as the up-set `V(I)`.
#[derive(Clone, Debug)]
pub struct SpectralPoset {
    spec: FinitePoset,
    all: Vec<ElemSet>,
    fg: Vec<ElemSet>,
    pp: Vec<ElemSet>,
}

impl SpectralPoset {
    /// `fg` and `pp` list generator sets of `V(I)`, closed here under finite
    /// unions and intersections. A missing `fg` means every
    /// ideal is finitely generated; a missing `pp` defaults to `fg`. The
    /// closed sets of `R` and `0`, namely `∅` and the whole spectrum, are
    /// always included.
    pub fn new(spec: FinitePoset, fg: Option<&[ElemSet]>, pp: Option<&[ElemSet]>) -> Result<Self> {
        let all = upset_frame(&spec)?.elements().to_vec();
        let close = |gens: &[ElemSet]| -> Result<Vec<ElemSet>> {
            let mut out: BTreeSet<ElemSet> = BTreeSet::new();
            out.insert(ElemSet::EMPTY);
            out.insert(spec.all());
            for &g in gens {
                if !g.is_subset(spec.all()) {
                    return Err(Error::InvalidSpectral(format!("{g:?} is not a set of points")));
                }
                out.insert(v_of_poset(&spec, g));
            }
            // V(I) ∩ V(J) = V(I + J) and V(I) ∪ V(J) = V(IJ), so a family of
            // ideals closed under sums and products gives a lattice of closed sets.
            let declared = out.len();
            loop {
                let members: Vec<ElemSet> = out.iter().copied().collect();
                let before = out.len();
                for &a in &members {
                    for &b in &members {
                        out.insert(a.union(b));
                        out.insert(a.intersection(b));
                    }
                }
                if out.len() == before {
                    break;
                }
            }
            if out.len() > declared {
                log::info!("closed a family of {declared} sets under unions and intersections: {} sets", out.len());
            }
            Ok(out.into_iter().collect())
        };
        let fg = match fg {
            Some(g) => close(g)?,
            None => all.clone(),
        };
        let pp = match pp {
            Some(g) => close(g)?,
            None => fg.clone(),
        };
        let pp_set: BTreeSet<ElemSet> = pp.iter().copied().collect();
        if let Some(v) = fg.iter().find(|v| !pp_set.contains(v)) {
            return Err(Error::InvalidSpectral(format!(
                "FG member {} is missing from the PP family",
                spec.sorted_labels_of(*v).join(",")
            )));
        }
        Ok(SpectralPoset { spec, all, fg, pp })
    }

    pub fn spec(&self) -> &FinitePoset {
        &self.spec
    }

    pub fn model(&self) -> CategoryModel {
        CategoryModel::Spectral(self.spec.clone())
    }

    pub fn family(&self, flag: Flag) -> &[ElemSet] {
        match flag {
            Flag::All => &self.all,
            Flag::Pp => &self.pp,
            Flag::Fg => &self.fg,
        }
    }

    /// Whether every up-set is in the FG and PP families.
    pub fn has_full_families(&self) -> bool {
        self.fg.len() == self.all.len() && self.pp.len() == self.all.len()
    }

    /// `V(I) = ↑gens`.
    pub fn v_of(&self, gens: ElemSet) -> ElemSet {
        v_of_poset(&self.spec, gens)
    }

    /// `D(I)`, the complement of `V(I)`.
    pub fn d_of(&self, gens: ElemSet) -> ElemSet {
        self.spec.all().difference(self.v_of(gens))
    }

    /// The torsion theory cogenerated by `{E_P : P ∈ x}`.
    pub fn torsion_from_x(&self, x: ElemSet) -> Result<TorsionTheory> {
        if !x.is_subset(self.spec.all()) || !self.spec.is_down_set(x) {
            return Err(Error::Precondition(format!(
                "{{{}}} is not generalisation-closed",
                self.spec.sorted_labels_of(x.intersection(self.spec.all())).join(",")
            )));
        }
        // R/Q is torsion iff Hom(R/Q, E_P) = 0 for all P in x iff Q ≰ P for all P in x.
        let torsion_support = (0..self.spec.len())
            .filter(|&q| x.iter().all(|p| !self.spec.leq(q, p)))
            .collect();
        Ok(TorsionTheory { torsion_support })
    }

    /// The torsion theory whose torsion modules are supported on the up-set `y`.
    pub fn torsion_from_support(&self, y: ElemSet) -> Result<TorsionTheory> {
        if !y.is_subset(self.spec.all()) || !self.spec.is_up_set(y) {
            return Err(Error::Precondition(format!("{y:?} is not specialisation-closed")));
        }
        Ok(TorsionTheory { torsion_support: y })
    }

    /// `D_τ = {P : R/P is not torsion}`.
    pub fn d_tau(&self, t: &TorsionTheory) -> ElemSet {
        (0..self.spec.len()).filter(|&p| !t.torsion_support.contains(p)).collect()
    }

    /// `⋂ D(I)` over the ideals with `R/I` torsion, that is `V(I) ⊆ Y`.
    pub fn d_tau_by_ideals(&self, t: &TorsionTheory) -> ElemSet {
        self.all
            .iter()
            .filter(|v| v.is_subset(t.torsion_support))
            .fold(self.spec.all(), |acc, v| acc.difference(*v))
    }

    /// Torsion theories of finite type: torsion support a union of FG members.
    pub fn is_finite_type(&self, t: &TorsionTheory) -> bool {
        self.fg_interior(t.torsion_support) == t.torsion_support
    }

    fn fg_interior(&self, y: ElemSet) -> ElemSet {
        self.fg
            .iter()
            .filter(|v| v.is_subset(y))
            .fold(ElemSet::EMPTY, |acc, v| acc.union(*v))
    }

    /// Ziegler space on the points `E_P`: the opens are the up-sets.
    pub fn ziegler_space(&self) -> Result<TopologySpace> {
        alexandrov_poset(&self.spec)
    }

    /// Opens are the unions of finite intersections of family members.
    pub fn ziegler_type_topology(&self, flag: Flag) -> Result<TopologySpace> {
        topology_from_subbasis(self.spec.labels().to_vec(), self.family(flag))
    }

    /// Generated by the complements `D(I)` of family members.
    pub fn zariski_type_topology(&self, flag: Flag) -> Result<TopologySpace> {
        let comps: Vec<ElemSet> = self
            .family(flag)
            .iter()
            .map(|v| self.spec.all().difference(*v))
            .collect();
        topology_from_subbasis(self.spec.labels().to_vec(), &comps)
    }
}

fn v_of_poset(spec: &FinitePoset, gens: ElemSet) -> ElemSet {
    let mins = spec.minimal(gens);
    if mins != gens {
        log::warn!(
            "generators {{{}}} are not an antichain; using {{{}}}",
            spec.sorted_labels_of(gens).join(","),
            spec.sorted_labels_of(mins).join(",")
        );
    }
    spec.up_closure(mins)
}

/// A hereditary torsion theory of finite type on `Mod-R`, recorded by the
/// primes `P` with `R/P` torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionTheory {
    pub torsion_support: ElemSet,
}

/// `(P, S_P)` pairs of the prime bijection, with `S_P = spec \ ↓P`.
pub fn prime_bijection(sp_poset: &SpectralPoset) -> Result<Vec<(usize, ElemSet)>> {
    Ok(sp(&sp_poset.model())?.pairs)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SpecialisationReport {
    /// Every irreducible closed set of the Ziegler space has a generic point.
    pub generic_points: bool,
    /// Opens of the Ziegler space are exactly the Serre subcategories.
    pub opens_are_serre: bool,
    /// `P ↦ S_P` is an isomorphism from the specialisation order of the T0
    /// quotient, reversed, onto `Sp` under inclusion.
    pub sp_is_reversed_specialisation: bool,
}

impl SpecialisationReport {
    pub fn passed(&self) -> bool {
        self.generic_points && self.opens_are_serre && self.sp_is_reversed_specialisation
    }
}

pub fn specialisation_check(sp_poset: &SpectralPoset) -> Result<SpecialisationReport> {
    let zg = sp_poset.ziegler_space()?;
    let generic_points = zg
        .irreducible_closeds()
        .into_iter()
        .all(|c| zg.generic_point(c).is_some());
    let ser: BTreeSet<ElemSet> = sp_poset.model().serre_lattice()?.elements().iter().copied().collect();
    let opens: BTreeSet<ElemSet> = zg.opens().iter().copied().collect();

    let (t0, class_of) = zg.t0_quotient();
    let order = t0.specialisation();
    let primes = prime_bijection(sp_poset)?;
    // Prime attached to each T0 class; points in one class must give one prime.
    let mut prime_of_class: Vec<Option<ElemSet>> = vec![None; t0.len()];
    let mut consistent = true;
    for &(p, s) in &primes {
        match prime_of_class[class_of[p]].replace(s) {
            Some(prev) if prev != s => consistent = false,
            _ => {}
        }
    }
    let classes: Vec<ElemSet> = prime_of_class.iter().map(|s| s.unwrap_or(ElemSet::EMPTY)).collect();
    let distinct: BTreeSet<ElemSet> = classes.iter().copied().collect();
    let reversed = (0..t0.len()).all(|a| (0..t0.len()).all(|b| order.leq(a, b) == classes[b].is_subset(classes[a])));
    Ok(SpecialisationReport {
        generic_points,
        opens_are_serre: ser == opens,
        sp_is_reversed_specialisation: consistent && distinct.len() == t0.len() && reversed,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClosedPointReport {
    pub point: String,
    /// The open set of the simple object's Serre subcategory is `{N}`.
    pub simple_open_is_singleton: bool,
    /// `{N}` is open.
    pub isolated: bool,
    /// The closure of `N` is the whole space.
    pub generic: bool,
}

impl ClosedPointReport {
    pub fn passed(&self) -> bool {
        self.simple_open_is_singleton && self.isolated && self.generic
    }
}

/// For a local model with a simple object: the injective hull `N` of the
/// simple is an isolated point, equal to the open set of the simple, and
/// generic for the whole Ziegler space.
pub fn closed_point_check(sp_poset: &SpectralPoset) -> Result<ClosedPointReport> {
    let model = sp_poset.model();
    let LocalityVerdict::Case1 { minimal, .. } = classify_local(&model)? else {
        return Err(Error::Precondition("model is not local with a simple object".into()));
    };
    let n = minimal.first().expect("minimal Serre subcategory is nonempty");
    let zg = sp_poset.ziegler_space()?;
    let simple_open = model.support(&crate::serre::ModelObject::Generators(ElemSet::singleton(n)))?;
    let point = ElemSet::singleton(n);
    Ok(ClosedPointReport {
        point: sp_poset.spec.label(n).to_string(),
        simple_open_is_singleton: simple_open == point,
        isolated: zg.is_open(point),
        generic: zg.closure(point) == zg.points(),
    })
}

/// Pairwise comparisons of the three flagged topologies of one type.
#[derive(Clone, Debug, Serialize)]
pub struct FlagComparison {
    pub flags: [Flag; 3],
    pub matrix: Vec<Vec<TopologyComparison>>,
}

impl FlagComparison {
    pub fn all_equal(&self) -> bool {
        self.matrix.iter().flatten().all(|c| *c == TopologyComparison::Equal)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TopologyZoo {
    pub ziegler: FlagComparison,
    pub zariski: FlagComparison,
    /// Ziegler-type with the ALL family equals the Alexandrov topology of up-sets.
    pub all_is_alexandrov: bool,
    /// Family members are open in the Ziegler-type topology and closed in the
    /// Zariski-type one, for every flag.
    pub dual: bool,
}

pub fn topology_zoo(sp_poset: &SpectralPoset) -> Result<TopologyZoo> {
    let flags = Flag::ALL_FLAGS;
    let zg: Vec<TopologySpace> = flags
        .iter()
        .map(|&f| sp_poset.ziegler_type_topology(f))
        .collect::<Result<_>>()?;
    let zr: Vec<TopologySpace> = flags
        .iter()
        .map(|&f| sp_poset.zariski_type_topology(f))
        .collect::<Result<_>>()?;
    let matrix = |ts: &[TopologySpace]| -> Result<Vec<Vec<TopologyComparison>>> {
        ts.iter()
            .map(|a| ts.iter().map(|b| compare_topologies(a, b)).collect())
            .collect()
    };
    let alex = sp_poset.ziegler_space()?;
    let all_is_alexandrov = compare_topologies(&zg[0], &alex)? == TopologyComparison::Equal;
    let dual = flags.iter().enumerate().all(|(i, &f)| {
        sp_poset
            .family(f)
            .iter()
            .all(|&v| zg[i].is_open(v) && zr[i].is_closed(v))
    });
    Ok(TopologyZoo {
        ziegler: FlagComparison {
            flags,
            matrix: matrix(&zg)?,
        },
        zariski: FlagComparison {
            flags,
            matrix: matrix(&zr)?,
        },
        all_is_alexandrov,
        dual,
    })
}

/// Finite-type torsion theories paired with the open sets of the Thomason
/// (Zariski*) topology, i.e. unions of FG members.
#[derive(Clone, Debug, Serialize)]
pub struct ThomasonBijection {
    pub pairs: Vec<(ElemSet, ElemSet)>,
}

pub fn thomason_bijection(sp_poset: &SpectralPoset) -> Result<ThomasonBijection> {
    let check = "finite-type torsion theories correspond to Thomason opens";
    let thomason = sp_poset.ziegler_type_topology(Flag::Fg)?;
    let mut pairs = Vec::new();
    for &y in &sp_poset.all {
        let t = sp_poset.torsion_from_support(y)?;
        if !sp_poset.is_finite_type(&t) {
            continue;
        }
        let u = sp_poset.fg_interior(y);
        if !thomason.is_open(u) || u != y {
            return Err(invariant(check, format!("support {y:?} gives {u:?}")));
        }
        pairs.push((y, u));
    }
    // Every open comes back from exactly one finite-type theory.
    for &u in thomason.opens() {
        let back = sp_poset.torsion_from_support(u)?;
        if !sp_poset.is_finite_type(&back) || pairs.iter().filter(|&&(_, v)| v == u).count() != 1 {
            return Err(invariant(check, format!("open {u:?} does not come from one theory")));
        }
    }
    if pairs.len() != thomason.opens().len() {
        return Err(invariant(check, "counts differ"));
    }
    Ok(ThomasonBijection { pairs })
}

/// Roundtrips `x ↦ τ_x ↦ D_τ` on every generalisation-closed set and
/// `τ ↦ D_τ ↦ τ` on every torsion theory; also checks `D_τ` against the
/// intersection of the `D(I)`. Returns the number of sets checked.
pub fn torsion_roundtrip(sp_poset: &SpectralPoset) -> Result<usize> {
    let check = "torsion theories correspond to generalisation-closed sets";
    let spec = &sp_poset.spec;
    let downs: Vec<ElemSet> = sp_poset.all.iter().map(|u| spec.all().difference(*u)).collect();
    for &x in &downs {
        let t = sp_poset.torsion_from_x(x)?;
        if sp_poset.d_tau(&t) != x {
            return Err(invariant(check, format!("x = {x:?} returns {:?}", sp_poset.d_tau(&t))));
        }
        if sp_poset.d_tau_by_ideals(&t) != x {
            return Err(invariant(check, format!("D_τ differs from ⋂ D(I) at {x:?}")));
        }
    }
    for &y in &sp_poset.all {
        let t = sp_poset.torsion_from_support(y)?;
        let again = sp_poset.torsion_from_x(sp_poset.d_tau(&t))?;
        if again != t {
            return Err(invariant(check, format!("support {y:?} returns {:?}", again.torsion_support)));
        }
    }
    Ok(downs.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeCorrespondenceReport {
    pub primes: usize,
    pub points: usize,
    pub order_reversing: bool,
    pub ziegler_types_coincide: bool,
    pub zariski_types_coincide: bool,
}

impl PrimeCorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.primes == self.points && self.order_reversing && self.ziegler_types_coincide && self.zariski_types_coincide
    }
}

/// With full families: the meet-irreducible Serre subcategories match the
/// points, and all flagged topologies of each type coincide.
pub fn prime_correspondence(sp_poset: &SpectralPoset) -> Result<PrimeCorrespondenceReport> {
    if !sp_poset.has_full_families() {
        return Err(Error::Precondition("FG and PP families must contain every closed set".into()));
    }
    let pairs = prime_bijection(sp_poset)?;
    let spec = &sp_poset.spec;
    let order_reversing = pairs
        .iter()
        .all(|&(p, sp_)| pairs.iter().all(|&(q, sq)| spec.leq(p, q) == sq.is_subset(sp_)));
    let zoo = topology_zoo(sp_poset)?;
    Ok(PrimeCorrespondenceReport {
        primes: sp_poset.model().serre_lattice()?.primes().len(),
        points: spec.len(),
        order_reversing,
        ziegler_types_coincide: zoo.ziegler.all_equal(),
        zariski_types_coincide: zoo.zariski.all_equal(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn chain2() -> SpectralPoset {
        SpectralPoset::new(FinitePoset::from_covers(vec![s("g"), s("m")], &[("g", "m")]).unwrap(), None, None).unwrap()
    }

    fn fan3_poset() -> FinitePoset {
        FinitePoset::from_covers(
            vec![s("g"), s("p1"), s("p2"), s("p3")],
            &[("g", "p1"), ("g", "p2"), ("g", "p3")],
        )
        .unwrap()
    }

    fn diamond() -> SpectralPoset {
        let p = FinitePoset::from_covers(
            vec![s("g"), s("p1"), s("p2"), s("m")],
            &[("g", "p1"), ("g", "p2"), ("p1", "m"), ("p2", "m")],
        )
        .unwrap();
        SpectralPoset::new(p, None, None).unwrap()
    }

    fn set(p: &SpectralPoset, labels: &[&str]) -> ElemSet {
        p.spec().set_of(labels).unwrap()
    }

    #[test]
    fn closed_sets() {
        let f = SpectralPoset::new(fan3_poset(), None, None).unwrap();
        assert_eq!(f.v_of(set(&f, &["p1"])), set(&f, &["p1"]));
        assert_eq!(f.d_of(set(&f, &["p1"])), set(&f, &["g", "p2", "p3"]));
        assert_eq!(f.v_of(ElemSet::EMPTY), ElemSet::EMPTY);
        assert_eq!(f.v_of(set(&f, &["g"])), f.spec().all());
        // Non-antichain input is reduced to its minimal elements.
        assert_eq!(f.v_of(set(&f, &["g", "p1"])), f.spec().all());
    }

    #[test]
    fn torsion_examples() {
        let c = chain2();
        let t = c.torsion_from_x(set(&c, &["g"])).unwrap();
        assert_eq!(t.torsion_support, set(&c, &["m"]));
        assert_eq!(c.torsion_from_x(c.spec().all()).unwrap().torsion_support, ElemSet::EMPTY);
        let f = SpectralPoset::new(fan3_poset(), None, None).unwrap();
        let t = f.torsion_from_x(set(&f, &["g", "p1"])).unwrap();
        assert_eq!(t.torsion_support, set(&f, &["p2", "p3"]));
        assert!(f.torsion_from_x(set(&f, &["p1"])).is_err());
        assert_eq!(torsion_roundtrip(&f).unwrap(), 9);
    }

    #[test]
    fn prime_pairs() {
        let c = chain2();
        let pairs = prime_bijection(&c).unwrap();
        assert_eq!(pairs, vec![(0, set(&c, &["m"])), (1, ElemSet::EMPTY)]);
        assert_eq!(prime_bijection(&diamond()).unwrap().len(), 4);
        let anti = SpectralPoset::new(FinitePoset::antichain(vec![s("x"), s("y")]).unwrap(), None, None).unwrap();
        let pairs = prime_bijection(&anti).unwrap();
        assert!(pairs.iter().all(|(p, sp_)| *sp_ == ElemSet::singleton(1 - *p)));
    }

    #[test]
    fn ziegler_checks() {
        let c = chain2();
        let r = closed_point_check(&c).unwrap();
        assert_eq!(r.point, "m");
        assert!(r.passed());
        assert!(specialisation_check(&diamond()).unwrap().passed());
        let f = SpectralPoset::new(fan3_poset(), None, None).unwrap();
        assert!(closed_point_check(&f).is_err());
        let one = SpectralPoset::new(FinitePoset::antichain(vec![s("p")]).unwrap(), None, None).unwrap();
        assert!(specialisation_check(&one).unwrap().passed());
        assert!(closed_point_check(&one).unwrap().passed());
    }

    #[test]
    fn flag_topologies() {
        let f = SpectralPoset::new(fan3_poset(), None, None).unwrap();
        let zoo = topology_zoo(&f).unwrap();
        assert!(zoo.ziegler.all_equal() && zoo.zariski.all_equal());
        assert!(zoo.all_is_alexandrov && zoo.dual);

        let p1 = set(&f, &["p1"]);
        let coarse = SpectralPoset::new(fan3_poset(), Some(&[p1]), None).unwrap();
        let fg = coarse.ziegler_type_topology(Flag::Fg).unwrap();
        let all = coarse.ziegler_type_topology(Flag::All).unwrap();
        assert_eq!(compare_topologies(&fg, &all).unwrap(), TopologyComparison::StrictlyCoarser);
        assert!(topology_zoo(&coarse).unwrap().dual);
        assert_eq!("fg".parse::<Flag>().unwrap(), Flag::Fg);
        assert!(matches!("XX".parse::<Flag>(), Err(Error::UnknownFlag(_))));
    }

    #[test]
    fn pp_must_contain_fg() {
        let p1 = ElemSet::singleton(1);
        let p2 = ElemSet::singleton(2);
        assert!(SpectralPoset::new(fan3_poset(), Some(&[p1]), Some(&[p2])).is_err());
        assert!(SpectralPoset::new(fan3_poset(), Some(&[p1]), Some(&[p1, p2])).is_ok());
    }

    #[test]
    fn families_closed_under_sums_and_products() {
        let p1 = ElemSet::singleton(1);
        let p2 = ElemSet::singleton(2);
        let sp = SpectralPoset::new(fan3_poset(), Some(&[p1, p2]), None).unwrap();
        let fg = sp.family(Flag::Fg);
        assert!(fg.contains(&p1.union(p2)));
        assert_eq!(fg.len(), 5);
        let g = ElemSet::singleton(0);
        let sp = SpectralPoset::new(fan3_poset(), Some(&[g, p1]), None).unwrap();
        assert_eq!(sp.family(Flag::Fg).len(), 3);
        thomason_bijection(&sp).unwrap();
    }

    #[test]
    fn thomason() {
        let d = diamond();
        let t = thomason_bijection(&d).unwrap();
        assert_eq!(t.pairs.len(), d.model().serre_lattice().unwrap().len());
        let bare = SpectralPoset::new(fan3_poset(), Some(&[]), None).unwrap();
        assert_eq!(thomason_bijection(&bare).unwrap().pairs.len(), 2);
        let principal: Vec<ElemSet> = (1..4).map(ElemSet::singleton).collect();
        let princ = SpectralPoset::new(fan3_poset(), Some(&principal), None).unwrap();
        assert_eq!(thomason_bijection(&princ).unwrap().pairs.len(), 9);
    }

    #[test]
    fn correspondence_counts() {
        let r = prime_correspondence(&chain2()).unwrap();
        assert_eq!((r.primes, r.points), (2, 2));
        assert!(r.passed());
        assert_eq!(prime_correspondence(&diamond()).unwrap().primes, 4);
        let one = SpectralPoset::new(FinitePoset::antichain(vec![s("p")]).unwrap(), None, None).unwrap();
        assert_eq!(prime_correspondence(&one).unwrap().primes, 1);
        let coarse = SpectralPoset::new(fan3_poset(), Some(&[]), None).unwrap();
        assert!(prime_correspondence(&coarse).is_err());
    }
}
