//! The invariant suite run by `serrelat verify`.
//!
//! Each check runs against every fixture it applies to and yields one
//! [`CheckResult`]; library errors count as failures with the error text as
//! detail.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commspec::{
    closed_point_check, prime_bijection, prime_correspondence, specialisation_check, thomason_bijection,
    topology_zoo, torsion_roundtrip, Flag, SpectralPoset,
};
use crate::error::{Error, Result};
use crate::fixtures::{Fixture, LoadedModel};
use crate::frame::{
    alexandrov_poset, check_prime_opens_vs_irreducible_closeds, compare_topologies, upset_frame, ElemSet,
    FinitePoset, Frame, TopologyComparison, TopologySpace,
};
use crate::functor::{composition_check, continuity_check, pullback_report, ExactFunctorModel, FunctorKind};
use crate::quiverrep::{
    common_subquotient, is_subquotient, isoclasses, serre_membership_chain_with, serre_membership_support,
    succeeds, BoundQuiver, Representation, SubquotientCatalog, DEFAULT_DIM_BOUND,
};
use crate::serre::{
    classify_local, is_quasisimple, is_serre_local, no_intermediate_check, quotient_model, s_simple_by_subobjects,
    s_simple_by_support, serre_local_characterizations, sp, zariski_locale, CategoryModel, LocalityVerdict,
    ModelObject,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Bound on total dimension for subobject enumeration.
    pub dim_bound: usize,
    /// Largest total dimension of representations in the membership oracle comparison.
    pub membership_dim: usize,
    /// Largest total dimension for S-simplicity and Serre-locality sweeps.
    pub sweep_dim: usize,
    pub random_posets: usize,
    pub random_poset_size: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            dim_bound: DEFAULT_DIM_BOUND,
            membership_dim: 5,
            sweep_dim: 4,
            random_posets: 50,
            random_poset_size: 6,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub check: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Outcome of one check: `Ok(detail)` on success, `Err(detail)` on failure.
type Outcome = std::result::Result<String, String>;

fn fail<T>(detail: impl Into<String>) -> std::result::Result<T, String> {
    Err(detail.into())
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Runner {
    checks: Vec<CheckResult>,
}

impl Runner {
    fn run(&mut self, check: &'static str, subject: &str, f: impl FnOnce() -> Outcome) {
        log::debug!("{check}: {subject}");
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !passed {
            log::warn!("{check} failed on {subject}: {detail}");
        }
        self.checks.push(CheckResult {
            check,
            subject: subject.to_string(),
            passed,
            detail,
        });
    }
}

// ---------------------------------------------------------------------------
// Frame laws

/// Frames up to this size get the law over every family of elements.
pub const MAX_SUBSET_FAMILY: usize = 20;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChaReport {
    pub elements: usize,
    pub triples_checked: u64,
    /// Families checked for `a ∧ ⋁S = ⋁(a ∧ s)`; `None` when the frame is too large.
    pub subset_families: Option<u64>,
    pub violations: Vec<String>,
}

/// Lattice axioms, distributivity, the Heyting adjunction over all triples,
/// and infinite distributivity over every family of elements.
pub fn cha_laws(frame: &Frame) -> Result<ChaReport> {
    let els = frame.elements();
    let n = els.len();
    let mut violations = Vec::new();
    let mut note = |v: String| {
        if violations.len() < 16 {
            violations.push(v);
        }
    };
    let d = |e: ElemSet| frame.describe(e);
    for &a in els {
        if !frame.leq(frame.bottom(), a) || !frame.leq(a, frame.top()) {
            note(format!("{} escapes the bounds", d(a)));
        }
        if frame.meet(a, a) != a || frame.join(a, a) != a {
            note(format!("idempotence fails at {}", d(a)));
        }
        if frame.meet(a, frame.negation(a)?) != frame.bottom() {
            note(format!("a ∧ ¬a ≠ 0 at {}", d(a)));
        }
    }
    let mut triples = 0u64;
    for &a in els {
        for &b in els {
            let (m, j) = (frame.meet(a, b), frame.join(a, b));
            if !frame.contains(m) || !frame.contains(j) {
                note(format!("{} and {} have no meet or join in the frame", d(a), d(b)));
                continue;
            }
            if m != frame.meet(b, a) || j != frame.join(b, a) {
                note(format!("commutativity fails at {}, {}", d(a), d(b)));
            }
            if frame.meet(a, j) != a || frame.join(a, m) != a {
                note(format!("absorption fails at {}, {}", d(a), d(b)));
            }
            if frame.leq(a, b) != (m == a) {
                note(format!("order disagrees with meet at {}, {}", d(a), d(b)));
            }
            let imp = frame.implies(a, b)?;
            for &c in els {
                triples += 1;
                if frame.meet(a, frame.meet(b, c)) != frame.meet(m, c) || frame.join(a, frame.join(b, c)) != frame.join(j, c) {
                    note(format!("associativity fails at {}, {}, {}", d(a), d(b), d(c)));
                }
                if frame.meet(a, frame.join(b, c)) != frame.join(m, frame.meet(a, c)) {
                    note(format!("distributivity fails at {}, {}, {}", d(a), d(b), d(c)));
                }
                if frame.leq(c, imp) != frame.leq(frame.meet(c, a), b) {
                    note(format!("Heyting adjunction fails at {}, {}, {}", d(a), d(b), d(c)));
                }
            }
        }
    }
    let subset_families = if n <= MAX_SUBSET_FAMILY {
        // joins[mask] = ⋁{els[i] : i ∈ mask}, built from the mask without its lowest bit.
        let size = 1usize << n;
        let mut joins = vec![frame.bottom(); size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            joins[mask] = frame.join(joins[mask & (mask - 1)], els[low]);
        }
        let mut meets_then_join = vec![frame.bottom(); size];
        for &a in els {
            for mask in 1..size {
                let low = mask.trailing_zeros() as usize;
                meets_then_join[mask] = frame.join(meets_then_join[mask & (mask - 1)], frame.meet(a, els[low]));
                if frame.meet(a, joins[mask]) != meets_then_join[mask] {
                    note(format!("infinite distributivity fails at {} over family {mask:#b}", d(a)));
                }
            }
        }
        Some((size as u64) * n as u64)
    } else {
        None
    };
    Ok(ChaReport {
        elements: n,
        triples_checked: triples,
        subset_families,
        violations,
    })
}

fn cha_outcome(frame: &Frame) -> Outcome {
    let r = lift(cha_laws(frame))?;
    if !r.violations.is_empty() {
        return fail(r.violations.join("; "));
    }
    Ok(match r.subset_families {
        Some(f) => format!("{} elements, {} triples, {f} (element, family) pairs", r.elements, r.triples_checked),
        None => format!(
            "{} elements, {} triples; families skipped above {MAX_SUBSET_FAMILY} elements",
            r.elements, r.triples_checked
        ),
    })
}

fn prime_characterizations_outcome(frame: &Frame) -> Outcome {
    let mut primes = 0;
    for &a in frame.elements() {
        if lift(frame.is_prime(a))? {
            primes += 1;
        }
    }
    let by_covers = frame.primes().len();
    if primes != by_covers {
        return fail(format!("{primes} primes by definition, {by_covers} by upper covers"));
    }
    Ok(format!("{} elements, {primes} primes", frame.len()))
}

/// `primes(upset_frame(P)) = {P \ ↓x}`.
fn primes_are_point_complements(p: &FinitePoset) -> Outcome {
    let frame = lift(upset_frame(p))?;
    let got: BTreeSet<ElemSet> = frame.primes().into_iter().collect();
    let want: BTreeSet<ElemSet> = (0..p.len()).map(|x| p.all().difference(p.down(x))).collect();
    if got != want {
        return fail(format!("{} primes, {} points", got.len(), want.len()));
    }
    Ok(format!("{} primes", got.len()))
}

fn birkhoff_outcome(p: &FinitePoset) -> Outcome {
    let frame = lift(upset_frame(p))?;
    lift(frame.birkhoff_isomorphism())?;
    if !frame.birkhoff_poset().same_order_as(p) {
        return fail("the dual of the up-set frame is not the original poset");
    }
    Ok(format!("{} elements", frame.len()))
}

fn prime_opens_outcome(t: &TopologySpace) -> Outcome {
    lift(check_prime_opens_vs_irreducible_closeds(t))?;
    Ok(format!("{} opens", t.opens().len()))
}

/// In the Alexandrov topology the irreducible closeds are the `↓x`, each
/// with generic point `x`.
fn alexandrov_generic_points(p: &FinitePoset) -> Outcome {
    let t = lift(alexandrov_poset(p))?;
    let got: BTreeSet<ElemSet> = t.irreducible_closeds().into_iter().collect();
    let want: BTreeSet<ElemSet> = (0..p.len()).map(|x| p.down(x)).collect();
    if got != want {
        return fail("irreducible closed sets are not the principal down-sets");
    }
    for x in 0..p.len() {
        if t.generic_point(p.down(x)) != Some(x) {
            return fail(format!("↓{} lacks generic point {}", p.label(x), p.label(x)));
        }
    }
    Ok(format!("{} irreducible closeds", got.len()))
}

fn poset_checks(run: &mut Runner, subject: &str, p: &FinitePoset) {
    run.run("primes of an up-set frame are complements of principal down-sets", subject, || {
        primes_are_point_complements(p)
    });
    run.run("Birkhoff roundtrip", subject, || birkhoff_outcome(p));
    run.run("Alexandrov irreducible closeds have generic points", subject, || alexandrov_generic_points(p));
    run.run("prime opens are complements of irreducible closeds", subject, || {
        prime_opens_outcome(&lift(alexandrov_poset(p))?)
    });
    if let Ok(frame) = upset_frame(p) {
        run.run("prime characterizations agree", subject, || prime_characterizations_outcome(&frame));
        if p.len() <= 6 {
            run.run("complete Heyting algebra laws", subject, || cha_outcome(&frame));
        }
    }
}

/// A random partial order on `n` points: random relations `i < j` for
/// `i < j`, transitively closed.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(0.35);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    FinitePoset::from_leq(labels, &leq).expect("closure of a strictly upper triangular relation is a partial order")
}

/// `count` seeded random posets with `0..=max_size` points.
pub fn random_posets(seed: u64, count: usize, max_size: usize) -> Vec<FinitePoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_size);
            random_poset(&mut rng, n)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Representations

fn simple_reps(q: &Arc<BoundQuiver>) -> Vec<Representation> {
    Representation::simples(q)
}

/// Chain search against the support criterion. Generator sets: every nonzero
/// isoclass of total dimension at most 2, every pair of simples, and every
/// named object of the fixture.
fn membership_oracles(q: &Arc<BoundQuiver>, named: &[Representation], opts: &VerifyOptions) -> Outcome {
    let candidates = lift(isoclasses(q, opts.membership_dim))?;
    let simples = simple_reps(q);
    let mut gen_sets: Vec<Vec<Representation>> = candidates
        .iter()
        .filter(|r| !r.is_zero() && r.total_dim() <= 2)
        .map(|r| vec![r.clone()])
        .collect();
    for i in 0..simples.len() {
        for j in i + 1..simples.len() {
            gen_sets.push(vec![simples[i].clone(), simples[j].clone()]);
        }
    }
    gen_sets.extend(named.iter().map(|r| vec![r.clone()]));
    let mut compared = 0;
    for gens in &gen_sets {
        let catalogs = lift(
            gens.iter()
                .map(|g| SubquotientCatalog::of(g, opts.dim_bound))
                .collect::<Result<Vec<_>>>(),
        )?;
        for a in &candidates {
            let chain = lift(serre_membership_chain_with(a, &catalogs, opts.dim_bound))?;
            let support = serre_membership_support(a, gens);
            if let Some(cert) = &chain {
                for (f, &g) in cert.factors(a).iter().zip(&cert.generator) {
                    if !lift(catalogs[g].contains(f))? {
                        return fail(format!("chain factor of {:?} is not a subquotient of its generator", a.dims()));
                    }
                }
            }
            if chain.is_some() != support {
                return fail(format!(
                    "dims {:?} with generator dims {:?}: chain {}, support {support}",
                    a.dims(),
                    gens.iter().map(|g| g.dims().to_vec()).collect::<Vec<_>>(),
                    chain.is_some()
                ));
            }
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} comparisons over {} isoclasses and {} generator sets",
        candidates.len(),
        gen_sets.len()
    ))
}

fn common_subquotients(q: &Arc<BoundQuiver>, opts: &VerifyOptions) -> Outcome {
    let reps: Vec<Representation> = lift(isoclasses(q, 3))?.into_iter().filter(|r| !r.is_zero()).collect();
    let mut witnessed = 0;
    for a in &reps {
        for b in &reps {
            let overlap = !a.support().is_disjoint(b.support());
            match common_subquotient(a, b) {
                Some(w) => {
                    if !overlap || w.is_zero() {
                        return fail(format!("unexpected witness for {:?}, {:?}", a.dims(), b.dims()));
                    }
                    if lift(is_subquotient(&w, a, opts.dim_bound))?.is_none()
                        || lift(is_subquotient(&w, b, opts.dim_bound))?.is_none()
                    {
                        return fail(format!("witness for {:?}, {:?} is not a common subquotient", a.dims(), b.dims()));
                    }
                    witnessed += 1;
                }
                None if overlap => return fail(format!("no witness for {:?}, {:?}", a.dims(), b.dims())),
                None => {}
            }
        }
    }
    Ok(format!("{witnessed} overlapping pairs witnessed"))
}

/// Reflexive, closed under summands, and transitive.
fn subquotient_order(q: &Arc<BoundQuiver>, opts: &VerifyOptions) -> Outcome {
    let reps: Vec<Representation> = lift(isoclasses(q, 3))?;
    for x in &reps {
        if lift(is_subquotient(x, x, opts.dim_bound))?.is_none() {
            return fail(format!("{:?} is not a subquotient of itself", x.dims()));
        }
    }
    for a in &reps {
        for b in &reps {
            let sum = lift(a.direct_sum(b))?;
            if sum.total_dim() > 4 {
                continue;
            }
            if lift(is_subquotient(a, &sum, opts.dim_bound))?.is_none() {
                return fail(format!("{:?} is not a subquotient of a sum containing it", a.dims()));
            }
        }
    }
    let mut checked = 0;
    for x in reps.iter().filter(|x| x.total_dim() <= 3) {
        let cat = lift(SubquotientCatalog::of(x, opts.dim_bound))?;
        for y in cat.members() {
            let inner = lift(SubquotientCatalog::of(y, opts.dim_bound))?;
            for z in inner.members() {
                checked += 1;
                if !lift(cat.contains(z))? {
                    return fail(format!("{:?} ≤ {:?} ≤ {:?} but not transitively", z.dims(), y.dims(), x.dims()));
                }
            }
        }
    }
    Ok(format!("{checked} transitive triples"))
}

/// `succeeds(B, A, n)` implies `A ∈ ⟨B⟩`.
fn succession_implies_membership(q: &Arc<BoundQuiver>, opts: &VerifyOptions) -> Outcome {
    let reps: Vec<Representation> = lift(isoclasses(q, 2))?.into_iter().filter(|r| !r.is_zero()).collect();
    let mut implied = 0;
    for b in &reps {
        let cat = [lift(SubquotientCatalog::of(b, opts.dim_bound))?];
        for a in &reps {
            for n in 1..=2 {
                if lift(succeeds(b, a, n))? {
                    implied += 1;
                    if lift(serre_membership_chain_with(a, &cat, opts.dim_bound))?.is_none() {
                        return fail(format!("{:?} succeeds {:?} but does not generate it", b.dims(), a.dims()));
                    }
                }
            }
        }
    }
    Ok(format!("{implied} successions"))
}

/// `P1 ∈ ⟨S1 ⊕ S2⟩` on `1 → 2`, yet `S1 ⊕ S2` does not succeed `P1`.
fn succession_converse_fails() -> Outcome {
    let q = Arc::new(lift(BoundQuiver::new(
        vec!["1".into(), "2".into()],
        &[("a".into(), "1".into(), "2".into())],
        &[],
        2,
    ))?);
    let simples = simple_reps(&q);
    let b = lift(simples[0].direct_sum(&simples[1]))?;
    let p1 = lift(Representation::projective(q.clone(), 0))?;
    if lift(crate::quiverrep::serre_membership_chain(&p1, std::slice::from_ref(&b), DEFAULT_DIM_BOUND))?.is_none() {
        return fail("P1 is not in the Serre subcategory of S1 ⊕ S2");
    }
    for n in 1..=4 {
        if lift(succeeds(&b, &p1, n))? {
            return fail(format!("S1 ⊕ S2 succeeds P1 at level {n}"));
        }
    }
    Ok("no level up to 4".into())
}

fn quiver_checks(run: &mut Runner, subject: &str, q: &Arc<BoundQuiver>, named: &[Representation], opts: &VerifyOptions) {
    run.run("chain membership agrees with the support criterion", subject, || {
        membership_oracles(q, named, opts)
    });
    run.run("overlapping supports have a common subquotient", subject, || common_subquotients(q, opts));
    run.run("subquotient relation is reflexive, summand-closed and transitive", subject, || {
        subquotient_order(q, opts)
    });
    run.run("succession implies Serre membership", subject, || succession_implies_membership(q, opts));
}

// ---------------------------------------------------------------------------
// Serre lattices

fn locality_outcome(model: &CategoryModel) -> Outcome {
    let ser = lift(model.serre_lattice())?;
    let zero_prime = lift(ser.is_prime(ser.bottom()))?;
    let verdict = lift(classify_local(model))?;
    if verdict.is_local() != zero_prime {
        return fail(format!("verdict {verdict:?} but zero prime = {zero_prime}"));
    }
    if let LocalityVerdict::NotLocal { witness: Some((a, b)) } = verdict {
        if a.is_empty() || b.is_empty() || ser.meet(a, b) != ser.bottom() {
            return fail("non-locality witness is not a pair of nonzero elements meeting in zero");
        }
    }
    Ok(if zero_prime { "local".into() } else { "not local".into() })
}

/// `Sp` against the primes of the base's up-set frame, computed separately.
fn sp_outcome(model: &CategoryModel) -> Outcome {
    let base = model.base();
    let spec = lift(sp(model))?;
    let independent: BTreeSet<ElemSet> = lift(upset_frame(&base))?.primes().into_iter().collect();
    let got: BTreeSet<ElemSet> = spec.primes().into_iter().collect();
    if got != independent || spec.pairs.len() != base.len() {
        return fail("Sp differs from the primes of the up-set frame");
    }
    for &(p, sp_) in &spec.pairs {
        for &(q, sq) in &spec.pairs {
            if base.leq(p, q) != sq.is_subset(sp_) {
                return fail(format!("order not reversed at {}, {}", base.label(p), base.label(q)));
            }
        }
    }
    Ok(format!("{} primes", got.len()))
}

fn quotient_outcome(model: &CategoryModel) -> Outcome {
    let ser = lift(model.serre_lattice())?;
    for &s in ser.elements() {
        let q = lift(quotient_model(model, s))?;
        let c = &q.certificate;
        if !c.interval_isomorphism || !c.zariski_topologies_agree {
            return fail(format!("quotient by {} fails: {c:?}", ser.describe(s)));
        }
        if c.interval_size != ser.interval(s, ser.top()).len() {
            return fail(format!("interval above {} has the wrong size", ser.describe(s)));
        }
    }
    Ok(format!("{} quotients", ser.len()))
}

/// Objects to sweep: generators of each Serre subcategory plus, for
/// length models, every isoclass up to `max_dim`.
fn sweep_objects(model: &CategoryModel, max_dim: usize) -> Result<Vec<ModelObject>> {
    let mut out: Vec<ModelObject> = model
        .serre_lattice()?
        .elements()
        .iter()
        .map(|&s| model.generator_of(s))
        .collect::<Result<_>>()?;
    if let CategoryModel::Length(q) = model {
        out.extend(isoclasses(q, max_dim)?.into_iter().map(ModelObject::Rep));
    }
    Ok(out)
}

fn serre_local_outcome(model: &CategoryModel, opts: &VerifyOptions) -> Outcome {
    let objs = lift(sweep_objects(model, opts.sweep_dim.min(3)))?;
    let mut local = 0;
    for o in &objs {
        let c = lift(serre_local_characterizations(model, o, opts.dim_bound))?;
        if !c.agree() {
            return fail(format!("characterizations disagree: {c:?}"));
        }
        local += c.zariski_prime as usize;
    }
    Ok(format!("{} objects, {local} Serre-local", objs.len()))
}

fn quasisimple_outcome(model: &CategoryModel, q: &Arc<BoundQuiver>, opts: &VerifyOptions) -> Outcome {
    let reps = lift(isoclasses(q, opts.sweep_dim.min(3)))?;
    for r in reps.iter().filter(|r| !r.is_zero()) {
        let qs = lift(is_quasisimple(model, r, opts.dim_bound))?;
        if qs != (r.total_dim() == 1) {
            return fail(format!("dims {:?}: quasisimple = {qs}", r.dims()));
        }
        if qs && !lift(is_serre_local(model, &ModelObject::Rep(r.clone()), opts.dim_bound))? {
            return fail(format!("quasisimple {:?} is not Serre-local", r.dims()));
        }
    }
    Ok(format!("{} objects", reps.len()))
}

fn s_simple_outcome(model: &CategoryModel, q: &Arc<BoundQuiver>, opts: &VerifyOptions) -> Outcome {
    let reps = lift(isoclasses(q, opts.sweep_dim))?;
    let ser = lift(model.serre_lattice())?;
    let mut pairs = 0;
    for r in reps.iter().filter(|r| !r.is_zero()) {
        for &s in ser.elements() {
            let by_support = lift(s_simple_by_support(model, r, s))?;
            let by_subobjects = lift(s_simple_by_subobjects(model, r, s, opts.dim_bound))?;
            if by_support != by_subobjects {
                return fail(format!(
                    "dims {:?} over {}: support {by_support}, subobjects {by_subobjects}",
                    r.dims(),
                    ser.describe(s)
                ));
            }
            if by_support {
                pairs += 1;
                if !lift(no_intermediate_check(model, r, s, opts.dim_bound))? {
                    return fail(format!("intermediate Serre subcategory for {:?}", r.dims()));
                }
            }
        }
    }
    Ok(format!("{} objects, {pairs} S-simple pairs", reps.len()))
}

fn model_checks(run: &mut Runner, subject: &str, loaded: &LoadedModel, opts: &VerifyOptions) {
    let model = &loaded.model;
    let base = model.base();
    poset_checks(run, subject, &base);
    let ser = match model.serre_lattice() {
        Ok(s) => s,
        Err(e) => {
            run.run("Serre lattice builds", subject, || fail(e.to_string()));
            return;
        }
    };
    run.run("Serre lattice is a complete Heyting algebra", subject, || cha_outcome(&ser));
    run.run("prime characterizations agree on the Serre lattice", subject, || {
        prime_characterizations_outcome(&ser)
    });
    run.run("Birkhoff roundtrip on the Serre lattice", subject, || {
        lift(ser.birkhoff_isomorphism())?;
        Ok(format!("{} elements", ser.len()))
    });
    run.run("locality verdict matches primality of zero", subject, || locality_outcome(model));
    run.run("Sp is the order-reversed base", subject, || sp_outcome(model));
    run.run("quotient interval and Zariski topology agree", subject, || quotient_outcome(model));
    run.run("Zariski locale satisfies the frame laws", subject, || {
        let z = lift(zariski_locale(model))?;
        if z.ser.len() <= 6 {
            cha_outcome(&z.locale)?;
        }
        prime_characterizations_outcome(&z.locale)
    });
    run.run("Serre-local characterizations agree", subject, || serre_local_outcome(model, opts));
    if let CategoryModel::Length(q) = model {
        run.run("quasisimple objects are the simples and are Serre-local", subject, || {
            quasisimple_outcome(model, q, opts)
        });
        run.run("S-simplicity by support agrees with subobjects", subject, || s_simple_outcome(model, q, opts));
    }
    for (name, obj) in &loaded.objects {
        run.run("named objects lie in their own Serre subcategory", &format!("{subject}/{name}"), || {
            let s = lift(model.support(obj))?;
            if !lift(model.contains(s, obj))? {
                return fail("object outside its support");
            }
            Ok(ser.describe(s))
        });
    }
    if let Some(sp_poset) = &loaded.spectral {
        spectral_checks(run, subject, sp_poset);
    }
}

// ---------------------------------------------------------------------------
// Spectral posets

fn spectral_checks(run: &mut Runner, subject: &str, p: &SpectralPoset) {
    run.run("Ziegler topology is Alexandrov and its opens are the Serre lattice", subject, || {
        let zoo = lift(topology_zoo(p))?;
        let spec = lift(specialisation_check(p))?;
        if !zoo.all_is_alexandrov || !spec.opens_are_serre {
            return fail(format!("alexandrov {}, opens {}", zoo.all_is_alexandrov, spec.opens_are_serre));
        }
        Ok(format!("{} opens", lift(p.ziegler_space())?.opens().len()))
    });
    run.run("specialisation order of the Ziegler space is Sp reversed", subject, || {
        let r = lift(specialisation_check(p))?;
        if !r.passed() {
            return fail(format!("{r:?}"));
        }
        Ok("generic points present".into())
    });
    run.run("prime bijection is order-reversing", subject, || {
        let pairs = lift(prime_bijection(p))?;
        let spec = p.spec();
        let independent: BTreeSet<ElemSet> = lift(upset_frame(spec))?.primes().into_iter().collect();
        let got: BTreeSet<ElemSet> = pairs.iter().map(|&(_, s)| s).collect();
        if got != independent || pairs.len() != spec.len() {
            return fail("prime bijection differs from the frame primes");
        }
        Ok(format!("{} points", pairs.len()))
    });
    run.run("torsion theories roundtrip through their cogenerating sets", subject, || {
        Ok(format!("{} sets", lift(torsion_roundtrip(p))?))
    });
    run.run("finite-type torsion theories match Thomason opens", subject, || {
        Ok(format!("{} pairs", lift(thomason_bijection(p))?.pairs.len()))
    });
    run.run("Zariski-type and Ziegler-type topologies are dual", subject, || {
        let zoo = lift(topology_zoo(p))?;
        if !zoo.dual {
            return fail("a family member is not open in one and closed in the other");
        }
        Ok("dual".into())
    });
    run.run("flagged topologies are nested by family", subject, || {
        // A smaller family generates a coarser or equal topology.
        let all = lift(p.ziegler_type_topology(Flag::All))?;
        let pp = lift(p.ziegler_type_topology(Flag::Pp))?;
        let fg = lift(p.ziegler_type_topology(Flag::Fg))?;
        let ok = |c: TopologyComparison| matches!(c, TopologyComparison::Equal | TopologyComparison::StrictlyCoarser);
        let (a, b) = (lift(compare_topologies(&fg, &pp))?, lift(compare_topologies(&pp, &all))?);
        if !ok(a) || !ok(b) {
            return fail(format!("FG vs PP {a:?}, PP vs ALL {b:?}"));
        }
        Ok(format!("FG vs ALL {:?}", lift(compare_topologies(&fg, &all))?))
    });
    for flag in Flag::ALL_FLAGS {
        run.run("prime opens are complements of irreducible closeds", &format!("{subject}/Ziegler {flag}"), || {
            prime_opens_outcome(&lift(p.ziegler_type_topology(flag))?)
        });
        run.run("prime opens are complements of irreducible closeds", &format!("{subject}/Zariski {flag}"), || {
            prime_opens_outcome(&lift(p.zariski_type_topology(flag))?)
        });
    }
    if p.has_full_families() {
        run.run("full families give coinciding flagged topologies", subject, || {
            let r = lift(prime_correspondence(p))?;
            if !r.passed() {
                return fail(format!("{r:?}"));
            }
            Ok(format!("{} primes", r.primes))
        });
    }
    run.run("local exactly when there is a unique closed point", subject, || {
        let spec = p.spec();
        let unique_max = spec.maximal(spec.all()).len() == 1;
        let case1 = matches!(lift(classify_local(&p.model()))?, LocalityVerdict::Case1 { .. });
        if unique_max != case1 {
            return fail(format!("unique maximal {unique_max}, simple-generated minimum {case1}"));
        }
        if case1 {
            let r = lift(closed_point_check(p))?;
            if !r.passed() {
                return fail(format!("{r:?}"));
            }
            return Ok(format!("closed point {} isolated and generic", r.point));
        }
        Ok("not local".into())
    });
}

// ---------------------------------------------------------------------------
// Functors

fn functor_checks(run: &mut Runner, subject: &str, f: &ExactFunctorModel) {
    run.run("Ser(f) preserves order and finite meets", subject, || {
        let r = lift(pullback_report(f))?;
        if !r.preserves_order || !r.preserves_meets {
            return fail(format!("order {}, meets {}", r.preserves_order, r.preserves_meets));
        }
        Ok(format!("{} join failures, {} Sp failures", r.join_failures.len(), r.sp_failures.len()))
    });
    run.run("Ser(f) is continuous for both topologies", subject, || {
        let c = lift(continuity_check(f))?;
        if !c.passed() {
            return fail(format!("{c:?}"));
        }
        Ok(format!("{} basics", c.basics_checked))
    });
    if f.kind() == FunctorKind::Composite {
        run.run("Ser of a composite is the composite of Ser", subject, || {
            if !lift(composition_check(f))? {
                return fail("pullbacks do not compose");
            }
            Ok("composes".into())
        });
    }
}

/// Known failures that the bundled functor fixtures must keep exhibiting.
fn functor_regressions(run: &mut Runner, name: &str, f: &ExactFunctorModel) {
    match name {
        "a2-inclusion" => run.run("inclusion of add(T) fails to preserve a join", name, || {
            let r = lift(pullback_report(f))?;
            match r.join_failures.first() {
                Some(j) => Ok(format!("{} ∨ {}, witness {}", j.s.members.join(","), j.t.members.join(","), j.witness)),
                None => fail("no join failure"),
            }
        }),
        "a3-sink-composite" => run.run("Ser(f) sends the prime zero to a non-prime", name, || {
            let r = lift(pullback_report(f))?;
            if !r.sp_failures.iter().any(|s| s.element.is_empty()) {
                return fail("zero is not among the Sp failures");
            }
            if lift(f.pullback(ElemSet::EMPTY))? != ElemSet::EMPTY {
                return fail("Ser(f)(0) is not 0");
            }
            Ok("Ser(f)(0) = 0".into())
        }),
        _ => {}
    }
}

// ---------------------------------------------------------------------------

fn quivers_of(fixtures: &[(&str, Fixture)]) -> Vec<(String, Arc<BoundQuiver>, Vec<Representation>)> {
    let mut out: Vec<(String, Arc<BoundQuiver>, Vec<Representation>)> = Vec::new();
    let mut add = |name: &str, q: &Arc<BoundQuiver>, named: Vec<Representation>| {
        if let Some(entry) = out.iter_mut().find(|(_, p, _)| p == q) {
            entry.2.extend(named);
        } else {
            out.push((name.to_string(), q.clone(), named));
        }
    };
    for (name, f) in fixtures {
        match f {
            Fixture::Model(m) => match &m.model {
                CategoryModel::Length(q) => add(name, q, m.reps().into_iter().map(|(_, r)| r.clone()).collect()),
                CategoryModel::ExactSub(s) => add(name, s.ambient(), s.simples().to_vec()),
                CategoryModel::Spectral(_) => {}
            },
            Fixture::Functor(f) => {
                for model in [f.source(), f.target()] {
                    match model {
                        CategoryModel::Length(q) => add(name, q, vec![]),
                        CategoryModel::ExactSub(s) => add(name, s.ambient(), s.simples().to_vec()),
                        CategoryModel::Spectral(_) => {}
                    }
                }
            }
        }
    }
    out
}

/// Runs every check on the given fixtures and on seeded random posets.
pub fn run_suite(fixtures: &[(&str, Fixture)], opts: &VerifyOptions) -> VerifyReport {
    let mut run = Runner { checks: Vec::new() };
    for (name, f) in fixtures {
        match f {
            Fixture::Model(m) => model_checks(&mut run, name, m, opts),
            Fixture::Functor(func) => {
                functor_checks(&mut run, name, func);
                functor_regressions(&mut run, name, func);
            }
        }
    }
    for (name, q, named) in quivers_of(fixtures) {
        quiver_checks(&mut run, &format!("quiver of {name}"), &q, &named, opts);
    }
    run.run("succession is strictly stronger than membership", "A2", succession_converse_fails);
    for (i, p) in random_posets(opts.seed, opts.random_posets, opts.random_poset_size)
        .iter()
        .enumerate()
    {
        poset_checks(&mut run, &format!("random poset {i} (seed {})", opts.seed), p);
    }
    let failed = run.checks.iter().filter(|c| !c.passed).count();
    VerifyReport {
        passed: run.checks.len() - failed,
        failed,
        checks: run.checks,
    }
}

/// The suite over every bundled fixture.
pub fn verify_bundled(opts: &VerifyOptions) -> Result<VerifyReport> {
    let fixtures = crate::fixtures::all_bundled()?;
    Ok(run_suite(&fixtures, opts))
}

/// Turns a failed report into an invariant error naming the first failing check.
pub fn into_result(report: &VerifyReport) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::Invariant {
            check: c.check.to_string(),
            detail: format!("{}: {}", c.subject, c.detail),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_small_frames() {
        let p = FinitePoset::antichain(["a", "b", "c"]).unwrap();
        let r = cha_laws(&upset_frame(&p).unwrap()).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.elements, 8);
        assert_eq!(r.subset_families, Some(256 * 8));
    }

    #[test]
    fn random_posets_are_seeded() {
        let a = random_posets(7, 10, 6);
        let b = random_posets(7, 10, 6);
        assert!(a.iter().zip(&b).all(|(x, y)| x.same_order_as(y) && x.labels() == y.labels()));
        assert!(a.iter().all(|p| p.len() <= 6));
    }

    #[test]
    fn failing_check_reported() {
        let mut run = Runner { checks: Vec::new() };
        run.run("always fails", "nothing", || fail("by design"));
        assert!(!run.checks[0].passed);
        let report = VerifyReport {
            passed: 0,
            failed: 1,
            checks: run.checks,
        };
        assert!(matches!(into_result(&report), Err(Error::Invariant { .. })));
    }
}
