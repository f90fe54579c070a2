use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::linalg::{all_subspaces, coordinates, Matrix, Subspace};
use super::quiver::BoundQuiver;
use super::rep::{find_isomorphism, Representation, EXTENDED_DIM_BOUND};
use crate::error::{Error, Result};
use crate::frame::ElemSet;

/// One subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceTuple(pub Vec<Subspace>);

impl SubspaceTuple {
    pub fn zero(x: &Representation) -> Self {
        SubspaceTuple(x.dims().iter().map(|&d| Subspace::zero(x.field(), d)).collect())
    }

    pub fn full(x: &Representation) -> Self {
        SubspaceTuple(x.dims().iter().map(|&d| Subspace::full(x.field(), d)).collect())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|s| s.dim()).sum()
    }

    pub fn is_within(&self, other: &SubspaceTuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Each arrow of `x` maps the chosen subspace into the chosen subspace.
    pub fn is_compatible(&self, x: &Representation) -> bool {
        x.quiver()
            .arrows()
            .iter()
            .zip(x.maps())
            .all(|(a, m)| self.0[a.src].image(m).is_subspace_of(&self.0[a.dst]))
    }
}

/// `Z <= Y <= X` with `Y/Z` isomorphic to the target, and the isomorphism
/// from `Y/Z` (in the basis given by [`factor`]) to the target.
#[derive(Clone, Debug)]
pub struct SubquotientWitness {
    pub subrep: SubspaceTuple,
    pub kill: SubspaceTuple,
    pub iso: Vec<Matrix>,
}

/// Every subrepresentation of `x`, ordered by total dimension.
pub fn subrepresentations(x: &Representation, bound: usize) -> Result<Vec<SubspaceTuple>> {
    x.check_bound(bound)?;
    let f = x.field();
    let mut cache: HashMap<usize, Vec<Subspace>> = HashMap::new();
    for &d in x.dims() {
        cache.entry(d).or_insert_with(|| all_subspaces(f, d));
    }
    let n = x.dims().len();
    let mut out = Vec::new();
    let mut chosen: Vec<Subspace> = Vec::with_capacity(n);
    fn rec(
        x: &Representation,
        cache: &HashMap<usize, Vec<Subspace>>,
        chosen: &mut Vec<Subspace>,
        out: &mut Vec<SubspaceTuple>,
    ) {
        let v = chosen.len();
        if v == x.dims().len() {
            out.push(SubspaceTuple(chosen.clone()));
            return;
        }
        for s in &cache[&x.dims()[v]] {
            chosen.push(s.clone());
            // Only arrows between already chosen vertices can be checked.
            let ok = x.quiver().arrows().iter().zip(x.maps()).all(|(a, m)| {
                a.src > v || a.dst > v || (a.src != v && a.dst != v) || chosen[a.src].image(m).is_subspace_of(&chosen[a.dst])
            });
            if ok {
                rec(x, cache, chosen, out);
            }
            chosen.pop();
        }
    }
    rec(x, &cache, &mut chosen, &mut out);
    out.sort_by_key(|t| t.total_dim());
    debug_assert!(n == 0 || !out.is_empty());
    Ok(out)
}

/// The factor `upper / lower` of `x`. At each vertex the basis is the
/// extension of `lower`'s basis to one of `upper`, keeping the added vectors.
pub fn factor(x: &Representation, upper: &SubspaceTuple, lower: &SubspaceTuple) -> Representation {
    let f = x.field();
    let q = x.quiver();
    let ext: Vec<Vec<Vec<u8>>> = lower.0.iter().zip(&upper.0).map(|(z, y)| z.complement_in(y)).collect();
    let dims: Vec<usize> = ext.iter().map(|e| e.len()).collect();
    let maps = q
        .arrows()
        .iter()
        .zip(x.maps())
        .map(|(a, m)| {
            let (v, w) = (a.src, a.dst);
            let kill = lower.0[w].dim();
            let mut full = lower.0[w].basis().clone();
            if !ext[w].is_empty() {
                full = full.stack(&Matrix::from_row_vectors(f, x.dims()[w], &ext[w]));
            }
            let mut out = Matrix::zeros(f, dims[w], dims[v]);
            for (j, c) in ext[v].iter().enumerate() {
                let image = m.apply(c);
                let coords = coordinates(&full, &image).expect("subrepresentation is arrow-closed");
                for i in 0..dims[w] {
                    out.set(i, j, coords[kill + i]);
                }
            }
            out
        })
        .collect();
    Representation::from_parts(q.clone(), dims, maps).expect("factor shapes are consistent")
}

/// Pairs `Z <= Y` of subrepresentations of `x`, by index into `subs`.
fn nested_pairs(subs: &[SubspaceTuple]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (yi, y) in subs.iter().enumerate() {
        for (zi, z) in subs.iter().enumerate() {
            if z.total_dim() <= y.total_dim() && z.is_within(y) {
                out.push((yi, zi));
            }
        }
    }
    out
}

/// A witness that `a` is a subquotient of `x`, if one exists.
pub fn is_subquotient(a: &Representation, x: &Representation, bound: usize) -> Result<Option<SubquotientWitness>> {
    a.same_quiver(x)?;
    a.check_bound(bound)?;
    let subs = subrepresentations(x, bound)?;
    let target: Vec<usize> = a.dims().to_vec();
    for (yi, zi) in nested_pairs(&subs) {
        let (y, z) = (&subs[yi], &subs[zi]);
        let fits = y.dims().iter().zip(z.dims()).zip(&target).all(|((dy, dz), t)| dy - dz == *t);
        if !fits {
            continue;
        }
        let q = factor(x, y, z);
        if let Some(iso) = find_isomorphism(&q, a)? {
            return Ok(Some(SubquotientWitness {
                subrep: y.clone(),
                kill: z.clone(),
                iso,
            }));
        }
    }
    Ok(None)
}

/// Isomorphism classes of nonzero subquotients of a fixed object, bucketed by dimension vector.
#[derive(Clone, Debug, Default)]
pub struct SubquotientCatalog {
    by_dims: HashMap<Vec<usize>, Vec<Representation>>,
}

impl SubquotientCatalog {
    pub fn of(x: &Representation, bound: usize) -> Result<Self> {
        let subs = subrepresentations(x, bound)?;
        let mut cat = SubquotientCatalog::default();
        for (yi, zi) in nested_pairs(&subs) {
            if subs[yi].total_dim() == subs[zi].total_dim() {
                continue;
            }
            let q = factor(x, &subs[yi], &subs[zi]);
            if !cat.contains(&q)? {
                cat.by_dims.entry(q.dims().to_vec()).or_default().push(q);
            }
        }
        Ok(cat)
    }

    pub fn contains(&self, a: &Representation) -> Result<bool> {
        if let Some(list) = self.by_dims.get(a.dims()) {
            for r in list {
                if find_isomorphism(r, a)?.is_some() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn len(&self) -> usize {
        self.by_dims.values().map(|v| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = &Representation> {
        self.by_dims.values().flatten()
    }
}

/// A chain `0 = A_0 < A_1 < ... < A_n = A` of subrepresentations; `generator[i]`
/// names a generator having `A_{i+1}/A_i` as a subquotient.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub chain: Vec<SubspaceTuple>,
    pub generator: Vec<usize>,
}

impl ChainCertificate {
    pub fn factors(&self, a: &Representation) -> Vec<Representation> {
        self.chain.windows(2).map(|w| factor(a, &w[1], &w[0])).collect()
    }
}

/// Serre membership by searching for a composition chain whose factors are
/// subquotients of the generators.
pub fn serre_membership_chain(
    a: &Representation,
    gens: &[Representation],
    bound: usize,
) -> Result<Option<ChainCertificate>> {
    let catalogs = gens
        .iter()
        .map(|g| {
            a.same_quiver(g)?;
            SubquotientCatalog::of(g, bound)
        })
        .collect::<Result<Vec<_>>>()?;
    serre_membership_chain_with(a, &catalogs, bound)
}

/// As [`serre_membership_chain`], with the generators' subquotients precomputed.
pub fn serre_membership_chain_with(
    a: &Representation,
    catalogs: &[SubquotientCatalog],
    bound: usize,
) -> Result<Option<ChainCertificate>> {
    let subs = subrepresentations(a, bound)?;
    let top = subs.len() - 1;
    debug_assert_eq!(subs[top], SubspaceTuple::full(a));

    struct Search<'a> {
        a: &'a Representation,
        subs: &'a [SubspaceTuple],
        catalogs: &'a [SubquotientCatalog],
        failed: HashSet<usize>,
    }
    impl Search<'_> {
        // Returns the chain below `y` as (subrep index, generator) steps, bottom first.
        fn run(&mut self, y: usize) -> Result<Option<Vec<(usize, usize)>>> {
            if self.subs[y].total_dim() == 0 {
                return Ok(Some(vec![]));
            }
            if self.failed.contains(&y) {
                return Ok(None);
            }
            // Smallest A' first: long factors give short chains.
            for z in 0..self.subs.len() {
                let (sy, sz) = (&self.subs[y], &self.subs[z]);
                if sz.total_dim() >= sy.total_dim() || !sz.is_within(sy) {
                    continue;
                }
                let q = factor(self.a, sy, sz);
                for (g, cat) in self.catalogs.iter().enumerate() {
                    if cat.contains(&q)? {
                        if let Some(mut steps) = self.run(z)? {
                            steps.push((y, g));
                            return Ok(Some(steps));
                        }
                        break;
                    }
                }
            }
            self.failed.insert(y);
            Ok(None)
        }
    }

    let mut search = Search {
        a,
        subs: &subs,
        catalogs,
        failed: HashSet::new(),
    };
    Ok(search.run(top)?.map(|steps| {
        let mut chain = vec![SubspaceTuple::zero(a)];
        let mut generator = Vec::new();
        for (y, g) in steps {
            chain.push(subs[y].clone());
            generator.push(g);
        }
        ChainCertificate { chain, generator }
    }))
}

/// Serre membership by composition factors: `supp(a)` lies in the union of
/// the generators' supports.
pub fn serre_membership_support(a: &Representation, gens: &[Representation]) -> bool {
    let union = gens.iter().fold(ElemSet::EMPTY, |acc, g| acc.union(g.support()));
    a.support().is_subset(union)
}

/// A nonzero common subquotient, namely a simple at a shared support vertex.
pub fn common_subquotient(a: &Representation, b: &Representation) -> Option<Representation> {
    a.support()
        .intersection(b.support())
        .first()
        .map(|v| Representation::simple(a.quiver().clone(), v))
}

/// `b` succeeds `a` at level `n`: `a` is a subquotient of `b^n`.
pub fn succeeds(b: &Representation, a: &Representation, n: usize) -> Result<bool> {
    let bn = b.power(n);
    if bn.total_dim() > EXTENDED_DIM_BOUND {
        return Err(Error::DimensionBound {
            actual: bn.total_dim(),
            bound: EXTENDED_DIM_BOUND,
        });
    }
    Ok(is_subquotient(a, &bn, EXTENDED_DIM_BOUND)?.is_some())
}

/// `a` is nonzero and every nonzero object in `objects` succeeds it at some level `<= n`.
/// Levels that would exceed the extended bound are skipped.
pub fn is_quasifinal(a: &Representation, objects: &[Representation], n: usize) -> Result<bool> {
    if a.is_zero() {
        return Ok(false);
    }
    for b in objects.iter().filter(|b| !b.is_zero()) {
        let mut found = false;
        for m in 1..=n {
            if b.total_dim() * m > EXTENDED_DIM_BOUND {
                break;
            }
            if succeeds(b, a, m)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper limit on matrix tuples enumerated for one dimension vector.
const MAX_TUPLES: u64 = 1 << 20;

/// Every representation with the given dimension vector, as raw matrix tuples.
pub fn representations_with_dims(quiver: &Arc<BoundQuiver>, dims: &[usize]) -> Result<Vec<Representation>> {
    let f = quiver.field();
    let entries: usize = quiver.arrows().iter().map(|a| dims[a.src] * dims[a.dst]).sum();
    let p = f.p() as u64;
    let count = p.checked_pow(entries as u32).filter(|&c| c <= MAX_TUPLES).ok_or(Error::SizeGuard {
        what: "matrix tuples for one dimension vector",
        actual: entries,
        limit: (MAX_TUPLES as f64).log(p as f64).floor() as usize,
    })?;
    let mut out = Vec::new();
    for code in 0..count {
        let mut c = code;
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(f, dims[a.dst], dims[a.src]);
                for i in 0..dims[a.dst] {
                    for j in 0..dims[a.src] {
                        m.set(i, j, (c % p) as u8);
                        c /= p;
                    }
                }
                m
            })
            .collect();
        if let Ok(r) = Representation::new(quiver.clone(), dims.to_vec(), maps) {
            out.push(r);
        }
    }
    Ok(out)
}

/// One representative of every isomorphism class with total dimension `<= max_total`,
/// zero included.
pub fn isoclasses(quiver: &Arc<BoundQuiver>, max_total: usize) -> Result<Vec<Representation>> {
    let n = quiver.num_vertices();
    let mut out = Vec::new();
    for dims in dimension_vectors(n, max_total) {
        let mut reps: Vec<Representation> = Vec::new();
        for r in representations_with_dims(quiver, &dims)? {
            let mut new = true;
            for s in &reps {
                if find_isomorphism(s, &r)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(r);
            }
        }
        out.extend(reps);
    }
    Ok(out)
}

/// All vectors of `n` naturals with sum `<= max_total`, by increasing sum.
pub fn dimension_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        let mut cur = vec![0; n];
        fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for d in 0..=left {
                cur[i] = d;
                rec(i + 1, left - d, cur, out);
            }
        }
        if n == 0 {
            if total == 0 {
                out.push(vec![]);
            }
            continue;
        }
        rec(0, total, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::rep::{is_morphism, DEFAULT_DIM_BOUND};

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

    struct A2 {
        p1: Representation,
        s1: Representation,
        s2: Representation,
    }

    fn a2_objects() -> A2 {
        let q = a2();
        A2 {
            p1: Representation::projective(q.clone(), 0).unwrap(),
            s1: Representation::simple(q.clone(), 0),
            s2: Representation::simple(q, 1),
        }
    }

    #[test]
    fn subrep_counts() {
        let o = a2_objects();
        let subs = subrepresentations(&o.p1, DEFAULT_DIM_BOUND).unwrap();
        assert_eq!(subs.iter().map(|t| t.dims()).collect::<Vec<_>>(), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(subrepresentations(&o.s1, 6).unwrap().len(), 2);
        assert_eq!(subrepresentations(&o.s1.power(2), 6).unwrap().len(), 5);
        for t in subrepresentations(&o.p1.power(2), 6).unwrap() {
            assert!(t.is_compatible(&o.p1.power(2)));
        }
    }

    #[test]
    fn subrep_bound_enforced() {
        let o = a2_objects();
        assert!(matches!(
            subrepresentations(&o.p1.power(4), 6),
            Err(Error::DimensionBound { actual: 8, bound: 6 })
        ));
    }

    #[test]
    fn subquotients_of_p1() {
        let o = a2_objects();
        let w = is_subquotient(&o.s1, &o.p1, 6).unwrap().expect("top of P1");
        assert_eq!(w.kill.dims(), vec![0, 1]);
        let q = factor(&o.p1, &w.subrep, &w.kill);
        assert!(is_morphism(&q, &o.s1, &w.iso));
        let ss = o.s1.direct_sum(&o.s2).unwrap();
        assert!(is_subquotient(&ss, &o.p1, 6).unwrap().is_none());
        let zero = Representation::zero(a2());
        assert!(is_subquotient(&zero, &o.p1, 6).unwrap().is_some());
    }

    #[test]
    fn chain_examples() {
        let o = a2_objects();
        let ss = o.s1.direct_sum(&o.s2).unwrap();
        let cert = serre_membership_chain(&ss, std::slice::from_ref(&o.p1), 6).unwrap().expect("two-step chain");
        let factors = cert.factors(&ss);
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|f| f.total_dim() == 1));
        assert!(serre_membership_chain(&o.p1, std::slice::from_ref(&o.s1), 6).unwrap().is_none());
        let zero = Representation::zero(a2());
        let cert = serre_membership_chain(&zero, &[], 6).unwrap().unwrap();
        assert_eq!(cert.chain.len(), 1);
    }

    #[test]
    fn support_examples() {
        let o = a2_objects();
        assert!(serre_membership_support(&o.p1, &[o.s1.clone(), o.s2.clone()]));
        let q = a3_sink();
        let simples = Representation::simples(&q);
        assert!(!serre_membership_support(&simples[0], &[simples[1].clone(), simples[2].clone()]));
        assert!(serre_membership_support(&Representation::zero(q), &[]));
    }

    #[test]
    fn common_subquotients() {
        let o = a2_objects();
        assert_eq!(common_subquotient(&o.p1, &o.s1), Some(o.s1.clone()));
        assert_eq!(common_subquotient(&o.s1, &o.s2), None);
        let c = common_subquotient(&o.p1, &o.p1).unwrap();
        assert!(is_subquotient(&c, &o.p1, 6).unwrap().is_some());
    }

    #[test]
    fn succession() {
        let o = a2_objects();
        let ss = o.s1.direct_sum(&o.s2).unwrap();
        assert!(succeeds(&ss, &o.s1, 1).unwrap());
        // P1 is not a subquotient of a semisimple object.
        assert!(!succeeds(&ss, &o.p1, 1).unwrap());
        assert!(!succeeds(&ss, &o.p1, 2).unwrap());
        // S_1 + S_2 is a subquotient of P1^2 but not of P1.
        assert!(!succeeds(&o.p1, &ss, 1).unwrap());
        assert!(succeeds(&o.p1, &ss, 2).unwrap());
        assert!(succeeds(&o.p1, &ss, 5).is_err());
    }

    #[test]
    fn quasifinal_in_a2() {
        let o = a2_objects();
        let objs = vec![o.s1.clone(), o.s2.clone(), o.p1.clone()];
        // No single object is a subquotient of both S_1 and S_2.
        assert!(!is_quasifinal(&o.s1, &objs, 2).unwrap());
        assert!(is_quasifinal(&o.s1, &[o.p1.clone(), o.s1.clone()], 2).unwrap());
    }

    #[test]
    fn a2_isoclasses() {
        // Indecomposables S_1, S_2, P1; classes of total dim <= 2:
        // 0; S_1; S_2; S_1^2; S_2^2; S_1+S_2; P1.
        let cls = isoclasses(&a2(), 2).unwrap();
        assert_eq!(cls.len(), 7);
    }

    #[test]
    fn dimension_vector_count() {
        // Compositions of totals 0..=2 into 3 parts: 1 + 3 + 6.
        assert_eq!(dimension_vectors(3, 2).len(), 10);
    }
}
