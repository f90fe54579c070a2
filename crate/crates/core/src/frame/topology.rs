use std::collections::HashSet;

use serde::Serialize;

use super::elemset::{ElemSet, MAX_POINTS};
use super::lattice::MAX_FRAME_BASE;
use super::poset::{FinitePoset, Preorder};
use crate::error::{invariant, Error, Result};

/// Largest open family whose closure axioms are verified pair by pair.
const MAX_CHECKED_OPENS: usize = 1 << 14;

/// Largest open family produced by closing a subbasis.
const MAX_OPENS: usize = 1 << 20;

/// A topology on a finite labelled point set, given by its open sets.
#[derive(Clone, Debug)]
pub struct TopologySpace {
    labels: Vec<String>,
    opens: Vec<ElemSet>,
    lookup: HashSet<ElemSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TopologyComparison {
    Equal,
    StrictlyCoarser,
    StrictlyFiner,
    Incomparable,
}

impl TopologySpace {
    /// Validates `opens` exhaustively: contains the empty and the full set and
    /// is closed under pairwise union and intersection.
    pub fn new(labels: Vec<String>, opens: Vec<ElemSet>) -> Result<Self> {
        if labels.len() > MAX_POINTS {
            return Err(Error::SizeGuard {
                what: "topological space",
                actual: labels.len(),
                limit: MAX_POINTS,
            });
        }
        let t = TopologySpace::from_closed_family(labels, opens);
        if t.opens.len() > MAX_CHECKED_OPENS {
            return Err(Error::SizeGuard {
                what: "open family",
                actual: t.opens.len(),
                limit: MAX_CHECKED_OPENS,
            });
        }
        let full = ElemSet::full(t.labels.len());
        if !t.is_open(ElemSet::EMPTY) || !t.is_open(full) {
            return Err(Error::InvalidTopology("missing the empty set or the whole space".into()));
        }
        for &u in &t.opens {
            if !u.is_subset(full) {
                return Err(Error::InvalidTopology(format!("open {u:?} is not a set of points")));
            }
            for &v in &t.opens {
                if !t.is_open(u.union(v)) || !t.is_open(u.intersection(v)) {
                    return Err(Error::InvalidTopology(format!(
                        "not closed under union/intersection at {u:?}, {v:?}"
                    )));
                }
            }
        }
        Ok(t)
    }

    fn from_closed_family(labels: Vec<String>, mut opens: Vec<ElemSet>) -> Self {
        opens.sort_by_key(|s| (s.len(), s.0));
        opens.dedup();
        let lookup = opens.iter().copied().collect();
        TopologySpace {
            labels,
            opens,
            lookup,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> ElemSet {
        ElemSet::full(self.labels.len())
    }

    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn is_open(&self, u: ElemSet) -> bool {
        self.lookup.contains(&u)
    }

    pub fn is_closed(&self, c: ElemSet) -> bool {
        self.is_open(c.complement(self.len()))
    }

    pub fn closeds(&self) -> Vec<ElemSet> {
        let mut out: Vec<ElemSet> = self.opens.iter().map(|u| u.complement(self.len())).collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: ElemSet) -> ElemSet {
        let outside = self
            .opens
            .iter()
            .filter(|u| u.is_disjoint(set))
            .fold(ElemSet::EMPTY, |acc, &u| acc.union(u));
        outside.complement(self.len())
    }

    pub fn interior(&self, set: ElemSet) -> ElemSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(set))
            .fold(ElemSet::EMPTY, |acc, &u| acc.union(u))
    }

    /// Specialisation preorder: `x <= y` iff `x ∈ cl(y)`.
    pub fn specialisation(&self) -> Preorder {
        let mut pairs = Vec::new();
        for y in 0..self.len() {
            for x in self.closure(ElemSet::singleton(y)).iter() {
                pairs.push((x, y));
            }
        }
        Preorder::from_relation(self.labels.clone(), &pairs).expect("labels already validated")
    }

    /// Quotient by topological indistinguishability. Each class is named after
    /// its first point; the second component maps old points to classes.
    pub fn t0_quotient(&self) -> (TopologySpace, Vec<usize>) {
        let spec = self.specialisation();
        let classes = spec.equivalence_classes();
        let mut class_of = vec![0; self.len()];
        for (c, members) in classes.iter().enumerate() {
            for x in members.iter() {
                class_of[x] = c;
            }
        }
        let labels = classes
            .iter()
            .map(|c| self.labels[c.first().expect("classes are non-empty")].clone())
            .collect();
        let opens = self
            .opens
            .iter()
            .map(|u| u.iter().map(|x| class_of[x]).collect())
            .collect();
        (TopologySpace::from_closed_family(labels, opens), class_of)
    }

    pub fn is_t0(&self) -> bool {
        self.specialisation().is_antisymmetric()
    }

    /// A closed set is irreducible when it is non-empty and not the union of
    /// its proper closed subsets.
    pub fn is_irreducible_closed(&self, c: ElemSet) -> bool {
        if c.is_empty() || !self.is_closed(c) {
            return false;
        }
        let proper_union = self
            .closeds()
            .into_iter()
            .filter(|d| d.is_proper_subset(c))
            .fold(ElemSet::EMPTY, ElemSet::union);
        proper_union != c
    }

    pub fn irreducible_closeds(&self) -> Vec<ElemSet> {
        self.closeds()
            .into_iter()
            .filter(|&c| self.is_irreducible_closed(c))
            .collect()
    }

    /// A point whose closure is exactly `closed`.
    pub fn generic_point(&self, closed: ElemSet) -> Option<usize> {
        closed
            .iter()
            .find(|&x| self.closure(ElemSet::singleton(x)) == closed)
    }

    /// Primality of an open in the frame of opens, decided lattice-theoretically:
    /// `U` is not the whole space and `V ∩ W ⊆ U` forces `V ⊆ U` or `W ⊆ U`.
    pub fn is_prime_open(&self, u: ElemSet) -> bool {
        if !self.is_open(u) || u == self.points() {
            return false;
        }
        self.opens.iter().all(|&v| {
            v.is_subset(u)
                || self
                    .opens
                    .iter()
                    .all(|&w| w.is_subset(u) || !v.intersection(w).is_subset(u))
        })
    }

    pub fn prime_opens(&self) -> Vec<ElemSet> {
        self.opens
            .iter()
            .copied()
            .filter(|&u| self.is_prime_open(u))
            .collect()
    }
}

/// Alexandrov topology: the opens are the up-closed sets.
pub fn alexandrov(order: &Preorder) -> Result<TopologySpace> {
    if order.len() > MAX_FRAME_BASE {
        return Err(Error::SizeGuard {
            what: "Alexandrov point set",
            actual: order.len(),
            limit: MAX_FRAME_BASE,
        });
    }
    Ok(TopologySpace::from_closed_family(
        order.labels().to_vec(),
        order.enumerate_up_sets(),
    ))
}

/// Alexandrov topology of a partial order.
pub fn alexandrov_poset(order: &FinitePoset) -> Result<TopologySpace> {
    alexandrov(order.as_preorder())
}

/// Topology generated by `family`: finite intersections, then arbitrary unions.
pub fn topology_from_subbasis(labels: Vec<String>, family: &[ElemSet]) -> Result<TopologySpace> {
    if labels.len() > MAX_POINTS {
        return Err(Error::SizeGuard {
            what: "topological space",
            actual: labels.len(),
            limit: MAX_POINTS,
        });
    }
    let full = ElemSet::full(labels.len());
    if let Some(bad) = family.iter().find(|s| !s.is_subset(full)) {
        return Err(Error::InvalidTopology(format!("subbasis member {bad:?} is not a set of points")));
    }

    // Basis: the full set (empty intersection) and all finite intersections.
    let mut basis: Vec<ElemSet> = vec![full];
    let mut seen: HashSet<ElemSet> = basis.iter().copied().collect();
    for &s in family {
        let extra: Vec<ElemSet> = basis.iter().map(|b| b.intersection(s)).collect();
        for e in extra {
            if seen.insert(e) {
                basis.push(e);
            }
        }
        if seen.insert(s) {
            basis.push(s);
        }
    }

    // Unions, starting from the empty union.
    let mut opens: Vec<ElemSet> = vec![ElemSet::EMPTY];
    let mut lookup: HashSet<ElemSet> = opens.iter().copied().collect();
    for &b in &basis {
        let extra: Vec<ElemSet> = opens.iter().map(|u| u.union(b)).collect();
        for e in extra {
            if lookup.insert(e) {
                opens.push(e);
                if opens.len() > MAX_OPENS {
                    return Err(Error::SizeGuard {
                        what: "open family",
                        actual: opens.len(),
                        limit: MAX_OPENS,
                    });
                }
            }
        }
    }
    Ok(TopologySpace::from_closed_family(labels, opens))
}

/// Compares two topologies on the same labelled point set by open-family inclusion.
pub fn compare_topologies(t1: &TopologySpace, t2: &TopologySpace) -> Result<TopologyComparison> {
    if t1.labels != t2.labels {
        return Err(Error::LabelMismatch);
    }
    let sub = t1.opens.iter().all(|u| t2.is_open(*u));
    let sup = t2.opens.iter().all(|u| t1.is_open(*u));
    Ok(match (sub, sup) {
        (true, true) => TopologyComparison::Equal,
        (true, false) => TopologyComparison::StrictlyCoarser,
        (false, true) => TopologyComparison::StrictlyFiner,
        (false, false) => TopologyComparison::Incomparable,
    })
}

/// Checks that the opens of `t` with irreducible complement are exactly its
/// prime opens.
pub fn check_prime_opens_vs_irreducible_closeds(t: &TopologySpace) -> Result<()> {
    for &u in t.opens() {
        let prime = t.is_prime_open(u);
        let irreducible = t.is_irreducible_closed(u.complement(t.len()));
        if prime != irreducible {
            return Err(invariant(
                "prime open iff irreducible complement",
                format!("open {u:?}: prime={prime}, irreducible complement={irreducible}"),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn fan3() -> FinitePoset {
        FinitePoset::from_covers(
            vec!["g".into(), "p1".into(), "p2".into(), "p3".into()],
            &[("g", "p1"), ("g", "p2"), ("g", "p3")],
        )
        .unwrap()
    }

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(
            vec!["g".into(), "p1".into(), "p2".into(), "m".into()],
            &[("g", "p1"), ("g", "p2"), ("p1", "m"), ("p2", "m")],
        )
        .unwrap()
    }

    #[test]
    fn alexandrov_of_discrete_is_discrete() {
        let p = FinitePoset::antichain(["a", "b"]).unwrap();
        let t = alexandrov_poset(&p).unwrap();
        assert_eq!(t.opens().len(), 4);
    }

    #[test]
    fn subbasis_of_empty_set_is_indiscrete() {
        let t = topology_from_subbasis(labels(3), &[ElemSet::EMPTY]).unwrap();
        assert_eq!(t.opens(), &[ElemSet::EMPTY, ElemSet::full(3)]);
    }

    #[test]
    fn principal_up_sets_generate_alexandrov() {
        let p = fan3();
        let all_up: Vec<ElemSet> = p.enumerate_up_sets();
        let principal: Vec<ElemSet> = (0..p.len()).map(|x| p.up(x)).collect();
        let a = topology_from_subbasis(p.labels().to_vec(), &all_up).unwrap();
        let b = topology_from_subbasis(p.labels().to_vec(), &principal).unwrap();
        assert_eq!(compare_topologies(&a, &b).unwrap(), TopologyComparison::Equal);
        let c = topology_from_subbasis(p.labels().to_vec(), &[p.up(1)]).unwrap();
        assert_eq!(compare_topologies(&c, &a).unwrap(), TopologyComparison::StrictlyCoarser);
        assert_eq!(compare_topologies(&a, &c).unwrap(), TopologyComparison::StrictlyFiner);
    }

    #[test]
    fn incomparable_and_mismatch() {
        let a = topology_from_subbasis(labels(2), &[ElemSet::singleton(0)]).unwrap();
        let b = topology_from_subbasis(labels(2), &[ElemSet::singleton(1)]).unwrap();
        assert_eq!(compare_topologies(&a, &b).unwrap(), TopologyComparison::Incomparable);
        let c = topology_from_subbasis(labels(3), &[]).unwrap();
        assert_eq!(compare_topologies(&a, &c), Err(Error::LabelMismatch));
    }

    #[test]
    fn new_rejects_non_topologies() {
        let bad = TopologySpace::new(
            labels(2),
            vec![ElemSet::EMPTY, ElemSet::singleton(0), ElemSet::singleton(1), ElemSet::full(2)],
        );
        assert!(bad.is_ok());
        let bad = TopologySpace::new(labels(3), vec![ElemSet::EMPTY, ElemSet::singleton(0), ElemSet::singleton(1), ElemSet::full(3)]);
        assert!(matches!(bad, Err(Error::InvalidTopology(_))));
    }

    #[test]
    fn specialisation_recovers_chain() {
        let p = FinitePoset::chain(["g", "m"]).unwrap();
        let t = alexandrov_poset(&p).unwrap();
        let s = t.specialisation();
        assert!(s.leq(0, 1));
        assert!(!s.leq(1, 0));
    }

    #[test]
    fn diamond_irreducible_closeds_are_principal_down_sets() {
        let p = diamond();
        let t = alexandrov_poset(&p).unwrap();
        let mut irr = t.irreducible_closeds();
        irr.sort();
        let mut expected: Vec<ElemSet> = (0..p.len()).map(|x| p.down(x)).collect();
        expected.sort();
        assert_eq!(irr, expected);
        for x in 0..p.len() {
            assert_eq!(t.generic_point(p.down(x)), Some(x));
        }
        check_prime_opens_vs_irreducible_closeds(&t).unwrap();
    }

    #[test]
    fn indiscrete_t0_quotient_has_one_point() {
        let t = topology_from_subbasis(labels(2), &[]).unwrap();
        assert!(!t.is_t0());
        let (q, class_of) = t.t0_quotient();
        assert_eq!(q.len(), 1);
        assert_eq!(class_of, vec![0, 0]);
        assert!(q.is_t0());
    }

    #[test]
    fn generic_point_absent_for_reducible_closed() {
        let p = FinitePoset::antichain(["a", "b"]).unwrap();
        let t = alexandrov_poset(&p).unwrap();
        assert_eq!(t.generic_point(ElemSet::full(2)), None);
        assert!(!t.is_irreducible_closed(ElemSet::full(2)));
    }
}
