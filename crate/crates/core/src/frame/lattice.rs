use std::collections::HashMap;

use super::elemset::ElemSet;
use super::poset::FinitePoset;
use crate::error::{invariant, Error, Result};

/// Largest base poset whose up-set frame we are willing to materialise.
pub const MAX_FRAME_BASE: usize = 20;

/// A finite frame (complete Heyting algebra), realised as the up-sets of its
/// base poset. Meet is intersection and join is union.
#[derive(Clone, Debug)]
pub struct Frame {
    base: FinitePoset,
    elements: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
    }
}

/// Frame of all up-sets of `poset`.
pub fn upset_frame(poset: &FinitePoset) -> Result<Frame> {
    if poset.len() > MAX_FRAME_BASE {
        return Err(Error::SizeGuard {
            what: "frame base poset",
            actual: poset.len(),
            limit: MAX_FRAME_BASE,
        });
    }
    let elements = poset.enumerate_up_sets();
    let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    Ok(Frame {
        base: poset.clone(),
        elements,
        index,
    })
}

/// The three equivalent descriptions of a prime element, computed separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeCharacterizations {
    /// `{b : b <= a}` is a proper prime ideal.
    pub prime_ideal: bool,
    /// `a = b ∧ c` forces `a = b` or `a = c`.
    pub meet_irreducible: bool,
    /// `b ∧ c <= a` forces `b <= a` or `c <= a`.
    pub prime_order: bool,
}

/// A point of a finite locale: the principal prime ideal `↓generator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub generator: ElemSet,
}

impl Point {
    /// Membership in the prime ideal `{b : b <= generator}`.
    pub fn ideal_contains(&self, b: ElemSet) -> bool {
        b.is_subset(self.generator)
    }

    /// Membership in the complementary prime filter.
    pub fn filter_contains(&self, b: ElemSet) -> bool {
        !self.ideal_contains(b)
    }
}

impl Frame {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements ordered by size, bottom first and top last.
    pub fn elements(&self) -> &[ElemSet] {
        &self.elements
    }

    pub fn top(&self) -> ElemSet {
        self.base.all()
    }

    pub fn bottom(&self) -> ElemSet {
        ElemSet::EMPTY
    }

    pub fn contains(&self, e: ElemSet) -> bool {
        self.index.contains_key(&e)
    }

    pub fn index_of(&self, e: ElemSet) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn check(&self, e: ElemSet) -> Result<ElemSet> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(Error::NotAnElement(self.describe(e)))
        }
    }

    /// Renders an element as `{a,b}` with sorted labels.
    pub fn describe(&self, e: ElemSet) -> String {
        if e.difference(self.base.all()).is_empty() {
            format!("{{{}}}", self.base.sorted_labels_of(e).join(","))
        } else {
            format!("{:?}", e)
        }
    }

    /// Element given by the up-closure of the labelled base elements.
    pub fn generated_by<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet> {
        Ok(self.base.up_closure(self.base.set_of(labels)?))
    }

    pub fn meet(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        a.intersection(b)
    }

    pub fn join(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        a.union(b)
    }

    pub fn leq(&self, a: ElemSet, b: ElemSet) -> bool {
        a.is_subset(b)
    }

    /// `⋁` of an arbitrary family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = ElemSet>>(&self, it: I) -> ElemSet {
        it.into_iter().fold(self.bottom(), ElemSet::union)
    }

    /// `⋀` of an arbitrary family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = ElemSet>>(&self, it: I) -> ElemSet {
        it.into_iter().fold(self.top(), ElemSet::intersection)
    }

    /// Heyting implication: the largest `c` with `a ∧ c <= b`.
    pub fn implies(&self, a: ElemSet, b: ElemSet) -> Result<ElemSet> {
        self.check(a)?;
        self.check(b)?;
        let all = self.base.all();
        Ok(self.base.up_interior(a.complement(all.len()).union(b)))
    }

    /// Pseudo-complement `a -> 0`.
    pub fn negation(&self, a: ElemSet) -> Result<ElemSet> {
        self.implies(a, self.bottom())
    }

    /// Elements covering `a`. In an up-set lattice each cover adds one base element.
    pub fn upper_covers(&self, a: ElemSet) -> Vec<ElemSet> {
        a.complement(self.base.len())
            .iter()
            .map(|x| a.with(x))
            .filter(|b| self.contains(*b))
            .collect()
    }

    pub fn lower_covers(&self, a: ElemSet) -> Vec<ElemSet> {
        a.iter()
            .map(|x| a.without(x))
            .filter(|b| self.contains(*b))
            .collect()
    }

    /// Computes the three characterizations of primality independently.
    ///
    /// Each is a full scan over pairs of frame elements; the top is never
    /// prime because a prime ideal must be proper.
    pub fn prime_characterizations(&self, a: ElemSet) -> Result<PrimeCharacterizations> {
        self.check(a)?;
        let top = self.top();
        let els = &self.elements;

        // Ideal {b : b <= a} materialised as an index set, then checked as a prime ideal.
        let ideal: Vec<bool> = els.iter().map(|b| b.is_subset(a)).collect();
        let member = |e: ElemSet| self.index_of(e).map(|i| ideal[i]).unwrap_or(false);
        let proper = ideal.iter().any(|&m| !m);
        let mut down_closed = true;
        let mut join_closed = true;
        let mut prime = true;
        for (i, &b) in els.iter().enumerate() {
            for &c in els {
                if ideal[i] && c.is_subset(b) && !member(c) {
                    down_closed = false;
                }
                if ideal[i] && member(c) && !member(b.union(c)) {
                    join_closed = false;
                }
                if member(b.intersection(c)) && !ideal[i] && !member(c) {
                    prime = false;
                }
            }
        }
        let prime_ideal = proper && down_closed && join_closed && prime;

        let meet_irreducible = a != top
            && els.iter().all(|&b| {
                els.iter()
                    .all(|&c| b.intersection(c) != a || b == a || c == a)
            });

        let prime_order = a != top
            && els.iter().all(|&b| {
                els.iter().all(|&c| {
                    !b.intersection(c).is_subset(a) || b.is_subset(a) || c.is_subset(a)
                })
            });

        Ok(PrimeCharacterizations {
            prime_ideal,
            meet_irreducible,
            prime_order,
        })
    }

    /// Whether `a` is prime; fails if the three characterizations disagree.
    pub fn is_prime(&self, a: ElemSet) -> Result<bool> {
        let c = self.prime_characterizations(a)?;
        if c.prime_ideal == c.meet_irreducible && c.meet_irreducible == c.prime_order {
            Ok(c.prime_order)
        } else {
            Err(invariant(
                "prime characterizations agree",
                format!("element {} gives {:?}", self.describe(a), c),
            ))
        }
    }

    /// All prime elements: the non-top elements with exactly one upper cover.
    pub fn primes(&self) -> Vec<ElemSet> {
        self.elements
            .iter()
            .copied()
            .filter(|&a| a != self.top() && self.upper_covers(a).len() == 1)
            .collect()
    }

    /// Points of the locale, one per prime element.
    pub fn points(&self) -> Vec<Point> {
        self.primes()
            .into_iter()
            .map(|generator| Point { generator })
            .collect()
    }

    /// Non-bottom elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<ElemSet> {
        self.elements
            .iter()
            .copied()
            .filter(|&a| !a.is_empty() && self.lower_covers(a).len() == 1)
            .collect()
    }

    /// Birkhoff dual: the join-irreducibles, ordered by reverse inclusion so
    /// that `upset_frame(birkhoff_poset(F))` is isomorphic to `F`.
    pub fn birkhoff_poset(&self) -> FinitePoset {
        let joins = self.join_irreducibles();
        let labels = joins
            .iter()
            .map(|&j| {
                let mins = self.base.minimal(j);
                if mins.len() == 1 {
                    self.base.label(mins.first().unwrap()).to_string()
                } else {
                    self.describe(j)
                }
            })
            .collect();
        let leq: Vec<Vec<bool>> = joins
            .iter()
            .map(|&j| joins.iter().map(|&k| k.is_subset(j)).collect())
            .collect();
        FinitePoset::from_leq(labels, &leq).expect("inclusion restricted to join-irreducibles is a partial order")
    }

    /// Explicit isomorphism `F -> upset_frame(birkhoff_poset(F))`, sending `a`
    /// to the join-irreducibles below it. Verified to be a lattice isomorphism.
    pub fn birkhoff_isomorphism(&self) -> Result<(Frame, Vec<(ElemSet, ElemSet)>)> {
        let dual = upset_frame(&self.birkhoff_poset())?;
        let joins = self.join_irreducibles();
        let pairs: Vec<(ElemSet, ElemSet)> = self
            .elements
            .iter()
            .map(|&a| {
                let image = joins
                    .iter()
                    .enumerate()
                    .filter(|(_, j)| j.is_subset(a))
                    .map(|(i, _)| i)
                    .collect();
                (a, image)
            })
            .collect();
        let map: Vec<usize> = pairs
            .iter()
            .map(|(_, img)| {
                dual.index_of(*img)
                    .ok_or_else(|| invariant("birkhoff image is an up-set", format!("{img:?}")))
            })
            .collect::<Result<_>>()?;
        check_lattice_isomorphism(self, &dual, &map)?;
        Ok((dual, pairs))
    }

    /// Cover relation between element indices, lower first.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in self.elements.iter().enumerate() {
            for b in self.upper_covers(a) {
                out.push((i, self.index[&b]));
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements of the closed interval `[lo, hi]`.
    pub fn interval(&self, lo: ElemSet, hi: ElemSet) -> Vec<ElemSet> {
        self.elements
            .iter()
            .copied()
            .filter(|e| lo.is_subset(*e) && e.is_subset(hi))
            .collect()
    }

    /// The frame's elements as a poset under inclusion, labelled by [`Frame::describe`].
    pub fn as_poset(&self) -> FinitePoset {
        let labels = self.elements.iter().map(|&e| self.describe(e)).collect();
        let leq: Vec<Vec<bool>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| a.is_subset(b)).collect())
            .collect();
        FinitePoset::from_leq(labels, &leq).expect("inclusion is a partial order")
    }
}

/// Checks that `map` (indices of `source` elements to indices of `target`
/// elements) is a bijection preserving binary meets and joins.
pub fn check_lattice_isomorphism(source: &Frame, target: &Frame, map: &[usize]) -> Result<()> {
    let check = "lattice isomorphism";
    if source.len() != target.len() || map.len() != source.len() {
        return Err(invariant(check, "cardinalities differ"));
    }
    let mut hit = vec![false; target.len()];
    for &m in map {
        if m >= target.len() || std::mem::replace(&mut hit[m], true) {
            return Err(invariant(check, "map is not a bijection"));
        }
    }
    let s = source.elements();
    let t = target.elements();
    for i in 0..s.len() {
        for j in 0..s.len() {
            let mi = source.index[&s[i].intersection(s[j])];
            let jo = source.index[&s[i].union(s[j])];
            if t[map[mi]] != t[map[i]].intersection(t[map[j]]) {
                return Err(invariant(check, format!("meet not preserved at ({i}, {j})")));
            }
            if t[map[jo]] != t[map[i]].union(t[map[j]]) {
                return Err(invariant(check, format!("join not preserved at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// A map between frames given on elements.
#[derive(Clone, Debug)]
pub struct FrameMap {
    pub source: Frame,
    pub target: Frame,
    /// Image of each source element, by source element index.
    pub assignment: Vec<ElemSet>,
}

impl FrameMap {
    pub fn new(source: Frame, target: Frame, assignment: Vec<ElemSet>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::Precondition("assignment must cover every source element".into()));
        }
        for &img in &assignment {
            target.check(img)?;
        }
        Ok(FrameMap {
            source,
            target,
            assignment,
        })
    }

    pub fn apply(&self, a: ElemSet) -> Result<ElemSet> {
        let i = self
            .source
            .index_of(a)
            .ok_or_else(|| Error::NotAnElement(self.source.describe(a)))?;
        Ok(self.assignment[i])
    }

    fn image(&self, a: ElemSet) -> ElemSet {
        self.assignment[self.source.index[&a]]
    }

    pub fn preserves_order(&self) -> bool {
        let els = self.source.elements();
        els.iter().all(|&a| {
            els.iter()
                .all(|&b| !a.is_subset(b) || self.image(a).is_subset(self.image(b)))
        })
    }

    /// Binary meets and the top (the empty meet).
    pub fn preserves_finite_meets(&self) -> bool {
        let els = self.source.elements();
        self.image(self.source.top()) == self.target.top()
            && els.iter().all(|&a| {
                els.iter()
                    .all(|&b| self.image(a.intersection(b)) == self.image(a).intersection(self.image(b)))
            })
    }

    /// Binary joins and the bottom (the empty join); in a finite frame this is
    /// preservation of arbitrary joins.
    pub fn preserves_joins(&self) -> bool {
        let els = self.source.elements();
        self.image(self.source.bottom()) == self.target.bottom()
            && els.iter().all(|&a| {
                els.iter()
                    .all(|&b| self.image(a.union(b)) == self.image(a).union(self.image(b)))
            })
    }

    /// Frame morphism: preserves finite meets and arbitrary joins.
    pub fn is_frame_morphism(&self) -> bool {
        self.preserves_finite_meets() && self.preserves_joins()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinitePoset {
        FinitePoset::chain(["g", "m"]).unwrap()
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

    fn set(f: &Frame, labels: &[&str]) -> ElemSet {
        f.base().set_of(labels).unwrap()
    }

    #[test]
    fn chain2_frame_is_three_chain() {
        let f = upset_frame(&chain2()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.elements(), &[ElemSet::EMPTY, set(&f, &["m"]), set(&f, &["g", "m"])]);
    }

    #[test]
    fn empty_poset_gives_one_element_frame() {
        let f = upset_frame(&FinitePoset::antichain(Vec::<String>::new()).unwrap()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.top(), f.bottom());
        assert!(f.primes().is_empty());
    }

    #[test]
    fn fan3_frame_has_nine_elements() {
        let f = upset_frame(&fan3()).unwrap();
        assert_eq!(f.len(), 9);
        let below_top: Vec<_> = f.elements().iter().filter(|e| **e != f.top()).collect();
        assert_eq!(below_top.len(), 8);
        assert!(below_top.iter().all(|e| !e.contains(0)));
    }

    #[test]
    fn size_guard() {
        let labels: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        let p = FinitePoset::antichain(labels).unwrap();
        assert!(matches!(upset_frame(&p), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn implication_examples() {
        let f = upset_frame(&chain2()).unwrap();
        let s = set(&f, &["m"]);
        assert_eq!(f.implies(s, ElemSet::EMPTY).unwrap(), ElemSet::EMPTY);
        for &a in f.elements() {
            assert_eq!(f.implies(a, a).unwrap(), f.top());
        }
        let fan = upset_frame(&fan3()).unwrap();
        assert_eq!(
            fan.implies(set(&fan, &["p1"]), ElemSet::EMPTY).unwrap(),
            set(&fan, &["p2", "p3"])
        );
    }

    #[test]
    fn implication_rejects_non_elements() {
        let f = upset_frame(&chain2()).unwrap();
        let g = set(&f, &["g"]);
        assert!(matches!(f.implies(g, g), Err(Error::NotAnElement(_))));
    }

    #[test]
    fn primes_of_powerset_and_diamond() {
        let pw = upset_frame(&FinitePoset::antichain(["a", "b"]).unwrap()).unwrap();
        assert_eq!(pw.primes(), vec![set(&pw, &["a"]), set(&pw, &["b"])]);

        let d = upset_frame(&diamond()).unwrap();
        let mut primes = d.primes();
        primes.sort();
        let mut expected = vec![
            ElemSet::EMPTY,
            set(&d, &["p1", "m"]),
            set(&d, &["p2", "m"]),
            set(&d, &["p1", "p2", "m"]),
        ];
        expected.sort();
        assert_eq!(primes, expected);
        for &a in d.elements() {
            assert_eq!(d.is_prime(a).unwrap(), primes.contains(&a));
        }
    }

    #[test]
    fn chain_frames_have_every_non_top_prime() {
        let f = upset_frame(&FinitePoset::chain(["a", "b", "c", "d"]).unwrap()).unwrap();
        assert_eq!(f.primes().len(), f.len() - 1);
    }

    #[test]
    fn points_match_primes() {
        let f = upset_frame(&chain2()).unwrap();
        let pts = f.points();
        assert_eq!(pts.len(), 2);
        assert!(pts[0].ideal_contains(ElemSet::EMPTY));
        assert!(pts[0].filter_contains(f.top()));
    }

    #[test]
    fn birkhoff_of_chain_and_powerset() {
        let three_chain = upset_frame(&chain2()).unwrap();
        let b = three_chain.birkhoff_poset();
        assert_eq!(b.len(), 2);
        assert_eq!(b.covers().len(), 1);
        let pw = upset_frame(&FinitePoset::antichain(["1", "2"]).unwrap()).unwrap();
        let b = pw.birkhoff_poset();
        assert_eq!(b.len(), 2);
        assert!(b.covers().is_empty());
    }

    #[test]
    fn birkhoff_roundtrip_on_fixtures() {
        for p in [chain2(), fan3(), diamond()] {
            let f = upset_frame(&p).unwrap();
            let b = f.birkhoff_poset();
            assert!(b.same_order_as(&p), "labels and order recovered");
            let (dual, pairs) = f.birkhoff_isomorphism().unwrap();
            assert_eq!(dual.len(), f.len());
            assert_eq!(pairs.len(), f.len());
        }
    }

    #[test]
    fn frame_map_checks() {
        let f = upset_frame(&chain2()).unwrap();
        let id = FrameMap::new(f.clone(), f.clone(), f.elements().to_vec()).unwrap();
        assert!(id.is_frame_morphism());
        // Collapse everything below the top to the bottom: meets kept, joins kept too
        // on a chain, but bottom -> bottom and top -> top.
        let squash = FrameMap::new(
            f.clone(),
            f.clone(),
            vec![ElemSet::EMPTY, ElemSet::EMPTY, f.top()],
        )
        .unwrap();
        assert!(squash.preserves_order());
        assert!(squash.is_frame_morphism());
        let constant_top = FrameMap::new(f.clone(), f.clone(), vec![f.top(); 3]).unwrap();
        assert!(constant_top.preserves_finite_meets());
        assert!(!constant_top.preserves_joins());
    }
}
