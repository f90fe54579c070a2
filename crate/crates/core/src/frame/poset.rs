use std::collections::HashMap;
use std::ops::Deref;

use super::elemset::{ElemSet, MAX_POINTS};
use crate::error::{Error, Result};

/// A reflexive, transitive relation on a finite labelled set.
///
/// `up[x]` holds every `y` with `x <= y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    labels: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

impl Preorder {
    /// Reflexive-transitive closure of the given `(lo, hi)` pairs.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::InvalidPoset(format!("relation pair ({lo}, {hi}) out of range")));
            }
            up[lo] = up[lo].with(hi);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<ElemSet>) -> Self {
        let n = labels.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y] = down[y].with(x);
            }
        }
        Preorder { labels, up, down }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Resolves a list of labels to a set of indices.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ElemSet::from_indices)
    }

    /// Labels of the members of `set`, in index order.
    pub fn labels_of(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Members of `set` as a sorted label list.
    pub fn sorted_labels_of(&self, set: ElemSet) -> Vec<String> {
        let mut v = self.labels_of(set);
        v.sort();
        v
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `↑x`
    #[inline]
    pub fn up(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    /// `↓x`
    #[inline]
    pub fn down(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn is_up_set(&self, set: ElemSet) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }

    pub fn is_down_set(&self, set: ElemSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    /// Largest up-set contained in `set`.
    pub fn up_interior(&self, set: ElemSet) -> ElemSet {
        (0..self.len()).filter(|&x| self.up[x].is_subset(set)).collect()
    }

    /// Minimal elements of `set` (for a preorder: elements with nothing strictly below in `set`).
    pub fn minimal(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&x| {
                set.intersection(self.down[x])
                    .iter()
                    .all(|y| self.leq(x, y))
            })
            .collect()
    }

    pub fn maximal(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&x| {
                set.intersection(self.up[x])
                    .iter()
                    .all(|y| self.leq(y, x))
            })
            .collect()
    }

    pub fn is_antichain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|x| set.intersection(self.up[x]) == ElemSet::singleton(x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|x| self.up[x].intersection(self.down[x]) == ElemSet::singleton(x))
    }

    /// The reversed order.
    pub fn opposite(&self) -> Preorder {
        Preorder {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Induced preorder on `subset`; returns the old index of each new element.
    pub fn restrict(&self, subset: ElemSet) -> (Preorder, Vec<usize>) {
        let keep: Vec<usize> = subset.iter().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let up = keep
            .iter()
            .map(|&i| self.up[i].intersection(subset).iter().map(|j| pos[j]).collect())
            .collect();
        (Preorder::from_up_rows(labels, up), keep)
    }

    /// Classes of mutually `<=`-related elements, each listed by its smallest index.
    pub fn equivalence_classes(&self) -> Vec<ElemSet> {
        let mut seen = ElemSet::EMPTY;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen.contains(x) {
                continue;
            }
            let class = self.up[x].intersection(self.down[x]);
            seen = seen.union(class);
            out.push(class);
        }
        out
    }

    /// Every up-closed subset, ordered by size and then by bit pattern.
    pub(crate) fn enumerate_up_sets(&self) -> Vec<ElemSet> {
        let mut out = Vec::new();
        self.up_sets_rec(ElemSet::EMPTY, ElemSet::EMPTY, &mut out);
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }

    fn up_sets_rec(&self, inc: ElemSet, exc: ElemSet, out: &mut Vec<ElemSet>) {
        let undecided = self.all().difference(inc.union(exc));
        let Some(j) = undecided.first() else {
            out.push(inc);
            return;
        };
        if self.up[j].is_disjoint(exc) {
            self.up_sets_rec(inc.union(self.up[j]), exc, out);
        }
        if self.down[j].is_disjoint(inc) {
            self.up_sets_rec(inc, exc.union(self.down[j]), out);
        }
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_POINTS {
        return Err(Error::SizeGuard {
            what: "point set",
            actual: labels.len(),
            limit: MAX_POINTS,
        });
    }
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(j) = seen.insert(l.as_str(), i) {
            return Err(Error::InvalidPoset(format!(
                "label `{l}` used for elements {j} and {i}"
            )));
        }
    }
    Ok(())
}

/// A finite partial order. Dereferences to its underlying [`Preorder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset(Preorder);

impl FinitePoset {
    /// Builds a poset from Hasse edges `(lo, hi)` given by label.
    pub fn from_covers<S: AsRef<str>>(labels: Vec<String>, covers: &[(S, S)]) -> Result<Self> {
        check_labels(&labels)?;
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(lo, hi)| Ok((find(lo.as_ref())?, find(hi.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePoset::try_from(Preorder::from_relation(labels, &pairs)?)
    }

    /// Builds a poset from a full `leq` table, which must already be a partial order.
    pub fn from_leq(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("leq table is not square".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::InvalidPoset(format!("not reflexive at `{}`", labels[x])));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` and `{}` violate antisymmetry",
                        labels[x], labels[y]
                    )));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive at `{}` <= `{}` <= `{}`",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        let up = leq
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect())
            .collect();
        Ok(FinitePoset(Preorder::from_up_rows(labels, up)))
    }

    pub fn antichain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        FinitePoset::from_covers::<&str>(labels, &[])
    }

    /// `l0 < l1 < ...`
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let covers: Vec<(String, String)> = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        FinitePoset::from_covers(labels, &covers)
    }

    /// Hasse edges `(lo, hi)` with `hi` covering `lo`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up(x).without(x).iter() {
                let between = self.up(x).intersection(self.down(y)).without(x).without(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn opposite(&self) -> FinitePoset {
        FinitePoset(self.0.opposite())
    }

    pub fn restrict(&self, subset: ElemSet) -> (FinitePoset, Vec<usize>) {
        let (p, keep) = self.0.restrict(subset);
        (FinitePoset(p), keep)
    }

    /// Same labels and the same order between them, regardless of element numbering.
    pub fn same_order_as(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let Ok(pos) = self
            .labels()
            .iter()
            .map(|l| other.index_of(l))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq(x, y) == other.leq(pos[x], pos[y])))
    }

    pub fn as_preorder(&self) -> &Preorder {
        &self.0
    }

    /// An order isomorphism `self -> other` (as an index map), if one exists.
    /// Brute force with degree pruning; intended for small posets.
    pub fn isomorphism_to(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &FinitePoset, x: usize| (p.up(x).len(), p.down(x).len());
        let mut map = vec![usize::MAX; n];
        let mut used = ElemSet::EMPTY;
        fn rec(
            a: &FinitePoset,
            b: &FinitePoset,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut ElemSet,
            sig: &dyn Fn(&FinitePoset, usize) -> (usize, usize),
        ) -> bool {
            if i == a.len() {
                return true;
            }
            for j in 0..b.len() {
                if used.contains(j) || sig(a, i) != sig(b, j) {
                    continue;
                }
                let consistent = (0..i).all(|k| {
                    a.leq(k, i) == b.leq(map[k], j) && a.leq(i, k) == b.leq(j, map[k])
                });
                if !consistent {
                    continue;
                }
                map[i] = j;
                *used = used.with(j);
                if rec(a, b, i + 1, map, used, sig) {
                    return true;
                }
                *used = used.without(j);
            }
            false
        }
        if rec(self, other, 0, &mut map, &mut used, &sig) {
            Some(map)
        } else {
            None
        }
    }
}

impl TryFrom<Preorder> for FinitePoset {
    type Error = Error;

    fn try_from(p: Preorder) -> Result<Self> {
        if let Some(x) = (0..p.len()).find(|&x| p.up(x).intersection(p.down(x)) != ElemSet::singleton(x)) {
            let other = p.up(x).intersection(p.down(x)).without(x).first().unwrap_or(x);
            return Err(Error::InvalidPoset(format!(
                "cycle through `{}` and `{}` violates antisymmetry",
                p.label(x),
                p.label(other)
            )));
        }
        Ok(FinitePoset(p))
    }
}

impl Deref for FinitePoset {
    type Target = Preorder;

    fn deref(&self) -> &Preorder {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(
            vec!["g".into(), "p1".into(), "p2".into(), "m".into()],
            &[("g", "p1"), ("g", "p2"), ("p1", "m"), ("p2", "m")],
        )
        .unwrap()
    }

    #[test]
    fn transitive_closure_from_covers() {
        let d = diamond();
        assert!(d.leq(0, 3));
        assert!(!d.leq(1, 2));
        assert_eq!(d.covers().len(), 4);
    }

    #[test]
    fn cycle_rejected() {
        let err = FinitePoset::from_covers(vec!["a".into(), "b".into()], &[("a", "b"), ("b", "a")]);
        assert!(matches!(err, Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn duplicate_label_rejected() {
        assert!(FinitePoset::antichain(["x", "x"]).is_err());
    }

    #[test]
    fn non_transitive_table_rejected() {
        let t = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(FinitePoset::from_leq(vec!["a".into(), "b".into(), "c".into()], &t).is_err());
    }

    #[test]
    fn up_sets_of_diamond() {
        // antichains of the diamond: {}, g, p1, p2, m, {p1,p2}
        assert_eq!(diamond().enumerate_up_sets().len(), 6);
    }

    #[test]
    fn up_sets_of_preorder_respect_classes() {
        let p = Preorder::from_relation(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 0)]).unwrap();
        // classes {a,b} and {c}: 4 up-sets
        assert_eq!(p.enumerate_up_sets().len(), 4);
        assert_eq!(p.equivalence_classes().len(), 2);
    }

    #[test]
    fn isomorphism_to_opposite_of_diamond() {
        let d = diamond();
        assert!(d.isomorphism_to(&d.opposite()).is_some());
        let chain = FinitePoset::chain(["a", "b", "c", "d"]).unwrap();
        assert!(d.isomorphism_to(&chain).is_none());
    }
}
