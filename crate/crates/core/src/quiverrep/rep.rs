use std::sync::Arc;

use super::linalg::{Fp, Matrix};
use super::quiver::BoundQuiver;
use crate::error::{Error, Result};
use crate::frame::ElemSet;

/// Default bound on total dimension for enumeration-based operations.
pub const DEFAULT_DIM_BOUND: usize = 6;
/// Bound used for `B^n` in the succession test.
pub const EXTENDED_DIM_BOUND: usize = 8;

/// A finite-dimensional representation: one `F_p` space per vertex, one matrix
/// per arrow shaped `dims[target] x dims[source]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl Representation {
    /// Checks shapes only.
    pub fn from_parts(quiver: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::InvalidQuiver(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidQuiver(format!(
                "{} maps given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.dst], dims[a.src]) || m.field() != quiver.field() {
                return Err(Error::ShapeMismatch {
                    arrow: a.name.clone(),
                    expected_rows: dims[a.dst],
                    expected_cols: dims[a.src],
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    /// Checks shapes and relations.
    pub fn new(quiver: Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let r = Self::from_parts(quiver, dims, maps)?;
        if let Some(i) = r.violated_relation() {
            return Err(Error::RelationViolated(i));
        }
        Ok(r)
    }

    /// Builds from integer matrices given per arrow, in arrow order.
    pub fn from_int_maps(quiver: Arc<BoundQuiver>, dims: Vec<usize>, maps: &[Vec<Vec<i64>>]) -> Result<Self> {
        let f = quiver.field();
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidQuiver(format!(
                "{} maps given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        if dims.len() != quiver.num_vertices() {
            return Err(Error::InvalidQuiver("dimension vector length mismatch".into()));
        }
        let mut ms = Vec::new();
        for (a, rows) in quiver.arrows().iter().zip(maps) {
            let cols = rows.first().map(|r| r.len()).unwrap_or(dims[a.src]);
            let m = Matrix::from_rows(f, cols, rows).map_err(|_| Error::ShapeMismatch {
                arrow: a.name.clone(),
                expected_rows: dims[a.dst],
                expected_cols: dims[a.src],
                rows: rows.len(),
                cols,
            })?;
            ms.push(m);
        }
        Self::new(quiver, dims, ms)
    }

    pub fn zero(quiver: Arc<BoundQuiver>) -> Self {
        let n = quiver.num_vertices();
        Self::with_zero_maps(quiver, vec![0; n])
    }

    fn with_zero_maps(quiver: Arc<BoundQuiver>, dims: Vec<usize>) -> Self {
        let f = quiver.field();
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.dst], dims[a.src]))
            .collect();
        Representation { quiver, dims, maps }
    }

    pub fn simple(quiver: Arc<BoundQuiver>, v: usize) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[v] = 1;
        Self::with_zero_maps(quiver, dims)
    }

    /// Semisimple object with the given multiplicity of each vertex simple.
    pub fn semisimple(quiver: Arc<BoundQuiver>, multiplicities: Vec<usize>) -> Self {
        Self::with_zero_maps(quiver, multiplicities)
    }

    pub fn simples(quiver: &Arc<BoundQuiver>) -> Vec<Representation> {
        (0..quiver.num_vertices()).map(|v| Self::simple(quiver.clone(), v)).collect()
    }

    /// The indecomposable projective at `v`, spanned by paths out of `v`.
    /// Only defined when the quiver has no relations.
    pub fn projective(quiver: Arc<BoundQuiver>, v: usize) -> Result<Self> {
        if !quiver.relations().is_empty() {
            return Err(Error::Unsupported("projectives are built only for quivers without relations".into()));
        }
        let f = quiver.field();
        let paths = quiver.paths_from(v);
        let n = quiver.num_vertices();
        let mut by_end: Vec<Vec<&Vec<usize>>> = vec![vec![]; n];
        for p in &paths {
            by_end[quiver.path_end(v, p)].push(p);
        }
        let dims: Vec<usize> = by_end.iter().map(|b| b.len()).collect();
        let mut maps = Vec::new();
        for (ai, a) in quiver.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(f, dims[a.dst], dims[a.src]);
            for (j, p) in by_end[a.src].iter().enumerate() {
                let mut ext = (*p).clone();
                ext.push(ai);
                let i = by_end[a.dst].iter().position(|q| **q == ext).expect("extended path is listed");
                m.set(i, j, 1);
            }
            maps.push(m);
        }
        Self::new(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Fp {
        self.quiver.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Vertices with nonzero space. These index the composition factors.
    pub fn support(&self) -> ElemSet {
        self.dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| v).collect()
    }

    pub fn check_bound(&self, bound: usize) -> Result<()> {
        if self.total_dim() > bound {
            return Err(Error::DimensionBound {
                actual: self.total_dim(),
                bound,
            });
        }
        Ok(())
    }

    /// Matrix of a path from `start`; the identity for the trivial path.
    pub fn path_matrix(&self, start: usize, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[start]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        m
    }

    fn violated_relation(&self) -> Option<usize> {
        let f = self.field();
        for (i, r) in self.quiver.relations().iter().enumerate() {
            let (_, p0) = &r.terms[0];
            let a0 = &self.quiver.arrows()[p0[0]];
            let end = self.quiver.path_end(a0.src, p0);
            let mut sum = Matrix::zeros(f, self.dims[end], self.dims[a0.src]);
            for (c, p) in &r.terms {
                sum = sum.add(&self.path_matrix(a0.src, p).scale(*c));
            }
            if !sum.is_zero() {
                return Some(i);
            }
        }
        None
    }

    /// True when shapes match and every relation evaluates to zero.
    pub fn validate(&self) -> bool {
        let shapes = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .all(|(a, m)| m.shape() == (self.dims[a.dst], self.dims[a.src]));
        shapes && self.dims.len() == self.quiver.num_vertices() && self.violated_relation().is_none()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver != other.quiver {
            return Err(Error::ObjectMismatch("direct sum of representations of different quivers".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dims,
            maps,
        })
    }

    /// `n`-fold direct sum; `power(0)` is zero.
    pub fn power(&self, n: usize) -> Representation {
        let mut acc = Representation::zero(self.quiver.clone());
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same quiver");
        }
        acc
    }

    pub fn same_quiver(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::ObjectMismatch("representations of different quivers".into()));
        }
        Ok(())
    }

    /// Restriction to the quiver with `remove` deleted.
    pub fn delete_vertices(&self, target: Arc<BoundQuiver>, remove: &[usize]) -> Representation {
        let keep: Vec<usize> = (0..self.dims.len()).filter(|v| !remove.contains(v)).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .filter(|(a, _)| !remove.contains(&a.src) && !remove.contains(&a.dst))
            .map(|(_, m)| m.clone())
            .collect();
        Representation {
            quiver: target,
            dims: keep.iter().map(|&v| self.dims[v]).collect(),
            maps,
        }
    }
}

/// Basis of `Hom(a, b)`; each element lists one `dims_b[v] x dims_a[v]` matrix per vertex.
pub fn hom_basis(a: &Representation, b: &Representation) -> Vec<Vec<Matrix>> {
    let f = a.field();
    let q = a.quiver();
    let n = q.num_vertices();
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
    }
    let unknowns = offset[n];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * a.dims[v] + j;

    // g_w A_x - B_x g_v = 0 for every arrow x: v -> w.
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    for (x, arrow) in q.arrows().iter().enumerate() {
        let (v, w) = (arrow.src, arrow.dst);
        let am = &a.maps[x];
        let bm = &b.maps[x];
        for i in 0..b.dims[w] {
            for j in 0..a.dims[v] {
                let mut row = vec![0u8; unknowns];
                for k in 0..a.dims[w] {
                    let c = am.get(k, j);
                    if c != 0 {
                        let t = var(w, i, k);
                        row[t] = f.add(row[t], c);
                    }
                }
                for k in 0..b.dims[v] {
                    let c = bm.get(i, k);
                    if c != 0 {
                        let t = var(v, k, j);
                        row[t] = f.sub(row[t], c);
                    }
                }
                eqs.push(row);
            }
        }
    }
    let system = Matrix::from_row_vectors(f, unknowns, &eqs);
    let null = system.null_space();
    (0..null.rows())
        .map(|r| {
            let sol = null.row(r);
            (0..n)
                .map(|v| {
                    let mut m = Matrix::zeros(f, b.dims[v], a.dims[v]);
                    for i in 0..b.dims[v] {
                        for j in 0..a.dims[v] {
                            m.set(i, j, sol[var(v, i, j)]);
                        }
                    }
                    m
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim(a: &Representation, b: &Representation) -> usize {
    hom_basis(a, b).len()
}

fn map_ranks(r: &Representation) -> Vec<usize> {
    r.maps.iter().map(|m| m.rank()).collect()
}

/// Upper limit on `p^dim Hom` for the exhaustive isomorphism search.
const MAX_HOM_ENUMERATION: u64 = 1 << 22;

/// An isomorphism `a -> b`, one invertible matrix per vertex, if one exists.
///
/// Every morphism is a combination of a `Hom(a, b)` basis, so enumerating
/// coefficient vectors covers every compatible base change. Fails with a size
/// error when that enumeration would exceed `2^22` morphisms.
pub fn find_isomorphism(a: &Representation, b: &Representation) -> Result<Option<Vec<Matrix>>> {
    if a.quiver != b.quiver || a.dims != b.dims || map_ranks(a) != map_ranks(b) {
        return Ok(None);
    }
    let f = a.field();
    let n = a.dims.len();
    if a.maps.iter().chain(&b.maps).all(|m| m.is_zero()) {
        return Ok(Some((0..n).map(|v| Matrix::identity(f, a.dims[v])).collect()));
    }
    let basis = hom_basis(a, b);
    if basis.len() != hom_dim(a, a) || basis.len() != hom_dim(b, b) || basis.len() != hom_dim(b, a) {
        return Ok(None);
    }
    let p = f.p() as u64;
    let m = basis.len();
    if p.checked_pow(m as u32).is_none_or(|t| t > MAX_HOM_ENUMERATION) {
        return Err(Error::SizeGuard {
            what: "morphism space for isomorphism search",
            actual: m,
            limit: (MAX_HOM_ENUMERATION as f64).log(p as f64).floor() as usize,
        });
    }
    let mut coeffs = vec![0u8; m];
    loop {
        let mut g: Vec<Matrix> = (0..n).map(|v| Matrix::zeros(f, b.dims[v], a.dims[v])).collect();
        for (c, elem) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                for v in 0..n {
                    g[v] = g[v].add(&elem[v].scale(*c));
                }
            }
        }
        if g.iter().all(|m| m.is_invertible()) {
            return Ok(Some(g));
        }
        // Next coefficient vector, little-endian base p.
        let mut k = 0;
        loop {
            if k == m {
                return Ok(None);
            }
            coeffs[k] = (coeffs[k] + 1) % f.p();
            if coeffs[k] != 0 {
                break;
            }
            k += 1;
        }
    }
}

pub fn is_isomorphic(a: &Representation, b: &Representation) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Checks that `g` is a morphism `a -> b`.
pub fn is_morphism(a: &Representation, b: &Representation, g: &[Matrix]) -> bool {
    a.quiver()
        .arrows()
        .iter()
        .enumerate()
        .all(|(x, arr)| g[arr.dst].mul(&a.maps[x]) == b.maps[x].mul(&g[arr.src]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn a2() -> Arc<BoundQuiver> {
        Arc::new(BoundQuiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))], &[], 2).unwrap())
    }

    #[test]
    fn projective_of_a2() {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.maps()[0].to_rows(), vec![vec![1]]);
        assert!(p1.validate());
        let p2 = Representation::projective(q.clone(), 1).unwrap();
        assert_eq!(p2, Representation::simple(q, 1));
    }

    #[test]
    fn shape_error_names_arrow() {
        let q = a2();
        let f = q.field();
        let err = Representation::from_parts(q, vec![1, 1], vec![Matrix::zeros(f, 2, 1)]).unwrap_err();
        match err {
            Error::ShapeMismatch { arrow, .. } => assert_eq!(arrow, "a"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn relation_checked() {
        let q = Arc::new(
            BoundQuiver::new(
                vec![s("1"), s("2"), s("3")],
                &[(s("a"), s("1"), s("2")), (s("b"), s("2"), s("3"))],
                &[vec![(1, vec![s("a"), s("b")])]],
                3,
            )
            .unwrap(),
        );
        let good = Representation::from_int_maps(q.clone(), vec![1, 1, 1], &[vec![vec![1]], vec![vec![0]]]);
        assert!(good.is_ok());
        let bad = Representation::from_int_maps(q, vec![1, 1, 1], &[vec![vec![1]], vec![vec![2]]]);
        assert_eq!(bad.unwrap_err(), Error::RelationViolated(0));
    }

    #[test]
    fn hom_dimensions() {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 0).unwrap();
        let s1 = Representation::simple(q.clone(), 0);
        let s2 = Representation::simple(q.clone(), 1);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s1, &p1), 0);
        assert_eq!(hom_dim(&s2, &p1), 1);
        assert_eq!(hom_dim(&p1, &p1), 1);
        for g in hom_basis(&s2, &p1) {
            assert!(is_morphism(&s2, &p1, &g));
        }
    }

    #[test]
    fn isomorphism_detects_base_change() {
        let q = Arc::new(BoundQuiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))], &[], 3).unwrap());
        let x = Representation::from_int_maps(q.clone(), vec![2, 2], &[vec![vec![1, 0], vec![0, 0]]]).unwrap();
        let y = Representation::from_int_maps(q.clone(), vec![2, 2], &[vec![vec![2, 1], vec![1, 2]]]).unwrap();
        let z = Representation::from_int_maps(q, vec![2, 2], &[vec![vec![1, 0], vec![0, 1]]]).unwrap();
        let g = find_isomorphism(&x, &y).unwrap().expect("rank one maps are equivalent");
        assert!(is_morphism(&x, &y, &g));
        assert!(!is_isomorphic(&x, &z).unwrap());
    }

    #[test]
    fn power_and_sum() {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 0).unwrap();
        let p = p1.power(2);
        assert_eq!(p.dims(), &[2, 2]);
        assert_eq!(p.maps()[0].to_rows(), vec![vec![1, 0], vec![0, 1]]);
        assert!(p1.power(0).is_zero());
    }
}
