//! Dense matrices and subspaces over a small prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field of characteristic 2, 3 or 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(u8);

impl Fp {
    pub fn new(p: u8) -> Result<Self> {
        match p {
            2 | 3 | 5 => Ok(Fp(p)),
            _ => Err(Error::UnsupportedField(p)),
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        a * b % self.0
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.0));
        (1..self.0).find(|&b| self.mul(a, b) == 1).expect("non-zero element of a field")
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }
}

/// A `rows x cols` matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_data(field: Fp, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u8) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the right null space `{x : Mx = 0}`, one vector per row.
    pub fn null_space(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        basis
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Matrix) -> Matrix {
        assert_eq!(self.cols, below.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Matrix::from_data(self.field, self.rows + below.rows, self.cols, data)
    }

    pub fn from_row_vectors(field: Fp, cols: usize, vectors: &[Vec<u8>]) -> Matrix {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Matrix::from_data(field, vectors.len(), cols, data)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Coordinates `c` with `Σ c_i basis_i = v`, where `basis` rows are independent.
pub fn coordinates(basis: &Matrix, v: &[u8]) -> Option<Vec<u8>> {
    let f = basis.field();
    let k = basis.rows();
    let n = basis.cols();
    // Augmented system [basis^T | v].
    let mut aug = Matrix::zeros(f, n, k + 1);
    for i in 0..k {
        for j in 0..n {
            aug.set(j, i, basis.get(i, j));
        }
    }
    for (j, &x) in v.iter().enumerate() {
        aug.set(j, k, x);
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![0; k];
    for (row, &pc) in pivots.iter().enumerate() {
        c[pc] = r.get(row, k);
    }
    Some(c)
}

/// A subspace of `F_p^n`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Fp, n: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: Fp, n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<Vec<u8>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            basis: Matrix::from_row_vectors(m.field(), m.cols(), &keep),
        }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        coordinates(&self.basis, v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Image under the linear map `m` acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vectors: Vec<Vec<u8>> = (0..self.dim()).map(|i| m.apply(self.basis.row(i))).collect();
        Subspace::span(&Matrix::from_row_vectors(m.field(), m.rows(), &vectors))
    }

    /// Extends this subspace's basis by vectors of `bigger` to a basis of `bigger`.
    /// Returns the added vectors.
    pub fn complement_in(&self, bigger: &Subspace) -> Vec<Vec<u8>> {
        let mut current = self.basis.clone();
        let mut extra = Vec::new();
        for i in 0..bigger.dim() {
            let v = bigger.basis.row(i);
            if coordinates(&current, v).is_none() {
                let row = Matrix::from_row_vectors(current.field(), current.cols(), &[v.to_vec()]);
                current = current.stack(&row);
                extra.push(v.to_vec());
            }
        }
        extra
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.basis)
    }
}

/// Every subspace of `F_p^n`, enumerated through their reduced echelon bases.
pub fn all_subspaces(field: Fp, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for_each_subset(n, k, &mut |pivots| {
            // Free positions: in row i, columns after pivot i that are not pivots.
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            let p = field.p() as usize;
            let total = p.pow(free.len() as u32);
            for code in 0..total {
                let mut m = Matrix::zeros(field, k, n);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                let mut c = code;
                for &(i, col) in &free {
                    m.set(i, col, (c % p) as u8);
                    c /= p;
                }
                out.push(Subspace { basis: m });
            }
        });
    }
    out
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}
