//! Dense exact matrices: products, row reduction, kernels, rank and determinant.
//!
//! Row reduction over `F_p` is plain Gauss-Jordan. Rank and determinant in characteristic 0 use
//! Bareiss fraction-free elimination on the integer-scaled rows, so intermediate entries stay
//! integral and bounded by minors of the input.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::DimensionMismatch("entry from another field".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    /// A matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, len: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn sub_identity(&self) -> Matrix {
        self.sub(&Matrix::identity(self.field, self.rows))
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j);
                if !v.is_zero() {
                    let nv = v * &inv;
                    self.set(r, j, nv);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..self.cols)
                .filter_map(|j| {
                    let v = self.get(r, j);
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in &pivot_row {
                    let nv = self.get(i, *j) - &(&factor * pv);
                    self.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space, returned as the rows of the reduced echelon form of that
    /// space (ordered by leading coordinate). Empty iff the matrix is injective.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect();
        echelon_basis(self.field, self.cols, &raw)
    }

    pub fn rank(&self) -> usize {
        self.rank_det().0
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Rank, and the determinant when the matrix is square.
    pub fn rank_det(&self) -> (usize, Option<Scalar>) {
        if self.field.is_rational() {
            self.bareiss()
        } else {
            self.gauss_rank_det()
        }
    }

    pub fn det(&self) -> Option<Scalar> {
        self.rank_det().1
    }

    fn gauss_rank_det(&self) -> (usize, Option<Scalar>) {
        let mut m = self.clone();
        let mut det = self.field.one();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                det = self.field.zero();
                continue;
            };
            if pr != rank {
                m.swap_rows(rank, pr);
                det = -det;
            }
            let pivot = m.get(rank, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in rank + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let nv = m.get(i, j) - &(&f * m.get(rank, j));
                    m.set(i, j, nv);
                }
            }
            rank += 1;
        }
        let det = self.is_square().then(|| {
            if rank == self.rows {
                det
            } else {
                self.field.zero()
            }
        });
        (rank, det)
    }

    /// Fraction-free elimination over the integers after clearing denominators row by row.
    fn bareiss(&self) -> (usize, Option<Scalar>) {
        let mut scale = BigRational::one();
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> = self
                    .row(i)
                    .iter()
                    .map(|s| s.to_rational().expect("rational entry"))
                    .collect();
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale = &scale * BigRational::from_integer(l.clone());
                row.iter().map(|x| (*x * &l).to_integer()).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut sign = 1i32;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if pr != rank {
                a.swap(pr, rank);
                sign = -sign;
            }
            for i in rank + 1..rows {
                for j in c + 1..cols {
                    let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
        }
        let det = self.is_square().then(|| {
            if rank < rows {
                return self.field.zero();
            }
            if rows == 0 {
                return self.field.one();
            }
            let d = BigRational::from_integer(prev * BigInt::from(sign)) / scale;
            Scalar::Rat(d)
        });
        (rank, det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Reduced row echelon basis of the span of `vectors` (zero rows dropped).
pub fn echelon_basis(field: FieldSpec, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors.to_vec()).expect("equal-length vectors");
    debug_assert_eq!(m.cols(), len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Right null space basis of `m`, in reduced echelon form.
pub fn matrix_kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel()
}

/// `(rank, det)`; the determinant is present only for square input.
pub fn matrix_rank_det(m: &Matrix) -> (usize, Option<Scalar>) {
    m.rank_det()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A sparse vector: `(coordinate, value)` pairs with increasing coordinates and nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Incremental row echelon form of sparse vectors of a fixed length.
///
/// Stored rows have leading coefficient 1 and distinct leading coordinates. Each inserted row is
/// reduced against the stored rows before it is kept.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: FieldSpec,
    len: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        SparseEchelon {
            field,
            len,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in their span.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, factor)) = next else { break };
            for (j, y) in &self.rows[self.pivot_row[&c]] {
                let e = work.entry(*j).or_insert_with(|| self.field.zero());
                *e = &*e - &(&factor * y);
                if e.is_zero() {
                    work.remove(j);
                }
            }
            cursor = c + 1;
        }
        work.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let r = self.reduce(v);
        let Some((lead, x)) = r.first() else {
            return false;
        };
        let inv = x.inv().expect("nonzero lead");
        let lead = *lead;
        let row = r.into_iter().map(|(c, y)| (c, &y * &inv)).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// The reduced row echelon basis of the span, ordered by leading coordinate.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, &ri) in self.pivot_row.iter().rev() {
            let row = &self.rows[ri];
            let mut work: BTreeMap<usize, Scalar> = row.iter().cloned().collect();
            let later: Vec<usize> = work
                .keys()
                .copied()
                .filter(|c| *c != p && done.contains_key(c))
                .collect();
            for c in later {
                let Some(factor) = work.get(&c).cloned() else {
                    continue;
                };
                for (j, y) in &done[&c] {
                    let e = work.entry(*j).or_insert_with(|| self.field.zero());
                    *e = &*e - &(&factor * y);
                    if e.is_zero() {
                        work.remove(j);
                    }
                }
            }
            done.insert(p, work.into_iter().collect());
        }
        done.into_values().collect()
    }

    /// Reduced echelon basis of `{v : r . v = 0 for every stored row r}`.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let rows = self.reduced_rows();
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        let mut is_pivot = vec![false; self.len];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // Column f of the reduced rows, for every non-pivot f.
        let mut cols: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, r) in rows.iter().enumerate() {
            for (c, x) in &r[1..] {
                cols.entry(*c).or_default().push((k, x.clone()));
            }
        }
        let mut basis = SparseEchelon::new(self.field, self.len);
        for f in (0..self.len).filter(|&f| !is_pivot[f]) {
            let mut v: SparseVec = cols
                .get(&f)
                .map(|entries| entries.iter().map(|(k, x)| (pivots[*k], -x)).collect())
                .unwrap_or_default();
            v.push((f, self.field.one()));
            v.sort_by_key(|(c, _)| *c);
            basis.insert(&v);
        }
        basis.dense_rows()
    }

    /// [`SparseEchelon::reduced_rows`] as dense vectors.
    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.reduced_rows()
            .into_iter()
            .map(|r| to_dense(self.field, self.len, &r))
            .collect()
    }
}

pub fn to_dense(field: FieldSpec, len: usize, v: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect()
}
