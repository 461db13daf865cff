//! Fraction-free elimination on matrices of polynomials: determinants and incremental rank over
//! the rational function field `k(x1, ..., xn)`.

use crate::poly::Poly;

/// Bareiss determinant of a square matrix of polynomials, given as rows.
pub fn det(rows: &[Vec<Poly>], field: crate::field::FieldSpec, nvars: usize) -> Poly {
    let n = rows.len();
    if n == 0 {
        return Poly::one(field, nvars);
    }
    let mut a: Vec<Vec<Poly>> = rows.to_vec();
    let mut prev = Poly::one(field, nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero(field, nvars);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(field, nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Rank of a growing set of polynomial vectors over `k(x)`.
///
/// Each stored vector has been reduced against the earlier ones by Bareiss steps, so its entries
/// are minors of the matrix of inserted vectors and every division is exact.
#[derive(Clone, Debug)]
pub struct IncrementalRank {
    len: usize,
    rows: Vec<Vec<Poly>>,
    pivots: Vec<usize>,
}

impl IncrementalRank {
    pub fn new(len: usize) -> Self {
        IncrementalRank {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    /// The vector `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let lead = &row[p];
            let factor = v[p].clone();
            let divisor = (k > 0).then(|| &self.rows[k - 1][self.pivots[k - 1]]);
            for j in 0..self.len {
                let t = &(&v[j] * lead) - &(&factor * &row[j]);
                v[j] = match divisor {
                    Some(d) => t.div_exact(d).expect("Bareiss division is exact"),
                    None => t,
                };
            }
        }
        v
    }

    /// Inserts `v` if it is independent of the stored vectors.
    pub fn try_insert(&mut self, v: &[Poly]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    /// Up to sign, the determinant of the inserted vectors once the rank is full.
    pub fn last_pivot(&self) -> Option<&Poly> {
        let k = self.rows.len().checked_sub(1)?;
        Some(&self.rows[k][self.pivots[k]])
    }
}
