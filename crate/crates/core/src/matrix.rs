//! Small dense matrices over [`QRat`] with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::QRat;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QMatrix {
    rows: Vec<Vec<QRat>>,
}

impl QMatrix {
    pub fn zeros(n: usize, m: usize) -> Self {
        QMatrix { rows: vec![vec![QRat::zero(); m]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = QMatrix::zeros(n, n);
        for i in 0..n {
            a.rows[i][i] = QRat::one();
        }
        a
    }

    pub fn diagonal(d: Vec<QRat>) -> Self {
        let n = d.len();
        let mut a = QMatrix::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            a.rows[i][i] = x;
        }
        a
    }

    pub fn from_rows(rows: Vec<Vec<QRat>>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged matrix");
        }
        QMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<QRat>] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    /// True iff the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.rows.iter().enumerate().all(|(i, r)| r[i] == self.rows[0][0])
    }

    pub fn transpose(&self) -> QMatrix {
        let (n, m) = (self.nrows(), self.ncols());
        let mut t = QMatrix::zeros(m, n);
        for i in 0..n {
            for j in 0..m {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        a.row_reduce().len()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let (n, m) = (self.nrows(), self.ncols());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| !self.rows[i][col].is_zero()) else { continue };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].inv().expect("nonzero pivot");
            for x in self.rows[row].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = self.rows[row].clone();
            for i in 0..n {
                if i == row || self.rows[i][col].is_zero() {
                    continue;
                }
                let f = self.rows[i][col].clone();
                for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Solves `self * x = b`. Returns `Ok(None)` if the system is inconsistent, and the
    /// particular solution with free variables set to zero otherwise, together with the
    /// number of free variables.
    pub fn solve(&self, b: &[QRat]) -> Option<(Vec<QRat>, usize)> {
        let (n, m) = (self.nrows(), self.ncols());
        assert_eq!(b.len(), n);
        let mut aug = QMatrix::zeros(n, m + 1);
        for i in 0..n {
            aug.rows[i][..m].clone_from_slice(&self.rows[i]);
            aug.rows[i][m] = b[i].clone();
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&m) {
            return None;
        }
        let mut x = vec![QRat::zero(); m];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.rows[r][m].clone();
        }
        Some((x, m - pivots.len()))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = QRat;
    fn index(&self, (i, j): (usize, usize)) -> &QRat {
        &self.rows[i][j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QRat {
        &mut self.rows[i][j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "shape mismatch");
        let mut out = QMatrix::zeros(self.nrows(), rhs.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = &rhs.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn solve_and_rank() {
        let a = QMatrix::from_rows(vec![vec![qr("1"), qr("q")], vec![qr("q"), qr("1")]]);
        let (x, free) = a.solve(&[qr("1+q"), qr("1+q")]).unwrap();
        assert_eq!(free, 0);
        assert_eq!(x, vec![qr("1"), qr("1")]);
        assert_eq!(a.rank(), 2);
        let s = QMatrix::from_rows(vec![vec![qr("1"), qr("q")], vec![qr("2"), qr("2q")]]);
        assert_eq!(s.rank(), 1);
        assert!(s.solve(&[qr("1"), qr("3")]).is_none());
    }

    #[test]
    fn product_and_predicates() {
        let d = QMatrix::diagonal(vec![qr("1"), qr("0")]);
        assert_eq!(&d * &d, d);
        assert!(d.is_diagonal());
        assert!(!d.is_scalar());
        assert!(QMatrix::identity(3).is_scalar());
    }
}
