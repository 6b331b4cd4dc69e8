//! Exact dense matrices over [`Scalar`] and rational linear algebra
//! (RREF, rank, nullspace, inverse). Nullspace and rank require all entries
//! to be rational; parameters must be specialized first.

use crate::scalar::{Q, Scalar};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix entry at ({0},{1}) is not rational; specialize parameters first")]
    NonRational(usize, usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

/// Rectangular matrix with exact scalar entries, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ExactMat {
    pub fn zero(rows: usize, cols: usize) -> ExactMat {
        ExactMat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> ExactMat {
        let mut m = ExactMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> ExactMat {
        let mut m = ExactMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_q_rows(rows: &[Vec<Q>]) -> ExactMat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        ExactMat::from_fn(r, c, |i, j| Scalar::from_q(rows[i][j].clone()))
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let cur = self.get(i, j).clone();
        self.set(i, j, &cur + v);
    }

    pub fn add(&self, other: &ExactMat) -> ExactMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &ExactMat) -> ExactMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn mul(&self, other: &ExactMat) -> ExactMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut m = ExactMat::zero(self.rows, other.cols);
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
                    m.add_at(i, j, &(a * b));
                }
            }
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> ExactMat {
        ExactMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn transpose(&self) -> ExactMat {
        ExactMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// If the matrix is `c * I`, returns `c`.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c.clone() } else { Scalar::zero() };
                if *self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn to_q(&self) -> Result<Vec<Vec<Q>>, MatrixError> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(
                    self.get(i, j)
                        .as_q()
                        .ok_or(MatrixError::NonRational(i, j))?,
                );
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Basis of the exact kernel. Empty iff the matrix is injective.
    pub fn nullspace(&self) -> Result<Vec<Vec<Q>>, MatrixError> {
        Ok(q_nullspace(&self.to_q()?))
    }

    pub fn rank(&self) -> Result<usize, MatrixError> {
        Ok(q_rank(&self.to_q()?))
    }
}

/// Reduced row echelon form, in place; returns pivot column per pivot row.
pub fn q_rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &(&f * &m[r][j]);
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn q_rank(m: &[Vec<Q>]) -> usize {
    let mut w = m.to_vec();
    q_rref(&mut w).len()
}

/// Exact kernel basis of a rational matrix.
pub fn q_nullspace(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut w = m.to_vec();
    let pivots = q_rref(&mut w);
    let mut basis = Vec::new();
    let mut piv_iter = pivots.iter().peekable();
    let free: Vec<usize> = (0..cols)
        .filter(|c| {
            if piv_iter.peek() == Some(&c) {
                piv_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &fc in &free {
        let mut v = vec![Q::zero(); cols];
        v[fc] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact inverse of a square rational matrix.
pub fn q_inverse(m: &[Vec<Q>]) -> Result<Vec<Vec<Q>>, MatrixError> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Q::one() } else { Q::zero() });
            }
            r
        })
        .collect();
    let pivots = q_rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(MatrixError::Singular);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn q_mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let p = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![Q::zero(); p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                let v = &out[i][j] + &(&a[i][k] * &bk[j]);
                out[i][j] = v;
            }
        }
    }
    out
}

pub fn q_mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn q_dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn q_transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn q_identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

/// Quadratic form `a^T M b` with exact scalar vectors.
pub fn scalar_quad_form(m: &[Vec<Q>], a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut out = Scalar::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            out = &out + &(&a[i] * &b[j]).scale(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Sym};

    #[test]
    fn nullspace_of_identity_is_trivial() {
        let m = ExactMat::identity(3);
        assert!(m.nullspace().unwrap().is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let m = ExactMat::zero(2, 2);
        assert_eq!(m.nullspace().unwrap().len(), 2);
    }

    #[test]
    fn rank_one_kernel() {
        let m = ExactMat::from_q_rows(&[vec![q(1), q(1)], vec![q(2), q(2)]]);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        // spanned by (1, -1)
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1], q(0));
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ExactMat::from_q_rows(&[
            vec![q(1), q(2), q(3)],
            vec![q(4), q(5), q(6)],
            vec![q(7), q(8), q(9)],
        ]);
        let ns = m.nullspace().unwrap();
        assert_eq!(ns.len() + m.rank().unwrap(), 3);
        let mq = m.to_q().unwrap();
        for v in &ns {
            assert!(q_mat_vec(&mq, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn symbolic_entries_are_rejected() {
        let mut m = ExactMat::identity(2);
        m.set(0, 1, Scalar::sym(Sym::k()));
        assert_eq!(m.nullspace(), Err(MatrixError::NonRational(0, 1)));
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = q_inverse(&m).unwrap();
        assert_eq!(q_mat_mul(&m, &inv), q_identity(2));
    }
}
