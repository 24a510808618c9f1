//! Dense exact-rational matrices: Bareiss rank and determinant, exact solves,
//! and the floating-point 2-norm condition number.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, zero, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns, vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// Rows scaled by the lcm of their denominators; rank and the sign
    /// pattern of minors are unaffected.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect()
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).0
    }

    pub fn determinant(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(Q::one());
        }
        let scale = (0..self.rows).fold(BigInt::one(), |acc, i| {
            acc * self.row(i).iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()))
        });
        let (rank, last, sign) = bareiss(self.integer_rows(), self.cols);
        if rank < self.rows {
            return Ok(zero());
        }
        Ok(Q::new(last * sign, scale))
    }

    /// Exact solution of `self · x = b` for square full-rank `self`.
    pub fn solve(&self, b: &[Q]) -> Result<Vec<Q>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {}x{} matrix and rhs of {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> =
            (0..n).map(|i| self.row(i).iter().cloned().chain(std::iter::once(b[i].clone())).collect()).collect();
        gauss_jordan(&mut aug, n)?;
        Ok(aug.into_iter().map(|row| row[n].clone()).collect())
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Q::one() } else { zero() }));
                row
            })
            .collect();
        gauss_jordan(&mut aug, n)?;
        Ok(Self::from_rows(aug.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Round-to-nearest conversion.
    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(self.get(i, j)))
    }

    /// `"p/q"` entries, comma separated, one row per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// Returns `(rank, last pivot, permutation sign)`. For a square full-rank
/// input the last pivot is the determinant up to that sign.
fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, i64) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).filter(|&i| !m[i][c].is_zero()).max_by(|&a, &b| {
            m[a][c].magnitude().cmp(m[b][c].magnitude()).then(b.cmp(&a))
        });
        let Some(p) = pivot else { continue };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = prow[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &pv * &row[j] - &f * &prow[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
    }
    (rank, prev, sign)
}

fn gauss_jordan(aug: &mut [Vec<Q>], n: usize) -> Result<()> {
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !aug[i][c].is_zero()) else {
            let rank = RationalMatrix::from_rows(aug.iter().map(|r| r[..n].to_vec()).collect()).rank();
            return Err(Error::Singular { rank, size: n });
        };
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
    }
    Ok(())
}

/// `σ_max / σ_min` from the singular values; `+∞` when the matrix is
/// singular to working precision.
pub fn cond2(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > max * f64::EPSILON * m.nrows() as f64) || !min.is_finite() {
        return f64::INFINITY;
    }
    max / min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn identity_rank_and_solve() {
        let id = RationalMatrix::identity(5);
        assert_eq!(id.rank(), 5);
        let b: Vec<Q> = (1..=5).map(|i| q(i, 7)).collect();
        assert_eq!(id.solve(&b).unwrap(), b);
        let two = RationalMatrix::from_i64(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert_eq!(two.solve(&[qi(1), qi(1), qi(1)]).unwrap(), vec![q(1, 2); 3]);
    }

    #[test]
    fn duplicated_row_is_rank_deficient() {
        let m = RationalMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant().unwrap(), qi(0));
        assert!(matches!(m.solve(&[qi(1), qi(1), qi(1)]), Err(Error::Singular { rank: 2, size: 3 })));
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = RationalMatrix::from_i64(&[vec![0, 1, 2, 3], vec![0, 2, 4, 7], vec![0, 0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn determinant_small() {
        let m = RationalMatrix::from_rows(vec![vec![q(1, 2), qi(1)], vec![qi(3), q(1, 3)]]);
        assert_eq!(m.determinant().unwrap(), q(1, 6) - qi(3));
        let p = RationalMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(p.determinant().unwrap(), qi(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_rows(vec![vec![q(1, 2), qi(1)], vec![qi(3), q(1, 3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
    }

    #[test]
    fn cond2_examples() {
        assert!((cond2(&DMatrix::identity(4, 4)) - 1.0).abs() < 1e-14);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![10.0, 1.0, 0.1]));
        assert!((cond2(&d) - 100.0).abs() < 1e-10);
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(cond2(&s), f64::INFINITY);
    }
}
