//! Exact linear algebra over the integers and rationals.
//!
//! Everything here is exact: determinants use fraction-free (Bareiss)
//! elimination, inertia is read off a congruence diagonalization over the
//! rationals, and linear systems are solved by Gauss-Jordan elimination over
//! the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose)")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ragged matrix rows")]
    Ragged,
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let n = rows.len();
        Ok(IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows must have equal length")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Bilinear form `u^T M v`.
    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        debug_assert_eq!(u.len(), self.rows);
        debug_assert_eq!(v.len(), self.cols);
        let mut acc = BigInt::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                acc += ui * self.get(i, j) * vj;
            }
        }
        acc
    }

    fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(Rational::from_integer).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// Signature triple of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub b_plus: usize,
    pub b_zero: usize,
    pub b_minus: usize,
}

impl Inertia {
    pub fn new(b_plus: usize, b_zero: usize, b_minus: usize) -> Self {
        Inertia {
            b_plus,
            b_zero,
            b_minus,
        }
    }

    pub fn dimension(&self) -> usize {
        self.b_plus + self.b_zero + self.b_minus
    }

    pub fn is_negative_definite(&self) -> bool {
        self.b_plus == 0 && self.b_zero == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.b_zero == 0
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.b_plus, self.b_zero, self.b_minus]
    }
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let (pivot_row, target) = if i < r {
                let (lo, hi) = rows.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *t -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    rational_rank(m.to_rational_rows())
}

pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right kernel `{ v : M v = 0 }` over the rationals.
pub fn nullspace(m: &IntMatrix) -> Vec<Vec<Rational>> {
    let mut rows = m.to_rational_rows();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides out the content of a rational vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One witness `z` with `M z = a`; free variables are set to zero.
    Solution(Vec<Rational>),
    NoSolution,
}

impl SolveOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveOutcome::Solution(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            SolveOutcome::Solution(z) => Some(z),
            SolveOutcome::NoSolution => None,
        }
    }
}

/// Solves `M z = a` for integer right-hand side.
pub fn solve_rational(m: &IntMatrix, a: &[BigInt]) -> Result<SolveOutcome, LinalgError> {
    let rhs: Vec<Rational> = a.iter().cloned().map(Rational::from_integer).collect();
    solve(m, &rhs)
}

/// Solves `M z = a` for rational right-hand side.
pub fn solve(m: &IntMatrix, a: &[Rational]) -> Result<SolveOutcome, LinalgError> {
    if a.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            got: a.len(),
        });
    }
    let mut rows: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| {
            let mut r: Vec<Rational> = m.row(i).iter().cloned().map(Rational::from_integer).collect();
            r.push(a[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&m.cols) {
        return Ok(SolveOutcome::NoSolution);
    }
    let mut z = vec![Rational::zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        z[pc] = rows[r][m.cols].clone();
    }
    Ok(SolveOutcome::Solution(z))
}

/// Exact inertia by symmetric (congruence) Gaussian elimination over the
/// rationals. Sylvester's law makes the count independent of pivot choice.
pub fn inertia(m: &IntMatrix) -> Result<Inertia, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if let Some((row, col)) = m.first_asymmetry() {
        return Err(LinalgError::NotSymmetric { row, col });
    }
    let n = m.rows;
    let mut a = m.to_rational_rows();
    let mut result = Inertia::new(0, 0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a[k..].iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Row/column k += row/column j; new pivot is 2 a[k][j] != 0.
                let row_j = a[j][k..].to_vec();
                for (dst, v) in a[k][k..].iter_mut().zip(row_j) {
                    *dst += v;
                }
                for row in a[k..].iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                result.b_zero += 1;
                continue;
            }
        }
        // Replace the trailing block by its Schur complement, which is
        // what the paired row and column operations leave behind.
        let pivot = a[k][k].clone();
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot;
            for c in k + 1..n {
                if !pivot_row[c].is_zero() {
                    let v = &factor * &pivot_row[c];
                    row[c] -= v;
                }
            }
            row[k] = Rational::zero();
        }
        if pivot.is_positive() {
            result.b_plus += 1;
        } else {
            result.b_minus += 1;
        }
    }
    Ok(result)
}
