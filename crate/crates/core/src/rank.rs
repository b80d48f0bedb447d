//! Exact linear algebra over the rationals.
//!
//! Tensors with a common signature span a Q-vector space once every
//! component is split into its four rational coordinates (1, sqrt2, i,
//! i*sqrt2). [`rank_over_rationals`] computes the dimension of such a span
//! with integer-only fraction-free elimination, so results carry no
//! rounding at all. [`symmetric_signature`] diagonalizes a symmetric
//! rational matrix by congruence and reports its inertia.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::exec;
use crate::scalar::Rational;
use crate::tensor::{SpinTensor, TensorError};

/// Errors for the symmetric-matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must be square")]
    NotSquare,
    #[error("matrix must be symmetric")]
    NotSymmetric,
}

/// Dimension of the rational span of the given tensors.
///
/// All tensors must share one signature. Each becomes a row of integers
/// (rational coordinates scaled by the row's common denominator), and the
/// rank is computed by Bareiss elimination, which divides only exactly.
pub fn rank_over_rationals(tensors: &[SpinTensor]) -> Result<usize, TensorError> {
    let Some(first) = tensors.first() else {
        return Ok(0);
    };
    if tensors.iter().any(|t| t.signature() != first.signature()) {
        return Err(TensorError::SignatureMismatch);
    }
    let rows: Vec<Vec<BigInt>> = exec::map(tensors, integer_row);
    Ok(integer_rank(rows))
}

/// Scale one tensor's rational coordinates to a common-denominator-free
/// integer row.
fn integer_row(t: &SpinTensor) -> Vec<BigInt> {
    let coords: Vec<&Rational> = t.components().iter().flat_map(|c| c.coords()).collect();
    let mut scale = BigInt::one();
    for c in &coords {
        scale = scale.lcm(c.denom());
    }
    coords
        .iter()
        .map(|c| (&scale / c.denom()) * c.numer())
        .collect()
}

/// One-step Bareiss elimination. Entry growth stays bounded by minor
/// determinants and every division is exact.
fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = pivot_row[col].clone();
        let prev_ref = &prev;
        exec::for_each_mut(tail, |row| {
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            for j in (col + 1)..ncols {
                let numerator = &p * &row[j] - &factor * &pivot_row[j];
                let (q, r) = numerator.div_rem(prev_ref);
                debug_assert!(r.is_zero(), "fraction-free division must be exact");
                row[j] = q;
            }
        });
        prev = p;
        rank += 1;
    }
    rank
}

/// Inertia (positive, negative, zero counts) of a symmetric rational
/// matrix, computed by exact congruence diagonalization.
pub fn symmetric_signature(
    matrix: &[Vec<Rational>],
) -> Result<(usize, usize, usize), MatrixError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(MatrixError::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if matrix[i][j] != matrix[j][i] {
                return Err(MatrixError::NotSymmetric);
            }
        }
    }
    let mut m = matrix.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                swap_rows_cols(&mut m, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                // No usable diagonal entry: fold row/column j in, which
                // makes m[i][i] = 2 m[i][j] != 0.
                add_rows_cols(&mut m, i, j);
            } else {
                zero += 1;
                continue;
            }
        }
        let d = m[i][i].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for j in (i + 1)..n {
            if m[j][i].is_zero() {
                continue;
            }
            let f = &m[j][i] / &d;
            for k in 0..n {
                let t = &m[i][k] * &f;
                m[j][k] = &m[j][k] - &t;
            }
            for k in 0..n {
                let t = &m[k][i] * &f;
                m[k][j] = &m[k][j] - &t;
            }
        }
    }
    Ok((pos, neg, zero))
}

fn swap_rows_cols(m: &mut [Vec<Rational>], i: usize, j: usize) {
    m.swap(i, j);
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn add_rows_cols(m: &mut [Vec<Rational>], i: usize, j: usize) {
    let n = m.len();
    for k in 0..n {
        let t = m[j][k].clone();
        m[i][k] = &m[i][k] + &t;
    }
    for k in 0..n {
        let t = m[k][j].clone();
        m[k][i] = &m[k][i] + &t;
    }
}
