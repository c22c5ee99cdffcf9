//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Intersection matrices in this crate are small (rank well under 30) and
//! integral, so every routine here works on `BigInt` entries and only
//! introduces rationals during back substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NonSquare { rows: usize, row: usize, len: usize },
    #[error("right-hand side has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
}

/// A dense integer matrix. Rows are not required to have equal length; the
/// routines that need a square matrix check it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        IntMatrix { rows }
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix { rows: vec![vec![0; n]; n] }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.rows[i][j] = value;
    }

    pub fn check_square(&self) -> Result<usize, LinalgError> {
        let n = self.rows.len();
        for (row, r) in self.rows.iter().enumerate() {
            if r.len() != n {
                return Err(LinalgError::NonSquare { rows: n, row, len: r.len() });
            }
        }
        Ok(n)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rows.len();
        self.check_square().is_ok()
            && (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> IntMatrix {
        IntMatrix {
            rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (&a, x)| acc + x * BigInt::from(a))
            })
            .collect()
    }
}

fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// In-place Bareiss elimination with row pivoting on the first `n` columns.
/// Returns the row-swap parity, or `None` if some column has no pivot.
fn bareiss(a: &mut [Vec<BigInt>], n: usize) -> Option<bool> {
    let mut prev = BigInt::one();
    let mut odd = false;
    let width = a.first().map_or(0, Vec::len);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        if pivot != k {
            a.swap(pivot, k);
            odd = !odd;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = t.div_floor(&prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(odd)
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    let n = m.check_square()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = to_big(m);
    match bareiss(&mut a, n) {
        None => Ok(BigInt::zero()),
        Some(odd) => {
            let det = a[n - 1][n - 1].clone();
            Ok(if odd { -det } else { det })
        }
    }
}

/// All leading principal minors `D_1, ..., D_n`.
pub fn leading_principal_minors(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let n = m.check_square()?;
    (1..=n).map(|k| determinant(&m.leading(k))).collect()
}

/// Negative definiteness by Sylvester's criterion: `(-1)^k D_k > 0` for all k.
pub fn is_negative_definite(m: &IntMatrix) -> Result<bool, LinalgError> {
    let minors = leading_principal_minors(m)?;
    Ok(minors.iter().enumerate().all(|(i, d)| {
        if i % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    }))
}

/// Unique solution of `m x = rhs` in exact rationals.
pub fn solve(m: &IntMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = m.check_square()?;
    if rhs.len() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: rhs.len() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Clear denominators so the augmented column is integral too.
    let scale = rhs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut a = to_big(m);
    for (row, r) in a.iter_mut().zip(rhs) {
        row.push(r.numer() * (&scale / r.denom()));
    }
    bareiss(&mut a, n).ok_or(LinalgError::Singular)?;

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= &x[j] * &a[i][j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    let scale = Rational::from_integer(scale);
    Ok(x.into_iter().map(|v| v / &scale).collect())
}
