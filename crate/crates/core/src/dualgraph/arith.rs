use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::DualGraph;
use crate::linalg::{self, IntMatrix, LinalgError};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscrepancyError {
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("boundary has {got} entries for a graph with {expected} vertices")]
    BoundaryLength { expected: usize, got: usize },
    #[error("boundary entry {0} is negative")]
    NegativeBoundary(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coefficients `e_j` of the exceptional curves in the log pullback.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DiscrepancyVector {
    #[serde(serialize_with = "ser_rationals")]
    pub values: Vec<Rational>,
    pub klt: bool,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

impl DiscrepancyVector {
    fn new(values: Vec<Rational>) -> Self {
        let klt = values.iter().all(|e| e < &Rational::one());
        DiscrepancyVector { values, klt }
    }

    pub fn max(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_else(Rational::zero)
    }
}

/// Weighted intersection of the boundary with each exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryIncidence {
    values: Vec<Rational>,
}

impl BoundaryIncidence {
    pub fn new(values: Vec<Rational>) -> Result<Self, DiscrepancyError> {
        if let Some(i) = values.iter().position(Signed::is_negative) {
            return Err(DiscrepancyError::NegativeBoundary(i));
        }
        Ok(BoundaryIncidence { values })
    }

    pub fn zero(n: usize) -> Self {
        BoundaryIncidence { values: vec![Rational::zero(); n] }
    }

    /// A single boundary curve meeting vertex `vertex` with weight `value`.
    pub fn at(n: usize, vertex: usize, value: Rational) -> Result<Self, DiscrepancyError> {
        let mut values = vec![Rational::zero(); n];
        values[vertex] = value;
        Self::new(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl DualGraph {
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n);
        for (i, &w) in self.weights().iter().enumerate() {
            m.set(i, i, -i64::from(w));
        }
        for &(a, b) in self.edges() {
            m.set(a, b, 1);
            m.set(b, a, 1);
        }
        m
    }

    pub fn is_negative_definite(&self) -> bool {
        linalg::is_negative_definite(&self.intersection_matrix()).unwrap_or(false)
    }

    /// Right-hand side `d_j = 2 - n_j`, i.e. `-K.E_j`.
    pub fn canonical_rhs(&self) -> Vec<Rational> {
        self.weights().iter().map(|&w| rational::int(2 - i64::from(w))).collect()
    }

    pub fn discrepancies(&self) -> Result<DiscrepancyVector, DiscrepancyError> {
        self.discrepancies_with_boundary(&BoundaryIncidence::zero(self.vertex_count()))
    }

    /// Solves `M e = d - t`.
    pub fn discrepancies_with_boundary(
        &self,
        t: &BoundaryIncidence,
    ) -> Result<DiscrepancyVector, DiscrepancyError> {
        let n = self.vertex_count();
        if t.values.len() != n {
            return Err(DiscrepancyError::BoundaryLength { expected: n, got: t.values.len() });
        }
        let m = self.intersection_matrix();
        if !linalg::is_negative_definite(&m)? {
            return Err(DiscrepancyError::NotNegativeDefinite);
        }
        let rhs: Vec<Rational> = self.canonical_rhs().into_iter().zip(&t.values).map(|(d, t)| d - t).collect();
        Ok(DiscrepancyVector::new(linalg::solve(&m, &rhs)?))
    }

    /// Largest discrepancy coefficient, `e(x)`.
    pub fn coefficient(&self) -> Result<Rational, DiscrepancyError> {
        Ok(self.discrepancies()?.max())
    }

    pub fn gap(&self) -> Result<Rational, DiscrepancyError> {
        let e = self.discrepancies()?;
        let n = rational::int(self.vertex_count() as i64);
        Ok(e.values.iter().zip(self.canonical_rhs()).fold(n, |acc, (e, d)| acc + e * d))
    }

    pub fn gap_floor(&self) -> Result<BigInt, DiscrepancyError> {
        Ok(rational::floor(&self.gap()?))
    }

    /// `|det M|`, the order of the local class group.
    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.intersection_matrix())
            .expect("intersection matrices are square")
            .abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("spectral value of [j,2^m] needs j >= 3, got j = {0}")]
pub struct SpectralValueError(pub u32);

/// Spectral value of the chain `[j,2^m]` with the boundary meeting the far
/// end: `(j - 2)(m + 1)`.
pub fn spectral_value_chain(j: u32, m: u32) -> Result<u64, SpectralValueError> {
    if j < 3 {
        return Err(SpectralValueError(j));
    }
    Ok(u64::from(j - 2) * (u64::from(m) + 1))
}
