//! Idempotents and square-zero elements of `T_β`.
//!
//! Elements are written in spanning coordinates `x = Σ xᵢeᵢ` over all `n`
//! points. These are determined up to adding a common constant, since
//! `Σ eᵢ = 0`. In these coordinates the `eᵢ`-coefficient of `x∘x` is
//! `xᵢ² + Σ_{B∋i} Q_{i,B}(x)` where, for `B = {i, j, i∘j}`,
//!
//! `Q_{i,B}(x) = 2α·xᵢ(xⱼ + x_{i∘j}) + 2β·xⱼx_{i∘j}`.
//!
//! So `x∘x = εx` exactly when `xᵢ² − εxᵢ + Σ_{B∋i} Q_{i,B}(x)` takes the
//! same value `c` at every point.

mod catalog;
mod plane;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::designs::{Block, SteinerTripleSystem};
use crate::exact::{format_scalar, qi, serialize_scalar, Scalar, Vector};

pub use catalog::{
    block_catalog, e3_subalgebra_check, lambda_family_member, square_zero_scan, BlockIdempotentCatalog, CatalogEntry,
    E3Report, EntryKind, EntryLabel, SquareZeroFinding,
};
pub use plane::{ag23_decomposition, gamma_block_spectrum, parallel_classes, GammaSpectrumReport, PlaneReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdempotentError {
    #[error("point {point} is not in block {block:?}")]
    PointNotInBlock { point: usize, block: Block },
    #[error("{block:?} is not a block of the system")]
    BlockNotInSystem { block: Block },
    #[error("β = {0} is excluded here")]
    ExcludedBeta(String),
    #[error("the source system is not a Hall triple system")]
    NotHall,
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("ε must be 0 or 1")]
    BadEpsilon,
    #[error("the algebra has no source Steiner triple system")]
    MissingSource,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub(crate) fn source_of(a: &Algebra) -> Result<&SteinerTripleSystem, IdempotentError> {
    a.source().ok_or(IdempotentError::MissingSource)
}

fn check_block(s: &SteinerTripleSystem, block: &Block) -> Result<Block, IdempotentError> {
    let mut b = *block;
    b.sort_unstable();
    let [i, j, k] = b;
    let valid = i >= 1 && k <= s.n() && i != j && j != k && s.join(i, j) == k;
    if valid {
        Ok(b)
    } else {
        Err(IdempotentError::BlockNotInSystem { block: *block })
    }
}

/// `Q_{i,B}(x)` for `i ∈ B`; `x` has one entry per point.
pub fn q_poly(
    s: &SteinerTripleSystem,
    beta: &Scalar,
    i: usize,
    block: &Block,
    x: &[Scalar],
) -> Result<Scalar, IdempotentError> {
    let b = check_block(s, block)?;
    if !b.contains(&i) {
        return Err(IdempotentError::PointNotInBlock { point: i, block: *block });
    }
    if x.len() != s.n() {
        return Err(IdempotentError::CoordinateCount { expected: s.n(), found: x.len() });
    }
    let n = s.n();
    let two_alpha = qi(2) * (beta - Scalar::one()) / qi(n as i64 - 2);
    let others: Vec<usize> = b.iter().copied().filter(|&p| p != i).collect();
    let (xj, xk) = (&x[others[0] - 1], &x[others[1] - 1]);
    Ok(two_alpha * &x[i - 1] * (xj + xk) + qi(2) * beta * xj * xk)
}

/// Residuals `xᵢ² − εxᵢ + Σ_{B∋i} Q_{i,B}(x)` and what they imply.
#[derive(Debug, Clone, Serialize)]
pub struct EpsEquationCheck {
    pub epsilon: u8,
    #[serde(serialize_with = "crate::exact::serialize_scalars")]
    pub residuals: Vec<Scalar>,
    /// First point whose residual differs from the first point's.
    pub failure: Option<usize>,
    /// The common value when all residuals agree.
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub c: Option<Scalar>,
    #[serde(serialize_with = "serialize_scalar")]
    pub mean: Scalar,
    /// `(1−β)/(n−2)·Σ(xⱼ−x̄)² − εx̄ + n((n−1)β−1)/(n−2)·x̄²`.
    #[serde(serialize_with = "serialize_scalar")]
    pub c_from_mean: Scalar,
    /// `x∘x = εx` by direct multiplication.
    pub direct: bool,
}

fn serialize_opt_scalar<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&format_scalar(x)),
        None => s.serialize_none(),
    }
}

impl EpsEquationCheck {
    pub fn solves(&self) -> bool {
        self.failure.is_none()
    }

    /// Residual test, direct product and the mean formula all agree.
    pub fn consistent(&self) -> bool {
        self.solves() == self.direct && self.c.as_ref().is_none_or(|c| *c == self.c_from_mean)
    }
}

/// `Σ xᵢeᵢ` as a vector in the reduced basis.
pub fn from_spanning(a: &Algebra, x: &[Scalar]) -> Result<Vector, IdempotentError> {
    let n = a.params().n;
    if x.len() != n {
        return Err(IdempotentError::CoordinateCount { expected: n, found: x.len() });
    }
    let mut v = Vector::zeros(a.dim());
    for (p, c) in x.iter().enumerate() {
        if !c.is_zero() {
            v.add_scaled(c, &a.generator(p + 1)?);
        }
    }
    Ok(v)
}

/// Checks `x∘x = εx` for spanning coordinates `x` on a `T_β` algebra.
pub fn check_eps_equation(a: &Algebra, epsilon: u8, x: &[Scalar]) -> Result<EpsEquationCheck, IdempotentError> {
    if epsilon > 1 {
        return Err(IdempotentError::BadEpsilon);
    }
    let s = source_of(a)?;
    let beta = &a.params().beta;
    let n = s.n();
    let eps = qi(epsilon as i64);
    let mut residuals = Vec::with_capacity(n);
    for i in 1..=n {
        let mut r = &x[i - 1] * &x[i - 1] - &eps * &x[i - 1];
        for block in s.blocks().iter().filter(|b| b.contains(&i)) {
            r += q_poly(s, beta, i, block, x)?;
        }
        residuals.push(r);
    }
    let failure = (1..=n).find(|&i| residuals[i - 1] != residuals[0]);
    let c = failure.is_none().then(|| residuals[0].clone());

    let nn = qi(n as i64);
    let mean = x.iter().fold(Scalar::zero(), |acc, v| acc + v) / &nn;
    let spread = x.iter().fold(Scalar::zero(), |acc, v| {
        let d = v - &mean;
        acc + &d * &d
    });
    let n2 = qi(n as i64 - 2);
    let c_from_mean = (Scalar::one() - beta) / &n2 * spread - &eps * &mean
        + &nn * (qi(n as i64 - 1) * beta - Scalar::one()) / &n2 * &mean * &mean;

    let v = from_spanning(a, x)?;
    let direct = a.multiply(&v, &v)? == v.scale(&eps);
    Ok(EpsEquationCheck { epsilon, residuals, failure, c, mean, c_from_mean, direct })
}

#[cfg(test)]
mod tests;
