//! Axes of `T_β`: eigenspaces of `L(eᵢ)`, fusion laws, Miyamoto
//! involutions and the group they generate.
//!
//! For an axis `eᵢ` the eigenspaces have explicit spanning sets that do not
//! depend on `β`:
//!
//! * `1`: `eᵢ`
//! * `β₊`: `2eᵢ + (n−1)(eⱼ + e_{i∘j})` for `j ≠ i`
//! * `β₋`: `eⱼ − e_{i∘j}` for `j ≠ i`
//!
//! so `L(eᵢ)` is always diagonalizable; only the eigenvalues can collide.

mod fusion;
mod graded;
mod miyamoto;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::designs::SteinerTripleSystem;
use crate::exact::{qi, Scalar, Subspace, Vector};
use crate::outcome::Outcome;

pub use fusion::{
    certify_witness, fusion_table_for, plus_is_subalgebra, verify_fusion, verify_fusion_all, FusionLaw, FusionVerdict,
    FusionWitness, LawKind,
};
pub use graded::{graded_ideal_analysis, GradedIdealReport, PairedIdealChecks};
pub use miyamoto::{
    closure_cap_from_env, miyamoto_group, miyamoto_involution, permutation_operator, three_transposition_check,
    transposition_relations, MiyamotoGroup, MiyamotoInvolution, ThreeTranspositionReport, TranspositionRelations,
    DEFAULT_CLOSURE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxialError {
    #[error("β = {beta} makes 1, β₊, β₋ collide for n = {n}")]
    ExcludedBeta { n: usize, beta: String },
    #[error("group closure exceeded {0} elements")]
    ClosureCapExceeded(usize),
    #[error("the source system is not a Hall triple system")]
    NotHall,
    #[error("expected β = {expected}, got {found}")]
    WrongBeta { expected: String, found: String },
    #[error("the algebra has no source Steiner triple system")]
    MissingSource,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which eigenvalues of `L(eᵢ)` coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalCase {
    Generic,
    /// `β₊ = 1`.
    BetaIs1,
    /// `β = −(n−1)/(n−3)`, so `β₋ = 1`.
    BetaIsNegRatio,
    /// `β₊ = β₋ = −1/(n−2)`.
    BetaIs0,
}

impl ExceptionalCase {
    pub fn classify(n: usize, beta: &Scalar) -> Self {
        if beta.is_zero() {
            ExceptionalCase::BetaIs0
        } else if beta.is_one() {
            ExceptionalCase::BetaIs1
        } else if n > 3 && *beta == -qi(n as i64 - 1) / qi(n as i64 - 3) {
            ExceptionalCase::BetaIsNegRatio
        } else {
            ExceptionalCase::Generic
        }
    }
}

/// The seven values of `β` at which one of `β₊, β₋` lands in `{0, 1/2, 1}`
/// or the two coincide, in increasing order. Requires `n > 3`.
pub fn transitional_betas(n: usize) -> Vec<Scalar> {
    let n = n as i64;
    let mut out = vec![
        -qi(n - 1) / qi(n - 3),
        -qi(n) / qi(2 * (n - 3)),
        -Scalar::one() / qi(n - 3),
        Scalar::zero(),
        Scalar::one() / qi(n - 1),
        qi(n) / qi(2 * (n - 1)),
        Scalar::one(),
    ];
    out.sort();
    out
}

/// Human-readable marks such as `"β₊ = 1/2"` or `"β₊ = β₋"`.
pub fn transition_flags(beta_plus: &Scalar, beta_minus: &Scalar) -> Vec<String> {
    let half = Scalar::one() / qi(2);
    let marks = [(Scalar::zero(), "0"), (half, "1/2"), (Scalar::one(), "1")];
    let mut out = Vec::new();
    for (name, value) in [("β₊", beta_plus), ("β₋", beta_minus)] {
        for (mark, text) in &marks {
            if value == mark {
                out.push(format!("{name} = {text}"));
            }
        }
    }
    if beta_plus == beta_minus {
        out.push("β₊ = β₋".to_string());
    }
    out
}

/// Eigenspaces of `L(eᵢ)` labelled by the formal eigenvalues `1, β₊, β₋`.
///
/// The three parts come from the spanning sets above. `kernels_match` records
/// that, for each distinct eigenvalue `λ`, the exact kernel of `L(eᵢ) − λ`
/// equals the sum of the parts carrying `λ`.
#[derive(Debug, Clone)]
pub struct AxisDecomposition {
    pub point: usize,
    pub axis: Vector,
    pub eigenvalues: [Scalar; 3],
    pub eigen_1: Subspace,
    pub eigen_plus: Subspace,
    pub eigen_minus: Subspace,
    pub exceptional_case: ExceptionalCase,
    pub kernels_match: bool,
}

impl AxisDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.eigen_1.dim(), self.eigen_plus.dim(), self.eigen_minus.dim())
    }

    pub fn parts(&self) -> [(&Scalar, &Subspace); 3] {
        [
            (&self.eigenvalues[0], &self.eigen_1),
            (&self.eigenvalues[1], &self.eigen_plus),
            (&self.eigenvalues[2], &self.eigen_minus),
        ]
    }

    /// `𝔅₊ + F·eᵢ`, the even part of the grading.
    pub fn even_part(&self) -> Subspace {
        self.eigen_1.join(&self.eigen_plus)
    }

    /// Distinct eigenvalues with the multiplicity of each.
    pub fn spectrum(&self) -> Vec<(Scalar, usize)> {
        let mut out: Vec<(Scalar, usize)> = Vec::new();
        for (lambda, part) in self.parts() {
            match out.iter_mut().find(|(l, _)| l == lambda) {
                Some(entry) => entry.1 += part.dim(),
                None => out.push((lambda.clone(), part.dim())),
            }
        }
        out
    }

    /// Every part's basis vectors are eigenvectors for their label.
    pub fn is_consistent(&self, a: &Algebra) -> bool {
        let op = a.operator(&self.axis);
        self.parts().iter().all(|(lambda, part)| {
            part.basis().iter().all(|v| op.mul_vector(v).expect("square") == v.scale(lambda))
        })
    }
}

pub(crate) fn source_of(a: &Algebra) -> Result<&SteinerTripleSystem, AxialError> {
    a.source().ok_or(AxialError::MissingSource)
}

pub fn decompose_axis(a: &Algebra, point: usize) -> Result<AxisDecomposition, AxialError> {
    let s = source_of(a)?;
    let axis = a.generator(point)?;
    let p = a.params();
    let n = p.n;
    let gens = a.generators()?;
    let e = |q: usize| &gens[q - 1];

    let mut plus = Subspace::zero(a.dim());
    let mut minus = Subspace::zero(a.dim());
    let scale = qi(n as i64 - 1);
    for j in (1..=n).filter(|&j| j != point) {
        let k = s.join(point, j);
        minus.insert(&(e(j) - e(k)));
        let pair = e(j) + e(k);
        plus.insert(&(&axis.scale(&qi(2)) + &pair.scale(&scale)));
    }
    let eigenvalues = [Scalar::one(), p.beta_plus.clone(), p.beta_minus.clone()];
    let parts = [Subspace::span(a.dim(), [axis.clone()]), plus, minus];

    let op = a.operator(&axis);
    let mut kernels_match = true;
    for lambda in &eigenvalues {
        let mut expected = Subspace::zero(a.dim());
        for (mu, part) in eigenvalues.iter().zip(&parts) {
            if mu == lambda {
                expected = expected.join(part);
            }
        }
        let kernel = Subspace::span(a.dim(), op.eigenspace(lambda).map_err(AlgebraError::from)?);
        kernels_match &= kernel == expected;
    }

    let [eigen_1, eigen_plus, eigen_minus] = parts;
    Ok(AxisDecomposition {
        point,
        axis,
        eigenvalues,
        eigen_1,
        eigen_plus,
        eigen_minus,
        exceptional_case: ExceptionalCase::classify(n, &p.beta),
        kernels_match,
    })
}

/// Decompositions for every axis `e₁..eₙ`.
pub fn decompose_all(a: &Algebra) -> Result<Vec<AxisDecomposition>, AxialError> {
    let n = a.params().n;
    (1..=n).into_par_iter().map(|i| decompose_axis(a, i)).collect()
}

/// The product identities for `eⱼ ± e_{i∘j}` around an axis `eᵢ`:
///
/// * `(eⱼ−e_{i∘j})² = (1−2α)(eⱼ+e_{i∘j}) − 2βeᵢ`
/// * `(eⱼ+e_{i∘j})² = (1+2α)(eⱼ+e_{i∘j}) + 2βeᵢ`
/// * `(eⱼ−e_{i∘j})∘(eⱼ+e_{i∘j}) = eⱼ − e_{i∘j}`
///
/// The witness is the first failing `(i, j)` on points.
pub fn pair_square_identities(a: &Algebra) -> Result<Outcome<(usize, usize)>, AxialError> {
    let s = source_of(a)?;
    let p = a.params();
    let gens = a.generators()?;
    let n = p.n;
    let two_alpha = qi(2) * &p.alpha;
    let two_beta = qi(2) * &p.beta;
    for i in 1..=n {
        let ei = &gens[i - 1];
        for j in (1..=n).filter(|&j| j != i) {
            let (ej, ek) = (&gens[j - 1], &gens[s.join(i, j) - 1]);
            let diff = ej - ek;
            let sum = ej + ek;
            let minus_sq = &sum.scale(&(Scalar::one() - &two_alpha)) - &ei.scale(&two_beta);
            let plus_sq = &sum.scale(&(Scalar::one() + &two_alpha)) + &ei.scale(&two_beta);
            if a.mul(&diff, &diff) != minus_sq || a.mul(&sum, &sum) != plus_sq || a.mul(&diff, &sum) != diff {
                return Ok(Outcome::Fails((i, j)));
            }
        }
    }
    Ok(Outcome::Holds)
}
