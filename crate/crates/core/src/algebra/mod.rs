//! Structure-constant algebras attached to triple systems.
//!
//! Every algebra is stored as the full table of basis products
//! `eᵢ∘eⱼ` (dense), plus the nonzero entries of each product for fast
//! bilinear evaluation. The reduced algebras `T_β` use the basis
//! `e₁..e_{n−1}`; `eₙ = −(e₁+…+e_{n−1})` is rewritten away when the table is
//! built.

mod build;
mod export;
mod forms;
mod ideal;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::designs::{DesignError, PartialTripleSystem, SteinerTripleSystem};
use crate::exact::{qi, ExactError, Matrix, Scalar, Vector};

pub use build::{
    build_matsuo, build_mendelsohn, build_simplicial, build_t_beta, build_t_beta_via_quotient, build_unreduced,
    e_hat_ideal_status, matsuo_e_hat_check, quotient_consistency, quotient_map, EHatStatus,
};
pub use export::{export_json, AlgebraExport};
pub use forms::{
    check_invariance, gram_identity_check, gram_matches, killing_form, killing_gram_factor, tight_frame_check,
    BilinearForm,
};
pub use ideal::{ideal_closure, is_simple, Ideal, SimplicityVerdict, SpanningFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("γ, α and β are all zero")]
    AllParamsZero,
    #[error("expected dimension {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("operation needs a {expected} algebra, got {found}")]
    WrongKind { expected: &'static str, found: AlgebraKind },
    #[error("order {n} is too small for this construction")]
    InvalidOrder { n: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Unreduced,
    SteinerT,
    Matsuo,
    Mendelsohn,
    Simplicial,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AlgebraKind::Unreduced => "unreduced",
            AlgebraKind::SteinerT => "steiner_t",
            AlgebraKind::Matsuo => "matsuo",
            AlgebraKind::Mendelsohn => "mendelsohn",
            AlgebraKind::Simplicial => "simplicial",
        };
        f.write_str(name)
    }
}

/// `γ, α, β` with `β₊ = α+β` and `β₋ = α−β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraParams {
    pub n: usize,
    pub gamma: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub beta_plus: Scalar,
    pub beta_minus: Scalar,
}

impl AlgebraParams {
    pub fn new(n: usize, gamma: Scalar, alpha: Scalar, beta: Scalar) -> Self {
        let beta_plus = &alpha + &beta;
        let beta_minus = &alpha - &beta;
        AlgebraParams { n, gamma, alpha, beta, beta_plus, beta_minus }
    }

    /// `γ = 1`, `α = (β−1)/(n−2)`.
    pub fn t_beta(n: usize, beta: Scalar) -> Result<Self, AlgebraError> {
        if n < 3 {
            return Err(AlgebraError::InvalidOrder { n });
        }
        let alpha = (&beta - Scalar::one()) / qi(n as i64 - 2);
        Ok(Self::new(n, Scalar::one(), alpha, beta))
    }

    /// `(n−3)β² + 1`.
    pub fn omega(&self) -> Scalar {
        qi(self.n as i64 - 3) * &self.beta * &self.beta + Scalar::one()
    }

    pub fn all_zero(&self) -> bool {
        self.gamma.is_zero() && self.alpha.is_zero() && self.beta.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    kind: AlgebraKind,
    params: AlgebraParams,
    source: Option<SteinerTripleSystem>,
    incidence: Option<PartialTripleSystem>,
    // products[i * dim + j] = eᵢ∘eⱼ
    products: Vec<Vector>,
    // nonzero coordinates of each product
    sparse: Vec<Vec<(usize, Scalar)>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.products == other.products
    }
}

impl Algebra {
    /// Builds from the products `eᵢ∘eⱼ` for `i ≤ j`.
    pub(crate) fn from_upper(
        dim: usize,
        labels: Vec<String>,
        kind: AlgebraKind,
        params: AlgebraParams,
        incidence: Option<PartialTripleSystem>,
        mut product: impl FnMut(usize, usize) -> Vector,
    ) -> Self {
        let mut products = vec![Vector::zeros(dim); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = product(i, j);
                debug_assert_eq!(v.dim(), dim);
                products[j * dim + i] = v.clone();
                products[i * dim + j] = v;
            }
        }
        let sparse = products
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
            .collect();
        let source = incidence.clone().and_then(|p| SteinerTripleSystem::new(p).ok());
        Algebra { dim, labels, kind, params, source, incidence, products, sparse }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// The Steiner triple system the algebra was built from, if any.
    pub fn source(&self) -> Option<&SteinerTripleSystem> {
        self.source.as_ref()
    }

    /// The (possibly partial) triple system the algebra was built from.
    pub fn incidence(&self) -> Option<&PartialTripleSystem> {
        self.incidence.as_ref()
    }

    /// `eᵢ∘eⱼ` on basis indices.
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim + j]
    }

    /// Structure constant: coefficient of `e_k` in `eᵢ∘eⱼ`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.products[i * self.dim + j][k]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.dim, i)
    }

    /// The spanning element `e_p` of a reduced algebra for 1-based point `p`;
    /// `eₙ = −Σ e_k`.
    pub fn generator(&self, point: usize) -> Result<Vector, AlgebraError> {
        self.require_reduced()?;
        let n = self.params.n;
        if point == 0 || point > n {
            return Err(AlgebraError::Design(DesignError::PointOutOfRange { point, n }));
        }
        Ok(if point == n { -&Vector::new(vec![Scalar::one(); self.dim]) } else { self.basis_vector(point - 1) })
    }

    /// All `n` spanning generators `e₁..eₙ`.
    pub fn generators(&self) -> Result<Vec<Vector>, AlgebraError> {
        (1..=self.params.n).map(|p| self.generator(p)).collect()
    }

    pub(crate) fn require_reduced(&self) -> Result<(), AlgebraError> {
        match self.kind {
            AlgebraKind::SteinerT | AlgebraKind::Simplicial => Ok(()),
            found => Err(AlgebraError::WrongKind { expected: "steiner_t or simplicial", found }),
        }
    }

    fn check_dim(&self, v: &Vector) -> Result<(), AlgebraError> {
        if v.dim() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimMismatch { expected: self.dim, found: v.dim() })
        }
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product for internal loops.
    pub(crate) fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        let ys: Vec<usize> = (0..self.dim).filter(|&j| !y[j].is_zero()).collect();
        for i in (0..self.dim).filter(|&i| !x[i].is_zero()) {
            for &j in &ys {
                let coef = &x[i] * &y[j];
                for (k, c) in &self.sparse[i * self.dim + j] {
                    out[*k] += &coef * c;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x∘y`.
    pub fn mult_operator(&self, x: &Vector) -> Result<Matrix, AlgebraError> {
        self.check_dim(x)?;
        Ok(self.operator(x))
    }

    pub(crate) fn operator(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in (0..self.dim).filter(|&i| !x[i].is_zero()) {
            for j in 0..self.dim {
                for (k, c) in &self.sparse[i * self.dim + j] {
                    m[(*k, j)] += &x[i] * c;
                }
            }
        }
        m
    }

    /// `L(eᵢ)` for a basis index.
    pub(crate) fn basis_operator(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in &self.sparse[i * self.dim + j] {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// `tr L(eₖ)` for each basis element.
    pub fn basis_traces(&self) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| (0..self.dim).fold(Scalar::zero(), |acc, j| acc + self.structure_constant(k, j, j)))
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.basis_traces().iter().all(Zero::is_zero)
    }

    /// `eᵢ∘eⱼ = eⱼ∘eᵢ` on the stored table.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    pub fn is_idempotent(&self, x: &Vector) -> bool {
        x.dim() == self.dim && &self.mul(x, x) == x
    }

    /// Whether `σ` (on 1-based points) permutes the generators compatibly
    /// with the product table of a reduced algebra.
    pub fn respects_permutation(&self, sigma: &crate::perm::Permutation) -> Result<bool, AlgebraError> {
        let gens = self.generators()?;
        let image = |p: usize| &gens[sigma.apply_point(p) - 1];
        for i in 1..=self.params.n {
            for j in i..=self.params.n {
                let lhs = self.mul(image(i), image(j));
                let prod = self.mul(&gens[i - 1], &gens[j - 1]);
                // Image of the product under the linear map e_p ↦ e_{σ(p)}.
                let mut rhs = Vector::zeros(self.dim);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        rhs.add_scaled(c, image(k + 1));
                    }
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
