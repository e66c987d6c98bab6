use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{decompose_axis, AxialError};
use crate::algebra::{Algebra, AlgebraError};
use crate::exact::{format_scalar, qi, serialize_scalar, serialize_vector, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Z2,
    Jordan,
}

/// A symmetric fusion table on an ordered list of eigenvalues.
///
/// `table[a][b]` lists indices into `eigenvalues`. `grading`, when present,
/// assigns `+1` or `−1` to each eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionLaw {
    pub kind: LawKind,
    pub eigenvalues: Vec<Scalar>,
    pub table: Vec<Vec<Vec<usize>>>,
    pub grading: Option<Vec<i8>>,
}

impl FusionLaw {
    /// `{1, β₊, β₋}` with `β₋·β₋ → {1, β₊}`, graded by `β₋ ↦ −1`.
    pub fn z2(n: usize, beta: &Scalar) -> Result<Self, AxialError> {
        let excluded = || AxialError::ExcludedBeta { n, beta: format_scalar(beta) };
        if n < 3 {
            return Err(AlgebraError::InvalidOrder { n }.into());
        }
        let alpha = (beta - Scalar::one()) / qi(n as i64 - 2);
        let plus = &alpha + beta;
        let minus = &alpha - beta;
        if plus.is_one() || minus.is_one() || plus == minus {
            return Err(excluded());
        }
        Ok(FusionLaw {
            kind: LawKind::Z2,
            eigenvalues: vec![Scalar::one(), plus, minus],
            table: vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![1], vec![0, 1], vec![2]],
                vec![vec![2], vec![2], vec![0, 1]],
            ],
            grading: Some(vec![1, 1, -1]),
        })
    }

    /// `{1, 0, −2/(n−1)}` with `1·0 → ∅`.
    pub fn jordan(n: usize) -> Result<Self, AxialError> {
        if n < 3 {
            return Err(AlgebraError::InvalidOrder { n }.into());
        }
        Ok(FusionLaw {
            kind: LawKind::Jordan,
            eigenvalues: vec![Scalar::one(), Scalar::zero(), qi(-2) / qi(n as i64 - 1)],
            table: vec![
                vec![vec![0], vec![], vec![2]],
                vec![vec![], vec![1], vec![2]],
                vec![vec![2], vec![2], vec![0, 1]],
            ],
            grading: None,
        })
    }

    pub fn rule(&self, a: usize, b: usize) -> &[usize] {
        &self.table[a][b]
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.eigenvalues.len();
        (0..k).all(|a| (0..k).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Every eigenvalue allowed in a product of parts `a` and `b` carries the
    /// product grade `φ(a)φ(b)`.
    pub fn grading_is_morphism(&self) -> bool {
        let Some(phi) = &self.grading else { return true };
        let k = self.eigenvalues.len();
        (0..k).all(|a| (0..k).all(|b| self.table[a][b].iter().all(|&c| phi[c] == phi[a] * phi[b])))
    }
}

/// The Jordan-type table when `β = 1/(n−1)`, otherwise the ℤ₂-graded table.
pub fn fusion_table_for(n: usize, beta: &Scalar) -> Result<FusionLaw, AxialError> {
    if n >= 3 && *beta == Scalar::one() / qi(n as i64 - 1) {
        FusionLaw::jordan(n)
    } else {
        FusionLaw::z2(n, beta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionWitness {
    #[serde(serialize_with = "serialize_scalar")]
    pub lambda: Scalar,
    #[serde(serialize_with = "serialize_scalar")]
    pub mu: Scalar,
    #[serde(serialize_with = "serialize_vector")]
    pub product_coords: Vector,
    #[serde(skip)]
    pub factors: (Vector, Vector),
}

/// `ok` needs `L(axis)` to split into eigenspaces for the law's eigenvalues
/// (`eigenspaces_span`) and every product of eigenvectors to land in the
/// allowed parts.
#[derive(Debug, Clone, Serialize)]
pub struct FusionVerdict {
    pub axis: usize,
    #[serde(serialize_with = "serialize_scalar")]
    pub beta: Scalar,
    pub law: LawKind,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FusionWitness>,
    #[serde(skip)]
    pub eigenspaces_span: bool,
    #[serde(skip)]
    pub primitive: bool,
}

fn law_parts(a: &Algebra, axis: &Vector, law: &FusionLaw) -> Result<Vec<Subspace>, AxialError> {
    let op = a.operator(axis);
    law.eigenvalues
        .iter()
        .map(|lambda| Ok(Subspace::span(a.dim(), op.eigenspace(lambda).map_err(AlgebraError::from)?)))
        .collect()
}

fn target(dim: usize, parts: &[Subspace], allowed: &[usize]) -> Subspace {
    allowed.iter().fold(Subspace::zero(dim), |acc, &c| acc.join(&parts[c]))
}

/// Checks the axis `e_point` against `law` using the exact eigenspaces of
/// `L(e_point)` at the law's eigenvalues.
pub fn verify_fusion(a: &Algebra, point: usize, law: &FusionLaw) -> Result<FusionVerdict, AxialError> {
    let axis = a.generator(point)?;
    let parts = law_parts(a, &axis, law)?;
    let total: usize = parts.iter().map(Subspace::dim).sum();
    let eigenspaces_span = a.is_idempotent(&axis) && total == a.dim();
    let primitive = law.eigenvalues.iter().position(One::is_one).is_some_and(|k| parts[k].dim() == 1);
    let mut verdict = FusionVerdict {
        axis: point,
        beta: a.params().beta.clone(),
        law: law.kind,
        ok: false,
        witness: None,
        eigenspaces_span,
        primitive,
    };
    if !eigenspaces_span {
        return Ok(verdict);
    }
    let k = parts.len();
    for x in 0..k {
        for y in x..k {
            let allowed = target(a.dim(), &parts, law.rule(x, y));
            for u in parts[x].basis() {
                for v in parts[y].basis() {
                    let w = a.mul(u, v);
                    if !allowed.contains(&w) {
                        verdict.witness = Some(FusionWitness {
                            lambda: law.eigenvalues[x].clone(),
                            mu: law.eigenvalues[y].clone(),
                            product_coords: w,
                            factors: (u.clone(), v.clone()),
                        });
                        return Ok(verdict);
                    }
                }
            }
        }
    }
    verdict.ok = true;
    Ok(verdict)
}

/// One verdict per axis `e₁..eₙ`.
pub fn verify_fusion_all(a: &Algebra, law: &FusionLaw) -> Result<Vec<FusionVerdict>, AxialError> {
    (1..=a.params().n).into_par_iter().map(|i| verify_fusion(a, i, law)).collect()
}

/// Independent re-check of a fusion witness: the factors are eigenvectors
/// for `λ` and `μ`, their product is `product_coords`, and appending the
/// product to a basis of the allowed parts raises the rank.
pub fn certify_witness(a: &Algebra, point: usize, law: &FusionLaw, w: &FusionWitness) -> Result<bool, AxialError> {
    let axis = a.generator(point)?;
    let op = a.operator(&axis);
    let (u, v) = &w.factors;
    let is_eigen = |x: &Vector, l: &Scalar| op.mul_vector(x).map(|y| y == x.scale(l)).unwrap_or(false);
    if !is_eigen(u, &w.lambda) || !is_eigen(v, &w.mu) || a.mul(u, v) != w.product_coords {
        return Ok(false);
    }
    let index = |l: &Scalar| law.eigenvalues.iter().position(|x| x == l);
    let (Some(x), Some(y)) = (index(&w.lambda), index(&w.mu)) else { return Ok(false) };
    let mut columns: Vec<Vector> = Vec::new();
    for &c in law.rule(x, y) {
        columns.extend(op.eigenspace(&law.eigenvalues[c]).map_err(AlgebraError::from)?);
    }
    let rank = |cols: &[Vector]| -> Result<usize, AxialError> {
        if cols.is_empty() {
            return Ok(0);
        }
        Ok(Matrix::from_columns(a.dim(), cols).map_err(AlgebraError::from)?.rank())
    };
    let before = rank(&columns)?;
    columns.push(w.product_coords.clone());
    Ok(rank(&columns)? > before)
}

/// Whether the `β₊`-eigenspace of `L(e_point)` is closed under the product.
pub fn plus_is_subalgebra(a: &Algebra, point: usize) -> Result<bool, AxialError> {
    let d = decompose_axis(a, point)?;
    let plus = &d.eigen_plus;
    Ok(plus.basis().iter().all(|u| plus.basis().iter().all(|v| plus.contains(&a.mul(u, v)))))
}
