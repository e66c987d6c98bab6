//! Ideal closure and simplicity verdicts.
//!
//! `is_simple` works from a spanning family of idempotents `F` and the
//! Killing form `κ`. When `κ` is nondegenerate and invariant and every
//! `a ∈ F` is a `κ`-anisotropic idempotent whose `L(a)` is diagonalizable
//! with a simple eigenvalue 1, every nonzero ideal contains some `a ∈ F`, so
//! the algebra is simple exactly when each `a` generates the whole algebra.
//! Two families are tried: the generators `eᵢ`, then the block idempotents
//! `e⁰_B`. If neither qualifies, a fixed candidate list is searched for a
//! proper ideal: generators, block idempotents, block sums `γ_B`,
//! eigenvectors of each `L(eᵢ)`, and differences of block idempotents.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{forms, Algebra, AlgebraError};
use crate::designs::Block;
use crate::exact::{qi, Matrix, Scalar, Subspace, Vector};

/// A subspace closed under multiplication by the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub space: Subspace,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_proper(&self) -> bool {
        !self.is_zero() && !self.space.is_full()
    }

    /// Re-checks closure: `eᵢ∘v ∈ span` for every basis element and basis vector.
    pub fn is_closed_in(&self, a: &Algebra) -> bool {
        (0..a.dim()).all(|i| {
            let e = a.basis_vector(i);
            self.basis().iter().all(|v| self.space.contains(&a.mul(&e, v)))
        })
    }
}

/// Smallest subspace containing `seeds` and closed under multiplication by
/// all basis elements.
pub fn ideal_closure(a: &Algebra, seeds: &[Vector]) -> Result<Ideal, AlgebraError> {
    for s in seeds {
        if s.dim() != a.dim() {
            return Err(AlgebraError::DimMismatch { expected: a.dim(), found: s.dim() });
        }
    }
    Ok(closure(a, seeds))
}

fn closure(a: &Algebra, seeds: &[Vector]) -> Ideal {
    let mut space = Subspace::zero(a.dim());
    let mut pending: Vec<Vector> = Vec::new();
    for s in seeds {
        if space.insert(s) {
            pending.push(s.clone());
        }
    }
    while let Some(v) = pending.pop() {
        if space.is_full() {
            break;
        }
        for i in 0..a.dim() {
            let w = a.mul(&a.basis_vector(i), &v);
            if space.insert(&w) {
                pending.push(w);
            }
        }
    }
    Ideal { space }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanningFamily {
    Generators,
    BlockIdempotents,
    /// A one-dimensional algebra with nonzero product.
    OneDimensional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple { family: SpanningFamily },
    NotSimple { ideal: Ideal },
    Undecided,
}

impl SimplicityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SimplicityVerdict::Simple { .. } => "simple",
            SimplicityVerdict::NotSimple { .. } => "not_simple",
            SimplicityVerdict::Undecided => "undecided",
        }
    }
}

impl Algebra {
    /// `γ_B = eᵢ + eⱼ + e_k` for a block of the source system.
    pub fn block_sum(&self, block: &Block) -> Result<Vector, AlgebraError> {
        let mut v = Vector::zeros(self.dim());
        for &p in block {
            v = &v + &self.generator(p)?;
        }
        Ok(v)
    }

    /// `(2nβ+n−6)/(n−2)`, the eigenvalue of `L(γ_B)` on `γ_B`.
    pub fn block_sum_square_factor(&self) -> Scalar {
        let p = self.params();
        let n = qi(p.n as i64);
        (qi(2) * &n * &p.beta + &n - qi(6)) / (&n - qi(2))
    }

    /// `e⁰_B = γ_B / ((2nβ+n−6)/(n−2))`, when that factor is nonzero.
    pub fn block_idempotent(&self, block: &Block) -> Result<Option<Vector>, AlgebraError> {
        let factor = self.block_sum_square_factor();
        if factor.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.block_sum(block)?.scale(&(Scalar::one() / factor))))
    }
}

fn dedup(mut values: Vec<Scalar>) -> Vec<Scalar> {
    values.sort();
    values.dedup();
    values
}

/// Whether the family spans and each member meets the idempotent hypotheses
/// with its spectrum inside `candidates`.
fn family_qualifies(a: &Algebra, kappa: &forms::BilinearForm, family: &[Vector], candidates: &[Scalar]) -> bool {
    if !Subspace::span(a.dim(), family).is_full() {
        return false;
    }
    let candidates = dedup(candidates.to_vec());
    family.par_iter().all(|x| {
        if !a.is_idempotent(x) || kappa.eval(x, x).is_zero() {
            return false;
        }
        let op: Matrix = a.operator(x);
        let mut total = 0;
        for lambda in &candidates {
            let d = op.eigenspace(lambda).expect("square").len();
            if lambda.is_one() && d != 1 {
                return false;
            }
            total += d;
        }
        total == a.dim()
    })
}

fn smallest_proper(a: &Algebra, seeds: &[Vector]) -> Option<Ideal> {
    seeds
        .par_iter()
        .map(|s| closure(a, std::slice::from_ref(s)))
        .filter(Ideal::is_proper)
        .min_by(|x, y| x.dim().cmp(&y.dim()).then_with(|| x.basis().cmp(y.basis())))
}

pub fn is_simple(a: &Algebra) -> Result<SimplicityVerdict, AlgebraError> {
    a.require_reduced()?;
    if a.dim() == 1 {
        return Ok(if a.product(0, 0).is_zero() {
            SimplicityVerdict::Undecided
        } else {
            SimplicityVerdict::Simple { family: SpanningFamily::OneDimensional }
        });
    }
    let kappa = forms::killing_form(a);
    let metrized = kappa.is_nondegenerate() && forms::check_invariance(a, &kappa)?.holds();
    let p = a.params().clone();
    let generators = a.generators()?;
    let blocks: Vec<Block> = a.source().map(|s| s.blocks().to_vec()).unwrap_or_default();
    let block_idempotents: Vec<Vector> =
        blocks.iter().map(|b| a.block_idempotent(b)).collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();

    let mut families: Vec<(SpanningFamily, &[Vector], Vec<Scalar>)> =
        vec![(SpanningFamily::Generators, &generators, vec![Scalar::one(), p.beta_plus.clone(), p.beta_minus.clone()])];
    if !block_idempotents.is_empty() && p.n > 3 {
        let n = qi(p.n as i64);
        let n2 = &n - qi(2);
        let one = Scalar::one();
        let s = one.clone() / a.block_sum_square_factor();
        let spectrum = vec![
            one.clone(),
            &s * (&n - qi(3)) * (&one - &p.beta) / &n2,
            &s * qi(3) * (&p.beta - &one) / &n2,
            &s * qi(3) * &p.beta_minus,
        ];
        families.push((SpanningFamily::BlockIdempotents, &block_idempotents, spectrum));
    }

    if metrized {
        for (family, members, spectrum) in &families {
            if family_qualifies(a, &kappa, members, spectrum) {
                return Ok(match smallest_proper(a, members) {
                    Some(ideal) => SimplicityVerdict::NotSimple { ideal },
                    None => SimplicityVerdict::Simple { family: *family },
                });
            }
        }
    }

    // Semi-decision: look for a proper ideal among the fixed candidates.
    let mut tiers: Vec<Vec<Vector>> = vec![generators.clone(), block_idempotents.clone()];
    tiers.push(blocks.iter().map(|b| a.block_sum(b)).collect::<Result<_, _>>()?);
    let mut eigenvectors = Vec::new();
    for g in &generators {
        let op = a.operator(g);
        for lambda in dedup(vec![Scalar::one(), p.beta_plus.clone(), p.beta_minus.clone()]) {
            eigenvectors.extend(op.eigenspace(&lambda)?);
        }
    }
    tiers.push(eigenvectors);
    let mut differences = Vec::new();
    for (x, u) in block_idempotents.iter().enumerate() {
        for v in &block_idempotents[x + 1..] {
            differences.push(u - v);
        }
    }
    tiers.push(differences);
    for seeds in &tiers {
        if let Some(ideal) = smallest_proper(a, seeds) {
            return Ok(SimplicityVerdict::NotSimple { ideal });
        }
    }
    Ok(SimplicityVerdict::Undecided)
}
