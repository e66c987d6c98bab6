//! Ideals of a Hall algebra at `β = −(n−1)/(n−3)`, where `β₋ = 1`.
//!
//! Any proper ideal `I` there must have dimension `(n−1)/2`, its
//! `κ`-orthogonal complement must be an ideal with `I ⊕ I^⊥` the whole
//! algebra, every `τᵢ` must swap `I` and `I^⊥`, and `[G,G]` must fix both.
//! The analysis looks for such an ideal and, if it finds one, checks all of
//! these.

use serde::Serialize;

use super::{miyamoto_group, miyamoto_involution, permutation_operator, source_of, AxialError};
use crate::algebra::{ideal_closure, is_simple, killing_form, Algebra, AlgebraError, BilinearForm, Ideal, SimplicityVerdict};
use crate::exact::{format_scalar, qi, Matrix, Subspace};

#[derive(Debug, Clone, Serialize)]
pub struct PairedIdealChecks {
    pub ideal_dim: usize,
    pub dim_is_half: bool,
    pub complement_is_ideal: bool,
    pub transverse: bool,
    pub involutions_swap: bool,
    pub commutator_stabilizes: bool,
}

impl PairedIdealChecks {
    pub fn ok(&self) -> bool {
        self.dim_is_half && self.complement_is_ideal && self.transverse && self.involutions_swap && self.commutator_stabilizes
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedIdealReport {
    pub n: usize,
    /// Each `eᵢ` generates the whole algebra as an ideal.
    pub axis_seeds_full: bool,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paired: Option<PairedIdealChecks>,
}

fn orthogonal_complement(kappa: &BilinearForm, space: &Subspace) -> Result<Subspace, AlgebraError> {
    let dim = space.ambient_dim();
    if space.dim() == 0 {
        return Ok(Subspace::full(dim));
    }
    let rows = space.basis().iter().map(|b| kappa.gram.mul_vector(b).map(|v| v.into_entries())).collect::<Result<_, _>>()?;
    Ok(Subspace::span(dim, Matrix::from_rows(rows)?.kernel_basis()))
}

fn image(op: &Matrix, space: &Subspace) -> Subspace {
    Subspace::span(space.ambient_dim(), space.basis().iter().map(|v| op.mul_vector(v).expect("square")))
}

pub fn graded_ideal_analysis(a: &Algebra, cap: usize) -> Result<GradedIdealReport, AxialError> {
    let s = source_of(a)?;
    if !s.is_hall() {
        return Err(AxialError::NotHall);
    }
    let n = a.params().n;
    if n <= 3 {
        return Err(AlgebraError::InvalidOrder { n }.into());
    }
    let expected = -qi(n as i64 - 1) / qi(n as i64 - 3);
    if a.params().beta != expected {
        return Err(AxialError::WrongBeta { expected: format_scalar(&expected), found: format_scalar(&a.params().beta) });
    }

    let mut axis_seeds_full = true;
    for g in a.generators()? {
        axis_seeds_full &= ideal_closure(a, &[g])?.space.is_full();
    }

    let verdict = is_simple(a)?;
    let paired = match &verdict {
        SimplicityVerdict::NotSimple { ideal } => Some(paired_checks(a, ideal, cap)?),
        _ => None,
    };
    Ok(GradedIdealReport { n, axis_seeds_full, verdict: verdict.label(), paired })
}

fn paired_checks(a: &Algebra, ideal: &Ideal, cap: usize) -> Result<PairedIdealChecks, AxialError> {
    let s = source_of(a)?;
    let n = a.params().n;
    let kappa = killing_form(a);
    let space = &ideal.space;
    let complement = orthogonal_complement(&kappa, space)?;
    let complement_ideal = Ideal { space: complement.clone() };
    let transverse = space.dim() + complement.dim() == a.dim() && space.join(&complement).is_full();

    let mut involutions_swap = true;
    for i in 1..=n {
        let tau = miyamoto_involution(a, i)?;
        involutions_swap &= image(&tau.operator, space) == complement;
    }
    let group = miyamoto_group(s, cap)?;
    let mut commutator_stabilizes = true;
    for g in &group.commutator_elements {
        let op = permutation_operator(a, g)?;
        commutator_stabilizes &= image(&op, space) == *space && image(&op, &complement) == complement;
    }
    Ok(PairedIdealChecks {
        ideal_dim: ideal.dim(),
        dim_is_half: 2 * ideal.dim() == n - 1,
        complement_is_ideal: complement_ideal.is_closed_in(a),
        transverse,
        involutions_swap,
        commutator_stabilizes,
    })
}
