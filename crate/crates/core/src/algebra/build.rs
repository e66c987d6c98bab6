use num_traits::{One, Zero};
use serde::Serialize;

use super::{Algebra, AlgebraError, AlgebraKind, AlgebraParams};
use crate::designs::{PartialTripleSystem, SteinerTripleSystem};
use crate::exact::{qi, Scalar, Vector};
use crate::outcome::Outcome;

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|k| format!("{prefix}{k}")).collect()
}

fn unreduced_product(system: &PartialTripleSystem, params: &AlgebraParams, i: usize, j: usize) -> Vector {
    let n = system.n();
    let mut v = Vector::zeros(n);
    if i == j {
        v[i] = params.gamma.clone();
    } else if let Some(k) = system.third_point(i + 1, j + 1) {
        v[i] += &params.alpha;
        v[j] += &params.alpha;
        v[k - 1] += &params.beta;
    }
    v
}

/// The `n`-dimensional algebra `êᵢ∘êᵢ = γêᵢ`, `êᵢ∘êⱼ = α(êᵢ+êⱼ) + βê_{i∘j}`
/// for collinear `i, j`, and `0` otherwise.
pub fn build_unreduced(
    system: &PartialTripleSystem,
    gamma: Scalar,
    alpha: Scalar,
    beta: Scalar,
) -> Result<Algebra, AlgebraError> {
    let params = AlgebraParams::new(system.n(), gamma, alpha, beta);
    if params.all_zero() {
        return Err(AlgebraError::AllParamsZero);
    }
    Ok(unreduced_with_kind(system, params, AlgebraKind::Unreduced))
}

fn unreduced_with_kind(system: &PartialTripleSystem, params: AlgebraParams, kind: AlgebraKind) -> Algebra {
    let n = system.n();
    let table = |i, j| unreduced_product(system, &params, i, j);
    let products: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| table(i, j)).collect()).collect();
    Algebra::from_upper(n, labels("ehat", n), kind, params.clone(), Some(system.clone()), |i, j| {
        products[i][j].clone()
    })
}

/// Unreduced algebra with `γ = 1`, `β = −α`.
pub fn build_matsuo(system: &SteinerTripleSystem, alpha: Scalar) -> Algebra {
    let beta = -alpha.clone();
    let params = AlgebraParams::new(system.n(), Scalar::one(), alpha, beta);
    unreduced_with_kind(system.base(), params, AlgebraKind::Matsuo)
}

/// Unreduced `γ = α = 0`, `β = 1` algebra with a unit adjoined as the last
/// basis element.
pub fn build_mendelsohn(system: &SteinerTripleSystem) -> Algebra {
    let n = system.n();
    let params = AlgebraParams::new(n, Scalar::zero(), Scalar::zero(), Scalar::one());
    let mut names = labels("ehat", n);
    names.push("unit".into());
    Algebra::from_upper(n + 1, names, AlgebraKind::Mendelsohn, params.clone(), Some(system.base().clone()), |i, j| {
        if j == n {
            Vector::unit(n + 1, i)
        } else {
            let mut entries = unreduced_product(system.base(), &params, i, j).into_entries();
            entries.push(Scalar::zero());
            Vector::new(entries)
        }
    })
}

/// Coordinates in `e₁..e_{n−1}` of `Σ vₖeₖ` over all `n` generators.
fn reduce_spanning(v: &Vector) -> Vector {
    let n = v.dim();
    let last = &v[n - 1];
    (0..n - 1).map(|k| &v[k] - last).collect()
}

/// The quotient map `ê_k ↦ e_k` from the unreduced algebra onto `T_β`.
pub fn quotient_map(x: &Vector) -> Vector {
    reduce_spanning(x)
}

/// `T_β` on the basis `e₁..e_{n−1}`, built from
/// `eᵢ∘eⱼ = (β₊/2)(eᵢ+eⱼ+e_{i∘j}) + (β₋/2)(eᵢ+eⱼ−e_{i∘j})`.
pub fn build_t_beta(system: &SteinerTripleSystem, beta: Scalar) -> Result<Algebra, AlgebraError> {
    let n = system.n();
    let params = AlgebraParams::t_beta(n, beta)?;
    let two = qi(2);
    let same = (&params.beta_plus + &params.beta_minus) / &two;
    let opposite = (&params.beta_plus - &params.beta_minus) / &two;
    Ok(Algebra::from_upper(
        n - 1,
        labels("e", n - 1),
        AlgebraKind::SteinerT,
        params.clone(),
        Some(system.base().clone()),
        |i, j| {
            let mut v = Vector::zeros(n);
            if i == j {
                v[i] = Scalar::one();
            } else {
                v[i] += &same;
                v[j] += &same;
                v[system.join(i + 1, j + 1) - 1] += &opposite;
            }
            reduce_spanning(&v)
        },
    ))
}

/// `T_β` as the quotient of the unreduced algebra with `γ = 1`,
/// `α = (β−1)/(n−2)` by the span of `ê`.
pub fn build_t_beta_via_quotient(system: &SteinerTripleSystem, beta: Scalar) -> Result<Algebra, AlgebraError> {
    let n = system.n();
    let params = AlgebraParams::t_beta(n, beta)?;
    let cover = build_unreduced(system.base(), params.gamma.clone(), params.alpha.clone(), params.beta.clone())?;
    Ok(Algebra::from_upper(
        n - 1,
        labels("e", n - 1),
        AlgebraKind::SteinerT,
        params,
        Some(system.base().clone()),
        |i, j| quotient_map(cover.product(i, j)),
    ))
}

/// Checks `π(êᵢ∘êⱼ) = π(êᵢ)∘π(êⱼ)` for all 1-based point pairs.
pub fn quotient_consistency(system: &SteinerTripleSystem, beta: Scalar) -> Result<Outcome<(usize, usize)>, AlgebraError> {
    let n = system.n();
    let reduced = build_t_beta(system, beta)?;
    let p = reduced.params().clone();
    let cover = build_unreduced(system.base(), p.gamma, p.alpha, p.beta)?;
    let images: Vec<Vector> = (0..n).map(|i| quotient_map(&Vector::unit(n, i))).collect();
    for i in 0..n {
        for j in i..n {
            if quotient_map(cover.product(i, j)) != reduced.mul(&images[i], &images[j]) {
                return Ok(Outcome::Fails((i + 1, j + 1)));
            }
        }
    }
    Ok(Outcome::Holds)
}

/// `E^{n−1}`: `eᵢ∘eᵢ = eᵢ`, `eᵢ∘eⱼ = −(eᵢ+eⱼ)/(n−2)`. For `n = 2` the
/// relation `e₂ = −e₁` leaves the one-dimensional algebra `e₁∘e₁ = e₁`.
pub fn build_simplicial(n: usize) -> Result<Algebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidOrder { n });
    }
    let params = if n == 2 {
        AlgebraParams::new(2, Scalar::one(), Scalar::zero(), Scalar::zero())
    } else {
        AlgebraParams::t_beta(n, Scalar::zero())?
    };
    let cross = if n == 2 { Scalar::zero() } else { -Scalar::one() / qi(n as i64 - 2) };
    Ok(Algebra::from_upper(n - 1, labels("e", n - 1), AlgebraKind::Simplicial, params, None, |i, j| {
        let mut v = Vector::zeros(n - 1);
        if i == j {
            v[i] = Scalar::one();
        } else {
            v[i] = cross.clone();
            v[j] = cross.clone();
        }
        v
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EHatStatus {
    NotIdeal,
    /// Steiner system with `β = γ + (n−2)α`; `x∘ê = λ(Σxᵢ)ê`.
    CaseSts {
        #[serde(serialize_with = "crate::exact::serialize_scalar")]
        lambda: Scalar,
    },
    /// Regular with `β = −α`, `γ = −2rα`; `ê` annihilates everything.
    CaseRegularAnnihilated,
    /// The span of `ê` is an ideal but neither case applies; the multipliers
    /// `cᵢ` with `êᵢ∘ê = cᵢê` are reported.
    OtherIdeal {
        #[serde(serialize_with = "crate::exact::serialize_scalars")]
        multipliers: Vec<Scalar>,
    },
}

/// Decides by direct multiplication whether `span(ê)` is an ideal of an
/// unreduced algebra and classifies the case.
pub fn e_hat_ideal_status(a: &Algebra) -> Result<EHatStatus, AlgebraError> {
    if !matches!(a.kind(), AlgebraKind::Unreduced | AlgebraKind::Matsuo) {
        return Err(AlgebraError::WrongKind { expected: "unreduced", found: a.kind() });
    }
    let system = a.incidence().expect("unreduced algebras carry their incidence");
    let n = a.dim();
    let e_hat = Vector::new(vec![Scalar::one(); n]);
    let mut multipliers = Vec::with_capacity(n);
    for i in 0..n {
        let prod = a.mul(&a.basis_vector(i), &e_hat);
        let c = prod[0].clone();
        if prod.iter().any(|x| x != &c) {
            return Ok(EHatStatus::NotIdeal);
        }
        multipliers.push(c);
    }
    let p = a.params();
    let covered = a.source().is_some();
    if covered && p.beta == &p.gamma + qi(n as i64 - 2) * &p.alpha {
        let lambda = &p.alpha + &p.beta;
        debug_assert!(multipliers.iter().all(|c| c == &lambda));
        return Ok(EHatStatus::CaseSts { lambda });
    }
    if let Some(r) = system.profile().r {
        let annihilated = multipliers.iter().all(Zero::is_zero);
        if annihilated && p.beta == -p.alpha.clone() && p.gamma == -qi(2 * r as i64) * &p.alpha {
            return Ok(EHatStatus::CaseRegularAnnihilated);
        }
    }
    Ok(EHatStatus::OtherIdeal { multipliers })
}

/// Checks `ê∘êᵢ = (1 − (n−1)β)êᵢ` in a Matsuo algebra; the witness is the
/// first failing 1-based point.
pub fn matsuo_e_hat_check(a: &Algebra) -> Result<Outcome<usize>, AlgebraError> {
    if a.kind() != AlgebraKind::Matsuo {
        return Err(AlgebraError::WrongKind { expected: "matsuo", found: a.kind() });
    }
    let n = a.dim();
    let factor = Scalar::one() - qi(n as i64 - 1) * &a.params().beta;
    let e_hat = Vector::new(vec![Scalar::one(); n]);
    for i in 0..n {
        let e = a.basis_vector(i);
        if a.mul(&e_hat, &e) != e.scale(&factor) {
            return Ok(Outcome::Fails(i + 1));
        }
    }
    Ok(Outcome::Holds)
}
