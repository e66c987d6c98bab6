//! Block idempotents `e⁰_B` on Hall systems, with the extra structure of the
//! affine plane of order 3.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{check_block, source_of, IdempotentError};
use crate::algebra::{build_simplicial, killing_form, Algebra, AlgebraError};
use crate::designs::{Block, SteinerTripleSystem};
use crate::exact::{format_scalar, qi, serialize_scalar, Scalar, Subspace, Vector};
use crate::outcome::Outcome;

fn disjoint(a: &Block, b: &Block) -> bool {
    a.iter().all(|p| !b.contains(p))
}

/// Blocks grouped into maximal sets of pairwise disjoint blocks, when
/// "disjoint or equal" is an equivalence relation (as in an affine space).
/// Returns `None` otherwise.
pub fn parallel_classes(s: &SteinerTripleSystem) -> Option<Vec<Vec<Block>>> {
    let mut classes: Vec<Vec<Block>> = Vec::new();
    for b in s.blocks() {
        match classes.iter_mut().find(|c| disjoint(&c[0], b)) {
            Some(c) => c.push(*b),
            None => classes.push(vec![*b]),
        }
    }
    let consistent = classes.iter().all(|c| {
        c.iter().enumerate().all(|(x, a)| c[x + 1..].iter().all(|b| disjoint(a, b)))
            && c.iter().map(|b| b.len()).sum::<usize>() == s.n()
    });
    consistent.then_some(classes)
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneReport {
    #[serde(serialize_with = "serialize_scalar")]
    pub beta: Scalar,
    pub classes: Vec<Vec<Block>>,
    /// `Σ_{B∈class} e⁰_B = 0` for every class.
    pub class_sums_vanish: bool,
    /// `e⁰_B∘e⁰_{B′} = −e⁰_B − e⁰_{B′}` within a class; witness is the pair.
    pub within_class: Outcome<(Block, Block)>,
    /// `e⁰_A∘e⁰_B = (1−β)/(6β+1)·(e⁰_C + e⁰_D)` for blocks `A, B` through a
    /// common point with `C, D` the other two blocks through it.
    #[serde(serialize_with = "serialize_scalar")]
    pub cross_coefficient: Scalar,
    pub cross_class: Outcome<(Block, Block)>,
    /// At `β = 1`: the four class spans are 2-dimensional subalgebras
    /// isomorphic to `E²`, pairwise annihilating and `κ`-orthogonal, with
    /// direct sum of dimension 8.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_sum: Option<DirectSumCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectSumCheck {
    pub summand_dims: Vec<usize>,
    pub total_dim: usize,
    pub summands_are_e2: bool,
    pub mutually_annihilating: bool,
    pub killing_orthogonal: bool,
}

impl DirectSumCheck {
    pub fn ok(&self) -> bool {
        self.summand_dims.iter().all(|&d| d == 2)
            && self.total_dim == 8
            && self.summands_are_e2
            && self.mutually_annihilating
            && self.killing_orthogonal
    }
}

fn e0(a: &Algebra, block: &Block) -> Result<Vector, IdempotentError> {
    a.block_idempotent(block)?.ok_or_else(|| IdempotentError::ExcludedBeta(format_scalar(&a.params().beta)))
}

/// Relations among the block idempotents of `T_β(AG(2,3))`.
pub fn ag23_decomposition(a: &Algebra) -> Result<PlaneReport, IdempotentError> {
    let s = source_of(a)?;
    let n = s.n();
    if n != 9 {
        return Err(AlgebraError::InvalidOrder { n }.into());
    }
    let beta = a.params().beta.clone();
    let denom = qi(6) * &beta + Scalar::one();
    if denom.is_zero() {
        return Err(IdempotentError::ExcludedBeta(format_scalar(&beta)));
    }
    let classes = parallel_classes(s).ok_or(IdempotentError::NotHall)?;
    let idem = |b: &Block| e0(a, b);

    let mut class_sums_vanish = true;
    let mut within = None;
    for class in &classes {
        let vs = class.iter().map(idem).collect::<Result<Vec<_>, _>>()?;
        class_sums_vanish &= vs.iter().fold(Vector::zeros(a.dim()), |acc, v| &acc + v).is_zero();
        for x in 0..vs.len() {
            for y in x + 1..vs.len() {
                let expected = -&(&vs[x] + &vs[y]);
                if within.is_none() && a.mul(&vs[x], &vs[y]) != expected {
                    within = Some((class[x], class[y]));
                }
            }
        }
    }

    let cross_coefficient = (Scalar::one() - &beta) / &denom;
    let mut cross = None;
    'points: for i in 1..=n {
        let through: Vec<Block> = s.blocks().iter().copied().filter(|b| b.contains(&i)).collect();
        for x in 0..through.len() {
            for y in x + 1..through.len() {
                let others: Vec<&Block> =
                    through.iter().enumerate().filter(|(k, _)| *k != x && *k != y).map(|(_, b)| b).collect();
                let rhs = (&idem(others[0])? + &idem(others[1])?).scale(&cross_coefficient);
                if a.mul(&idem(&through[x])?, &idem(&through[y])?) != rhs {
                    cross = Some((through[x], through[y]));
                    break 'points;
                }
            }
        }
    }

    let direct_sum = if beta.is_one() { Some(direct_sum_check(a, &classes)?) } else { None };
    Ok(PlaneReport {
        beta,
        classes,
        class_sums_vanish,
        within_class: Outcome::from_witness(within),
        cross_coefficient,
        cross_class: Outcome::from_witness(cross),
        direct_sum,
    })
}

fn direct_sum_check(a: &Algebra, classes: &[Vec<Block>]) -> Result<DirectSumCheck, IdempotentError> {
    let e2 = build_simplicial(3)?;
    let kappa = killing_form(a);
    let mut spans = Vec::new();
    let mut summands_are_e2 = true;
    for class in classes {
        let vs = class.iter().map(|b| e0(a, b)).collect::<Result<Vec<_>, _>>()?;
        // f₁ ↦ e⁰_B, f₂ ↦ e⁰_{B′} must reproduce the E² table.
        let images = [vs[0].clone(), vs[1].clone()];
        for x in 0..2 {
            for y in 0..2 {
                let mut expected = Vector::zeros(a.dim());
                for (k, c) in e2.product(x, y).iter().enumerate() {
                    expected.add_scaled(c, &images[k]);
                }
                summands_are_e2 &= a.mul(&images[x], &images[y]) == expected;
            }
        }
        spans.push(Subspace::span(a.dim(), vs));
    }
    let mut mutually_annihilating = true;
    let mut killing_orthogonal = true;
    for x in 0..spans.len() {
        for y in x + 1..spans.len() {
            for u in spans[x].basis() {
                for v in spans[y].basis() {
                    mutually_annihilating &= a.mul(u, v).is_zero();
                    killing_orthogonal &= kappa.eval(u, v).is_zero();
                }
            }
        }
    }
    let total = spans.iter().fold(Subspace::zero(a.dim()), |acc, s| acc.join(s));
    Ok(DirectSumCheck {
        summand_dims: spans.iter().map(Subspace::dim).collect(),
        total_dim: total.dim(),
        summands_are_e2,
        mutually_annihilating,
        killing_orthogonal,
    })
}

/// Spectrum of `L(e⁰_B)` on a Hall system.
///
/// The candidate eigenvalues are `s·{2nβ+n−6, (n−3)(1−β), 3(β−1), 3((β−1) − (n−2)β)}/(n−2)`
/// with `s = (n−2)/(2nβ+n−6)`, i.e. `1`, `s(1+β₋)`, `3sα`, `3sβ₋`. For
/// `n = 9` these are `1, 2(1−β)/(6β+1), (β−1)/(6β+1), −1` with
/// multiplicities `1, 2, 4, 1` unless two of them coincide.
#[derive(Debug, Clone, Serialize)]
pub struct GammaSpectrumReport {
    pub block: Block,
    #[serde(serialize_with = "serialize_scalar")]
    pub beta: Scalar,
    /// The six product relations for `γ_B`; witness is `(k, relation)`
    /// with `relation` numbered from 1.
    pub relations: Outcome<(usize, usize)>,
    /// The listed spanning vectors are eigenvectors for their eigenvalue.
    pub eigenvectors_ok: bool,
    /// Distinct candidate eigenvalues with exact kernel dimensions.
    #[serde(serialize_with = "serialize_spectrum")]
    pub spectrum: Vec<(Scalar, usize)>,
    /// The candidate eigenspaces fill the whole algebra. This holds for
    /// `n = 9` but not in general; `AG(3,3)` has further eigenvalues.
    pub candidates_exhaust: bool,
    /// Two of the four candidate eigenvalues coincide.
    pub coincidence: bool,
    /// `n = 9` only: the spectrum is exactly the tabulated one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_match: Option<bool>,
}

fn serialize_spectrum<S: serde::Serializer>(spec: &[(Scalar, usize)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(spec.iter().map(|(l, m)| (format_scalar(l), m)))
}

fn gamma(a: &Algebra, points: [usize; 3]) -> Result<Vector, IdempotentError> {
    Ok(a.block_sum(&points)?)
}

pub fn gamma_block_spectrum(a: &Algebra, block: &Block) -> Result<GammaSpectrumReport, IdempotentError> {
    let s = source_of(a)?;
    if !s.is_hall() {
        return Err(IdempotentError::NotHall);
    }
    let b = check_block(s, block)?;
    let n = s.n();
    let p = a.params();
    let beta = p.beta.clone();
    if a.block_sum_square_factor().is_zero() {
        return Err(IdempotentError::ExcludedBeta(format_scalar(&beta)));
    }
    let gens = a.generators()?;
    let e = |q: usize| &gens[q - 1];
    let [i, j, k0] = b;
    let g = gamma(a, b)?;
    let shift = |k: usize| -> [usize; 3] { b.map(|q| s.join(k, q)) };
    let alpha = &p.alpha;
    let one = Scalar::one();

    let mut failure = None;
    if a.mul(&g, e(i)) != &e(i).scale(&(&one + &p.beta_minus)) + &g.scale(&p.beta_plus) {
        failure = Some((i, 1));
    } else if a.mul(&g, &(e(i) - e(j))) != (e(i) - e(j)).scale(&(&one + &p.beta_minus)) {
        failure = Some((i, 2));
    }
    let three = qi(3);
    for k in (1..=n).filter(|q| !b.contains(q)) {
        if failure.is_some() {
            break;
        }
        let gk = gamma(a, shift(k))?;
        let gik = gamma(a, shift(s.join(i, k)))?;
        let ek = e(k);
        let diff = e(s.join(i, k)) - e(s.join(j, k));
        let checks = [
            a.mul(&g, ek) == &(&g.scale(alpha) + &ek.scale(&(&three * alpha))) + &gk.scale(&p.beta),
            a.mul(&g, &diff) == diff.scale(&(&three * alpha)),
            a.mul(&g, &gk) == &(&g + &gk).scale(&(&three * alpha)) + &gik.scale(&(&three * &p.beta)),
            a.mul(&g, &(&gk - &gik)) == (&gk - &gik).scale(&(&three * &p.beta_minus)),
        ];
        if let Some(r) = checks.iter().position(|ok| !ok) {
            failure = Some((k, r + 3));
        }
    }

    let scale = one.clone() / a.block_sum_square_factor();
    let e0 = g.scale(&scale);
    let op = a.operator(&e0);
    let candidates = [
        one.clone(),
        &scale * (&one + &p.beta_minus),
        &scale * &three * alpha,
        &scale * &three * &p.beta_minus,
    ];
    let is_eigen = |v: &Vector, l: &Scalar| op.mul_vector(v).expect("square") == v.scale(l);
    let mut eigenvectors_ok = is_eigen(&e0, &candidates[0])
        && is_eigen(&(e(i) - e(j)), &candidates[1])
        && is_eigen(&(e(j) - e(k0)), &candidates[1]);
    for k in (1..=n).filter(|q| !b.contains(q)) {
        let d = e(s.join(k, i)) - e(s.join(k, j));
        let gd = &gamma(a, shift(k))? - &gamma(a, shift(s.join(i, k)))?;
        eigenvectors_ok &= is_eigen(&d, &candidates[2]) && is_eigen(&gd, &candidates[3]);
    }

    let mut distinct: Vec<Scalar> = candidates.to_vec();
    distinct.sort();
    distinct.dedup();
    let coincidence = distinct.len() < candidates.len();
    let mut spectrum = Vec::new();
    for l in &candidates {
        if spectrum.iter().any(|(m, _): &(Scalar, usize)| m == l) {
            continue;
        }
        spectrum.push((l.clone(), op.eigenspace(l).map_err(AlgebraError::from)?.len()));
    }
    let candidates_exhaust = spectrum.iter().map(|(_, d)| d).sum::<usize>() == a.dim();

    let table_match = (n == 9).then(|| {
        let den = qi(6) * &beta + &one;
        let listed = [
            (one.clone(), 1),
            (qi(2) * (&one - &beta) / &den, 2),
            ((&beta - &one) / &den, 4),
            (-one.clone(), 1),
        ];
        let mut expected: Vec<(Scalar, usize)> = Vec::new();
        for (l, m) in listed {
            match expected.iter_mut().find(|(x, _)| *x == l) {
                Some(entry) => entry.1 += m,
                None => expected.push((l, m)),
            }
        }
        expected == spectrum
    });

    Ok(GammaSpectrumReport {
        block: b,
        beta,
        relations: Outcome::from_witness(failure),
        eigenvectors_ok,
        spectrum,
        candidates_exhaust,
        coincidence,
        table_match,
    })
}
