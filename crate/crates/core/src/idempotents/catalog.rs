use num_traits::{One, Zero};
use serde::Serialize;

use super::{check_block, check_eps_equation, from_spanning, source_of, IdempotentError};
use crate::algebra::{build_simplicial, is_simple, Algebra};
use crate::designs::Block;
use crate::exact::{format_scalar, qi, serialize_scalar, Scalar, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryLabel {
    #[serde(rename = "e0_B")]
    E0B,
    #[serde(rename = "z_B")]
    ZB,
    #[serde(rename = "e_B_i")]
    EBi,
    #[serde(rename = "e_B_j")]
    EBj,
    #[serde(rename = "e_B_ij")]
    EBij,
    LambdaFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Idempotent,
    SquareZero,
    OneParameterFamily,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub label: EntryLabel,
    /// Spanning coordinates, one per point.
    #[serde(serialize_with = "crate::exact::serialize_scalars")]
    pub coords: Vec<Scalar>,
    pub kind: EntryKind,
    /// Passes both the residual equations and direct multiplication.
    #[serde(skip)]
    pub verified: bool,
}

impl CatalogEntry {
    pub fn epsilon(&self) -> u8 {
        match self.kind {
            EntryKind::SquareZero => 0,
            _ => 1,
        }
    }
}

/// Idempotents and square-zero elements inside `F{eᵢ, eⱼ, e_{i∘j}}`.
///
/// `triple_sum` is `e_B^i + e_B^j + e_B^{i∘j}` in spanning coordinates when
/// those three exist.
#[derive(Debug, Clone, Serialize)]
pub struct BlockIdempotentCatalog {
    pub block: Block,
    #[serde(serialize_with = "serialize_scalar")]
    pub beta: Scalar,
    pub entries: Vec<CatalogEntry>,
    #[serde(skip)]
    pub triple_sum: Option<Vec<Scalar>>,
}

impl BlockIdempotentCatalog {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verified)
    }

    pub fn entry(&self, label: EntryLabel) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// `(−t, 1+t, t(1+t)) / (t²+t+1)`: a rational point with `λ₁+λ₂+λ₃ = 1`
/// and `λ₁²+λ₂²+λ₃² = 1`.
pub fn lambda_family_member(t: &Scalar) -> [Scalar; 3] {
    let d = t * t + t + Scalar::one();
    let one_t = Scalar::one() + t;
    [-t.clone() / &d, &one_t / &d, t * &one_t / &d]
}

fn on_block(n: usize, block: &Block, values: [Scalar; 3]) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); n];
    for (p, v) in block.iter().zip(values) {
        x[p - 1] = v;
    }
    x
}

pub fn block_catalog(a: &Algebra, block: &Block) -> Result<BlockIdempotentCatalog, IdempotentError> {
    let s = source_of(a)?;
    let b = check_block(s, block)?;
    let n = s.n();
    if n <= 3 {
        return Err(crate::algebra::AlgebraError::InvalidOrder { n }.into());
    }
    let p = a.params();
    let beta = p.beta.clone();
    let nn = qi(n as i64);
    let mut raw: Vec<(EntryLabel, Vec<Scalar>, EntryKind)> = Vec::new();

    let gamma_factor = qi(2) * &nn * &beta + &nn - qi(6);
    if gamma_factor.is_zero() {
        raw.push((EntryLabel::ZB, on_block(n, &b, [qi(1), qi(1), qi(1)]), EntryKind::SquareZero));
    } else {
        let c = qi(n as i64 - 2) / gamma_factor;
        raw.push((EntryLabel::E0B, on_block(n, &b, [c.clone(), c.clone(), c]), EntryKind::Idempotent));
    }

    let one = Scalar::one();
    let denom = &one - &p.beta_plus + &p.beta_minus - qi(4) * &p.beta_plus * &p.beta_minus;
    let mut triple_sum = None;
    if !denom.is_zero() {
        let side = (&one - qi(2) * &p.beta_plus) / &denom;
        let apex = qi(2) * &beta / &denom;
        let labels = [EntryLabel::EBi, EntryLabel::EBj, EntryLabel::EBij];
        let mut sum = vec![Scalar::zero(); n];
        for (slot, label) in labels.into_iter().enumerate() {
            let mut values = [side.clone(), side.clone(), side.clone()];
            values[slot] = apex.clone();
            let x = on_block(n, &b, values);
            for (acc, v) in sum.iter_mut().zip(&x) {
                *acc += v;
            }
            raw.push((label, x, EntryKind::Idempotent));
        }
        triple_sum = Some(sum);
    }

    if beta == -qi(n as i64) / qi(2 * (n as i64 - 3)) {
        let member = lambda_family_member(&qi(2));
        raw.push((EntryLabel::LambdaFamily, on_block(n, &b, member), EntryKind::OneParameterFamily));
    }

    let mut entries = Vec::with_capacity(raw.len());
    for (label, coords, kind) in raw {
        let mut entry = CatalogEntry { label, coords, kind, verified: false };
        let check = check_eps_equation(a, entry.epsilon(), &entry.coords)?;
        let nonzero = !from_spanning(a, &entry.coords)?.is_zero();
        entry.verified = check.solves() && check.direct && check.consistent() && nonzero;
        entries.push(entry);
    }
    Ok(BlockIdempotentCatalog { block: b, beta, entries, triple_sum })
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareZeroFinding {
    pub block: Block,
    pub label: EntryLabel,
    #[serde(serialize_with = "crate::exact::serialize_scalars")]
    pub coords: Vec<Scalar>,
}

/// Square-zero elements among the block-span catalogs. This covers only the
/// block spans; it says nothing about the rest of the algebra.
///
/// For `ε = 0` the family `λ₁+λ₂+λ₃ = 0 = λ₁²+λ₂²+λ₃²` has no nonzero
/// rational point, so nothing is added for it.
pub fn square_zero_scan(a: &Algebra) -> Result<Vec<SquareZeroFinding>, IdempotentError> {
    let s = source_of(a)?;
    let mut found = Vec::new();
    for block in s.blocks() {
        let cat = block_catalog(a, block)?;
        for e in cat.entries.iter().filter(|e| e.kind == EntryKind::SquareZero && e.verified) {
            found.push(SquareZeroFinding { block: cat.block, label: e.label, coords: e.coords.clone() });
        }
    }
    Ok(found)
}

/// The subalgebra generated by `e⁰_B, e_B^i, e_B^j, e_B^{i∘j}` at `β = 1`,
/// compared with the simplicial algebra `E³`.
#[derive(Debug, Clone, Serialize)]
pub struct E3Report {
    pub block: Block,
    pub subalgebra_dim: usize,
    /// Some labelling of the four idempotents as `f₁..f₄` (with
    /// `f₁+f₂+f₃+f₄ = 0`) reproduces the `E³` structure tensor.
    pub e3_tensor_match: bool,
    /// `F·e⁰_B` is an ideal of the subalgebra.
    pub e0_spans_ideal: bool,
    /// `e_B^i, e_B^j, e_B^{i∘j}` sum to zero and multiply like the
    /// generators of `E²`, and `e⁰_B` annihilates them.
    pub unit_plus_e2: bool,
    /// Simplicity verdict for `E³` itself.
    pub e3_verdict: &'static str,
}

fn product_table(a: &Algebra, f: &[Vector]) -> Vec<Vector> {
    f.iter().flat_map(|x| f.iter().map(move |y| a.mul(x, y))).collect()
}

/// `f(xᵢ)∘f(xⱼ) = f(xᵢ∘xⱼ)` for images `f(xᵢ) = images[i]` of a basis `xᵢ`.
fn tensor_matches(source: &Algebra, images: &[Vector], target: &Algebra) -> bool {
    let dim = source.dim();
    let image_of = |v: &Vector| {
        let mut out = Vector::zeros(target.dim());
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &images[k]);
            }
        }
        out
    };
    (0..dim).all(|x| (0..dim).all(|y| image_of(source.product(x, y)) == target.mul(&images[x], &images[y])))
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

pub fn e3_subalgebra_check(a: &Algebra, block: &Block) -> Result<E3Report, IdempotentError> {
    if !a.params().beta.is_one() {
        return Err(IdempotentError::ExcludedBeta(format_scalar(&a.params().beta)));
    }
    let cat = block_catalog(a, block)?;
    let labels = [EntryLabel::E0B, EntryLabel::EBi, EntryLabel::EBj, EntryLabel::EBij];
    let quad = labels
        .iter()
        .map(|l| from_spanning(a, &cat.entry(*l).expect("present at β = 1").coords))
        .collect::<Result<Vec<_>, _>>()?;

    let mut span = Subspace::span(a.dim(), quad.iter().cloned());
    loop {
        let grown = span.join(&Subspace::span(a.dim(), product_table(a, span.basis())));
        if grown == span {
            break;
        }
        span = grown;
    }

    let e3 = build_simplicial(4)?;
    let e3_tensor_match = permutations4().iter().any(|perm| {
        let f: Vec<Vector> = perm.iter().map(|&k| quad[k].clone()).collect();
        let total = f.iter().fold(Vector::zeros(a.dim()), |acc, v| &acc + v);
        total.is_zero() && tensor_matches(&e3, &f[..3], a)
    });

    let e0 = &quad[0];
    let line = Subspace::span(a.dim(), [e0.clone()]);
    let e0_spans_ideal = span.basis().iter().all(|v| line.contains(&a.mul(e0, v)));

    let e2 = build_simplicial(3)?;
    let rest = &quad[1..];
    let sum = rest.iter().fold(Vector::zeros(a.dim()), |acc, v| &acc + v);
    let unit_plus_e2 = sum.is_zero()
        && tensor_matches(&e2, &rest[..2], a)
        && rest.iter().all(|v| a.mul(e0, v).is_zero())
        && a.is_idempotent(e0);

    let e3_verdict = is_simple(&e3)?.label();
    Ok(E3Report { block: cat.block, subalgebra_dim: span.dim(), e3_tensor_match, e0_spans_ideal, unit_plus_e2, e3_verdict })
}
