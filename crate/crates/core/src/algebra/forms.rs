use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Algebra, AlgebraError};
use crate::exact::{qi, Matrix, Scalar, Vector};
use crate::outcome::Outcome;

/// A symmetric bilinear form given by its Gram matrix in the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    pub name: String,
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn new(name: impl Into<String>, gram: Matrix) -> Self {
        BilinearForm { name: name.into(), gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        let gy = self.gram.mul_vector(y).expect("form and vector dimensions agree");
        x.dot(&gy)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.determinant().expect("gram is square").is_zero()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.gram.is_positive_definite().unwrap_or(false)
    }
}

/// `κ(x, y) = tr L(x)L(y)` on basis pairs.
pub fn killing_form(a: &Algebra) -> BilinearForm {
    let ops: Vec<Matrix> = (0..a.dim()).map(|i| a.basis_operator(i)).collect();
    let gram = integer_gram(&ops).unwrap_or_else(|| rational_gram(&ops));
    BilinearForm::new("killing", gram)
}

fn pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim).flat_map(|i| (i..dim).map(move |j| (i, j))).collect()
}

fn symmetric_from(dim: usize, values: Vec<((usize, usize), Scalar)>) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for ((i, j), v) in values {
        m[(j, i)] = v.clone();
        m[(i, j)] = v;
    }
    m
}

fn rational_gram(ops: &[Matrix]) -> Matrix {
    let values = pairs(ops.len())
        .into_par_iter()
        .map(|(i, j)| ((i, j), ops[i].trace_of_product(&ops[j]).expect("square operators")))
        .collect();
    symmetric_from(ops.len(), values)
}

/// Clears one common denominator and sums traces in `i128`. Returns `None`
/// if anything would overflow.
fn integer_gram(ops: &[Matrix]) -> Option<Matrix> {
    let dim = ops.len();
    let mut den = BigInt::one();
    for m in ops {
        for r in 0..dim {
            for c in 0..dim {
                den = den.lcm(m[(r, c)].denom());
            }
        }
    }
    let den_small = den.to_i128()?;
    let scaled: Vec<Vec<i128>> = ops
        .iter()
        .map(|m| {
            (0..dim * dim)
                .map(|idx| {
                    let x = &m[(idx / dim, idx % dim)];
                    (x.numer() * (&den / x.denom())).to_i128()
                })
                .collect::<Option<Vec<i128>>>()
        })
        .collect::<Option<_>>()?;
    let den_sq = den_small.checked_mul(den_small)?;
    let values: Option<Vec<_>> = pairs(dim)
        .into_par_iter()
        .map(|(i, j)| {
            let (x, y) = (&scaled[i], &scaled[j]);
            let mut acc: i128 = 0;
            for r in 0..dim {
                for c in 0..dim {
                    let (p, q) = (x[r * dim + c], y[c * dim + r]);
                    if p != 0 && q != 0 {
                        acc = acc.checked_add(p.checked_mul(q)?)?;
                    }
                }
            }
            Some(((i, j), Scalar::new(acc.into(), den_sq.into())))
        })
        .collect();
    Some(symmetric_from(dim, values?))
}

/// `f(eᵢ∘eⱼ, e_k) = f(eᵢ, eⱼ∘e_k)` over all basis triples; the witness is
/// the first failing `(i, j, k)` (0-based).
pub fn check_invariance(a: &Algebra, f: &BilinearForm) -> Result<Outcome<[usize; 3]>, AlgebraError> {
    let dim = a.dim();
    if f.dim() != dim {
        return Err(AlgebraError::DimMismatch { expected: dim, found: f.dim() });
    }
    // g[i*dim+j] = G·(eᵢ∘eⱼ), so f(eᵢ∘eⱼ, e_k) = g[i*dim+j][k].
    let g: Vec<Vector> = (0..dim * dim)
        .into_par_iter()
        .map(|idx| f.gram.mul_vector(a.product(idx / dim, idx % dim)).expect("dimensions agree"))
        .collect();
    let witness = (0..dim).find_map(|i| {
        (0..dim).find_map(|j| {
            (0..dim).find_map(|k| (g[i * dim + j][k] != g[j * dim + k][i]).then_some([i, j, k]))
        })
    });
    Ok(Outcome::from_witness(witness))
}

/// `κ = ω(nI − J)` entrywise; the witness is the first mismatched entry.
pub fn gram_identity_check(a: &Algebra, kappa: &BilinearForm) -> Result<Outcome<(usize, usize)>, AlgebraError> {
    gram_matches(a, kappa, &a.params().omega())
}

/// `ω/(n−2)`: the factor `c` with `κ = c(nI − J)` that the trace
/// computation actually produces (`κ(eᵢ,eᵢ) = (n−1)ω/(n−2)`,
/// `κ(eᵢ,eⱼ) = −ω/(n−2)`).
pub fn killing_gram_factor(a: &Algebra) -> Result<Scalar, AlgebraError> {
    let n = a.params().n;
    if n < 3 {
        return Err(AlgebraError::InvalidOrder { n });
    }
    Ok(a.params().omega() / qi(n as i64 - 2))
}

/// `κ = factor·(nI − J)` entrywise.
pub fn gram_matches(a: &Algebra, kappa: &BilinearForm, factor: &Scalar) -> Result<Outcome<(usize, usize)>, AlgebraError> {
    a.require_reduced()?;
    if a.params().n < 3 {
        return Err(AlgebraError::InvalidOrder { n: a.params().n });
    }
    let dim = a.dim();
    let n = qi(a.params().n as i64);
    let diagonal = factor * (&n - Scalar::one());
    let off = -factor.clone();
    for i in 0..dim {
        for j in 0..dim {
            let expected = if i == j { &diagonal } else { &off };
            if &kappa.gram[(i, j)] != expected {
                return Ok(Outcome::Fails((i, j)));
            }
        }
    }
    Ok(Outcome::Holds)
}

/// `Σ_{i=1..n} κ(x, eᵢ)eᵢ = (nω/(n−2))·x`, summing over all `n` generators.
pub fn tight_frame_check(a: &Algebra, kappa: &BilinearForm, x: &Vector) -> Result<bool, AlgebraError> {
    a.require_reduced()?;
    if a.params().n < 3 {
        return Err(AlgebraError::InvalidOrder { n: a.params().n });
    }
    if x.dim() != a.dim() {
        return Err(AlgebraError::DimMismatch { expected: a.dim(), found: x.dim() });
    }
    let n = a.params().n;
    let constant = qi(n as i64) * a.params().omega() / qi(n as i64 - 2);
    let mut sum = Vector::zeros(a.dim());
    for e in a.generators()? {
        sum.add_scaled(&kappa.eval(x, &e), &e);
    }
    Ok(sum == x.scale(&constant))
}
