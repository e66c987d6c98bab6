//! Exact rational scalars, vectors and dense matrices.
//!
//! Every other module works over ℚ through these types; nothing in the
//! crate ever rounds. Elimination routines live in [`elim`] and echelonized
//! subspaces (used for membership and closure computations) in [`subspace`].

mod elim;
mod subspace;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use subspace::Subspace;

/// An element of ℚ. Always stored in lowest terms with a positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose)")]
    NonSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    Ragged,
    #[error("cannot parse {0:?} as an exact rational (expected \"p/q\" or an integer)")]
    ParseScalar(String),
}

/// `num/den` as a scalar. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a scalar.
pub fn qi(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar, ExactError> {
    let trimmed = text.trim();
    let err = || ExactError::ParseScalar(text.to_string());
    if trimmed.is_empty() || trimmed.contains(['.', 'e', 'E']) {
        return Err(err());
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `"p/q"` rendering: lowest terms, `q > 0`, and the denominator is
/// always written (`"2/1"`, `"0/1"`).
pub fn format_scalar(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Serde helper: a scalar as its `"p/q"` string.
pub fn serialize_scalar<S: serde::Serializer>(value: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(value))
}

/// Serde helper: a scalar list as `"p/q"` strings.
pub fn serialize_scalars<S: serde::Serializer>(values: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(format_scalar))
}

/// Serde helper for `Vector`.
pub fn serialize_vector<S: serde::Serializer>(value: &Vector, s: S) -> Result<S::Ok, S::Error> {
    serialize_scalars(value.entries(), s)
}

/// A coordinate vector over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The `index`-th standard basis vector.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Scalar::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector(values.iter().map(|&x| qi(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.0.get(index)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * factor).collect())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &Vector) {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += factor * b;
            }
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn sum(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, index: usize) -> &Scalar {
        &self.0[index]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, index: usize) -> &mut Scalar {
        &mut self.0[index]
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(entries: Vec<Scalar>) -> Self {
        Vector(entries)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.0.iter().map(|a| -a).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| if r == c { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Ragged);
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors (all of dimension `dim`).
    pub fn from_columns(dim: usize, columns: &[Vector]) -> Result<Self, ExactError> {
        if let Some(bad) = columns.iter().find(|v| v.dim() != dim) {
            return Err(ExactError::DimMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self::from_fn(dim, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        (row < self.rows && col < self.cols).then(|| &self.data[row * self.cols + col])
    }

    pub fn row(&self, row: usize) -> Vector {
        Vector(self.data[row * self.cols..(row + 1) * self.cols].to_vec())
    }

    pub fn column(&self, col: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, col)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Result<Scalar, ExactError> {
        self.require_square()?;
        Ok((0..self.rows).fold(Scalar::zero(), |acc, k| acc + &self[(k, k)]))
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Result<Scalar, ExactError> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(ExactError::DimMismatch { expected: self.cols, found: other.rows });
        }
        let mut acc = Scalar::zero();
        for a in 0..self.rows {
            for b in 0..self.cols {
                let x = &self[(a, b)];
                if x.is_zero() {
                    continue;
                }
                let y = &other[(b, a)];
                if !y.is_zero() {
                    acc += x * y;
                }
            }
        }
        Ok(acc)
    }

    pub fn mul_matrix(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &Vector) -> Result<Vector, ExactError> {
        if self.cols != v.dim() {
            return Err(ExactError::DimMismatch { expected: self.cols, found: v.dim() });
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Scalar::zero(), |acc, c| {
                    let a = &self[(r, c)];
                    if a.is_zero() || v[c].is_zero() {
                        acc
                    } else {
                        acc + a * &v[c]
                    }
                })
            })
            .collect())
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// `self − λ·I`.
    pub fn shift_diagonal(&self, lambda: &Scalar) -> Result<Matrix, ExactError> {
        self.require_square()?;
        let mut out = self.clone();
        for k in 0..self.rows {
            out.data[k * self.cols + k] -= lambda;
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation().is_none() && self.is_square()
    }

    fn symmetry_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return None;
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self[(r, c)] != self[(c, r)] {
                    return Some((r, c));
                }
            }
        }
        None
    }

    fn require_square(&self) -> Result<(), ExactError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(ExactError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        elim::rref(self)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = Vector::zeros(self.cols);
                v[free] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<Scalar, ExactError> {
        self.require_square()?;
        Ok(elim::determinant(self))
    }

    /// Sylvester's criterion: every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> Result<bool, ExactError> {
        self.require_square()?;
        if let Some((row, col)) = self.symmetry_violation() {
            return Err(ExactError::NonSymmetric { row, col });
        }
        Ok(elim::leading_minor_signs(self).into_iter().all(|s| s > 0))
    }

    /// Basis of the `lambda`-eigenspace, i.e. the kernel of `self − λI`.
    pub fn eigenspace(&self, lambda: &Scalar) -> Result<Vec<Vector>, ExactError> {
        Ok(self.shift_diagonal(lambda)?.kernel_basis())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mul_matrix(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Sign of a scalar as -1, 0 or 1.
#[cfg(test)]
pub(crate) fn sign(x: &Scalar) -> i8 {
    use num_traits::Signed;
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("-4/3").unwrap(), q(-4, 3));
        assert_eq!(parse_scalar("6/-4").unwrap(), q(-3, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), qi(7));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1e3").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
        assert_eq!(format_scalar(&q(6, -4)), "-3/2");
        assert_eq!(format_scalar(&qi(2)), "2/1");
        assert_eq!(format_scalar(&qi(0)), "0/1");
    }

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::identity(3).rref();
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = Matrix::zeros(2, 2).rref();
        assert_eq!(r, Matrix::zeros(2, 2));
        assert!(p.is_empty());

        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).unwrap();
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_int_rows(&[&[1, 2], &[0, 0]]).unwrap());
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), qi(1)],
            vec![q(1, 4), q(1, 6), q(1, 2)],
            vec![qi(0), qi(1), q(-2, 7)],
        ])
        .unwrap();
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        // Row 1 is half of row 0, so rank 2; check the reduced rows by hand.
        assert_eq!(r.row(0), Vector::new(vec![qi(1), qi(0), qi(2) + q(4, 21)]));
        assert_eq!(r.row(1), Vector::new(vec![qi(0), qi(1), q(-2, 7)]));
        assert!(r.row(2).is_zero());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(4).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(1, 3).kernel_basis().len(), 3);

        let m = Matrix::from_int_rows(&[&[1, 1, 1]]).unwrap();
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vector(v).unwrap().is_zero());
        }
        assert_eq!(Matrix::from_columns(3, &ker).unwrap().rank(), 2);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix::identity(5).determinant().unwrap(), qi(1));
        let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.determinant().unwrap(), qi(-1));
        assert_eq!(
            Matrix::zeros(2, 3).determinant(),
            Err(ExactError::NonSquare { rows: 2, cols: 3 })
        );
        // 7I₆ − 𝟙₆ has eigenvalues 1 (once) and 7 (five times).
        let m = Matrix::from_fn(6, 6, |r, c| if r == c { qi(6) } else { qi(-1) });
        assert_eq!(m.determinant().unwrap(), qi(7i64.pow(5)));
    }

    #[test]
    fn positive_definite_examples() {
        assert!(Matrix::identity(3).is_positive_definite().unwrap());
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 1]]).unwrap();
        assert!(!m.is_positive_definite().unwrap());
        let m = Matrix::from_fn(6, 6, |r, c| if r == c { qi(6) } else { qi(-1) });
        assert!(m.is_positive_definite().unwrap());
        let m = Matrix::from_int_rows(&[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(m.is_positive_definite(), Err(ExactError::NonSymmetric { row: 0, col: 1 }));
        // Zero leading minor.
        let m = Matrix::from_int_rows(&[&[0, 0], &[0, 1]]).unwrap();
        assert!(!m.is_positive_definite().unwrap());
    }

    #[test]
    fn eigenspace_examples() {
        assert_eq!(Matrix::identity(3).eigenspace(&qi(1)).unwrap().len(), 3);
        assert!(Matrix::identity(3).eigenspace(&qi(0)).unwrap().is_empty());
        // L(e₁) in the simplicial algebra E² (basis e₁, e₂; e₁∘e₂ = −e₁ − e₂).
        let l = Matrix::from_int_rows(&[&[1, -1], &[0, -1]]).unwrap();
        let space = l.eigenspace(&qi(-1)).unwrap();
        assert_eq!(space.len(), 1);
        let v = &space[0];
        // Proportional to e₂ − e₃ = e₂ + (e₁ + e₂) = e₁ + 2e₂.
        assert_eq!(v.scale(&(qi(1) / &v[0])), Vector::from_ints(&[1, 2]));
    }
}
