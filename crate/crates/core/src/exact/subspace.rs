use num_traits::{One, Zero};

use super::{Matrix, Scalar, Vector};

/// A subspace of ℚ^d held as a reduced row-echelon basis.
///
/// Membership is decided by reducing against the pivot rows; a vector lies in
/// the span exactly when the residual is zero, i.e. when adding it would not
/// raise the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    // Sorted by pivot column; each row has a 1 at its pivot and zeros at
    // every other row's pivot.
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|k| Vector::unit(ambient, k)))
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator,
        I::Item: std::borrow::Borrow<Vector>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(std::borrow::Borrow::borrow(&v));
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the echelon basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), self.ambient, "subspace dimension mismatch");
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = -w[p].clone();
                w.add_scaled(&factor, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.leading_index() else {
            return false;
        };
        let inv = Scalar::one() / &w[p];
        let w = w.scale(&inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = -row[p].clone();
                row.add_scaled(&factor, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    /// Basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim(), self.ambient, |r, c| self.rows[r][c].clone())
    }

    /// Coordinates of `v` along this echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}
