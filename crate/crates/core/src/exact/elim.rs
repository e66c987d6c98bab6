//! Fraction-free elimination kernels.
//!
//! Rational input is first scaled row by row to integers. Reduction then
//! stays in ℤ: Gauss–Jordan with content removal for the echelon form, and
//! Bareiss's exact-division recurrence for determinants and leading minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Scalar};

/// Each row multiplied by the lcm of its denominators. Returns the integer
/// rows and the per-row multipliers.
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let lcm = (0..m.cols()).fold(BigInt::one(), |acc, c| acc.lcm(m[(r, c)].denom()));
        let row = (0..m.cols())
            .map(|c| {
                let x = &m[(r, c)];
                x.numer() * (&lcm / x.denom())
            })
            .collect();
        rows.push(row);
        scales.push(lcm);
    }
    (rows, scales)
}

fn remove_content(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() && !content.is_one() {
        for x in row.iter_mut() {
            *x /= &content;
        }
    }
}

pub(super) fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (mut rows, _) = integer_rows(m);
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        // Smallest nonzero entry in the column keeps the multipliers small.
        let Some(pr) = (next..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| rows[r][c].bits())
        else {
            continue;
        };
        rows.swap(next, pr);
        remove_content(&mut rows[next]);
        let pivot_row = rows[next].clone();
        let p = pivot_row[c].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let g = p.gcd(&row[c]);
            let keep = &p / &g;
            let take = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &keep - &take * y;
            }
            remove_content(row);
        }
        pivots.push(c);
        next += 1;
    }
    let reduced = Matrix::from_fn(m.rows(), cols, |r, c| match pivots.get(r) {
        Some(&pc) => BigRational::new(rows[r][c].clone(), rows[r][pc].clone()),
        None => Scalar::zero(),
    });
    (reduced, pivots)
}

pub(super) fn determinant(m: &Matrix) -> Scalar {
    let n = m.rows();
    if n == 0 {
        return Scalar::one();
    }
    let (mut a, scales) = integer_rows(m);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Scalar::zero(),
            }
        }
        bareiss_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = BigRational::new(a[n - 1][n - 1].clone(), scale);
    if negate {
        -det
    } else {
        det
    }
}

fn bareiss_step(a: &mut [Vec<BigInt>], k: usize, prev: &BigInt) {
    let n = a.len();
    let (top, bottom) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    for row in bottom.iter_mut() {
        for j in k + 1..n {
            let value = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
            row[j] = value / prev;
        }
        row[k] = BigInt::zero();
    }
    debug_assert!(n > k);
}

/// Signs of the leading principal minors, stopping at the first zero
/// (later minors are then not computed by this recurrence and reported as 0).
///
/// Row scaling by positive multipliers does not change any minor's sign.
pub(super) fn leading_minor_signs(m: &Matrix) -> Vec<i8> {
    let n = m.rows();
    let (mut a, _) = integer_rows(m);
    let mut signs = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let s = a[k][k].signum();
        let sign = if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        };
        signs.push(sign);
        if sign == 0 {
            signs.resize(n, 0);
            break;
        }
        if k + 1 < n {
            bareiss_step(&mut a, k, &prev);
            prev = a[k][k].clone();
        }
    }
    signs
}

#[cfg(test)]
mod tests {
    use super::super::{q, qi, sign};
    use super::*;

    /// Leading minors by cofactor expansion, independent of Bareiss.
    fn cofactor_det(m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        if n == 0 {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for c in 0..n {
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn sample() -> Matrix {
        Matrix::from_rows(vec![
            vec![q(3, 2), qi(1), q(-1, 3), qi(0)],
            vec![qi(1), q(5, 7), qi(2), q(1, 4)],
            vec![q(-1, 3), qi(2), qi(-3), qi(1)],
            vec![qi(0), q(1, 4), qi(1), q(9, 5)],
        ])
        .unwrap()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = sample();
        let rows: Vec<Vec<Scalar>> = (0..4).map(|r| m.row(r).into_entries()).collect();
        assert_eq!(determinant(&m), cofactor_det(&rows));
    }

    #[test]
    fn minor_signs_match_cofactor_expansion() {
        let m = sample();
        let rows: Vec<Vec<Scalar>> = (0..4).map(|r| m.row(r).into_entries()).collect();
        let expected: Vec<i8> = (1..=4)
            .map(|k| {
                let sub: Vec<Vec<Scalar>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
                sign(&cofactor_det(&sub))
            })
            .collect();
        assert_eq!(leading_minor_signs(&m), expected);
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = Matrix::from_int_rows(&[&[0, 2, 1], &[1, 0, 0], &[0, 1, 3]]).unwrap();
        assert_eq!(determinant(&m), qi(-5));
    }
}
