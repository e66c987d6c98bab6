//! Permutations of `0..n`.
//!
//! Point `p` of a triple system (1-based) is index `p - 1` here.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("image list is not a permutation of 0..{len}")]
pub struct NotAPermutation {
    pub len: usize,
}

/// `images[k]` is where `k` is sent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation { images: (0..len as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, NotAPermutation> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &x in &images {
            if x >= len || std::mem::replace(&mut seen[x], true) {
                return Err(NotAPermutation { len });
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    /// From 1-based point images: `points[p - 1]` is the image of point `p`.
    pub fn from_points(points: &[usize]) -> Result<Self, NotAPermutation> {
        if points.contains(&0) {
            return Err(NotAPermutation { len: points.len() });
        }
        Self::from_images(points.iter().map(|&p| p - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, index: usize) -> usize {
        self.images[index] as usize
    }

    /// Image of a 1-based point.
    pub fn apply_point(&self, point: usize) -> usize {
        self.apply(point - 1) + 1
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation length mismatch");
        Permutation { images: other.images.iter().map(|&k| self.images[k as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x as usize] = k as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.len()];
        let mut order = 1u64;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.apply(k);
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut k = start;
            let mut first = true;
            while !seen[k] {
                seen[k] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", k + 1)?;
                first = false;
                k = self.apply(k);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_points(&[0, 1]).is_err());
        assert!(Permutation::from_points(&[2, 1]).is_ok());
    }

    #[test]
    fn order_and_cycles() {
        let p = Permutation::from_points(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn composition_applies_right_first() {
        let a = Permutation::from_points(&[2, 1, 3]).unwrap();
        let b = Permutation::from_points(&[1, 3, 2]).unwrap();
        // b sends 2 -> 3, then a fixes 3.
        assert_eq!(a.compose(&b).apply_point(2), 3);
        assert_eq!(b.compose(&a).apply_point(2), 1);
    }
}
