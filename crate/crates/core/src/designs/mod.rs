//! Partial and full Steiner triple systems on points `1..=n`.
//!
//! A raw [`BlockSet`] is validated into a [`PartialTripleSystem`] (every pair
//! of points in at most one block), and then into a [`SteinerTripleSystem`]
//! when every pair is covered. The join `i∘j` is the third point of the
//! block through `i` and `j`, with `i∘i = i`.

mod construct;
mod io;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;

pub use construct::{construct_ag, construct_named, NamedSystem};
pub use io::{read_blocks, write_blocks};

/// A block as sorted 1-based points.
pub type Block = [usize; 3];

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("block {block:?} is not three distinct points in 1..={n}")]
    MalformedBlock { block: Vec<usize>, n: usize },
    #[error("block {0:?} is listed twice")]
    DuplicateBlock(Block),
    #[error("points {i} and {j} lie in both {first:?} and {second:?}")]
    DuplicatePairInTwoBlocks { i: usize, j: usize, first: Block, second: Block },
    #[error("points {i} and {j} lie in no block")]
    UncoveredPair { i: usize, j: usize },
    #[error("affine dimension must be at least 1, got {0}")]
    InvalidDimension(u32),
    #[error("{construction} needs order {rule}, got {n}")]
    InvalidOrder { construction: &'static str, rule: &'static str, n: usize },
    #[error("permutation acts on {found} points, system has {expected}")]
    NotAPermutation { expected: usize, found: usize },
    #[error("point {point} outside 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Unvalidated incidence data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSet {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSet {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        BlockSet { n, blocks }
    }

    pub fn from_triples(n: usize, blocks: &[[usize; 3]]) -> Self {
        BlockSet { n, blocks: blocks.iter().map(|b| b.to_vec()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicationProfile {
    /// Block count through each point, indexed by point − 1.
    pub counts: Vec<usize>,
    pub regular: bool,
    /// Common replication number when regular.
    pub r: Option<usize>,
}

impl ReplicationProfile {
    fn from_counts(counts: Vec<usize>) -> Self {
        let r = counts.first().copied().unwrap_or(0);
        let regular = counts.iter().all(|&c| c == r);
        ReplicationProfile { counts, regular, r: regular.then_some(r) }
    }
}

/// Checks the block shape and the at-most-one-block-per-pair law.
pub fn validate_psts(raw: &BlockSet) -> Result<ReplicationProfile, DesignError> {
    PartialTripleSystem::new(raw).map(|p| p.profile)
}

/// Blocks with pairwise intersections of size at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTripleSystem {
    n: usize,
    blocks: Vec<Block>,
    // third[(i-1)*n + (j-1)] = third point of the block through i, j.
    third: Vec<u32>,
    // index into `blocks` for each pair
    block_of: Vec<u32>,
    profile: ReplicationProfile,
}

impl PartialTripleSystem {
    pub fn new(raw: &BlockSet) -> Result<Self, DesignError> {
        let n = raw.n;
        let mut sorted = BTreeSet::new();
        for block in &raw.blocks {
            let malformed = || DesignError::MalformedBlock { block: block.clone(), n };
            let [a, b, c]: [usize; 3] = block.as_slice().try_into().map_err(|_| malformed())?;
            let mut t = [a, b, c];
            t.sort_unstable();
            if t[0] == 0 || t[2] > n || t[0] == t[1] || t[1] == t[2] {
                return Err(malformed());
            }
            if !sorted.insert(t) {
                return Err(DesignError::DuplicateBlock(t));
            }
        }
        let blocks: Vec<Block> = sorted.into_iter().collect();
        let mut third = vec![NONE; n * n];
        let mut block_of = vec![NONE; n * n];
        let mut counts = vec![0usize; n];
        for (idx, &b) in blocks.iter().enumerate() {
            for (x, y, z) in [(b[0], b[1], b[2]), (b[0], b[2], b[1]), (b[1], b[2], b[0])] {
                let at = (x - 1) * n + (y - 1);
                if block_of[at] != NONE {
                    return Err(DesignError::DuplicatePairInTwoBlocks {
                        i: x,
                        j: y,
                        first: blocks[block_of[at] as usize],
                        second: b,
                    });
                }
                for (p, q) in [(x, y), (y, x)] {
                    third[(p - 1) * n + (q - 1)] = z as u32;
                    block_of[(p - 1) * n + (q - 1)] = idx as u32;
                }
            }
            for p in b {
                counts[p - 1] += 1;
            }
        }
        Ok(PartialTripleSystem { n, blocks, third, block_of, profile: ReplicationProfile::from_counts(counts) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in sorted order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn profile(&self) -> &ReplicationProfile {
        &self.profile
    }

    /// Third point of the block through distinct `i` and `j`, if any.
    pub fn third_point(&self, i: usize, j: usize) -> Option<usize> {
        match self.third[(i - 1) * self.n + (j - 1)] {
            NONE => None,
            z => Some(z as usize),
        }
    }

    /// Index into [`blocks`](Self::blocks) of the block through `i` and `j`.
    pub fn block_index(&self, i: usize, j: usize) -> Option<usize> {
        match self.block_of[(i - 1) * self.n + (j - 1)] {
            NONE => None,
            b => Some(b as usize),
        }
    }

    /// The relation `i ∼ j`: distinct points sharing a block.
    pub fn collinear(&self, i: usize, j: usize) -> bool {
        i != j && self.third_point(i, j).is_some()
    }

    pub fn to_block_set(&self) -> BlockSet {
        BlockSet::from_triples(self.n, &self.blocks)
    }
}

/// A Steiner triple system with its join table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTripleSystem {
    base: PartialTripleSystem,
}

/// Checks that every pair is covered exactly once.
pub fn as_sts(raw: &BlockSet) -> Result<SteinerTripleSystem, DesignError> {
    SteinerTripleSystem::new(PartialTripleSystem::new(raw)?)
}

impl SteinerTripleSystem {
    pub fn new(base: PartialTripleSystem) -> Result<Self, DesignError> {
        let n = base.n;
        for i in 1..=n {
            for j in i + 1..=n {
                if base.third_point(i, j).is_none() {
                    return Err(DesignError::UncoveredPair { i, j });
                }
            }
        }
        let sts = SteinerTripleSystem { base };
        debug_assert!((1..=n).all(|i| (1..=n).all(|j| sts.join(i, sts.join(i, j)) == j)));
        Ok(sts)
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.base.blocks
    }

    pub fn base(&self) -> &PartialTripleSystem {
        &self.base
    }

    pub fn replication(&self) -> usize {
        (self.n() - 1) / 2
    }

    /// `i∘j` on 1-based points.
    pub fn join(&self, i: usize, j: usize) -> usize {
        if i == j {
            i
        } else {
            self.base.third[(i - 1) * self.base.n + (j - 1)] as usize
        }
    }

    /// Index of the block through distinct `i` and `j`.
    pub fn block_index(&self, i: usize, j: usize) -> usize {
        self.base.block_of[(i - 1) * self.base.n + (j - 1)] as usize
    }

    /// First pairwise-distinct `(i, j, k)` with `(i∘j)∘(i∘k) ≠ i∘(j∘k)`.
    pub fn hall_violation(&self) -> Option<[usize; 3]> {
        self.first_distinct_triple(|i, j, k| {
            self.join(self.join(i, j), self.join(i, k)) != self.join(i, self.join(j, k))
        })
    }

    /// Same search for the form `k∘((k∘j)∘i) = (k∘i)∘j`.
    pub fn hall_violation_alt(&self) -> Option<[usize; 3]> {
        self.first_distinct_triple(|i, j, k| {
            self.join(k, self.join(self.join(k, j), i)) != self.join(self.join(k, i), j)
        })
    }

    pub fn is_hall(&self) -> bool {
        self.hall_violation().is_none()
    }

    fn first_distinct_triple(&self, bad: impl Fn(usize, usize, usize) -> bool) -> Option<[usize; 3]> {
        let n = self.n();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i != j && j != k && i != k && bad(i, j, k) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    pub fn is_automorphism(&self, sigma: &Permutation) -> Result<bool, DesignError> {
        if sigma.len() != self.n() {
            return Err(DesignError::NotAPermutation { expected: self.n(), found: sigma.len() });
        }
        Ok(self.blocks().iter().all(|b| {
            let [x, y, z] = b.map(|p| sigma.apply_point(p));
            self.join(x, y) == z
        }))
    }

    /// `j ↦ i∘j`.
    pub fn sigma_involution(&self, i: usize) -> Permutation {
        let images = (1..=self.n()).map(|j| self.join(i, j) - 1).collect();
        Permutation::from_images(images).expect("join row is a permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const AG23: [[usize; 3]; 12] = [
        [1, 2, 3],
        [4, 5, 6],
        [7, 8, 9],
        [1, 4, 7],
        [2, 5, 8],
        [3, 6, 9],
        [1, 5, 9],
        [2, 6, 7],
        [3, 4, 8],
        [1, 6, 8],
        [2, 4, 9],
        [3, 5, 7],
    ];

    #[test]
    fn affine_plane_profile() {
        let p = validate_psts(&BlockSet::from_triples(9, &AG23)).unwrap();
        assert!(p.regular);
        assert_eq!(p.r, Some(4));
    }

    #[test]
    fn empty_system_is_regular_zero() {
        let p = validate_psts(&BlockSet::new(5, vec![])).unwrap();
        assert_eq!(p.r, Some(0));
    }

    #[test]
    fn pair_in_two_blocks() {
        let err = validate_psts(&BlockSet::from_triples(4, &[[1, 2, 3], [1, 2, 4]])).unwrap_err();
        assert!(matches!(err, DesignError::DuplicatePairInTwoBlocks { i: 1, j: 2, .. }));
    }

    #[test]
    fn malformed_and_duplicate_blocks() {
        let err = validate_psts(&BlockSet::new(3, vec![vec![1, 1, 2]])).unwrap_err();
        assert!(matches!(err, DesignError::MalformedBlock { .. }));
        let err = validate_psts(&BlockSet::new(3, vec![vec![1, 2, 4]])).unwrap_err();
        assert!(matches!(err, DesignError::MalformedBlock { .. }));
        let err = validate_psts(&BlockSet::new(3, vec![vec![1, 2]])).unwrap_err();
        assert!(matches!(err, DesignError::MalformedBlock { .. }));
        let err = validate_psts(&BlockSet::new(3, vec![vec![1, 2, 3], vec![3, 2, 1]])).unwrap_err();
        assert_eq!(err, DesignError::DuplicateBlock([1, 2, 3]));
    }

    #[test]
    fn affine_plane_join() {
        let s = as_sts(&BlockSet::from_triples(9, &AG23)).unwrap();
        assert_eq!(s.join(1, 2), 3);
        assert_eq!(s.join(1, 5), 9);
        assert_eq!(s.join(4, 4), 4);
        assert!(s.is_hall());
    }

    #[test]
    fn single_block_is_sts3() {
        let s = as_sts(&BlockSet::from_triples(3, &[[1, 2, 3]])).unwrap();
        assert_eq!(s.blocks().len(), 1);
        assert!(s.is_hall());
    }

    #[test]
    fn missing_block_leaves_pair_uncovered() {
        let err = as_sts(&BlockSet::from_triples(9, &AG23[..11])).unwrap_err();
        assert_eq!(err, DesignError::UncoveredPair { i: 3, j: 5 });
    }

    #[test]
    fn sigma_one_on_affine_plane() {
        let s = as_sts(&BlockSet::from_triples(9, &AG23)).unwrap();
        let sigma = s.sigma_involution(1);
        assert_eq!(sigma.to_string(), "(2 3)(4 7)(5 9)(6 8)");
        assert!(s.is_automorphism(&sigma).unwrap());
    }

    #[test]
    fn automorphism_length_mismatch() {
        let s = as_sts(&BlockSet::from_triples(3, &[[1, 2, 3]])).unwrap();
        let err = s.is_automorphism(&Permutation::identity(4)).unwrap_err();
        assert!(matches!(err, DesignError::NotAPermutation { .. }));
    }
}
