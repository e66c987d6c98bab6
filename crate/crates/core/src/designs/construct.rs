//! Standard constructions.
//!
//! * `AG(m,3)`: point `(a₁,…,a_m)` of `(ℤ/3)^m` is labeled `1 + Σ aₖ·3^{k−1}`;
//!   lines are `{x, y, −x−y}`.
//! * Fano plane: blocks `{i, i+1, i+3}` mod 7.
//! * Bose, `n = 6v+3`: on `ℤ_{2v+1} × ℤ₃` with the idempotent commutative
//!   quasigroup `x∘y = (v+1)(x+y)`. Point `(x,i)` is labeled `1 + x + i(2v+1)`.
//!   Blocks `{(x,0),(x,1),(x,2)}` and, for `x<y`, `{(x,i),(y,i),(x∘y,i+1)}`.
//! * Skolem, `n = 6v+1`: on `{∞} ∪ ℤ_{2v} × ℤ₃` with the half-idempotent
//!   commutative quasigroup `x∘y = h(x+y)`, where `h(2k) = k` and
//!   `h(2k+1) = v+k`. Point `(x,i)` is labeled `1 + x + 2v·i` and `∞` is `n`.
//!   Blocks `{(x,0),(x,1),(x,2)}` for `x<v`, `{∞,(x+v,i),(x,i+1)}` for `x<v`,
//!   and `{(x,i),(y,i),(x∘y,i+1)}` for `x<y`.

use super::{as_sts, BlockSet, DesignError, SteinerTripleSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSystem {
    Fano,
    Bose(usize),
    Skolem(usize),
}

fn sorted(mut b: [usize; 3]) -> [usize; 3] {
    b.sort_unstable();
    b
}

pub fn construct_ag(m: u32) -> Result<SteinerTripleSystem, DesignError> {
    if m < 1 {
        return Err(DesignError::InvalidDimension(m));
    }
    let n = 3usize.pow(m);
    let digits = |mut x: usize| {
        let mut d = vec![0usize; m as usize];
        for slot in d.iter_mut() {
            *slot = x % 3;
            x /= 3;
        }
        d
    };
    let label = |d: &[usize]| d.iter().rev().fold(0, |acc, &a| acc * 3 + a);
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..n {
        let dx = digits(x);
        for y in x + 1..n {
            let dy = digits(y);
            let dz: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (6 - a - b) % 3).collect();
            let z = label(&dz);
            if z > y {
                blocks.push([x + 1, y + 1, z + 1]);
            }
        }
    }
    as_sts(&BlockSet::from_triples(n, &blocks))
}

pub fn construct_named(name: NamedSystem) -> Result<SteinerTripleSystem, DesignError> {
    let (n, blocks) = match name {
        NamedSystem::Fano => (7, (0..7).map(|i| sorted([i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])).collect()),
        NamedSystem::Bose(n) => {
            if n % 6 != 3 {
                return Err(DesignError::InvalidOrder { construction: "bose", rule: "n ≡ 3 (mod 6)", n });
            }
            (n, bose_blocks(n))
        }
        NamedSystem::Skolem(n) => {
            if n % 6 != 1 {
                return Err(DesignError::InvalidOrder { construction: "skolem", rule: "n ≡ 1 (mod 6)", n });
            }
            (n, skolem_blocks(n))
        }
    };
    as_sts(&BlockSet::from_triples(n, &blocks))
}

fn bose_blocks(n: usize) -> Vec<[usize; 3]> {
    let v = (n - 3) / 6;
    let q = 2 * v + 1;
    let point = |x: usize, i: usize| 1 + x + (i % 3) * q;
    let op = |x: usize, y: usize| ((v + 1) * (x + y)) % q;
    let mut blocks = Vec::new();
    for x in 0..q {
        blocks.push([point(x, 0), point(x, 1), point(x, 2)]);
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                blocks.push(sorted([point(x, i), point(y, i), point(op(x, y), i + 1)]));
            }
        }
    }
    blocks
}

fn skolem_blocks(n: usize) -> Vec<[usize; 3]> {
    let v = (n - 1) / 6;
    let q = 2 * v;
    let infinity = n;
    let point = |x: usize, i: usize| 1 + x + (i % 3) * q;
    let op = |x: usize, y: usize| {
        let s = (x + y) % q;
        if s % 2 == 0 {
            s / 2
        } else {
            s / 2 + v
        }
    };
    let mut blocks = Vec::new();
    for x in 0..v {
        blocks.push([point(x, 0), point(x, 1), point(x, 2)]);
        for i in 0..3 {
            blocks.push(sorted([infinity, point(x + v, i), point(x, i + 1)]));
        }
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                blocks.push(sorted([point(x, i), point(y, i), point(op(x, y), i + 1)]));
            }
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::super::tests::AG23;
    use super::*;

    #[test]
    fn ag2_matches_listed_plane() {
        let s = construct_ag(2).unwrap();
        assert_eq!(s.blocks(), &{
            let mut b = AG23.to_vec();
            b.sort();
            b
        }[..]);
    }

    #[test]
    fn ag_sizes() {
        assert_eq!(construct_ag(1).unwrap().blocks(), &[[1, 2, 3]]);
        let s = construct_ag(3).unwrap();
        assert_eq!(s.n(), 27);
        assert_eq!(s.blocks().len(), 117);
        assert!(s.base().profile().counts.iter().all(|&r| r == 13));
        assert_eq!(construct_ag(0).unwrap_err(), DesignError::InvalidDimension(0));
    }

    #[test]
    fn ag_is_hall() {
        for m in 1..=3 {
            assert!(construct_ag(m).unwrap().is_hall());
        }
    }

    #[test]
    fn fano_sizes() {
        let s = construct_named(NamedSystem::Fano).unwrap();
        assert_eq!((s.n(), s.blocks().len(), s.replication()), (7, 7, 3));
        assert!(s.blocks().contains(&[1, 2, 4]));
    }

    #[test]
    fn bose_and_skolem_orders() {
        for n in [3, 9, 15, 21, 27, 33] {
            let s = construct_named(NamedSystem::Bose(n)).unwrap();
            assert_eq!(s.blocks().len(), n * (n - 1) / 6);
        }
        for n in [1, 7, 13, 19, 25, 31] {
            let s = construct_named(NamedSystem::Skolem(n)).unwrap();
            assert_eq!(s.blocks().len(), n * (n - 1) / 6);
        }
        assert!(matches!(construct_named(NamedSystem::Bose(7)), Err(DesignError::InvalidOrder { .. })));
        assert!(matches!(construct_named(NamedSystem::Skolem(9)), Err(DesignError::InvalidOrder { .. })));
    }

    #[test]
    fn skolem13_is_not_hall() {
        let s = construct_named(NamedSystem::Skolem(13)).unwrap();
        assert_eq!(s.blocks().len(), 26);
        let [i, j, k] = s.hall_violation().expect("STS(13) cannot be Hall");
        assert_ne!(s.join(s.join(i, j), s.join(i, k)), s.join(i, s.join(j, k)));
        assert!(s.hall_violation_alt().is_some());
        assert!(!s.is_automorphism(&s.sigma_involution(1)).unwrap());
    }

    #[test]
    fn fano_transposition_is_not_automorphism() {
        let s = construct_named(NamedSystem::Fano).unwrap();
        let swap = crate::perm::Permutation::from_points(&[2, 1, 3, 4, 5, 6, 7]).unwrap();
        assert!(!s.is_automorphism(&swap).unwrap());
    }

    #[test]
    fn translation_preserves_affine_plane() {
        let s = construct_ag(2).unwrap();
        // x ↦ x + (1, 0): first digit shifts by one.
        let images: Vec<usize> = (0..9).map(|p| (p / 3) * 3 + (p % 3 + 1) % 3).collect();
        let t = crate::perm::Permutation::from_images(images).unwrap();
        assert!(s.is_automorphism(&t).unwrap());
    }
}
