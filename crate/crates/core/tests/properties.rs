use num_traits::Zero;
use proptest::prelude::*;
use sal_core::algebra::{build_t_beta, killing_form, quotient_consistency, tight_frame_check};
use sal_core::designs::{construct_ag, construct_named, NamedSystem, SteinerTripleSystem};
use sal_core::exact::{format_scalar, parse_scalar, q, Matrix, Scalar, Vector};
use sal_core::idempotents::{check_eps_equation, from_spanning};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn small_int_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Matrix::from_int_rows(&refs).unwrap()
        })
    })
}

fn square_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(scalar(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
    })
}

fn system(index: usize) -> SteinerTripleSystem {
    match index {
        0 => construct_named(NamedSystem::Fano).unwrap(),
        1 => construct_ag(2).unwrap(),
        2 => construct_named(NamedSystem::Skolem(13)).unwrap(),
        _ => construct_named(NamedSystem::Bose(15)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(m in small_int_matrix(6)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vector(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_vanishes_iff_kernel(m in square_matrix(5)) {
        let det = m.determinant().unwrap();
        prop_assert_eq!(det.is_zero(), !m.kernel_basis().is_empty());
    }

    #[test]
    fn gram_of_full_rank_is_positive_definite(m in square_matrix(4)) {
        let gram = m.transpose().mul_matrix(&m).unwrap();
        let pd = gram.is_positive_definite().unwrap();
        prop_assert_eq!(pd, m.rank() == m.cols());
        if pd {
            prop_assert!(gram.determinant().unwrap() > Scalar::zero());
        }
    }

    #[test]
    fn scalar_text_round_trips(x in scalar()) {
        let text = format_scalar(&x);
        prop_assert_eq!(parse_scalar(&text).unwrap(), x);
        prop_assert!(text.contains('/'));
    }

    #[test]
    fn join_is_a_commutative_quasigroup(idx in 0usize..4) {
        let s = system(idx);
        let n = s.n();
        for i in 1..=n {
            prop_assert_eq!(s.join(i, i), i);
            for j in 1..=n {
                prop_assert_eq!(s.join(i, j), s.join(j, i));
                prop_assert_eq!(s.join(i, s.join(i, j)), j);
            }
        }
    }

    #[test]
    fn hall_iff_point_involutions_are_automorphisms(idx in 0usize..4) {
        let s = system(idx);
        let all = (1..=s.n()).all(|i| s.is_automorphism(&s.sigma_involution(i)).unwrap());
        prop_assert_eq!(s.is_hall(), all);
    }

    #[test]
    fn product_is_commutative(idx in 0usize..2, beta in scalar(), xs in prop::collection::vec(scalar(), 8), ys in prop::collection::vec(scalar(), 8)) {
        let a = build_t_beta(&system(idx), beta).unwrap();
        let d = a.dim();
        let x = Vector::new(xs[..d].to_vec());
        let y = Vector::new(ys[..d].to_vec());
        prop_assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
    }

    #[test]
    fn quotient_matches_direct(idx in 0usize..2, beta in scalar()) {
        prop_assert!(quotient_consistency(&system(idx), beta).unwrap().holds());
    }

    #[test]
    fn tight_frame_on_random_vectors(idx in 0usize..2, beta in scalar(), xs in prop::collection::vec(scalar(), 8)) {
        let a = build_t_beta(&system(idx), beta).unwrap();
        let kappa = killing_form(&a);
        let x = Vector::new(xs[..a.dim()].to_vec());
        prop_assert!(tight_frame_check(&a, &kappa, &x).unwrap());
    }

    #[test]
    fn eps_equation_ignores_common_shift(
        idx in 0usize..2,
        beta in scalar(),
        xs in prop::collection::vec(-2i64..=2, 9),
        shift in scalar(),
        eps in 0u8..=1,
    ) {
        let s = system(idx);
        let a = build_t_beta(&s, beta).unwrap();
        let n = s.n();
        let x: Vec<Scalar> = xs[..n].iter().map(|&v| q(v, 1)).collect();
        let shifted: Vec<Scalar> = x.iter().map(|v| v + &shift).collect();
        prop_assert_eq!(from_spanning(&a, &x).unwrap(), from_spanning(&a, &shifted).unwrap());
        let before = check_eps_equation(&a, eps, &x).unwrap();
        let after = check_eps_equation(&a, eps, &shifted).unwrap();
        prop_assert_eq!(before.solves(), after.solves());
        prop_assert_eq!(before.direct, after.direct);
        prop_assert!(before.consistent() && after.consistent());
    }
}
