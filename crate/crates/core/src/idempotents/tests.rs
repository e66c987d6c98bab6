use num_traits::One;

use super::*;
use crate::algebra::build_t_beta;
use crate::designs::{construct_ag, construct_named, NamedSystem};
use crate::exact::q;

fn fano() -> SteinerTripleSystem {
    construct_named(NamedSystem::Fano).unwrap()
}

fn plane() -> SteinerTripleSystem {
    construct_ag(2).unwrap()
}

fn unit(n: usize, p: usize) -> Vec<Scalar> {
    (1..=n).map(|k| if k == p { Scalar::one() } else { Scalar::zero() }).collect()
}

fn indicator(n: usize, block: &Block) -> Vec<Scalar> {
    (1..=n).map(|k| if block.contains(&k) { Scalar::one() } else { Scalar::zero() }).collect()
}

#[test]
fn q_poly_values() {
    let s = fano();
    let b = s.blocks()[0];
    let x = indicator(7, &b);
    for i in b {
        assert_eq!(q_poly(&s, &qi(1), i, &b, &x).unwrap(), qi(2));
    }
    // Swapping the two other coordinates leaves Q unchanged.
    let mut y = unit(7, b[1]);
    y[b[0] - 1] = q(2, 3);
    let mut z = unit(7, b[2]);
    z[b[0] - 1] = q(2, 3);
    assert_eq!(q_poly(&s, &q(1, 2), b[0], &b, &y).unwrap(), q_poly(&s, &q(1, 2), b[0], &b, &z).unwrap());
    let outside = (1..=7).find(|p| !b.contains(p)).unwrap();
    assert!(matches!(q_poly(&s, &qi(1), outside, &b, &x), Err(IdempotentError::PointNotInBlock { .. })));
    let p = plane();
    let pb = p.blocks()[0];
    assert_eq!(q_poly(&p, &qi(1), pb[0], &pb, &indicator(9, &pb)).unwrap(), qi(2));
    assert_eq!(q_poly(&p, &q(3, 5), pb[1], &pb, &vec![qi(0); 9]).unwrap(), qi(0));
    assert!(matches!(q_poly(&s, &qi(1), b[0], &b, &x[..3]), Err(IdempotentError::CoordinateCount { .. })));
}

#[test]
fn axis_solves_with_zero_constant() {
    for s in [fano(), plane()] {
        let n = s.n();
        let a = build_t_beta(&s, q(3, 7)).unwrap();
        let check = check_eps_equation(&a, 1, &unit(n, 2)).unwrap();
        assert!(check.solves() && check.direct && check.consistent());
        assert_eq!(check.c, Some(qi(0)));
        let bad = check_eps_equation(&a, 1, &indicator(n, &s.blocks()[0])).unwrap();
        assert!(!bad.solves() && !bad.direct && bad.consistent());
    }
    let a = build_t_beta(&fano(), qi(2)).unwrap();
    assert_eq!(check_eps_equation(&a, 2, &unit(7, 1)).unwrap_err(), IdempotentError::BadEpsilon);
}

#[test]
fn gauge_shift_changes_nothing() {
    let s = fano();
    let a = build_t_beta(&s, q(-2, 5)).unwrap();
    let x: Vec<Scalar> = (1..=7).map(|k| q(k as i64, 3)).collect();
    let shifted: Vec<Scalar> = x.iter().map(|v| v + q(5, 4)).collect();
    assert_eq!(from_spanning(&a, &x).unwrap(), from_spanning(&a, &shifted).unwrap());
    let e = check_eps_equation(&a, 1, &unit(7, 3)).unwrap();
    let shifted_unit: Vec<Scalar> = unit(7, 3).iter().map(|v| v - q(1, 9)).collect();
    let f = check_eps_equation(&a, 1, &shifted_unit).unwrap();
    assert!(e.solves() && f.solves() && f.consistent());
}

#[test]
fn block_idempotent_at_one_is_third_of_gamma() {
    let s = fano();
    let a = build_t_beta(&s, qi(1)).unwrap();
    let b = s.blocks()[2];
    let cat = block_catalog(&a, &b).unwrap();
    let e0 = cat.entry(EntryLabel::E0B).unwrap();
    assert_eq!(e0.coords, indicator(7, &b).iter().map(|v| v / qi(3)).collect::<Vec<_>>());
    assert!(cat.all_verified());
}

#[test]
fn catalog_verified_across_regimes() {
    for s in [fano(), plane()] {
        let n = s.n() as i64;
        let betas = [
            qi(2),
            q(1, 2),
            qi(1),
            qi(0),
            q(6 - n, 2 * n),
            q(n, 2 * (n - 1)),
            q(-n, 2 * (n - 3)),
            q(-(n - 1), n - 3),
        ];
        for beta in betas {
            let a = build_t_beta(&s, beta.clone()).unwrap();
            for b in s.blocks() {
                let cat = block_catalog(&a, b).unwrap();
                assert!(cat.all_verified(), "n = {n}, β = {beta}, block {b:?}");
            }
        }
    }
}

#[test]
fn square_zero_only_at_its_beta() {
    let s = fano();
    let a = build_t_beta(&s, q(-1, 14)).unwrap();
    let found = square_zero_scan(&a).unwrap();
    assert_eq!(found.len(), 7);
    assert!(found.iter().all(|f| f.label == EntryLabel::ZB));
    let v = from_spanning(&a, &found[0].coords).unwrap();
    assert!(!v.is_zero() && a.mul(&v, &v).is_zero());
    for beta in [qi(0), qi(1), q(1, 2)] {
        let a = build_t_beta(&s, beta).unwrap();
        assert!(square_zero_scan(&a).unwrap().is_empty());
    }
}

#[test]
fn side_idempotent_collapses_to_axis() {
    for s in [fano(), plane()] {
        let n = s.n() as i64;
        let a = build_t_beta(&s, q(n, 2 * (n - 1))).unwrap();
        let b = s.blocks()[1];
        let cat = block_catalog(&a, &b).unwrap();
        for (slot, label) in [EntryLabel::EBi, EntryLabel::EBj, EntryLabel::EBij].into_iter().enumerate() {
            let v = from_spanning(&a, &cat.entry(label).unwrap().coords).unwrap();
            assert_eq!(v, a.generator(b[slot]).unwrap());
        }
    }
}

#[test]
fn triple_sum_at_lambda_beta_is_gamma() {
    for s in [fano(), plane()] {
        let n = s.n() as i64;
        let a = build_t_beta(&s, q(-n, 2 * (n - 3))).unwrap();
        let b = s.blocks()[0];
        let cat = block_catalog(&a, &b).unwrap();
        let sum = from_spanning(&a, cat.triple_sum.as_ref().unwrap()).unwrap();
        assert_eq!(sum, a.block_sum(&b).unwrap());
        assert!(!sum.is_zero());
        let lam = cat.entry(EntryLabel::LambdaFamily).unwrap();
        assert!(lam.verified && lam.kind == EntryKind::OneParameterFamily);
    }
}

#[test]
fn lambda_family_is_on_both_quadrics() {
    for t in [qi(0), qi(2), q(-3, 5), q(7, 2)] {
        let l = lambda_family_member(&t);
        assert_eq!(&l[0] + &l[1] + &l[2], qi(1));
        assert_eq!(&l[0] * &l[0] + &l[1] * &l[1] + &l[2] * &l[2], qi(1));
    }
    assert_eq!(lambda_family_member(&qi(2)), [q(-2, 7), q(3, 7), q(6, 7)]);
}

#[test]
fn e3_report_at_one() {
    let s = fano();
    let a = build_t_beta(&s, qi(1)).unwrap();
    let r = e3_subalgebra_check(&a, &s.blocks()[0]).unwrap();
    assert_eq!(r.subalgebra_dim, 3);
    assert!(!r.e3_tensor_match);
    assert!(r.e0_spans_ideal && r.unit_plus_e2);
    assert_eq!(r.e3_verdict, "simple");
    let other = build_t_beta(&s, qi(2)).unwrap();
    assert!(e3_subalgebra_check(&other, &s.blocks()[0]).is_err());
}

#[test]
fn plane_classes_and_products() {
    let s = plane();
    let classes = parallel_classes(&s).unwrap();
    assert_eq!(classes.len(), 4);
    assert!(classes.iter().all(|c| c.len() == 3));
    assert!(parallel_classes(&fano()).is_none());
    for beta in [q(1, 3), q(-4, 3), qi(2), qi(1), qi(0)] {
        let a = build_t_beta(&s, beta.clone()).unwrap();
        let r = ag23_decomposition(&a).unwrap();
        assert!(r.class_sums_vanish, "β = {beta}");
        assert!(r.within_class.holds() && r.cross_class.holds(), "β = {beta}");
        assert_eq!(r.direct_sum.is_some(), beta.is_one());
        if beta == qi(0) {
            assert_eq!(r.cross_coefficient, qi(1));
        }
    }
    let a = build_t_beta(&s, qi(1)).unwrap();
    let ds = ag23_decomposition(&a).unwrap().direct_sum.unwrap();
    assert!(ds.ok(), "{ds:?}");
    let excluded = build_t_beta(&s, q(-1, 6)).unwrap();
    assert!(matches!(ag23_decomposition(&excluded), Err(IdempotentError::ExcludedBeta(_))));
}

#[test]
fn gamma_spectrum_matches_table() {
    let s = plane();
    for beta in [q(1, 3), q(-4, 3), qi(2), q(3, 7), qi(1), qi(0)] {
        let a = build_t_beta(&s, beta.clone()).unwrap();
        for b in s.blocks() {
            let r = gamma_block_spectrum(&a, b).unwrap();
            assert!(r.relations.holds(), "β = {beta}: {:?}", r.relations);
            assert!(r.eigenvectors_ok && r.candidates_exhaust, "β = {beta}");
            assert_eq!(r.table_match, Some(true), "β = {beta}: {:?}", r.spectrum);
        }
    }
    let a = build_t_beta(&s, q(1, 3)).unwrap();
    let r = gamma_block_spectrum(&a, &s.blocks()[0]).unwrap();
    assert_eq!(r.spectrum, vec![(qi(1), 1), (q(4, 9), 2), (q(-2, 9), 4), (qi(-1), 1)]);
    assert_eq!(r.spectrum.iter().map(|(_, m)| m).sum::<usize>(), 8);
    let e0 = |b: [usize; 3]| a.block_idempotent(&b).unwrap().unwrap();
    let v = &e0([7, 8, 9]) - &e0([4, 5, 6]);
    assert_eq!(a.mul(&e0([1, 2, 3]), &v), -&v);
    let a = build_t_beta(&s, q(-4, 3)).unwrap();
    let r = gamma_block_spectrum(&a, &s.blocks()[0]).unwrap();
    assert_eq!(r.spectrum, vec![(qi(1), 1), (q(-2, 3), 2), (q(1, 3), 4), (qi(-1), 1)]);
}

#[test]
fn gamma_spectrum_on_other_hall_system() {
    let s = construct_ag(3).unwrap();
    let a = build_t_beta(&s, q(2, 5)).unwrap();
    let r = gamma_block_spectrum(&a, &s.blocks()[0]).unwrap();
    assert!(r.relations.holds() && r.eigenvectors_ok && !r.candidates_exhaust);
    assert_eq!(r.spectrum.iter().map(|(_, m)| m).sum::<usize>(), 23);
    assert_eq!(r.table_match, None);
    let skolem = construct_named(NamedSystem::Skolem(13)).unwrap();
    let a = build_t_beta(&skolem, q(2, 5)).unwrap();
    assert_eq!(gamma_block_spectrum(&a, &skolem.blocks()[0]).unwrap_err(), IdempotentError::NotHall);
}

#[test]
fn catalog_json_labels() {
    let s = fano();
    let a = build_t_beta(&s, q(-1, 14)).unwrap();
    let cat = block_catalog(&a, &s.blocks()[0]).unwrap();
    let json = serde_json::to_value(&cat).unwrap();
    assert_eq!(json["entries"][0]["label"], "z_B");
    assert_eq!(json["entries"][0]["kind"], "square_zero");
    assert_eq!(json["entries"][0]["coords"].as_array().unwrap().len(), 7);
    let a = build_t_beta(&s, qi(2)).unwrap();
    let json = serde_json::to_value(block_catalog(&a, &s.blocks()[0]).unwrap()).unwrap();
    let labels: Vec<&str> = json["entries"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["e0_B", "e_B_i", "e_B_j", "e_B_ij"]);
}
