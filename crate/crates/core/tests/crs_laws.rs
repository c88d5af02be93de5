use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crs_core::crs::subgroup::closure;
use crs_core::crs::{
    all_subgroups, ann_of_multiple, classify_limit, enumerate_params, exact_distribution,
    gl_generators, CrsParam, SequenceDescriptor, Side, SubgroupDistribution, TruncSubgroup,
};
use crs_core::error::DEFAULT_ENUM_CAP;
use crs_core::finab::{FinAbGroup, PrimePower};
use crs_core::qlinalg::vtilde;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn g(s: &str) -> FinAbGroup {
    s.parse().unwrap()
}

fn sizes() -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for n in [2u64, 3, 4, 6] {
        for k in 0..=2 {
            out.push((n, k));
        }
    }
    out
}

#[test]
fn annihilator_is_an_involution() {
    for (n, k) in sizes() {
        for h in all_subgroups(n, k) {
            assert_eq!(h.annihilator().annihilator(), h, "N={n} k={k} H={h}");
            assert_eq!(h.order() * h.annihilator().order(), (n as u128).pow(k as u32));
        }
    }
}

#[test]
fn annihilator_matches_pairing_oracle() {
    for (n, k) in sizes() {
        let full = TruncSubgroup::full(n, k).elements();
        for h in all_subgroups(n, k) {
            let elems = h.elements();
            let expect: BTreeSet<Vec<u64>> = full
                .iter()
                .filter(|y| {
                    elems
                        .iter()
                        .all(|x| x.iter().zip(y.iter()).map(|(a, b)| a * b).sum::<u64>() % n == 0)
                })
                .cloned()
                .collect();
            assert_eq!(h.annihilator().elements(), expect);
        }
    }
}

#[test]
fn four_dual_identities() {
    for (n, k) in sizes() {
        let subs = all_subgroups(n, k);
        for h in &subs {
            for kk in &subs {
                let sum = h.sum(kk).unwrap();
                let meet = h.intersect(kk).unwrap();
                let (ah, ak) = (h.annihilator(), kk.annihilator());
                assert_eq!(sum.annihilator(), ah.intersect(&ak).unwrap());
                assert_eq!(meet.annihilator(), ah.sum(&ak).unwrap());
                // the kernel side uses the same self-dual pairing
                assert_eq!(ah.sum(&ak).unwrap().annihilator(), meet);
                assert_eq!(ah.intersect(&ak).unwrap().annihilator(), sum);
            }
        }
    }
}

#[test]
fn sum_and_intersection_match_element_oracle() {
    for (n, k) in [(4u64, 2usize), (6, 2)] {
        let subs = all_subgroups(n, k);
        for h in &subs {
            for kk in &subs {
                let mut gens = h.gens().to_vec();
                gens.extend(kk.gens().iter().cloned());
                assert_eq!(h.sum(kk).unwrap().elements(), closure(n, k, &gens));
                let meet: BTreeSet<Vec<u64>> =
                    h.elements().intersection(&kk.elements()).cloned().collect();
                assert_eq!(h.intersect(kk).unwrap().elements(), meet);
            }
        }
    }
}

#[test]
fn spec_examples_for_subgroups() {
    let two = TruncSubgroup::multiple(2, 4, 1);
    assert_eq!(two.annihilator(), two);
    assert_eq!(TruncSubgroup::full(5, 3).annihilator(), TruncSubgroup::zero(5, 3));
    assert_eq!(ann_of_multiple(0, 6, 2), TruncSubgroup::full(6, 2));
    assert_eq!(ann_of_multiple(1, 6, 2), TruncSubgroup::zero(6, 2));
    assert_eq!(ann_of_multiple(2, 4, 1), two);
    let diag = TruncSubgroup::from_generators(4, 2, &[vec![2, 2]]).unwrap();
    let s = TruncSubgroup::multiple(2, 4, 2).sum(&diag).unwrap();
    assert_eq!(s, TruncSubgroup::multiple(2, 4, 2));
    let h = TruncSubgroup::from_generators(4, 2, &[vec![1, 2]]).unwrap();
    assert_eq!(h.sum(&TruncSubgroup::zero(4, 2)).unwrap(), h);
    assert_eq!(h.intersect(&TruncSubgroup::full(4, 2)).unwrap(), h);
    assert!(h.sum(&TruncSubgroup::zero(4, 1)).is_err());
    assert!(h.intersect(&TruncSubgroup::zero(2, 2)).is_err());
}

#[test]
fn kernel_side_example_distribution() {
    let p = CrsParam::new(2, 1, g("[2]")).unwrap();
    let d = exact_distribution(&p, Side::Kernel, 3, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(d.len(), 8);
    assert!(d.entries().values().all(|v| *v == r(1, 8)));
    assert_eq!(d.prob(&TruncSubgroup::full(2, 3)), r(1, 8));
    assert!(d.entries().keys().filter(|s| !s.is_zero()).all(|s| s.index() <= 2));
}

#[test]
fn annihilator_side_example_distribution() {
    let p = CrsParam::new(2, 1, g("[2]")).unwrap();
    let d = exact_distribution(&p, Side::Annihilator, 2, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!(d.len(), 4);
    assert_eq!(d.prob(&TruncSubgroup::zero(2, 2)), r(1, 4));
    assert!(d.entries().keys().filter(|s| !s.is_zero()).all(|s| s.order() == 2));
}

#[test]
fn trivial_groups_give_point_masses() {
    for n in 1..=6u64 {
        for side in [Side::Kernel, Side::Annihilator] {
            let p = CrsParam::new(n, n, FinAbGroup::trivial()).unwrap();
            let d = exact_distribution(&p, side, 2, DEFAULT_ENUM_CAP).unwrap();
            let expect = match side {
                Side::Kernel => TruncSubgroup::zero(n, 2),
                Side::Annihilator => TruncSubgroup::full(n, 2),
            };
            assert_eq!(d, SubgroupDistribution::point_mass(expect));
        }
        let p = CrsParam::new(n, 1, FinAbGroup::trivial()).unwrap();
        let d = exact_distribution(&p, Side::Kernel, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(d, SubgroupDistribution::point_mass(TruncSubgroup::full(n, 3)));
    }
}

#[test]
fn full_subgroup_probability_matches_rank_formula() {
    for n in 1..=4u64 {
        let p = CrsParam::new(2, 1, g("[2]")).unwrap();
        let d = exact_distribution(&p, Side::Kernel, n as usize, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(d.prob(&TruncSubgroup::full(2, n as usize)), vtilde(n, n, 1, 2));
        assert_eq!(vtilde(n, n, 1, 2), r(1, 1 << n));
    }
}

#[test]
fn kernel_annihilator_bridge() {
    for n in 1..=4u64 {
        for p in enumerate_params(n, 4) {
            for c in 1..=3 {
                let ker = exact_distribution(&p, Side::Kernel, c, DEFAULT_ENUM_CAP).unwrap();
                let ann = exact_distribution(&p, Side::Annihilator, c, DEFAULT_ENUM_CAP).unwrap();
                assert_eq!(ker.pushforward_ann(), ann, "param {p} on n={n}, coords={c}");
                assert_eq!(ann.pushforward_ann(), ker);
                let total: BigRational = ker.entries().values().sum();
                assert!(total.is_one());
            }
        }
    }
}

#[test]
fn exact_laws_are_automorphism_invariant() {
    for n in 1..=4u64 {
        for p in enumerate_params(n, 4) {
            for c in 1..=3 {
                for side in [Side::Kernel, Side::Annihilator] {
                    let d = exact_distribution(&p, side, c, DEFAULT_ENUM_CAP).unwrap();
                    for u in gl_generators(c, n) {
                        assert_eq!(d.apply_automorphism(&u).unwrap(), d, "{p} {side:?} c={c}");
                    }
                }
            }
        }
    }
}

#[test]
fn non_invariant_law_is_detected() {
    let skew = SubgroupDistribution::point_mass(
        TruncSubgroup::from_generators(2, 2, &[vec![1, 0]]).unwrap(),
    );
    let swap = vec![vec![0, 1], vec![1, 0]];
    assert_ne!(skew.apply_automorphism(&swap).unwrap(), skew);
    assert!(skew.apply_automorphism(&[vec![1, 1], vec![1, 1]]).is_err());
}

#[test]
fn tv_examples() {
    let p = CrsParam::new(2, 1, g("[2]")).unwrap();
    let d = exact_distribution(&p, Side::Kernel, 2, DEFAULT_ENUM_CAP).unwrap();
    let full = SubgroupDistribution::point_mass(TruncSubgroup::full(2, 2));
    let zero = SubgroupDistribution::point_mass(TruncSubgroup::zero(2, 2));
    assert_eq!(d.tv_distance(&full).unwrap(), r(3, 4));
    assert!(d.tv_distance(&d).unwrap().is_zero());
    assert!(full.tv_distance(&zero).unwrap().is_one());
    let other = SubgroupDistribution::point_mass(TruncSubgroup::full(3, 2));
    assert!(full.tv_distance(&other).is_err());
}

/// TV distances from the `(1, (Z/2)^k)` laws to their limit, `k = 1..=6`.
fn tv_sequence() -> Vec<BigRational> {
    let block = PrimePower::from_value(2).unwrap();
    let limit = classify_limit(&SequenceDescriptor::stable(1, FinAbGroup::trivial(), vec![block]));
    assert_eq!(limit.to_string(), "(2, trivial)");
    let modulus = limit.truncation_modulus();
    let target_param = CrsParam::new(modulus, limit.m(), limit.group().clone()).unwrap();
    let target = exact_distribution(&target_param, Side::Annihilator, 2, DEFAULT_ENUM_CAP).unwrap();
    (1..=6)
        .map(|k| {
            let p = CrsParam::new(modulus, 1, FinAbGroup::elementary(2, k).unwrap()).unwrap();
            let d = exact_distribution(&p, Side::Annihilator, 2, DEFAULT_ENUM_CAP).unwrap();
            d.tv_distance(&target).unwrap()
        })
        .collect()
}

#[test]
fn tv_to_limit_strictly_decreases() {
    let tv = tv_sequence();
    assert!(tv.windows(2).all(|w| w[0] > w[1]), "{tv:?}");
    // 1 - P(k uniform vectors span F_2^2) = 1 - (1 - 2^-k)(1 - 2^{1-k})
    for (i, t) in tv.iter().enumerate() {
        let k = i as i64 + 1;
        let a = r((1 << k) - 1, 1 << k);
        let b = r((1 << k) - 2, 1 << k);
        assert_eq!(*t, BigRational::one() - a * b);
    }
}

#[test]
fn json_round_trip_of_exact_law() {
    let p = CrsParam::new(4, 2, g("[4]")).unwrap();
    let d = exact_distribution(&p, Side::Kernel, 2, DEFAULT_ENUM_CAP).unwrap();
    let back = SubgroupDistribution::from_json(&d.to_json()).unwrap();
    assert_eq!(back, d);
}

#[test]
fn unsupported_ambient_zero() {
    let p = CrsParam::new(0, 0, FinAbGroup::trivial()).unwrap();
    let e = exact_distribution(&p, Side::Kernel, 2, DEFAULT_ENUM_CAP).unwrap_err();
    assert!(matches!(e, crs_core::Error::Unsupported(_)));
}

#[test]
fn cap_is_enforced() {
    let p = CrsParam::new(2, 1, FinAbGroup::elementary(2, 4).unwrap()).unwrap();
    let e = exact_distribution(&p, Side::Kernel, 3, 100).unwrap_err();
    assert!(matches!(e, crs_core::Error::ResourceLimit { .. }));
}
