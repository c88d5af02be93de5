use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crs_core::error::DEFAULT_ENUM_CAP;
use crs_core::finab::numtheory::{divisors, gcd, is_prime, totient};
use crs_core::torus2::{
    alpha, beta, beta_product_ratio, count_generating_pairs, decompose_tau,
    generating_tuple_count, generating_tuple_ratio, partial_euler_product,
};

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn beta_examples() {
    assert_eq!(beta(1).unwrap(), big(1));
    assert_eq!(beta(6).unwrap(), big(24));
    assert_eq!(beta(4).unwrap(), big(12));
    for p in (2..60u64).filter(|&p| is_prime(p)) {
        assert_eq!(beta(p).unwrap(), big(p * p - 1));
    }
    assert!(beta(0).is_err());
}

#[test]
fn alpha_examples() {
    assert_eq!(alpha(1, 2).unwrap(), r(-1, 3));
    assert_eq!(alpha(2, 4).unwrap(), r(-1, 3));
    assert!(alpha(1, 4).unwrap().is_zero());
    for n in 1..=30u64 {
        let b = BigInt::from(beta(n).unwrap());
        assert_eq!(alpha(n, n).unwrap(), BigRational::new(BigInt::from(n * n), b));
    }
    assert!(alpha(3, 4).is_err());
    assert!(alpha(0, 4).is_err());
}

#[test]
fn beta_counts_generating_pairs() {
    assert_eq!(count_generating_pairs(2, DEFAULT_ENUM_CAP).unwrap(), big(3));
    assert_eq!(count_generating_pairs(6, DEFAULT_ENUM_CAP).unwrap(), big(24));
    for n in 1..=100 {
        assert_eq!(beta(n).unwrap(), count_generating_pairs(n, DEFAULT_ENUM_CAP).unwrap(), "r={n}");
    }
    assert!(count_generating_pairs(100, 9_999).is_err());
}

#[test]
fn alphas_sum_to_one() {
    for n in 1..=200u64 {
        let s: BigRational = divisors(n).unwrap().into_iter().map(|k| alpha(k, n).unwrap()).sum();
        assert!(s.is_one(), "r={n}");
    }
}

#[test]
fn beta_is_multiplicative() {
    for a in 1..=50u64 {
        for b in 1..=50u64 {
            if gcd(a, b) == 1 {
                assert_eq!(beta(a * b).unwrap(), beta(a).unwrap() * beta(b).unwrap());
            }
        }
    }
}

#[test]
fn tau_decomposes_exactly() {
    for n in 1..=60 {
        let rep = decompose_tau(n, DEFAULT_ENUM_CAP).unwrap();
        assert!(rep.is_exact(), "r={n}: {}", rep.max_discrepancy);
        assert_eq!(rep.points_checked, n * n);
    }
    assert!(decompose_tau(12, 100).is_err());
}

#[test]
fn beta_ratio_examples() {
    assert!(beta_product_ratio(1).unwrap().is_one());
    assert_eq!(beta_product_ratio(4).unwrap(), r(3, 4));
    assert_eq!(beta_product_ratio(30).unwrap(), r(3, 4) * r(8, 9) * r(24, 25));
}

#[test]
fn beta_bounded_below_by_quadratic() {
    // 58793/100000 exceeds 6/π² − 0.02 ≈ 0.5879271
    let floor = partial_euler_product(10_000);
    assert!(floor > r(58793, 100_000));
    for n in 1..=10_000u64 {
        let b = beta(n).unwrap();
        assert!(b.clone() * 100_000u64 >= BigUint::from(58_793u64) * n * n, "r={n}");
        if n % 97 == 0 {
            assert!(beta_product_ratio(n).unwrap() >= floor);
        }
    }
}

#[test]
fn tuple_counts_agree() {
    for m in 1..=100u64 {
        assert_eq!(generating_tuple_count(m, 2).unwrap(), beta(m).unwrap());
        assert_eq!(generating_tuple_count(m, 1).unwrap(), big(totient(m)));
    }
}

#[test]
fn tuple_count_matches_brute_force() {
    for m in 1..=12u64 {
        for k in 1..=3u32 {
            let total = m.pow(k);
            let count = (0..total)
                .filter(|&idx| {
                    let mut g = m;
                    let mut t = idx;
                    for _ in 0..k {
                        g = gcd(g, t % m);
                        t /= m;
                    }
                    g == 1
                })
                .count() as u64;
            assert_eq!(generating_tuple_count(m, k).unwrap(), big(count), "m={m} k={k}");
        }
    }
}

#[test]
fn tuple_ratio_increases_to_one() {
    for m in [2u64, 6, 12, 30, 97] {
        let ratios: Vec<BigRational> =
            (1..=12).map(|k| generating_tuple_ratio(m, k).unwrap()).collect();
        assert!(ratios.windows(2).all(|w| w[0] <= w[1]), "m={m}");
        for (i, ratio) in ratios.iter().enumerate() {
            let k = i as u32 + 1;
            let slack: BigRational = divisors(m)
                .unwrap()
                .into_iter()
                .filter(|&d| d < m)
                .map(|d| num_traits::pow(r(d as i64, m as i64), k as usize))
                .sum();
            assert!(*ratio >= BigRational::one() - slack);
        }
    }
}

proptest! {
    #[test]
    fn beta_ratio_is_prime_product(n in 1u64..5000) {
        prop_assert!(beta_product_ratio(n).is_ok());
    }
}
