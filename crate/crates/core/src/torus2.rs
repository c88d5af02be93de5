//! Torsion measures on the 2-torus.
//!
//! The `r`-torsion of `T² = (R/Z)²` is identified with `(Z/r)²` via
//! `a/r ↔ a`. `ν_r` is the Haar (uniform) measure on it and `τ_r` the uniform
//! measure on generating pairs, i.e. pairs with `gcd(x, y, r) = 1`. The
//! identity `τ_r = Σ_{k|r} α(k, r) ν_k` is checked pointwise.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_cap, domain, Error, Result};
use crate::finab::numtheory::{divisors, gcd, is_prime, mobius, prime_divisors};

fn check_r(r: u64) -> Result<()> {
    if r == 0 {
        return domain("r must be at least 1");
    }
    Ok(())
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `β(r) = Σ_{k|r} μ(r/k) k²`, the number of generating pairs of `(Z/r)²`.
pub fn beta(r: u64) -> Result<BigUint> {
    check_r(r)?;
    let mut total = BigInt::zero();
    for k in divisors(r)? {
        total += BigInt::from(mobius(r / k)?) * BigInt::from(k) * BigInt::from(k);
    }
    Ok(total.to_biguint().expect("beta is positive"))
}

/// `α(k, r) = μ(r/k) k² / β(r)` for `k | r`.
pub fn alpha(k: u64, r: u64) -> Result<BigRational> {
    check_r(r)?;
    if k == 0 || !r.is_multiple_of(k) {
        return domain(format!("alpha(k, r) needs k | r (k = {k}, r = {r})"));
    }
    let num = BigInt::from(mobius(r / k)?) * BigInt::from(k) * BigInt::from(k);
    Ok(rat(num, BigInt::from(beta(r)?)))
}

/// Brute-force count of pairs `(x, y) ∈ (Z/r)²` with `gcd(x, y, r) = 1`.
pub fn count_generating_pairs(r: u64, cap: u64) -> Result<BigUint> {
    check_r(r)?;
    check_cap("torsion points", &(BigUint::from(r) * r), cap)?;
    let mut count = 0u64;
    for x in 0..r {
        let gx = gcd(x, r);
        count += (0..r).filter(|&y| gcd(gx, y) == 1).count() as u64;
    }
    Ok(count.into())
}

/// A signed measure on `(Z/r)²`, dense in row-major order of `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionMeasure2 {
    r: u64,
    weights: Vec<BigRational>,
}

impl TorsionMeasure2 {
    /// Haar measure `ν_r`: mass `1/r²` at each point.
    pub fn nu(r: u64) -> Result<Self> {
        check_r(r)?;
        let w = rat(1, BigInt::from(r) * BigInt::from(r));
        Ok(Self {
            r,
            weights: vec![w; (r * r) as usize],
        })
    }

    /// `τ_r`: mass `1/β(r)` on each generating pair.
    pub fn tau(r: u64) -> Result<Self> {
        check_r(r)?;
        let w = rat(1, BigInt::from(beta(r)?));
        let weights = (0..r)
            .flat_map(|x| (0..r).map(move |y| (x, y)))
            .map(|(x, y)| {
                if gcd(gcd(x, y), r) == 1 {
                    w.clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        Ok(Self { r, weights })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn weight(&self, x: u64, y: u64) -> &BigRational {
        &self.weights[((x % self.r) * self.r + y % self.r) as usize]
    }

    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    /// Pushes `ν`-style measure on `(Z/k)²` into `(Z/r)²` along `a ↦ a·r/k`.
    fn embed(&self, r: u64) -> Self {
        let s = r / self.r;
        let mut weights = vec![BigRational::zero(); (r * r) as usize];
        for x in 0..self.r {
            for y in 0..self.r {
                weights[((x * s) * r + y * s) as usize] = self.weight(x, y).clone();
            }
        }
        Self { r, weights }
    }

    fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            *a += c * b;
        }
    }
}

/// Outcome of checking `τ_r = Σ_{k|r} α(k, r) ν_k` pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub r: u64,
    pub alphas: Vec<(u64, BigRational)>,
    pub max_discrepancy: BigRational,
    pub points_checked: u64,
}

impl DecompositionReport {
    pub fn is_exact(&self) -> bool {
        self.max_discrepancy.is_zero()
    }
}

/// Evaluates the combination of `ν_k` on `(Z/r)²` and compares with `τ_r`.
pub fn decompose_tau(r: u64, cap: u64) -> Result<DecompositionReport> {
    check_r(r)?;
    check_cap("torsion points", &(BigUint::from(r) * r), cap)?;
    let mut combo = TorsionMeasure2 {
        r,
        weights: vec![BigRational::zero(); (r * r) as usize],
    };
    let mut alphas = Vec::new();
    for k in divisors(r)? {
        let a = alpha(k, r)?;
        combo.add_scaled(&TorsionMeasure2::nu(k)?.embed(r), &a);
        alphas.push((k, a));
    }
    let tau = TorsionMeasure2::tau(r)?;
    let max_discrepancy = combo
        .weights
        .iter()
        .zip(&tau.weights)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    Ok(DecompositionReport {
        r,
        alphas,
        max_discrepancy,
        points_checked: r * r,
    })
}

/// `β(r)/r²`, checked against `∏_{p|r} (1 − p⁻²)`.
pub fn beta_product_ratio(r: u64) -> Result<BigRational> {
    check_r(r)?;
    let ratio = rat(BigInt::from(beta(r)?), BigInt::from(r) * BigInt::from(r));
    let product: BigRational = prime_divisors(r)
        .into_iter()
        .map(|p| BigRational::one() - rat(1, BigInt::from(p) * BigInt::from(p)))
        .product();
    if ratio != product {
        return Err(Error::Invariant(format!(
            "beta({r})/r^2 = {ratio} but the prime product is {product}"
        )));
    }
    Ok(ratio)
}

/// `∏_{p ≤ bound, p prime} (1 − p⁻²)`, a lower bound for every `β(r)/r²`
/// with all prime factors of `r` at most `bound`.
pub fn partial_euler_product(bound: u64) -> BigRational {
    (2..=bound)
        .filter(|&p| is_prime(p))
        .map(|p| BigRational::one() - rat(1, BigInt::from(p) * BigInt::from(p)))
        .product()
}

/// Number of `k`-tuples generating `Z/m`: `Σ_{d|m} μ(m/d) d^k`.
pub fn generating_tuple_count(m: u64, k: u32) -> Result<BigUint> {
    if m == 0 || k == 0 {
        return domain("generating_tuple_count needs m >= 1 and k >= 1");
    }
    let mut total = BigInt::zero();
    for d in divisors(m)? {
        total += BigInt::from(mobius(m / d)?) * num_traits::pow(BigInt::from(d), k as usize);
    }
    Ok(total.to_biguint().expect("count is nonnegative"))
}

/// `generating_tuple_count(m, k) / m^k`.
pub fn generating_tuple_ratio(m: u64, k: u32) -> Result<BigRational> {
    let count = generating_tuple_count(m, k)?;
    Ok(rat(
        BigInt::from(count),
        num_traits::pow(BigInt::from(m), k as usize),
    ))
}

/// CSV rows `r,beta,beta_over_r2,alpha` for `r = 1..=max_r`; the last column
/// lists `k:α(k,r)` over divisors `k`, separated by `;`.
pub fn beta_table_csv(max_r: u64) -> Result<String> {
    let mut out = String::from("r,beta,beta_over_r2,alpha\n");
    for r in 1..=max_r {
        let alphas: Vec<String> = divisors(r)?
            .into_iter()
            .map(|k| alpha(k, r).map(|a| format!("{k}:{a}")))
            .collect::<Result<_>>()?;
        out.push_str(&format!(
            "{r},{},{},{}\n",
            beta(r)?,
            beta_product_ratio(r)?,
            alphas.join(";")
        ));
    }
    Ok(out)
}
