//! q-analog counting: `s_n`, `t_n = |GL_n(q)|`, Gaussian binomials and
//! rank counts, plus the intersection-dimension probabilities built on them.
//!
//! These treat `q` purely as an integer `>= 2`; nothing here needs field
//! arithmetic.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

fn big_pow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// `s_n = (q^n - 1)(q^{n-1} - 1)···(q - 1)`, with `s_0 = 1`.
pub fn s_seq(n: u64, q: u64) -> BigUint {
    assert!(q >= 2, "q must be at least 2");
    let qb = BigUint::from(q);
    let mut power = BigUint::one();
    let mut acc = BigUint::one();
    for _ in 0..n {
        power *= &qb;
        acc *= &power - 1u32;
    }
    acc
}

/// `t_n = (q^n - 1)(q^n - q)···(q^n - q^{n-1})`, the order of `GL_n(q)`.
pub fn t_seq(n: u64, q: u64) -> BigUint {
    assert!(q >= 2, "q must be at least 2");
    let qn = big_pow(q, n);
    let mut qi = BigUint::one();
    let mut acc = BigUint::one();
    for _ in 0..n {
        acc *= &qn - &qi;
        qi *= q;
    }
    acc
}

/// `d_{n,k} = s_n / (s_{n-k} s_k)`, the number of k-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if k > n {
        return domain(format!("gaussian_binomial needs k <= n, got k={k}, n={n}"));
    }
    let den = s_seq(n - k, q) * s_seq(k, q);
    let num = s_seq(n, q);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Number of `κ×n` matrices over `F_q` of rank `r`:
/// `q^{r(r-1)/2} s_κ s_n / (s_r s_{κ-r} s_{n-r})`.
pub fn rank_count(kappa: u64, n: u64, r: u64, q: u64) -> Result<BigUint> {
    if r > kappa.min(n) {
        return domain(format!(
            "rank {r} exceeds min(kappa, n) = {}",
            kappa.min(n)
        ));
    }
    let num = big_pow(q, r * r.saturating_sub(1) / 2) * s_seq(kappa, q) * s_seq(n, q);
    let den = s_seq(r, q) * s_seq(kappa - r, q) * s_seq(n - r, q);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Probability that the Haar-random kernel of `h : ⊕F_q → F_q^κ` meets the
/// first `n` coordinates in dimension `k`. Zero unless `n >= k` and
/// `κ >= n - k`.
pub fn vtilde(n: u64, k: u64, kappa: u64, q: u64) -> BigRational {
    if k > n || kappa < n - k {
        return BigRational::zero();
    }
    let count = rank_count(kappa, n, n - k, q).expect("rank n-k is admissible");
    BigRational::new(count.into(), big_pow(q, kappa * n).into())
}

/// Probability of one particular `k`-dimensional subspace: `ṽ_{n,k} / d_{n,k}`.
pub fn v_small(n: u64, k: u64, kappa: u64, q: u64) -> Result<BigRational> {
    let d = gaussian_binomial(n, k, q)?;
    Ok(vtilde(n, k, kappa, q) / BigRational::from_integer(d.into()))
}

/// The closed form `q^{(n-k)(n-k-1)/2 - κn} s_κ s_n / (s_{n-k} s_{κ-n+k} s_k)`,
/// evaluated independently of [`rank_count`]. Requires `n >= k` and `κ >= n - k`.
pub fn vtilde_closed_form(n: u64, k: u64, kappa: u64, q: u64) -> Result<BigRational> {
    if k > n || kappa < n - k {
        return domain("closed form needs n >= k and kappa >= n - k");
    }
    let r = n - k;
    let num = s_seq(kappa, q) * s_seq(n, q);
    let den = s_seq(r, q) * s_seq(kappa - r, q) * s_seq(k, q);
    let frac = BigRational::new(num.into(), den.into());
    let up = r * r.saturating_sub(1) / 2;
    let down = kappa * n;
    let scale = if up >= down {
        BigRational::from_integer(big_pow(q, up - down).into())
    } else {
        BigRational::new(1.into(), big_pow(q, down - up).into())
    };
    Ok(frac * scale)
}

/// `v_{n,k}` via its simplified form `q^{(n-k)(n-k-1)/2 - κn} s_κ / s_{κ-n+k}`.
pub fn v_small_simplified(n: u64, k: u64, kappa: u64, q: u64) -> Result<BigRational> {
    if k > n {
        return domain("v needs k <= n");
    }
    if kappa < n - k {
        return Ok(BigRational::zero());
    }
    let r = n - k;
    let frac = BigRational::new(s_seq(kappa, q).into(), s_seq(kappa - r, q).into());
    let up = r * r.saturating_sub(1) / 2;
    let down = kappa * n;
    Ok(if up >= down {
        frac * BigRational::from_integer(big_pow(q, up - down).into())
    } else {
        frac / BigRational::from_integer(big_pow(q, down - up).into())
    })
}
