//! Distribution of `dim(Ker(h) ∩ V_n)` for a Haar-random `h : ⊕F_q → F_q^κ`.
//!
//! Only the restriction of `h` to the first `n` coordinates matters, and that
//! restriction is a uniform `κ × n` matrix whose kernel has dimension
//! `n − rank`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{check_cap, Result};
use crate::qlinalg::{enumerate_matrices, sample_uniform_matrix, vtilde, FieldSpec};
use crate::rng;

use super::law::rational_to_string;

/// Samples per derived RNG stream in Monte Carlo runs.
pub const SAMPLES_PER_STREAM: u64 = 1 << 14;

/// How to evaluate the marginal.
#[derive(Debug, Clone, Copy)]
pub enum MarginalMode {
    /// Enumerate all `q^{κn}` matrices.
    Exact { cap: u64 },
    /// Draw `samples` uniform matrices from the streams of `seed`.
    MonteCarlo { samples: u64, seed: u64, workers: usize },
}

/// Exact probabilities or empirical frequencies, indexed by `k = 0..=n`.
pub fn intersection_dim_distribution(
    q: u64,
    kappa: usize,
    n: usize,
    mode: MarginalMode,
) -> Result<Vec<BigRational>> {
    let field = FieldSpec::new(q)?;
    let counts = match mode {
        MarginalMode::Exact { cap } => {
            let mut counts = vec![0u64; n + 1];
            for m in enumerate_matrices(kappa, n, &field, cap)? {
                counts[n - m.rank()] += 1;
            }
            counts
        }
        MarginalMode::MonteCarlo {
            samples,
            seed,
            workers,
        } => kernel_dim_counts(&field, kappa, n, samples, seed, workers),
    };
    let total: u64 = counts.iter().sum();
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(total)))
        .collect())
}

/// Kernel-dimension histogram over `samples` uniform matrices.
///
/// Samples are split into fixed-size chunks; chunk `i` draws from stream `i`
/// of `seed`, so the histogram is the same for any worker count.
pub fn kernel_dim_counts(
    field: &FieldSpec,
    kappa: usize,
    n: usize,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Vec<u64> {
    let chunks = samples.div_ceil(SAMPLES_PER_STREAM);
    let run_chunk = |chunk: u64| -> Vec<u64> {
        let mut rng = rng::stream(seed, chunk);
        let start = chunk * SAMPLES_PER_STREAM;
        let len = SAMPLES_PER_STREAM.min(samples - start);
        let mut counts = vec![0u64; n + 1];
        for _ in 0..len {
            counts[n - sample_uniform_matrix(kappa, n, field, &mut rng).rank()] += 1;
        }
        counts
    };
    let workers = workers.max(1) as u64;
    let partials: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers.min(chunks.max(1)))
            .map(|w| {
                let run_chunk = &run_chunk;
                scope.spawn(move || {
                    let mut acc = vec![0u64; n + 1];
                    let mut chunk = w;
                    while chunk < chunks {
                        for (a, c) in acc.iter_mut().zip(run_chunk(chunk)) {
                            *a += c;
                        }
                        chunk += workers;
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut total = vec![0u64; n + 1];
    for p in partials {
        for (t, c) in total.iter_mut().zip(p) {
            *t += c;
        }
    }
    total
}

/// One row of a marginal comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalRow {
    pub k: usize,
    pub exact: BigRational,
    pub empirical: Option<BigRational>,
}

impl MarginalRow {
    pub fn abs_err(&self) -> Option<BigRational> {
        self.empirical.as_ref().map(|e| (e - &self.exact).abs())
    }

    /// Normal-approximation z-score of the empirical bin against `exact`
    /// with `samples` draws. Zero-variance bins report 0 when they match and
    /// infinity otherwise.
    pub fn z_score(&self, samples: u64) -> Option<f64> {
        let e = self.empirical.as_ref()?;
        let p = self.exact.to_f64()?;
        let diff = (e - &self.exact).abs().to_f64()?;
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        Some(if sigma == 0.0 {
            if diff == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            diff / sigma
        })
    }
}

/// Rows `k = 0..=n` with the closed-form `ṽ_{n,k}` and optional empirical column.
pub fn marginal_table(
    q: u64,
    kappa: usize,
    n: usize,
    empirical: Option<&[BigRational]>,
) -> Vec<MarginalRow> {
    (0..=n)
        .map(|k| MarginalRow {
            k,
            exact: vtilde(n as u64, k as u64, kappa as u64, q),
            empirical: empirical.map(|e| e[k].clone()),
        })
        .collect()
}

/// CSV with header `k,exact,empirical,abs_err`; empty cells when no samples.
pub fn marginal_csv(rows: &[MarginalRow]) -> String {
    let mut out = String::from("k,exact,empirical,abs_err\n");
    for r in rows {
        let emp = r.empirical.as_ref().map(rational_to_string).unwrap_or_default();
        let err = r.abs_err().as_ref().map(rational_to_string).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", r.k, rational_to_string(&r.exact), emp, err));
    }
    out
}

/// Exact mode with a cap check but no allocation of the matrices themselves.
pub fn check_exact_cap(q: u64, kappa: usize, n: usize, cap: u64) -> Result<()> {
    let total = num_traits::pow(num_bigint::BigUint::from(q), kappa * n);
    check_cap("matrix enumeration", &total, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_ENUM_CAP;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_2x2_over_f2() {
        let d = intersection_dim_distribution(2, 2, 2, MarginalMode::Exact { cap: DEFAULT_ENUM_CAP })
            .unwrap();
        assert_eq!(d, vec![r(6, 16), r(9, 16), r(1, 16)]);
    }

    #[test]
    fn exact_matches_formula_small() {
        for q in [2u64, 3, 4] {
            for kappa in 0..=3 {
                for n in 0..=3 {
                    let d = intersection_dim_distribution(
                        q,
                        kappa,
                        n,
                        MarginalMode::Exact { cap: DEFAULT_ENUM_CAP },
                    )
                    .unwrap();
                    let rows = marginal_table(q, kappa, n, None);
                    for row in rows {
                        assert_eq!(d[row.k], row.exact, "q={q} kappa={kappa} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn monte_carlo_independent_of_workers() {
        let f = FieldSpec::new(2).unwrap();
        let a = kernel_dim_counts(&f, 3, 3, 40_000, 9, 1);
        let b = kernel_dim_counts(&f, 3, 3, 40_000, 9, 4);
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 40_000);
        assert_ne!(a, kernel_dim_counts(&f, 3, 3, 40_000, 10, 4));
    }

    #[test]
    fn csv_layout() {
        let rows = marginal_table(2, 1, 1, Some(&[r(1, 2), r(1, 2)]));
        assert_eq!(marginal_csv(&rows), "k,exact,empirical,abs_err\n0,1/2,1/2,0/1\n1,1/2,1/2,0/1\n");
        let rows = marginal_table(2, 1, 1, None);
        assert_eq!(marginal_csv(&rows), "k,exact,empirical,abs_err\n0,1/2,,\n1,1/2,,\n");
    }

    #[test]
    fn bad_field_and_cap() {
        assert!(intersection_dim_distribution(6, 1, 1, MarginalMode::Exact { cap: 10 }).is_err());
        assert!(intersection_dim_distribution(2, 5, 5, MarginalMode::Exact { cap: 1000 }).is_err());
    }
}
