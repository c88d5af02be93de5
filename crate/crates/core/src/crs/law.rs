//! Truncated laws of ergodic CRS's on `(Z/n)^coords`.
//!
//! For a parameter `(m, F)` on `A_n` with `F = ⊕_j Z/d_j`, a homomorphism
//! between `(Z/n)^c` and `F` is a `c × s` array of coefficients
//! `a_ij ∈ Z/d_j`. Embedding `Z/d_j ↪ Z/n` by `x ↦ (n/d_j)·x` turns it
//! into a matrix `A` over `Z/n`:
//!
//! * kernel side: `h(x) = x·A`, random subgroup `m·(Z/n)^c ∩ Ker(h)`;
//! * annihilator side: the summand generators go to the columns of `A`,
//!   random subgroup `Ann(m·(Z/n)^c) + h(F)`.
//!
//! Uniform coefficients give Haar measure on both Hom spaces, and the two
//! sides are exchanged by the annihilator map.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::param::CrsParam;
use super::subgroup::{is_unimodular, TruncSubgroup};
use crate::error::{check_cap, domain, Error, Result};

/// Which of the two dual random-subgroup models to realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `m·A_n ∩ Ker(h)` for `h ∈ Hom(A_n, F)`.
    Kernel,
    /// `Ann(m·A_n) + h(F)` for `h ∈ Hom(F, Â_n)`.
    Annihilator,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ker" | "kernel" => Ok(Side::Kernel),
            "ann" | "annihilator" => Ok(Side::Annihilator),
            _ => Err(Error::Parse(format!("unknown side `{s}` (expected ker or ann)"))),
        }
    }
}

/// `N / gcd(m, N) · (Z/N)^k`, the annihilator of `m·(Z/N)^k`.
pub fn ann_of_multiple(m: u64, modulus: u64, rank: usize) -> TruncSubgroup {
    let d = modulus / num_integer::gcd(m, modulus);
    TruncSubgroup::multiple(d, modulus, rank)
}

fn require_finite(param: &CrsParam) -> Result<u64> {
    match param.ambient_n() {
        0 => Err(Error::Unsupported(format!(
            "parameter {param} lives on the infinite group A (n = 0), which has no finite \
             truncation to sample from; use an ambient n >= 1"
        ))),
        n => Ok(n),
    }
}

struct HomShape {
    n: u64,
    coords: usize,
    orders: Vec<u64>,
}

impl HomShape {
    fn new(param: &CrsParam, coords: usize) -> Result<Self> {
        let n = require_finite(param)?;
        Ok(Self {
            n,
            coords,
            orders: param.group().cyclic_orders(),
        })
    }

    fn total(&self) -> BigUint {
        self.orders
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * num_traits::pow(BigUint::from(d), self.coords))
    }

    /// `coeffs[i*s + j] ∈ Z/d_j` → matrix over `Z/n`.
    fn matrix(&self, coeffs: &[u64]) -> Vec<Vec<u64>> {
        let s = self.orders.len();
        (0..self.coords)
            .map(|i| {
                (0..s)
                    .map(|j| coeffs[i * s + j] * (self.n / self.orders[j]) % self.n)
                    .collect()
            })
            .collect()
    }

    fn subgroup(&self, param: &CrsParam, side: Side, coeffs: &[u64]) -> TruncSubgroup {
        let a = self.matrix(coeffs);
        let (n, c, s) = (self.n, self.coords, self.orders.len());
        match side {
            Side::Kernel => {
                let ker = TruncSubgroup::from_generators(
                    n,
                    c,
                    &super::howell::left_kernel(&a, c, s, n),
                )
                .expect("kernel rows have the right width");
                let scaled = TruncSubgroup::multiple(param.m(), n, c);
                scaled.intersect(&ker).expect("same shape")
            }
            Side::Annihilator => {
                let cols: Vec<Vec<u64>> = (0..s).map(|j| (0..c).map(|i| a[i][j]).collect()).collect();
                let image = TruncSubgroup::from_generators(n, c, &cols).expect("right width");
                ann_of_multiple(param.m(), n, c).sum(&image).expect("same shape")
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let s = self.orders.len();
        (0..self.coords * s)
            .map(|idx| rng.gen_range(0..self.orders[idx % s]))
            .collect()
    }
}

/// Draws `m·(Z/n)^coords ∩ Ker(h)` with `h` Haar-random in `Hom((Z/n)^coords, F)`.
pub fn sample_kernel_side<R: Rng + ?Sized>(
    param: &CrsParam,
    coords: usize,
    rng: &mut R,
) -> Result<TruncSubgroup> {
    let shape = HomShape::new(param, coords)?;
    let coeffs = shape.sample(rng);
    Ok(shape.subgroup(param, Side::Kernel, &coeffs))
}

/// Draws `Ann(m·(Z/n)^coords) + h(F)` with `h` Haar-random in `Hom(F, (Z/n)^coords)`.
pub fn sample_annihilator_side<R: Rng + ?Sized>(
    param: &CrsParam,
    coords: usize,
    rng: &mut R,
) -> Result<TruncSubgroup> {
    let shape = HomShape::new(param, coords)?;
    let coeffs = shape.sample(rng);
    Ok(shape.subgroup(param, Side::Annihilator, &coeffs))
}

pub fn sample(param: &CrsParam, side: Side, coords: usize, rng: &mut impl Rng) -> Result<TruncSubgroup> {
    match side {
        Side::Kernel => sample_kernel_side(param, coords, rng),
        Side::Annihilator => sample_annihilator_side(param, coords, rng),
    }
}

/// An exact probability measure on subgroups of `(Z/N)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDistribution {
    modulus: u64,
    rank: usize,
    entries: BTreeMap<TruncSubgroup, BigRational>,
}

impl SubgroupDistribution {
    /// Builds a distribution from weights; they must be positive, match the
    /// shape, and sum to exactly one. Repeated keys are merged.
    pub fn new(
        modulus: u64,
        rank: usize,
        weights: impl IntoIterator<Item = (TruncSubgroup, BigRational)>,
    ) -> Result<Self> {
        let mut entries: BTreeMap<TruncSubgroup, BigRational> = BTreeMap::new();
        for (s, p) in weights {
            if s.modulus() != modulus || s.rank() != rank {
                return domain(format!("entry {s} does not live in (Z/{modulus})^{rank}"));
            }
            if !p.is_positive() {
                return domain(format!("probability {p} of {s} is not positive"));
            }
            *entries.entry(s).or_insert_with(BigRational::zero) += p;
        }
        let total: BigRational = entries.values().sum();
        if !total.is_one() {
            return domain(format!("probabilities sum to {total}, not 1"));
        }
        Ok(Self {
            modulus,
            rank,
            entries,
        })
    }

    pub fn point_mass(s: TruncSubgroup) -> Self {
        Self {
            modulus: s.modulus(),
            rank: s.rank(),
            entries: BTreeMap::from([(s, BigRational::one())]),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn entries(&self) -> &BTreeMap<TruncSubgroup, BigRational> {
        &self.entries
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn prob(&self, s: &TruncSubgroup) -> BigRational {
        self.entries.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Image measure under `f`, re-aggregated over canonical keys.
    pub fn pushforward(&self, mut f: impl FnMut(&TruncSubgroup) -> Result<TruncSubgroup>) -> Result<Self> {
        let mut out: BTreeMap<TruncSubgroup, BigRational> = BTreeMap::new();
        for (s, p) in &self.entries {
            let t = f(s)?;
            if t.modulus() != self.modulus || t.rank() != self.rank {
                return domain("pushforward must stay in the same ambient group");
            }
            *out.entry(t).or_insert_with(BigRational::zero) += p;
        }
        Ok(Self {
            modulus: self.modulus,
            rank: self.rank,
            entries: out,
        })
    }

    /// Pushforward by the annihilator map.
    pub fn pushforward_ann(&self) -> Self {
        self.pushforward(|s| Ok(s.annihilator()))
            .expect("annihilator preserves the ambient group")
    }

    /// Pushforward by `x ↦ x·U`; `U` must be invertible modulo `N`.
    pub fn apply_automorphism(&self, u: &[Vec<u64>]) -> Result<Self> {
        if u.len() != self.rank || u.iter().any(|r| r.len() != self.rank) {
            return domain("automorphism matrix has the wrong shape");
        }
        if !is_unimodular(u, self.modulus) {
            return domain(format!("matrix is not invertible modulo {}", self.modulus));
        }
        self.pushforward(|s| s.map_by(u))
    }

    /// Total-variation distance `½ Σ |p(S) − q(S)|`.
    pub fn tv_distance(&self, other: &Self) -> Result<BigRational> {
        if self.modulus != other.modulus || self.rank != other.rank {
            return domain("distributions live on different ambient groups");
        }
        let mut total = BigRational::zero();
        for (s, p) in &self.entries {
            total += (p - other.prob(s)).abs();
        }
        for (s, q) in &other.entries {
            if !self.entries.contains_key(s) {
                total += q;
            }
        }
        Ok(total / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DistributionDoc::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DistributionDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }
}

impl fmt::Display for SubgroupDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, p) in &self.entries {
            writeln!(f, "{p}\t{s}")?;
        }
        Ok(())
    }
}

/// Wire form of one distribution entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryDoc {
    pub gens: Vec<Vec<u64>>,
    pub prob: String,
}

/// Wire form of a [`SubgroupDistribution`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionDoc {
    pub modulus: u64,
    pub rank: usize,
    pub entries: Vec<EntryDoc>,
}

/// `num/den` in lowest terms (`den` always present).
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl From<&SubgroupDistribution> for DistributionDoc {
    fn from(d: &SubgroupDistribution) -> Self {
        DistributionDoc {
            modulus: d.modulus,
            rank: d.rank,
            entries: d
                .entries
                .iter()
                .map(|(s, p)| EntryDoc {
                    gens: s.gens().to_vec(),
                    prob: rational_to_string(p),
                })
                .collect(),
        }
    }
}

impl TryFrom<DistributionDoc> for SubgroupDistribution {
    type Error = Error;
    fn try_from(doc: DistributionDoc) -> Result<Self> {
        let mut weights = Vec::new();
        for e in doc.entries {
            let s = TruncSubgroup::from_howell(doc.modulus, doc.rank, e.gens)?;
            weights.push((s, parse_rational(&e.prob)?));
        }
        SubgroupDistribution::new(doc.modulus, doc.rank, weights)
    }
}

/// The exact truncated law, by enumerating every homomorphism with equal weight.
pub fn exact_distribution(
    param: &CrsParam,
    side: Side,
    coords: usize,
    cap: u64,
) -> Result<SubgroupDistribution> {
    let shape = HomShape::new(param, coords)?;
    let total = shape.total();
    check_cap("homomorphism enumeration", &total, cap)?;
    let s = shape.orders.len();
    let radices: Vec<u64> = (0..coords * s).map(|idx| shape.orders[idx % s]).collect();
    let mut counts: BTreeMap<TruncSubgroup, u64> = BTreeMap::new();
    let mut digits = vec![0u64; radices.len()];
    loop {
        *counts.entry(shape.subgroup(param, side, &digits)).or_insert(0) += 1;
        let mut carry = true;
        for (d, &r) in digits.iter_mut().zip(&radices).rev() {
            *d += 1;
            if *d < r {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            break;
        }
    }
    let total = BigInt::from(total);
    let weights = counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), total.clone())));
    SubgroupDistribution::new(shape.n, coords, weights)
}

/// A generating set of `GL_c(Z/n)` used for invariance checks: all
/// coordinate permutations, the transvection `x_1 ← x_1 + x_2`, and the
/// scaling of `x_1` by the smallest unit `> 1` (when one exists).
pub fn gl_generators(coords: usize, n: u64) -> Vec<Vec<Vec<u64>>> {
    let identity = |c: usize| -> Vec<Vec<u64>> {
        (0..c).map(|i| (0..c).map(|j| u64::from(i == j)).collect()).collect()
    };
    let mut out = Vec::new();
    for perm in permutations(coords) {
        let mut m = vec![vec![0u64; coords]; coords];
        for (i, &j) in perm.iter().enumerate() {
            m[i][j] = 1;
        }
        out.push(m);
    }
    if coords >= 2 {
        let mut t = identity(coords);
        t[1][0] = 1;
        out.push(t);
    }
    if let Some(u) = (2..n).find(|&u| num_integer::gcd(u, n) == 1) {
        if coords >= 1 {
            let mut d = identity(coords);
            d[0][0] = u;
            out.push(d);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
