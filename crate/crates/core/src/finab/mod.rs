//! Finite abelian groups in canonical primary decomposition.
//!
//! A group is stored as the sorted multiset of its prime-power cyclic
//! factors, so structural equality is isomorphism.

pub mod numtheory;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{domain, Error, Result};
use numtheory::{factorize, gcd, is_prime, lcm, valuation};

/// A cyclic factor `Z/p^r` with `p` prime and `r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub r: u32,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if r == 0 {
            return domain("prime power exponent must be positive");
        }
        Ok(Self { p, r })
    }

    /// Parses a prime power given as its value, e.g. `8 -> 2^3`.
    pub fn from_value(q: u64) -> Result<Self> {
        match numtheory::prime_power(q) {
            Some((p, r)) => Ok(Self { p, r }),
            None => domain(format!("{q} is not a prime power")),
        }
    }

    pub fn value(self) -> u64 {
        self.p.checked_pow(self.r).expect("prime power overflows u64")
    }
}

/// A finite abelian group `⊕ Z/p_i^{r_i}` up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    summands: Vec<PrimePower>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from already-validated prime powers, sorting them.
    pub fn from_prime_powers(mut summands: Vec<PrimePower>) -> Self {
        summands.sort();
        Self { summands }
    }

    /// `(Z/d)^count` for a prime power `d`.
    pub fn elementary(d: u64, count: usize) -> Result<Self> {
        let pp = PrimePower::from_value(d)?;
        Ok(Self::from_prime_powers(vec![pp; count]))
    }

    pub fn summands(&self) -> &[PrimePower] {
        &self.summands
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.summands
            .iter()
            .try_fold(1u64, |acc, s| acc.checked_mul(s.value()))
            .expect("group order overflows u64")
    }

    /// Least common multiple of the summand orders; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.summands.iter().fold(1, |acc, s| lcm(acc, s.value()))
    }

    /// Maximal element order, which equals the exponent for abelian groups.
    pub fn maxorder(&self) -> u64 {
        self.exponent()
    }

    /// True iff no nontrivial summand is killed by `m`. Only the trivial
    /// group is over 0.
    pub fn is_over(&self, m: u64) -> bool {
        if self.is_trivial() {
            return true;
        }
        if m == 0 {
            return false;
        }
        self.summands.iter().all(|s| !m.is_multiple_of(s.value()))
    }

    /// Does `n` annihilate the group (`nF = 0`)? Every group is killed by 0.
    pub fn is_killed_by(&self, n: u64) -> bool {
        n == 0 || n.is_multiple_of(self.exponent())
    }

    /// The n-torsion subgroup `{x : nx = 0}`. By convention `n = 0` yields
    /// the trivial group.
    pub fn n_torsion(&self, n: u64) -> FinAbGroup {
        if n == 0 {
            return FinAbGroup::trivial();
        }
        let orders: Vec<u64> = self.summands.iter().map(|s| gcd(n, s.value())).collect();
        canonicalize(&orders).expect("gcd orders are positive")
    }

    /// `F / F_(n)`, which is `⊕ Z/(lcm(n, p^r)/n)`.
    pub fn quotient_by_n_torsion(&self, n: u64) -> Result<FinAbGroup> {
        if n == 0 {
            return domain("quotient by 0-torsion requires n >= 1");
        }
        let orders: Vec<u64> = self
            .summands
            .iter()
            .map(|s| lcm(n, s.value()) / n)
            .collect();
        canonicalize(&orders)
    }

    /// The unique `F` over `n` with `F / F_(n) ≅ self`: each summand
    /// `Z/p^t` becomes `Z/p^{t+k}` where `p^k` exactly divides `n`.
    pub fn lift_over(&self, n: u64) -> Result<FinAbGroup> {
        if n == 0 {
            if self.is_trivial() {
                return Ok(FinAbGroup::trivial());
            }
            return domain("no group over 0 has a nontrivial quotient");
        }
        let lifted = self
            .summands
            .iter()
            .map(|s| PrimePower {
                p: s.p,
                r: s.r + valuation(n, s.p),
            })
            .collect();
        Ok(FinAbGroup::from_prime_powers(lifted))
    }

    /// `|Hom(self, other)| = ∏ gcd(|G_i|, |H_j|)`.
    pub fn hom_count(&self, other: &FinAbGroup) -> BigUint {
        let mut acc = BigUint::one();
        for a in &self.summands {
            for b in &other.summands {
                acc *= gcd(a.value(), b.value());
            }
        }
        acc
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut all = self.summands.clone();
        all.extend_from_slice(&other.summands);
        FinAbGroup::from_prime_powers(all)
    }

    /// Summand orders, in canonical order.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        self.summands.iter().map(|s| s.value()).collect()
    }

    /// Compact tuple form, e.g. `[2,4,3]`.
    pub fn to_tuple_string(&self) -> String {
        let parts: Vec<String> = self.cyclic_orders().iter().map(u64::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Ord for FinAbGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.summands.cmp(&other.summands))
    }
}

impl PartialOrd for FinAbGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Splits each `Z/d` into prime-power factors and sorts them.
pub fn canonicalize(cyclic_orders: &[u64]) -> Result<FinAbGroup> {
    let mut summands = Vec::new();
    for &d in cyclic_orders {
        if d == 0 {
            return domain("cyclic order 0 (infinite cyclic) is not a finite group");
        }
        for (p, r) in factorize(d) {
            summands.push(PrimePower { p, r });
        }
    }
    Ok(FinAbGroup::from_prime_powers(summands))
}

fn partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every isomorphism class of finite abelian group of order exactly `order`.
pub fn groups_of_order(order: u64) -> Vec<FinAbGroup> {
    let mut acc = vec![Vec::<PrimePower>::new()];
    for (p, e) in factorize(order) {
        let mut next = Vec::new();
        for base in &acc {
            for part in partitions(e, e) {
                let mut s = base.clone();
                s.extend(part.into_iter().map(|r| PrimePower { p, r }));
                next.push(s);
            }
        }
        acc = next;
    }
    let mut out: Vec<FinAbGroup> = acc.into_iter().map(FinAbGroup::from_prime_powers).collect();
    out.sort();
    out
}

/// Every isomorphism class of finite abelian group of order at most `max_order`, sorted.
pub fn groups_up_to(max_order: u64) -> Vec<FinAbGroup> {
    (1..=max_order).flat_map(groups_of_order).collect()
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .cyclic_orders()
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Accepts `Z/2 + Z/4`, `0`, `[2,4]` or `[]`. Composite orders are split.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |what: &str| Error::Parse(format!("bad group `{s}`: {what}"));
        if s == "0" || s == "[]" || s.is_empty() {
            return Ok(FinAbGroup::trivial());
        }
        let orders: Vec<u64> = if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
            inner
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| bad("non-integer order")))
                .collect::<Result<_>>()?
        } else {
            s.split('+')
                .map(|t| {
                    let t = t.trim();
                    let d = t.strip_prefix("Z/").ok_or_else(|| bad("expected `Z/d`"))?;
                    d.trim().parse::<u64>().map_err(|_| bad("non-integer order"))
                })
                .collect::<Result<_>>()?
        };
        canonicalize(&orders).map_err(|e| Error::Parse(e.to_string()))
    }
}
