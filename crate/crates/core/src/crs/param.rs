use std::fmt;

use super::subgroup::TruncSubgroup;
use crate::error::{domain, Result};
use crate::finab::numtheory::divisors;
use crate::finab::{groups_up_to, FinAbGroup};

/// An ergodic CRS parameter `(m, [F])` on the ambient group `A_n` (or its
/// dual). `ambient_n = 0` stands for the untwisted groups `A` / `Â`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrsParam {
    ambient_n: u64,
    m: u64,
    group: FinAbGroup,
}

/// `a | b` with the convention that every `a` divides 0 and 0 divides only 0.
pub fn divides(a: u64, b: u64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b.is_multiple_of(a)
    }
}

impl CrsParam {
    /// Validates the three parameter constraints.
    pub fn new(ambient_n: u64, m: u64, group: FinAbGroup) -> Result<Self> {
        if !divides(m, ambient_n) {
            return domain(format!("m must divide n (m = {m}, n = {ambient_n})"));
        }
        if !group.is_killed_by(ambient_n) {
            return domain(format!("nF must vanish (n = {ambient_n}, F = {group})"));
        }
        if !group.is_over(m) {
            return domain(format!("F must be over m (m = {m}, F = {group})"));
        }
        Ok(Self { ambient_n, m, group })
    }

    pub fn ambient_n(&self) -> u64 {
        self.ambient_n
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Smallest modulus `N` on which the annihilator-side law of this
    /// parameter is faithfully truncated: the ambient `n` if positive,
    /// otherwise `lcm(m, exponent(F))` (the law lives in `(Z[1/N]/Z)^k`).
    pub fn truncation_modulus(&self) -> u64 {
        if self.ambient_n > 0 {
            self.ambient_n
        } else {
            num_integer::lcm(self.m.max(1), self.group.exponent())
        }
    }
}

impl fmt::Display for CrsParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.is_trivial() {
            write!(f, "({}, trivial)", self.m)
        } else {
            write!(f, "({}, {})", self.m, self.group)
        }
    }
}

/// All parameters on `A_n` with `|F| <= max_order`, sorted by `m` then `F`.
///
/// For `n = 0` the parameter set is infinite; `m` is then restricted to
/// `0..=max_order`.
pub fn enumerate_params(n: u64, max_order: u64) -> Vec<CrsParam> {
    let groups = groups_up_to(max_order);
    let ms: Vec<u64> = if n == 0 {
        (0..=max_order).collect()
    } else {
        divisors(n).expect("n >= 1")
    };
    let mut out = Vec::new();
    for m in ms {
        for g in &groups {
            if let Ok(p) = CrsParam::new(n, m, g.clone()) {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| a.m.cmp(&b.m).then_with(|| a.group.cmp(&b.group)));
    out
}

/// A characteristic subgroup of `A_n`: the zero subgroup or `r·A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CharSubgroup {
    Zero,
    Multiple(u64),
}

impl CharSubgroup {
    /// Its truncation to `(Z/N)^k`.
    pub fn truncate(self, modulus: u64, rank: usize) -> TruncSubgroup {
        match self {
            CharSubgroup::Zero => TruncSubgroup::zero(modulus, rank),
            CharSubgroup::Multiple(r) => TruncSubgroup::multiple(r, modulus, rank),
        }
    }
}

impl fmt::Display for CharSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSubgroup::Zero => write!(f, "0"),
            CharSubgroup::Multiple(r) => write!(f, "{r}"),
        }
    }
}

/// Characteristic subgroups of `A_n`: `{0} ∪ {r·A_n : r | n}`. For `n = 0`
/// the family `{r·A : r >= 0}` is cut off at `bound`.
pub fn char_subgroups(n: u64, bound: u64) -> Vec<CharSubgroup> {
    if n == 0 {
        return (0..=bound).map(CharSubgroup::Multiple).collect();
    }
    let mut out = vec![CharSubgroup::Zero];
    out.extend(divisors(n).expect("n >= 1").into_iter().map(CharSubgroup::Multiple));
    out
}
