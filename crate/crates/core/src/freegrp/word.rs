use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::finab::numtheory::is_prime;

/// A reduced word in the free group on `x1, …, x_rank`.
///
/// Stored as syllables `(i, e)` meaning `x_i^e`, with `e ≠ 0` and adjacent
/// syllables on different generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<(usize, i64)>,
}

fn push_syllable(out: &mut Vec<(usize, i64)>, (g, e): (usize, i64)) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.0 == g => {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        Self {
            rank,
            syllables: Vec::new(),
        }
    }

    /// The generator `x_i` (1-based).
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        Self::reduce(rank, &[(i, 1)])
    }

    /// Freely reduces an arbitrary syllable list.
    pub fn reduce(rank: usize, syllables: &[(usize, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(syllables.len());
        for &(g, e) in syllables {
            if g == 0 || g > rank {
                return domain(format!("generator x{g} outside rank {rank}"));
            }
            push_syllable(&mut out, (g, e));
        }
        Ok(Self { rank, syllables: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduced length, counting `x_i^e` as `|e|` letters.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Highest generator index that occurs, or 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.syllables.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    /// Letters `(i, ±1)` from left to right.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return domain(format!("words of rank {} and {} cannot be combined", self.rank, other.rank));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut out, s);
        }
        Ok(Self {
            rank: self.rank,
            syllables: out,
        })
    }

    pub fn invert(&self) -> Self {
        Self {
            rank: self.rank,
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?
            .multiply(&self.invert())?
            .multiply(&other.invert())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = Self::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base).expect("same rank");
        }
        out
    }

    /// Same word viewed in a free group of larger rank.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::reduce(rank, &self.syllables)
    }

    /// Parses `"x1^2 x2^-3 x1"` in the given rank. `"1"` or `""` is the identity.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let mut syl = Vec::new();
        let trimmed = text.trim();
        if trimmed != "1" {
            for tok in trimmed.split_whitespace() {
                syl.push(parse_syllable(tok)?);
            }
        }
        Self::reduce(rank, &syl)
    }
}

fn parse_syllable(tok: &str) -> Result<(usize, i64)> {
    let bad = || Error::Parse(format!("bad syllable `{tok}` (expected x<i> or x<i>^<e>)"));
    let rest = tok.strip_prefix('x').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let idx: usize = idx.parse().map_err(|_| bad())?;
    if idx == 0 {
        return Err(bad());
    }
    Ok((idx, exp))
}

/// Parses with the rank set to the largest generator index (at least 1).
impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let mut rank = 1;
        if trimmed != "1" {
            for tok in trimmed.split_whitespace() {
                rank = rank.max(parse_syllable(tok)?.0);
            }
        }
        Self::parse(trimmed, rank)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `(x1^{np} x2^{np} x1^{-np} x2^{-np})^n` in rank 2.
pub fn adyan_word(n: u64, p: u64) -> Result<FreeWord> {
    if n == 0 {
        return domain("adyan_word needs n >= 1");
    }
    if !is_prime(p) {
        return domain(format!("adyan_word needs a prime, got {p}"));
    }
    let e = i64::try_from(n * p).map_err(|_| Error::Domain("exponent overflow".into()))?;
    let block = FreeWord::reduce(2, &[(1, e), (2, e), (1, -e), (2, -e)])?;
    Ok(block.pow(n as i64))
}
