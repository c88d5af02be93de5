use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::howell::{howell_form, left_kernel, pivot};
use crate::error::{domain, Result};
use crate::finab::numtheory::gcd;

/// A subgroup of `(Z/N)^k`, held in Howell normal form so that equal
/// subgroups compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncSubgroup {
    modulus: u64,
    rank: usize,
    gens: Vec<Vec<u64>>,
}

impl TruncSubgroup {
    /// Subgroup generated by the given rows.
    pub fn from_generators(modulus: u64, rank: usize, rows: &[Vec<u64>]) -> Result<Self> {
        if modulus == 0 {
            return domain("modulus must be at least 1");
        }
        if let Some(r) = rows.iter().find(|r| r.len() != rank) {
            return domain(format!("generator of length {} in rank {rank}", r.len()));
        }
        Ok(Self {
            modulus,
            rank,
            gens: howell_form(rows, rank, modulus),
        })
    }

    /// Accepts `rows` only if they already are the Howell form of their span.
    pub fn from_howell(modulus: u64, rank: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let canon = Self::from_generators(modulus, rank, &rows)?;
        if canon.gens != rows {
            return domain(format!(
                "generators {rows:?} are not in Howell form (expected {:?})",
                canon.gens
            ));
        }
        Ok(canon)
    }

    pub fn zero(modulus: u64, rank: usize) -> Self {
        Self {
            modulus,
            rank,
            gens: Vec::new(),
        }
    }

    pub fn full(modulus: u64, rank: usize) -> Self {
        Self::multiple(1, modulus, rank)
    }

    /// `r·(Z/N)^k`.
    pub fn multiple(r: u64, modulus: u64, rank: usize) -> Self {
        let rows: Vec<Vec<u64>> = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { r % modulus } else { 0 }).collect())
            .collect();
        Self::from_generators(modulus, rank, &rows).expect("well-formed rows")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    /// Howell-form generator rows.
    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Number of elements: `∏ N / pivot` over Howell rows.
    pub fn order(&self) -> u128 {
        self.gens
            .iter()
            .map(|r| (self.modulus / r[pivot(r).expect("nonzero row")]) as u128)
            .product()
    }

    /// Index in `(Z/N)^k`.
    pub fn index(&self) -> u128 {
        (self.modulus as u128).pow(self.rank as u32) / self.order()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.rank != other.rank {
            return domain(format!(
                "subgroups of (Z/{})^{} and (Z/{})^{} cannot be combined",
                self.modulus, self.rank, other.modulus, other.rank
            ));
        }
        Ok(())
    }

    /// Membership test by reduction against the Howell rows.
    pub fn contains(&self, v: &[u64]) -> bool {
        let n = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|x| x % n).collect();
        for row in &self.gens {
            let c = pivot(row).expect("nonzero row");
            if !v[c].is_multiple_of(row[c]) {
                return false;
            }
            let t = v[c] / row[c];
            for j in c..self.rank {
                v[j] = (v[j] + n - (t as u128 * row[j] as u128 % n as u128) as u64) % n;
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// `H + K`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut rows = self.gens.clone();
        rows.extend(other.gens.iter().cloned());
        Self::from_generators(self.modulus, self.rank, &rows)
    }

    /// `H ∩ K` via the Howell form of `[[H, H], [K, 0]]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let k = self.rank;
        let mut rows = Vec::new();
        for h in &self.gens {
            let mut r = h.clone();
            r.extend_from_slice(h);
            rows.push(r);
        }
        for g in &other.gens {
            let mut r = g.clone();
            r.extend(std::iter::repeat_n(0, k));
            rows.push(r);
        }
        let hf = howell_form(&rows, 2 * k, self.modulus);
        let meet: Vec<Vec<u64>> = hf
            .into_iter()
            .filter(|r| r[..k].iter().all(|&x| x == 0))
            .map(|r| r[k..].to_vec())
            .collect();
        Self::from_generators(self.modulus, k, &meet)
    }

    /// `{y : Σ x_i y_i ≡ 0 (mod N) for all x ∈ H}`.
    pub fn annihilator(&self) -> Self {
        if self.gens.is_empty() {
            return Self::full(self.modulus, self.rank);
        }
        // y ↦ y·Gᵀ, a rank × |gens| matrix
        let g = self.gens.len();
        let gt: Vec<Vec<u64>> = (0..self.rank)
            .map(|i| (0..g).map(|j| self.gens[j][i]).collect())
            .collect();
        Self {
            modulus: self.modulus,
            rank: self.rank,
            gens: left_kernel(&gt, self.rank, g, self.modulus),
        }
    }

    /// Image under `x ↦ x·U` for a `rank × rank` matrix `U`.
    pub fn map_by(&self, u: &[Vec<u64>]) -> Result<Self> {
        if u.len() != self.rank || u.iter().any(|r| r.len() != self.rank) {
            return domain("matrix shape does not match subgroup rank");
        }
        let n = self.modulus as u128;
        let rows: Vec<Vec<u64>> = self
            .gens
            .iter()
            .map(|g| {
                (0..self.rank)
                    .map(|j| {
                        (0..self.rank)
                            .map(|i| g[i] as u128 * u[i][j] as u128 % n)
                            .sum::<u128>()
                            .rem_euclid(n) as u64
                    })
                    .collect()
            })
            .collect();
        Self::from_generators(self.modulus, self.rank, &rows)
    }

    /// Every element, by breadth-first closure over the generators.
    pub fn elements(&self) -> BTreeSet<Vec<u64>> {
        closure(self.modulus, self.rank, &self.gens)
    }
}

/// The set generated by `gens` under addition in `(Z/N)^k`, computed by search.
/// Independent of the Howell machinery; used as an oracle.
pub fn closure(modulus: u64, rank: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let zero = vec![0u64; rank];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Determinant of a square integer matrix (Bareiss), reduced mod `n`.
pub fn det_mod(u: &[Vec<u64>], n: u64) -> u64 {
    let k = u.len();
    if k == 0 {
        return 1 % n;
    }
    let mut m: Vec<Vec<i128>> = u
        .iter()
        .map(|r| r.iter().map(|&x| (x % n) as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        if m[c][c] == 0 {
            match (c + 1..k).find(|&r| m[r][c] != 0) {
                Some(r) => {
                    m.swap(c, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in c + 1..k {
            for j in c + 1..k {
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev;
            }
        }
        prev = m[c][c];
    }
    (sign * m[k - 1][k - 1]).rem_euclid(n as i128) as u64
}

/// True iff `U` is invertible over `Z/N` (unit determinant).
pub fn is_unimodular(u: &[Vec<u64>], n: u64) -> bool {
    gcd(det_mod(u, n), n) == 1
}

impl fmt::Display for TruncSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gens
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "<{}> ≤ (Z/{})^{}", rows.join(", "), self.modulus, self.rank)
    }
}

/// Every subgroup of `(Z/N)^k`, found by closing pairs (and, for `k > 2`,
/// triples) of elements. A `k`-rank subgroup needs at most `k` generators.
pub fn all_subgroups(modulus: u64, rank: usize) -> Vec<TruncSubgroup> {
    let elems: Vec<Vec<u64>> = closure(modulus, rank, &TruncSubgroup::full(modulus, rank).gens)
        .into_iter()
        .collect();
    let mut sets = BTreeSet::new();
    fn rec(
        start: usize,
        depth: usize,
        chosen: &mut Vec<Vec<u64>>,
        elems: &[Vec<u64>],
        modulus: u64,
        rank: usize,
        sets: &mut BTreeSet<TruncSubgroup>,
    ) {
        sets.insert(TruncSubgroup::from_generators(modulus, rank, chosen).unwrap());
        if depth == 0 {
            return;
        }
        for i in start..elems.len() {
            chosen.push(elems[i].clone());
            rec(i, depth - 1, chosen, elems, modulus, rank, sets);
            chosen.pop();
        }
    }
    rec(0, rank, &mut Vec::new(), &elems, modulus, rank, &mut sets);
    sets.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(n: u64, k: usize, rows: &[&[u64]]) -> TruncSubgroup {
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
        TruncSubgroup::from_generators(n, k, &rows).unwrap()
    }

    #[test]
    fn annihilator_examples() {
        let full = TruncSubgroup::full(6, 2);
        let zero = TruncSubgroup::zero(6, 2);
        assert_eq!(full.annihilator(), zero);
        assert_eq!(zero.annihilator(), full);
        let h = sg(4, 1, &[&[2]]);
        assert_eq!(h.annihilator(), h);
    }

    #[test]
    fn sum_and_intersection_identities() {
        let h = sg(4, 2, &[&[2, 2]]);
        assert_eq!(h.sum(&TruncSubgroup::zero(4, 2)).unwrap(), h);
        assert_eq!(h.intersect(&TruncSubgroup::full(4, 2)).unwrap(), h);
        let two = TruncSubgroup::multiple(2, 4, 2);
        assert_eq!(two.sum(&h).unwrap(), two);
        assert!(h.sum(&TruncSubgroup::zero(4, 3)).is_err());
        assert!(h.intersect(&TruncSubgroup::zero(2, 2)).is_err());
    }

    #[test]
    fn howell_is_canonical_on_all_subgroups() {
        for (n, k) in [(2u64, 2usize), (3, 2), (4, 2), (6, 2), (4, 1), (8, 1), (2, 3)] {
            let subs = all_subgroups(n, k);
            let mut element_sets = BTreeSet::new();
            for s in &subs {
                let elems = s.elements();
                assert_eq!(elems.len() as u128, s.order(), "{s}");
                for v in &elems {
                    assert!(s.contains(v));
                }
                assert!(element_sets.insert(elems), "two forms for one subgroup: {s}");
                // regenerating from all elements gives the same form
                let all: Vec<Vec<u64>> = s.elements().into_iter().collect();
                assert_eq!(&TruncSubgroup::from_generators(n, k, &all).unwrap(), s);
            }
        }
        // known counts: (Z/2)^2 has 5 subgroups, (Z/4)^2 has 15, (Z/2)^3 has 16
        assert_eq!(all_subgroups(2, 2).len(), 5);
        assert_eq!(all_subgroups(4, 2).len(), 15);
        assert_eq!(all_subgroups(2, 3).len(), 16);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&[vec![1, 1], vec![0, 1]], 4));
        assert!(!is_unimodular(&[vec![2, 0], vec![0, 1]], 4));
        assert!(is_unimodular(&[vec![3, 0], vec![0, 1]], 4));
        assert_eq!(det_mod(&[vec![0, 1], vec![1, 0]], 5), 4);
    }

    #[test]
    fn from_howell_rejects_noncanonical() {
        assert!(TruncSubgroup::from_howell(4, 2, vec![vec![2, 1]]).is_err());
        assert!(TruncSubgroup::from_howell(4, 2, vec![vec![2, 1], vec![0, 2]]).is_ok());
    }
}
