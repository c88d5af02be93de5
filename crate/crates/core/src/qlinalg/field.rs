use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::finab::numtheory::{mod_inverse, prime_power};

/// Largest order for which table-driven arithmetic is built.
pub const MAX_TABLE_ORDER: u64 = 64;

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The finite field `F_q`, `q = p^e`.
///
/// Elements are encoded as integers in `[0, q)`. For `e > 1` the code
/// `c = Σ a_i p^i` stands for the residue of `Σ a_i X^i` modulo the
/// lexicographically smallest monic irreducible polynomial of degree `e`
/// over `F_p` (see [`FieldSpec::modulus`]). Prime fields are plain residue
/// arithmetic.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for FieldSpec {}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic: X^e = -Σ_{i<e} m_i X^i
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..e {
            let sub = c * modulus[i] % p;
            prod[d - e + i] = (prod[d - e + i] + p - sub) % p;
        }
    }
    prod.truncate(e);
    prod
}

fn decode(code: u64, p: u64, e: u32) -> Vec<u64> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo monic `b`, coefficients low-to-high.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let e = poly.len() - 1;
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f = decode(code, p, d as u32);
            f.push(1);
            if poly_rem(poly, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e` over `F_p`
/// (low-order coefficients compared as the base-`p` code).
fn find_modulus(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    for code in 0..p.pow(e) {
        let mut poly = decode(code, p, e);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds `F_q`. Fails unless `q` is a prime power; non-prime `q`
    /// must not exceed [`MAX_TABLE_ORDER`].
    pub fn new(q: u64) -> Result<Self> {
        let Some((p, e)) = prime_power(q) else {
            return domain(format!("field order {q} is not a prime power"));
        };
        if e > 1 && q > MAX_TABLE_ORDER {
            return domain(format!(
                "non-prime field order {q} exceeds the table limit {MAX_TABLE_ORDER}"
            ));
        }
        let modulus = find_modulus(p, e);
        let tables = (q <= MAX_TABLE_ORDER).then(|| Arc::new(Self::build_tables(p, e, &modulus)));
        Ok(Self {
            p,
            e,
            q,
            modulus,
            tables,
        })
    }

    fn build_tables(p: u64, e: u32, modulus: &[u64]) -> Tables {
        let q = p.pow(e) as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            let pa = decode(a as u64, p, e);
            let na: Vec<u64> = pa.iter().map(|&c| (p - c) % p).collect();
            neg[a] = encode(&na, p) as u32;
            for b in 0..q {
                let pb = decode(b as u64, p, e);
                let sum: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum, p) as u32;
                mul[a * q + b] = encode(&poly_mulmod(&pa, &pb, modulus, p), p) as u32;
            }
        }
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("nonzero elements of a field are invertible") as u32;
        }
        Tables { add, mul, neg, inv }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients (low to high) of the defining monic polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[a as usize * self.q as usize + b as usize],
            None => ((a as u64 + b as u64) % self.q) as u32,
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => ((self.q - a as u64) % self.q) as u32,
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[a as usize * self.q as usize + b as usize],
            None => (a as u64 * b as u64 % self.q) as u32,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.inv[a as usize]),
            None => mod_inverse(a as u64, self.q).map(|x| x as u32),
        }
    }
}
