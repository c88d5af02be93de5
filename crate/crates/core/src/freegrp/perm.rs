use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::word::FreeWord;
use crate::error::{check_cap, domain, Error, Result};

/// Largest supported permutation degree.
pub const MAX_DEGREE: usize = 12;

/// A permutation of `{1, …, d}`, stored 0-based.
///
/// Products act on the right: `g.then(h)` applies `g` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d > MAX_DEGREE {
            return domain(format!("degree {d} exceeds {MAX_DEGREE}"));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return domain(format!("{images:?} is not a permutation"));
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn then(&self, h: &Perm) -> Perm {
        assert_eq!(self.degree(), h.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&x| h.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    /// `σ⁻¹ g σ`, the relabeling of `g` along `σ`.
    pub fn conjugate_by(&self, sigma: &Perm) -> Perm {
        sigma.inverse().then(self).then(sigma)
    }

    /// Parses cycle notation with an explicit degree.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > degree {
                    return Err(Error::Parse(format!("point {a} outside 1..={degree}")));
                }
                if moved[a - 1] {
                    return Err(Error::Parse(format!("point {a} repeated in `{text}`")));
                }
                moved[a - 1] = true;
                images[a - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Self::from_images(images)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Parse(format!("bad cycle notation `{text}`"));
    let mut rest = text.trim();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let pts = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if !pts.is_empty() {
            out.push(pts);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses cycle notation; the degree is the largest point mentioned.
impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let degree = parse_cycles(s)?.into_iter().flatten().max().unwrap_or(0);
        Self::parse(s, degree)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "({}", start + 1)?;
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                write!(f, " {}", x + 1)?;
                seen[x] = true;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite permutation group, stored as the full list of its elements.
#[derive(Debug, Clone)]
pub struct FinGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.element_set() == other.element_set()
    }
}

impl Eq for FinGroup {}

impl FinGroup {
    /// Closure of `generators` by breadth-first search, refusing groups of
    /// order above `cap`. The identity is element 0 and the order of the rest
    /// is the search order.
    pub fn generate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return domain(format!("degree {degree} exceeds {MAX_DEGREE}"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return domain(format!("generator {g} has degree {} not {degree}", g.degree()));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ResourceLimit {
                            what: "group closure".into(),
                            needed: format!("more than {cap}"),
                            cap: cap as u64,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let group = Self {
            degree,
            generators,
            elements,
            index,
        };
        group.verify_closed()?;
        Ok(group)
    }

    fn verify_closed(&self) -> Result<()> {
        for x in &self.elements {
            if !self.contains(&x.inverse()) || self.generators.iter().any(|g| !self.contains(&x.then(g))) {
                return Err(Error::Invariant(format!("closure failed at {x}")));
            }
        }
        Ok(())
    }

    /// The symmetric group on `degree` points.
    pub fn symmetric(degree: usize, cap: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::from_images((1..degree).chain([0]).collect())?);
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(Perm::from_images(swap)?);
        }
        Self::generate(degree, gens, cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }
    /// Position of `g` in [`elements`](Self::elements).
    pub fn position(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }
    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn element_set(&self) -> BTreeSet<Perm> {
        self.elements.iter().cloned().collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_subgroup_of(&self, g: &FinGroup) -> bool {
        self.elements.iter().all(|x| g.contains(x))
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &FinGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators
                .iter()
                .all(|s| self.generators.iter().all(|h| self.contains(&h.conjugate_by(s))))
    }

    /// Image under the relabeling `σ`: `{σ⁻¹ g σ}`.
    pub fn relabel(&self, sigma: &Perm) -> Result<FinGroup> {
        let gens = self.generators.iter().map(|g| g.conjugate_by(sigma)).collect();
        FinGroup::generate(self.degree, gens, self.order().max(1))
    }

    /// Point relabelings `σ ∈ S_d` with `σ⁻¹ G σ = G`.
    pub fn relabeling_automorphisms(&self, cap: usize) -> Result<Vec<Perm>> {
        let sym = FinGroup::symmetric(self.degree, cap)?;
        Ok(sym
            .elements
            .iter()
            .filter(|s| self.generators.iter().all(|g| self.contains(&g.conjugate_by(s))))
            .cloned()
            .collect())
    }
}

/// `f_w(g_1, …, g_k) = g_{a_1}^{b_1} ⋯ g_{a_n}^{b_n}`.
pub fn word_map_eval(w: &FreeWord, tuple: &[Perm], degree: usize) -> Result<Perm> {
    if w.max_generator() > tuple.len() {
        return domain(format!(
            "word uses x{} but only {} elements were supplied",
            w.max_generator(),
            tuple.len()
        ));
    }
    if let Some(g) = tuple.iter().find(|g| g.degree() != degree) {
        return domain(format!("element {g} has degree {} not {degree}", g.degree()));
    }
    Ok(w
        .syllables()
        .iter()
        .fold(Perm::identity(degree), |acc, &(i, e)| acc.then(&tuple[i - 1].pow(e))))
}

/// The verbal subgroup `G(W)`: generated by all values of all words in `W`.
pub fn verbal_subgroup(g: &FinGroup, words: &[FreeWord], cap: u64) -> Result<FinGroup> {
    let vars = words.iter().map(|w| w.max_generator()).max().unwrap_or(0);
    let total = num_traits::pow(BigUint::from(g.order()), vars);
    check_cap("word-map tuples", &total, cap)?;
    let mut values = BTreeSet::new();
    let n = g.order();
    let mut digits = vec![0usize; vars];
    loop {
        let tuple: Vec<Perm> = digits.iter().map(|&d| g.elements[d].clone()).collect();
        for w in words {
            let v = word_map_eval(w, &tuple, g.degree)?;
            if !v.is_identity() {
                values.insert(v);
            }
        }
        let mut carry = true;
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            break;
        }
    }
    let sub = FinGroup::generate(g.degree, values.into_iter().collect(), g.order())?;
    if !sub.is_normal_in(g) {
        return Err(Error::Invariant("verbal subgroup is not normal".into()));
    }
    Ok(sub)
}
