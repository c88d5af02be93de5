use std::collections::VecDeque;

use rand::Rng;

use super::perm::{FinGroup, Perm};
use super::word::FreeWord;
use crate::error::{domain, Result};
use crate::finab::numtheory::is_prime;

/// How a non-root coset was first reached: `child = parent · x_gen^dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub gen: usize,
    pub dir: i8,
}

/// Schreier coset graph of a finite-index subgroup `K ≤ F_r` together with a
/// breadth-first spanning tree rooted at the coset `K` itself (coset 0).
#[derive(Debug, Clone)]
pub struct SchreierGraph {
    rank: usize,
    /// `transitions[s][v]` is the coset `v · x_{s+1}`.
    transitions: Vec<Vec<usize>>,
    tree: Vec<Option<TreeEdge>>,
    /// Basis position of the positive edge `(v, s)`, or `None` for tree edges.
    edge_id: Vec<Vec<Option<usize>>>,
    /// Non-tree positive edges `(v, s)` in basis order.
    non_tree: Vec<(usize, usize)>,
}

impl SchreierGraph {
    /// Coset graph of the point stabilizer of `base` under the right action
    /// `x_s ↦ perms[s]`. Fails when the action is not transitive.
    pub fn from_action(rank: usize, perms: &[Perm], base: usize) -> Result<Self> {
        if perms.len() != rank {
            return domain(format!("{} permutations given for rank {rank}", perms.len()));
        }
        let degree = perms.first().map_or(base + 1, Perm::degree);
        if perms.iter().any(|p| p.degree() != degree) || base >= degree {
            return domain("permutations must share one degree containing the base point");
        }
        let table: Vec<Vec<usize>> =
            perms.iter().map(|p| (0..degree).map(|i| p.apply(i)).collect()).collect();
        Self::build(rank, &table, degree, base)
    }

    /// Relabels points in breadth-first order from `base` and records the tree.
    fn build(rank: usize, table: &[Vec<usize>], points: usize, base: usize) -> Result<Self> {
        let inverse: Vec<Vec<usize>> = table
            .iter()
            .map(|t| {
                let mut inv = vec![0; points];
                for (i, &j) in t.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        let mut label = vec![usize::MAX; points];
        let mut order = vec![base];
        let mut tree = vec![None];
        label[base] = 0;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for s in 0..rank {
                for (dir, next) in [(1i8, table[s][v]), (-1i8, inverse[s][v])] {
                    if label[next] == usize::MAX {
                        label[next] = order.len();
                        order.push(next);
                        tree.push(Some(TreeEdge {
                            parent: label[v],
                            gen: s,
                            dir,
                        }));
                        queue.push_back(next);
                    }
                }
            }
        }
        if order.len() != points {
            return domain(format!(
                "action is not transitive: orbit of the base point has {} of {points} points",
                order.len()
            ));
        }
        let transitions: Vec<Vec<usize>> = (0..rank)
            .map(|s| order.iter().map(|&p| label[table[s][p]]).collect())
            .collect();
        let idx = points;
        let mut edge_id = vec![vec![None; rank]; idx];
        let mut non_tree = Vec::new();
        for v in 0..idx {
            for s in 0..rank {
                let w = transitions[s][v];
                let forward = matches!(tree[w], Some(TreeEdge { parent, gen, dir: 1 }) if parent == v && gen == s);
                let backward = matches!(tree[v], Some(TreeEdge { parent, gen, dir: -1 }) if parent == w && gen == s);
                if !(forward || backward) {
                    edge_id[v][s] = Some(non_tree.len());
                    non_tree.push((v, s));
                }
            }
        }
        Ok(Self {
            rank,
            transitions,
            tree,
            edge_id,
            non_tree,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.tree.len()
    }

    /// Coset reached from `v` along generator `s` (0-based).
    pub fn step(&self, v: usize, s: usize) -> usize {
        self.transitions[s][v]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn tree_edge(&self, v: usize) -> Option<TreeEdge> {
        self.tree[v]
    }

    /// Non-tree edges `(v, s)`, oriented along `x_{s+1}`.
    pub fn non_tree_edges(&self) -> &[(usize, usize)] {
        &self.non_tree
    }

    /// Coset `K·w`.
    pub fn coset_of(&self, w: &FreeWord) -> Result<usize> {
        if w.rank() != self.rank {
            return domain(format!("word of rank {} on a rank-{} graph", w.rank(), self.rank));
        }
        let mut v = 0;
        for (g, e) in w.letters() {
            v = self.walk(v, g - 1, e);
        }
        Ok(v)
    }

    fn walk(&self, v: usize, s: usize, e: i64) -> usize {
        if e > 0 {
            self.transitions[s][v]
        } else {
            self.transitions[s].iter().position(|&x| x == v).expect("transition is a permutation")
        }
    }

    /// Tree path word `p_v` from the root to `v`.
    pub fn tree_path(&self, mut v: usize) -> FreeWord {
        let mut syl = Vec::new();
        while let Some(TreeEdge { parent, gen, dir }) = self.tree[v] {
            syl.push((gen + 1, dir as i64));
            v = parent;
        }
        syl.reverse();
        FreeWord::reduce(self.rank, &syl).expect("generators in range")
    }
}

/// Coset graph of the kernel of `F_r → ⟨images⟩`, `x_i ↦ images[i]`, built
/// from the right regular action of the image group on itself. The index is
/// the order of that group.
pub fn schreier_graph(rank: usize, images: &[Perm], group_cap: usize) -> Result<SchreierGraph> {
    if images.len() != rank {
        return domain(format!("{} images given for rank {rank}", images.len()));
    }
    if rank == 0 {
        return domain("rank must be at least 1");
    }
    let degree = images[0].degree();
    let g = FinGroup::generate(degree, images.to_vec(), group_cap)?;
    let table: Vec<Vec<usize>> = images
        .iter()
        .map(|s| {
            g.elements()
                .iter()
                .map(|x| g.position(&x.then(s)).expect("group is closed"))
                .collect()
        })
        .collect();
    SchreierGraph::build(rank, &table, g.order(), 0)
}

/// Schreier free basis: `k_e = p_v · x_s · p_w⁻¹` for each non-tree edge
/// `e = (v → w)`. Its size is `1 + index·(rank − 1)`.
pub fn schreier_basis(g: &SchreierGraph) -> Vec<FreeWord> {
    g.non_tree
        .iter()
        .map(|&(v, s)| {
            let w = g.step(v, s);
            let x = FreeWord::generator(g.rank, s + 1).expect("in range");
            g.tree_path(v)
                .multiply(&x)
                .and_then(|t| t.multiply(&g.tree_path(w).invert()))
                .expect("same rank")
        })
        .collect()
}

/// Coordinates of `w ∈ K` in the abelianization `K/[K, K]` with respect to
/// the Schreier basis: crossing a non-tree edge forwards adds 1, backwards
/// subtracts 1.
pub fn rewrite_in_basis(g: &SchreierGraph, w: &FreeWord) -> Result<Vec<i64>> {
    if w.rank() != g.rank {
        return domain(format!("word of rank {} on a rank-{} graph", w.rank(), g.rank));
    }
    let mut coords = vec![0i64; g.non_tree.len()];
    let mut v = 0;
    for (gen, e) in w.letters() {
        let s = gen - 1;
        let next = g.walk(v, s, e);
        let (tail, sign) = if e > 0 { (v, 1) } else { (next, -1) };
        if let Some(id) = g.edge_id[tail][s] {
            coords[id] += sign;
        }
        v = next;
    }
    if v != 0 {
        return domain(format!("word {w} is not in the subgroup: its walk ends at coset {v}"));
    }
    Ok(coords)
}

/// An index-`p` subgroup of `(Z/p)^s`, given as the kernel of a nonzero
/// functional `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPSubgroup {
    pub p: u64,
    pub functional: Vec<u64>,
}

impl IndexPSubgroup {
    /// The functional scaled so its first nonzero entry is 1; equal keys
    /// mean equal kernels.
    pub fn key(&self) -> Vec<u64> {
        let p = self.p;
        let lead = *self.functional.iter().find(|&&x| x != 0).expect("nonzero functional");
        let inv = crate::finab::numtheory::mod_inverse(lead, p).expect("p is prime");
        self.functional.iter().map(|&x| x * inv % p).collect()
    }

    /// Whether a vector (e.g. rewrite coordinates) lies in the kernel.
    pub fn contains(&self, v: &[i64]) -> bool {
        let p = self.p as i128;
        let dot: i128 = v
            .iter()
            .zip(&self.functional)
            .map(|(&a, &x)| a as i128 * x as i128)
            .sum();
        dot.rem_euclid(p) == 0
    }
}

/// A uniform nonzero functional on `(Z/p)^s`. Zero is excluded, so the
/// kernel always has index exactly `p`.
pub fn sample_index_p_subgroup<R: Rng + ?Sized>(s: usize, p: u64, rng: &mut R) -> Result<IndexPSubgroup> {
    if s == 0 {
        return domain("basis size must be at least 1");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    loop {
        let functional: Vec<u64> = (0..s).map(|_| rng.gen_range(0..p)).collect();
        if functional.iter().any(|&x| x != 0) {
            return Ok(IndexPSubgroup { p, functional });
        }
    }
}

/// All index-`p` subgroups of `(Z/p)^s` by normalized functional.
pub fn index_p_subgroups(s: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..s {
        let free = s - lead - 1;
        for idx in 0..p.pow(free as u32) {
            let mut v = vec![0u64; s];
            v[lead] = 1;
            let mut t = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = t % p;
                t /= p;
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_GROUP_CAP;

    fn perm(s: &str, d: usize) -> Perm {
        Perm::parse(s, d).unwrap()
    }

    #[test]
    fn trivial_images() {
        let g = schreier_graph(3, &[perm("()", 3), perm("()", 3), perm("()", 3)], DEFAULT_GROUP_CAP)
            .unwrap();
        assert_eq!(g.index(), 1);
        let b: Vec<String> = schreier_basis(&g).iter().map(|w| w.to_string()).collect();
        assert_eq!(b, ["x1", "x2", "x3"]);
    }

    #[test]
    fn cyclic_three() {
        let c = perm("(1 2 3)", 3);
        let g = schreier_graph(2, &[c.clone(), c], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.index(), 3);
        assert_eq!(schreier_basis(&g).len(), 4);
    }

    #[test]
    fn intransitive_action_rejected() {
        let a = perm("(1 2)", 4);
        assert!(SchreierGraph::from_action(1, std::slice::from_ref(&a), 0).is_err());
        let b = perm("(2 3 4)", 4);
        let g = SchreierGraph::from_action(2, &[a, b], 0).unwrap();
        assert_eq!(g.index(), 4);
    }

    #[test]
    fn walk_outside_kernel() {
        let c = perm("(1 2 3)", 3);
        let g = schreier_graph(1, &[c], DEFAULT_GROUP_CAP).unwrap();
        let e = rewrite_in_basis(&g, &FreeWord::parse("x1", 1).unwrap()).unwrap_err();
        assert!(e.to_string().contains("coset 1"), "{e}");
    }

    #[test]
    fn normalized_keys() {
        let h = IndexPSubgroup {
            p: 5,
            functional: vec![0, 3, 1],
        };
        assert_eq!(h.key(), vec![0, 1, 2]);
        assert_eq!(index_p_subgroups(2, 2), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(index_p_subgroups(3, 3).len(), 13);
    }
}
