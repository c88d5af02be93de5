use rand::Rng;

use num_bigint::BigUint;

use super::counting::gaussian_binomial;
use super::field::FieldSpec;
use crate::error::{check_cap, domain, Result};

/// Dense row-major matrix over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FqMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return domain(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        if let Some(bad) = entries.iter().find(|&&c| c as u64 >= field.q()) {
            return domain(format!("entry {bad} is not an element of F_{}", field.q()));
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return domain("matrix product shape or field mismatch");
        }
        let f = &self.field;
        let mut out = FqMatrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (FqMatrix, Vec<usize>) {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.entries.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(sel) = (pr..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if sel != pr {
                for j in 0..cols {
                    m.swap(sel * cols + j, pr * cols + j);
                }
            }
            let inv = f.inv(m[pr * cols + c]).expect("pivot is nonzero");
            for j in 0..cols {
                m[pr * cols + j] = f.mul(m[pr * cols + j], inv);
            }
            for r in 0..rows {
                let factor = m[r * cols + c];
                if r == pr || factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let t = f.mul(factor, m[pr * cols + j]);
                    m[r * cols + j] = f.sub(m[r * cols + j], t);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        let out = FqMatrix {
            field: f.clone(),
            rows,
            cols,
            entries: m,
        };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Rank over `F_q` by Gaussian elimination; 0 for empty matrices.
pub fn matrix_rank(m: &FqMatrix) -> usize {
    m.rank()
}

/// Iterator over every `κ×n` matrix in lexicographic entry order.
pub struct MatrixIter {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    next: Option<Vec<u32>>,
}

impl Iterator for MatrixIter {
    type Item = FqMatrix;

    fn next(&mut self) -> Option<FqMatrix> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let q = self.field.q() as u32;
        let mut advanced = false;
        for d in succ.iter_mut().rev() {
            *d += 1;
            if *d < q {
                advanced = true;
                break;
            }
            *d = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: current,
        })
    }
}

/// All `q^{κn}` matrices, each once. Fails if `q^{κn}` exceeds `cap`.
pub fn enumerate_matrices(kappa: usize, n: usize, field: &FieldSpec, cap: u64) -> Result<MatrixIter> {
    let total = num_traits::pow(BigUint::from(field.q()), kappa * n);
    check_cap("matrix enumeration", &total, cap)?;
    Ok(MatrixIter {
        field: field.clone(),
        rows: kappa,
        cols: n,
        next: Some(vec![0; kappa * n]),
    })
}

/// Uniform matrix: every entry independent and uniform on `F_q`.
pub fn sample_uniform_matrix<R: Rng + ?Sized>(
    kappa: usize,
    n: usize,
    field: &FieldSpec,
    rng: &mut R,
) -> FqMatrix {
    let q = field.q() as u32;
    let entries = (0..kappa * n).map(|_| rng.gen_range(0..q)).collect();
    FqMatrix {
        field: field.clone(),
        rows: kappa,
        cols: n,
        entries,
    }
}

/// Uniform element of `GL_n(q)` by rejection.
pub fn sample_invertible<R: Rng + ?Sized>(n: usize, field: &FieldSpec, rng: &mut R) -> FqMatrix {
    loop {
        let m = sample_uniform_matrix(n, n, field, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A subspace of `F_q^n`, stored by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn span(m: &FqMatrix) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let entries = r.entries[..k * r.cols].to_vec();
        Subspace {
            basis: FqMatrix {
                field: r.field,
                rows: k,
                cols: r.cols,
                entries,
            },
        }
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-dimensional subspace of `F_q^n`, once each, as canonical RREF.
///
/// Built directly from pivot patterns: for pivot columns `c_1 < … < c_k`,
/// row `i` is free exactly at non-pivot columns right of `c_i`.
pub fn enumerate_subspaces(n: usize, k: usize, field: &FieldSpec, cap: u64) -> Result<Vec<Subspace>> {
    let total = gaussian_binomial(n as u64, k as u64, field.q())?;
    check_cap("subspace enumeration", &total, cap)?;
    let q = field.q() as u32;
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let mut free = Vec::new();
        for (i, &c) in pivots.iter().enumerate() {
            for j in c + 1..n {
                if !pivots.contains(&j) {
                    free.push(i * n + j);
                }
            }
        }
        let mut base = vec![0u32; k * n];
        for (i, &c) in pivots.iter().enumerate() {
            base[i * n + c] = 1;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut entries = base.clone();
            for (slot, &d) in free.iter().zip(&digits) {
                entries[*slot] = d;
            }
            out.push(Subspace {
                basis: FqMatrix {
                    field: field.clone(),
                    rows: k,
                    cols: n,
                    entries,
                },
            });
            let mut carry = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < q {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}
