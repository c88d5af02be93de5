//! Howell normal form over `Z/N`.
//!
//! The Howell form of a row module is its echelon basis with pivots
//! dividing `N`, entries above each pivot reduced modulo it, and the extra
//! property that for every column `j` the rows with pivot at or after `j`
//! span exactly the submodule of vectors vanishing before `j`. It is unique,
//! which makes it usable as a hash key for subgroups of `(Z/N)^k`.

use crate::finab::numtheory::{ext_gcd, gcd, mod_inverse};

fn reduce_row(row: &mut [u64], n: u64) {
    for x in row.iter_mut() {
        *x %= n;
    }
}

fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&x| x == 0)
}

/// Unit `u` with `u * a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    let u0 = mod_inverse(a1 % n1, n1).expect("a/g is a unit mod n/g");
    (0..g)
        .map(|t| u0 + t * n1)
        .find(|&u| gcd(u, n) == 1)
        .expect("a unit lift always exists")
        % n
}

/// Replaces rows `top` and `other` by a unimodular combination that puts
/// `gcd` of their column-`c` entries into `top` and zero into `other`.
fn combine(rows: &mut [Vec<u64>], top: usize, other: usize, c: usize, n: u64) {
    let a = rows[top][c] as i128;
    let b = rows[other][c] as i128;
    if b == 0 {
        return;
    }
    let (g, s, t) = ext_gcd(a, b);
    let (u, v) = (-b / g, a / g);
    let n_i = n as i128;
    let width = rows[top].len();
    for j in 0..width {
        let x = rows[top][j] as i128;
        let y = rows[other][j] as i128;
        rows[top][j] = (s * x + t * y).rem_euclid(n_i) as u64;
        rows[other][j] = (u * x + v * y).rem_euclid(n_i) as u64;
    }
}

/// Howell form of the row span of `rows` in `(Z/N)^width`. Zero rows are dropped.
pub fn howell_form(rows: &[Vec<u64>], width: usize, n: u64) -> Vec<Vec<u64>> {
    assert!(n >= 1, "modulus must be positive");
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width, "row width mismatch");
            let mut r = r.clone();
            reduce_row(&mut r, n);
            r
        })
        .filter(|r| !is_zero(r))
        .collect();
    let mut pr = 0;
    for c in 0..width {
        let Some(sel) = (pr..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(pr, sel);
        for i in pr + 1..a.len() {
            combine(&mut a, pr, i, c, n);
        }
        let u = normalizing_unit(a[pr][c], n);
        for x in a[pr].iter_mut() {
            *x = (*x as u128 * u as u128 % n as u128) as u64;
        }
        let piv = a[pr][c];
        for i in 0..pr {
            let t = a[i][c] / piv;
            if t == 0 {
                continue;
            }
            for j in c..width {
                let sub = (t as u128 * a[pr][j] as u128 % n as u128) as u64;
                a[i][j] = (a[i][j] + n - sub) % n;
            }
        }
        let ann = n / piv;
        let extra: Vec<u64> = a[pr]
            .iter()
            .map(|&x| (x as u128 * ann as u128 % n as u128) as u64)
            .collect();
        if !is_zero(&extra) {
            a.push(extra);
        }
        pr += 1;
    }
    a.truncate(pr);
    debug_assert!(a.iter().all(|r| !is_zero(r)));
    a
}

/// Column index of the first nonzero entry.
pub fn pivot(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// `{x ∈ (Z/N)^rows : x·A = 0}` for an `rows × cols` matrix `A`, in Howell form.
pub fn left_kernel(a: &[Vec<u64>], rows: usize, cols: usize, n: u64) -> Vec<Vec<u64>> {
    let aug: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut r = a[i].clone();
            r.extend((0..rows).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let h = howell_form(&aug, cols + rows, n);
    let ker: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|r| r[..cols].iter().all(|&x| x == 0))
        .map(|r| r[cols..].to_vec())
        .collect();
    howell_form(&ker, rows, n)
}
