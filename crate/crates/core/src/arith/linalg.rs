//! Dense Gaussian elimination over F_ℓ.

use super::modular::{inv_mod, mul_mod, sub_mod};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order. Only the first `cols` columns are eligible pivots.
fn rref(m: &mut [Vec<u64>], cols: usize, ell: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, sel);
        let inv = inv_mod(m[row][col], ell).expect("ℓ is prime");
        for x in m[row].iter_mut() {
            *x = mul_mod(*x, inv, ell);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            let f = other[col];
            if r != row && f != 0 {
                for (x, &p) in other.iter_mut().zip(&pivot_row) {
                    if p != 0 {
                        *x = sub_mod(*x, mul_mod(f, p, ell), ell);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank_mod_ell(rows: &[Vec<u64>], ell: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % ell).collect()).collect();
    rref(&mut m, cols, ell).len()
}

/// Outcome of solving `A x = b` over F_ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Per unknown, its value when the system pins it down.
    Consistent(Vec<Option<u64>>),
    Inconsistent,
}

pub fn solve_mod_ell(rows: &[Vec<u64>], rhs: &[u64], n_unknowns: usize, ell: u64) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            assert_eq!(r.len(), n_unknowns);
            let mut v: Vec<u64> = r.iter().map(|&x| x % ell).collect();
            v.push(b % ell);
            v
        })
        .collect();
    let pivots = rref(&mut m, n_unknowns, ell);
    if m[pivots.len()..].iter().any(|r| r[n_unknowns] != 0) {
        return Solution::Inconsistent;
    }
    let mut is_pivot = vec![false; n_unknowns];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = vec![None; n_unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        // determined iff the pivot row touches no free column
        let pinned = (0..n_unknowns).all(|j| is_pivot[j] || m[r][j] == 0);
        if pinned {
            out[c] = Some(m[r][n_unknowns]);
        }
    }
    Solution::Consistent(out)
}
