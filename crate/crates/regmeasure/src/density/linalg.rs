//! Exact linear solves by fraction-free Gaussian elimination.
//!
//! Rows are scaled to integers first, then eliminated Bareiss-style: each
//! step divides by the previous pivot, which is an exact division, so
//! intermediate entries stay single determinants rather than products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::rational::BigRational;

/// Solve `A · X = B` for square `A` (n×n) and multi-column `B` (n×k).
/// Fails with an internal error if `A` is singular.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = b[0].len();
    if b.len() != n || a.iter().any(|row| row.len() != n) || b.iter().any(|row| row.len() != k) {
        return Err(Error::internal("linear system has inconsistent dimensions"));
    }

    // Clear denominators row by row; row scaling preserves solutions.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (a_row, b_row) in a.iter().zip(b) {
        let mut lcm = BigInt::one();
        for x in a_row.iter().chain(b_row.iter()) {
            lcm = lcm.lcm(x.denom());
        }
        let mut row = Vec::with_capacity(n + k);
        for x in a_row.iter().chain(b_row.iter()) {
            row.push(x.numer() * (&lcm / x.denom()));
        }
        m.push(row);
    }

    // Fraction-free forward elimination with row pivoting.
    let mut prev = BigInt::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::internal("singular linear system"))?;
        m.swap(col, pivot_row);
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        let pivot = pivot_row[col].clone();
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for (c, entry) in row.iter_mut().enumerate().skip(col) {
                let val = &*entry * &pivot - &factor * &pivot_row[c];
                let (q, rem) = val.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                *entry = q;
            }
        }
        prev = pivot;
    }

    // Back substitution over rationals.
    let mut x = vec![vec![BigRational::zero(); k]; n];
    for row in (0..n).rev() {
        for col in 0..k {
            let mut acc = BigRational::from(m[row][n + col].clone());
            for j in row + 1..n {
                acc -= BigRational::from(m[row][j].clone()) * &x[j][col];
            }
            x[row][col] = acc / BigRational::from(m[row][row].clone());
        }
    }
    Ok(x)
}
