//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::numbers::Rational;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Nonsingular system.
    Unique(Vec<Rational>),
    /// Consistent but rank deficient; free variables were set to zero.
    Particular {
        x: Vec<Rational>,
        free: Vec<usize>,
    },
    Inconsistent,
}

impl Solution {
    pub fn vector(&self) -> Option<&[Rational]> {
        match self {
            Solution::Unique(x) | Solution::Particular { x, .. } => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

/// Solves a square or rectangular system by fraction-exact row reduction.
///
/// `a` is row-major with `a.len()` equations of `cols` unknowns each.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Solution {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let rows = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row][col..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (t, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                    *t -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }

    // a zero row with nonzero rhs means no solution
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }

    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    if pivots.len() == cols {
        Solution::Unique(x)
    } else {
        let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
        Solution::Particular { x, free }
    }
}
