//! Exact linear solves over ℚ by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<BigRational>),
    /// the system has no solution
    Inconsistent,
    /// solutions exist but are not unique
    Underdetermined { rank: usize },
}

/// Solves `A·x = b` for a rectangular rational system (`rows × cols`).
///
/// Each row is scaled to integers, eliminated fraction-free, and the
/// echelon form is back-substituted in ℚ.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> SolveOutcome {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length must match row count");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            integer_row(row.iter().chain(std::iter::once(rhs)))
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..rows {
            let factor = m[i][c].clone();
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0].iter_mut().zip(&top[r]).take(cols + 1) {
                *x = (&pivot * &*x - &factor * y).div_floor(&prev);
            }
            debug_assert!(m[i][c].is_zero());
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return SolveOutcome::Inconsistent;
    }
    if rank < cols {
        return SolveOutcome::Underdetermined { rank };
    }
    let mut x = vec![BigRational::zero(); cols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = BigRational::from_integer(m[r][cols].clone());
        for j in c + 1..cols {
            if !m[r][j].is_zero() {
                acc -= BigRational::from_integer(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / BigRational::from_integer(m[r][c].clone());
    }
    SolveOutcome::Unique(x)
}

/// Multiplies a rational row by the lcm of its denominators.
fn integer_row<'a>(row: impl Iterator<Item = &'a BigRational> + Clone) -> Vec<BigInt> {
    let l = row.clone().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.map(|q| q.numer() * (&l / q.denom())).collect()
}
