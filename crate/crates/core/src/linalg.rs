//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// Solves `a · x = b` for a `rows × cols` system.
///
/// Returns the unique solution when the system is consistent and `a` has full
/// column rank, `None` otherwise.
pub(crate) fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let pivot = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, pivot);
        b.swap(pivot_row, pivot);
        let inv = a[pivot_row][col].recip();
        for c in col..cols {
            a[pivot_row][c] *= &inv;
        }
        b[pivot_row] *= &inv;
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[pivot_row];
            b[r] -= delta;
        }
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(b.into_iter().take(cols).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn square_system() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let x = solve(a, vec![r(3), r(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
    }

    #[test]
    fn inconsistent_overdetermined() {
        let a = vec![vec![r(1)], vec![r(1)]];
        assert!(solve(a.clone(), vec![r(1), r(2)]).is_none());
        assert_eq!(solve(a, vec![r(2), r(2)]), Some(vec![r(2)]));
    }

    #[test]
    fn singular() {
        let a = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve(a, vec![r(1), r(1)]).is_none());
    }
}
