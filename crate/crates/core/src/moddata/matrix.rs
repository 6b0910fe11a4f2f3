//! Dense square matrices over cyclotomic fields.

use rayon::prelude::*;

use crate::cyclo::{Cyclotomic, RootOfUnity};

pub type CycloMatrix = Vec<Vec<Cyclotomic>>;

pub fn identity(n: usize) -> CycloMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.par_iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// `a · diag(d)`.
pub fn mul_diag(a: &CycloMatrix, d: &[RootOfUnity]) -> CycloMatrix {
    let d: Vec<Cyclotomic> = d.iter().map(RootOfUnity::to_cyclotomic).collect();
    a.iter()
        .map(|row| row.iter().zip(&d).map(|(x, y)| x * y).collect())
        .collect()
}

pub fn scale(a: &CycloMatrix, c: &Cyclotomic) -> CycloMatrix {
    a.iter().map(|row| row.iter().map(|x| x * c).collect()).collect()
}

pub fn conjugate_transpose(a: &CycloMatrix) -> CycloMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].conjugate()).collect())
        .collect()
}

pub fn permutation(p: &[usize]) -> CycloMatrix {
    let n = p.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if p[i] == j { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect()
        })
        .collect()
}

pub fn equal(a: &CycloMatrix, b: &CycloMatrix) -> bool {
    a.len() == b.len()
        && a.par_iter()
            .zip(b.par_iter())
            .all(|(ra, rb)| ra.len() == rb.len() && ra.iter().zip(rb).all(|(x, y)| x == y))
}

/// Gaussian elimination over the field; true iff the determinant is nonzero.
pub fn is_nonsingular(a: &CycloMatrix) -> bool {
    let mut m = a.clone();
    let n = m.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, p);
        let inv = m[col][col].inverse().expect("nonzero pivot");
        let pivot_row: Vec<Cyclotomic> = m[col].iter().map(|x| x * &inv).collect();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let delta = &factor * &pivot_row[c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semion_square() {
        let s: CycloMatrix = vec![
            vec![Cyclotomic::one(), Cyclotomic::one()],
            vec![Cyclotomic::one(), Cyclotomic::from_integer(-1)],
        ];
        let sq = mul(&s, &s);
        assert!(equal(&sq, &scale(&identity(2), &Cyclotomic::from_integer(2))));
        assert!(is_nonsingular(&s));
        let degenerate: CycloMatrix = vec![vec![Cyclotomic::one(); 2]; 2];
        assert!(!is_nonsingular(&degenerate));
    }
}
