//! Even integral lattices and their discriminant groups.
//!
//! A [`GramMatrix`] `B` defines the finite abelian group `B⁻¹ℤⁿ/ℤⁿ ≅ ℤⁿ/Im(B)`
//! together with the pairing `vᵗBw mod 1` and the quadratic refinement
//! `vᵗBv mod 2`. Elements are stored by their unique representative in
//! `[0, 1)ⁿ` and enumerated in lexicographic order, zero first.

mod smith;
mod text;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclo::Rational;

pub use smith::{determinant, smith_decompose, SmithDecomposition};
pub use text::{parse_integer_matrix, MatrixTextError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric: entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("diagonal entry {i} is odd")]
    OddDiagonal { i: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("vector is not in the discriminant group (B·v is not integral)")]
    NotInDiscriminantGroup,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// A symmetric, even, nonsingular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

/// Validates `entries` as a Gram matrix.
pub fn check_gram(entries: Vec<Vec<i64>>) -> Result<GramMatrix, LatticeError> {
    GramMatrix::new(entries)
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = entries.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != n {
                return Err(LatticeError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i][j] != entries[j][i] {
                    return Err(LatticeError::NotSymmetric { i, j });
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| entries[i][i] % 2 != 0) {
            return Err(LatticeError::OddDiagonal { i });
        }
        let gram = GramMatrix { entries };
        if gram.determinant().is_zero() {
            return Err(LatticeError::Singular);
        }
        Ok(gram)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn big_entries(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.big_entries())
    }

    /// Block-diagonal join `self ⊕ other`.
    pub fn block_sum(&self, other: &GramMatrix) -> GramMatrix {
        let (n1, n2) = (self.dim(), other.dim());
        let mut entries = vec![vec![0; n1 + n2]; n1 + n2];
        for i in 0..n1 {
            entries[i][..n1].copy_from_slice(&self.entries[i]);
        }
        for i in 0..n2 {
            entries[n1 + i][n1..].copy_from_slice(&other.entries[i]);
        }
        GramMatrix { entries }
    }

    /// `B·v`, or an error if `v` has the wrong length.
    fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LatticeError> {
        if v.len() != self.dim() {
            return Err(LatticeError::DimensionMismatch {
                got: v.len(),
                expected: self.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(&b, x)| x * BigInt::from(b))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect())
    }

    fn apply_integral(&self, v: &[Rational]) -> Result<Vec<Rational>, LatticeError> {
        let bv = self.apply(v)?;
        if bv.iter().all(Rational::is_integer) {
            Ok(bv)
        } else {
            Err(LatticeError::NotInDiscriminantGroup)
        }
    }

    /// The raw value `vᵗBw` with no reduction and no integrality checks.
    pub fn pairing(&self, v: &[Rational], w: &[Rational]) -> Result<Rational, LatticeError> {
        let bw = self.apply(w)?;
        if v.len() != bw.len() {
            return Err(LatticeError::DimensionMismatch {
                got: v.len(),
                expected: bw.len(),
            });
        }
        Ok(v.iter().zip(&bw).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn smith_normal_form(b: &GramMatrix) -> SmithDecomposition {
    smith_decompose(b.big_entries())
}

fn mod1(q: &Rational) -> Rational {
    q - q.floor()
}

fn mod2(q: &Rational) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let k = (q / &two).floor();
    q - k * two
}

/// `vᵗBw mod 1`, in `[0, 1)`. Both vectors must lie in `B⁻¹ℤⁿ`.
pub fn bilinear_mod1(b: &GramMatrix, v: &[Rational], w: &[Rational]) -> Result<Rational, LatticeError> {
    b.apply_integral(v)?;
    let bw = b.apply_integral(w)?;
    let raw = v.iter().zip(&bw).fold(Rational::zero(), |acc, (a, c)| acc + a * c);
    Ok(mod1(&raw))
}

/// `vᵗBv mod 2`, in `[0, 2)`. `v` must lie in `B⁻¹ℤⁿ`.
pub fn quadratic_mod2(b: &GramMatrix, v: &[Rational]) -> Result<Rational, LatticeError> {
    let bv = b.apply_integral(v)?;
    let raw = v.iter().zip(&bv).fold(Rational::zero(), |acc, (a, c)| acc + a * c);
    Ok(mod2(&raw))
}

/// The finite abelian group `B⁻¹ℤⁿ/ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    representatives: Vec<Vec<Rational>>,
    invariant_factors: Vec<BigInt>,
    index: HashMap<Vec<Rational>, usize>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    /// Representatives in `[0,1)ⁿ`, sorted lexicographically; index 0 is zero.
    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> &[Rational] {
        &self.representatives[i]
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Label of the class of `v` (any representative, not necessarily reduced).
    pub fn index_of(&self, v: &[Rational]) -> Option<usize> {
        let reduced: Vec<Rational> = v.iter().map(mod1).collect();
        self.index.get(&reduced).copied()
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let sum: Vec<Rational> = self.representatives[i]
            .iter()
            .zip(&self.representatives[j])
            .map(|(a, b)| a + b)
            .collect();
        self.index_of(&sum).expect("discriminant group is closed under addition")
    }

    pub fn neg(&self, i: usize) -> usize {
        let neg: Vec<Rational> = self.representatives[i].iter().map(|a| -a).collect();
        self.index_of(&neg).expect("discriminant group is closed under negation")
    }
}

/// Enumerates `B⁻¹ℤⁿ/ℤⁿ` through the Smith decomposition `UBV = D`:
/// `B⁻¹ℤⁿ = V·D⁻¹ℤⁿ`, so the classes are `V·(k_1/d_1, …, k_n/d_n)`.
pub fn discriminant_group(b: &GramMatrix) -> DiscriminantGroup {
    let snf = smith_normal_form(b);
    let n = b.dim();
    let factors: Vec<u64> = snf
        .diag
        .iter()
        .map(|d| d.to_u64().expect("invariant factor too large to enumerate"))
        .collect();
    let order: u64 = factors.iter().product();
    let mut representatives = Vec::with_capacity(order as usize);
    let mut counter = vec![0u64; n];
    for _ in 0..order {
        let rep: Vec<Rational> = (0..n)
            .map(|row| {
                let x = (0..n).fold(Rational::zero(), |acc, col| {
                    acc + Rational::new(&snf.v[row][col] * BigInt::from(counter[col]), BigInt::from(factors[col]))
                });
                mod1(&x)
            })
            .collect();
        representatives.push(rep);
        for (c, &f) in counter.iter_mut().zip(&factors) {
            *c += 1;
            if *c < f {
                break;
            }
            *c = 0;
        }
    }
    representatives.sort();
    let index = representatives
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let invariant_factors = snf.diag.into_iter().filter(|d| !d.is_one()).collect();
    DiscriminantGroup {
        representatives,
        invariant_factors,
        index,
    }
}

impl GramMatrix {
    /// `|det B|` as a machine integer.
    pub fn abs_det(&self) -> u64 {
        self.determinant().abs().to_u64().expect("determinant exceeds u64")
    }

    /// Lcm of the denominators in `B⁻¹`; every pairing value has a denominator dividing it.
    pub fn exponent(&self) -> u64 {
        smith_normal_form(self)
            .diag
            .iter()
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
            .to_u64()
            .expect("group exponent exceeds u64")
    }
}
