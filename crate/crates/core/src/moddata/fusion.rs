//! Fusion rules from the Verlinde formula.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Label, ModularData, ModularDataError};
use crate::cyclo::{Cyclotomic, Rational};

/// Multiplicities `N_{i,j}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    rank: usize,
    entries: Vec<u64>,
}

impl FusionTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.entries[(i * self.rank + j) * self.rank + k]
    }

    /// The matrix `N_i` with `(N_i)_{j,k} = N_{i,j}^k`.
    pub fn matrix(&self, i: Label) -> Vec<Vec<u64>> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|k| self.get(i.0, j, k)).collect())
            .collect()
    }

    /// Outcomes `k` with `N_{i,j}^k > 0`.
    pub fn outcomes(&self, i: Label, j: Label) -> impl Iterator<Item = (Label, u64)> + '_ {
        (0..self.rank)
            .map(move |k| (Label(k), self.get(i.0, j.0, k)))
            .filter(|&(_, n)| n > 0)
    }
}

/// `N_{i,j}^k = (1/D²) Σ_a S̃_{ia} S̃_{ja} conj(S̃_{ka}) / d_a`, rejected unless
/// every value is a non-negative integer.
pub fn verlinde_fusion(md: &ModularData) -> Result<FusionTensor, ModularDataError> {
    let rank = md.rank();
    let s = md.s_tilde();
    let d2_inv = md
        .global_dimension_squared()
        .inverse()
        .ok_or_else(|| ModularDataError::NotModular("D^2 = 0".into()))?;
    let d_inv = s[0]
        .iter()
        .map(|d| {
            d.inverse()
                .ok_or_else(|| ModularDataError::NotModular("a quantum dimension is zero".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s_conj: Vec<Vec<Cyclotomic>> = s
        .iter()
        .map(|row| row.iter().map(Cyclotomic::conjugate).collect())
        .collect();

    let pairs: Vec<(usize, usize)> = (0..rank).flat_map(|i| (i..rank).map(move |j| (i, j))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(i, j)| {
            let weights: Vec<Cyclotomic> = (0..rank)
                .map(|a| &(&s[i][a] * &s[j][a]) * &d_inv[a])
                .collect();
            (0..rank)
                .map(|k| {
                    let sum: Cyclotomic = weights.iter().zip(&s_conj[k]).map(|(w, c)| w * c).sum();
                    let value = &sum * &d2_inv;
                    as_multiplicity(&value).ok_or_else(|| ModularDataError::NonIntegralFusion {
                        i,
                        j,
                        k,
                        value: value.to_string(),
                    })
                })
                .collect::<Result<Vec<u64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut entries = vec![0u64; rank * rank * rank];
    for (&(i, j), row) in pairs.iter().zip(rows) {
        for (k, n) in row.into_iter().enumerate() {
            entries[(i * rank + j) * rank + k] = n;
            entries[(j * rank + i) * rank + k] = n;
        }
    }
    Ok(FusionTensor { rank, entries })
}

fn as_multiplicity(x: &Cyclotomic) -> Option<u64> {
    let r = x.to_rational()?;
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_u64()
}

pub fn fusion_matrices(ft: &FusionTensor, i: Label) -> Vec<Vec<u64>> {
    ft.matrix(i)
}

/// `P(k | i, j) = N_{i,j}^k · d_k / (d_i · d_j)` over outcomes with `N_{i,j}^k > 0`.
pub fn fusion_probabilities(
    md: &ModularData,
    ft: &FusionTensor,
    i: Label,
    j: Label,
) -> Result<Vec<(Label, Rational)>, ModularDataError> {
    md.check_label(i)?;
    md.check_label(j)?;
    let d = &md.s_tilde()[0];
    let not_prob = || ModularDataError::NotProbabilistic { i: i.0, j: j.0 };
    let norm = (&d[i.0] * &d[j.0]).inverse().ok_or_else(not_prob)?;
    let mut out = Vec::new();
    let mut total = Rational::zero();
    for (k, n) in ft.outcomes(i, j) {
        let weight = (&d[k.0] * &norm).scale(&Rational::from_integer(n.into()));
        let p = weight.to_rational().ok_or_else(not_prob)?;
        if p.is_negative() {
            return Err(not_prob());
        }
        total += &p;
        out.push((k, p));
    }
    if !total.is_one() {
        return Err(not_prob());
    }
    Ok(out)
}
