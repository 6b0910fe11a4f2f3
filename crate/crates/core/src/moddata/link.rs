//! Colored framed links and their invariants for lattice data.

use num_bigint::BigInt;

use super::{Label, ModularData, ModularDataError};
use crate::cyclo::{Cyclotomic, Rational, RootOfUnity};
use crate::lattice::{bilinear_mod1, quadratic_mod2};

/// A framed link up to the data a pointed theory can see: the linking
/// matrix (framings on the diagonal) and a color per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    linking: Vec<Vec<i64>>,
    colors: Vec<Label>,
}

impl FramedLink {
    pub fn new(linking: Vec<Vec<i64>>, colors: Vec<Label>) -> Result<Self, ModularDataError> {
        let m = linking.len();
        if linking.iter().any(|r| r.len() != m) {
            return Err(ModularDataError::InvalidLink("linking matrix is not square".into()));
        }
        for i in 0..m {
            for j in i + 1..m {
                if linking[i][j] != linking[j][i] {
                    return Err(ModularDataError::InvalidLink(format!(
                        "linking matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if colors.len() != m {
            return Err(ModularDataError::InvalidLink(format!(
                "{} colors for {m} components",
                colors.len()
            )));
        }
        Ok(FramedLink { linking, colors })
    }

    pub fn hopf(i: Label, j: Label) -> Self {
        FramedLink {
            linking: vec![vec![0, 1], vec![1, 0]],
            colors: vec![i, j],
        }
    }

    pub fn unknot(framing: i64, color: Label) -> Self {
        FramedLink {
            linking: vec![vec![framing]],
            colors: vec![color],
        }
    }

    pub fn components(&self) -> usize {
        self.colors.len()
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn colors(&self) -> &[Label] {
        &self.colors
    }
}

/// `e( Σ_i L_ii·q(v_{c_i})/2 + Σ_{i<j} L_ij·b(v_{c_i}, v_{c_j}) )`, normalized so
/// the empty link is 1 and the Hopf link colored `(i, j)` is `S̃_ij`.
pub fn colored_link_invariant(md: &ModularData, link: &FramedLink) -> Result<Cyclotomic, ModularDataError> {
    let prov = md.provenance().ok_or(ModularDataError::NoLatticeProvenance)?;
    for &c in link.colors() {
        md.check_label(c)?;
    }
    let b = &prov.gram;
    let vec_of = |l: Label| prov.group.representative(l.0);
    let half = Rational::new(1.into(), 2.into());
    let mut exponent = Rational::from_integer(0.into());
    let m = link.components();
    for i in 0..m {
        let vi = vec_of(link.colors[i]);
        let framing = BigInt::from(link.linking[i][i]);
        exponent += quadratic_mod2(b, vi)? * &half * framing;
        for j in i + 1..m {
            let lk = BigInt::from(link.linking[i][j]);
            exponent += bilinear_mod1(b, vi, vec_of(link.colors[j]))? * lk;
        }
    }
    Ok(RootOfUnity::new(exponent).to_cyclotomic())
}
