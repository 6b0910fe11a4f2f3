//! Modular data: the unnormalized S-matrix `S̃` and the twists `θ_i`.
//!
//! [`ModularData::from_lattice`] builds the pointed data of an even lattice:
//! labels are the discriminant group `B⁻¹ℤⁿ/ℤⁿ`, `S̃_ij = e(⟨v_i, v_j⟩_B)` and
//! `θ_i = e(⟨v_i, v_i⟩_B / 2)`. Everything derived from the data (dimensions,
//! Gauss sums, fusion rules, charge conjugation) is recomputed exactly from
//! `S̃` and `θ`.

mod canonical;
mod fusion;
mod link;
pub mod matrix;
mod relations;

use std::fmt;

use thiserror::Error;

use crate::cyclo::{Cyclotomic, RootOfUnity};
use crate::lattice::{self, DiscriminantGroup, GramMatrix, LatticeError};

pub use canonical::{canonical_form, canonical_form_with_bound, DEFAULT_CANONICAL_RANK_BOUND};
pub use fusion::{fusion_matrices, fusion_probabilities, verlinde_fusion, FusionTensor};
pub use link::{colored_link_invariant, FramedLink};
pub use matrix::CycloMatrix;
pub use relations::{check_modular_relations, verify, CheckResult, Relation, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularDataError {
    #[error("modular data must have at least one label")]
    Empty,
    #[error("s_tilde must be {rank}x{rank}")]
    NotSquare { rank: usize },
    #[error("expected {expected} twists, got {got}")]
    TwistCount { expected: usize, got: usize },
    #[error("s_tilde is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("s_tilde[0][0] must be 1")]
    UnitDimension,
    #[error("the twist of label 0 must be 1")]
    UnitTwist,
    #[error("s_tilde is degenerate")]
    Degenerate,
    #[error("expected {expected} label names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("label name {0:?} must be non-empty and free of commas, '#' and control characters")]
    InvalidLabelName(String),
    #[error("fusion multiplicity N_{{{i},{j}}}^{k} = {value} is not a non-negative integer")]
    NonIntegralFusion { i: usize, j: usize, k: usize, value: String },
    #[error("fusion weights for {i} x {j} do not form a probability distribution")]
    NotProbabilistic { i: usize, j: usize },
    #[error("not modular: {0}")]
    NotModular(String),
    #[error("operation needs data built from a lattice")]
    NoLatticeProvenance,
    #[error("label {label} out of range for rank {rank}")]
    InvalidLabel { label: usize, rank: usize },
    #[error("rank {rank} exceeds the canonical-form bound {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("data does not match the modular data of its provenance matrix")]
    ProvenanceMismatch,
    #[error("invalid framed link: {0}")]
    InvalidLink(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Index of a simple object; label 0 is the tensor unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub usize);

impl Label {
    pub const UNIT: Label = Label(0);
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Lattice a modular datum was constructed from.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub gram: GramMatrix,
    pub group: DiscriminantGroup,
}

#[derive(Clone, Debug)]
pub struct ModularData {
    s_tilde: CycloMatrix,
    twists: Vec<RootOfUnity>,
    label_names: Option<Vec<String>>,
    provenance: Option<Provenance>,
}

/// Exact Gauss sums of a modular datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussData {
    pub d_squared: Cyclotomic,
    pub p_plus: Cyclotomic,
    pub p_minus: Cyclotomic,
    pub identity_holds: bool,
}

impl ModularData {
    /// Validates generic modular data: `S̃` square and symmetric with
    /// `S̃[0][0] = 1`, `θ_0 = 1`, and `S̃` nondegenerate.
    pub fn new(s_tilde: CycloMatrix, twists: Vec<RootOfUnity>) -> Result<Self, ModularDataError> {
        let rank = twists.len();
        if rank == 0 {
            return Err(ModularDataError::Empty);
        }
        if s_tilde.len() != rank {
            return Err(if s_tilde.iter().all(|r| r.len() == s_tilde.len()) {
                ModularDataError::TwistCount {
                    expected: s_tilde.len(),
                    got: rank,
                }
            } else {
                ModularDataError::NotSquare { rank: s_tilde.len() }
            });
        }
        if s_tilde.iter().any(|r| r.len() != rank) {
            return Err(ModularDataError::NotSquare { rank });
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if s_tilde[i][j] != s_tilde[j][i] {
                    return Err(ModularDataError::NotSymmetric { i, j });
                }
            }
        }
        if !s_tilde[0][0].is_one() {
            return Err(ModularDataError::UnitDimension);
        }
        if !twists[0].is_one() {
            return Err(ModularDataError::UnitTwist);
        }
        let md = ModularData {
            s_tilde,
            twists,
            label_names: None,
            provenance: None,
        };
        if !md.is_nondegenerate() {
            return Err(ModularDataError::Degenerate);
        }
        Ok(md)
    }

    /// The pointed modular data `G_B` of an even lattice.
    pub fn from_lattice(b: &GramMatrix) -> Result<Self, ModularDataError> {
        let group = lattice::discriminant_group(b);
        let reps = group.representatives();
        let rank = reps.len();
        let mut s_tilde: CycloMatrix = vec![Vec::with_capacity(rank); rank];
        for i in 0..rank {
            for j in 0..rank {
                let entry = if j < i {
                    s_tilde[j][i].clone()
                } else {
                    Cyclotomic::root_of_unity(&lattice::bilinear_mod1(b, &reps[i], &reps[j])?)
                };
                s_tilde[i].push(entry);
            }
        }
        let half = crate::cyclo::Rational::new(1.into(), 2.into());
        let twists = reps
            .iter()
            .map(|v| Ok(RootOfUnity::new(lattice::quadratic_mod2(b, v)? * &half)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        Ok(ModularData {
            s_tilde,
            twists,
            label_names: None,
            provenance: Some(Provenance {
                gram: b.clone(),
                group,
            }),
        })
    }

    /// Attaches lattice provenance after checking the data agrees with
    /// `from_lattice(b)` exactly.
    pub fn with_provenance(mut self, b: &GramMatrix) -> Result<Self, ModularDataError> {
        let built = Self::from_lattice(b)?;
        if built.twists != self.twists || !matrix::equal(&built.s_tilde, &self.s_tilde) {
            return Err(ModularDataError::ProvenanceMismatch);
        }
        self.provenance = built.provenance;
        Ok(self)
    }

    pub fn with_label_names(mut self, names: Vec<String>) -> Result<Self, ModularDataError> {
        if names.len() != self.rank() {
            return Err(ModularDataError::NameCount {
                expected: self.rank(),
                got: names.len(),
            });
        }
        if let Some(bad) = names.iter().find(|n| {
            n.is_empty() || n.trim() != n.as_str() || n.contains([',', '#']) || n.chars().any(char::is_control)
        }) {
            return Err(ModularDataError::InvalidLabelName(bad.clone()));
        }
        self.label_names = Some(names);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (0..self.rank()).map(Label)
    }

    pub fn s_tilde(&self) -> &CycloMatrix {
        &self.s_tilde
    }

    pub fn twists(&self) -> &[RootOfUnity] {
        &self.twists
    }

    pub fn label_names(&self) -> Option<&[String]> {
        self.label_names.as_deref()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn check_label(&self, label: Label) -> Result<(), ModularDataError> {
        if label.0 < self.rank() {
            Ok(())
        } else {
            Err(ModularDataError::InvalidLabel {
                label: label.0,
                rank: self.rank(),
            })
        }
    }

    /// Row 0 of `S̃`: the unknot invariants `d_i`.
    pub fn quantum_dimensions(&self) -> Vec<Cyclotomic> {
        self.s_tilde[0].clone()
    }

    /// `D² = Σ d_i²`.
    pub fn global_dimension_squared(&self) -> Cyclotomic {
        self.s_tilde[0].iter().map(|d| d * d).sum()
    }

    pub fn gauss_data(&self) -> GaussData {
        let mut d_squared = Cyclotomic::zero();
        let mut p_plus = Cyclotomic::zero();
        let mut p_minus = Cyclotomic::zero();
        for (d, theta) in self.s_tilde[0].iter().zip(&self.twists) {
            let d2 = d * d;
            let t = theta.to_cyclotomic();
            p_plus += &(&t * &d2);
            p_minus += &(&t.conjugate() * &d2);
            d_squared += &d2;
        }
        let identity_holds = (&p_plus * &p_minus - &d_squared).is_zero();
        GaussData {
            d_squared,
            p_plus,
            p_minus,
            identity_holds,
        }
    }

    /// `S̃ S̃† = D² I`, the unitarity of `S = S̃/D`.
    pub fn is_unitary(&self) -> bool {
        let d2 = self.global_dimension_squared();
        let prod = matrix::mul(&self.s_tilde, &matrix::conjugate_transpose(&self.s_tilde));
        matrix::equal(&prod, &matrix::scale(&matrix::identity(self.rank()), &d2))
    }

    fn is_nondegenerate(&self) -> bool {
        let d2 = self.global_dimension_squared();
        (!d2.is_zero() && self.is_unitary()) || matrix::is_nonsingular(&self.s_tilde)
    }

    /// The permutation `C` with `S̃² = D²·C`, if `S̃²/D²` is a permutation matrix.
    pub(crate) fn charge_conjugation(&self) -> Option<Vec<usize>> {
        let d2 = self.global_dimension_squared();
        if d2.is_zero() {
            return None;
        }
        let sq = matrix::mul(&self.s_tilde, &self.s_tilde);
        let rank = self.rank();
        let mut perm = Vec::with_capacity(rank);
        for row in &sq {
            let mut target = None;
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if target.is_some() || *x != d2 {
                    return None;
                }
                target = Some(k);
            }
            perm.push(target?);
        }
        let mut seen = vec![false; rank];
        for &k in &perm {
            if std::mem::replace(&mut seen[k], true) {
                return None;
            }
        }
        Some(perm)
    }

    /// Label `i ↦ i*`, read off from `S̃² = D²·C`.
    pub fn dual_permutation(&self) -> Result<Vec<Label>, ModularDataError> {
        let perm = self
            .charge_conjugation()
            .ok_or_else(|| ModularDataError::NotModular("S~^2 / D^2 is not a permutation matrix".into()))?;
        if perm[0] != 0 {
            return Err(ModularDataError::NotModular("charge conjugation moves the unit".into()));
        }
        if perm.iter().enumerate().any(|(i, &k)| perm[k] != i) {
            return Err(ModularDataError::NotModular("charge conjugation is not an involution".into()));
        }
        Ok(perm.into_iter().map(Label).collect())
    }

    /// Relabels so that new label `a` is old label `perm[a]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, ModularDataError> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
            return Err(ModularDataError::NotModular("relabeling is not a permutation".into()));
        }
        if perm[0] != 0 {
            return Err(ModularDataError::NotModular("relabeling must fix the unit".into()));
        }
        let s_tilde = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.s_tilde[i][j].clone()).collect())
            .collect();
        let twists = perm.iter().map(|&i| self.twists[i].clone()).collect();
        let label_names = self
            .label_names
            .as_ref()
            .map(|names| perm.iter().map(|&i| names[i].clone()).collect());
        Ok(ModularData {
            s_tilde,
            twists,
            label_names,
            provenance: None,
        })
    }

    /// Product data on label pairs `(a, b) ↦ a·rank(other) + b`.
    pub fn product(&self, other: &ModularData) -> ModularData {
        let (r1, r2) = (self.rank(), other.rank());
        let mut s_tilde = vec![Vec::with_capacity(r1 * r2); r1 * r2];
        for a in 0..r1 {
            for b in 0..r2 {
                let row = &mut s_tilde[a * r2 + b];
                for c in 0..r1 {
                    for d in 0..r2 {
                        row.push(&self.s_tilde[a][c] * &other.s_tilde[b][d]);
                    }
                }
            }
        }
        let twists = (0..r1)
            .flat_map(|a| (0..r2).map(move |b| (a, b)))
            .map(|(a, b)| &self.twists[a] * &other.twists[b])
            .collect();
        ModularData {
            s_tilde,
            twists,
            label_names: None,
            provenance: None,
        }
    }
}

impl PartialEq for ModularData {
    fn eq(&self, other: &Self) -> bool {
        self.twists == other.twists
            && self.label_names == other.label_names
            && self.provenance.as_ref().map(|p| &p.gram) == other.provenance.as_ref().map(|p| &p.gram)
            && matrix::equal(&self.s_tilde, &other.s_tilde)
    }
}

/// Block-diagonal join of two Gram matrices; `G_{B1⊕B2}` is the product of
/// `G_{B1}` and `G_{B2}`.
pub fn direct_sum(b1: &GramMatrix, b2: &GramMatrix) -> GramMatrix {
    b1.block_sum(b2)
}
