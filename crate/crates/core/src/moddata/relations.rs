//! Exact verification of the identities satisfied by modular data.
//!
//! With the conventions used here (`S̃_ij = e(⟨v_i, v_j⟩)`, `θ_i = e(q(v_i)/2)`)
//! the modular-group relations read
//!
//! ```text
//! S̃² = D²·C,   C² = I,   (S̃T)³ = p₊·C·S̃²,   (S̃T⁻¹)³ = p₋·S̃²
//! ```
//!
//! For self-dual data (`C = I`) the third one is `(S̃T)³ = p₊·S̃²`.

use std::fmt;

use super::fusion::verlinde_fusion;
use super::matrix;
use super::ModularData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    SymmetricS,
    GaussIdentity,
    Unitarity,
    VerlindeIntegrality,
    UnitTwist,
    SSquaredIsCharge,
    ChargeInvolution,
    StCubed,
    StInverseCubed,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::SymmetricS,
        Relation::GaussIdentity,
        Relation::Unitarity,
        Relation::VerlindeIntegrality,
        Relation::UnitTwist,
        Relation::SSquaredIsCharge,
        Relation::ChargeInvolution,
        Relation::StCubed,
        Relation::StInverseCubed,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::SymmetricS => "s_symmetric",
            Relation::GaussIdentity => "gauss_identity",
            Relation::Unitarity => "unitarity",
            Relation::VerlindeIntegrality => "verlinde_integrality",
            Relation::UnitTwist => "t_unit",
            Relation::SSquaredIsCharge => "s_squared_charge",
            Relation::ChargeInvolution => "charge_involution",
            Relation::StCubed => "st_cubed",
            Relation::StInverseCubed => "st_inverse_cubed",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Relation::SymmetricS => "S~ is symmetric",
            Relation::GaussIdentity => "p+ p- = D^2",
            Relation::Unitarity => "S~ S~^dagger = D^2 I",
            Relation::VerlindeIntegrality => "Verlinde multiplicities are non-negative integers",
            Relation::UnitTwist => "T is diagonal with T[0][0] = 1",
            Relation::SSquaredIsCharge => "S~^2 = D^2 C with C a permutation",
            Relation::ChargeInvolution => "C^2 = I and C(0) = 0",
            Relation::StCubed => "(S~ T)^3 = p+ C S~^2",
            Relation::StInverseCubed => "(S~ T^-1)^3 = p- S~^2",
        }
    }

    pub fn from_id(id: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub relation: Relation,
    pub passed: bool,
}

/// Outcome of a batch of exact checks. Failures are entries, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = Relation> + '_ {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.relation)
    }

    pub fn get(&self, relation: Relation) -> Option<bool> {
        self.checks.iter().find(|c| c.relation == relation).map(|c| c.passed)
    }

    fn push(&mut self, relation: Relation, passed: bool) {
        self.checks.push(CheckResult { relation, passed });
    }
}

/// `T` normalization, `S̃² = D²C`, `C² = I` and the two cubic relations.
pub fn check_modular_relations(md: &ModularData) -> Report {
    let mut report = Report::default();
    let s = md.s_tilde();
    let rank = md.rank();
    report.push(Relation::UnitTwist, md.twists()[0].is_one());

    let charge = md.charge_conjugation();
    report.push(Relation::SSquaredIsCharge, charge.is_some());
    let involution = charge
        .as_ref()
        .is_some_and(|c| c[0] == 0 && c.iter().enumerate().all(|(i, &k)| c[k] == i));
    report.push(Relation::ChargeInvolution, involution);

    let gauss = md.gauss_data();
    let s2 = matrix::mul(s, s);

    let st_cubed = match &charge {
        Some(c) => {
            let st = matrix::mul_diag(s, md.twists());
            let lhs = matrix::mul(&matrix::mul(&st, &st), &st);
            let rhs = matrix::scale(&matrix::mul(&matrix::permutation(c), &s2), &gauss.p_plus);
            matrix::equal(&lhs, &rhs)
        }
        None => false,
    };
    report.push(Relation::StCubed, st_cubed);

    let inverse_twists: Vec<_> = md.twists().iter().map(|t| t.inverse()).collect();
    let st_inv = matrix::mul_diag(s, &inverse_twists);
    let lhs = matrix::mul(&matrix::mul(&st_inv, &st_inv), &st_inv);
    let rhs = matrix::scale(&s2, &gauss.p_minus);
    report.push(Relation::StInverseCubed, rank > 0 && matrix::equal(&lhs, &rhs));
    report
}

/// Symmetry, Gauss identity, unitarity, Verlinde integrality, then the
/// modular relations.
pub fn verify(md: &ModularData) -> Report {
    let s = md.s_tilde();
    let rank = md.rank();
    let mut report = Report::default();
    let symmetric = (0..rank).all(|i| (i + 1..rank).all(|j| s[i][j] == s[j][i]));
    report.push(Relation::SymmetricS, symmetric);
    report.push(Relation::GaussIdentity, md.gauss_data().identity_holds);
    report.push(Relation::Unitarity, md.is_unitary());
    report.push(Relation::VerlindeIntegrality, verlinde_fusion(md).is_ok());
    report.checks.extend(check_modular_relations(md).checks);
    report
}
