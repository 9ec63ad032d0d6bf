//! Local finiteness and the Mathieu-Zhao property of `Im D`.

use num_bigint::BigUint;

use crate::algebra::{nonneg_kernel_witness, QMatrix, UniPoly};
use crate::deriv::{Derivation, TriangularDerivation};

/// `D = ∂x + Σ (a_j y_j + b_j) ∂_j` with `b_j ∈ Q[x, y_1..y_{j-1}]` is locally
/// finite iff every `a_j` is constant.
pub fn is_locally_finite(d: &TriangularDerivation) -> bool {
    d.entries()
        .iter()
        .all(|(a, _)| a.degree().unwrap_or(0) == 0)
}

/// A nonzero `γ ∈ N^n` with `Σ γ_i a_i = 0`, if one exists.
pub fn nat_dependence_witness(as_: &[UniPoly]) -> Option<Vec<BigUint>> {
    let rows = as_
        .iter()
        .filter_map(UniPoly::degree)
        .max()
        .map_or(1, |d| d as usize + 1);
    let mut m = QMatrix::zeros(rows, as_.len());
    for (i, a) in as_.iter().enumerate() {
        for (k, c) in a.terms() {
            m[(k as usize, i)] = c.clone();
        }
    }
    nonneg_kernel_witness(&m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzStatus {
    IsMz,
    NotMz,
    Unknown,
}

impl MzStatus {
    pub fn tag(self) -> &'static str {
        match self {
            MzStatus::IsMz => "IS_MZ",
            MzStatus::NotMz => "NOT_MZ",
            MzStatus::Unknown => "UNKNOWN",
        }
    }
}

/// The criterion that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzRule {
    /// Every `a_i` is constant: `D` is locally finite and `1 = D(x) ∈ Im D`.
    AllConstant,
    /// One block with `deg a >= 1`.
    SingleBlockNonConstant,
    /// Some `deg a_i >= 1` and `Σ γ_i a_i = 0` has no nonzero solution in `N^n`.
    NoNaturalDependence,
    /// No criterion applies.
    OutsideCriteria,
}

impl MzRule {
    pub fn reason(self) -> &'static str {
        match self {
            MzRule::AllConstant => "all a_i constant; locally finite with 1 in Im D",
            MzRule::SingleBlockNonConstant => "single block with deg a >= 1",
            MzRule::NoNaturalDependence => {
                "some deg a_i >= 1 and no nonzero gamma in N^n with sum gamma_i a_i = 0"
            }
            MzRule::OutsideCriteria => "outside the known criteria",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MzVerdict {
    pub status: MzStatus,
    pub rule: MzRule,
    /// `γ` from [`nat_dependence_witness`] on the per-variable `a` list; set
    /// only for `Unknown` verdicts, where it blocks the non-MZ criterion.
    pub gamma: Option<Vec<BigUint>>,
}

/// Decides whether `Im D` is a Mathieu-Zhao subspace of `Q[x, y]` where a
/// criterion applies.
pub fn mz_classify(d: &Derivation) -> MzVerdict {
    let verdict = |status, rule, gamma| MzVerdict {
        status,
        rule,
        gamma,
    };
    if d.blocks().iter().all(|b| b.a().degree().unwrap_or(0) == 0) {
        return verdict(MzStatus::IsMz, MzRule::AllConstant, None);
    }
    if d.blocks().len() == 1 {
        return verdict(MzStatus::NotMz, MzRule::SingleBlockNonConstant, None);
    }
    let per_variable: Vec<UniPoly> = d.pairs().into_iter().map(|(a, _)| a).collect();
    match nat_dependence_witness(&per_variable) {
        None => verdict(MzStatus::NotMz, MzRule::NoNaturalDependence, None),
        Some(gamma) => verdict(MzStatus::Unknown, MzRule::OutsideCriteria, Some(gamma)),
    }
}
