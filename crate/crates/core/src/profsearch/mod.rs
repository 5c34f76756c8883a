//! Existence and nonexistence of rational curves with `d` branch points:
//! Hurwitz rows, combinatorial exclusion, moduli solving for `d = 6` and the
//! `d = 7` scan.

pub mod assign;
pub mod concrete;
pub mod crosscheck;
pub mod dc7;
pub mod exclude;
pub mod mobius;
pub mod moduli;
pub mod search;

use serde::Serialize;
use thiserror::Error;

use crate::embedverify::VerifyError;
use crate::numkernel::{AlgebraicNumber, NumError};
use crate::ratmap::{ProjectivePoint, RatMapError};

pub use assign::{enumerate_fiber_assignments, named_families_d6, AssignmentOrbit, CoordPattern, FiberAssignment, Shape, Symbol};
pub use dc7::{dc7_scan, Dc7Report};
pub use exclude::{exclude_small, ExclusionTrace};
pub use moduli::{solve_moduli, ModuliOutcome, ModuliRecord, ModuliSolution};
pub use search::{search, SearchReport, SearchStatus};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("d = {0} is outside the supported range")]
    UnsupportedD(usize),
    #[error("{0} unknown branch symbols exceed the limit of 4")]
    TooManyUnknowns(usize),
    #[error("malformed assignment: {0}")]
    Malformed(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Map(#[from] RatMapError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// One row `(γ0, γ1, δ)` of the Hurwitz constraints for `d` branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HurwitzSolution {
    pub d: usize,
    pub gamma0: u32,
    pub gamma1: u32,
    pub delta: u32,
}

impl HurwitzSolution {
    /// `2d - 6 = γ0 + 3γ1` and `2δ - 2 = γ0 + γ1`.
    pub fn holds(&self) -> bool {
        2 * self.d as i64 - 6 == self.gamma0 as i64 + 3 * self.gamma1 as i64
            && 2 * self.delta as i64 - 2 == self.gamma0 as i64 + self.gamma1 as i64
    }
}

/// All nonnegative solutions, ordered by increasing `γ0`.
pub fn hurwitz_solutions(d: usize) -> Vec<HurwitzSolution> {
    if d < 3 {
        return Vec::new();
    }
    let total = 2 * d as u32 - 6;
    let mut out = Vec::new();
    for gamma1 in (0..=total / 3).rev() {
        let gamma0 = total - 3 * gamma1;
        if (gamma0 + gamma1).is_multiple_of(2) {
            out.push(HurwitzSolution { d, gamma0, gamma1, delta: (gamma0 + gamma1) / 2 + 1 });
        }
    }
    out
}

/// An exact number as coefficients over the power basis of a named tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub tower: String,
    pub coeffs: Vec<String>,
    pub display: String,
}

impl ExactValue {
    pub fn of(a: &AlgebraicNumber) -> Self {
        ExactValue {
            tower: a.tower().name().to_string(),
            coeffs: a.coords().iter().map(|c| c.to_string()).collect(),
            display: a.to_string(),
        }
    }

    pub fn of_point(p: &ProjectivePoint) -> Self {
        match p {
            ProjectivePoint::Finite(a) => Self::of(a),
            ProjectivePoint::Infinity => ExactValue { tower: String::new(), coeffs: Vec::new(), display: "inf".into() },
        }
    }
}
