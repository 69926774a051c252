//! Chebyshev type conditions and inequalities for generalized Sugeno
//! integrals.
//!
//! The scalar condition
//!
//! ```text
//! ψ₁(φ₁(a ∗ b) ∘₁ (c ▵ d)) ≥ ψ₂(φ₂(a) ∘₂ c) ⋆ ψ₃(φ₃(b) ∘₃ d)
//! ```
//!
//! over `a, b ∈ [0, k]` and `c, d` in a measure range (or `[0, ȳ]`) is what
//! turns dependence of `f, g` into the integral inequality
//!
//! ```text
//! ψ₁(I_∘₁(φ₁(f ∗ g))) ≥ ψ₂(I_∘₂(φ₂(f))) ⋆ ψ₃(I_∘₃(φ₃(g))).
//! ```
//!
//! [`scalar`] scans the condition and its one-variable form; [`inequality`]
//! evaluates the integral side, runs hypothesis pipelines and builds
//! indicator-pair probes from scalar witnesses.

pub mod inequality;
pub mod scalar;
mod shape;

use serde::Serialize;
use thiserror::Error;

use crate::dependence::DependenceError;
use crate::fusion::{FusionError, FusionOp};
use crate::grid::{self, DEFAULT_INF_CAP};
use crate::integral::IntegralError;
use crate::verdict::{Verdict, DEFAULT_TOLERANCE};

pub use inequality::{
    any_functions_check, check_integral_inequality, check_survival_inequality,
    check_with_hypotheses, indicator_probe, liapunov_check, sugeno_chebyshev, AnyFunctionsReport,
    InequalityOutcome, PipelineReport, ProbeOutcome, Stage, StageStatus, TrialFailure,
};
pub use scalar::{
    check_one_variable_condition, check_point, check_scalar_condition, compare_condition_forms,
    one_variable_sides, q_condition, scalar_sides, search_commutativity_gap, search_counterexample,
    CommutativityGap, EquivalenceReport, SearchOutcome,
};
pub use shape::{ShapeError, ShapeFlags, ShapeFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebyshevError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error(transparent)]
    Dependence(#[from] DependenceError),
    #[error("{0}")]
    Config(String),
}

impl ChebyshevError {
    /// Hypothesis failure for errors that stem from the inputs rather than
    /// from the check itself.
    pub fn into_verdict(self) -> Verdict {
        let value = match &self {
            ChebyshevError::Shape(e) => e.value(),
            ChebyshevError::Fusion(FusionError::OutOfDomain { arg, .. }) => Some(*arg),
            _ => None,
        };
        Verdict::HypothesisFailed {
            detail: self.to_string(),
            value,
        }
    }
}

/// Where `c` and `d` range.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CdDomain {
    /// A finite set, typically the range of a measure; enumerated exactly.
    Finite { values: Vec<f64> },
    /// `[0, ȳ]`, gridded (an infinite `ȳ` is capped).
    Interval,
}

/// `φᵢ` and `ψᵢ`, `i = 1, 2, 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Shapes {
    pub phi: [ShapeFunction; 3],
    pub psi: [ShapeFunction; 3],
}

impl Shapes {
    pub fn identity(ybar: f64) -> Shapes {
        let id = ShapeFunction::identity(ybar);
        Shapes {
            phi: [id.clone(), id.clone(), id.clone()],
            psi: [id.clone(), id.clone(), id],
        }
    }

    /// The same `φ` everywhere with `ψ = φ⁻¹`.
    pub fn with_inverse(phi: ShapeFunction) -> Result<Shapes, ShapeError> {
        let psi = ShapeFunction::inverse_of(&phi, None)?;
        Ok(Shapes {
            phi: [phi.clone(), phi.clone(), phi],
            psi: [psi.clone(), psi.clone(), psi],
        })
    }
}

/// Every parameter of the scalar condition and the integral inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityConfig {
    /// `∗`, combining `f` and `g`.
    pub inner: FusionOp,
    /// `⋆`, combining the two right-hand integrals.
    pub outer: FusionOp,
    /// `∘₁, ∘₂, ∘₃`.
    pub circ: [FusionOp; 3],
    /// `▵`, combining `c` and `d`.
    pub triangle: FusionOp,
    pub shapes: Shapes,
    pub k: f64,
    pub ybar: f64,
    pub cd: CdDomain,
    /// Slack allowed before a comparison counts as violated.
    pub tolerance: f64,
}

impl InequalityConfig {
    /// All three `∘ᵢ` equal, `φ = ψ = id`, `▵ = min`, `k = ȳ = 1`.
    pub fn uniform(
        inner: FusionOp,
        outer: FusionOp,
        circ: FusionOp,
        cd: CdDomain,
    ) -> InequalityConfig {
        InequalityConfig {
            inner,
            outer,
            circ: [circ.clone(), circ.clone(), circ],
            triangle: FusionOp::min(),
            shapes: Shapes::identity(1.0),
            k: 1.0,
            ybar: 1.0,
            cd,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_cd(mut self, cd: CdDomain) -> InequalityConfig {
        self.cd = cd;
        self
    }

    /// `c, d` values to scan, increasing, and whether `∞` was capped.
    pub fn cd_values(&self, step: f64) -> (Vec<f64>, bool) {
        match &self.cd {
            CdDomain::Finite { values } => {
                let mut v = values.clone();
                v.sort_by(|a, b| a.total_cmp(b));
                v.dedup();
                (v, false)
            }
            CdDomain::Interval => {
                let top = if self.ybar.is_finite() {
                    self.ybar
                } else {
                    DEFAULT_INF_CAP
                };
                (grid::uniform(0.0, top, step), !self.ybar.is_finite())
            }
        }
    }

    /// `d̄ = sup` of the `c, d` domain.
    pub fn d_bar(&self) -> f64 {
        match &self.cd {
            CdDomain::Finite { values } => values.iter().cloned().fold(0.0, f64::max),
            CdDomain::Interval => {
                if self.ybar.is_finite() {
                    self.ybar
                } else {
                    DEFAULT_INF_CAP
                }
            }
        }
    }

    /// `a, b` grid over `[0, k]`.
    pub fn ab_values(&self, step: f64) -> Vec<f64> {
        let top = if self.k.is_finite() {
            self.k
        } else {
            DEFAULT_INF_CAP
        };
        grid::uniform(0.0, top, step)
    }

    /// Checks `0 < k ≤ ȳ`, `φᵢ(ȳ) ∘ᵢ d̄ ≤ φᵢ(ȳ)` and `ȳ ∘ⱼ 0 = 0` for `j = 2, 3`.
    pub fn check_hypotheses(&self) -> Option<Verdict> {
        let fail =
            |detail: String, value: Option<f64>| Some(Verdict::HypothesisFailed { detail, value });
        if !(self.k > 0.0 && self.k <= self.ybar) {
            return fail(
                format!("need 0 < k ≤ ȳ, got k = {} and ȳ = {}", self.k, self.ybar),
                Some(self.k),
            );
        }
        let top = if self.ybar.is_finite() {
            self.ybar
        } else {
            DEFAULT_INF_CAP
        };
        let d_bar = self.d_bar();
        for i in 0..3 {
            let phi_top = match self.shapes.phi[i].eval(top) {
                Ok(v) => v,
                Err(e) => return Some(ChebyshevError::from(e).into_verdict()),
            };
            match self.circ[i].apply(phi_top, d_bar) {
                Ok(v) if v <= phi_top + self.tolerance => {}
                Ok(v) => {
                    return fail(
                        format!(
                            "φ{0}(ȳ) ∘{0} {d_bar} = {v} exceeds φ{0}(ȳ) = {phi_top}",
                            i + 1
                        ),
                        Some(v),
                    )
                }
                Err(e) => return Some(ChebyshevError::from(e).into_verdict()),
            }
        }
        for j in 1..3 {
            match self.circ[j].apply(top, 0.0) {
                Ok(0.0) => {}
                Ok(v) => return fail(format!("ȳ ∘{} 0 = {v}, expected 0", j + 1), Some(v)),
                Err(e) => return Some(ChebyshevError::from(e).into_verdict()),
            }
        }
        None
    }
}
