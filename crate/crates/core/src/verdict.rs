//! Outcome types shared by every sampled or exact check.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

/// How strong a reported result is.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Evidence {
    /// Exhaustive over a finite, exactly represented domain.
    Exact,
    /// Sampled on a grid; `capped` marks an infinite range replaced by a cap.
    Grid {
        step: f64,
        points: usize,
        capped: bool,
    },
    /// Root bracketing to the given tolerance.
    Bisection {
        tol: f64,
    },
    RandomTrials {
        trials: usize,
        seed: u64,
    },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Exact => f.write_str("exact"),
            Evidence::Grid { step, capped, .. } => {
                write!(f, "grid({step})")?;
                if *capped {
                    f.write_str(" with infinite range capped")?;
                }
                Ok(())
            }
            Evidence::Bisection { tol } => write!(f, "bisection({tol:e})"),
            Evidence::RandomTrials { trials, seed } => {
                write!(f, "random-trials({trials}, seed={seed})")
            }
        }
    }
}

/// Result of checking an inequality `lhs ≥ rhs` over a domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    /// No violation on the examined points. Evidence, not proof, unless the
    /// evidence class is `exact`.
    HoldsOnGrid { evidence: Evidence },
    /// A concrete point with `lhs < rhs − tolerance`, re-checked by direct
    /// evaluation.
    Violated {
        witness: Vec<f64>,
        lhs: f64,
        rhs: f64,
        evidence: Evidence,
    },
    /// A hypothesis of the check failed, so the inequality was not decided.
    HypothesisFailed { detail: String, value: Option<f64> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsOnGrid { .. })
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn witness(&self) -> Option<&[f64]> {
        match self {
            Verdict::Violated { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::HoldsOnGrid { .. } => "holds",
            Verdict::Violated { .. } => "violated",
            Verdict::HypothesisFailed { .. } => "hypothesis failed",
        }
    }
}

/// Default comparison tolerance for `lhs ≥ rhs` checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Runs `probe` over `0..n` in parallel and returns the result for the
/// smallest index that produced one, so witnesses stay lexicographically
/// first regardless of scheduling.
pub(crate) fn scan_first<T, E, F>(n: usize, probe: F) -> Result<Option<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<Option<T>, E> + Sync,
{
    (0..n)
        .into_par_iter()
        .find_map_first(|i| probe(i).transpose())
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_returns_smallest_index() {
        let hit: Result<Option<usize>, ()> = scan_first(1000, |i| {
            Ok(if i % 97 == 3 && i > 100 {
                Some(i)
            } else {
                None
            })
        });
        assert_eq!(hit, Ok(Some(197)));
        let err: Result<Option<usize>, usize> = scan_first(100, |i| {
            if i >= 40 {
                Err(i)
            } else if i == 60 {
                Ok(Some(i))
            } else {
                Ok(None)
            }
        });
        assert_eq!(err, Err(40));
    }

    #[test]
    fn evidence_labels() {
        assert_eq!(
            Evidence::Grid {
                step: 0.01,
                points: 101,
                capped: false
            }
            .to_string(),
            "grid(0.01)"
        );
        assert_eq!(
            Evidence::Bisection { tol: 1e-10 }.to_string(),
            "bisection(1e-10)"
        );
        assert_eq!(
            Evidence::RandomTrials { trials: 5, seed: 7 }.to_string(),
            "random-trials(5, seed=7)"
        );
    }
}
