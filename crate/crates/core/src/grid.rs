//! Evaluation grids shared by the sampled checks.

use serde::Serialize;

/// Default spacing for validation grids.
pub const DEFAULT_STEP: f64 = 0.01;
/// Stand-in for `+∞` when a grid has to be finite.
pub const DEFAULT_INF_CAP: f64 = 1e6;

/// `lo, lo + h, …, hi` with `h ≈ step`, computed as `lo + (hi − lo)·i/n` so
/// that decimal grid points such as 0.5 or 0.75 are hit exactly.
pub fn uniform(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0 && lo.is_finite() && hi.is_finite() && hi >= lo);
    if hi == lo {
        return vec![lo];
    }
    let n = ((hi - lo) / step).round().max(1.0) as usize;
    let width = hi - lo;
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + width * (i as f64) / (n as f64)
            }
        })
        .collect()
}

/// Grid resolution and the cap used for unbounded ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub step: f64,
    pub inf_cap: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            step: DEFAULT_STEP,
            inf_cap: DEFAULT_INF_CAP,
        }
    }
}

impl GridSpec {
    pub fn with_step(step: f64) -> Self {
        GridSpec {
            step,
            ..GridSpec::default()
        }
    }

    /// Grid over `[0, hi]`. An infinite `hi` yields the unit grid followed by
    /// powers of two up to the cap; the returned flag says the cap was used.
    pub fn span(&self, hi: f64) -> (Vec<f64>, bool) {
        if hi.is_finite() {
            return (uniform(0.0, hi, self.step), false);
        }
        let mut pts = uniform(0.0, 1.0, self.step);
        let mut x = 2.0;
        while x < self.inf_cap {
            pts.push(x);
            x *= 2.0;
        }
        pts.push(self.inf_cap);
        (pts, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_points_are_exact() {
        let g = uniform(0.0, 1.0, 0.01);
        assert_eq!(g.len(), 101);
        assert_eq!(g[50], 0.5);
        assert_eq!(g[75], 0.75);
        assert_eq!(g[100], 1.0);
        assert_eq!(g[1], 0.01);
        assert_eq!(g[51], 0.51);
    }

    #[test]
    fn infinite_span_is_capped() {
        let (pts, capped) = GridSpec::default().span(f64::INFINITY);
        assert!(capped);
        assert_eq!(*pts.last().unwrap(), DEFAULT_INF_CAP);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
