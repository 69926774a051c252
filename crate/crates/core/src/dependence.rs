//! Comonotonicity, m-positive dependence of function pairs and the
//! measure-level conditions that imply it.
//!
//! Dependence quantifies over levels `α, β ∈ [0, k]`. For simple functions the
//! level sets only change at values of `f` and `g`, so checking
//! `α ∈ {0} ∪ f(A) ∪ {k}` and `β ∈ {0} ∪ g(B) ∪ {k}` decides it exactly; the
//! level `k` stands in for "above the maximum" whenever `max f < k`.

use serde::Serialize;
use thiserror::Error;

use crate::fusion::{FusionError, FusionOp};
use crate::integral::SimpleFunction;
use crate::measure::{AtomSet, MeasureError, MonotoneMeasure, MAX_PAIR_SCAN_ATOMS, MEASURE_TOL};
use crate::verdict::{scan_first, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DependenceError {
    #[error("`{op}` maps ({c}, {d}) to {value}, which is not a value of the measure")]
    RangeEscape {
        op: String,
        c: f64,
        d: f64,
        value: f64,
    },
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("function has {got} values but the space has {expected} atoms")]
    SizeMismatch { expected: usize, got: usize },
    #[error("function values exceed the level bound {0}")]
    AboveBound(f64),
}

/// Where a dependence check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Atoms `x, y` with `(f(x) − f(y))(g(x) − g(y)) < 0`.
    Atoms { x: String, y: String },
    /// Levels where `lhs = m(A∩B∩{f≥α}∩{g≥β}) < rhs = m(A∩{f≥α}) ▵ m(B∩{g≥β})`.
    Levels {
        alpha: f64,
        beta: f64,
        lhs: f64,
        rhs: f64,
    },
    /// Sets with `lhs = m(C∩D) < rhs = m(C) ▵ m(D)`.
    Sets {
        c: Vec<String>,
        d: Vec<String>,
        lhs: f64,
        rhs: f64,
    },
    /// A pair of measure values that no sets realize with `m(C∩D) = c ▵ d`.
    Values { c: f64, d: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DependenceReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl DependenceReport {
    fn new(witness: Option<Witness>, warnings: Vec<String>) -> Self {
        DependenceReport {
            holds: witness.is_none(),
            witness,
            warnings,
        }
    }
}

fn labels(m: &MonotoneMeasure, set: AtomSet) -> Vec<String> {
    set.atoms().map(|i| m.space().labels()[i].clone()).collect()
}

/// First pair `x < y` in `d` where `f` and `g` move in opposite directions.
pub fn comonotone_violation(
    f: &SimpleFunction,
    g: &SimpleFunction,
    d: AtomSet,
) -> Option<(usize, usize)> {
    let (fv, gv) = (f.values(), g.values());
    let atoms: Vec<usize> = d.atoms().filter(|&i| i < fv.len().min(gv.len())).collect();
    for (k, &x) in atoms.iter().enumerate() {
        for &y in &atoms[k + 1..] {
            if (fv[x] - fv[y]) * (gv[x] - gv[y]) < 0.0 {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_comonotone(f: &SimpleFunction, g: &SimpleFunction, d: AtomSet) -> bool {
    comonotone_violation(f, g, d).is_none()
}

/// Comonotonicity as a report with labelled atoms.
pub fn comonotone_report(
    m: &MonotoneMeasure,
    f: &SimpleFunction,
    g: &SimpleFunction,
    d: AtomSet,
) -> DependenceReport {
    let witness = comonotone_violation(f, g, d).map(|(x, y)| Witness::Atoms {
        x: m.space().labels()[x].clone(),
        y: m.space().labels()[y].clone(),
    });
    DependenceReport::new(witness, vec![])
}

/// Checks that `▵` maps `m(𝒜)²` into `m(𝒜)`. With `allow_escape` a violation
/// becomes a warning.
pub fn check_range(
    m: &MonotoneMeasure,
    triangle: &FusionOp,
    allow_escape: bool,
) -> Result<Vec<String>, DependenceError> {
    let range = m.range();
    for &c in &range {
        for &d in &range {
            let value = triangle.apply(c, d)?;
            if !range.iter().any(|r| (r - value).abs() <= MEASURE_TOL) {
                let err = DependenceError::RangeEscape {
                    op: triangle.name().to_string(),
                    c,
                    d,
                    value,
                };
                if allow_escape {
                    return Ok(vec![err.to_string()]);
                }
                return Err(err);
            }
        }
    }
    Ok(vec![])
}

#[derive(Debug, Clone)]
pub struct DependenceQuery<'a> {
    pub m: &'a MonotoneMeasure,
    pub f: &'a SimpleFunction,
    pub g: &'a SimpleFunction,
    pub a: AtomSet,
    pub b: AtomSet,
    pub triangle: &'a FusionOp,
    pub k: f64,
    pub allow_range_escape: bool,
}

fn levels(f: &SimpleFunction, on: AtomSet, k: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    out.extend(f.distinct_values(on));
    out.push(k);
    out.sort_by(|a, b| a.total_cmp(b));
    out.dedup();
    out
}

/// Decides m-positive dependence of `f|_A` and `g|_B` with respect to `▵`.
pub fn is_m_positively_dependent(
    q: &DependenceQuery<'_>,
) -> Result<DependenceReport, DependenceError> {
    let n = q.m.space().len();
    for h in [q.f, q.g] {
        if h.len() != n {
            return Err(DependenceError::SizeMismatch {
                expected: n,
                got: h.len(),
            });
        }
        if h.values().iter().any(|v| *v > q.k) {
            return Err(DependenceError::AboveBound(q.k));
        }
    }
    let warnings = check_range(q.m, q.triangle, q.allow_range_escape)?;
    let alphas = levels(q.f, q.a, q.k);
    let betas = levels(q.g, q.b, q.k);
    let ab = q.a.intersect(q.b);
    let hit = scan_first(alphas.len(), |i| {
        let alpha = alphas[i];
        let fa = q.a.intersect(q.f.level_set(alpha));
        for &beta in &betas {
            let gb = q.b.intersect(q.g.level_set(beta));
            let lhs = q.m.value(ab.intersect(fa).intersect(gb));
            let rhs = q.triangle.apply(q.m.value(fa), q.m.value(gb))?;
            if lhs < rhs - DEFAULT_TOLERANCE {
                return Ok(Some(Witness::Levels {
                    alpha,
                    beta,
                    lhs,
                    rhs,
                }));
            }
        }
        Ok::<_, DependenceError>(None)
    })?;
    Ok(DependenceReport::new(hit, warnings))
}

fn require_pair_scan(m: &MonotoneMeasure) -> Result<(), DependenceError> {
    if m.space().len() > MAX_PAIR_SCAN_ATOMS {
        return Err(MeasureError::TooManyAtoms(m.space().len()).into());
    }
    Ok(())
}

/// Checks `m(C∩D) ≥ m(C) ▵ m(D)` for every pair of sets.
pub fn measure_supports_all_pairs(
    m: &MonotoneMeasure,
    triangle: &FusionOp,
    allow_range_escape: bool,
) -> Result<DependenceReport, DependenceError> {
    require_pair_scan(m)?;
    let warnings = check_range(m, triangle, allow_range_escape)?;
    let sets = m.table().len();
    let hit = scan_first(sets, |c| {
        let c = AtomSet(c as u32);
        for d in 0..sets {
            let d = AtomSet(d as u32);
            let lhs = m.value(c.intersect(d));
            let rhs = triangle.apply(m.value(c), m.value(d))?;
            if lhs < rhs - DEFAULT_TOLERANCE {
                return Ok(Some(Witness::Sets {
                    c: labels(m, c),
                    d: labels(m, d),
                    lhs,
                    rhs,
                }));
            }
        }
        Ok::<_, DependenceError>(None)
    })?;
    Ok(DependenceReport::new(hit, warnings))
}

/// Condition Z1: every `(c, d) ∈ m(𝒜)²` is realized by sets `C, D` with
/// `m(C) = c`, `m(D) = d` and `m(C∩D) = c ▵ d`.
pub fn levels_realized(
    m: &MonotoneMeasure,
    triangle: &FusionOp,
    allow_range_escape: bool,
) -> Result<DependenceReport, DependenceError> {
    require_pair_scan(m)?;
    let warnings = check_range(m, triangle, allow_range_escape)?;
    let range = m.range();
    let mut by_value: Vec<Vec<AtomSet>> = vec![Vec::new(); range.len()];
    for (mask, &v) in m.table().iter().enumerate() {
        let idx = range
            .iter()
            .position(|r| (r - v).abs() <= MEASURE_TOL)
            .expect("range covers table");
        by_value[idx].push(AtomSet(mask as u32));
    }
    let hit = scan_first(range.len(), |i| {
        for j in 0..range.len() {
            let target = triangle.apply(range[i], range[j])?;
            let realized = by_value[i].iter().any(|&c| {
                by_value[j]
                    .iter()
                    .any(|&d| (m.value(c.intersect(d)) - target).abs() <= MEASURE_TOL)
            });
            if !realized {
                return Ok(Some(Witness::Values {
                    c: range[i],
                    d: range[j],
                }));
            }
        }
        Ok::<_, DependenceError>(None)
    })?;
    Ok(DependenceReport::new(hit, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::FiniteSpace;
    use crate::value::NonNegExt;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::with_atoms(n).unwrap()
    }

    fn unit(v: Vec<f64>) -> SimpleFunction {
        SimpleFunction::unit(v).unwrap()
    }

    #[test]
    fn comonotone_cases() {
        let f = unit(vec![0.2, 0.5, 0.9]);
        assert!(is_comonotone(&f, &f, AtomSet::full(3)));
        let a = AtomSet(0b011);
        let f = SimpleFunction::indicator(3, a, 0.5, NonNegExt::ONE).unwrap();
        let g = SimpleFunction::indicator(3, a, 0.8, NonNegExt::ONE).unwrap();
        assert!(is_comonotone(&f, &g, AtomSet::full(3)));
        let f = unit(vec![1.0, 0.0]);
        let g = unit(vec![0.0, 1.0]);
        assert_eq!(comonotone_violation(&f, &g, AtomSet::full(2)), Some((0, 1)));
    }

    #[test]
    fn product_dependence_fails_on_disjoint_indicators() {
        let m = MonotoneMeasure::additive(space(2), &[0.5, 0.5]).unwrap();
        let f = unit(vec![1.0, 0.0]);
        let g = unit(vec![0.0, 1.0]);
        let x = AtomSet::full(2);
        let prod = FusionOp::prod();
        let mut q = DependenceQuery {
            m: &m,
            f: &f,
            g: &g,
            a: x,
            b: x,
            triangle: &prod,
            k: 1.0,
            allow_range_escape: false,
        };
        assert!(matches!(
            is_m_positively_dependent(&q),
            Err(DependenceError::RangeEscape { .. })
        ));
        q.allow_range_escape = true;
        let r = is_m_positively_dependent(&q).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.witness,
            Some(Witness::Levels {
                alpha: 1.0,
                beta: 1.0,
                lhs: 0.0,
                rhs: 0.25
            })
        );
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn minitive_measures_support_every_semicopula() {
        let m = MonotoneMeasure::necessity_from_possibility(space(3), &[0.3, 1.0, 0.6]).unwrap();
        assert!(
            measure_supports_all_pairs(&m, &FusionOp::min(), false)
                .unwrap()
                .holds
        );
        let f = unit(vec![0.9, 0.1, 0.5]);
        let g = unit(vec![0.2, 0.8, 0.4]);
        let x = AtomSet::full(3);
        let min = FusionOp::min();
        let q = DependenceQuery {
            m: &m,
            f: &f,
            g: &g,
            a: x,
            b: AtomSet(0b101),
            triangle: &min,
            k: 1.0,
            allow_range_escape: false,
        };
        assert!(is_m_positively_dependent(&q).unwrap().holds);
    }

    #[test]
    fn additive_uniform_is_not_minitive() {
        let m = MonotoneMeasure::additive(space(2), &[0.5, 0.5]).unwrap();
        let r = measure_supports_all_pairs(&m, &FusionOp::min(), false).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Sets {
                c: vec!["x1".into()],
                d: vec!["x2".into()],
                lhs: 0.0,
                rhs: 0.5
            })
        );
    }

    #[test]
    fn supermodular_supports_lukasiewicz() {
        let h = crate::exprlang::parse("x^2").unwrap();
        let m = MonotoneMeasure::distorted_probability(space(3), &[0.2, 0.3, 0.5], &h).unwrap();
        let r = measure_supports_all_pairs(&m, &FusionOp::lukasiewicz(), true).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn realized_levels_cases() {
        let nec = MonotoneMeasure::necessity_from_possibility(space(3), &[1.0, 0.6, 0.2]).unwrap();
        assert!(
            levels_realized(&nec, &FusionOp::min(), false)
                .unwrap()
                .holds
        );
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        let r = levels_realized(&m, &FusionOp::min(), false).unwrap();
        assert_eq!(r.witness, Some(Witness::Values { c: 0.3, d: 0.6 }));
        let one = MonotoneMeasure::from_table(space(1), vec![0.0, 1.0]).unwrap();
        assert!(
            levels_realized(&one, &FusionOp::min(), false)
                .unwrap()
                .holds
        );
    }
}
