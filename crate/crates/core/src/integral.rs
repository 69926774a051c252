//! Generalized upper Sugeno integrals `sup_{t∈[0,ȳ]} t ∘ m(D ∩ {f ≥ t})`.
//!
//! On finite spaces the supremum is taken over the distinct values of `f` on
//! `D` plus the term `ȳ ∘ 0`. This is exact when `∘` is non-decreasing and
//! left-continuous in its first argument, because the level function is
//! constant on each `(v_k, v_{k+1}]`. Operations without that flag fall back
//! to a grid over `[0, ȳ]`.
//!
//! Survival scenarios supply `G(t) = m(D ∩ {f ≥ t})` directly. Under `min`
//! each segment is solved by bisecting `t − G(t)`; other operations use a
//! dense grid with one local refinement pass.

use serde::Serialize;
use thiserror::Error;

use crate::fusion::{Builtin, FusionError, FusionOp};
use crate::grid::{self, GridSpec};
use crate::measure::{AtomSet, MeasureError, MonotoneMeasure, SurvivalScenario};
use crate::value::NonNegExt;

pub const BISECTION_TOL: f64 = 1e-10;
pub const BISECTION_MAX_ITER: usize = 60;
/// Points in the local refinement pass of the survival grid path.
const REFINE_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("function has {got} values but the space has {expected} atoms")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("`{op}` is not declared {flag}")]
    MissingFlag { op: String, flag: &'static str },
    #[error("the measure must be a capacity, m(X) = {0}")]
    NotCapacity(f64),
}

/// Atom-indexed function with values in `[0, k]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimpleFunction {
    values: Vec<f64>,
    bound: NonNegExt,
}

impl SimpleFunction {
    pub fn new(values: Vec<f64>, bound: NonNegExt) -> Result<SimpleFunction, IntegralError> {
        if bound == NonNegExt::ZERO {
            return Err(IntegralError::InvalidFunction(
                "bound must be positive".into(),
            ));
        }
        if let Some(v) = values
            .iter()
            .find(|v| v.is_nan() || **v < 0.0 || **v > bound.get())
        {
            return Err(IntegralError::InvalidFunction(format!(
                "value {v} outside [0, {bound}]"
            )));
        }
        Ok(SimpleFunction { values, bound })
    }

    /// Values in `[0, 1]`.
    pub fn unit(values: Vec<f64>) -> Result<SimpleFunction, IntegralError> {
        SimpleFunction::new(values, NonNegExt::ONE)
    }

    /// `a·𝟙_A` on `n` atoms.
    pub fn indicator(
        n: usize,
        set: AtomSet,
        a: f64,
        bound: NonNegExt,
    ) -> Result<SimpleFunction, IntegralError> {
        SimpleFunction::new(
            (0..n)
                .map(|i| if set.contains(i) { a } else { 0.0 })
                .collect(),
            bound,
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bound(&self) -> NonNegExt {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `{x : f(x) ≥ t}`.
    pub fn level_set(&self, t: f64) -> AtomSet {
        AtomSet::from_indices(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v >= t)
                .map(|(i, _)| i),
        )
    }

    /// Distinct values on `domain`, increasing.
    pub fn distinct_values(&self, domain: AtomSet) -> Vec<f64> {
        let mut vals: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .filter(|(i, _)| domain.contains(*i))
            .map(|(_, v)| *v)
            .collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        vals.dedup();
        vals
    }

    pub fn max_on(&self, domain: AtomSet) -> Option<f64> {
        self.distinct_values(domain).last().copied()
    }

    /// Pointwise `h(f(x))` with a new bound.
    pub fn map<E>(
        &self,
        bound: NonNegExt,
        h: impl Fn(f64) -> Result<f64, E>,
    ) -> Result<SimpleFunction, IntegralError>
    where
        E: std::fmt::Display,
    {
        let values = self
            .values
            .iter()
            .map(|&v| h(v).map_err(|e| IntegralError::InvalidFunction(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        SimpleFunction::new(values, bound)
    }

    /// `x ↦ f(x) ∗ g(x)`.
    pub fn combine(
        &self,
        other: &SimpleFunction,
        bound: NonNegExt,
        op: &FusionOp,
    ) -> Result<SimpleFunction, IntegralError> {
        if self.len() != other.len() {
            return Err(IntegralError::SizeMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| op.apply(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        SimpleFunction::new(values, bound)
    }

    pub fn le(&self, other: &SimpleFunction) -> bool {
        self.len() == other.len() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    ExactCandidateSet,
    Grid { step: f64 },
    Bisection { tol: f64 },
}

/// One examined level: `term = t ∘ level` (or `level ⊗ t` for q-integrals).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub t: NonNegExt,
    pub level: NonNegExt,
    pub term: NonNegExt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: NonNegExt,
    pub method: Method,
    pub trace: Vec<Term>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl IntegralResult {
    pub fn get(&self) -> f64 {
        self.value.get()
    }

    /// Largest term, ties toward the earlier (smaller `t`) entry.
    fn from_terms(trace: Vec<Term>, method: Method, notes: Vec<String>) -> IntegralResult {
        let value = trace
            .iter()
            .map(|t| t.term)
            .fold(NonNegExt::ZERO, NonNegExt::max);
        IntegralResult {
            value,
            method,
            trace,
            notes,
        }
    }
}

fn nn(v: f64) -> Result<NonNegExt, IntegralError> {
    NonNegExt::new(v).map_err(|e| IntegralError::InvalidFunction(e.to_string()))
}

fn check_space(m: &MonotoneMeasure, f: &SimpleFunction) -> Result<(), IntegralError> {
    if m.space().len() != f.len() {
        return Err(IntegralError::SizeMismatch {
            expected: m.space().len(),
            got: f.len(),
        });
    }
    Ok(())
}

/// Generalized upper Sugeno integral of `f` on `d`.
pub fn integrate_simple(
    op: &FusionOp,
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    check_space(m, f)?;
    if !d.is_subset(m.space().universe()) {
        return Err(IntegralError::Measure(MeasureError::UnknownAtom(format!(
            "mask {:#b}",
            d.0
        ))));
    }
    if !op.flags().non_decreasing {
        return Err(IntegralError::MissingFlag {
            op: op.name().to_string(),
            flag: "non-decreasing",
        });
    }
    if !op.flags().left_continuous_first {
        return grid_integral(op, m, d, f, &GridSpec::default());
    }
    let mut trace = Vec::new();
    for v in f.distinct_values(d) {
        let level = m.value(d.intersect(f.level_set(v)));
        trace.push(Term {
            t: nn(v)?,
            level: nn(level)?,
            term: nn(op.apply(v, level)?)?,
        });
    }
    let top = op.bound();
    trace.push(Term {
        t: top,
        level: NonNegExt::ZERO,
        term: op.eval(top, NonNegExt::ZERO)?,
    });
    Ok(IntegralResult::from_terms(
        trace,
        Method::ExactCandidateSet,
        vec![],
    ))
}

/// Grid fallback for operations not declared left-continuous in `t`.
fn grid_integral(
    op: &FusionOp,
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
    spec: &GridSpec,
) -> Result<IntegralResult, IntegralError> {
    let (ts, capped) = spec.span(op.bound().get());
    let mut notes = vec![format!(
        "`{}` is not declared left-continuous in its first argument; grid sup",
        op.name()
    )];
    if capped {
        notes.push(format!("infinite bound capped at {}", spec.inf_cap));
    }
    let mut trace = Vec::with_capacity(ts.len());
    for t in ts {
        let level = m.value(d.intersect(f.level_set(t)));
        trace.push(Term {
            t: nn(t)?,
            level: nn(level)?,
            term: nn(op.apply(t, level)?)?,
        });
    }
    Ok(IntegralResult::from_terms(
        trace,
        Method::Grid { step: spec.step },
        notes,
    ))
}

/// Sugeno integral `I_M`.
pub fn sugeno(
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    integrate_simple(&covering(Builtin::Min, m, f)?, m, d, f)
}

/// Shilkret integral `I_Π` with `ȳ = ∞`.
pub fn shilkret(
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    let op = FusionOp::builtin_with_bound(Builtin::Prod, NonNegExt::INFINITY)?;
    integrate_simple(&op, m, d, f)
}

/// Opposite-Sugeno integral `I_W` on `[0, 1]`.
pub fn opposite_sugeno(
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    integrate_simple(&FusionOp::lukasiewicz(), m, d, f)
}

/// Seminormed fuzzy integral `I_S` for a semicopula `S`.
pub fn seminormed(
    s: &FusionOp,
    m: &MonotoneMeasure,
    d: AtomSet,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    if !s.flags().semicopula {
        return Err(IntegralError::MissingFlag {
            op: s.name().to_string(),
            flag: "a semicopula",
        });
    }
    integrate_simple(s, m, d, f)
}

/// `min` or `prod` on `[0, max(k, m(X))]` so every argument is in range.
fn covering(
    b: Builtin,
    m: &MonotoneMeasure,
    f: &SimpleFunction,
) -> Result<FusionOp, IntegralError> {
    let bound = nn(m.total())?.max(f.bound()).max(NonNegExt::ONE);
    Ok(FusionOp::builtin_with_bound(b, bound)?)
}

/// q-integral `sup_{t∈[0,1]} m({f ≥ t}) ⊗ t` for a fuzzy conjunction `⊗`.
///
/// Candidates are the distinct values of `f`. The term `m(∅) ⊗ 1` for levels
/// above `max f` is added only when `max f < 1`, and the trace notes it.
pub fn q_integral(
    conj: &FusionOp,
    m: &MonotoneMeasure,
    f: &SimpleFunction,
) -> Result<IntegralResult, IntegralError> {
    check_space(m, f)?;
    let flags = conj.flags();
    if !flags.fuzzy_conjunction {
        return Err(IntegralError::MissingFlag {
            op: conj.name().to_string(),
            flag: "a fuzzy conjunction",
        });
    }
    if !flags.left_continuous_second {
        return Err(IntegralError::MissingFlag {
            op: conj.name().to_string(),
            flag: "left-continuous in its second argument",
        });
    }
    if !m.is_capacity() {
        return Err(IntegralError::NotCapacity(m.total()));
    }
    if f.bound() > NonNegExt::ONE && f.values().iter().any(|v| *v > 1.0) {
        return Err(IntegralError::InvalidFunction(
            "q-integrals need values in [0, 1]".into(),
        ));
    }
    let universe = m.space().universe();
    let mut trace = Vec::new();
    for v in f.distinct_values(universe) {
        let level = m.value(f.level_set(v));
        trace.push(Term {
            t: nn(v)?,
            level: nn(level)?,
            term: nn(conj.apply(level, v)?)?,
        });
    }
    let mut notes = Vec::new();
    if f.max_on(universe).is_none_or(|top| top < 1.0) {
        trace.push(Term {
            t: NonNegExt::ONE,
            level: NonNegExt::ZERO,
            term: nn(conj.apply(0.0, 1.0)?)?,
        });
        notes.push("included the t = 1 term m(∅) ⊗ 1 since max f < 1".to_string());
    }
    Ok(IntegralResult::from_terms(
        trace,
        Method::ExactCandidateSet,
        notes,
    ))
}

/// Integral over a survival scenario.
pub fn integrate_survival(
    op: &FusionOp,
    scenario: &SurvivalScenario,
    grid_step: f64,
) -> Result<IntegralResult, IntegralError> {
    if !op.flags().non_decreasing {
        return Err(IntegralError::MissingFlag {
            op: op.name().to_string(),
            flag: "non-decreasing",
        });
    }
    if op.as_builtin() == Some(Builtin::Min) {
        survival_bisection(op, scenario)
    } else {
        survival_grid(op, scenario, grid_step)
    }
}

/// Per segment, the sup of `t ∧ G(t)` sits where the increasing `t − G(t)`
/// changes sign; endpoints are handled through one-sided limits.
fn survival_bisection(
    op: &FusionOp,
    s: &SurvivalScenario,
) -> Result<IntegralResult, IntegralError> {
    let mut trace = Vec::new();
    for (k, seg) in s.segments().iter().enumerate() {
        let iv = seg
            .interval
            .intersect(&crate::exprlang::Interval::closed(0.0, s.bound()));
        if iv.is_empty() {
            continue;
        }
        let g = |t: f64| s.eval_in(k, t);
        let (lo, hi) = (iv.lo, iv.hi);
        let (glo, ghi) = (g(lo)?, g(hi)?);
        let (t, level) = if lo >= glo {
            (lo, glo)
        } else if hi <= ghi {
            (hi, ghi)
        } else {
            let (mut l, mut r) = (lo, hi);
            for _ in 0..BISECTION_MAX_ITER {
                if r - l <= BISECTION_TOL {
                    break;
                }
                let mid = 0.5 * (l + r);
                if mid - g(mid)? < 0.0 {
                    l = mid;
                } else {
                    r = mid;
                }
            }
            let (gl, gr) = (g(l)?, g(r)?);
            if l.min(gl) >= r.min(gr) {
                (l, gl)
            } else {
                (r, gr)
            }
        };
        trace.push(Term {
            t: nn(t)?,
            level: nn(level)?,
            term: nn(op.apply(t, level)?)?,
        });
    }
    Ok(IntegralResult::from_terms(
        trace,
        Method::Bisection { tol: BISECTION_TOL },
        vec![],
    ))
}

fn survival_grid(
    op: &FusionOp,
    s: &SurvivalScenario,
    step: f64,
) -> Result<IntegralResult, IntegralError> {
    let bound = s.bound();
    let mut ts = grid::uniform(0.0, bound, step);
    for seg in s.segments() {
        ts.extend(
            [seg.interval.lo, seg.interval.hi]
                .into_iter()
                .filter(|t| (0.0..=bound).contains(t)),
        );
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup();
    let term_at = |t: f64| -> Result<Term, IntegralError> {
        let level = s.eval(t)?;
        Ok(Term {
            t: nn(t)?,
            level: nn(level)?,
            term: nn(op.apply(t, level)?)?,
        })
    };
    let mut best = term_at(ts[0])?;
    for &t in &ts[1..] {
        let cand = term_at(t)?;
        if cand.term > best.term {
            best = cand;
        }
    }
    let centre = best.t.get();
    let (lo, hi) = ((centre - step).max(0.0), (centre + step).min(bound));
    let mut refined = best;
    for i in 0..=REFINE_POINTS {
        let t = lo + (hi - lo) * i as f64 / REFINE_POINTS as f64;
        let cand = term_at(t)?;
        if cand.term > refined.term {
            refined = cand;
        }
    }
    let notes = vec![format!("grid sup refined around t = {centre}")];
    Ok(IntegralResult::from_terms(
        vec![best, refined],
        Method::Grid { step },
        notes,
    ))
}

/// Brute-force reference: `sup` over `t ∈ {0, h, 2h, …, ȳ}` of
/// `t ∘ m(D ∩ {f ≥ t})`, with level sets recomputed atom by atom. An infinite
/// `ȳ` is replaced by the largest value of `f`.
pub mod oracle {
    use super::*;

    pub fn oracle_grid_integral(
        op: &FusionOp,
        m: &MonotoneMeasure,
        d: AtomSet,
        f: &SimpleFunction,
        grid_step: f64,
    ) -> Result<f64, IntegralError> {
        let top = if op.bound().is_infinite() {
            f.values()
                .iter()
                .cloned()
                .fold(0.0, f64::max)
                .max(grid_step)
        } else {
            op.bound().get()
        };
        let mut best: f64 = 0.0;
        for t in grid::uniform(0.0, top, grid_step) {
            let mut mask = 0u32;
            for (i, &v) in f.values().iter().enumerate() {
                if d.contains(i) && v >= t {
                    mask |= 1 << i;
                }
            }
            best = best.max(op.apply(t, m.value(AtomSet(mask)))?);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::oracle_grid_integral;
    use super::*;
    use crate::exprlang::parse;
    use crate::fusion::Flags;
    use crate::measure::{FiniteSpace, Segment};

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::with_atoms(n).unwrap()
    }

    fn unit(v: Vec<f64>) -> SimpleFunction {
        SimpleFunction::unit(v).unwrap()
    }

    #[test]
    fn lukasiewicz_indicator() {
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.9, 0.0, 1.0]).unwrap();
        let a = AtomSet(1);
        let f = SimpleFunction::indicator(2, a, 0.25, NonNegExt::ONE).unwrap();
        let r = integrate_simple(&FusionOp::lukasiewicz(), &m, a, &f).unwrap();
        assert!((r.get() - 0.15).abs() < 1e-15);
        let g = SimpleFunction::indicator(2, a, 0.5, NonNegExt::ONE).unwrap();
        assert!((opposite_sugeno(&m, a, &g).unwrap().get() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn zero_function() {
        let m = MonotoneMeasure::additive(space(3), &[0.2, 0.3, 0.5]).unwrap();
        let zero = unit(vec![0.0; 3]);
        for b in [Builtin::Min, Builtin::Prod, Builtin::Lukasiewicz] {
            let r =
                integrate_simple(&FusionOp::builtin(b), &m, m.space().universe(), &zero).unwrap();
            assert_eq!(r.value, NonNegExt::ZERO);
        }
    }

    #[test]
    fn two_atom_min_with_oracle() {
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        let f = unit(vec![0.2, 0.7]);
        let x = m.space().universe();
        let r = integrate_simple(&FusionOp::min(), &m, x, &f).unwrap();
        assert_eq!(r.get(), 0.6);
        assert_eq!(r.method, Method::ExactCandidateSet);
        assert_eq!(r.trace.len(), 3);
        let o = oracle_grid_integral(&FusionOp::min(), &m, x, &f, 0.01).unwrap();
        assert!((o - 0.6).abs() <= 0.01 + 1e-12);
    }

    #[test]
    fn oracle_agrees_on_indicator_examples() {
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.9, 0.0, 1.0]).unwrap();
        let f = SimpleFunction::indicator(2, AtomSet(1), 0.25, NonNegExt::ONE).unwrap();
        let o = oracle_grid_integral(&FusionOp::lukasiewicz(), &m, AtomSet(1), &f, 0.01).unwrap();
        assert!((o - 0.15).abs() <= 0.01 + 1e-12);
        let zero = unit(vec![0.0, 0.0]);
        assert_eq!(
            oracle_grid_integral(&FusionOp::prod(), &m, AtomSet(3), &zero, 0.01).unwrap(),
            0.0
        );
    }

    #[test]
    fn shilkret_of_constant() {
        let m = MonotoneMeasure::additive(space(3), &[0.2, 0.3, 0.5]).unwrap();
        let f = SimpleFunction::new(vec![3.5; 3], NonNegExt::INFINITY).unwrap();
        let r = shilkret(&m, m.space().universe(), &f).unwrap();
        assert!((r.get() - 3.5).abs() < 1e-15);
        // the ∞ ∘ 0 term is 0 under 0·∞ = 0
        assert_eq!(r.trace.last().unwrap().term, NonNegExt::ZERO);
    }

    #[test]
    fn q_integral_godel() {
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.7, 0.0, 1.0]).unwrap();
        let f = unit(vec![1.0, 0.0]);
        let r = q_integral(&FusionOp::godel(), &m, &f).unwrap();
        assert_eq!(r.get(), 1.0);
        assert!(r.notes.is_empty());
        let zero = unit(vec![0.0, 0.0]);
        let r = q_integral(&FusionOp::godel(), &m, &zero).unwrap();
        assert_eq!(r.get(), 0.0);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn q_integral_requires_flags() {
        let m = MonotoneMeasure::additive(space(1), &[1.0]).unwrap();
        let plain = FusionOp::godel().with_flags(Flags::default());
        assert!(matches!(
            q_integral(&plain, &m, &unit(vec![0.5])),
            Err(IntegralError::MissingFlag { .. })
        ));
    }

    #[test]
    fn grid_fallback_is_labelled() {
        let m = MonotoneMeasure::from_table(space(2), vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        let f = unit(vec![0.2, 0.7]);
        let flags = Flags {
            non_decreasing: true,
            ..Flags::default()
        };
        let op = FusionOp::min().with_flags(flags);
        let r = integrate_simple(&op, &m, m.space().universe(), &f).unwrap();
        assert!(matches!(r.method, Method::Grid { .. }));
        assert!((r.get() - 0.6).abs() < 1e-12);
        assert!(!r.notes.is_empty());
    }

    fn seg(lo: f64, hi: f64, lo_closed: bool, e: &str) -> Segment {
        Segment {
            interval: crate::exprlang::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed: true,
            },
            expr: parse(e).unwrap(),
        }
    }

    #[test]
    fn survival_sqrt_example() {
        let s = SurvivalScenario::new(1.0, vec![seg(0.0, 1.0, true, "1 - sqrt(t)")]).unwrap();
        let r = integrate_survival(&FusionOp::min(), &s, 0.01).unwrap();
        assert!(
            (r.get() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-8,
            "{}",
            r.get()
        );
        assert!(matches!(r.method, Method::Bisection { .. }));
    }

    #[test]
    fn survival_zero_and_grid_path() {
        let s = SurvivalScenario::new(1.0, vec![seg(0.0, 1.0, true, "0")]).unwrap();
        assert_eq!(
            integrate_survival(&FusionOp::min(), &s, 0.01)
                .unwrap()
                .get(),
            0.0
        );
        assert_eq!(
            integrate_survival(&FusionOp::prod(), &s, 0.01)
                .unwrap()
                .get(),
            0.0
        );
        let lin = SurvivalScenario::new(1.0, vec![seg(0.0, 1.0, true, "1 - t")]).unwrap();
        let r = integrate_survival(&FusionOp::prod(), &lin, 0.01).unwrap();
        assert!((r.get() - 0.25).abs() < 1e-9);
    }
}
