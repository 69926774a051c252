//! Finite measurable spaces, monotone measures on their power set, and
//! survival scenarios for continuum examples.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exprlang::{check_monotone, Direction, EvalError, Expr, Interval, MonotoneVerdict};
use crate::grid;

pub const MAX_ATOMS: usize = 24;
/// Pair predicates scan `4ⁿ` set pairs and refuse larger spaces.
pub const MAX_PAIR_SCAN_ATOMS: usize = 12;
/// Tolerance for equality comparisons between measure values.
pub const MEASURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("a space needs between 1 and {MAX_ATOMS} atoms, got {0}")]
    AtomCount(usize),
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("no value given for {0}")]
    MissingSet(String),
    #[error("value for {set} is {value}, expected a number in [0, inf]")]
    InvalidValue { set: String, value: f64 },
    #[error("m({0}) must be 0")]
    EmptySetNonZero(String),
    #[error("m(X) must be positive")]
    ZeroTotal,
    #[error("not monotone: m({sub}) = {sub_value} > m({sup}) = {sup_value}")]
    NotMonotone {
        sub: String,
        sub_value: f64,
        sup: String,
        sup_value: f64,
    },
    #[error("expected {expected} atom weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("possibility distribution must have maximum 1, got {0}")]
    NotNormalized(f64),
    #[error("weights must lie in [0, 1] and sum to 1 (sum is {0})")]
    NotProbability(f64),
    #[error("distortion {0}")]
    BadDistortion(String),
    #[error("operation requires a capacity (m(X) = 1), got m(X) = {0}")]
    NotCapacity(f64),
    #[error("pair scans are limited to {MAX_PAIR_SCAN_ATOMS} atoms, space has {0}")]
    TooManyAtoms(usize),
    #[error("survival scenario: {0}")]
    Survival(String),
    #[error("survival function: {0}")]
    Eval(#[from] EvalError),
}

/// Subset of a finite space as a bit mask over atom indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct AtomSet(pub u32);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(n: usize) -> AtomSet {
        AtomSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> AtomSet {
        AtomSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> AtomSet {
        AtomSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersect(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    /// Complement inside an `n`-atom universe.
    pub fn complement(self, n: usize) -> AtomSet {
        AtomSet(!self.0 & AtomSet::full(n).0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn atoms(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

/// Atoms `0..n` with unique labels; the σ-algebra is the full power set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    labels: Vec<String>,
}

impl FiniteSpace {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<FiniteSpace, MeasureError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_ATOMS {
            return Err(MeasureError::AtomCount(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(MeasureError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FiniteSpace { labels })
    }

    /// Atoms labelled `x1, …, xn`.
    pub fn with_atoms(n: usize) -> Result<FiniteSpace, MeasureError> {
        FiniteSpace::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn universe(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    pub fn set_count(&self) -> usize {
        1 << self.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MeasureError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MeasureError::UnknownAtom(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<AtomSet, MeasureError> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(AtomSet::from_indices)
    }

    /// `{x1, x3}` style rendering.
    pub fn show(&self, set: AtomSet) -> String {
        SetDisplay { space: self, set }.to_string()
    }
}

struct SetDisplay<'a> {
    space: &'a FiniteSpace,
    set: AtomSet,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self
            .set
            .atoms()
            .filter(|&i| i < self.space.len())
            .enumerate()
        {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.space.labels[i])?;
        }
        f.write_str("}")
    }
}

/// Monotone set function on the power set of a finite space, stored as a full
/// table indexed by mask.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMeasure {
    space: FiniteSpace,
    table: Vec<f64>,
}

impl MonotoneMeasure {
    /// Validates a full table (`table[mask] = m(mask)`).
    pub fn from_table(
        space: FiniteSpace,
        table: Vec<f64>,
    ) -> Result<MonotoneMeasure, MeasureError> {
        if table.len() != space.set_count() {
            let missing = AtomSet(table.len().min(space.set_count()) as u32);
            return Err(MeasureError::MissingSet(space.show(missing)));
        }
        for (mask, &v) in table.iter().enumerate() {
            if v.is_nan() || v < 0.0 {
                return Err(MeasureError::InvalidValue {
                    set: space.show(AtomSet(mask as u32)),
                    value: v,
                });
            }
        }
        if table[0] != 0.0 {
            return Err(MeasureError::EmptySetNonZero(space.show(AtomSet::EMPTY)));
        }
        if table[space.universe().0 as usize] <= 0.0 {
            return Err(MeasureError::ZeroTotal);
        }
        // covering pairs A ⊂ A ∪ {i} suffice for monotonicity
        for mask in 0..table.len() {
            for i in 0..space.len() {
                let sup = mask | (1 << i);
                if sup != mask && table[mask] > table[sup] + MEASURE_TOL {
                    return Err(MeasureError::NotMonotone {
                        sub: space.show(AtomSet(mask as u32)),
                        sub_value: table[mask],
                        sup: space.show(AtomSet(sup as u32)),
                        sup_value: table[sup],
                    });
                }
            }
        }
        Ok(MonotoneMeasure { space, table })
    }

    /// Builds the table from `(set, value)` entries; every set must appear.
    pub fn from_entries(
        space: FiniteSpace,
        entries: impl IntoIterator<Item = (AtomSet, f64)>,
    ) -> Result<MonotoneMeasure, MeasureError> {
        let mut table = vec![f64::NAN; space.set_count()];
        for (set, v) in entries {
            if !set.is_subset(space.universe()) {
                return Err(MeasureError::UnknownAtom(format!("mask {:#b}", set.0)));
            }
            table[set.0 as usize] = v;
        }
        if let Some(mask) = table.iter().position(|v| v.is_nan()) {
            return Err(MeasureError::MissingSet(space.show(AtomSet(mask as u32))));
        }
        MonotoneMeasure::from_table(space, table)
    }

    /// `m(A) = Σ_{x∈A} p(x)`.
    pub fn additive(space: FiniteSpace, weights: &[f64]) -> Result<MonotoneMeasure, MeasureError> {
        check_len(&space, weights)?;
        let table = (0..space.set_count())
            .map(|mask| AtomSet(mask as u32).atoms().map(|i| weights[i]).sum())
            .collect();
        MonotoneMeasure::from_table(space, table)
    }

    /// Necessity measure `m(A) = 1 − max_{x∉A} π(x)`, with the max over ∅ taken as 0.
    pub fn necessity_from_possibility(
        space: FiniteSpace,
        pi: &[f64],
    ) -> Result<MonotoneMeasure, MeasureError> {
        let n = space.len();
        check_possibility(&space, pi)?;
        let table = (0..space.set_count())
            .map(|mask| 1.0 - max_over(AtomSet(mask as u32).complement(n), pi))
            .collect();
        MonotoneMeasure::from_table(space, table)
    }

    /// Possibility measure `m(A) = max_{x∈A} π(x)`.
    pub fn possibility(space: FiniteSpace, pi: &[f64]) -> Result<MonotoneMeasure, MeasureError> {
        check_possibility(&space, pi)?;
        let table = (0..space.set_count())
            .map(|mask| max_over(AtomSet(mask as u32), pi))
            .collect();
        MonotoneMeasure::from_table(space, table)
    }

    /// Distorted probability `m(B) = h(Σ_{x∈B} p(x))` for an increasing convex
    /// `h` in the variable `x` with `h(0) = 0` and `h(1) = 1`.
    pub fn distorted_probability(
        space: FiniteSpace,
        p: &[f64],
        h: &Expr,
    ) -> Result<MonotoneMeasure, MeasureError> {
        check_probability(&space, p)?;
        let var = h
            .variables()
            .into_iter()
            .next()
            .unwrap_or_else(|| "x".to_string());
        let at = |x: f64| h.eval_f64(&[(var.as_str(), x)]);
        let (h0, h1) = (at(0.0)?, at(1.0)?);
        if h0.abs() > MEASURE_TOL || (h1 - 1.0).abs() > MEASURE_TOL {
            return Err(MeasureError::BadDistortion(format!(
                "needs h(0) = 0 and h(1) = 1, got {h0} and {h1}"
            )));
        }
        let unit = Interval::closed(0.0, 1.0);
        if let MonotoneVerdict::Violation { x1, x2, .. } =
            check_monotone(h, &var, &unit, Direction::Increasing, grid::DEFAULT_STEP)?
        {
            return Err(MeasureError::BadDistortion(format!(
                "is not increasing between {x1} and {x2}"
            )));
        }
        if let Some(x) = convexity_violation(&at, grid::DEFAULT_STEP)? {
            return Err(MeasureError::BadDistortion(format!(
                "is not convex around {x}"
            )));
        }
        let mut table = Vec::with_capacity(space.set_count());
        for mask in 0..space.set_count() {
            let prob: f64 = AtomSet(mask as u32).atoms().map(|i| p[i]).sum();
            table.push(at(prob.min(1.0))?);
        }
        table[0] = 0.0;
        MonotoneMeasure::from_table(space, table)
    }

    /// Dual capacity `m^d(C) = 1 − m(Cᶜ)`.
    pub fn dual(&self) -> Result<MonotoneMeasure, MeasureError> {
        let total = self.total();
        if (total - 1.0).abs() > MEASURE_TOL {
            return Err(MeasureError::NotCapacity(total));
        }
        let n = self.space.len();
        let table = (0..self.table.len())
            .map(|mask| 1.0 - self.table[AtomSet(mask as u32).complement(n).0 as usize])
            .collect();
        MonotoneMeasure::from_table(self.space.clone(), table)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    #[inline]
    pub fn value(&self, set: AtomSet) -> f64 {
        self.table[set.0 as usize]
    }

    pub fn total(&self) -> f64 {
        self.value(self.space.universe())
    }

    pub fn is_capacity(&self) -> bool {
        (self.total() - 1.0).abs() <= MEASURE_TOL
    }

    /// Distinct values of the table in increasing order.
    pub fn range(&self) -> Vec<f64> {
        let mut vals = self.table.clone();
        vals.sort_by(|a, b| a.total_cmp(b));
        vals.dedup_by(|b, a| (*b - *a).abs() <= MEASURE_TOL);
        vals
    }

    /// `m(A) ≤ m'(A)` for every `A` on the same space.
    pub fn is_below(&self, other: &MonotoneMeasure) -> bool {
        self.space == other.space && self.table.iter().zip(&other.table).all(|(a, b)| a <= b)
    }

    fn pair_scan(
        &self,
        bad: impl Fn(AtomSet, AtomSet) -> bool + Sync,
    ) -> Result<Option<(AtomSet, AtomSet)>, MeasureError> {
        if self.space.len() > MAX_PAIR_SCAN_ATOMS {
            return Err(MeasureError::TooManyAtoms(self.space.len()));
        }
        let sets = self.table.len();
        crate::verdict::scan_first(sets, |c| {
            let c = AtomSet(c as u32);
            Ok((0..sets)
                .map(|d| AtomSet(d as u32))
                .find(|&d| bad(c, d))
                .map(|d| (c, d)))
        })
    }

    /// First pair with `m(C∩D) ≠ m(C) ∧ m(D)`.
    pub fn minitive_violation(&self) -> Result<Option<(AtomSet, AtomSet)>, MeasureError> {
        self.pair_scan(|c, d| {
            (self.value(c.intersect(d)) - self.value(c).min(self.value(d))).abs() > MEASURE_TOL
        })
    }

    /// First pair with `m(A∪B) > m(A) + m(B)`.
    pub fn subadditive_violation(&self) -> Result<Option<(AtomSet, AtomSet)>, MeasureError> {
        self.pair_scan(|a, b| self.value(a.union(b)) > self.value(a) + self.value(b) + MEASURE_TOL)
    }

    /// First pair with `m(A∪B) + m(A∩B) < m(A) + m(B)`.
    pub fn supermodular_violation(&self) -> Result<Option<(AtomSet, AtomSet)>, MeasureError> {
        self.pair_scan(|a, b| {
            self.value(a.union(b)) + self.value(a.intersect(b))
                < self.value(a) + self.value(b) - MEASURE_TOL
        })
    }

    pub fn is_minitive(&self) -> Result<bool, MeasureError> {
        Ok(self.minitive_violation()?.is_none())
    }

    pub fn is_subadditive(&self) -> Result<bool, MeasureError> {
        Ok(self.subadditive_violation()?.is_none())
    }

    pub fn is_supermodular(&self) -> Result<bool, MeasureError> {
        Ok(self.supermodular_violation()?.is_none())
    }
}

fn check_len(space: &FiniteSpace, w: &[f64]) -> Result<(), MeasureError> {
    if w.len() != space.len() {
        return Err(MeasureError::WeightCount {
            expected: space.len(),
            got: w.len(),
        });
    }
    Ok(())
}

fn check_possibility(space: &FiniteSpace, pi: &[f64]) -> Result<(), MeasureError> {
    check_len(space, pi)?;
    let max = pi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if pi.iter().any(|v| !(0.0..=1.0).contains(v)) || (max - 1.0).abs() > MEASURE_TOL {
        return Err(MeasureError::NotNormalized(max));
    }
    Ok(())
}

fn check_probability(space: &FiniteSpace, p: &[f64]) -> Result<(), MeasureError> {
    check_len(space, p)?;
    let sum: f64 = p.iter().sum();
    if p.iter().any(|v| !(0.0..=1.0).contains(v)) || (sum - 1.0).abs() > 1e-9 {
        return Err(MeasureError::NotProbability(sum));
    }
    Ok(())
}

fn max_over(set: AtomSet, pi: &[f64]) -> f64 {
    set.atoms()
        .filter(|&i| i < pi.len())
        .map(|i| pi[i])
        .fold(0.0, f64::max)
}

/// Midpoint convexity on a uniform grid: `h(x) ≤ (h(x−s) + h(x+s)) / 2`.
fn convexity_violation(
    h: &impl Fn(f64) -> Result<f64, EvalError>,
    step: f64,
) -> Result<Option<f64>, EvalError> {
    let pts = grid::uniform(0.0, 1.0, step);
    let vals = pts.iter().map(|&x| h(x)).collect::<Result<Vec<_>, _>>()?;
    Ok(vals
        .windows(3)
        .position(|w| w[1] > 0.5 * (w[0] + w[2]) + MEASURE_TOL)
        .map(|i| pts[i + 1]))
}

/// One piece `t ∈ interval ↦ G(t)` of a survival function.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub interval: Interval,
    /// Expression in `t`.
    pub expr: Expr,
}

/// The level function `t ↦ m(D ∩ {f ≥ t})` on `[0, ȳ]`, given piecewise in
/// closed form. Used for examples on a continuum where no finite table exists.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalScenario {
    bound: f64,
    segments: Vec<Segment>,
}

/// Grid spacing for the nonincreasing validation of survival functions.
pub const SURVIVAL_CHECK_STEP: f64 = 1e-3;

impl SurvivalScenario {
    /// Validates coverage of `[0, ȳ]`, nonnegativity and monotonicity on a grid.
    /// Segments are sorted by left endpoint.
    pub fn new(bound: f64, mut segments: Vec<Segment>) -> Result<SurvivalScenario, MeasureError> {
        if !(bound.is_finite() && bound > 0.0) {
            return Err(MeasureError::Survival(format!(
                "bound must be finite and positive, got {bound}"
            )));
        }
        if segments.is_empty() {
            return Err(MeasureError::Survival("no segments".to_string()));
        }
        segments.sort_by(|a, b| {
            a.interval
                .lo
                .total_cmp(&b.interval.lo)
                .then(b.interval.lo_closed.cmp(&a.interval.lo_closed))
        });
        for w in segments.windows(2) {
            if w[0].interval.overlaps(&w[1].interval) {
                return Err(MeasureError::Survival(format!(
                    "segments {} and {} overlap",
                    w[0].interval, w[1].interval
                )));
            }
        }
        let domain = Interval::closed(0.0, bound);
        let pw = crate::exprlang::Piecewise {
            var: Some("t".to_string()),
            arms: segments
                .iter()
                .map(|s| (s.interval, Expr::Num(0.0)))
                .collect(),
        };
        if let Some(t) = pw.uncovered_point(&domain) {
            return Err(MeasureError::Survival(format!("no segment covers t = {t}")));
        }
        let scenario = SurvivalScenario { bound, segments };
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), MeasureError> {
        let mut ts = grid::uniform(0.0, self.bound, SURVIVAL_CHECK_STEP);
        for s in &self.segments {
            ts.extend(
                [s.interval.lo, s.interval.hi]
                    .into_iter()
                    .filter(|t| (0.0..=self.bound).contains(t)),
            );
        }
        ts.sort_by(|a, b| a.total_cmp(b));
        ts.dedup();
        let mut prev: Option<(f64, f64)> = None;
        for t in ts {
            // open endpoints may lie outside the domain's segment union
            let Some(g) = self.try_eval(t)? else { continue };
            if g < 0.0 || g.is_nan() {
                return Err(MeasureError::Survival(format!("G({t}) = {g} is negative")));
            }
            if let Some((pt, pg)) = prev {
                if g > pg + MEASURE_TOL {
                    return Err(MeasureError::Survival(format!(
                        "not nonincreasing: G({pt}) = {pg} < G({t}) = {g}"
                    )));
                }
            }
            prev = Some((t, g));
        }
        Ok(())
    }

    fn try_eval(&self, t: f64) -> Result<Option<f64>, MeasureError> {
        match self.segments.iter().find(|s| s.interval.contains(t)) {
            Some(s) => Ok(Some(s.expr.eval_f64(&[("t", t)])?)),
            None => Ok(None),
        }
    }

    /// `G(t)` for `t ∈ [0, ȳ]`.
    pub fn eval(&self, t: f64) -> Result<f64, MeasureError> {
        self.try_eval(t)?.ok_or_else(|| {
            MeasureError::Survival(format!("t = {t} lies outside [0, {}]", self.bound))
        })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `G(t)` on the part of a segment, evaluated with the segment's own
    /// expression (also at excluded endpoints, for one-sided limits).
    pub fn eval_in(&self, segment: usize, t: f64) -> Result<f64, MeasureError> {
        Ok(self.segments[segment].expr.eval_f64(&[("t", t)])?)
    }
}
