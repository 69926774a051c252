//! Fusion functions `∘ : [0, ȳ]² → [0, ȳ]` with declared regularity flags.
//!
//! Five operations are built in: the minimum `M`, the product `Π`, the
//! Łukasiewicz semicopula `W(a, b) = (a + b − 1)₊`, the Gödel conjunction
//! `a ⊗_G b = b·𝟙{a > 1 − b}` and its contrapositive
//! `a ⊗_GC b = a·𝟙{a > 1 − b}`. Anything else is an expression in `a` and `b`.
//!
//! Flags are declarations. [`validate_flags`] confirms them exactly for
//! builtins and on a grid otherwise, or reports a concrete violating tuple.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exprlang::{EvalError, Expr};
use crate::grid::GridSpec;
use crate::value::{ext_mul, NonNegExt};
use crate::verdict::{scan_first, Evidence, Verdict, DEFAULT_TOLERANCE};

/// Slack allowed when checking that arguments lie in `[0, ȳ]`.
const DOMAIN_SLACK: f64 = 1e-12;
/// Offset used to probe one-sided continuity.
const CONTINUITY_EPS: f64 = 1e-9;
const CONTINUITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("argument {arg} of `{op}` lies outside [0, {bound}]")]
    OutOfDomain {
        op: String,
        arg: f64,
        bound: NonNegExt,
    },
    #[error("`{op}`: {source}")]
    Eval { op: String, source: EvalError },
    #[error("`{0}` is only defined on [0, 1]")]
    UnitBoundRequired(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Min,
    Prod,
    Lukasiewicz,
    #[serde(rename = "godel")]
    GodelConj,
    #[serde(rename = "godel_contra")]
    GodelContraConj,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Min,
        Builtin::Prod,
        Builtin::Lukasiewicz,
        Builtin::GodelConj,
        Builtin::GodelContraConj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Min => "min",
            Builtin::Prod => "prod",
            Builtin::Lukasiewicz => "lukasiewicz",
            Builtin::GodelConj => "godel",
            Builtin::GodelContraConj => "godel_contra",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    #[inline]
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            Builtin::Min => a.min(b),
            Builtin::Prod => ext_mul(a, b),
            Builtin::Lukasiewicz => (a + b - 1.0).max(0.0),
            Builtin::GodelConj => {
                if a + b > 1.0 {
                    b
                } else {
                    0.0
                }
            }
            Builtin::GodelContraConj => {
                if a + b > 1.0 {
                    a
                } else {
                    0.0
                }
            }
        }
    }

    fn needs_unit_bound(self) -> bool {
        !matches!(self, Builtin::Min | Builtin::Prod)
    }

    /// The regularity properties the operation actually has on `[0, bound]`.
    pub fn properties(self, bound: NonNegExt) -> Flags {
        let unit = bound == NonNegExt::ONE;
        match self {
            Builtin::Min | Builtin::Prod => Flags {
                non_decreasing: true,
                left_continuous_first: true,
                left_continuous_second: true,
                right_continuous_first: true,
                right_continuous_second: true,
                commutative: true,
                semicopula: unit,
                fuzzy_conjunction: unit,
            },
            Builtin::Lukasiewicz => Flags {
                non_decreasing: true,
                left_continuous_first: true,
                left_continuous_second: true,
                right_continuous_first: true,
                right_continuous_second: true,
                commutative: true,
                semicopula: true,
                fuzzy_conjunction: true,
            },
            Builtin::GodelConj | Builtin::GodelContraConj => Flags {
                non_decreasing: true,
                left_continuous_first: true,
                left_continuous_second: true,
                right_continuous_first: false,
                right_continuous_second: false,
                commutative: false,
                semicopula: false,
                fuzzy_conjunction: true,
            },
        }
    }
}

/// Declared regularity of a fusion operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Flags {
    pub non_decreasing: bool,
    pub left_continuous_first: bool,
    pub left_continuous_second: bool,
    pub right_continuous_first: bool,
    pub right_continuous_second: bool,
    pub commutative: bool,
    pub semicopula: bool,
    pub fuzzy_conjunction: bool,
}

impl Flags {
    pub fn left_continuous(&self) -> bool {
        self.left_continuous_first && self.left_continuous_second
    }

    fn declared(&self) -> Vec<Flag> {
        use Flag::*;
        [
            (NonDecreasing, self.non_decreasing),
            (LeftContinuousFirst, self.left_continuous_first),
            (LeftContinuousSecond, self.left_continuous_second),
            (RightContinuousFirst, self.right_continuous_first),
            (RightContinuousSecond, self.right_continuous_second),
            (Commutative, self.commutative),
            (Semicopula, self.semicopula),
            (FuzzyConjunction, self.fuzzy_conjunction),
        ]
        .into_iter()
        .filter_map(|(f, on)| on.then_some(f))
        .collect()
    }

    fn get(&self, flag: Flag) -> bool {
        match flag {
            Flag::NonDecreasing => self.non_decreasing,
            Flag::LeftContinuousFirst => self.left_continuous_first,
            Flag::LeftContinuousSecond => self.left_continuous_second,
            Flag::RightContinuousFirst => self.right_continuous_first,
            Flag::RightContinuousSecond => self.right_continuous_second,
            Flag::Commutative => self.commutative,
            Flag::Semicopula => self.semicopula,
            Flag::FuzzyConjunction => self.fuzzy_conjunction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    NonDecreasing,
    LeftContinuousFirst,
    LeftContinuousSecond,
    RightContinuousFirst,
    RightContinuousSecond,
    Commutative,
    Semicopula,
    FuzzyConjunction,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Builtin(Builtin),
    /// Expression in the variables `a` and `b`.
    Custom(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionOp {
    name: String,
    bound: NonNegExt,
    body: Body,
    flags: Flags,
}

impl FusionOp {
    /// A builtin on `[0, 1]` with its true properties as flags.
    pub fn builtin(b: Builtin) -> FusionOp {
        FusionOp {
            name: b.name().to_string(),
            bound: NonNegExt::ONE,
            body: Body::Builtin(b),
            flags: b.properties(NonNegExt::ONE),
        }
    }

    /// A builtin on `[0, bound]`. Only `min` and `prod` accept bounds other than 1.
    pub fn builtin_with_bound(b: Builtin, bound: NonNegExt) -> Result<FusionOp, FusionError> {
        if b.needs_unit_bound() && bound != NonNegExt::ONE {
            return Err(FusionError::UnitBoundRequired(b.name().to_string()));
        }
        Ok(FusionOp {
            name: b.name().to_string(),
            bound,
            body: Body::Builtin(b),
            flags: b.properties(bound),
        })
    }

    pub fn min() -> FusionOp {
        FusionOp::builtin(Builtin::Min)
    }

    pub fn prod() -> FusionOp {
        FusionOp::builtin(Builtin::Prod)
    }

    pub fn lukasiewicz() -> FusionOp {
        FusionOp::builtin(Builtin::Lukasiewicz)
    }

    pub fn godel() -> FusionOp {
        FusionOp::builtin(Builtin::GodelConj)
    }

    pub fn godel_contra() -> FusionOp {
        FusionOp::builtin(Builtin::GodelContraConj)
    }

    /// Expression body in `a`, `b` with declared flags.
    pub fn custom(name: impl Into<String>, body: Expr, bound: NonNegExt, flags: Flags) -> FusionOp {
        FusionOp {
            name: name.into(),
            bound,
            body: Body::Custom(body),
            flags,
        }
    }

    /// Replaces the declared flags.
    pub fn with_flags(mut self, flags: Flags) -> FusionOp {
        self.flags = flags;
        self
    }

    /// `(x, y) ↦ self(y, x)`.
    pub fn swapped(&self) -> FusionOp {
        let body = match &self.body {
            Body::Builtin(b) if self.flags.commutative => Body::Builtin(*b),
            Body::Builtin(b) => {
                let a = crate::exprlang::Expr::var("a");
                let bb = crate::exprlang::Expr::var("b");
                // expression form keeps the flags honest for non-commutative builtins
                return FusionOp {
                    name: format!("{}ᵀ", self.name),
                    bound: self.bound,
                    body: Body::Custom(swap_builtin_expr(*b, bb, a)),
                    flags: swap_flags(self.flags),
                };
            }
            Body::Custom(e) => Body::Custom(swap_vars(e)),
        };
        FusionOp {
            name: format!("{}ᵀ", self.name),
            bound: self.bound,
            body,
            flags: swap_flags(self.flags),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> NonNegExt {
        self.bound
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn flags(&self) -> &Flags {
        &self.flags
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        match self.body {
            Body::Builtin(b) => Some(b),
            Body::Custom(_) => None,
        }
    }

    fn clamp_arg(&self, x: f64) -> Result<f64, FusionError> {
        let bound = self.bound.get();
        if x.is_nan() || x < -DOMAIN_SLACK || x > bound + DOMAIN_SLACK * bound.max(1.0) {
            return Err(FusionError::OutOfDomain {
                op: self.name.clone(),
                arg: x,
                bound: self.bound,
            });
        }
        Ok(x.clamp(0.0, bound))
    }

    /// Evaluates `a ∘ b` for `a, b ∈ [0, ȳ]`.
    pub fn eval(&self, a: NonNegExt, b: NonNegExt) -> Result<NonNegExt, FusionError> {
        let v = self.apply(a.get(), b.get())?;
        NonNegExt::new(v).map_err(|_| FusionError::Eval {
            op: self.name.clone(),
            source: EvalError::Negative(v),
        })
    }

    /// Domain-checked evaluation on raw binary64 values.
    #[inline]
    pub fn apply(&self, a: f64, b: f64) -> Result<f64, FusionError> {
        let a = self.clamp_arg(a)?;
        let b = self.clamp_arg(b)?;
        match &self.body {
            Body::Builtin(op) => Ok(op.apply(a, b)),
            Body::Custom(e) => e
                .eval_f64(&[("a", a), ("b", b)])
                .and_then(|v| {
                    if v < 0.0 {
                        Err(EvalError::Negative(v))
                    } else {
                        Ok(v)
                    }
                })
                .map_err(|source| FusionError::Eval {
                    op: self.name.clone(),
                    source,
                }),
        }
    }

    fn grid(&self, spec: &GridSpec) -> (Vec<f64>, bool) {
        spec.span(self.bound.get())
    }
}

fn swap_flags(f: Flags) -> Flags {
    Flags {
        left_continuous_first: f.left_continuous_second,
        left_continuous_second: f.left_continuous_first,
        right_continuous_first: f.right_continuous_second,
        right_continuous_second: f.right_continuous_first,
        ..f
    }
}

fn swap_builtin_expr(b: Builtin, first: Expr, second: Expr) -> Expr {
    use crate::exprlang::{BinOp, Func, Interval};
    // b(first, second) written out as an expression
    let guard = Expr::Indicator(
        Interval {
            lo: 1.0,
            hi: f64::INFINITY,
            lo_closed: false,
            hi_closed: false,
        },
        Box::new(Expr::bin(BinOp::Add, first.clone(), second.clone())),
    );
    match b {
        Builtin::Min => Expr::Call(Func::Min, vec![first, second]),
        Builtin::Prod => Expr::bin(BinOp::Mul, first, second),
        Builtin::Lukasiewicz => Expr::Call(
            Func::Pos,
            vec![Expr::bin(
                BinOp::Sub,
                Expr::bin(BinOp::Add, first, second),
                Expr::Num(1.0),
            )],
        ),
        Builtin::GodelConj => Expr::bin(BinOp::Mul, second, guard),
        Builtin::GodelContraConj => Expr::bin(BinOp::Mul, first, guard),
    }
}

fn swap_vars(e: &Expr) -> Expr {
    use crate::exprlang::Piecewise;
    match e {
        Expr::Var(v) if v == "a" => Expr::var("b"),
        Expr::Var(v) if v == "b" => Expr::var("a"),
        Expr::Num(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(x) => Expr::Neg(Box::new(swap_vars(x))),
        Expr::Bin(op, l, r) => Expr::bin(*op, swap_vars(l), swap_vars(r)),
        Expr::Call(f, args) => Expr::Call(*f, args.iter().map(swap_vars).collect()),
        Expr::Indicator(iv, x) => Expr::Indicator(*iv, Box::new(swap_vars(x))),
        Expr::Piecewise(pw) => Expr::Piecewise(Piecewise {
            var: pw.var.as_deref().map(|v| match v {
                "a" => "b".to_string(),
                "b" => "a".to_string(),
                other => other.to_string(),
            }),
            arms: pw.arms.iter().map(|(iv, x)| (*iv, swap_vars(x))).collect(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FlagStatus {
    Confirmed { evidence: Evidence },
    Violated { witness: Vec<f64>, detail: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagCheck {
    pub flag: Flag,
    #[serde(flatten)]
    pub status: FlagStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlagReport {
    pub op: String,
    pub checks: Vec<FlagCheck>,
    pub notes: Vec<String>,
}

impl FlagReport {
    pub fn all_confirmed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, FlagStatus::Confirmed { .. }))
    }

    pub fn violation(&self, flag: Flag) -> Option<&FlagStatus> {
        self.checks
            .iter()
            .find(|c| c.flag == flag && matches!(c.status, FlagStatus::Violated { .. }))
            .map(|c| &c.status)
    }
}

type Witness = (Vec<f64>, String);

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= DEFAULT_TOLERANCE * x.abs().max(y.abs()).max(1.0)
}

/// Looks for a grid point where `flag` fails.
fn flag_witness(op: &FusionOp, flag: Flag, pts: &[f64]) -> Result<Option<Witness>, FusionError> {
    let n = pts.len();
    let bound = op.bound.get();
    let ap = |a: f64, b: f64| op.apply(a, b);
    match flag {
        Flag::NonDecreasing => scan_first(n, |i| {
            for j in 0..n {
                let v = ap(pts[i], pts[j])?;
                if i + 1 < n {
                    let up = ap(pts[i + 1], pts[j])?;
                    if v > up + DEFAULT_TOLERANCE {
                        return Ok(Some((
                            vec![pts[i], pts[j], pts[i + 1], pts[j]],
                            format!(
                                "op({}, {}) = {v} > op({}, {}) = {up}",
                                pts[i],
                                pts[j],
                                pts[i + 1],
                                pts[j]
                            ),
                        )));
                    }
                }
                if j + 1 < n {
                    let up = ap(pts[i], pts[j + 1])?;
                    if v > up + DEFAULT_TOLERANCE {
                        return Ok(Some((
                            vec![pts[i], pts[j], pts[i], pts[j + 1]],
                            format!(
                                "op({}, {}) = {v} > op({}, {}) = {up}",
                                pts[i],
                                pts[j],
                                pts[i],
                                pts[j + 1]
                            ),
                        )));
                    }
                }
            }
            Ok(None)
        }),
        Flag::LeftContinuousFirst
        | Flag::LeftContinuousSecond
        | Flag::RightContinuousFirst
        | Flag::RightContinuousSecond => {
            let first = matches!(flag, Flag::LeftContinuousFirst | Flag::RightContinuousFirst);
            let left = matches!(flag, Flag::LeftContinuousFirst | Flag::LeftContinuousSecond);
            scan_first(n, |i| {
                for j in 0..n {
                    let (a, b) = (pts[i], pts[j]);
                    let moving = if first { a } else { b };
                    if (left && moving <= 0.0) || (!left && moving >= bound) {
                        continue;
                    }
                    let shift = if left {
                        -CONTINUITY_EPS
                    } else {
                        CONTINUITY_EPS
                    };
                    let (a2, b2) = if first {
                        (a + shift, b)
                    } else {
                        (a, b + shift)
                    };
                    let v = ap(a, b)?;
                    let w = ap(a2, b2)?;
                    if (v - w).abs() > CONTINUITY_TOL {
                        return Ok(Some((
                            vec![a, b],
                            format!("op jumps from {w} to {v} at ({a}, {b})"),
                        )));
                    }
                }
                Ok(None)
            })
        }
        Flag::Commutative => scan_first(n, |i| {
            for j in (i + 1)..n {
                let (a, b) = (pts[i], pts[j]);
                let (v, w) = (ap(a, b)?, ap(b, a)?);
                if !near(v, w) {
                    return Ok(Some((
                        vec![a, b],
                        format!("op({a}, {b}) = {v} ≠ op({b}, {a}) = {w}"),
                    )));
                }
            }
            Ok(None)
        }),
        Flag::Semicopula => {
            if op.bound != NonNegExt::ONE {
                return Ok(Some((
                    vec![],
                    format!("bound is {} but a semicopula lives on [0, 1]", op.bound),
                )));
            }
            for &a in pts {
                let v = ap(a, 1.0)?;
                if !near(v, a) {
                    return Ok(Some((vec![a, 1.0], format!("op({a}, 1) = {v} ≠ {a}"))));
                }
                let w = ap(1.0, a)?;
                if !near(w, a) {
                    return Ok(Some((vec![1.0, a], format!("op(1, {a}) = {w} ≠ {a}"))));
                }
            }
            flag_witness(op, Flag::NonDecreasing, pts)
        }
        Flag::FuzzyConjunction => {
            if op.bound != NonNegExt::ONE {
                return Ok(Some((
                    vec![],
                    format!(
                        "bound is {} but a fuzzy conjunction lives on [0, 1]",
                        op.bound
                    ),
                )));
            }
            for (a, b, want) in [
                (1.0, 1.0, 1.0),
                (0.0, 1.0, 0.0),
                (1.0, 0.0, 0.0),
                (0.0, 0.0, 0.0),
            ] {
                let v = ap(a, b)?;
                if !near(v, want) {
                    return Ok(Some((vec![a, b], format!("op({a}, {b}) = {v} ≠ {want}"))));
                }
            }
            flag_witness(op, Flag::NonDecreasing, pts)
        }
    }
}

/// Confirms or refutes each declared flag. Builtins are confirmed by case
/// analysis; everything else is checked on the grid.
pub fn validate_flags(op: &FusionOp, grid: &GridSpec) -> Result<FlagReport, FusionError> {
    let (pts, capped) = op.grid(grid);
    let grid_evidence = Evidence::Grid {
        step: grid.step,
        points: pts.len(),
        capped,
    };
    let mut notes = Vec::new();
    if capped {
        notes.push(format!(
            "infinite bound capped at {} for grid checks",
            grid.inf_cap
        ));
    }
    let truth = op.as_builtin().map(|b| b.properties(op.bound));
    let mut checks = Vec::new();
    for flag in op.flags.declared() {
        let status = match truth {
            Some(t) if t.get(flag) => FlagStatus::Confirmed {
                evidence: Evidence::Exact,
            },
            Some(_) => match flag_witness(op, flag, &pts)? {
                Some((witness, detail)) => FlagStatus::Violated { witness, detail },
                None => FlagStatus::Violated {
                    witness: vec![],
                    detail: "fails by case analysis (no grid point exposes it)".to_string(),
                },
            },
            None => match flag_witness(op, flag, &pts)? {
                Some((witness, detail)) => FlagStatus::Violated { witness, detail },
                None => FlagStatus::Confirmed {
                    evidence: grid_evidence.clone(),
                },
            },
        };
        checks.push(FlagCheck { flag, status });
    }
    Ok(FlagReport {
        op: op.name.clone(),
        checks,
        notes,
    })
}

/// Checks whether `inner` is dominated by `outer`:
/// `outer(inner(a,b), inner(c,d)) ≥ inner(outer(a,c), outer(b,d))` for all
/// `a, b, c, d` on the `[0, 1]` grid.
pub fn dominates(
    outer: &FusionOp,
    inner: &FusionOp,
    grid: &GridSpec,
) -> Result<Verdict, FusionError> {
    for op in [outer, inner] {
        if op.bound != NonNegExt::ONE {
            return Err(FusionError::UnitBoundRequired(op.name.clone()));
        }
    }
    let pts = crate::grid::uniform(0.0, 1.0, grid.step);
    let n = pts.len();
    let table = |op: &FusionOp| -> Result<Vec<f64>, FusionError> {
        let mut t = Vec::with_capacity(n * n);
        for &x in &pts {
            for &y in &pts {
                t.push(op.apply(x, y)?);
            }
        }
        Ok(t)
    };
    let inner_t = table(inner)?;
    let outer_t = table(outer)?;
    let hit = scan_first(n, |a| {
        for b in 0..n {
            let ab = inner_t[a * n + b];
            for c in 0..n {
                let ac = outer_t[a * n + c];
                for d in 0..n {
                    let lhs = outer.apply(ab, inner_t[c * n + d])?;
                    let rhs = inner.apply(ac, outer_t[b * n + d])?;
                    if lhs < rhs - DEFAULT_TOLERANCE {
                        return Ok(Some([a, b, c, d]));
                    }
                }
            }
        }
        Ok(None)
    })?;
    Ok(match hit {
        None => Verdict::HoldsOnGrid {
            evidence: Evidence::Grid {
                step: grid.step,
                points: n.pow(4),
                capped: false,
            },
        },
        Some(idx) => {
            let [a, b, c, d] = idx.map(|i| pts[i]);
            // re-check directly
            let lhs = outer.apply(inner.apply(a, b)?, inner.apply(c, d)?)?;
            let rhs = inner.apply(outer.apply(a, c)?, outer.apply(b, d)?)?;
            Verdict::Violated {
                witness: vec![a, b, c, d],
                lhs,
                rhs,
                evidence: Evidence::Grid {
                    step: grid.step,
                    points: n.pow(4),
                    capped: false,
                },
            }
        }
    })
}

/// Checks `op(a, b) ≤ min(a, b)` on the grid over `[0, ȳ]`. In the verdict,
/// `lhs = min(a, b)` and `rhs = op(a, b)`.
pub fn leq_min(op: &FusionOp, grid: &GridSpec) -> Result<Verdict, FusionError> {
    let (pts, capped) = op.grid(grid);
    let n = pts.len();
    let hit = scan_first(n, |i| {
        for j in 0..n {
            let (a, b) = (pts[i], pts[j]);
            let v = op.apply(a, b)?;
            if a.min(b) < v - DEFAULT_TOLERANCE {
                return Ok(Some((a, b, v)));
            }
        }
        Ok(None)
    })?;
    let evidence = Evidence::Grid {
        step: grid.step,
        points: n * n,
        capped,
    };
    Ok(match hit {
        None => Verdict::HoldsOnGrid { evidence },
        Some((a, b, v)) => Verdict::Violated {
            witness: vec![a, b],
            lhs: a.min(b),
            rhs: v,
            evidence,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprlang::parse_with_vars;

    fn nn(v: f64) -> NonNegExt {
        NonNegExt::new(v).unwrap()
    }

    fn custom(name: &str, src: &str, flags: Flags) -> FusionOp {
        FusionOp::custom(
            name,
            parse_with_vars(src, &["a", "b"]).unwrap(),
            NonNegExt::ONE,
            flags,
        )
    }

    #[test]
    fn builtin_values() {
        // 0.3 ≤ 1 − 0.4, so the Gödel guard is off
        assert_eq!(
            FusionOp::godel().eval(nn(0.3), nn(0.4)).unwrap(),
            NonNegExt::ZERO
        );
        assert_eq!(FusionOp::godel().eval(nn(0.7), nn(0.4)).unwrap(), nn(0.4));
        assert_eq!(
            FusionOp::godel_contra().eval(nn(0.7), nn(0.4)).unwrap(),
            nn(0.7)
        );
        assert_eq!(
            FusionOp::lukasiewicz().eval(nn(0.5), nn(0.75)).unwrap(),
            nn(0.25)
        );
        let prod_inf = FusionOp::builtin_with_bound(Builtin::Prod, NonNegExt::INFINITY).unwrap();
        assert_eq!(
            prod_inf.eval(NonNegExt::ZERO, NonNegExt::INFINITY).unwrap(),
            NonNegExt::ZERO
        );
    }

    #[test]
    fn domain_is_enforced() {
        let err = FusionOp::min().eval(nn(1.5), nn(0.2)).unwrap_err();
        assert!(matches!(err, FusionError::OutOfDomain { .. }));
        assert!(FusionOp::builtin_with_bound(Builtin::Lukasiewicz, NonNegExt::INFINITY).is_err());
    }

    #[test]
    fn custom_matches_builtin_closed_forms() {
        let w = custom("w", "max(a + b - 1, 0)", Flags::default());
        let g = custom("g", "b * ind(1, inf)(a + b)", Flags::default());
        let pts = crate::grid::uniform(0.0, 1.0, 0.05);
        for &a in &pts {
            for &b in &pts {
                assert_eq!(w.apply(a, b).unwrap(), Builtin::Lukasiewicz.apply(a, b));
                assert_eq!(g.apply(a, b).unwrap(), Builtin::GodelConj.apply(a, b));
            }
        }
    }

    #[test]
    fn lukasiewicz_semicopula_confirmed_exactly() {
        let report = validate_flags(&FusionOp::lukasiewicz(), &GridSpec::default()).unwrap();
        assert!(report.all_confirmed());
        assert!(report.checks.iter().all(|c| c.status
            == FlagStatus::Confirmed {
                evidence: Evidence::Exact
            }));
    }

    #[test]
    fn godel_is_not_a_semicopula() {
        let flags = Flags {
            semicopula: true,
            non_decreasing: true,
            ..Flags::default()
        };
        let op = FusionOp::godel().with_flags(flags);
        let report = validate_flags(&op, &GridSpec::default()).unwrap();
        match report.violation(Flag::Semicopula) {
            Some(FlagStatus::Violated { witness, .. }) => assert_eq!(witness, &vec![0.01, 1.0]),
            other => panic!("expected violation, got {other:?}"),
        }
        // the boundary identity fails at a = 0.5 too
        assert_eq!(op.apply(0.5, 1.0).unwrap(), 1.0);
        assert_eq!(op.apply(1.0, 0.5).unwrap(), 0.5);
    }

    #[test]
    fn godel_right_continuity_refuted_on_grid() {
        let op = FusionOp::godel().with_flags(Flags {
            right_continuous_first: true,
            ..Flags::default()
        });
        let report = validate_flags(&op, &GridSpec::default()).unwrap();
        assert!(report.violation(Flag::RightContinuousFirst).is_some());
    }

    #[test]
    fn custom_flags_checked_on_grid() {
        let all = Flags {
            non_decreasing: true,
            left_continuous_first: true,
            left_continuous_second: true,
            right_continuous_first: true,
            right_continuous_second: true,
            commutative: true,
            semicopula: true,
            fuzzy_conjunction: true,
        };
        let ab2 = custom("ab2", "a * b^2", all);
        let report = validate_flags(&ab2, &GridSpec::with_step(0.1)).unwrap();
        assert!(report.violation(Flag::Commutative).is_some());
        assert!(report.violation(Flag::Semicopula).is_some());
        assert!(report.violation(Flag::NonDecreasing).is_none());
        assert!(report.violation(Flag::FuzzyConjunction).is_none());

        let dec = custom(
            "dec",
            "1 - a*b",
            Flags {
                non_decreasing: true,
                ..Flags::default()
            },
        );
        assert!(validate_flags(&dec, &GridSpec::with_step(0.1))
            .unwrap()
            .violation(Flag::NonDecreasing)
            .is_some());
    }

    #[test]
    fn min_is_non_decreasing() {
        let report = validate_flags(&FusionOp::min(), &GridSpec::default()).unwrap();
        assert!(report.all_confirmed());
    }

    #[test]
    fn min_dominates_lukasiewicz_coarse() {
        let v = dominates(
            &FusionOp::min(),
            &FusionOp::lukasiewicz(),
            &GridSpec::with_step(0.05),
        )
        .unwrap();
        assert!(v.holds(), "{v:?}");
    }

    #[test]
    fn min_dominates_itself() {
        let v = dominates(
            &FusionOp::min(),
            &FusionOp::min(),
            &GridSpec::with_step(0.05),
        )
        .unwrap();
        assert!(v.holds());
    }

    #[test]
    fn lukasiewicz_does_not_dominate_min() {
        let v = dominates(
            &FusionOp::lukasiewicz(),
            &FusionOp::min(),
            &GridSpec::with_step(0.05),
        )
        .unwrap();
        let Verdict::Violated { lhs, rhs, .. } = v else {
            panic!("expected a violation")
        };
        assert!(lhs < rhs);
        // the point named in the write-up is a violation as well
        let (w, m) = (FusionOp::lukasiewicz(), FusionOp::min());
        let lhs = w
            .apply(m.apply(1.0, 0.5).unwrap(), m.apply(0.5, 1.0).unwrap())
            .unwrap();
        let rhs = m
            .apply(w.apply(1.0, 0.5).unwrap(), w.apply(0.5, 1.0).unwrap())
            .unwrap();
        assert!(lhs < rhs);
    }

    #[test]
    fn leq_min_cases() {
        assert!(leq_min(&FusionOp::prod(), &GridSpec::default())
            .unwrap()
            .holds());
        assert!(leq_min(&FusionOp::lukasiewicz(), &GridSpec::default())
            .unwrap()
            .holds());
        let max = custom("max", "max(a, b)", Flags::default());
        let v = leq_min(&max, &GridSpec::default()).unwrap();
        assert_eq!(v.witness(), Some(&[0.0, 0.01][..]));
        assert_eq!(max.apply(0.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn swapped_custom_and_builtin() {
        let ab2 = custom("ab2", "a * b^2", Flags::default());
        assert_eq!(
            ab2.swapped().apply(0.5, 0.2).unwrap(),
            ab2.apply(0.2, 0.5).unwrap()
        );
        let g = FusionOp::godel();
        for (a, b) in [(0.3, 0.8), (0.8, 0.3), (0.5, 0.5), (0.9, 0.05)] {
            assert_eq!(g.swapped().apply(a, b).unwrap(), g.apply(b, a).unwrap());
        }
    }
}
