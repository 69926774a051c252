use serde::Serialize;

use super::{BinOp, EvalError, Expr, Func, Interval};
use crate::grid;
use crate::value::{ext_mul, NonNegExt};

fn lookup(bindings: &[(&str, f64)], name: &str) -> Result<f64, EvalError> {
    bindings
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .ok_or_else(|| EvalError::UnboundVariable(name.to_string()))
}

fn checked(v: f64, what: &'static str) -> Result<f64, EvalError> {
    if v.is_nan() {
        Err(EvalError::Indeterminate(what))
    } else {
        Ok(v)
    }
}

impl Expr {
    /// Evaluates to a value in `[0, ∞]`. Negative results are an error; use
    /// `pos(..)` to clamp explicitly.
    pub fn eval(&self, bindings: &[(&str, NonNegExt)]) -> Result<NonNegExt, EvalError> {
        let raw: Vec<(&str, f64)> = bindings.iter().map(|(n, v)| (*n, v.get())).collect();
        self.eval_nonneg(&raw)
    }

    pub fn eval_nonneg(&self, bindings: &[(&str, f64)]) -> Result<NonNegExt, EvalError> {
        let v = self.eval_f64(bindings)?;
        NonNegExt::new(v).map_err(|_| EvalError::Negative(v))
    }

    /// Real-valued evaluation; intermediate and final values may be negative.
    pub fn eval_f64(&self, bindings: &[(&str, f64)]) -> Result<f64, EvalError> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var(name) => lookup(bindings, name),
            Expr::Neg(e) => Ok(-e.eval_f64(bindings)?),
            Expr::Bin(op, l, r) => {
                let a = l.eval_f64(bindings)?;
                let b = r.eval_f64(bindings)?;
                match op {
                    BinOp::Add => checked(a + b, "inf - inf"),
                    BinOp::Sub => checked(a - b, "inf - inf"),
                    BinOp::Mul => Ok(ext_mul(a, b)),
                    BinOp::Div => {
                        if b == 0.0 {
                            Err(EvalError::DivisionByZero)
                        } else {
                            checked(a / b, "inf / inf")
                        }
                    }
                    BinOp::Pow => {
                        let v = a.powf(b);
                        if v.is_nan() {
                            Err(EvalError::Domain { func: "^", arg: a })
                        } else {
                            Ok(v)
                        }
                    }
                }
            }
            Expr::Call(func, args) => match func {
                Func::Sqrt => {
                    let x = args[0].eval_f64(bindings)?;
                    if x < 0.0 {
                        Err(EvalError::Domain {
                            func: "sqrt",
                            arg: x,
                        })
                    } else {
                        Ok(x.sqrt())
                    }
                }
                Func::Abs => Ok(args[0].eval_f64(bindings)?.abs()),
                Func::Pos => Ok(args[0].eval_f64(bindings)?.max(0.0)),
                Func::Min | Func::Max => {
                    let mut acc = args[0].eval_f64(bindings)?;
                    for a in &args[1..] {
                        let v = a.eval_f64(bindings)?;
                        acc = if *func == Func::Min {
                            acc.min(v)
                        } else {
                            acc.max(v)
                        };
                    }
                    Ok(acc)
                }
            },
            Expr::Indicator(iv, e) => Ok(if iv.contains(e.eval_f64(bindings)?) {
                1.0
            } else {
                0.0
            }),
            Expr::Piecewise(pw) => {
                let x = match &pw.var {
                    Some(name) => lookup(bindings, name)?,
                    None if bindings.len() == 1 => bindings[0].1,
                    None => return Err(EvalError::AmbiguousGuard),
                };
                match pw.arms.iter().find(|(iv, _)| iv.contains(x)) {
                    Some((_, body)) => body.eval_f64(bindings),
                    None => Err(EvalError::OutsidePiecewise { value: x }),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    NonDecreasing,
    Increasing,
    NonIncreasing,
    Decreasing,
}

/// Outcome of a sampled monotonicity check. `HoldsOnGrid` is grid evidence,
/// not a proof.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MonotoneVerdict {
    HoldsOnGrid { step: f64, points: usize },
    Violation { x1: f64, x2: f64, f1: f64, f2: f64 },
}

impl MonotoneVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, MonotoneVerdict::HoldsOnGrid { .. })
    }
}

const MONOTONE_TOL: f64 = 1e-12;

/// Samples `e` along `var` on a grid over `interval` (finite) and compares
/// consecutive values.
pub fn check_monotone(
    e: &Expr,
    var: &str,
    interval: &Interval,
    direction: Direction,
    grid_step: f64,
) -> Result<MonotoneVerdict, EvalError> {
    assert!(grid_step > 0.0, "grid step must be positive");
    let points: Vec<f64> = grid::uniform(interval.lo, interval.hi, grid_step)
        .into_iter()
        .filter(|x| interval.contains(*x))
        .collect();
    let mut prev: Option<(f64, f64)> = None;
    for &x in &points {
        let fx = e.eval_f64(&[(var, x)])?;
        if let Some((px, pf)) = prev {
            let ok = match direction {
                Direction::NonDecreasing => fx >= pf - MONOTONE_TOL,
                Direction::Increasing => fx > pf,
                Direction::NonIncreasing => fx <= pf + MONOTONE_TOL,
                Direction::Decreasing => fx < pf,
            };
            if !ok {
                return Ok(MonotoneVerdict::Violation {
                    x1: px,
                    x2: x,
                    f1: pf,
                    f2: fx,
                });
            }
        }
        prev = Some((x, fx));
    }
    Ok(MonotoneVerdict::HoldsOnGrid {
        step: grid_step,
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn nn(v: f64) -> NonNegExt {
        NonNegExt::new(v).unwrap()
    }

    #[test]
    fn lukasiewicz_value() {
        let w = parse("max(a + b - 1, 0)").unwrap();
        let v = w.eval(&[("a", nn(0.25)), ("b", nn(0.9))]).unwrap();
        assert!((v.get() - 0.15).abs() < 1e-15);
    }

    #[test]
    fn outside_piecewise_is_domain_error() {
        let e = parse("piecewise{ [0,0.5]: 1 ; (0.5,1]: 0.5 }").unwrap();
        assert_eq!(e.eval(&[("x", nn(0.75))]).unwrap(), nn(0.5));
        assert_eq!(e.eval(&[("x", nn(0.5))]).unwrap(), nn(1.0));
        assert_eq!(
            e.eval(&[("x", nn(1.5))]),
            Err(EvalError::OutsidePiecewise { value: 1.5 })
        );
    }

    #[test]
    fn product_with_infinity_follows_convention() {
        let e = parse("a * b").unwrap();
        assert_eq!(
            e.eval(&[("a", nn(0.0)), ("b", NonNegExt::INFINITY)])
                .unwrap(),
            NonNegExt::ZERO
        );
        assert_eq!(
            e.eval(&[("a", NonNegExt::INFINITY), ("b", nn(0.0))])
                .unwrap(),
            NonNegExt::ZERO
        );
        assert!(e
            .eval(&[("a", nn(2.0)), ("b", NonNegExt::INFINITY)])
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            parse("x - 1").unwrap().eval(&[("x", nn(0.5))]),
            Err(EvalError::Negative(-0.5))
        );
        assert_eq!(
            parse("pos(x - 1)")
                .unwrap()
                .eval(&[("x", nn(0.5))])
                .unwrap(),
            NonNegExt::ZERO
        );
        assert_eq!(
            parse("a - b")
                .unwrap()
                .eval(&[("a", NonNegExt::INFINITY), ("b", NonNegExt::INFINITY)]),
            Err(EvalError::Indeterminate("inf - inf"))
        );
        assert_eq!(
            parse("y").unwrap().eval(&[]),
            Err(EvalError::UnboundVariable("y".into()))
        );
        assert_eq!(
            parse("1 / x").unwrap().eval(&[("x", nn(0.0))]),
            Err(EvalError::DivisionByZero)
        );
        assert!(matches!(
            parse("sqrt(x - 1)").unwrap().eval(&[("x", nn(0.0))]),
            Err(EvalError::Domain { func: "sqrt", .. })
        ));
        assert_eq!(
            parse("piecewise{[0,1]: a}")
                .unwrap()
                .eval(&[("a", nn(0.5)), ("b", nn(0.5))]),
            Err(EvalError::AmbiguousGuard)
        );
    }

    #[test]
    fn monotone_examples() {
        let unit = Interval::closed(0.0, 1.0);
        let sq = parse("x^2").unwrap();
        assert!(check_monotone(&sq, "x", &unit, Direction::Increasing, 0.01)
            .unwrap()
            .holds());
        let lin = parse("0.5 * (x + 1)").unwrap();
        assert!(
            check_monotone(&lin, "x", &unit, Direction::Increasing, 0.01)
                .unwrap()
                .holds()
        );
        let hump = parse("-2*x^2 + 2*x").unwrap();
        match check_monotone(&hump, "x", &unit, Direction::Increasing, 0.01).unwrap() {
            MonotoneVerdict::Violation { x1, x2, .. } => {
                assert_eq!(x1, 0.5);
                assert_eq!(x2, 0.51);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }
}
