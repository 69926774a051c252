use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exprlang::{parse, BinOp, EvalError, Expr, Func, ParseError};
use crate::grid;

/// Slack when deciding whether an argument lies in a shape's domain.
const DOMAIN_SLACK: f64 = 1e-12;
const INVERSE_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error("{shape} is undefined at {value} (domain [{lo}, {hi}])")]
    OutsideDomain {
        shape: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("{shape}: {source}")]
    Eval { shape: String, source: EvalError },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0} uses more than one variable")]
    TooManyVariables(String),
    #[error("cannot invert {0}: it is not increasing on its domain")]
    NotInvertible(String),
}

impl ShapeError {
    /// The offending argument of a domain failure.
    pub fn value(&self) -> Option<f64> {
        match self {
            ShapeError::OutsideDomain { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ShapeFlags {
    pub non_decreasing: bool,
    pub increasing: bool,
    pub left_continuous: bool,
    pub right_continuous: bool,
}

impl ShapeFlags {
    /// Increasing and continuous.
    pub const CONTINUOUS_INCREASING: ShapeFlags = ShapeFlags {
        non_decreasing: true,
        increasing: true,
        left_continuous: true,
        right_continuous: true,
    };
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Identity,
    Power(f64),
    Expr {
        expr: Expr,
        var: String,
    },
    /// Numeric inverse of an increasing shape, by bisection.
    Inverse(Box<ShapeFunction>),
}

/// A unary function `[lo, hi] → [0, ∞]` used as `φᵢ` or `ψᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeFunction {
    name: String,
    body: Body,
    lo: f64,
    hi: f64,
    flags: ShapeFlags,
}

impl fmt::Display for ShapeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl ShapeFunction {
    /// `x ↦ x` on `[0, hi]`.
    pub fn identity(hi: f64) -> ShapeFunction {
        ShapeFunction {
            name: "x".into(),
            body: Body::Identity,
            lo: 0.0,
            hi,
            flags: ShapeFlags::CONTINUOUS_INCREASING,
        }
    }

    /// `x ↦ x^p` on `[0, hi]`, `p > 0`.
    pub fn power(p: f64, hi: f64) -> ShapeFunction {
        ShapeFunction {
            name: if p == 0.5 {
                "sqrt(x)".into()
            } else {
                format!("x ^ {p}")
            },
            body: Body::Power(p),
            lo: 0.0,
            hi,
            flags: ShapeFlags::CONTINUOUS_INCREASING,
        }
    }

    /// Expression in (at most) one variable on `[lo, hi]` with declared flags.
    /// Plain powers of the variable are recognised and evaluated directly.
    pub fn from_expr(
        expr: Expr,
        lo: f64,
        hi: f64,
        flags: ShapeFlags,
    ) -> Result<ShapeFunction, ShapeError> {
        let name = expr.to_string();
        let vars = expr.variables();
        if vars.len() > 1 {
            return Err(ShapeError::TooManyVariables(name));
        }
        let var = vars.into_iter().next().unwrap_or_else(|| "x".to_string());
        let body = match &expr {
            Expr::Var(_) => Body::Identity,
            Expr::Bin(BinOp::Pow, base, exp) => match (base.as_ref(), exp.as_ref()) {
                (Expr::Var(_), Expr::Num(p)) if *p > 0.0 => Body::Power(*p),
                _ => Body::Expr { expr, var },
            },
            Expr::Call(Func::Sqrt, args) if matches!(args[0], Expr::Var(_)) => Body::Power(0.5),
            _ => Body::Expr { expr, var },
        };
        Ok(ShapeFunction {
            name,
            body,
            lo,
            hi,
            flags,
        })
    }

    pub fn parse(
        src: &str,
        lo: f64,
        hi: f64,
        flags: ShapeFlags,
    ) -> Result<ShapeFunction, ShapeError> {
        ShapeFunction::from_expr(parse(src)?, lo, hi, flags)
    }

    /// Inverse of an increasing shape, defined on `[φ(lo), φ(hi)]`. An
    /// explicit inverse expression is used when given.
    pub fn inverse_of(
        phi: &ShapeFunction,
        explicit: Option<Expr>,
    ) -> Result<ShapeFunction, ShapeError> {
        let (lo, hi) = (phi.eval(phi.lo)?, phi.eval(phi.hi)?);
        if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(ShapeError::NotInvertible(phi.name.clone()));
        }
        let name = format!("inverse of {}", phi.name);
        let flags = ShapeFlags::CONTINUOUS_INCREASING;
        let body = match (explicit, &phi.body) {
            (Some(expr), _) => {
                let var = expr
                    .variables()
                    .into_iter()
                    .next()
                    .unwrap_or_else(|| "x".to_string());
                Body::Expr { expr, var }
            }
            (None, Body::Identity) => Body::Identity,
            (None, Body::Power(p)) => Body::Power(1.0 / p),
            (None, _) => Body::Inverse(Box::new(phi.clone())),
        };
        Ok(ShapeFunction {
            name,
            body,
            lo,
            hi,
            flags,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn flags(&self) -> &ShapeFlags {
        &self.flags
    }

    /// Restricts or widens the declared domain.
    pub fn with_domain(mut self, lo: f64, hi: f64) -> ShapeFunction {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> ShapeFunction {
        self.name = name.into();
        self
    }

    pub fn is_identity(&self) -> bool {
        self.body == Body::Identity
    }

    /// Evaluates at `x`; arguments outside the declared domain are an error,
    /// never clamped beyond rounding slack.
    #[inline]
    pub fn eval(&self, x: f64) -> Result<f64, ShapeError> {
        let slack = DOMAIN_SLACK * self.hi.abs().max(1.0);
        if x.is_nan() || x < self.lo - slack || x > self.hi + slack {
            return Err(ShapeError::OutsideDomain {
                shape: self.name.clone(),
                value: x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let x = x.clamp(self.lo, self.hi);
        match &self.body {
            Body::Identity => Ok(x),
            Body::Power(p) => Ok(x.powf(*p)),
            Body::Expr { expr, var } => {
                expr.eval_f64(&[(var.as_str(), x)])
                    .map_err(|source| ShapeError::Eval {
                        shape: self.name.clone(),
                        source,
                    })
            }
            Body::Inverse(phi) => {
                let (mut l, mut r) = (phi.lo, phi.hi);
                for _ in 0..INVERSE_ITER {
                    let mid = 0.5 * (l + r);
                    if mid <= l || mid >= r {
                        break;
                    }
                    if phi.eval(mid)? < x {
                        l = mid;
                    } else {
                        r = mid;
                    }
                }
                Ok(r)
            }
        }
    }

    /// Grid check of the declared monotonicity; returns a violating pair.
    pub fn monotonicity_violation(&self, step: f64) -> Result<Option<(f64, f64)>, ShapeError> {
        if !(self.flags.non_decreasing || self.flags.increasing) {
            return Ok(None);
        }
        let hi = if self.hi.is_finite() {
            self.hi
        } else {
            grid::DEFAULT_INF_CAP
        };
        let pts = grid::uniform(self.lo, hi, step);
        let mut prev: Option<(f64, f64)> = None;
        for x in pts {
            let y = self.eval(x)?;
            if let Some((px, py)) = prev {
                let bad = if self.flags.increasing {
                    y <= py
                } else {
                    y < py - 1e-12
                };
                if bad {
                    return Ok(Some((px, x)));
                }
            }
            prev = Some((x, y));
        }
        Ok(None)
    }
}
