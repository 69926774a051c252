//! A small piecewise-expression language for shape functions, custom fusion
//! operations and survival functions.
//!
//! # Grammar
//!
//! ```text
//! expr      := additive
//! additive  := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*
//! unary     := "-" unary | power
//! power     := primary ("^" unary)?
//! primary   := number | "inf" | ident | call | "(" expr ")"
//!            | indicator | piecewise
//! call      := ("sqrt" | "abs" | "pos") "(" expr ")"
//!            | ("min" | "max") "(" expr ("," expr)+ ")"
//! indicator := "ind" interval "(" expr ")"
//! piecewise := "piecewise" ("(" ident ")")? "{" arm (";" arm)* ";"? "}"
//! arm       := interval ":" expr
//! interval  := ("[" | "(") bound "," bound ("]" | ")")
//! bound     := "-"? number | "inf"
//! ```
//!
//! `pos(e)` is the positive part `max(e, 0)`. `ind[a,b](e)` is 1 when `e`
//! lies in the interval and 0 otherwise. A piecewise block guards on the named
//! variable, or on the only bound variable when no name is given; evaluating it
//! at a point outside every arm is a domain error.
//!
//! Numbers are binary64. Multiplication uses `0·∞ = 0`; `∞ − ∞`, `∞/∞` and
//! division by zero are errors.

mod eval;
mod parse;
mod print;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use eval::{check_monotone, Direction, MonotoneVerdict};
pub use parse::{parse, parse_with_vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sqrt,
    Abs,
    Min,
    Max,
    /// Positive part.
    Pos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Min => "min",
            Func::Max => "max",
            Func::Pos => "pos",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "min" => Func::Min,
            "max" => Func::Max,
            "pos" => Func::Pos,
            _ => return None,
        })
    }
}

/// Real interval with independently open or closed ends. `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn left_open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed))
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        !self.intersect(other).is_empty()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            print::fmt_number(self.lo),
            print::fmt_number(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise {
    /// Guard variable; `None` means "the single bound variable".
    pub var: Option<String>,
    pub arms: Vec<(Interval, Expr)>,
}

impl Piecewise {
    /// A point of `domain` that no arm covers, if any.
    pub fn uncovered_point(&self, domain: &Interval) -> Option<f64> {
        let mut marks: Vec<f64> = vec![domain.lo, domain.hi];
        for (iv, _) in &self.arms {
            marks.push(iv.lo);
            marks.push(iv.hi);
        }
        marks.retain(|x| x.is_finite() || *x == f64::INFINITY);
        marks.sort_by(|a, b| a.total_cmp(b));
        marks.dedup();
        let mut probes = Vec::with_capacity(marks.len() * 2 + 1);
        for (i, &x) in marks.iter().enumerate() {
            if x.is_finite() {
                probes.push(x);
            }
            if let Some(&next) = marks.get(i + 1) {
                if next.is_finite() {
                    probes.push(0.5 * (x + next));
                } else if x.is_finite() {
                    probes.push(x + 1.0);
                }
            }
        }
        probes
            .into_iter()
            .filter(|x| domain.contains(*x))
            .find(|x| !self.arms.iter().any(|(iv, _)| iv.contains(*x)))
    }
}

/// Expression AST. Literals produced by the parser are nonnegative; negation is
/// a separate node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    Indicator(Interval, Box<Expr>),
    Piecewise(Piecewise),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn bin(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    /// Free variables in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        let push = |name: &str, out: &mut Vec<String>| {
            if !out.iter().any(|v| v == name) {
                out.push(name.to_string());
            }
        };
        match self {
            Expr::Num(_) => {}
            Expr::Var(name) => push(name, out),
            Expr::Neg(e) | Expr::Indicator(_, e) => e.collect_vars(out),
            Expr::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Expr::Piecewise(pw) => {
                if let Some(v) = &pw.var {
                    push(v, out);
                }
                pw.arms.iter().for_each(|(_, e)| e.collect_vars(out));
            }
        }
    }

    /// Checks that every piecewise node guarding on `var` (or on an implicit
    /// variable) covers `domain`; returns the first uncovered point.
    pub fn uncovered_point(&self, var: &str, domain: &Interval) -> Option<f64> {
        match self {
            Expr::Num(_) | Expr::Var(_) => None,
            Expr::Neg(e) | Expr::Indicator(_, e) => e.uncovered_point(var, domain),
            Expr::Bin(_, l, r) => l
                .uncovered_point(var, domain)
                .or_else(|| r.uncovered_point(var, domain)),
            Expr::Call(_, args) => args.iter().find_map(|a| a.uncovered_point(var, domain)),
            Expr::Piecewise(pw) => {
                let guards_var = pw.var.as_deref().is_none_or(|v| v == var);
                let own = if guards_var {
                    pw.uncovered_point(domain)
                } else {
                    None
                };
                own.or_else(|| {
                    pw.arms
                        .iter()
                        .find_map(|(_, e)| e.uncovered_point(var, domain))
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("piecewise arms {0} and {1} overlap")]
    OverlappingIntervals(String, String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("negative result {0}")]
    Negative(f64),
    #[error("indeterminate form {0}")]
    Indeterminate(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{func} undefined at {arg}")]
    Domain { func: &'static str, arg: f64 },
    #[error("{value} lies outside every piecewise arm")]
    OutsidePiecewise { value: f64 },
    #[error("piecewise guard needs an explicit variable when several are bound")]
    AmbiguousGuard,
}
