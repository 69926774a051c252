use std::fmt;

use super::{BinOp, Expr};

const ADDITIVE: u8 = 1;
const TERM: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const PRIMARY: u8 = 5;

pub(super) fn fmt_number(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v}")
    }
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => ADDITIVE,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => TERM,
        Expr::Neg(_) => UNARY,
        Expr::Num(v) if *v < 0.0 => UNARY,
        Expr::Bin(BinOp::Pow, ..) => POWER,
        _ => PRIMARY,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical form: minimal parentheses, single spaces around binary operators.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => f.write_str(&fmt_number(*v)),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_at(f, e, UNARY)
            }
            Expr::Bin(op, l, r) => {
                let (sym, lmin, rmin) = match op {
                    BinOp::Add => ("+", ADDITIVE, TERM),
                    BinOp::Sub => ("-", ADDITIVE, TERM),
                    BinOp::Mul => ("*", TERM, UNARY),
                    BinOp::Div => ("/", TERM, UNARY),
                    BinOp::Pow => ("^", PRIMARY, UNARY),
                };
                write_at(f, l, lmin)?;
                write!(f, " {sym} ")?;
                write_at(f, r, rmin)
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Indicator(iv, e) => write!(f, "ind{iv}({e})"),
            Expr::Piecewise(pw) => {
                f.write_str("piecewise")?;
                if let Some(v) = &pw.var {
                    write!(f, "({v})")?;
                }
                f.write_str("{ ")?;
                for (i, (iv, e)) in pw.arms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{iv}: {e}")?;
                }
                f.write_str(" }")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;

    #[test]
    fn canonical_forms() {
        let cases = [
            ("max(a+b-1,0)", "max(a + b - 1, 0)"),
            ("(x+1)*0.5", "(x + 1) * 0.5"),
            ("a-(b-c)", "a - (b - c)"),
            ("(a^b)^c", "(a ^ b) ^ c"),
            ("a^b^c", "a ^ b ^ c"),
            ("(-a)^2", "(-a) ^ 2"),
            (
                "piecewise(t){[0,0.25]:1-t;(0.25,0.5]:1-2*t}",
                "piecewise(t){ [0, 0.25]: 1 - t; (0.25, 0.5]: 1 - 2 * t }",
            ),
            ("ind[0, inf)(x)", "ind[0, inf)(x)"),
        ];
        for (src, want) in cases {
            let e = parse(src).unwrap();
            assert_eq!(e.to_string(), want, "printing {src}");
            assert_eq!(parse(want).unwrap(), e, "reparsing {want}");
        }
    }
}
