use super::{BinOp, Expr, Func, Interval, ParseError, ParseErrorKind, Piecewise};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse::<f64>().map_err(|_| ParseError {
                line: start_line,
                column: start_col,
                kind: ParseErrorKind::Syntax(format!("malformed number `{text}`")),
            })?;
            col += i - start;
            out.push(Token {
                tok: Tok::Num(value),
                line: start_line,
                column: start_col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(text),
                line: start_line,
                column: start_col,
            });
        } else if "+-*/^(),;:[]{}".contains(c) {
            i += 1;
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: start_line,
                column: start_col,
            });
        } else {
            return Err(ParseError {
                line: start_line,
                column: start_col,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    allowed: Option<&'a [&'a str]>,
}

/// Parses an expression; any identifier that is not a builtin function is a
/// variable.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    Parser::run(src, None)
}

/// Parses an expression and rejects variables not listed in `vars`.
pub fn parse_with_vars(src: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    Parser::run(src, Some(vars))
}

impl<'a> Parser<'a> {
    fn run(src: &str, allowed: Option<&'a [&'a str]>) -> Result<Expr, ParseError> {
        let mut p = Parser {
            toks: lex(src)?,
            pos: 0,
            allowed,
        };
        let e = p.expr()?;
        match p.peek() {
            Tok::Eof => Ok(e),
            other => Err(p.error(format!("unexpected {} after expression", describe(other)))),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: String) -> ParseError {
        self.error_kind(ParseErrorKind::Syntax(msg))
    }

    fn error_kind(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::bin(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next();
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            Ok(Expr::bin(BinOp::Pow, base, self.unary()?))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        match self.next() {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "inf" => Ok(Expr::Num(f64::INFINITY)),
                "ind" => {
                    let iv = self.interval()?;
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Indicator(iv, Box::new(e)))
                }
                "piecewise" => self.piecewise(),
                _ => {
                    if let Some(func) = Func::from_name(&name) {
                        return self.call(func);
                    }
                    if *self.peek() == Tok::Sym('(') {
                        self.pos = start;
                        return Err(self.error_kind(ParseErrorKind::UnknownIdentifier(name)));
                    }
                    if let Some(allowed) = self.allowed {
                        if !allowed.contains(&name.as_str()) {
                            self.pos = start;
                            return Err(self.error_kind(ParseErrorKind::UnknownIdentifier(name)));
                        }
                    }
                    Ok(Expr::Var(name))
                }
            },
            other => {
                self.pos = start;
                Err(self.error(format!("expected an operand, found {}", describe(&other))))
            }
        }
    }

    fn call(&mut self, func: Func) -> Result<Expr, ParseError> {
        self.expect('(')?;
        let mut args = vec![self.expr()?];
        while self.eat(',') {
            args.push(self.expr()?);
        }
        self.expect(')')?;
        let ok = match func {
            Func::Min | Func::Max => args.len() >= 2,
            _ => args.len() == 1,
        };
        if !ok {
            return Err(self.error(format!(
                "`{}` does not take {} argument(s)",
                func.name(),
                args.len()
            )));
        }
        Ok(Expr::Call(func, args))
    }

    fn bound(&mut self) -> Result<f64, ParseError> {
        let negative = self.eat('-');
        let v = match self.next() {
            Tok::Num(v) => v,
            Tok::Ident(s) if s == "inf" => f64::INFINITY,
            other => {
                self.pos -= 1;
                return Err(self.error(format!(
                    "expected an interval bound, found {}",
                    describe(&other)
                )));
            }
        };
        Ok(if negative { -v } else { v })
    }

    fn interval(&mut self) -> Result<Interval, ParseError> {
        let lo_closed = match self.next() {
            Tok::Sym('[') => true,
            Tok::Sym('(') => false,
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected `[` or `(`, found {}", describe(&other))));
            }
        };
        let lo = self.bound()?;
        self.expect(',')?;
        let hi = self.bound()?;
        let hi_closed = match self.next() {
            Tok::Sym(']') => true,
            Tok::Sym(')') => false,
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected `]` or `)`, found {}", describe(&other))));
            }
        };
        let iv = Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        if iv.is_empty() {
            return Err(self.error(format!("empty interval {iv}")));
        }
        Ok(iv)
    }

    fn piecewise(&mut self) -> Result<Expr, ParseError> {
        let var = if self.eat('(') {
            let name = match self.next() {
                Tok::Ident(n) => n,
                other => {
                    self.pos -= 1;
                    return Err(
                        self.error(format!("expected a variable, found {}", describe(&other)))
                    );
                }
            };
            self.expect(')')?;
            Some(name)
        } else {
            None
        };
        self.expect('{')?;
        let mut arms: Vec<(Interval, Expr)> = Vec::new();
        loop {
            let arm_start = self.pos;
            let iv = self.interval()?;
            if let Some((other, _)) = arms.iter().find(|(o, _)| o.overlaps(&iv)) {
                self.pos = arm_start;
                return Err(self.error_kind(ParseErrorKind::OverlappingIntervals(
                    other.to_string(),
                    iv.to_string(),
                )));
            }
            self.expect(':')?;
            let body = self.expr()?;
            arms.push((iv, body));
            if self.eat(';') {
                if self.eat('}') {
                    break;
                }
            } else {
                self.expect('}')?;
                break;
            }
        }
        Ok(Expr::Piecewise(Piecewise { var, arms }))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}
