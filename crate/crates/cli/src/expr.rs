//! Expressions over named variables: integers, `+ - * / ^`, unary minus and
//! parentheses. `^` binds tightest and takes an integer exponent, which may be
//! negative.

use std::fmt;

use num_bigint::BigInt;
use uniformizer_core::polyfield::{BaseField, RationalFunction};

/// Position is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("decimal digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l0,
                column: c0,
                message: format!("unexpected character '{c}'"),
            });
        };
        column += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

pub(crate) struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    names: &'a [String],
    base: BaseField,
}

impl<'a> Parser<'a> {
    pub fn new(tokens: &'a [Token], names: &'a [String], base: BaseField) -> Self {
        Parser {
            tokens,
            pos: 0,
            names,
            base,
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn describe(t: &Token) -> String {
        match &t.tok {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        match t.tok {
            Tok::End => Ok(()),
            _ => Err(Self::error_at(
                t,
                format!("unexpected {}", Self::describe(t)),
            )),
        }
    }

    pub fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    let op = self.next().clone();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| Self::error_at(&op, "division by zero polynomial"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let op = self.next().clone();
        let negative = if self.peek().tok == Tok::Sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next().clone();
        let Tok::Int(n) = &t.tok else {
            return Err(Self::error_at(
                &t,
                format!("expected an integer exponent, found {}", Self::describe(&t)),
            ));
        };
        let e: i64 = i64::try_from(n)
            .ok()
            .filter(|e| *e <= u32::MAX as i64)
            .ok_or_else(|| Self::error_at(&t, "exponent too large"))?;
        let e = if negative { -e } else { e };
        if self.peek().tok == Tok::Sym('^') {
            return Err(Self::error_at(
                self.peek(),
                "chained '^' is ambiguous; use parentheses",
            ));
        }
        base.pow(e)
            .map_err(|_| Self::error_at(&op, "division by zero polynomial"))
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        let nv = self.names.len();
        let t = self.next().clone();
        match &t.tok {
            Tok::Int(n) => Ok(RationalFunction::constant(
                self.base,
                nv,
                self.base.from_bigint(n),
            )),
            Tok::Ident(s) => match self.names.iter().position(|x| x == s) {
                Some(i) => Ok(RationalFunction::var(self.base, nv, i)),
                None => Err(Self::error_at(&t, format!("unknown variable '{s}'"))),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                let close = self.next().clone();
                if close.tok != Tok::Sym(')') {
                    return Err(Self::error_at(
                        &close,
                        format!("expected ')', found {}", Self::describe(&close)),
                    ));
                }
                Ok(inner)
            }
            _ => Err(Self::error_at(
                &t,
                format!("unexpected {}", Self::describe(&t)),
            )),
        }
    }
}

/// Parse `src` as an element of `K(names)`.
pub fn parse_expression(
    src: &str,
    names: &[String],
    base: BaseField,
) -> Result<RationalFunction, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser::new(&tokens, names, base);
    let r = p.expr()?;
    p.expect_end()?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use uniformizer_core::polyfield::render_ratfun;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fraction_normalizes() {
        let n = names(&["x1", "x2"]);
        let r = parse_expression("(x1^2 + x2)/x2", &n, BaseField::Rationals).unwrap();
        assert_eq!(render_ratfun(&r, &n), "(x1^2 + x2)/x2");
        let r = parse_expression("x1*x2/(x2*x1^-1)", &n, BaseField::Rationals).unwrap();
        assert_eq!(render_ratfun(&r, &n), "x1^2");
    }

    #[test]
    fn zero_denominator_is_reported_at_the_operator() {
        let n = names(&["x1"]);
        let e = parse_expression("x1/(x1 - x1)", &n, BaseField::Rationals).unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(e.message.contains("division by zero"));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let n = names(&["x"]);
        let a = parse_expression("-x^2", &n, BaseField::Rationals).unwrap();
        let b = parse_expression("-(x^2)", &n, BaseField::Rationals).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let n = names(&["x1", "y1"]);
        let e = parse_expression("x1 +\n  y2", &n, BaseField::Rationals).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable 'y2'"));
        let e = parse_expression("x1 + ", &n, BaseField::Rationals).unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_expression("x1 $ y1", &n, BaseField::Rationals).unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
    }

    #[test]
    fn integers_reduce_modulo_p() {
        let n = names(&["t"]);
        let r = parse_expression("7*t + 5", &n, BaseField::Prime(5)).unwrap();
        assert_eq!(render_ratfun(&r, &n), "2*t");
        assert!(parse_expression("t/5", &n, BaseField::Prime(5)).is_err());
    }
}
