//! Series literals `t^k*(c0 + c1*t + ...) + O(t^N)`. The `O(t^N)` marker is
//! mandatory; the part before it must be a Laurent polynomial in `t` with
//! every exponent below `N`.

use num_traits::Zero;
use uniformizer_core::completion::TruncatedSeries;
use uniformizer_core::polyfield::{BaseField, Coeff};

use crate::expr::{tokenize, ParseError, Parser, Tok, Token};

fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
    ParseError {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

/// Index of the `O` token of a trailing `O(var^N)` and the value `N`.
fn precision_marker(tokens: &[Token], var: &str) -> Result<(usize, i64), ParseError> {
    let end = tokens.len() - 1;
    let start = tokens
        .iter()
        .rposition(|t| t.tok == Tok::Ident("O".into()))
        .ok_or_else(|| error_at(&tokens[end], format!("missing precision marker O({var}^N)")))?;
    let rest: Vec<&Tok> = tokens[start + 1..end].iter().map(|t| &t.tok).collect();
    let bad = || {
        error_at(
            &tokens[start],
            format!("precision marker must read O({var}^N)"),
        )
    };
    let n = match rest.as_slice() {
        [Tok::Sym('('), Tok::Ident(v), Tok::Sym(')')] if v == var => 1,
        [Tok::Sym('('), Tok::Ident(v), Tok::Sym('^'), Tok::Int(n), Tok::Sym(')')] if v == var => {
            i64::try_from(n).map_err(|_| bad())?
        }
        [Tok::Sym('('), Tok::Ident(v), Tok::Sym('^'), Tok::Sym('-'), Tok::Int(n), Tok::Sym(')')]
            if v == var =>
        {
            -i64::try_from(n).map_err(|_| bad())?
        }
        _ => return Err(bad()),
    };
    Ok((start, n))
}

pub fn parse_series(src: &str, var: &str, base: BaseField) -> Result<TruncatedSeries, ParseError> {
    let mut tokens = tokenize(src)?;
    let (start, n) = precision_marker(&tokens, var)?;
    if start == 0 {
        return Ok(TruncatedSeries::zero(base, n));
    }
    let plus = tokens[start - 1].clone();
    if plus.tok != Tok::Sym('+') || start == 1 {
        return Err(error_at(
            &tokens[start],
            "expected '+' before the precision marker",
        ));
    }
    let end = tokens[tokens.len() - 1].clone();
    tokens.truncate(start - 1);
    tokens.push(Token {
        tok: Tok::End,
        ..plus
    });
    let names = [var.to_string()];
    let mut p = Parser::new(&tokens, &names, base);
    let body = p.expr()?;
    p.expect_end()?;

    let not_laurent = || {
        error_at(
            &tokens[0],
            format!("series body must be a Laurent polynomial in {var}"),
        )
    };
    let den = body.denom();
    if den.num_terms() != 1 {
        return Err(not_laurent());
    }
    let (dm, dc) = den.leading_term().expect("nonzero denominator");
    let shift = dm.0[0] as i64;
    let inv = base.inv(dc).expect("nonzero coefficient");
    let mut terms: Vec<(i64, Coeff)> = Vec::new();
    for (m, c) in body.numer().terms() {
        let e = m.0[0] as i64 - shift;
        if e >= n {
            return Err(error_at(
                &end,
                format!("term {var}^{e} is at or above the precision O({var}^{n})"),
            ));
        }
        let c = base.mul(c, &inv);
        if !c.is_zero() {
            terms.push((e, c));
        }
    }
    Ok(TruncatedSeries::from_terms(base, &terms, n))
}
