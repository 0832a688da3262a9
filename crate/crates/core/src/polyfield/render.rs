use num_traits::{One, Signed};

use super::field::{render_rational, BaseField, Coeff};
use super::poly::{Monomial, SparsePoly};
use super::ratfun::RationalFunction;

fn render_monomial(m: &Monomial, names: &[impl AsRef<str>]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].as_ref().to_string()),
            _ => parts.push(format!("{}^{}", names[i].as_ref(), e)),
        }
    }
    parts.join("*")
}

/// Canonical text form: terms in descending graded-lex order, `^` for powers,
/// explicit `*` between factors.
pub fn render_poly(p: &SparsePoly, names: &[impl AsRef<str>]) -> String {
    assert!(names.len() >= p.nvars(), "not enough variable names");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = matches!(p.base(), BaseField::Rationals) && c.is_negative();
        let abs: Coeff = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = render_monomial(m, names);
        if mono.is_empty() {
            out.push_str(&render_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_rational(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn is_atomic(p: &SparsePoly) -> bool {
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.leading_term().unwrap();
    let factors = m.0.iter().filter(|&&e| e > 0).count();
    if m.is_one() {
        c.denom().is_one() && !c.is_negative()
    } else {
        factors == 1 && c.is_one()
    }
}

pub fn render_ratfun(r: &RationalFunction, names: &[impl AsRef<str>]) -> String {
    let num = render_poly(r.numer(), names);
    if r.denom().is_one() {
        return num;
    }
    let num = if r.numer().num_terms() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = render_poly(r.denom(), names);
    let den = if is_atomic(r.denom()) {
        den
    } else {
        format!("({den})")
    };
    format!("{num}/{den}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_descending_grlex() {
        let q = BaseField::Rationals;
        let x = SparsePoly::var(q, 2, 0);
        let y = SparsePoly::var(q, 2, 1);
        let p = &(&(&x * &x).scale(&q.from_i64(3)) - &y) + &SparsePoly::from_i64(q, 2, 1);
        assert_eq!(render_poly(&p, &["x1", "x2"]), "3*x1^2 - x2 + 1");
        let r = RationalFunction::new(&(&x * &x) + &y, y.clone()).unwrap();
        assert_eq!(render_ratfun(&r, &["x1", "x2"]), "(x1^2 + x2)/x2");
        let s = RationalFunction::new(y.clone(), &x * &y.pow(2)).unwrap();
        assert_eq!(render_ratfun(&s, &["x1", "x2"]), "1/(x1*x2)");
    }

    #[test]
    fn prime_field_coefficients_are_residues() {
        let f = BaseField::Prime(5);
        let x = SparsePoly::var(f, 1, 0);
        let p = -&x;
        assert_eq!(render_poly(&p, &["t"]), "4*t");
    }
}
