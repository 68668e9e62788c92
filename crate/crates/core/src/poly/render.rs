//! Canonical text, LaTeX and JSON renderings.
//!
//! Text uses `x3`, `x`, `a` as variable tokens, `^` for powers, explicit `*`
//! and `p/q` rationals, e.g. `2*x^2 - 2*x*a + 1/2*a^2 - 1/2*a`.

use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use super::{Monomial, Polynomial, Variable};
use crate::arith::Rational;

fn monomial_text(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn to_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&monomial_text(m));
        } else {
            out.push_str(&format!("{abs}*{}", monomial_text(m)));
        }
    }
    out
}

fn latex_var(v: Variable) -> String {
    match v {
        Variable::Indexed(i) => format!("x_{{{i}}}"),
        Variable::X => "x".to_string(),
        Variable::A => "a".to_string(),
    }
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn to_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let mono: String = m
            .factors()
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    latex_var(v)
                } else {
                    format!("{}^{{{e}}}", latex_var(v))
                }
            })
            .collect();
        if m.is_one() {
            out.push_str(&latex_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}\\,{mono}", latex_rational(&abs)));
        }
    }
    out
}

/// `[{"coeff": "p/q", "monomial": {"x0": 1, ...}}, ...]` in canonical order.
pub fn to_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mono: Map<String, Value> = m
                    .factors()
                    .iter()
                    .map(|&(v, e)| (v.to_string(), json!(e)))
                    .collect();
                json!({ "coeff": c.to_string(), "monomial": mono })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn text_rendering() {
        assert_eq!(to_text(&Polynomial::zero()), "0");
        let p = Polynomial::x(1).pow(2) - (&Polynomial::x(2) * &Polynomial::x(0)).scale(&rat(2, 1));
        assert_eq!(to_text(&p), "x1^2 - 2*x0*x2");
        let q = Polynomial::var(Variable::A).scale(&rat(-1, 2)) + Polynomial::constant(rat(3, 4));
        assert_eq!(to_text(&q), "-1/2*a + 3/4");
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(to_latex(&Polynomial::zero()), "0");
        let p = Polynomial::x(1).pow(2) - (&Polynomial::x(2) * &Polynomial::x(0)).scale(&rat(2, 1));
        assert_eq!(to_latex(&p), "x_{1}^{2} - 2\\,x_{0}x_{2}");
        let q = Polynomial::var(Variable::A).pow(2).scale(&rat(1, 2)) - Polynomial::one();
        assert_eq!(to_latex(&q), "\\frac{1}{2}\\,a^{2} - 1");
    }

    #[test]
    fn json_rendering() {
        let p = Polynomial::x(1).pow(2).scale(&rat(-3, 2)) + Polynomial::var(Variable::X);
        let v = to_json(&p);
        assert_eq!(
            v,
            json!([
                {"coeff": "-3/2", "monomial": {"x1": 2}},
                {"coeff": "1", "monomial": {"x": 1}}
            ])
        );
    }
}
