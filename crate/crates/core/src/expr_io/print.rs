use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{Form, Monomial};
use crate::scalar::{format_rational, Param, ParamExps, Scalar};

/// Token sets for one output syntax.
struct Style {
    param_sep: &'static str,
    to_generators: &'static str,
    wedge: &'static str,
    open: &'static str,
    close: &'static str,
    param: fn(Param) -> &'static str,
    generator: [&'static str; 4],
    power: fn(u32) -> String,
    rational: fn(&BigRational) -> String,
}

const TEXT: Style = Style {
    param_sep: "*",
    to_generators: "*",
    wedge: "/\\",
    open: "(",
    close: ")",
    param: Param::name,
    generator: ["eta1", "eta2", "Phi1", "Phi2"],
    power: |k| format!("^{k}"),
    rational: format_rational,
};

const LATEX: Style = Style {
    param_sep: "",
    to_generators: "\\,",
    wedge: "\\wedge",
    open: "\\left(",
    close: "\\right)",
    param: Param::latex,
    generator: ["\\eta_1", "\\eta_2", "\\Phi_1", "\\Phi_2"],
    power: |k| {
        if k < 10 {
            format!("^{k}")
        } else {
            format!("^{{{k}}}")
        }
    },
    rational: |r| {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
        }
    },
};

impl Style {
    fn with_power(&self, base: &str, k: u32) -> String {
        if k == 1 {
            base.to_string()
        } else {
            format!("{base}{}", (self.power)(k))
        }
    }

    fn params(&self, e: &ParamExps) -> Vec<String> {
        Param::ALL
            .into_iter()
            .filter(|p| e.get(*p) > 0)
            .map(|p| self.with_power((self.param)(p), e.get(p)))
            .collect()
    }

    fn generators(&self, m: &Monomial) -> Option<String> {
        let mut parts = Vec::new();
        if m.eta1 {
            parts.push(self.generator[0].to_string());
        }
        if m.eta2 {
            parts.push(self.generator[1].to_string());
        }
        if m.phi1 > 0 {
            parts.push(self.with_power(self.generator[2], m.phi1));
        }
        if m.phi2 > 0 {
            parts.push(self.with_power(self.generator[3], m.phi2));
        }
        (!parts.is_empty()).then(|| parts.join(self.wedge))
    }

    /// One scalar monomial without its sign; empty when it is exactly 1.
    fn unsigned_scalar_term(&self, e: &ParamExps, c: &BigRational) -> String {
        let mut parts = Vec::new();
        let mag = c.abs();
        if !mag.is_one() {
            parts.push((self.rational)(&mag));
        }
        parts.extend(self.params(e));
        parts.join(self.param_sep)
    }

    /// Polynomial body; the leading sign is kept.
    fn polynomial(&self, s: &Scalar) -> String {
        let mut out = String::new();
        for (i, (e, c)) in s.display_terms().into_iter().enumerate() {
            let body = self.unsigned_scalar_term(e, c);
            let body = if body.is_empty() {
                "1".to_string()
            } else {
                body
            };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Returns (negative, body) for one form term.
    fn term(&self, m: &Monomial, s: &Scalar) -> (bool, String) {
        let gens = self.generators(m);
        let (negative, coeff) = if s.len() == 1 {
            let (e, c) = s.terms().next().expect("one term");
            (c.is_negative(), self.unsigned_scalar_term(e, c))
        } else {
            (
                false,
                format!("{}{}{}", self.open, self.polynomial(s), self.close),
            )
        };
        let body = match (coeff.is_empty(), gens) {
            (true, None) => "1".to_string(),
            (true, Some(g)) => g,
            (false, None) => coeff,
            (false, Some(g)) => format!("{coeff}{}{g}", self.to_generators),
        };
        (negative, body)
    }

    fn form(&self, f: &Form) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, s)) in f.terms().enumerate() {
            let (negative, body) = self.term(m, s);
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// Prints `f` in the text grammar accepted by [`super::parse`].
pub fn print_text(f: &Form) -> String {
    TEXT.form(f)
}

/// Prints `f` as a LaTeX math-mode fragment.
pub fn print_latex(f: &Form) -> String {
    LATEX.form(f)
}

/// Text rendering of a lone coefficient polynomial.
pub fn print_scalar(s: &Scalar) -> String {
    if s.is_zero() {
        "0".to_string()
    } else {
        TEXT.polynomial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr_io::parse;

    #[test]
    fn text_layout() {
        let f = parse("2*b1*a2*Phi2/\\Phi1 - 3/2*eta1 + (b1^2 - b2^2)*eta1/\\eta2 - 1").unwrap();
        assert_eq!(
            print_text(&f),
            "-1 - 3/2*eta1 + (b1^2 - b2^2)*eta1/\\eta2 + 2*b1*a2*Phi1/\\Phi2"
        );
        assert_eq!(print_text(&Form::zero()), "0");
    }

    #[test]
    fn latex_layout() {
        let f = parse("-4*b2^2*eta1/\\eta2/\\Phi2").unwrap();
        assert_eq!(
            print_latex(&f),
            "-4\\beta_2^2\\,\\eta_1\\wedge\\eta_2\\wedge\\Phi_2"
        );
        let g = parse("1/2*Phi1^12 + eta2").unwrap();
        assert_eq!(print_latex(&g), "\\eta_2 + \\frac{1}{2}\\,\\Phi_1^{12}");
    }
}
