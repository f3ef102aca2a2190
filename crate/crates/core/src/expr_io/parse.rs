use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{wedge_free, Form};
use crate::scalar::{Param, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at {line}:{column}")]
    UnknownIdentifier {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("negative exponent at {line}:{column}")]
    NegativeExponent { line: usize, column: usize },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownIdentifier { line, column, .. }
            | ParseError::NegativeExponent { line, column } => (*line, *column),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Wedge,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Wedge => "`/\\`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            })
        };
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
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            push(&mut out, Tok::Int(digits.parse().expect("ascii digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        let (tok, width) = match c {
            '+' => (Tok::Plus, 1),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '^' => (Tok::Caret, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '/' if chars.get(i + 1) == Some(&'\\') => (Tok::Wedge, 2),
            '/' => (Tok::Slash, 1),
            other => {
                return Err(ParseError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        push(&mut out, tok);
        i += width;
        column += width;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    // form := ['+'|'-'] term (('+'|'-') term)*
    fn form(&mut self) -> Result<Form, ParseError> {
        let mut negative = match self.peek() {
            Tok::Plus => {
                self.next();
                false
            }
            Tok::Minus => {
                self.next();
                true
            }
            _ => false,
        };
        let mut acc = Form::zero();
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.next();
        }
    }

    // term := atom (('*'|'/\') atom)*
    fn term(&mut self) -> Result<Form, ParseError> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Tok::Star | Tok::Wedge) {
            self.next();
            acc = wedge_free(&acc, &self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Form, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Minus if matches!(self.peek(), Tok::Int(_)) => {
                Ok(Form::scalar(Scalar::constant(-self.rational()?)))
            }
            Tok::Int(_) => {
                self.pos -= 1;
                Ok(Form::scalar(Scalar::constant(self.rational()?)))
            }
            Tok::Ident(name) => {
                let base = if let Some(p) = Param::from_name(&name) {
                    Form::param(p)
                } else {
                    match name.as_str() {
                        "eta1" => Form::eta1(),
                        "eta2" => Form::eta2(),
                        "Phi1" => Form::phi1(),
                        "Phi2" => Form::phi2(),
                        _ => {
                            return Err(ParseError::UnknownIdentifier {
                                line: t.line,
                                column: t.column,
                                name,
                            })
                        }
                    }
                };
                let k = self.exponent()?;
                Ok((0..k).fold(Form::one(), |acc, _| wedge_free(&acc, &base)))
            }
            Tok::LParen => {
                let inner = self.form()?;
                if self.peek() != &Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.next();
                Ok(inner)
            }
            _ => {
                self.pos -= usize::from(t.tok != Tok::End);
                Err(self.unexpected("a number, parameter, generator or `(`"))
            }
        }
    }

    // p or p/q, sign handled by the caller
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let Tok::Int(p) = self.next().tok else {
            unreachable!("caller checked for an integer")
        };
        if self.peek() != &Tok::Slash {
            return Ok(BigRational::from_integer(p));
        }
        self.next();
        match self.peek().clone() {
            Tok::Int(q) if !q.is_zero() => {
                self.next();
                Ok(BigRational::new(p, q))
            }
            Tok::Int(_) => Err(self.error_here("zero denominator")),
            _ => Err(self.unexpected("a denominator")),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() != &Tok::Caret {
            return Ok(1);
        }
        self.next();
        let at = &self.toks[self.pos];
        let (line, column) = (at.line, at.column);
        match self.peek().clone() {
            Tok::Minus => Err(ParseError::NegativeExponent { line, column }),
            Tok::Int(n) => {
                self.next();
                u32::try_from(n).map_err(|_| ParseError::Syntax {
                    line,
                    column,
                    message: "exponent too large".into(),
                })
            }
            _ => Err(self.unexpected("an exponent")),
        }
    }
}

/// Parses the text grammar into a canonical form. No truncation or ring
/// reduction is applied.
pub fn parse(text: &str) -> Result<Form, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = p.form()?;
    if p.peek() != &Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    #[test]
    fn positions_are_reported() {
        let err = parse("Phi1 +\n  Phi3").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownIdentifier {
                line: 2,
                column: 3,
                name: "Phi3".into()
            }
        );
        assert_eq!(parse("eta1^-1").unwrap_err().position(), (1, 6));
    }

    #[test]
    fn rationals_and_signs() {
        let f = parse("-3/6*a1 + a1*-1/2").unwrap();
        assert_eq!(f, Form::param(Param::A1).scale_int(-1));
        assert!(parse("1/0").is_err());
        assert!(parse("2.5").is_err());
    }

    #[test]
    fn odd_generators_anticommute() {
        assert_eq!(
            parse("eta2/\\eta1").unwrap(),
            -&parse("eta1/\\eta2").unwrap()
        );
        assert!(parse("eta1/\\eta1").unwrap().is_zero());
        assert_eq!(
            parse("Phi2^2*Phi1").unwrap(),
            Form::monomial(Monomial::new(false, false, 1, 2))
        );
    }
}
