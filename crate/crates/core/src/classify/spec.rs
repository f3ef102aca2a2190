use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Form;
use crate::scalar::{format_rational, LinearImage, Param, Substitution};

/// Structure type of one factor, without parameter values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    AlphaSasakian,
    BetaKenmotsu,
    Cosymplectic,
    TransSasakian,
}

impl FactorKind {
    /// The three types a trans-Sasakian factor of dimension ≥ 5 reduces to.
    pub const PURE: [FactorKind; 3] = [
        FactorKind::AlphaSasakian,
        FactorKind::BetaKenmotsu,
        FactorKind::Cosymplectic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FactorKind::AlphaSasakian => "alpha-sasakian",
            FactorKind::BetaKenmotsu => "beta-kenmotsu",
            FactorKind::Cosymplectic => "cosymplectic",
            FactorKind::TransSasakian => "trans-sasakian",
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            FactorKind::AlphaSasakian => "Sas",
            FactorKind::BetaKenmotsu => "Ken",
            FactorKind::Cosymplectic => "cos",
            FactorKind::TransSasakian => "trans",
        }
    }

    /// (α, β) as a 0/1 presence pattern.
    pub fn printed_columns(self) -> (u8, u8) {
        match self {
            FactorKind::AlphaSasakian => (1, 0),
            FactorKind::BetaKenmotsu => (0, 1),
            FactorKind::Cosymplectic => (0, 0),
            FactorKind::TransSasakian => (1, 1),
        }
    }
}

/// The nine ordered pairs of pure types in the row order used by the
/// reference tables.
pub fn pure_pairs() -> [(FactorKind, FactorKind); 9] {
    use FactorKind::*;
    [
        (AlphaSasakian, AlphaSasakian),
        (AlphaSasakian, BetaKenmotsu),
        (AlphaSasakian, Cosymplectic),
        (BetaKenmotsu, BetaKenmotsu),
        (BetaKenmotsu, AlphaSasakian),
        (BetaKenmotsu, Cosymplectic),
        (Cosymplectic, AlphaSasakian),
        (Cosymplectic, BetaKenmotsu),
        (Cosymplectic, Cosymplectic),
    ]
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FactorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alpha-sasakian" | "sasakian" | "sas" => Ok(FactorKind::AlphaSasakian),
            "beta-kenmotsu" | "kenmotsu" | "ken" => Ok(FactorKind::BetaKenmotsu),
            "cosymplectic" | "cos" => Ok(FactorKind::Cosymplectic),
            "trans-sasakian" | "trans" => Ok(FactorKind::TransSasakian),
            other => Err(format!(
                "unknown structure type `{other}` (expected sasakian, kenmotsu, cosymplectic or trans-sasakian)"
            )),
        }
    }
}

/// A structure parameter that is either kept symbolic or fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Coefficient {
    #[default]
    Symbolic,
    Value(BigRational),
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Symbolic => f.write_str("symbolic"),
            Coefficient::Value(v) => f.write_str(&format_rational(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FactorType {
    AlphaSasakian(Coefficient),
    BetaKenmotsu(Coefficient),
    Cosymplectic,
    TransSasakian,
}

impl FactorType {
    pub fn symbolic(kind: FactorKind) -> FactorType {
        FactorType::with_value(kind, Coefficient::Symbolic)
    }

    /// `value` is ignored for kinds without a free coefficient.
    pub fn with_value(kind: FactorKind, value: Coefficient) -> FactorType {
        match kind {
            FactorKind::AlphaSasakian => FactorType::AlphaSasakian(value),
            FactorKind::BetaKenmotsu => FactorType::BetaKenmotsu(value),
            FactorKind::Cosymplectic => FactorType::Cosymplectic,
            FactorKind::TransSasakian => FactorType::TransSasakian,
        }
    }

    pub fn kind(&self) -> FactorKind {
        match self {
            FactorType::AlphaSasakian(_) => FactorKind::AlphaSasakian,
            FactorType::BetaKenmotsu(_) => FactorKind::BetaKenmotsu,
            FactorType::Cosymplectic => FactorKind::Cosymplectic,
            FactorType::TransSasakian => FactorKind::TransSasakian,
        }
    }
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorType::AlphaSasakian(Coefficient::Value(v))
            | FactorType::BetaKenmotsu(Coefficient::Value(v)) => {
                write!(f, "{}({})", self.kind(), format_rational(v))
            }
            _ => write!(f, "{}", self.kind()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("factor {factor}: a {kind} coefficient must be nonzero")]
    ZeroCoefficient { factor: u8, kind: FactorKind },
}

/// Structure types of both factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureSpec {
    pub factor1: FactorType,
    pub factor2: FactorType,
}

impl StructureSpec {
    pub fn new(factor1: FactorType, factor2: FactorType) -> Result<StructureSpec, SpecError> {
        let spec = StructureSpec { factor1, factor2 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn symbolic(k1: FactorKind, k2: FactorKind) -> StructureSpec {
        StructureSpec {
            factor1: FactorType::symbolic(k1),
            factor2: FactorType::symbolic(k2),
        }
    }

    pub fn kinds(&self) -> (FactorKind, FactorKind) {
        (self.factor1.kind(), self.factor2.kind())
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        for (i, f) in [(1u8, &self.factor1), (2, &self.factor2)] {
            if let FactorType::AlphaSasakian(Coefficient::Value(v))
            | FactorType::BetaKenmotsu(Coefficient::Value(v)) = f
            {
                if v.is_zero() {
                    return Err(SpecError::ZeroCoefficient {
                        factor: i,
                        kind: f.kind(),
                    });
                }
            }
        }
        Ok(())
    }

    fn factors(&self) -> [(Param, Param, &FactorType); 2] {
        [
            (Param::A1, Param::B1, &self.factor1),
            (Param::A2, Param::B2, &self.factor2),
        ]
    }

    /// Zeroes the coefficients each structure type forbids and fixes
    /// prescribed values; symbolic coefficients map to themselves.
    pub fn base_substitution(&self) -> Substitution {
        let mut sub = Substitution::identity();
        let fixed = |c: &Coefficient, p: Param| match c {
            Coefficient::Symbolic => LinearImage::var(p),
            Coefficient::Value(v) => LinearImage::constant(v.clone()),
        };
        for (alpha, beta, f) in self.factors() {
            match f {
                FactorType::AlphaSasakian(c) => {
                    sub.set(alpha, fixed(c, alpha));
                    sub.set(beta, LinearImage::zero());
                }
                FactorType::BetaKenmotsu(c) => {
                    sub.set(alpha, LinearImage::zero());
                    sub.set(beta, fixed(c, beta));
                }
                FactorType::Cosymplectic => {
                    sub.set(alpha, LinearImage::zero());
                    sub.set(beta, LinearImage::zero());
                }
                FactorType::TransSasakian => {}
            }
        }
        sub
    }

    /// Symbolic parameters that the structure types require to be nonzero.
    pub fn required_nonzero(&self) -> Vec<Param> {
        let mut out = Vec::new();
        for (alpha, beta, f) in self.factors() {
            match f {
                FactorType::AlphaSasakian(Coefficient::Symbolic) => out.push(alpha),
                FactorType::BetaKenmotsu(Coefficient::Symbolic) => out.push(beta),
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.factor1, self.factor2)
    }
}

/// Evaluates coefficients at the structure's parameter values.
pub fn substitute(f: &Form, spec: &StructureSpec) -> Result<Form, SpecError> {
    spec.validate()?;
    Ok(f.substitute(&spec.base_substitution()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr_io::parse;

    #[test]
    fn sasakian_value_and_cosymplectic() {
        let two = BigRational::from_integer(2.into());
        let spec = StructureSpec::new(
            FactorType::AlphaSasakian(Coefficient::Value(two)),
            FactorType::Cosymplectic,
        )
        .unwrap();
        let f = parse("a1^2*Phi1^2 + b1*eta1 + a2*Phi2 + 3").unwrap();
        assert_eq!(
            substitute(&f, &spec).unwrap(),
            parse("4*Phi1^2 + 3").unwrap()
        );
    }

    #[test]
    fn zero_value_is_rejected() {
        let spec = StructureSpec {
            factor1: FactorType::BetaKenmotsu(Coefficient::Value(BigRational::zero())),
            factor2: FactorType::TransSasakian,
        };
        assert!(substitute(&Form::one(), &spec).is_err());
    }

    #[test]
    fn names_parse() {
        for k in [
            FactorKind::AlphaSasakian,
            FactorKind::BetaKenmotsu,
            FactorKind::Cosymplectic,
            FactorKind::TransSasakian,
        ] {
            assert_eq!(k.name().parse::<FactorKind>().unwrap(), k);
        }
        assert_eq!(
            "kenmotsu".parse::<FactorKind>().unwrap(),
            FactorKind::BetaKenmotsu
        );
        assert!("hyperkahler".parse::<FactorKind>().is_err());
    }
}
