//! Structure-type substitution, vanishing verdicts, reproduction of the
//! reference tables, and the conditional-vanishing analysis.

mod audit;
mod conditional;
mod scan;
mod spec;
mod tables;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{Form, ProductGeometry};
use crate::calculus::{condition_tensor, CalculusError, ConditionKind, LeibnizConvention};
use crate::expr_io::{print_text, to_record};

pub use audit::{audit_beta_relation, RelationAudit, ClaimFinding};
pub use conditional::{annihilating, conditional_analysis, ConditionOutcome, Outcome, Relation};
pub use scan::{scan, Proposition, ScanCell, ScanReport};
pub use spec::{
    pure_pairs, substitute, Coefficient, FactorKind, FactorType, SpecError, StructureSpec,
};
pub use tables::{reproduce_table, MatchClass, RowReport, TableReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("unknown table id {0} (expected 1..=10)")]
    UnknownTable(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    IdenticallyZero,
    Nonzero,
    /// Nonzero for generic parameters but annihilated by an admissible
    /// relation among them.
    ConditionallyZero,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::IdenticallyZero => "identically-zero",
            Verdict::Nonzero => "nonzero",
            Verdict::ConditionallyZero => "conditionally-zero",
        }
    }

    pub fn is_zero(self) -> bool {
        self == Verdict::IdenticallyZero
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub condition: ConditionKind,
    pub geometry: ProductGeometry,
    pub spec: StructureSpec,
    /// The condition tensor specialized to `spec`, normalized under
    /// `geometry`.
    pub residual: Form,
    pub verdict: Verdict,
    pub conditions: Vec<ConditionOutcome>,
    pub convention: LeibnizConvention,
}

impl ClassificationReport {
    pub fn satisfied_conditions(&self) -> Vec<&ConditionOutcome> {
        annihilating(&self.conditions)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition": self.condition.name(),
            "geometry": geometry_json(&self.geometry),
            "factor1": self.spec.factor1.to_string(),
            "factor2": self.spec.factor2.to_string(),
            "convention": self.convention.name(),
            "verdict": self.verdict.name(),
            "residual": to_record(&self.residual),
            "conditions": self.conditions.iter().map(|c| json!({
                "relations": c.relations.iter().map(Relation::to_string).collect::<Vec<_>>(),
                "outcome": c.outcome.name(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl ClassificationReport {
    /// Text report with the residual rendered by `form`.
    pub fn render(&self, form: fn(&Form) -> String) -> String {
        let mut out = String::new();
        self.write(&mut out, form).expect("writing to a String");
        out
    }

    fn write(&self, f: &mut impl fmt::Write, form: fn(&Form) -> String) -> fmt::Result {
        writeln!(f, "condition:  {}", self.condition)?;
        writeln!(f, "geometry:   {}", self.geometry)?;
        writeln!(f, "structure:  {}", self.spec)?;
        writeln!(f, "convention: {}", self.convention)?;
        writeln!(f, "residual:   {}", form(&self.residual))?;
        writeln!(f, "verdict:    {}", self.verdict)?;
        for c in &self.conditions {
            writeln!(f, "  {:<24} {}", c.label(), c.outcome)?;
        }
        Ok(())
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, print_text)
    }
}

pub(crate) fn geometry_json(g: &ProductGeometry) -> Value {
    let (d1, d2) = g.real_dims();
    json!({
        "m1": g.m1(),
        "m2": g.m2(),
        "m": g.m(),
        "dim1": d1,
        "dim2": d2,
        "truncate": g.truncate,
        "reduce_ring": g.reduce_ring,
    })
}

/// Computes the condition tensor, specializes it to `spec` and decides
/// whether it vanishes.
pub fn classify(
    kind: ConditionKind,
    geom: &ProductGeometry,
    spec: &StructureSpec,
    conv: LeibnizConvention,
) -> Result<ClassificationReport, ClassifyError> {
    let tensor = condition_tensor(kind, geom, conv)?;
    let residual = geom.normalize(&substitute(&tensor, spec)?);
    let (verdict, conditions) = if residual.is_zero() {
        (Verdict::IdenticallyZero, Vec::new())
    } else if residual.params().is_empty() {
        (Verdict::Nonzero, Vec::new())
    } else {
        let conditions = conditional_analysis(&residual, spec, geom.reduce_ring);
        let verdict = if annihilating(&conditions).is_empty() {
            Verdict::Nonzero
        } else {
            Verdict::ConditionallyZero
        };
        (verdict, conditions)
    };
    Ok(ClassificationReport {
        condition: kind,
        geometry: *geom,
        spec: spec.clone(),
        residual,
        verdict,
        conditions,
        convention: conv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use FactorKind::*;

    fn astheno(m1: u32, m2: u32, k1: FactorKind, k2: FactorKind) -> Verdict {
        classify(
            ConditionKind::Astheno,
            &ProductGeometry::new(m1, m2).unwrap(),
            &StructureSpec::symbolic(k1, k2),
            LeibnizConvention::Graded,
        )
        .unwrap()
        .verdict
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            astheno(1, 1, AlphaSasakian, AlphaSasakian),
            Verdict::IdenticallyZero
        );
        assert_eq!(
            astheno(1, 2, AlphaSasakian, Cosymplectic),
            Verdict::IdenticallyZero
        );
        assert_eq!(astheno(2, 2, BetaKenmotsu, BetaKenmotsu), Verdict::Nonzero);
        for (m1, m2) in [(1, 1), (2, 3), (3, 2)] {
            assert_eq!(
                astheno(m1, m2, Cosymplectic, Cosymplectic),
                Verdict::IdenticallyZero
            );
        }
    }

    #[test]
    fn report_json_has_record_residual() {
        let r = classify(
            ConditionKind::Skt,
            &ProductGeometry::new(1, 1).unwrap(),
            &StructureSpec::symbolic(BetaKenmotsu, Cosymplectic),
            LeibnizConvention::Graded,
        )
        .unwrap();
        let v = r.to_json();
        assert_eq!(v["verdict"], "nonzero");
        assert_eq!(
            crate::expr_io::from_record(&v["residual"]).unwrap(),
            r.residual
        );
    }
}
