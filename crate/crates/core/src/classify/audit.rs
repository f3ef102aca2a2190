use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{Form, ProductGeometry};
use crate::calculus::{condition_tensor, ConditionKind, LeibnizConvention};
use crate::expr_io::{print_text, to_record};
use crate::scalar::Param;

use super::{
    annihilating, conditional_analysis, substitute, ClassifyError, FactorKind, Outcome, Relation,
    StructureSpec,
};

/// Engine outcome of β₁ = ±β₂ on the Kenmotsu × Kenmotsu tensor at one
/// geometry and convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationAudit {
    pub convention: LeibnizConvention,
    pub geometry: ProductGeometry,
    pub residual: Form,
    pub beta_equal: Outcome,
    pub beta_opposite: Outcome,
    /// Every candidate relation set that annihilates the residual.
    pub annihilating: Vec<String>,
}

impl RelationAudit {
    pub fn claim_holds(&self) -> bool {
        self.beta_equal == Outcome::Annihilates && self.beta_opposite == Outcome::Annihilates
    }
}

/// Audit of the claim that β₁ = ±β₂ makes β-Kenmotsu × β-Kenmotsu
/// astheno-Kähler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimFinding {
    pub claim: &'static str,
    pub cases: Vec<RelationAudit>,
}

impl ClaimFinding {
    pub fn reproduced_under(&self, conv: LeibnizConvention) -> bool {
        self.cases
            .iter()
            .filter(|c| c.convention == conv)
            .all(RelationAudit::claim_holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "reproduced": {
                "graded": self.reproduced_under(LeibnizConvention::Graded),
                "ungraded": self.reproduced_under(LeibnizConvention::Ungraded),
            },
            "cases": self.cases.iter().map(|c| json!({
                "convention": c.convention.name(),
                "m1": c.geometry.m1(),
                "m2": c.geometry.m2(),
                "residual": to_record(&c.residual),
                "residual_text": print_text(&c.residual),
                "b1 = b2": c.beta_equal.name(),
                "b1 = -b2": c.beta_opposite.name(),
                "annihilating": c.annihilating,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ClaimFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        for c in &self.cases {
            writeln!(
                f,
                "  {:<8} m1={} m2={}  b1 = b2: {:<12} b1 = -b2: {:<12} annihilating: [{}]",
                c.convention.name(),
                c.geometry.m1(),
                c.geometry.m2(),
                c.beta_equal.name(),
                c.beta_opposite.name(),
                c.annihilating.join("; "),
            )?;
            writeln!(f, "      residual: {}", print_text(&c.residual))?;
        }
        for conv in [LeibnizConvention::Graded, LeibnizConvention::Ungraded] {
            writeln!(
                f,
                "  reproduced under {conv}: {}",
                if self.reproduced_under(conv) {
                    "yes"
                } else {
                    "no"
                }
            )?;
        }
        Ok(())
    }
}

/// Geometries of the first three reference tables.
const AUDIT_GEOMETRIES: [(u32, u32); 3] = [(1, 1), (1, 2), (2, 1)];

pub fn audit_beta_relation() -> Result<ClaimFinding, ClassifyError> {
    let spec = StructureSpec::symbolic(FactorKind::BetaKenmotsu, FactorKind::BetaKenmotsu);
    let mut cases = Vec::new();
    for conv in [LeibnizConvention::Graded, LeibnizConvention::Ungraded] {
        for (m1, m2) in AUDIT_GEOMETRIES {
            let geom = ProductGeometry::new(m1, m2).expect("positive dimensions");
            let tensor = condition_tensor(ConditionKind::Astheno, &geom, conv)?;
            let residual = geom.normalize(&substitute(&tensor, &spec)?);
            let conditions = conditional_analysis(&residual, &spec, geom.reduce_ring);
            let outcome_of = |rel: Relation| {
                if residual.is_zero() {
                    return Outcome::Annihilates;
                }
                conditions
                    .iter()
                    .find(|c| c.relations == [rel])
                    .map(|c| c.outcome)
                    .expect("every candidate is reported")
            };
            cases.push(RelationAudit {
                convention: conv,
                geometry: geom,
                beta_equal: outcome_of(Relation::Equal(Param::B1, Param::B2)),
                beta_opposite: outcome_of(Relation::Opposite(Param::B1, Param::B2)),
                annihilating: annihilating(&conditions)
                    .iter()
                    .map(|c| c.label())
                    .collect(),
                residual,
            });
        }
    }
    Ok(ClaimFinding {
        claim: "beta-kenmotsu x beta-kenmotsu becomes astheno-Kahler when b1 = b2 or b1 = -b2",
        cases,
    })
}
