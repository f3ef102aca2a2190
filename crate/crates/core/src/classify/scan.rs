use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::ProductGeometry;
use crate::calculus::{ConditionKind, LeibnizConvention};

use super::{classify, pure_pairs, ClassifyError, FactorKind, StructureSpec, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanCell {
    pub m1: u32,
    pub m2: u32,
    pub factors: (FactorKind, FactorKind),
    pub verdict: Verdict,
    pub residual_terms: usize,
}

/// A universally quantified statement checked over the scanned cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub name: &'static str,
    pub statement: &'static str,
    pub checked_cells: usize,
    pub counterexamples: Vec<String>,
}

impl Proposition {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// No cell in range fell under the hypothesis.
    pub fn vacuous(&self) -> bool {
        self.checked_cells == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "statement": self.statement,
            "holds": self.holds(),
            "vacuous": self.vacuous(),
            "checked_cells": self.checked_cells,
            "counterexamples": self.counterexamples,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub kind: ConditionKind,
    pub convention: LeibnizConvention,
    pub max_m1: u32,
    pub max_m2: u32,
    /// Ordered by m1, then m2, then the table row order of structure pairs.
    pub cells: Vec<ScanCell>,
    pub propositions: Vec<Proposition>,
}

impl ScanReport {
    pub fn cell(&self, m1: u32, m2: u32, k1: FactorKind, k2: FactorKind) -> Option<&ScanCell> {
        self.cells
            .iter()
            .find(|c| c.m1 == m1 && c.m2 == m2 && c.factors == (k1, k2))
    }

    pub fn proposition(&self, name: &str) -> Option<&Proposition> {
        self.propositions.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition": self.kind.name(),
            "convention": self.convention.name(),
            "max_m1": self.max_m1,
            "max_m2": self.max_m2,
            "cells": self.cells.iter().map(|c| json!({
                "m1": c.m1,
                "m2": c.m2,
                "factor1": c.factors.0.name(),
                "factor2": c.factors.1.name(),
                "verdict": c.verdict.name(),
                "residual_terms": c.residual_terms,
            })).collect::<Vec<_>>(),
            "propositions": self.propositions.iter().map(Proposition::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} scan, m1 <= {}, m2 <= {}, convention {}",
            self.kind, self.max_m1, self.max_m2, self.convention
        )?;
        write!(f, "{:>8}", "m1,m2")?;
        for (a, b) in pure_pairs() {
            write!(
                f,
                " {:>9}",
                format!("{}x{}", a.short_name(), b.short_name())
            )?;
        }
        writeln!(f)?;
        for chunk in self.cells.chunks(pure_pairs().len()) {
            write!(f, "{:>8}", format!("{},{}", chunk[0].m1, chunk[0].m2))?;
            for c in chunk {
                let mark = match c.verdict {
                    Verdict::IdenticallyZero => "0",
                    Verdict::Nonzero => "nonzero",
                    Verdict::ConditionallyZero => "cond",
                };
                write!(f, " {mark:>9}")?;
            }
            writeln!(f)?;
        }
        for p in &self.propositions {
            let status = match (p.holds(), p.vacuous()) {
                (_, true) => "vacuous",
                (true, false) => "holds",
                (false, false) => "FAILS",
            };
            writeln!(
                f,
                "proposition {}: {} [{status}, {} cells]",
                p.name, p.statement, p.checked_cells
            )?;
            for c in &p.counterexamples {
                writeln!(f, "  counterexample: {c}")?;
            }
        }
        Ok(())
    }
}

fn describe(c: &ScanCell) -> String {
    format!(
        "m1={} m2={} {} x {}: {}",
        c.m1,
        c.m2,
        c.factors.0.name(),
        c.factors.1.name(),
        c.verdict
    )
}

fn check(
    cells: &[ScanCell],
    name: &'static str,
    statement: &'static str,
    applies: impl Fn(&ScanCell) -> bool,
    expect_zero: impl Fn(&ScanCell) -> bool,
) -> Proposition {
    let scope: Vec<&ScanCell> = cells.iter().filter(|c| applies(c)).collect();
    Proposition {
        name,
        statement,
        checked_cells: scope.len(),
        counterexamples: scope
            .into_iter()
            .filter(|c| c.verdict.is_zero() != expect_zero(c))
            .map(describe)
            .collect(),
    }
}

pub const LARGE_FACTORS_ONLY_COSYMPLECTIC: &str = "large-factors-only-cosymplectic";
pub const SASAKIAN_THREEFOLD_WITH_COSYMPLECTIC: &str = "sasakian-threefold-with-cosymplectic";

fn propositions(cells: &[ScanCell]) -> Vec<Proposition> {
    use FactorKind::*;
    vec![
        check(
            cells,
            LARGE_FACTORS_ONLY_COSYMPLECTIC,
            "if both factors have real dimension >= 5, the tensor vanishes only for cosymplectic x cosymplectic",
            |c| c.m1 >= 2 && c.m2 >= 2,
            |c| c.factors == (Cosymplectic, Cosymplectic),
        ),
        check(
            cells,
            SASAKIAN_THREEFOLD_WITH_COSYMPLECTIC,
            "a 3-dimensional alpha-Sasakian factor times a cosymplectic factor gives a vanishing tensor",
            |c| {
                (c.m1 == 1 && c.factors == (AlphaSasakian, Cosymplectic))
                    || (c.m2 == 1 && c.factors == (Cosymplectic, AlphaSasakian))
            },
            |_| true,
        ),
    ]
}

/// Classifies every pure structure pair at every geometry within the bounds.
pub fn scan(
    max_m1: u32,
    max_m2: u32,
    kind: ConditionKind,
    conv: LeibnizConvention,
) -> Result<ScanReport, ClassifyError> {
    let mut jobs = Vec::new();
    for m1 in 1..=max_m1 {
        for m2 in 1..=max_m2 {
            for pair in pure_pairs() {
                jobs.push((m1, m2, pair));
            }
        }
    }
    let cells = jobs
        .par_iter()
        .map(|&(m1, m2, (k1, k2))| {
            let geom = ProductGeometry::new(m1, m2).expect("bounds start at 1");
            let r = classify(kind, &geom, &StructureSpec::symbolic(k1, k2), conv)?;
            Ok(ScanCell {
                m1,
                m2,
                factors: (k1, k2),
                verdict: r.verdict,
                residual_terms: r.residual.len(),
            })
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    let propositions = propositions(&cells);
    Ok(ScanReport {
        kind,
        convention: conv,
        max_m1,
        max_m2,
        cells,
        propositions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_geometry_matches_first_table_row_pattern() {
        let r = scan(1, 1, ConditionKind::Astheno, LeibnizConvention::Graded).unwrap();
        assert_eq!(r.cells.len(), 9);
        let zeros: Vec<bool> = r.cells.iter().map(|c| c.verdict.is_zero()).collect();
        assert_eq!(
            zeros,
            [true, false, true, false, false, false, true, false, true]
        );
        assert!(r
            .proposition(LARGE_FACTORS_ONLY_COSYMPLECTIC)
            .unwrap()
            .vacuous());
    }
}
