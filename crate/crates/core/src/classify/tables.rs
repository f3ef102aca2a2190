use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Form, ProductGeometry};
use crate::calculus::{condition_tensor, ConditionKind, LeibnizConvention};
use crate::diff::FormDiff;
use crate::expr_io::{print_text, to_record};
use crate::fixtures::{self, TableRow};

use super::{geometry_json, substitute, ClassifyError, FactorKind, StructureSpec};

/// How a printed entry relates to the engine's value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchClass {
    Exact,
    /// Every differing term is removed by truncation.
    ModuloTruncation,
    /// Matches (possibly after truncation) once the ungraded product rule
    /// is used.
    ModuloConvention,
    Discrepancy,
}

impl MatchClass {
    pub fn name(self) -> &'static str {
        match self {
            MatchClass::Exact => "exact",
            MatchClass::ModuloTruncation => "modulo-truncation",
            MatchClass::ModuloConvention => "modulo-convention",
            MatchClass::Discrepancy => "discrepancy",
        }
    }

    pub fn is_match(self) -> bool {
        self != MatchClass::Discrepancy
    }
}

impl fmt::Display for MatchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowReport {
    pub table: u8,
    pub row: u8,
    pub factors: (FactorKind, FactorKind),
    pub printed_text: String,
    pub fixture: Form,
    /// Symbolic engine value without truncation.
    pub engine: Form,
    /// Printed minus engine, both untruncated.
    pub diff: FormDiff,
    pub engine_truncated: Form,
    pub class: MatchClass,
    pub printed_zero: bool,
    pub engine_zero: bool,
    /// The printed entry is nonzero yet vanishes entirely under truncation.
    pub printed_truncates_to_zero: bool,
    pub note: Option<String>,
}

impl RowReport {
    pub fn zero_agreement(&self) -> bool {
        self.printed_zero == self.engine_zero
    }

    /// Rows that must appear in the discrepancy listing.
    pub fn flagged(&self) -> bool {
        !self.zero_agreement() || self.printed_truncates_to_zero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table,
            "row": self.row,
            "factor1": self.factors.0.name(),
            "factor2": self.factors.1.name(),
            "printed": self.printed_text,
            "printed_zero": self.printed_zero,
            "engine": to_record(&self.engine),
            "engine_truncated": to_record(&self.engine_truncated),
            "engine_zero": self.engine_zero,
            "diff": to_record(&self.diff.delta()),
            "diff_terms": self.diff.len(),
            "class": self.class.name(),
            "zero_agreement": self.zero_agreement(),
            "printed_truncates_to_zero": self.printed_truncates_to_zero,
            "note": self.note,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableReport {
    pub id: u8,
    pub geometry: ProductGeometry,
    pub convention: LeibnizConvention,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn count(&self, class: MatchClass) -> usize {
        self.rows.iter().filter(|r| r.class == class).count()
    }

    /// Every row matches exactly or within a tolerance class.
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.class.is_match())
    }

    pub fn flagged(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| r.flagged())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.id,
            "geometry": geometry_json(&self.geometry),
            "convention": self.convention.name(),
            "summary": {
                "exact": self.count(MatchClass::Exact),
                "modulo_truncation": self.count(MatchClass::ModuloTruncation),
                "modulo_convention": self.count(MatchClass::ModuloConvention),
                "discrepancy": self.count(MatchClass::Discrepancy),
                "zero_agreement": self.rows.iter().filter(|r| r.zero_agreement()).count(),
                "flagged": self.flagged().count(),
            },
            "rows": self.rows.iter().map(RowReport::to_json).collect::<Vec<_>>(),
        })
    }
}

impl TableReport {
    /// Text report with forms rendered by `form`.
    pub fn render(&self, form: fn(&Form) -> String) -> String {
        let mut out = String::new();
        self.write(&mut out, form).expect("writing to a String");
        out
    }

    fn write(&self, f: &mut impl fmt::Write, form: fn(&Form) -> String) -> fmt::Result {
        writeln!(
            f,
            "table {} ({}), convention {}",
            self.id, self.geometry, self.convention
        )?;
        for r in &self.rows {
            let line = format!(
                "  row {} {:>5} x {:<5} {:<18} printed {:<8} engine {:<8}{}",
                r.row,
                r.factors.0.short_name(),
                r.factors.1.short_name(),
                r.class.name(),
                if r.printed_zero { "zero" } else { "nonzero" },
                if r.engine_zero { "zero" } else { "nonzero" },
                if r.flagged() { "  FLAGGED" } else { "" },
            );
            writeln!(f, "{}", line.trim_end())?;
            if r.class == MatchClass::Discrepancy {
                writeln!(f, "      printed: {}", form(&r.fixture))?;
                writeln!(f, "      engine:  {}", form(&r.engine_truncated))?;
            }
            if let Some(n) = &r.note {
                writeln!(f, "      note: {n}")?;
            }
        }
        writeln!(
            f,
            "  summary: exact {}, modulo-truncation {}, modulo-convention {}, discrepancy {}",
            self.count(MatchClass::Exact),
            self.count(MatchClass::ModuloTruncation),
            self.count(MatchClass::ModuloConvention),
            self.count(MatchClass::Discrepancy),
        )
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, print_text)
    }
}

/// The astheno tensor at a table geometry, untruncated.
struct Tensors {
    free: ProductGeometry,
    primary: Form,
    /// Ungraded tensor, present when the primary one is graded.
    ungraded: Option<Form>,
}

impl Tensors {
    fn specialize(&self, tensor: &Form, row: &TableRow) -> Result<Form, ClassifyError> {
        let spec = StructureSpec::symbolic(row.factors[0], row.factors[1]);
        Ok(self.free.normalize(&substitute(tensor, &spec)?))
    }
}

fn tolerance_class(diff: &FormDiff, geom: &ProductGeometry) -> Option<MatchClass> {
    if diff.is_empty() {
        Some(MatchClass::Exact)
    } else if diff.vanishes_under(geom) {
        Some(MatchClass::ModuloTruncation)
    } else {
        None
    }
}

fn row_report(
    row: &TableRow,
    tensors: &Tensors,
    geom: &ProductGeometry,
) -> Result<RowReport, ClassifyError> {
    let engine = tensors.specialize(&tensors.primary, row)?;
    let diff = FormDiff::between(&row.expected, &engine);
    let class = match (tolerance_class(&diff, geom), &tensors.ungraded) {
        (Some(c), _) => c,
        (None, Some(ungraded)) => {
            let other = tensors.specialize(ungraded, row)?;
            match tolerance_class(&FormDiff::between(&row.expected, &other), geom) {
                Some(_) => MatchClass::ModuloConvention,
                None => MatchClass::Discrepancy,
            }
        }
        (None, None) => MatchClass::Discrepancy,
    };
    let engine_truncated = geom.normalize(&engine);
    let printed_zero = row.printed_zero();
    Ok(RowReport {
        table: row.table,
        row: row.row,
        factors: (row.factors[0], row.factors[1]),
        printed_text: row.text.clone(),
        fixture: row.expected.clone(),
        engine_zero: engine_truncated.is_zero(),
        engine,
        diff,
        engine_truncated,
        class,
        printed_zero,
        printed_truncates_to_zero: !printed_zero && geom.normalize(&row.expected).is_zero(),
        note: row.note.clone(),
    })
}

/// Recomputes every row of reference table `id` and compares it with the
/// transcription.
pub fn reproduce_table(id: u8, conv: LeibnizConvention) -> Result<TableReport, ClassifyError> {
    let table = fixtures::table(id).ok_or(ClassifyError::UnknownTable(id))?;
    let geom = table.geometry;
    let free = geom.with_truncation(false);
    let tensors = Tensors {
        free,
        primary: condition_tensor(ConditionKind::Astheno, &free, conv)?,
        ungraded: match conv {
            LeibnizConvention::Graded => Some(condition_tensor(
                ConditionKind::Astheno,
                &free,
                LeibnizConvention::Ungraded,
            )?),
            LeibnizConvention::Ungraded => None,
        },
    };
    let rows = table
        .rows
        .par_iter()
        .map(|r| row_report(r, &tensors, &geom))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport {
        id,
        geometry: geom,
        convention: conv,
        rows,
    })
}
