//! Embedded reference data: transcribed identities for Ω and the ten
//! particular-case tables, each entry kept verbatim in the text grammar.
//!
//! Both files are JSON Lines with a `version` field. They are parsed once on
//! first use; a malformed embedded record is a build defect and panics.

use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Deserialize;

use crate::algebra::{Form, ProductGeometry};
use crate::calculus::LeibnizConvention;
use crate::classify::FactorKind;
use crate::expr_io::parse;
use crate::scalar::{LinearImage, Param, Substitution};

const IDENTITIES: &str = include_str!("../data/identities.v1.jsonl");
const TABLES: &str = include_str!("../data/reference_tables.v1.jsonl");
const FORMAT_VERSION: u32 = 1;

/// Rows per table, one per ordered pair of pure structure types.
pub const ROWS_PER_TABLE: usize = 9;
pub const TABLE_COUNT: u8 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityFixture {
    pub id: String,
    /// Product rule the transcription was derived under.
    pub convention: LeibnizConvention,
    pub text: String,
    pub form: Form,
}

#[derive(Debug)]
pub struct IdentityFixtures {
    items: Vec<IdentityFixture>,
}

impl IdentityFixtures {
    pub fn find(&self, id: &str) -> Option<&IdentityFixture> {
        self.items.iter().find(|f| f.id == id)
    }

    /// Panics on an id that is not embedded.
    pub fn get(&self, id: &str) -> &IdentityFixture {
        self.find(id)
            .unwrap_or_else(|| panic!("no embedded identity `{id}`"))
    }

    pub fn iter(&self) -> impl Iterator<Item = &IdentityFixture> {
        self.items.iter()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentityLine {
    version: u32,
    id: String,
    convention: LeibnizConvention,
    expected: String,
}

pub fn identities() -> &'static IdentityFixtures {
    static CELL: OnceLock<IdentityFixtures> = OnceLock::new();
    CELL.get_or_init(|| {
        let items = lines(IDENTITIES)
            .map(|(n, line)| {
                let raw: IdentityLine = serde_json::from_str(line)
                    .unwrap_or_else(|e| panic!("identities line {n}: {e}"));
                assert_eq!(raw.version, FORMAT_VERSION, "identities line {n}");
                let form =
                    parse(&raw.expected).unwrap_or_else(|e| panic!("identities line {n}: {e}"));
                IdentityFixture {
                    id: raw.id,
                    convention: raw.convention,
                    text: raw.expected,
                    form,
                }
            })
            .collect();
        IdentityFixtures { items }
    })
}

/// One printed table row.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub table: u8,
    pub row: u8,
    pub geometry: ProductGeometry,
    pub factors: [FactorKind; 2],
    /// Printed 0/1 columns in (α₁, α₂, β₁, β₂) order.
    pub printed: [u8; 4],
    pub text: String,
    /// The printed entry, parsed without truncation.
    pub expected: Form,
    pub note: Option<String>,
}

impl TableRow {
    /// Parameter values from the printed columns, in (α₁, β₁, α₂, β₂) order.
    pub fn parameter_values(&self) -> [BigRational; 4] {
        let [a1, a2, b1, b2] = self.printed.map(|v| BigRational::from_integer(v.into()));
        [a1, b1, a2, b2]
    }

    /// Sends each parameter to its printed column value.
    pub fn printed_substitution(&self) -> Substitution {
        let values = self.parameter_values();
        Param::ALL
            .into_iter()
            .fold(Substitution::identity(), |s, p| {
                s.with(p, LinearImage::constant(values[p.index()].clone()))
            })
    }

    pub fn printed_zero(&self) -> bool {
        self.expected.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableFixture {
    pub id: u8,
    pub geometry: ProductGeometry,
    /// Which power of Ω the table differentiates, e.g. `ddc_omega^2`.
    pub quantity: String,
    pub rows: Vec<TableRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableLine {
    version: u32,
    table: u8,
    row: u8,
    m1: u32,
    m2: u32,
    quantity: String,
    factor1: FactorKind,
    factor2: FactorKind,
    alpha1: u8,
    alpha2: u8,
    beta1: u8,
    beta2: u8,
    expected: String,
    #[serde(default)]
    note: Option<String>,
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn load_tables() -> Vec<TableFixture> {
    let mut tables: Vec<TableFixture> = Vec::new();
    for (n, line) in lines(TABLES) {
        let raw: TableLine =
            serde_json::from_str(line).unwrap_or_else(|e| panic!("tables line {n}: {e}"));
        assert_eq!(raw.version, FORMAT_VERSION, "tables line {n}");
        let geometry =
            ProductGeometry::new(raw.m1, raw.m2).unwrap_or_else(|e| panic!("tables line {n}: {e}"));
        let expected = parse(&raw.expected).unwrap_or_else(|e| panic!("tables line {n}: {e}"));
        let row = TableRow {
            table: raw.table,
            row: raw.row,
            geometry,
            factors: [raw.factor1, raw.factor2],
            printed: [raw.alpha1, raw.alpha2, raw.beta1, raw.beta2],
            text: raw.expected,
            expected,
            note: raw.note,
        };
        match tables.last_mut() {
            Some(t) if t.id == raw.table => {
                assert_eq!(t.geometry, geometry, "tables line {n}: geometry changed");
                t.rows.push(row);
            }
            _ => tables.push(TableFixture {
                id: raw.table,
                geometry,
                quantity: raw.quantity,
                rows: vec![row],
            }),
        }
    }
    for (i, t) in tables.iter().enumerate() {
        assert_eq!(usize::from(t.id), i + 1, "tables out of order");
        assert_eq!(t.rows.len(), ROWS_PER_TABLE, "table {}", t.id);
        for (j, r) in t.rows.iter().enumerate() {
            assert_eq!(
                usize::from(r.row),
                j + 1,
                "table {} rows out of order",
                t.id
            );
        }
    }
    assert_eq!(tables.len(), usize::from(TABLE_COUNT));
    tables
}

pub fn tables() -> &'static [TableFixture] {
    static CELL: OnceLock<Vec<TableFixture>> = OnceLock::new();
    CELL.get_or_init(load_tables)
}

pub fn table(id: u8) -> Option<&'static TableFixture> {
    tables().iter().find(|t| t.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        assert_eq!(identities().iter().count(), 5);
        assert_eq!(tables().len(), 10);
        let zeros: usize = tables()
            .iter()
            .map(|t| t.rows.iter().filter(|r| r.printed_zero()).count())
            .sum();
        assert_eq!(zeros, 19);
    }

    #[test]
    fn printed_columns_follow_structure_types() {
        for t in tables() {
            for r in &t.rows {
                let [a1, a2, b1, b2] = r.printed;
                assert_eq!(
                    r.factors[0].printed_columns(),
                    (a1, b1),
                    "T{} r{}",
                    t.id,
                    r.row
                );
                assert_eq!(
                    r.factors[1].printed_columns(),
                    (a2, b2),
                    "T{} r{}",
                    t.id,
                    r.row
                );
            }
        }
    }

    #[test]
    fn geometries_cover_complex_dimensions_three_to_five() {
        let dims: Vec<(u32, u32)> = tables()
            .iter()
            .map(|t| (t.geometry.m1(), t.geometry.m2()))
            .collect();
        assert_eq!(
            dims,
            [
                (1, 1),
                (1, 2),
                (2, 1),
                (1, 3),
                (2, 2),
                (3, 1),
                (1, 4),
                (2, 3),
                (3, 2),
                (4, 1)
            ]
        );
    }
}
