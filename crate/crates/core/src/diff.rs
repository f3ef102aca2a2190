//! Term-level differences between two canonical forms.

use crate::algebra::{Form, Monomial, ProductGeometry};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub monomial: Monomial,
    /// Zero when the monomial is absent on that side.
    pub expected: Scalar,
    pub computed: Scalar,
}

/// Every monomial whose coefficient differs, in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormDiff {
    pub entries: Vec<DiffEntry>,
}

impl FormDiff {
    pub fn between(expected: &Form, computed: &Form) -> FormDiff {
        let delta = expected - computed;
        let entries = delta
            .terms()
            .map(|(m, _)| DiffEntry {
                monomial: *m,
                expected: expected.coefficient(m).cloned().unwrap_or_default(),
                computed: computed.coefficient(m).cloned().unwrap_or_default(),
            })
            .collect();
        FormDiff { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// expected − computed as a form.
    pub fn delta(&self) -> Form {
        Form::from_terms(
            self.entries
                .iter()
                .map(|e| (e.monomial, &e.expected - &e.computed)),
        )
    }

    /// True when truncation under `geom` removes every differing term.
    pub fn vanishes_under(&self, geom: &ProductGeometry) -> bool {
        geom.normalize(&self.delta()).is_zero()
    }

    /// Entries that survive truncation under `geom`.
    pub fn surviving(&self, geom: &ProductGeometry) -> FormDiff {
        FormDiff {
            entries: self
                .entries
                .iter()
                .filter(|e| geom.keeps(&e.monomial))
                .cloned()
                .collect(),
        }
    }
}
