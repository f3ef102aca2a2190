//! The full self-check: engine invariants, which must hold, and findings
//! about the transcribed reference material, which are only reported.

use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{volume_coefficient, wedge_free, Form, Monomial, ProductGeometry};
use crate::calculus::{
    condition_tensor, d_c, dd_c, exterior_d, j_action, kahler_form, power_expansion,
    wedge_identity_check, ConditionKind, LeibnizConvention,
};
use crate::classify::{
    audit_beta_relation, reproduce_table, scan, ClassifyError, ClaimFinding, ScanReport,
    TableReport,
};
use crate::diff::FormDiff;
use crate::expr_io::{from_record, parse, print_text, to_record};
use crate::fixtures::{self, TABLE_COUNT};
use crate::oracle::{GrassmannModel, Multivector};
use crate::random::{FormGenerator, FormShape};
use crate::scalar::{Param, Scalar};

const SEED: u64 = 0x5eed_a57e;
pub const RANDOM_FORMS: usize = 200;
pub const ORACLE_SAMPLES: usize = 100;

/// Strings the parser must reject.
pub const NEGATIVE_CORPUS: &[&str] = &[
    "",
    "(",
    "(Phi1 + Phi2",
    "Phi1 + Phi2)",
    "Phi3",
    "eta3",
    "alpha1",
    "eta1^-1",
    "Phi1^-2",
    "Phi1 /\\",
    "/\\ Phi1",
    "Phi1 /\\ /\\ Phi2",
    "Phi1 ∧ Phi2",
    "Phi1 + * Phi2",
    "2.5*Phi1",
    "1/0*eta1",
    "eta1^",
    "a1 b1",
    "Phi1 +",
    "()",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>, total: usize) -> Check {
        let detail = match failures.first() {
            None => format!("{total} cases"),
            Some(first) => format!("{} of {total} cases failed; first: {first}", failures.len()),
        };
        Check {
            name,
            passed: failures.is_empty(),
            detail,
        }
    }
}

/// A comparison against transcribed material. Never fails the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub reproduced: bool,
    pub detail: String,
}

fn generator(salt: u64, max_phi: u32) -> FormGenerator {
    FormGenerator::new(
        SEED ^ salt,
        FormShape {
            max_phi,
            ..FormShape::default()
        },
    )
}

fn free() -> ProductGeometry {
    ProductGeometry::untruncated(3, 3).expect("positive dimensions")
}

pub fn check_d_squared() -> Check {
    let g = free();
    let conv = LeibnizConvention::Graded;
    let mut gen = generator(1, 3);
    let failures = (0..RANDOM_FORMS)
        .map(|_| gen.form())
        .filter(|f| !exterior_d(&exterior_d(f, conv, &g), conv, &g).is_zero())
        .map(|f| print_text(&f))
        .collect();
    Check::new("d-squared-vanishes", failures, RANDOM_FORMS)
}

pub fn check_d_squared_residual() -> Check {
    let g = free().with_ring_reduction(false);
    let conv = LeibnizConvention::Graded;
    let mut failures = Vec::new();
    for (eta, a, b, image) in [
        (
            Form::eta1(),
            Param::A1,
            Param::B1,
            Monomial::new(true, false, 1, 0),
        ),
        (
            Form::eta2(),
            Param::A2,
            Param::B2,
            Monomial::new(false, true, 0, 1),
        ),
    ] {
        let dd = exterior_d(&exterior_d(&eta, conv, &g), conv, &g);
        let coeff = &(&Scalar::int(2) * &Scalar::param(a)) * &Scalar::param(b);
        let expected = Form::term(image, coeff);
        if dd != expected {
            failures.push(format!("d(d {}) = {}", print_text(&eta), print_text(&dd)));
        }
    }
    Check::new("d-squared-residual-unreduced", failures, 2)
}

pub fn check_j_laws() -> Check {
    let mut gen = generator(2, 3);
    let mut failures = Vec::new();
    for _ in 0..RANDOM_FORMS {
        let (x, y) = (gen.form(), gen.form());
        if j_action(&wedge_free(&x, &y)) != wedge_free(&j_action(&x), &j_action(&y)) {
            failures.push(format!("J multiplicativity on {}", print_text(&x)));
        }
        let j4 = (0..4).fold(x.clone(), |acc, _| j_action(&acc));
        if j4 != x {
            failures.push(format!("J^4 on {}", print_text(&x)));
        }
    }
    if j_action(&kahler_form()) != kahler_form() {
        failures.push("J(Omega) != Omega".into());
    }
    Check::new("j-automorphism", failures, RANDOM_FORMS + 1)
}

fn parity(f: &Form) -> Option<bool> {
    let mut odd = None;
    for (m, _) in f.terms() {
        match odd {
            None => odd = Some(m.is_odd()),
            Some(o) if o != m.is_odd() => return None,
            _ => {}
        }
    }
    odd
}

pub fn check_algebra_laws() -> Check {
    let mut gen = generator(3, 2);
    let mut failures = Vec::new();
    for _ in 0..RANDOM_FORMS {
        let (x, y, z) = (gen.form(), gen.form(), gen.form());
        let left = wedge_free(&wedge_free(&x, &y), &z);
        let right = wedge_free(&x, &wedge_free(&y, &z));
        if left != right {
            failures.push(format!("associativity on {}", print_text(&x)));
        }
        // Graded commutativity is checked term by term.
        for (mx, sx) in x.terms() {
            for (my, sy) in y.terms() {
                let a = Form::term(*mx, sx.clone());
                let b = Form::term(*my, sy.clone());
                let sign = if mx.is_odd() && my.is_odd() { -1 } else { 1 };
                if wedge_free(&a, &b) != wedge_free(&b, &a).scale_int(sign) {
                    failures.push(format!("commutativity on {}", print_text(&a)));
                }
            }
        }
        if let (Some(px), Some(py)) = (parity(&x), parity(&y)) {
            let sign = if px && py { -1 } else { 1 };
            if wedge_free(&x, &y) != wedge_free(&y, &x).scale_int(sign) {
                failures.push(format!("homogeneous commutativity on {}", print_text(&x)));
            }
        }
    }
    Check::new("graded-commutative-associative", failures, RANDOM_FORMS)
}

pub fn check_expansion_identity() -> Check {
    let g = free().with_ring_reduction(false);
    let conv = LeibnizConvention::Graded;
    let omega = kahler_form();
    let failures = (2..=4)
        .filter_map(|k| {
            let direct = dd_c(&omega.power(k, &g), conv, &g);
            let expanded = power_expansion(k, conv, &g);
            let diff = FormDiff::between(&expanded, &direct);
            (!diff.is_empty()).then(|| format!("k={k}: {} differing terms", diff.len()))
        })
        .collect();
    Check::new("power-expansion-identity", failures, 3)
}

fn oracle_pairs() -> Vec<(u32, u32)> {
    (1..=3).flat_map(|a| (1..=3).map(move |b| (a, b))).collect()
}

pub fn check_oracle_equivalence() -> Check {
    let failures: Vec<String> = oracle_pairs()
        .par_iter()
        .flat_map_iter(|&(m1, m2)| {
            let g = ProductGeometry::new(m1, m2)
                .expect("positive dimensions")
                .with_ring_reduction(false);
            let model = GrassmannModel::new(m1, m2).expect("within oracle bounds");
            let mut gen = generator(100 + u64::from(m1 * 10 + m2), m1.max(m2));
            let mut out = Vec::new();
            for i in 0..ORACLE_SAMPLES {
                let (x, y, params) = (gen.form(), gen.form(), gen.parameters());
                let ox = model.evaluate(&x, &params);
                let oy = model.evaluate(&y, &params);
                if model.evaluate(&x.wedge(&y, &g), &params) != ox.wedge(&oy) {
                    out.push(format!("({m1},{m2}) wedge of {}", print_text(&x)));
                }
                let k = 2 + (i as u32 % 2);
                if model.evaluate(&x.power(k, &g), &params) != model.power(&ox, k) {
                    out.push(format!("({m1},{m2}) power {k} of {}", print_text(&x)));
                }
            }
            out
        })
        .collect();
    Check::new(
        "oracle-equivalence",
        failures,
        oracle_pairs().len() * ORACLE_SAMPLES,
    )
}

pub fn check_volume() -> Check {
    let mut failures = Vec::new();
    let zero: [BigRational; 4] = std::array::from_fn(|_| BigRational::from_integer(0.into()));
    for (m1, m2) in oracle_pairs() {
        let g = ProductGeometry::new(m1, m2).expect("positive dimensions");
        let top = kahler_form().power(g.m(), &g);
        let vol = Monomial::new(true, true, m1, m2);
        let expected = Form::term(vol, Scalar::constant(volume_coefficient(&g)));
        let model = GrassmannModel::new(m1, m2).expect("within oracle bounds");
        let omega = model.evaluate(&kahler_form(), &zero);
        let oracle_top: Multivector = model.power(&omega, g.m());
        if top != expected || model.evaluate(&expected, &zero) != oracle_top {
            failures.push(format!("({m1},{m2}): {}", print_text(&top)));
        }
    }
    Check::new("volume-normalization", failures, 9)
}

pub fn check_round_trips() -> Check {
    let mut gen = generator(4, 4);
    let mut failures = Vec::new();
    for _ in 0..RANDOM_FORMS {
        let f = gen.form();
        let text = print_text(&f);
        if parse(&text).as_ref() != Ok(&f) {
            failures.push(format!("text: {text}"));
        }
        if from_record(&to_record(&f)).as_ref() != Ok(&f) {
            failures.push(format!("record: {text}"));
        }
    }
    for bad in NEGATIVE_CORPUS {
        if parse(bad).is_ok() {
            failures.push(format!("accepted `{bad}`"));
        }
    }
    Check::new(
        "round-trips",
        failures,
        RANDOM_FORMS + NEGATIVE_CORPUS.len(),
    )
}

pub fn invariant_checks() -> Vec<Check> {
    let suites: [fn() -> Check; 9] = [
        check_d_squared,
        check_d_squared_residual,
        check_j_laws,
        check_algebra_laws,
        check_expansion_identity,
        check_oracle_equivalence,
        check_volume,
        check_round_trips,
        check_condition_nesting,
    ];
    suites.par_iter().map(|f| f()).collect()
}

/// All three tensors vanish for cosymplectic × cosymplectic data.
pub fn check_condition_nesting() -> Check {
    use crate::classify::{classify, FactorKind, StructureSpec};
    let spec = StructureSpec::symbolic(FactorKind::Cosymplectic, FactorKind::Cosymplectic);
    let mut failures = Vec::new();
    for (m1, m2) in oracle_pairs() {
        let g = ProductGeometry::new(m1, m2).expect("positive dimensions");
        for kind in [
            ConditionKind::Skt,
            ConditionKind::Astheno,
            ConditionKind::Gauduchon,
        ] {
            match classify(kind, &g, &spec, LeibnizConvention::Graded) {
                Ok(r) if r.verdict.is_zero() => {}
                Ok(r) => failures.push(format!("{kind} at ({m1},{m2}): {}", r.verdict)),
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    Check::new("condition-nesting", failures, 27)
}

fn identity_findings() -> Vec<Finding> {
    let g = ProductGeometry::untruncated(1, 2).expect("positive dimensions");
    let conv = LeibnizConvention::Ungraded;
    let omega = kahler_form();
    let ids = fixtures::identities();
    let mut out = Vec::new();
    let mut push = |id: &str, computed: Form| {
        let fixture = ids.get(id);
        let diff = FormDiff::between(&fixture.form, &computed);
        out.push(Finding {
            name: format!("identity {id} ({conv})"),
            reproduced: diff.is_empty(),
            detail: if diff.is_empty() {
                "term-for-term match".into()
            } else {
                format!(
                    "{} differing terms; engine: {}",
                    diff.len(),
                    print_text(&computed)
                )
            },
        });
    };
    push("d_omega", exterior_d(&omega, conv, &g));
    push("dc_omega", d_c(&omega, conv, &g));
    match condition_tensor(ConditionKind::Skt, &g, conv) {
        Ok(t) => push("ddc_omega", t),
        Err(e) => out.push(Finding {
            name: "identity ddc_omega".into(),
            reproduced: false,
            detail: e.to_string(),
        }),
    }
    for conv in [LeibnizConvention::Ungraded, LeibnizConvention::Graded] {
        if let Ok(r) = wedge_identity_check(&g, conv) {
            for c in [&r.d_wedge_dc, &r.ddc_wedge_omega] {
                out.push(Finding {
                    name: format!("identity {} ({conv})", c.name),
                    reproduced: c.matches(),
                    detail: if c.matches() {
                        "term-for-term match".into()
                    } else {
                        format!("{} differing terms", c.diff.len())
                    },
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub invariants: Vec<Check>,
    pub identities: Vec<Finding>,
    pub tables: Vec<TableReport>,
    pub beta_claim: ClaimFinding,
    pub scans: Vec<ScanReport>,
}

impl VerificationReport {
    /// Only invariant violations fail verification.
    pub fn passes(&self) -> bool {
        self.invariants.iter().all(|c| c.passed)
    }

    /// Printed-zero rows reproduced as zero under the graded rule with
    /// truncation, and the number of printed-zero rows.
    pub fn printed_zero_rows(&self) -> (usize, usize) {
        let rows = self
            .tables
            .iter()
            .filter(|t| t.convention == LeibnizConvention::Graded)
            .flat_map(|t| t.rows.iter())
            .filter(|r| r.printed_zero);
        let (mut hit, mut total) = (0, 0);
        for r in rows {
            total += 1;
            hit += usize::from(r.engine_zero);
        }
        (hit, total)
    }

    pub fn to_json(&self) -> Value {
        let (hit, total) = self.printed_zero_rows();
        json!({
            "passed": self.passes(),
            "invariants": self.invariants.iter().map(|c| json!({
                "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>(),
            "identities": self.identities.iter().map(|f| json!({
                "name": f.name, "reproduced": f.reproduced, "detail": f.detail,
            })).collect::<Vec<_>>(),
            "printed_zero_rows": { "reproduced": hit, "total": total },
            "tables": self.tables.iter().map(TableReport::to_json).collect::<Vec<_>>(),
            "beta_relation_audit": self.beta_claim.to_json(),
            "scans": self.scans.iter().map(ScanReport::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== invariants")?;
        for c in &self.invariants {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {:<32} {}", c.name, c.detail)?;
        }
        writeln!(f, "== identities")?;
        for i in &self.identities {
            let tag = if i.reproduced { "MATCH" } else { "FINDING" };
            writeln!(f, "{tag} {:<48} {}", i.name, i.detail)?;
        }
        writeln!(f, "== tables")?;
        for t in &self.tables {
            writeln!(
                f,
                "table {:>2} {:<8} exact {} mod-trunc {} mod-conv {} discrepancy {} flagged {}",
                t.id,
                t.convention.name(),
                t.count(crate::classify::MatchClass::Exact),
                t.count(crate::classify::MatchClass::ModuloTruncation),
                t.count(crate::classify::MatchClass::ModuloConvention),
                t.count(crate::classify::MatchClass::Discrepancy),
                t.flagged().count(),
            )?;
            for r in t.flagged() {
                writeln!(
                    f,
                    "  FINDING table {} row {}: printed {}, engine {}{}",
                    r.table,
                    r.row,
                    if r.printed_zero { "zero" } else { "nonzero" },
                    if r.engine_zero { "zero" } else { "nonzero" },
                    if r.printed_truncates_to_zero {
                        " (printed entry vanishes under truncation)"
                    } else {
                        ""
                    },
                )?;
            }
        }
        let (hit, total) = self.printed_zero_rows();
        writeln!(f, "printed-zero rows reproduced as zero: {hit}/{total}")?;
        writeln!(f, "== beta relation audit")?;
        write!(f, "{}", self.beta_claim)?;
        for s in &self.scans {
            writeln!(f, "== scan")?;
            write!(f, "{s}")?;
        }
        writeln!(
            f,
            "== result: {}",
            if self.passes() {
                "all invariants pass"
            } else {
                "invariant failure"
            }
        )
    }
}

pub fn verify_all() -> Result<VerificationReport, ClassifyError> {
    let invariants = invariant_checks();
    let tables = [LeibnizConvention::Graded, LeibnizConvention::Ungraded]
        .into_iter()
        .flat_map(|c| (1..=TABLE_COUNT).map(move |id| (id, c)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(id, c)| reproduce_table(id, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport {
        invariants,
        identities: identity_findings(),
        tables,
        beta_claim: audit_beta_relation()?,
        scans: vec![
            scan(3, 3, ConditionKind::Astheno, LeibnizConvention::Graded)?,
            scan(1, 4, ConditionKind::Astheno, LeibnizConvention::Graded)?,
        ],
    })
}
