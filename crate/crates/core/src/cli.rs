//! Command-line front end.
//!
//! Exit codes: 0 for a vanishing verdict or a passing run, 1 for a nonzero
//! verdict or a discrepancy, 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{Form, ProductGeometry};
use crate::calculus::{d_c, exterior_d, j_action, ConditionKind, LeibnizConvention};
use crate::classify::{
    classify, reproduce_table, scan, Coefficient, FactorKind, FactorType, StructureSpec, Verdict,
};
use crate::expr_io::{parse, print_latex, print_text, to_record};
use crate::verify::verify_all;

pub const EXIT_ZERO: i32 = 0;
pub const EXIT_NONZERO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    None,
    D,
    Dc,
    J,
}

#[derive(Debug, Parser)]
#[command(
    name = "astheno",
    version,
    about = "Exterior calculus on products of trans-Sasakian manifolds"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Product rule for d
    #[arg(long, global = true, default_value = "graded")]
    pub convention: LeibnizConvention,
    /// Keep Φ_i powers above the factor dimension
    #[arg(long, global = true)]
    pub no_truncate: bool,
    /// Do not reduce modulo α₁β₁ = α₂β₂ = 0
    #[arg(long, global = true)]
    pub no_ring_reduction: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Geometry {
    /// Half-dimension of the first factor (real dimension 2*m1+1)
    #[arg(long)]
    pub m1: u32,
    /// Half-dimension of the second factor (real dimension 2*m2+1)
    #[arg(long)]
    pub m2: u32,
}

#[derive(Debug, Args)]
pub struct Values {
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<BigRational>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<BigRational>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one condition for one structure pair
    Check {
        #[command(flatten)]
        geometry: Geometry,
        #[arg(long)]
        factor1: FactorKind,
        #[arg(long)]
        factor2: FactorKind,
        #[arg(long, default_value = "astheno")]
        condition: ConditionKind,
        #[command(flatten)]
        values: Box<Values>,
    },
    /// Recompute a reference table and diff it against the transcription
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        id: u8,
    },
    /// Classify every structure pair over a range of geometries
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_m1: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_m2: u32,
        #[arg(long, default_value = "astheno")]
        condition: ConditionKind,
    },
    /// Run every invariant suite and audit the reference material
    VerifyPaper,
    /// Parse an expression and apply d, d^c or J to it
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Operators applied left to right; repeat or separate with commas
        #[arg(long, value_enum, value_delimiter = ',')]
        apply: Vec<Op>,
        #[arg(long, requires = "m2")]
        m1: Option<u32>,
        #[arg(long, requires = "m1")]
        m2: Option<u32>,
    },
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Output<'_> {
    fn print(&mut self, text: &str) {
        let _ = self.out.write_all(text.as_bytes());
        if !text.ends_with('\n') {
            let _ = self.out.write_all(b"\n");
        }
    }

    fn json(&mut self, v: &Value) {
        self.print(&serde_json::to_string_pretty(v).expect("json values serialize"));
    }

    fn usage(&mut self, message: impl std::fmt::Display) -> i32 {
        let _ = writeln!(
            self.err,
            "error: {message}\n\nFor more information, try '--help'."
        );
        EXIT_USAGE
    }

    fn paint(&self, text: &str, good: bool) -> String {
        if self.color {
            let code = if good { 32 } else { 31 };
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn form_printer(format: Format) -> fn(&Form) -> String {
    match format {
        Format::Latex => print_latex,
        _ => print_text,
    }
}

fn geometry(m1: u32, m2: u32, common: &Common) -> Result<ProductGeometry, String> {
    ProductGeometry::new(m1, m2)
        .map(|g| {
            g.with_truncation(!common.no_truncate)
                .with_ring_reduction(!common.no_ring_reduction)
        })
        .map_err(|e| e.to_string())
}

fn factor(
    kind: FactorKind,
    alpha: &Option<BigRational>,
    beta: &Option<BigRational>,
    i: u8,
) -> Result<FactorType, String> {
    let value = |v: &Option<BigRational>| {
        v.clone()
            .map(Coefficient::Value)
            .unwrap_or(Coefficient::Symbolic)
    };
    let reject = |name: &str| {
        Err(format!(
            "--{name}{i} is not a free coefficient of a {kind} factor"
        ))
    };
    match kind {
        FactorKind::AlphaSasakian if beta.is_some() => reject("b"),
        FactorKind::AlphaSasakian => Ok(FactorType::AlphaSasakian(value(alpha))),
        FactorKind::BetaKenmotsu if alpha.is_some() => reject("a"),
        FactorKind::BetaKenmotsu => Ok(FactorType::BetaKenmotsu(value(beta))),
        FactorKind::Cosymplectic if alpha.is_some() => reject("a"),
        FactorKind::Cosymplectic if beta.is_some() => reject("b"),
        FactorKind::Cosymplectic => Ok(FactorType::Cosymplectic),
        FactorKind::TransSasakian if alpha.is_some() => reject("a"),
        FactorKind::TransSasakian if beta.is_some() => reject("b"),
        FactorKind::TransSasakian => Ok(FactorType::TransSasakian),
    }
}

fn cmd_check(
    o: &mut Output,
    geom: &Geometry,
    kinds: (FactorKind, FactorKind),
    condition: ConditionKind,
    values: &Values,
    common: &Common,
) -> i32 {
    let g = match geometry(geom.m1, geom.m2, common) {
        Ok(g) => g,
        Err(e) => return o.usage(e),
    };
    let spec = factor(kinds.0, &values.a1, &values.b1, 1)
        .and_then(|f1| Ok((f1, factor(kinds.1, &values.a2, &values.b2, 2)?)))
        .and_then(|(f1, f2)| StructureSpec::new(f1, f2).map_err(|e| e.to_string()));
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return o.usage(e),
    };
    let report = match classify(condition, &g, &spec, common.convention) {
        Ok(r) => r,
        Err(e) => return o.usage(e),
    };
    match common.format {
        Format::Json => o.json(&report.to_json()),
        f => {
            let text = report.render(form_printer(f));
            let verdict = report.verdict.name();
            let painted = o.paint(verdict, report.verdict.is_zero());
            o.print(&text.replacen(
                &format!("verdict:    {verdict}"),
                &format!("verdict:    {painted}"),
                1,
            ));
        }
    }
    if report.verdict == Verdict::IdenticallyZero {
        EXIT_ZERO
    } else {
        EXIT_NONZERO
    }
}

fn cmd_table(o: &mut Output, id: u8, common: &Common) -> i32 {
    let report = match reproduce_table(id, common.convention) {
        Ok(r) => r,
        Err(e) => return o.usage(e),
    };
    match common.format {
        Format::Json => o.json(&report.to_json()),
        f => {
            let text = report.render(form_printer(f));
            let text = if o.color {
                text.replace("FLAGGED", &o.paint("FLAGGED", false))
            } else {
                text
            };
            o.print(&text);
        }
    }
    if report.passes() {
        EXIT_ZERO
    } else {
        EXIT_NONZERO
    }
}

fn cmd_scan(o: &mut Output, max_m1: u32, max_m2: u32, kind: ConditionKind, common: &Common) -> i32 {
    let report = match scan(max_m1, max_m2, kind, common.convention) {
        Ok(r) => r,
        Err(e) => return o.usage(e),
    };
    match common.format {
        Format::Json => o.json(&report.to_json()),
        _ => o.print(&report.to_string()),
    }
    if report.propositions.iter().all(|p| p.holds()) {
        EXIT_ZERO
    } else {
        EXIT_NONZERO
    }
}

fn cmd_verify(o: &mut Output, common: &Common) -> i32 {
    let report = match verify_all() {
        Ok(r) => r,
        Err(e) => return o.usage(e),
    };
    match common.format {
        Format::Json => o.json(&report.to_json()),
        _ => {
            let text = report.to_string();
            let text = if o.color {
                text.replace("PASS ", &o.paint("PASS ", true))
                    .replace("FAIL ", &o.paint("FAIL ", false))
            } else {
                text
            };
            o.print(&text);
        }
    }
    if report.passes() {
        EXIT_ZERO
    } else {
        EXIT_NONZERO
    }
}

fn cmd_eval(
    o: &mut Output,
    expr: &str,
    ops: &[Op],
    dims: Option<(u32, u32)>,
    common: &Common,
) -> i32 {
    let g = match dims {
        Some((m1, m2)) => geometry(m1, m2, common),
        None => geometry(1, 1, common).map(|g| g.with_truncation(false)),
    };
    let g = match g {
        Ok(g) => g,
        Err(e) => return o.usage(e),
    };
    let mut f = match parse(expr) {
        Ok(f) => g.normalize(&f),
        Err(e) => return o.usage(e),
    };
    for op in ops {
        f = match op {
            Op::None => f,
            Op::D => exterior_d(&f, common.convention, &g),
            Op::Dc => d_c(&f, common.convention, &g),
            Op::J => j_action(&f),
        };
    }
    match common.format {
        Format::Text => o.print(&print_text(&f)),
        Format::Latex => o.print(&print_latex(&f)),
        Format::Json => o.json(&json!(to_record(&f))),
    }
    EXIT_ZERO
}

fn color_enabled() -> bool {
    matches!(
        std::env::var("ASTHENO_COLOR").as_deref(),
        Ok("on") | Ok("1") | Ok("true")
    )
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_ZERO
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut o = Output {
        out,
        err,
        color: color_enabled(),
    };
    let common = &cli.common;
    match &cli.command {
        Command::Check {
            geometry,
            factor1,
            factor2,
            condition,
            values,
        } => cmd_check(
            &mut o,
            geometry,
            (*factor1, *factor2),
            *condition,
            values,
            common,
        ),
        Command::Table { id } => cmd_table(&mut o, *id, common),
        Command::Scan {
            max_m1,
            max_m2,
            condition,
        } => cmd_scan(&mut o, *max_m1, *max_m2, *condition, common),
        Command::VerifyPaper => cmd_verify(&mut o, common),
        Command::Eval {
            expr,
            apply,
            m1,
            m2,
        } => cmd_eval(&mut o, expr, apply, m1.zip(*m2), common),
    }
}
