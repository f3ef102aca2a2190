//! Text grammar, LaTeX output and the JSON record schema for forms.
//!
//! ```text
//! form := ['+'|'-'] term (('+'|'-') term)*
//! term := atom (('*'|'/\') atom)*
//! atom := ['-'] p['/'q] | param ['^' n] | generator ['^' n] | '(' form ')'
//! ```
//!
//! Parameters are `a1 b1 a2 b2`; generators are `eta1 eta2 Phi1 Phi2`. Both
//! `*` and `/\` denote the algebra product, so `2*eta1` and `eta1/\a2` are
//! equally valid.

mod parse;
mod print;
mod record;

pub use parse::{parse, ParseError};
pub use print::{print_latex, print_scalar, print_text};
pub use record::{from_record, from_record_str, to_record, to_record_string, RecordError};
