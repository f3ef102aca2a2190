//! Symbolic exterior calculus on a product of two almost-contact metric
//! manifolds.
//!
//! Forms are polynomials in η₁, η₂ (degree 1) and Φ₁, Φ₂ (degree 2) with
//! coefficients in ℚ[α₁, β₁, α₂, β₂]. The crate computes d, J and d^c on
//! them, builds the astheno-Kähler, SKT and Gauduchon tensors of the product
//! Kähler form, and classifies when they vanish for α-Sasakian, β-Kenmotsu
//! and cosymplectic factors.
//!
//! ```
//! use astheno::algebra::ProductGeometry;
//! use astheno::calculus::{exterior_d, LeibnizConvention};
//! use astheno::expr_io::{parse, print_text};
//!
//! let g = ProductGeometry::new(1, 1).unwrap();
//! let d = exterior_d(&parse("eta1").unwrap(), LeibnizConvention::Graded, &g);
//! assert_eq!(print_text(&d), "a1*Phi1");
//! ```

pub mod algebra;
pub mod calculus;
pub mod classify;
pub mod cli;
pub mod diff;
pub mod expr_io;
pub mod fixtures;
pub mod oracle;
pub mod random;
pub mod scalar;
pub mod verify;
