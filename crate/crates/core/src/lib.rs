//! Exact-arithmetic analysis of polynomially deformed oscillator spectra.
//!
//! A deformed oscillator is fixed by its structure function `phi(n)`, a
//! polynomial without constant term in `n`, in `[n]_q`, or in `[n]_{p,q}`.
//! Its energy levels are `E_n = (phi(n) + phi(n+1)) / 2`. The crate
//!
//! * evaluates structure functions and spectra exactly ([`structure`]),
//! * generates the closed-form k-bonacci coefficient families and detects
//!   minimal-order recurrences by exact linear algebra ([`recurrence`]),
//! * solves the inhomogeneous two-term relation ([`inhomogeneous`]),
//! * builds level-dependent two-term coefficients ([`quasi`]).
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod cli;
pub mod error;
pub mod inhomogeneous;
pub mod numbers;
pub mod poly;
pub mod quasi;
pub mod recurrence;
pub mod structure;

pub use error::{Error, Result};
pub use numbers::{parse_rational, pq_bracket, q_binomial, q_bracket, BracketKind, Rational};
pub use recurrence::{
    detect_minimal_recurrence, extend_recurrence, kbonacci_classical, kbonacci_q, ninebonacci_pq, ninebonacci_qlimit,
    pentanacci_pq, predicted_order_pq, verify_recurrence, Recurrence, VerificationReport,
};
pub use structure::{SequenceKind, Spectrum, StructureFunction};
