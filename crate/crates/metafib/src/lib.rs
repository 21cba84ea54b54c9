//! A laboratory for nested ("meta-Fibonacci") recurrence relations of the
//! form `A(n) = sum_i A(n - s_i - sum_j A(n - a_ij))`: parse and print the
//! angle-bracket notation, evaluate forward with exact death detection,
//! classify solutions against ruler-function frequency profiles, construct
//! new recursions from old ones, model the labeled-tree interpretations,
//! decide the ceiling-sequence characterization, and search parameter
//! boxes for recursions with prescribed Conolly-like solutions.

pub mod analysis;
pub mod ceiling;
pub mod engine;
pub mod notation;
pub mod reference;
pub mod search;
pub mod transforms;
pub mod trees;

pub use analysis::{ConollySignature, FrequencyProfile, Rational, RatioReport};
pub use engine::{evaluate, Death, EvalError, EvalResult};
pub use notation::{ParseError, RecursionSpec, RecursionTerm};
