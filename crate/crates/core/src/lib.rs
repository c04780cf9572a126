//! Exact analysis of the Fibonacci recurrence viewed as a rational
//! discrete-time LTI system.
//!
//! * [`qfield`]: exact arithmetic in `Q(sqrt d)`.
//! * [`fib`]: sequence engines and identity checks.
//! * [`lti`]: polynomials in `z^-1`, poles, regions of convergence, partial
//!   fractions and the ROC-directed inverse Z-transform.
//! * [`response`]: difference-equation simulation, convolution, closed-form
//!   responses and unit-circle evaluation.

pub mod error;
pub mod fib;
pub mod lti;
pub mod qfield;
pub mod response;

pub use error::{Error, Result};
pub use fib::{Engine, FibValue};
pub use lti::{
    InverseZ, PartialFractionTerm, PartialFractions, Pole, Polynomial, Radius, RationalSystem, Roc,
    RocSelector, Scalar, SequenceWindow,
};
pub use qfield::QuadRational;
pub use response::{FrequencyGrid, Signal};
