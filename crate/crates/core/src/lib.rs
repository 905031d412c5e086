//! Simulation of an observer as a one-qubit quantum computer, alongside a
//! classical Turing machine engine.
//!
//! - [`bloch`]: pure single-qubit states and observables as unit vectors, the
//!   y-rotation gate, and conjugation in both evolution pictures.
//! - [`machine`]: the halt-qubit machine and its scenario classifier.
//! - [`tm`]: a rule-table Turing machine with a text DSL, step-bounded runs and
//!   a self-application (diagonal) demo.

pub mod bloch;
pub mod error;
pub mod machine;
pub mod tm;

pub use error::ValidationError;
