//! Calculus on time scales: jump operators, delta integrals, and four
//! families of exponential, hyperbolic and trigonometric functions together
//! with the dynamic equations they satisfy.

// `!(x > 0.0)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficient;
pub mod convergence;
pub mod dynamic;
pub mod error;
pub mod exponential;
pub mod quadrature;
pub mod report;
pub mod timescale;
pub mod transforms;
pub mod trig;

pub use num_complex::Complex64;

pub use coefficient::{Coefficient, CoefficientKind, Piece};
pub use convergence::{ConvergenceRow, ConvergenceStudy};
pub use dynamic::{ExactOscillatorReport, SampledFunction, Scheme};
pub use error::{Error, Result};
pub use exponential::{ExpEvaluation, ExpFamily};
pub use report::{ResidualPoint, ResidualReport};
pub use timescale::{Component, Density, Grid, PointClass, TimeScale};
pub use transforms::{RegressivityKind, RegressivityReport};
pub use trig::{TrigFamily, TrigKind, TrigPair};
