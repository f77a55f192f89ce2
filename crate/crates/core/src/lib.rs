//! Numerical verification of biharmonic surfaces in the BCV spaces, Sol and
//! the space forms.
//!
//! Every geometric routine is generic over the scalar type; the aliases
//! below fix it to `f64`.

// Index loops mirror the tensor notation; negated comparisons reject NaN on purpose.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod chart;
pub mod dual;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod reference;
pub mod residual;
pub mod scalar;
pub mod surface;
pub mod verify;

pub use error::{GeometryError, Result};
pub use residual::{Classification, GridSpec, ResidualOptions};
pub use surface::{Axis, StencilOptions};
pub use verify::{run_suite, CheckRecord, SuiteConfig, SuiteName, SuiteReport};

pub type Model = chart::MetricModel<f64>;
pub type Point = chart::ChartPoint<f64>;
pub type Vector = chart::TangentVector<f64>;
pub type Patch = surface::SurfacePatch<f64>;
pub type Residual = residual::BiharmonicResidual<f64>;
pub type Verdict = residual::Verdict<f64>;
pub type Curve = hopf::PlaneCurve<f64>;
