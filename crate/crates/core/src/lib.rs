//! Continuous frames in Hilbert C*-modules over finite-dimensional matrix
//! algebras, with constructive checkers for frame perturbation results.

// `!(x > y)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod module;
pub mod perturbation;
mod repr;
pub mod sampling;
pub mod tol;
pub mod toolkit;

pub use algebra::{AlgebraDescriptor, AlgebraElement};
pub use error::{Error, Result};
pub use frame::{BoundSemantics, FrameBounds, FrameMap, L2Element, MeasureSpace};
pub use module::{AdjointableOperator, ModuleElement};
