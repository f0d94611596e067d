//! Scaled relative graph (SRG) geometry for Davis–Yin splitting.
//!
//! The crate maps operator classes to regions of the complex plane, evaluates
//! the DYS symbol over products of those regions, and turns that into
//! contraction and averagedness factors in three ways:
//!
//! - [`rates`]: closed-form factors for the strongly monotone / Lipschitz /
//!   cocoercive settings, plus the corrected prior factors they improve on;
//! - [`search`]: a grid + projected-gradient maximization of `|ζ − s|` over
//!   region boundaries with a Lipschitz-certified upper bound;
//! - [`verify`]: 2×2 scaled-rotation realizations that check the bounds on
//!   concrete linear operators.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classes;
pub mod error;
pub mod rates;
pub mod region;
pub mod search;
pub mod symbol;
pub mod verify;

pub use classes::{ClassAtom, Enlargement, OperatorClassSpec, PreflightReport};
pub use error::{Error, Result};
pub use rates::{AveragednessReport, RateReport, Role, Theorem};

pub use region::{BoundaryPiece, BoundarySamples, Circle, ComplexPoint, Region, RegionAtom};
pub use search::{SearchConfig, SearchResult};
pub use symbol::DysParams;
pub use verify::{Mat2, VerificationReport};

/// Version tag embedded in serialized reports.
pub const SCHEMA_VERSION: u32 = 1;
