//! Exact algorithms for free groups, separated HNN-extensions and
//! amalgams over free groups, and the rational completion `F^Q` of a
//! free group.
//!
//! Layers, bottom up:
//! - [`word`]: reduction, conjugacy, roots, Gromov products.
//! - [`presentation`]: finite presentations and area search.
//! - [`graph`]: Stallings core graphs, fiber products, malnormality.
//! - [`construction`]: hyperbolicity verdicts for HNN-extensions and amalgams.
//! - [`qgroup`]: normal forms of elements of `F^Q`.
//! - [`tower`]: iterated extensions of centralizers.
//! - [`qword`], [`vtable`], [`completion`]: the rational-exponent front end.

pub mod completion;
pub mod construction;
pub mod error;
pub mod graph;
pub mod presentation;
pub mod qgroup;
pub mod qword;
pub mod tower;
pub mod vtable;
pub mod word;

pub use error::{Error, Result};

/// Exact rational numbers used for exponents and Gromov products.
pub type Rational = num_rational::Ratio<i64>;
