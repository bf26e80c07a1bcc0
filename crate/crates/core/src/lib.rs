//! Exact combinatorics on the space of pointed trees over free-group Cayley
//! graphs.
//!
//! - [`word`]: reduced words in `F_n`, Cayley-tree adjacency.
//! - [`pattern`]: finite balls, rebasing and the ball ultrametric.
//! - [`trees`]: lazily evaluated infinite trees.
//! - [`census`]: pattern enumeration, cover counts, box-dimension estimates
//!   and growth diagnostics.

pub mod census;
pub mod error;
pub mod pattern;
pub mod trees;
mod util;
pub mod word;

pub use error::{Error, Result};
pub use pattern::{Agreement, ClopenBall, Pattern};
pub use word::{Letter, Word};
