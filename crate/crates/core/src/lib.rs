//! Exact enumeration of domino tilings of `m x n` rectangles through signed
//! matchings and transfer matrices, with two-sided extrapolation of the counts
//! to negative `n`.
//!
//! The modules build on each other roughly bottom-up:
//!
//! - [`grid`]: signed strip graphs `G(m, n)` for every integer `n`, adjunction
//!   and the chain-shrinking reduction on general signed graphs.
//! - [`oracle`]: exhaustive signed matching enumeration used as ground truth.
//! - [`transfer`]: the column transfer matrix and fast forward counting.
//! - [`recurrence`]: characteristic and minimal recurrences, backward runs.
//! - [`genfun`]: rational generating functions and their symmetries.
//! - [`reciprocity`]: the sign factor `epsilon(m, n)` and sweep reports.
//! - [`box3d`]: the same machinery for `k x m x n` boxes.
//! - [`laurent`]: edge-weighted matching polynomials of `G(2, n)` run backward.

pub mod box3d;
pub mod error;
pub mod genfun;
pub mod grid;
pub mod laurent;
pub mod limits;
pub mod oracle;
pub mod poly;
pub mod reciprocity;
pub mod recurrence;
pub mod transfer;

pub use error::{Error, Result};
pub use limits::Limits;
