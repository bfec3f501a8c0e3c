use serde::{Deserialize, Serialize};

/// Desk-scale guards shared by every module. All of them can be overridden,
/// e.g. from the CLI config file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest graph (in vertices) the exhaustive enumerator accepts without `force`.
    pub oracle_vertices: usize,
    /// Largest strip width for the 2D transfer matrix (order `2^m`).
    pub max_width: usize,
    /// Largest cross-section cell count `k * m` for 3D boxes.
    pub max_cells_3d: usize,
    /// Deepest index the Laurent extrapolation may reach (a non-positive number).
    pub laurent_depth: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_vertices: 40,
            max_width: 12,
            max_cells_3d: 16,
            laurent_depth: -6,
        }
    }
}
