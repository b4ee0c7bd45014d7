//! Exact odd independence and strong odd coloring on grids, chessboard graphs
//! and doubly-periodic lattice patterns.
//!
//! An independent set `S` is *odd independent* when every vertex outside `S`
//! has either no neighbour in `S` or an odd number of them. A proper coloring
//! is a *strong odd coloring* when each color present in any open
//! neighbourhood appears there an odd number of times.

pub mod bitset;
pub mod catalog;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod odd;
pub mod periodic;
pub mod solver;

pub use bitset::Bitset;
pub use coloring::{verify_strong_odd, Coloring, LatticeColoring, StrongOddReport};
pub use error::{Error, Result};
pub use graph::{build, cartesian_product, square, strong_product, BishopColor, FamilySpec, Graph};
pub use odd::{is_internally_odd_independent, is_odd_independent, OddCheckReport, VertexSet};
pub use periodic::{DensityReport, PeriodicPattern};
pub use solver::{
    solve_alpha_iod, solve_alpha_od, solve_chi_so, Budget, SolveOptions, SolveReport,
};

use num_rational::Ratio;

/// Exact fraction followed by a six-decimal rendering, e.g. `5/13 (0.384615)`.
pub fn format_ratio(r: Ratio<i64>) -> String {
    let decimal = *r.numer() as f64 / *r.denom() as f64;
    format!("{}/{} ({decimal:.6})", r.numer(), r.denom())
}
