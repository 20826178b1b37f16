//! Exact enumeration of 4-point configurations on integer grids.
//!
//! The census counts, for a `w × h` bounding box or a full `(m+1) × (m+1)`
//! grid, how many 4-point subsets are in strictly convex position and how
//! many of those have same-colored crossing diagonals under a slope-interval
//! rule. Enumeration is data-parallel over disjoint leading-index chunks with
//! integer-only reductions, so results are bit-identical for every worker
//! count.

mod census;
mod triangle;

pub use census::{
    count_box, count_box_contained, count_box_ie, count_grid, quadruples_for_points, BoxCounts,
    GridBox, GridCounts, GridMethod, LatticeError, MAX_ENUM_POINTS,
};
pub use triangle::{count_lattice_points_triangle, Rational, RationalPoint};
