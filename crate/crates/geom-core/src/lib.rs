//! Exact geometric predicates and slope-interval 2-coloring for planar point
//! quadruples.
//!
//! All predicates run in integer arithmetic: points are either lattice points
//! with `i64` coordinates or dyadic rationals at a shared power-of-two scale,
//! reduced to integer numerators before any test. Intermediate products are
//! computed in checked `i128`; an overflow is a bug in the caller's coordinate
//! range and aborts with a diagnostic rather than returning a wrong sign.
//!
//! The coloring side assigns each segment `BLUE` when its slope lies in a
//! rational interval (with per-endpoint open/closed flags and a configurable
//! color for vertical segments) and `RED` otherwise. The default rule,
//! [`ColorRule::chi_slope`], colors non-positive slopes, horizontals, and
//! verticals blue, and strictly positive slopes red.

mod color;
mod point;
mod predicates;

pub use color::{is_mono_crossing_quad, is_mono_crossing_quad_dyadic, slope_color, Color,
                ColorRule, RuleError, Slope, SlopeBound};
pub use point::{quad_at_common_scale, slice_at_common_scale, DyadicPoint, LatticePoint,
                MAX_DYADIC_SCALE};
pub use predicates::{classify_quad, classify_quad_dyadic, orient, segments_cross_properly,
                     QuadClass};
