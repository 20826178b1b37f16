//! Reproducible Monte Carlo estimation for quadrilateral colouring statistics.
//!
//! Sampling draws points uniformly from the open unit square on an exact
//! dyadic grid of resolution `2^-53`, so every downstream geometric decision
//! is made by exact integer arithmetic: the only randomness is in the draw,
//! never in the evaluation.
//!
//! Determinism contract: every estimator in this crate is a pure function of
//! `(RngSpec, sample count, rule)`. The generator is counter-based, and each
//! sample index owns a fixed window of the key stream, so results are
//! bit-identical regardless of how work is chunked or how many worker
//! threads execute it.

mod estimate;
mod graph;
mod sample;

pub use estimate::{
    estimate_quad_probs, sweep_intervals, Estimate, QuadEstimates, SweepRow, CHUNK_SAMPLES,
};
pub use graph::{
    count_crossings_by_quads, count_crossings_by_segment_pairs, estimate_graph_crossings,
    GraphCrossings, McError, MAX_GRAPH_POINTS,
};
pub use sample::{quad_at, RngSpec, SampleStream, DYADIC_SCALE, WORDS_PER_POINT, WORDS_PER_QUAD};
