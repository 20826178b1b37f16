//! Crossing statistics for complete-graph drawings on random point sets.

use geom_core::{
    classify_quad, segments_cross_properly, slice_at_common_scale, slope_color, ColorRule,
    LatticePoint, QuadClass,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::sample::{RngSpec, SampleStream};

/// Largest point set accepted by [`estimate_graph_crossings`]: the crossing
/// count visits all four-point subsets, so work grows like the fourth power
/// of the point count.
pub const MAX_GRAPH_POINTS: u32 = 64;

const CHUNK_TRIALS: u64 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum McError {
    #[error("graph crossings need between 4 and {MAX_GRAPH_POINTS} points, got {n_points}")]
    BadPointCount { n_points: u32 },
    #[error("need at least one trial")]
    ZeroTrials,
}

/// Counts `(crossings, mono crossings)` in the complete-graph drawing on
/// `points` by visiting every four-point subset.
///
/// A subset contributes one crossing exactly when it is in strictly convex
/// position, with its two diagonals as the crossing edges; the crossing is
/// mono when both diagonals have the same colour under `rule`.
pub fn count_crossings_by_quads(points: &[LatticePoint], rule: &ColorRule) -> (u64, u64) {
    let n = points.len();
    let mut crossings = 0u64;
    let mut mono = 0u64;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    let quad = [points[i], points[j], points[k], points[l]];
                    if let QuadClass::Convex { diagonals: [(a, b), (c, d)] } =
                        classify_quad(&quad)
                    {
                        crossings += 1;
                        if slope_color(quad[a], quad[b], rule)
                            == slope_color(quad[c], quad[d], rule)
                        {
                            mono += 1;
                        }
                    }
                }
            }
        }
    }
    (crossings, mono)
}

/// Counts `(crossings, mono crossings)` by testing every pair of
/// vertex-disjoint edges for a proper crossing.
///
/// Independent of [`count_crossings_by_quads`] — it never classifies a
/// quadruple — and must agree with it exactly on every input, including
/// degenerate ones: a pair of edges crosses properly precisely when its four
/// endpoints are in strictly convex position with those edges as diagonals.
pub fn count_crossings_by_segment_pairs(points: &[LatticePoint], rule: &ColorRule) -> (u64, u64) {
    let n = points.len();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    let mut crossings = 0u64;
    let mut mono = 0u64;
    for (e, &(i, j)) in edges.iter().enumerate() {
        for &(k, l) in &edges[(e + 1)..] {
            if i == k || i == l || j == k || j == l {
                continue;
            }
            if segments_cross_properly(points[i], points[j], points[k], points[l]) {
                crossings += 1;
                if slope_color(points[i], points[j], rule)
                    == slope_color(points[k], points[l], rule)
                {
                    mono += 1;
                }
            }
        }
    }
    (crossings, mono)
}

/// Crossing statistics over repeated random point sets.
///
/// The integer sums are exact and are the quantities guaranteed to be
/// bit-identical across worker-thread counts; the floating-point summaries
/// are derived from them after aggregation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphCrossings {
    pub n_points: u32,
    pub trials: u64,
    pub sum_crossings: u128,
    pub sum_crossings_sq: u128,
    pub sum_mono_crossings: u128,
    pub sum_mono_crossings_sq: u128,
    /// Mean crossing count per trial.
    pub mean_crossings: f64,
    /// Standard error of `mean_crossings` (zero when `trials == 1`).
    pub se_crossings: f64,
    pub mean_mono_crossings: f64,
    pub se_mono_crossings: f64,
}

fn mean_and_se(sum: u128, sum_sq: u128, trials: u64) -> (f64, f64) {
    let t = trials as f64;
    let mean = sum as f64 / t;
    if trials < 2 {
        return (mean, 0.0);
    }
    let sample_var = ((sum_sq as f64) - (sum as f64) * (sum as f64) / t) / (t - 1.0);
    (mean, (sample_var.max(0.0) / t).sqrt())
}

/// Draws `trials` independent sets of `n_points` random points and counts
/// crossings and mono crossings in each complete-graph drawing.
///
/// Deterministic in `(n_points, trials, spec, rule)`; trial number `t` always
/// consumes the same window of the random sequence, so chunking and thread
/// count cannot change the sums.
pub fn estimate_graph_crossings(
    n_points: u32,
    trials: u64,
    spec: RngSpec,
    rule: &ColorRule,
) -> Result<GraphCrossings, McError> {
    if !(4..=MAX_GRAPH_POINTS).contains(&n_points) {
        return Err(McError::BadPointCount { n_points });
    }
    if trials == 0 {
        return Err(McError::ZeroTrials);
    }
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let sums = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK_TRIALS;
            let len = CHUNK_TRIALS.min(trials - start);
            let mut stream = SampleStream::at_point(spec, start * u64::from(n_points));
            let mut sums = (0u128, 0u128, 0u128, 0u128);
            let mut dyadic = Vec::with_capacity(n_points as usize);
            for _ in 0..len {
                dyadic.clear();
                for _ in 0..n_points {
                    dyadic.push(stream.next_point());
                }
                let points = slice_at_common_scale(&dyadic);
                let (crossings, mono) = count_crossings_by_quads(&points, rule);
                sums.0 += u128::from(crossings);
                sums.1 += u128::from(crossings) * u128::from(crossings);
                sums.2 += u128::from(mono);
                sums.3 += u128::from(mono) * u128::from(mono);
            }
            sums
        })
        .reduce(
            || (0, 0, 0, 0),
            |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3),
        );
    let (mean_crossings, se_crossings) = mean_and_se(sums.0, sums.1, trials);
    let (mean_mono_crossings, se_mono_crossings) = mean_and_se(sums.2, sums.3, trials);
    Ok(GraphCrossings {
        n_points,
        trials,
        sum_crossings: sums.0,
        sum_crossings_sq: sums.1,
        sum_mono_crossings: sums.2,
        sum_mono_crossings_sq: sums.3,
        mean_crossings,
        se_crossings,
        mean_mono_crossings,
        se_mono_crossings,
    })
}
