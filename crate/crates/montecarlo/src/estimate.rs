//! Chunk-parallel estimators for convexity and mono-crossing probabilities.

use geom_core::{classify_quad, quad_at_common_scale, slope_color, ColorRule, QuadClass};
use rayon::prelude::*;

use crate::sample::{RngSpec, SampleStream};

/// Number of samples processed per unit of parallel work.
///
/// Chunking is purely a scheduling concern: because every chunk re-opens the
/// generator at its own sample index, results do not depend on this value.
pub const CHUNK_SAMPLES: u64 = 1 << 14;

/// A binomial proportion estimate backed by its exact integer counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// Number of successes observed.
    pub hits: u64,
    /// Number of samples drawn.
    pub n: u64,
    /// Point estimate `hits / n`.
    pub p_hat: f64,
    /// Standard error `sqrt(p_hat * (1 - p_hat) / n)`.
    pub se: f64,
}

impl Estimate {
    pub fn from_counts(hits: u64, n: u64) -> Self {
        assert!(n >= 1, "an estimate needs at least one sample");
        assert!(hits <= n, "hits cannot exceed the sample count");
        let p_hat = hits as f64 / n as f64;
        let se = (p_hat * (1.0 - p_hat) / n as f64).sqrt();
        Self { hits, n, p_hat, se }
    }
}

/// Joint estimates for one sampling run: the probability that four random
/// points land in convex position, and the probability that they form a
/// mono-crossing quadrilateral under the chosen rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimates {
    pub p_convex: Estimate,
    pub p_mono: Estimate,
}

/// Estimates convexity and mono-crossing probabilities from `n` independent
/// quadruples of the sequence named by `spec`.
///
/// Deterministic in `(n, spec, rule)`; the worker-thread count and chunk
/// schedule cannot change the result.
pub fn estimate_quad_probs(n: u64, spec: RngSpec, rule: &ColorRule) -> QuadEstimates {
    assert!(n >= 1, "need at least one sample");
    let chunks = n.div_ceil(CHUNK_SAMPLES);
    let (convex, mono) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK_SAMPLES;
            let len = CHUNK_SAMPLES.min(n - start);
            let mut stream = SampleStream::at_quad(spec, start);
            let mut convex = 0u64;
            let mut mono = 0u64;
            for _ in 0..len {
                let quad = quad_at_common_scale(&stream.next_quad());
                if let QuadClass::Convex { diagonals } = classify_quad(&quad) {
                    convex += 1;
                    let [(a, b), (c, d)] = diagonals;
                    if slope_color(quad[a], quad[b], rule) == slope_color(quad[c], quad[d], rule) {
                        mono += 1;
                    }
                }
            }
            (convex, mono)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    QuadEstimates {
        p_convex: Estimate::from_counts(convex, n),
        p_mono: Estimate::from_counts(mono, n),
    }
}

/// One row of a rule sweep. The first rule passed to [`sweep_intervals`] is
/// the baseline; paired statistics compare each rule against it on the same
/// samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rule: ColorRule,
    /// Mono-crossing probability under this rule.
    pub p_mono: Estimate,
    /// Samples that are mono under this rule but not under the baseline.
    pub n10: u64,
    /// Samples that are mono under the baseline but not under this rule.
    pub n01: u64,
    /// Paired difference estimate `(n10 - n01) / n`.
    pub delta_vs_baseline: f64,
    /// Standard error of the paired difference (zero for the baseline row).
    pub paired_se: f64,
}

impl SweepRow {
    /// The paired z-score `delta / paired_se`, or zero when the paired
    /// standard error vanishes (as it does for the baseline row).
    pub fn z(&self) -> f64 {
        if self.paired_se > 0.0 {
            self.delta_vs_baseline / self.paired_se
        } else {
            0.0
        }
    }
}

#[derive(Clone)]
struct SweepAcc {
    mono: Vec<u64>,
    n10: Vec<u64>,
    n01: Vec<u64>,
}

impl SweepAcc {
    fn zero(rules: usize) -> Self {
        Self {
            mono: vec![0; rules],
            n10: vec![0; rules],
            n01: vec![0; rules],
        }
    }

    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.mono.iter_mut().zip(other.mono) {
            *a += b;
        }
        for (a, b) in self.n10.iter_mut().zip(other.n10) {
            *a += b;
        }
        for (a, b) in self.n01.iter_mut().zip(other.n01) {
            *a += b;
        }
        self
    }
}

/// Evaluates every rule on the *same* `n` quadruples (common random numbers)
/// and reports per-rule estimates plus paired comparisons against the first
/// rule, which serves as the baseline.
///
/// Sharing samples across rules makes the difference estimates far tighter
/// than independent runs: only samples on which the two rules disagree
/// contribute variance to `delta_vs_baseline`.
pub fn sweep_intervals(rules: &[ColorRule], n: u64, spec: RngSpec) -> Vec<SweepRow> {
    assert!(!rules.is_empty(), "sweep needs at least one rule (the baseline)");
    assert!(n >= 1, "need at least one sample");
    let chunks = n.div_ceil(CHUNK_SAMPLES);
    let acc = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK_SAMPLES;
            let len = CHUNK_SAMPLES.min(n - start);
            let mut stream = SampleStream::at_quad(spec, start);
            let mut acc = SweepAcc::zero(rules.len());
            let mut mono_flags = vec![false; rules.len()];
            for _ in 0..len {
                let quad = quad_at_common_scale(&stream.next_quad());
                let QuadClass::Convex { diagonals: [(a, b), (c, d)] } = classify_quad(&quad)
                else {
                    continue;
                };
                for (flag, rule) in mono_flags.iter_mut().zip(rules) {
                    *flag = slope_color(quad[a], quad[b], rule)
                        == slope_color(quad[c], quad[d], rule);
                }
                let base = mono_flags[0];
                for (idx, &flag) in mono_flags.iter().enumerate() {
                    if flag {
                        acc.mono[idx] += 1;
                        if !base {
                            acc.n10[idx] += 1;
                        }
                    } else if base {
                        acc.n01[idx] += 1;
                    }
                }
            }
            acc
        })
        .reduce(|| SweepAcc::zero(rules.len()), SweepAcc::add);

    rules
        .iter()
        .enumerate()
        .map(|(idx, rule)| {
            let n10 = acc.n10[idx];
            let n01 = acc.n01[idx];
            let nf = n as f64;
            let delta = (n10 as f64 - n01 as f64) / nf;
            let discordant_rate = (n10 + n01) as f64 / nf;
            let variance = (discordant_rate - delta * delta).max(0.0);
            SweepRow {
                rule: *rule,
                p_mono: Estimate::from_counts(acc.mono[idx], n),
                n10,
                n01,
                delta_vs_baseline: delta,
                paired_se: (variance / nf).sqrt(),
            }
        })
        .collect()
}
