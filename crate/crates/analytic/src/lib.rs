//! Exact closed-form reference values and leading-order asymptotic
//! predictions for the enumeration and Monte Carlo layers.
//!
//! Everything here is either an exact rational (`Ratio<i128>`, reduced) or an
//! explicitly approximate `f64` leading term. No exact value ever passes
//! through floating point.

use num_integer::binomial;
use num_rational::Ratio;
use thiserror::Error;

/// Exact rational number in reduced form.
pub type Exact = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("n = {0} outside the supported range {1}..={2}")]
    OutOfRange(u32, u32, u32),
}

/// Probability that `n` uniform points in a square are in convex position:
/// `(C(2n−2, n−1) / n!)²`, exact.
///
/// Supported for `3 ≤ n ≤ 20` (the largest `n` whose squared numerator fits
/// `i128` comfortably).
pub fn valtr_probability(n: u32) -> Result<Exact, AnalyticError> {
    if !(3..=20).contains(&n) {
        return Err(AnalyticError::OutOfRange(n, 3, 20));
    }
    let n = i128::from(n);
    let central = binomial(2 * n - 2, n - 1);
    let factorial: i128 = (2..=n).product();
    let ratio = Exact::new(central, factorial);
    Ok(ratio * ratio)
}

/// The constant bundle relating monochromatic and total crossings for four
/// random points in a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoConstants {
    /// Probability that four uniform points yield a same-colored crossing
    /// under the slope-sign rule: 1/4.
    pub p_mono: Exact,
    /// Probability of convex position (any crossing at all): 25/36.
    pub p_convex: Exact,
    /// Fraction of crossings that are monochromatic in expectation:
    /// (1/4)/(25/36) = 9/25 = 18/50.
    pub fraction: Exact,
    /// Improvement over the trivial 1/2 bound: 1/2 − 9/25 = 7/50.
    pub savings: Exact,
}

/// Derives the constant bundle by exact arithmetic (nothing is hard-coded
/// beyond 1/4 and the convex-position probability).
pub fn mono_given_any_constants() -> MonoConstants {
    let p_mono = Exact::new(1, 4);
    let p_convex = valtr_probability(4).expect("4 is in range");
    let fraction = p_mono / p_convex;
    let savings = Exact::new(1, 2) - fraction;
    MonoConstants { p_mono, p_convex, fraction, savings }
}

/// Leading-order predictions for the census of a `w × h` bounding box.
/// These are references only; exact counts come from enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBox {
    /// Monochromatic total: (3/2)·w²h².
    pub a: f64,
    /// Zero-corner class: (1/2)·w²h².
    pub a0: f64,
    /// One-corner class: (2/3)·w²h².
    pub a1: f64,
    /// Two-corner class: (1/3)·w²h².
    pub a2: f64,
    /// Opposite-corner, straddling split: w²h²/12.
    pub c2: f64,
    /// Opposite-corner, same-side split: w²h²/12.
    pub d2: f64,
}

pub fn asymptotic_box(w: i64, h: i64) -> AsymptoticBox {
    assert!(w >= 1 && h >= 1, "box sides must be positive, got {w}×{h}");
    let wh2 = (w as f64).powi(2) * (h as f64).powi(2);
    AsymptoticBox {
        a: 1.5 * wh2,
        a0: 0.5 * wh2,
        a1: 2.0 / 3.0 * wh2,
        a2: wh2 / 3.0,
        c2: wh2 / 12.0,
        d2: wh2 / 12.0,
    }
}

/// Leading-order prediction for the number of monochromatic-crossing
/// quadruples on the full `(m+1)×(m+1)` grid: m⁸/96.
pub fn asymptotic_grid(m: i64) -> f64 {
    assert!(m >= 1, "grid size must be positive, got {m}");
    (m as f64).powi(8) / 96.0
}

/// Exact closed forms of the power sums over `i = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumIdentities {
    /// Σ i = n(n+1)/2
    pub sum_i: i128,
    /// Σ i² = n(n+1)(2n+1)/6
    pub sum_i_sq: i128,
    /// Σ i³ = (n(n+1)/2)²
    pub sum_i_cu: i128,
    /// Σ i(n−i) = (n³−n)/6
    pub sum_i_n_minus_i: i128,
    /// Σ i²(n−i) = (n⁴−n²)/12
    pub sum_i_sq_n_minus_i: i128,
}

pub fn sum_identities(n: i64) -> SumIdentities {
    assert!(n >= 1, "n must be positive, got {n}");
    let n = i128::from(n);
    let tri = n * (n + 1) / 2;
    SumIdentities {
        sum_i: tri,
        sum_i_sq: n * (n + 1) * (2 * n + 1) / 6,
        sum_i_cu: tri * tri,
        sum_i_n_minus_i: (n * n * n - n) / 6,
        sum_i_sq_n_minus_i: (n * n * n * n - n * n) / 12,
    }
}
