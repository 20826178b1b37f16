//! Statistical and structural consistency of the estimators.

use geom_core::{
    classify_quad, quad_at_common_scale, slice_at_common_scale, ColorRule, LatticePoint,
    QuadClass,
};
use montecarlo::{
    count_crossings_by_quads, count_crossings_by_segment_pairs, estimate_graph_crossings,
    estimate_quad_probs, sweep_intervals, McError, RngSpec, SampleStream,
};

const Q_CONVEX: f64 = 25.0 / 36.0;

fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint { x, y }
}

#[test]
fn mono_crossings_are_a_subset_of_convex_quadruples() {
    let est = estimate_quad_probs(50_000, RngSpec::new(1, 0), &ColorRule::chi_slope());
    assert!(est.p_mono.hits <= est.p_convex.hits);
    assert!(est.p_mono.hits > 0, "the default rule should produce some mono crossings");
}

#[test]
fn all_blue_rule_makes_every_crossing_mono() {
    let all_blue: ColorRule = "blue=[-inf,inf] vertical=blue".parse().unwrap();
    let est = estimate_quad_probs(50_000, RngSpec::new(2, 0), &all_blue);
    assert_eq!(est.p_mono.hits, est.p_convex.hits);
}

/// Swapping the two colors everywhere cannot change whether a crossing is
/// monochromatic, so the complementary rule must reproduce the counts.
#[test]
fn complement_rule_preserves_mono_counts() {
    let chi = ColorRule::chi_slope();
    let complement: ColorRule = "blue=(0,inf] vertical=red".parse().unwrap();
    let spec = RngSpec::new(3, 1);
    let a = estimate_quad_probs(50_000, spec, &chi);
    let b = estimate_quad_probs(50_000, spec, &complement);
    assert_eq!(a.p_convex, b.p_convex);
    assert_eq!(a.p_mono.hits, b.p_mono.hits);
}

/// Large-sample estimates must sit near their known limits: four uniform
/// points are convex with probability 25/36, and under the default rule a
/// quarter of all quadruples are mono-crossing.
#[test]
fn estimates_agree_with_known_limits() {
    let est = estimate_quad_probs(1_000_000, RngSpec::new(42, 0), &ColorRule::chi_slope());
    assert!(
        (est.p_convex.p_hat - Q_CONVEX).abs() <= 5.0 * est.p_convex.se,
        "p_convex = {} vs {Q_CONVEX}",
        est.p_convex.p_hat
    );
    assert!(
        (est.p_mono.p_hat - 0.25).abs() <= 5.0 * est.p_mono.se,
        "p_mono = {}",
        est.p_mono.p_hat
    );
}

#[test]
fn sweep_baseline_row_agrees_with_plain_estimate() {
    let chi = ColorRule::chi_slope();
    let band: ColorRule = "blue=[-1/2,1/2]".parse().unwrap();
    let spec = RngSpec::new(42, 0);
    let rows = sweep_intervals(&[chi, band], 200_000, spec);
    let plain = estimate_quad_probs(200_000, spec, &chi);
    assert_eq!(rows[0].p_mono, plain.p_mono);
    assert_eq!(rows[0].n10, 0);
    assert_eq!(rows[0].n01, 0);
    assert_eq!(rows[0].delta_vs_baseline, 0.0);
    assert_eq!(rows[0].paired_se, 0.0);
    assert_eq!(rows[0].z(), 0.0);
}

/// Per-rule hits decompose exactly through the paired counts:
/// `hits = baseline_hits + n10 - n01`.
#[test]
fn sweep_counts_decompose_against_the_baseline()  {
    let rules: Vec<ColorRule> = [
        "blue=[-inf,0]",
        "blue=[-1,1]",
        "blue=[-inf,-1/2]",
        "blue=(0,inf] vertical=red",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    let rows = sweep_intervals(&rules, 150_000, RngSpec::new(5, 0));
    let base_hits = rows[0].p_mono.hits;
    for row in &rows {
        assert_eq!(row.p_mono.hits, base_hits + row.n10 - row.n01, "rule {}", row.rule);
        assert!(row.n10 + row.n01 <= row.p_mono.n);
    }
}

/// Toggling one interval endpoint between open and closed can only affect
/// samples with a diagonal slope exactly on that endpoint; at this
/// resolution such boundary hits are essentially impossible, so the two
/// rules must be sample-for-sample identical.
#[test]
fn endpoint_toggle_only_moves_boundary_samples() {
    let closed: ColorRule = "blue=[-inf,0] vertical=blue".parse().unwrap();
    let open: ColorRule = "blue=[-inf,0) vertical=blue".parse().unwrap();
    let spec = RngSpec::new(8, 0);
    let n = 50_000u64;
    let rows = sweep_intervals(&[closed, open], n, spec);

    let mut boundary_hits = 0u64;
    let mut stream = SampleStream::new(spec);
    for _ in 0..n {
        let quad = quad_at_common_scale(&stream.next_quad());
        if let QuadClass::Convex { diagonals } = classify_quad(&quad) {
            for (a, b) in diagonals {
                if quad[a].y == quad[b].y {
                    boundary_hits += 1;
                    break;
                }
            }
        }
    }
    assert!(
        rows[1].n10 + rows[1].n01 <= boundary_hits,
        "discordant = {} but only {} samples touch the toggled endpoint",
        rows[1].n10 + rows[1].n01,
        boundary_hits
    );
    assert_eq!(boundary_hits, 0, "a horizontal diagonal at 53-bit resolution");
    assert_eq!(rows[1].delta_vs_baseline, 0.0);
}

#[test]
fn graph_routes_agree_on_random_point_sets() {
    let chi = ColorRule::chi_slope();
    let band: ColorRule = "blue=(-1/3,3] vertical=red".parse().unwrap();
    for set in 0..30u64 {
        let mut stream = SampleStream::at_point(RngSpec::new(13, 0), set * 8);
        let dyadic: Vec<_> = (0..8).map(|_| stream.next_point()).collect();
        let points = slice_at_common_scale(&dyadic);
        for rule in [&chi, &band] {
            assert_eq!(
                count_crossings_by_quads(&points, rule),
                count_crossings_by_segment_pairs(&points, rule),
                "set {set}"
            );
        }
    }
}

/// The two routes must also agree on degenerate inputs: collinear triples,
/// duplicate points, and full lattice grids with many aligned subsets.
#[test]
fn graph_routes_agree_on_degenerate_point_sets() {
    let chi = ColorRule::chi_slope();
    let cases: Vec<Vec<LatticePoint>> = vec![
        // Four collinear points: no crossings at all.
        vec![pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3)],
        // A duplicated point among otherwise generic ones.
        vec![pt(0, 0), pt(4, 1), pt(1, 3), pt(0, 0), pt(3, 4)],
        // The full 3-by-3 grid: many collinear triples.
        (0..3).flat_map(|x| (0..3).map(move |y| pt(x, y))).collect(),
        // Collinear triple plus two generic points.
        vec![pt(0, 0), pt(2, 0), pt(4, 0), pt(1, 3), pt(3, -2)],
    ];
    for (index, points) in cases.iter().enumerate() {
        assert_eq!(
            count_crossings_by_quads(points, &chi),
            count_crossings_by_segment_pairs(points, &chi),
            "case {index}"
        );
    }
}

#[test]
fn graph_crossings_on_hand_checked_sets() {
    let chi = ColorRule::chi_slope();
    // Unit square: one crossing; its diagonals have slopes +1 and -1, which
    // the default rule colors differently, so no mono crossing.
    let square = vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)];
    assert_eq!(count_crossings_by_quads(&square, &chi), (1, 0));
    // Stretch the square so both diagonals have negative slope: now mono.
    let crossing_mono = vec![pt(0, 3), pt(4, 0), pt(5, 2), pt(1, 1)];
    let (crossings, mono) = count_crossings_by_quads(&crossing_mono, &chi);
    assert_eq!(crossings, 1);
    assert_eq!(mono, count_crossings_by_segment_pairs(&crossing_mono, &chi).1);
    // A triangle with an interior point has no crossing.
    let wedge = vec![pt(0, 0), pt(6, 0), pt(3, 5), pt(3, 2)];
    assert_eq!(count_crossings_by_quads(&wedge, &chi), (0, 0));
}

/// Per-trial expectations are exact: a four-point trial crosses with
/// probability 25/36, and the expected crossing count on `n` points is
/// `C(n, 4) * 25/36` by linearity.
#[test]
fn graph_estimator_matches_expectations() {
    let chi = ColorRule::chi_slope();
    let four = estimate_graph_crossings(4, 50_000, RngSpec::new(11, 0), &chi).unwrap();
    assert!((four.mean_crossings - Q_CONVEX).abs() <= 5.0 * four.se_crossings);
    assert!((four.mean_mono_crossings - 0.25).abs() <= 5.0 * four.se_mono_crossings);

    let six = estimate_graph_crossings(6, 5_000, RngSpec::new(12, 0), &chi).unwrap();
    let expected = 15.0 * Q_CONVEX;
    assert!(
        (six.mean_crossings - expected).abs() <= 5.0 * six.se_crossings,
        "mean = {}, expected {expected}",
        six.mean_crossings
    );
    let expected_mono = 15.0 * 0.25;
    assert!(
        (six.mean_mono_crossings - expected_mono).abs() <= 5.0 * six.se_mono_crossings,
        "mono mean = {}, expected {expected_mono}",
        six.mean_mono_crossings
    );
}

#[test]
fn graph_estimator_guards_its_inputs() {
    let chi = ColorRule::chi_slope();
    let spec = RngSpec::new(0, 0);
    assert_eq!(
        estimate_graph_crossings(3, 10, spec, &chi).unwrap_err(),
        McError::BadPointCount { n_points: 3 }
    );
    assert_eq!(
        estimate_graph_crossings(65, 10, spec, &chi).unwrap_err(),
        McError::BadPointCount { n_points: 65 }
    );
    assert_eq!(
        estimate_graph_crossings(5, 0, spec, &chi).unwrap_err(),
        McError::ZeroTrials
    );
}

#[test]
fn single_trial_reports_zero_standard_error() {
    let chi = ColorRule::chi_slope();
    let one = estimate_graph_crossings(5, 1, RngSpec::new(4, 0), &chi).unwrap();
    assert_eq!(one.se_crossings, 0.0);
    assert_eq!(one.se_mono_crossings, 0.0);
    assert_eq!(one.mean_crossings, one.sum_crossings as f64);
}
