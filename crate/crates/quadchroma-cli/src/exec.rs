//! Subcommand execution and exit-code policy.

use std::time::Instant;

use geom_core::{ColorRule, SlopeBound};
use lattice_enum::{
    count_box, count_box_ie, count_grid, quadruples_for_points, GridBox, GridMethod,
    LatticeError,
};
use montecarlo::{
    estimate_graph_crossings, estimate_quad_probs, sweep_intervals, Estimate, RngSpec, SweepRow,
};
use num_rational::Ratio;
use serde_json::Value;
use thiserror::Error;

use crate::args::{
    BoxMethod, Cli, Command, ExactBoxArgs, ExactGridArgs, GridMethodArg, McArgs, OutputFormat,
    SweepArgs,
};
use crate::report::{int_value, rational_value, real_value, RunReport};

/// Estimated quadruple tests above which a run must be confirmed with --yes.
const CONFIRM_THRESHOLD: u128 = 10_000_000_000;
/// Estimated quadruple tests above which a cost note is printed to stderr.
const NOTE_THRESHOLD: u128 = 100_000_000;

const P_CONVEX_REF: f64 = 25.0 / 36.0;
const P_MONO_REF: f64 = 0.25;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags, rules, or input files. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Refused a run that exceeds a resource guard. Exit code 3.
    #[error("{0}")]
    Guard(String),
    /// A cross-checked internal identity failed. Exit code 4.
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn from_lattice(error: LatticeError) -> CliError {
    match error {
        LatticeError::BadBox { .. } | LatticeError::BadGrid { .. } => {
            CliError::Usage(error.to_string())
        }
        LatticeError::TooManyPoints { .. } => CliError::Guard(error.to_string()),
    }
}

fn parse_rule(text: &str) -> Result<ColorRule, CliError> {
    text.parse()
        .map_err(|error| usage(format!("invalid rule {text:?}: {error}")))
}

/// Enforces the large-run confirmation guard and prints the cost estimate
/// for anything non-trivial.
fn guard_cost(estimated_tests: u128, confirmed: bool) -> Result<(), CliError> {
    if estimated_tests > CONFIRM_THRESHOLD && !confirmed {
        return Err(CliError::Guard(format!(
            "estimated {estimated_tests} quadruple tests exceed the {CONFIRM_THRESHOLD} \
             confirmation threshold; re-run with --yes to proceed"
        )));
    }
    if estimated_tests > NOTE_THRESHOLD {
        eprintln!("note: estimated {estimated_tests} quadruple tests");
    }
    Ok(())
}

/// Applies --threads / QUADCHROMA_THREADS before any parallel work runs.
fn init_workers(flag: Option<usize>) -> Result<(), CliError> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("QUADCHROMA_THREADS") {
            Ok(text) => Some(text.trim().parse::<usize>().map_err(|_| {
                usage(format!(
                    "QUADCHROMA_THREADS must be a positive integer, got {text:?}"
                ))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = requested {
        if n == 0 {
            return Err(usage("thread count must be at least 1"));
        }
        // Ignore the error: the global pool can already exist in-process
        // (e.g. under tests), and results are thread-count independent anyway.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs one parsed command line to completion, printing its output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    init_workers(cli.threads)?;
    match cli.command {
        Command::ExactBox(args) => exact_box(args, cli.yes),
        Command::ExactGrid(args) => exact_grid(args, cli.yes),
        Command::Mc(args) => mc(args, cli.yes),
        Command::Sweep(args) => sweep(args, cli.yes),
    }
}

fn print_report(report: &RunReport) {
    print!("{}", report.to_json());
}

fn estimate_json(estimate: &Estimate) -> Value {
    serde_json::json!({
        "hits": estimate.hits.to_string(),
        "n": estimate.n.to_string(),
        "p_hat": estimate.p_hat,
        "se": estimate.se,
    })
}

fn z_score(p_hat: f64, reference: f64, se: f64) -> f64 {
    if se > 0.0 {
        (p_hat - reference) / se
    } else {
        0.0
    }
}

fn exact_box(args: ExactBoxArgs, confirmed: bool) -> Result<(), CliError> {
    let rule = parse_rule(&args.rule)?;
    let gbox = GridBox::new(args.w, args.h).map_err(from_lattice)?;
    let base_tests = quadruples_for_points(gbox.points());
    let estimated = match args.method {
        BoxMethod::Direct => base_tests,
        // Inclusion-exclusion evaluates nine contained-in-box counts.
        BoxMethod::Ie => 9 * base_tests,
    };
    guard_cost(estimated, confirmed)?;
    if args.breakdown && args.method == BoxMethod::Ie {
        return Err(usage(
            "--breakdown requires --method direct; inclusion-exclusion computes the total only",
        ));
    }

    let mut report = RunReport::new("exact-box");
    report.parameters.insert("w".into(), args.w.into());
    report.parameters.insert("h".into(), args.h.into());
    report.parameters.insert("rule".into(), rule.to_string().into());
    report.parameters.insert(
        "method".into(),
        match args.method {
            BoxMethod::Direct => "direct",
            BoxMethod::Ie => "ie",
        }
        .into(),
    );
    report
        .parameters
        .insert("breakdown".into(), args.breakdown.into());

    let started = Instant::now();
    let a_total = match args.method {
        BoxMethod::Direct => {
            let counts = count_box(gbox, &rule).map_err(from_lattice)?;
            report
                .results
                .insert("convex_total".into(), int_value(counts.convex_total));
            if args.breakdown {
                let corners: Vec<Value> =
                    counts.a_by_corners.iter().map(int_value).collect();
                report
                    .results
                    .insert("a_by_corners".into(), Value::Array(corners));
                report.results.insert("c2".into(), int_value(counts.c2));
                report.results.insert("d2".into(), int_value(counts.d2));
                report.results.insert("s2".into(), int_value(counts.s2));
                report.results.insert("tlbr".into(), int_value(counts.tlbr));
                let breakdown_sum: u128 = counts.a_by_corners.iter().sum();
                if breakdown_sum != counts.a_total {
                    return Err(CliError::Internal(format!(
                        "corner breakdown sums to {breakdown_sum}, total is {}",
                        counts.a_total
                    )));
                }
            }
            counts.a_total
        }
        BoxMethod::Ie => {
            let via_ie = count_box_ie(gbox, &rule).map_err(from_lattice)?;
            // Cheap boxes are cross-checked against direct enumeration.
            if gbox.w() <= 6 && gbox.h() <= 6 {
                let direct = count_box(gbox, &rule).map_err(from_lattice)?.a_total;
                if direct != via_ie {
                    return Err(CliError::Internal(format!(
                        "inclusion-exclusion total {via_ie} != direct total {direct} \
                         for {}x{}",
                        gbox.w(),
                        gbox.h()
                    )));
                }
                report
                    .results
                    .insert("direct_cross_check".into(), "verified".into());
            }
            via_ie
        }
    };
    report.wall_time_s = started.elapsed().as_secs_f64();

    report.results.insert("a_total".into(), int_value(a_total));
    let w2h2 = (args.w as f64).powi(2) * (args.h as f64).powi(2);
    report
        .results
        .insert("ratio_a_total".into(), real_value(a_total as f64 / w2h2));

    let asymptotic = analytic::asymptotic_box(args.w, args.h);
    report
        .references
        .insert("a_leading_term".into(), real_value(asymptotic.a));
    report
        .references
        .insert("ratio_a_total_limit".into(), real_value(1.5));
    if args.breakdown {
        report
            .references
            .insert("ratio_a0_limit".into(), real_value(0.5));
        report
            .references
            .insert("ratio_a1_limit".into(), real_value(2.0 / 3.0));
        report
            .references
            .insert("ratio_a2_limit".into(), real_value(1.0 / 3.0));
        report
            .references
            .insert("ratio_c2_limit".into(), real_value(1.0 / 12.0));
        report
            .references
            .insert("ratio_d2_limit".into(), real_value(1.0 / 12.0));
    }
    print_report(&report);
    Ok(())
}

fn exact_grid(args: ExactGridArgs, confirmed: bool) -> Result<(), CliError> {
    let rule = parse_rule(&args.rule)?;
    if args.m < 1 {
        return Err(from_lattice(LatticeError::BadGrid { m: args.m }));
    }
    let side = (args.m + 1) as u64;
    let estimated = match args.method {
        GridMethodArg::Direct => quadruples_for_points(side * side),
        GridMethodArg::PerBox => {
            let mut total: u128 = 0;
            for w in 1..=args.m as u64 {
                for h in 1..=args.m as u64 {
                    total += quadruples_for_points((w + 1) * (h + 1));
                }
            }
            total
        }
    };
    guard_cost(estimated, confirmed)?;

    let mut report = RunReport::new("exact-grid");
    report.parameters.insert("m".into(), args.m.into());
    report.parameters.insert("rule".into(), rule.to_string().into());
    report.parameters.insert(
        "method".into(),
        match args.method {
            GridMethodArg::Direct => "direct",
            GridMethodArg::PerBox => "per-box",
        }
        .into(),
    );

    let started = Instant::now();
    let method = match args.method {
        GridMethodArg::Direct => GridMethod::Direct,
        GridMethodArg::PerBox => GridMethod::PerBox,
    };
    let counts = count_grid(args.m, &rule, method).map_err(from_lattice)?;
    if args.method == GridMethodArg::PerBox && args.m <= 4 {
        let direct = count_grid(args.m, &rule, GridMethod::Direct).map_err(from_lattice)?;
        if direct != counts {
            return Err(CliError::Internal(format!(
                "per-box totals {counts:?} != direct totals {direct:?} for m={}",
                args.m
            )));
        }
        report
            .results
            .insert("direct_cross_check".into(), "verified".into());
    }
    report.wall_time_s = started.elapsed().as_secs_f64();

    report
        .results
        .insert("total_quadruples".into(), int_value(counts.total_quadruples));
    report.results.insert("convex".into(), int_value(counts.convex));
    report.results.insert("mono".into(), int_value(counts.mono));
    let total = counts.total_quadruples as f64;
    report.results.insert(
        "ratio_mono".into(),
        real_value(counts.mono as f64 / total),
    );
    report.results.insert(
        "ratio_convex".into(),
        real_value(counts.convex as f64 / total),
    );

    report
        .references
        .insert("ratio_mono_limit".into(), Value::String("1/4".into()));
    report
        .references
        .insert("ratio_convex_limit".into(), Value::String("25/36".into()));
    let m = i128::from(args.m);
    report.references.insert(
        "mono_leading_term".into(),
        rational_value(Ratio::new(m.pow(8), 96)),
    );
    report.references.insert(
        "mono_leading_term_f64".into(),
        real_value(analytic::asymptotic_grid(args.m)),
    );
    print_report(&report);
    Ok(())
}

fn mc(args: McArgs, confirmed: bool) -> Result<(), CliError> {
    let rule = parse_rule(&args.rule)?;
    let spec = RngSpec::new(args.seed, args.stream);
    let is_chi = rule == ColorRule::chi_slope();

    let mut report = RunReport::new("mc");
    report
        .parameters
        .insert("samples".into(), args.samples.into());
    report.parameters.insert("seed".into(), args.seed.into());
    report.parameters.insert("stream".into(), args.stream.into());
    report.parameters.insert("rule".into(), rule.to_string().into());

    match args.n_points {
        None => {
            guard_cost(u128::from(args.samples), confirmed)?;
            let started = Instant::now();
            let estimates = estimate_quad_probs(args.samples, spec, &rule);
            report.wall_time_s = started.elapsed().as_secs_f64();

            report
                .results
                .insert("convex".into(), estimate_json(&estimates.p_convex));
            report
                .results
                .insert("mono".into(), estimate_json(&estimates.p_mono));

            report
                .references
                .insert("p_convex".into(), Value::String("25/36".into()));
            report
                .references
                .insert("p_convex_f64".into(), real_value(P_CONVEX_REF));
            report.references.insert(
                "z_convex".into(),
                real_value(z_score(
                    estimates.p_convex.p_hat,
                    P_CONVEX_REF,
                    estimates.p_convex.se,
                )),
            );
            if is_chi {
                report
                    .references
                    .insert("p_mono".into(), Value::String("1/4".into()));
                report.references.insert(
                    "z_mono".into(),
                    real_value(z_score(
                        estimates.p_mono.p_hat,
                        P_MONO_REF,
                        estimates.p_mono.se,
                    )),
                );
            }
        }
        Some(n_points) => {
            let trials = args.trials.unwrap_or(args.samples);
            let per_trial = quadruples_for_points(u64::from(n_points));
            guard_cost(u128::from(trials) * per_trial, confirmed)?;
            report.parameters.insert("n_points".into(), n_points.into());
            report.parameters.insert("trials".into(), trials.into());

            let started = Instant::now();
            let graph = estimate_graph_crossings(n_points, trials, spec, &rule)
                .map_err(|error| CliError::Guard(error.to_string()))?;
            report.wall_time_s = started.elapsed().as_secs_f64();

            report.results.insert(
                "crossings".into(),
                serde_json::json!({
                    "sum": graph.sum_crossings.to_string(),
                    "sum_sq": graph.sum_crossings_sq.to_string(),
                    "mean": graph.mean_crossings,
                    "se": graph.se_crossings,
                }),
            );
            report.results.insert(
                "mono_crossings".into(),
                serde_json::json!({
                    "sum": graph.sum_mono_crossings.to_string(),
                    "sum_sq": graph.sum_mono_crossings_sq.to_string(),
                    "mean": graph.mean_mono_crossings,
                    "se": graph.se_mono_crossings,
                }),
            );

            let subsets = per_trial as f64;
            let expected_crossings = subsets * P_CONVEX_REF;
            report.references.insert(
                "expected_crossings".into(),
                real_value(expected_crossings),
            );
            report.references.insert(
                "z_crossings".into(),
                real_value(z_score(
                    graph.mean_crossings,
                    expected_crossings,
                    graph.se_crossings,
                )),
            );
            if is_chi {
                let expected_mono = subsets * P_MONO_REF;
                report
                    .references
                    .insert("expected_mono_crossings".into(), real_value(expected_mono));
                report.references.insert(
                    "z_mono_crossings".into(),
                    real_value(z_score(
                        graph.mean_mono_crossings,
                        expected_mono,
                        graph.se_mono_crossings,
                    )),
                );
            }
        }
    }
    print_report(&report);
    Ok(())
}

/// Parses one finite rational endpoint of a --grid range by round-tripping
/// it through the rule grammar, so both accept exactly the same scalars.
fn parse_finite_endpoint(text: &str) -> Result<Ratio<i64>, CliError> {
    let probe: ColorRule = format!("blue=[{text},{text}]")
        .parse()
        .map_err(|error| usage(format!("--grid endpoint {text:?}: {error}")))?;
    match probe.lo() {
        SlopeBound::Finite(value) => Ok(value),
        _ => Err(usage(format!(
            "--grid endpoint {text:?}: endpoints must be finite"
        ))),
    }
}

/// Builds the rule list for `--grid lo:hi:steps`: the default rule as
/// baseline, then `blue=[-inf,t]` for each of the steps+1 endpoints t.
fn parse_grid_rules(spec: &str) -> Result<Vec<ColorRule>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo_text, hi_text, steps_text] = parts.as_slice() else {
        return Err(usage(format!(
            "--grid expects lo:hi:steps, got {spec:?}"
        )));
    };
    let lo = parse_finite_endpoint(lo_text)?;
    let hi = parse_finite_endpoint(hi_text)?;
    let steps: u32 = steps_text
        .parse()
        .map_err(|_| usage(format!("--grid steps must be a positive integer, got {steps_text:?}")))?;
    if steps == 0 {
        return Err(usage("--grid needs at least one step"));
    }
    if hi < lo {
        return Err(usage(format!(
            "--grid range is reversed: {lo} > {hi}"
        )));
    }
    let mut rules = vec![ColorRule::chi_slope()];
    let span = hi - lo;
    for index in 0..=steps {
        let t = lo + span * Ratio::new(i64::from(index), i64::from(steps));
        let rule_text = format!("blue=[-inf,{t}]");
        rules.push(rule_text.parse().map_err(|error| {
            CliError::Internal(format!("generated rule {rule_text:?} failed to parse: {error}"))
        })?);
    }
    Ok(rules)
}

fn parse_rules_file(path: &std::path::Path) -> Result<Vec<ColorRule>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|error| usage(format!("cannot read rules file {}: {error}", path.display())))?;
    let mut rules = Vec::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rule = line.parse().map_err(|error| {
            usage(format!(
                "rules file {}, line {}: invalid rule {line:?}: {error}",
                path.display(),
                index + 1
            ))
        })?;
        rules.push(rule);
    }
    if rules.is_empty() {
        return Err(usage(format!(
            "rules file {} contains no rules",
            path.display()
        )));
    }
    Ok(rules)
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["rule", "p_mono", "se", "delta_vs_baseline", "paired_se", "z"])
        .expect("csv header");
    for row in rows {
        writer
            .write_record([
                row.rule.to_string(),
                row.p_mono.p_hat.to_string(),
                row.p_mono.se.to_string(),
                row.delta_vs_baseline.to_string(),
                row.paired_se.to_string(),
                row.z().to_string(),
            ])
            .expect("csv row");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv utf8")
}

fn sweep(args: SweepArgs, confirmed: bool) -> Result<(), CliError> {
    let (rules, source) = match (&args.rules_file, &args.grid) {
        (Some(path), None) => (parse_rules_file(path)?, format!("file {}", path.display())),
        (None, Some(spec)) => (parse_grid_rules(spec)?, format!("grid {spec}")),
        // clap's argument group guarantees exactly one source.
        _ => unreachable!("clap enforces exactly one rule source"),
    };
    guard_cost(u128::from(args.samples), confirmed)?;
    let spec = RngSpec::new(args.seed, args.stream);

    let started = Instant::now();
    let rows = sweep_intervals(&rules, args.samples, spec);
    let elapsed = started.elapsed().as_secs_f64();

    let payload = match args.format {
        OutputFormat::Csv => sweep_csv(&rows),
        OutputFormat::Json => {
            let mut report = RunReport::new("sweep");
            report
                .parameters
                .insert("samples".into(), args.samples.into());
            report.parameters.insert("seed".into(), args.seed.into());
            report.parameters.insert("stream".into(), args.stream.into());
            report.parameters.insert("rules".into(), source.into());
            report
                .parameters
                .insert("n_rules".into(), (rules.len() as u64).into());
            report.wall_time_s = elapsed;
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "rule": row.rule.to_string(),
                        "mono_hits": row.p_mono.hits.to_string(),
                        "n": row.p_mono.n.to_string(),
                        "p_mono": row.p_mono.p_hat,
                        "se": row.p_mono.se,
                        "n10": row.n10.to_string(),
                        "n01": row.n01.to_string(),
                        "delta_vs_baseline": row.delta_vs_baseline,
                        "paired_se": row.paired_se,
                        "z": row.z(),
                    })
                })
                .collect();
            report.results.insert("rows".into(), Value::Array(json_rows));
            if rows[0].rule == ColorRule::chi_slope() {
                report
                    .references
                    .insert("baseline_p_mono".into(), Value::String("1/4".into()));
            }
            report.to_json()
        }
    };

    match &args.out {
        Some(path) => {
            std::fs::write(path, payload).map_err(|error| {
                usage(format!("cannot write {}: {error}", path.display()))
            })?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{payload}"),
    }
    Ok(())
}
