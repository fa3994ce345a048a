//! Command-line surface: point estimation, arc projection, sampling,
//! Monte Carlo risk curves, dominance reports, and canned experiment
//! reproductions, all emitting plain text or CSV.
//!
//! Exit codes: 0 on success, 2 on usage errors (malformed flags), 3 on
//! runtime failures (unreadable input, invalid configuration, numeric
//! degeneracies).

use std::error::Error;
use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use circ_trunc::dist::{BuiltModel, DistributionSpec};
use circ_trunc::estimators::{
    cylinder_location_mle, sphere_longitude_mle, torus_location_mle, CircularSample,
};
use circ_trunc::risk::{
    dominance_report, figure1_config, figure2_bounds, figure2_config, named_estimate,
    parse_csv, problem_estimate, render_csv, risk_curves, ExperimentConfig, PointVerdict,
    ProblemSpec, RiskCurve,
};
use circ_trunc::{Angle, Arc};

type CliResult = Result<(), Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "circ-trunc",
    about = "Circular location estimation on restricted parameter arcs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate a location from a CSV of observations.
    ///
    /// Circular estimators read one angle (radians) per line. The shape
    /// estimators read pairs: torus-mle `component,angle` (with
    /// --concentrations), sphere-longitude-mle `colatitude,longitude`,
    /// cylinder-mle `x,angle`. Blank lines and lines starting with '#' are
    /// skipped.
    Estimate {
        /// CSV of observations ('-' reads standard input).
        #[arg(long, short = 'i', default_value = "-")]
        input: String,
        /// Estimator name: mean, median, l1, spatial-median, wilcoxon (and
        /// their aliases), const:<radians>, torus-mle,
        /// sphere-longitude-mle, cylinder-mle.
        #[arg(long, short = 'e', conflicts_with = "problem")]
        estimator: Option<String>,
        /// JSON problem description with distribution, optional omega1
        /// {lo, hi}, estimator, and optional group ("G1"/"G3") with b —
        /// required for model- or constraint-aware estimators (ad, rml,
        /// project:<base>, reflect:<base>).
        #[arg(long, short = 'p')]
        problem: Option<String>,
        /// Per-component concentrations for torus-mle, comma-separated.
        #[arg(long, value_delimiter = ',')]
        concentrations: Vec<f64>,
    },
    /// Project an angle onto a closed arc (nearest point; the tie at the
    /// antipode of the midpoint resolves to the lower endpoint).
    Project {
        /// Angle to project, in radians.
        #[arg(long)]
        angle: f64,
        /// Closed arc as LO:HI, both in radians within [0, 2*pi).
        #[arg(long)]
        arc: String,
    },
    /// Draw from a distribution described in JSON and print CSV.
    ///
    /// Circular families print one angle per line; the sphere family
    /// prints `colatitude,longitude` and the cylinder family `x,angle`.
    Sample {
        /// Distribution JSON ('-' reads standard input).
        #[arg(long, short = 'm')]
        model: String,
        /// Number of draws.
        #[arg(long, short = 'n')]
        count: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate Monte Carlo risk curves for an experiment JSON and print
    /// CSV (header `estimator,nu,risk,mc_se,replicates,redraws`).
    RiskCurve {
        /// Experiment JSON ('-' reads standard input).
        #[arg(long, short = 'c')]
        config: String,
    },
    /// Compare risk-curve CSVs pairwise and print a dominance report.
    Dominance {
        /// Risk-curve CSV files; all curves must share one location grid.
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// Re-run a pinned experiment and print its CSV.
    Repro {
        /// Which pinned experiment to run.
        #[arg(value_enum)]
        figure: Figure,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    /// Antipodal-mixture counterexample: unconditional projection of the
    /// mean direction against the mean direction.
    Figure1,
    /// Constraint-length sweep: mean direction, restricted maximum
    /// likelihood, and the reflection improvement, one CSV block per
    /// constraint length (preceded by a `# b=` comment line).
    Figure2,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        // A closed output pipe (e.g. `| head`) is not a failure.
        if err
            .downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
        {
            return;
        }
        eprintln!("error: {err}");
        std::process::exit(3);
    }
}

fn run(cli: Cli) -> CliResult {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Estimate {
            input,
            estimator,
            problem,
            concentrations,
        } => estimate(
            &mut out,
            &input,
            estimator.as_deref(),
            problem.as_deref(),
            &concentrations,
        ),
        Command::Project { angle, arc } => project(&mut out, angle, &arc),
        Command::Sample { model, count, seed } => sample(&mut out, &model, count, seed),
        Command::RiskCurve { config } => risk_curve(&mut out, &config),
        Command::Dominance { files } => dominance(&mut out, &files),
        Command::Repro { figure } => repro(&mut out, figure),
    }
}

/// Reads a file, or standard input when the path is `-`.
fn read_input(path: &str) -> Result<String, Box<dyn Error>> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| format!("reading standard input: {err}"))?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path).map_err(|err| format!("reading {path}: {err}"))?)
    }
}

/// Data lines of a CSV: trimmed, with blanks and `#` comments dropped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(
    raw: &str,
    line: usize,
    what: &str,
) -> Result<T, Box<dyn Error>> {
    raw.trim()
        .parse()
        .map_err(|_| format!("line {line}: bad {what} '{}'", raw.trim()).into())
}

/// One angle per line.
fn parse_circle_csv(text: &str) -> Result<CircularSample, Box<dyn Error>> {
    let mut angles = Vec::new();
    for (line, raw) in data_lines(text) {
        let value: f64 = parse_field(raw, line, "angle")?;
        if !value.is_finite() {
            return Err(format!("line {line}: angle must be finite").into());
        }
        angles.push(Angle::new(value));
    }
    if angles.is_empty() {
        return Err("no observations in input".into());
    }
    Ok(CircularSample::new(angles)?)
}

/// `first,second` pairs, second treated as an angle.
fn parse_pair_csv(
    text: &str,
    first: &str,
    second: &str,
) -> Result<Vec<(f64, Angle)>, Box<dyn Error>> {
    let mut points = Vec::new();
    for (line, raw) in data_lines(text) {
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 2 {
            return Err(format!(
                "line {line}: expected '{first},{second}', got {} field(s)",
                fields.len()
            )
            .into());
        }
        let a: f64 = parse_field(fields[0], line, first)?;
        let b: f64 = parse_field(fields[1], line, second)?;
        if !a.is_finite() || !b.is_finite() {
            return Err(format!("line {line}: values must be finite").into());
        }
        points.push((a, Angle::new(b)));
    }
    if points.is_empty() {
        return Err("no observations in input".into());
    }
    Ok(points)
}

/// `component,angle` rows grouped into per-component samples.
fn parse_torus_csv(text: &str) -> Result<Vec<CircularSample>, Box<dyn Error>> {
    let mut groups: Vec<Vec<Angle>> = Vec::new();
    for (line, raw) in data_lines(text) {
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 2 {
            return Err(format!(
                "line {line}: expected 'component,angle', got {} field(s)",
                fields.len()
            )
            .into());
        }
        let component: usize = parse_field(fields[0], line, "component index")?;
        let angle: f64 = parse_field(fields[1], line, "angle")?;
        if !angle.is_finite() {
            return Err(format!("line {line}: angle must be finite").into());
        }
        if component >= groups.len() {
            groups.resize_with(component + 1, Vec::new);
        }
        groups[component].push(Angle::new(angle));
    }
    if groups.is_empty() {
        return Err("no observations in input".into());
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(index, angles)| {
            if angles.is_empty() {
                Err(format!("component {index} has no observations").into())
            } else {
                Ok(CircularSample::new(angles)?)
            }
        })
        .collect()
}

fn estimate(
    out: &mut impl Write,
    input: &str,
    estimator: Option<&str>,
    problem: Option<&str>,
    concentrations: &[f64],
) -> CliResult {
    let text = read_input(input)?;
    if let Some(path) = problem {
        if !concentrations.is_empty() {
            return Err("--concentrations applies to torus-mle only".into());
        }
        let spec: ProblemSpec = serde_json::from_str(&read_input(path)?)
            .map_err(|err| format!("parsing problem JSON: {err}"))?;
        let sample = parse_circle_csv(&text)?;
        let value = problem_estimate(&spec, &sample)?;
        writeln!(out, "{:.10}", value.radians())?;
        return Ok(());
    }
    let name = estimator.ok_or("pass --estimator NAME or --problem JSON")?;
    if name != "torus-mle" && !concentrations.is_empty() {
        return Err("--concentrations applies to torus-mle only".into());
    }
    let value = match name {
        "torus-mle" => {
            let components = parse_torus_csv(&text)?;
            if concentrations.is_empty() {
                return Err("torus-mle requires --concentrations K1,K2,...".into());
            }
            torus_location_mle(&components, concentrations)?
        }
        "sphere-longitude-mle" => {
            sphere_longitude_mle(&parse_pair_csv(&text, "colatitude", "longitude")?)?
        }
        "cylinder-mle" => cylinder_location_mle(&parse_pair_csv(&text, "x", "angle")?)?,
        other => named_estimate(other, &parse_circle_csv(&text)?)?,
    };
    writeln!(out, "{:.10}", value.radians())?;
    Ok(())
}

fn project(out: &mut impl Write, angle: f64, arc: &str) -> CliResult {
    if !angle.is_finite() {
        return Err("--angle must be finite".into());
    }
    let (lo_raw, hi_raw) = arc
        .split_once(':')
        .ok_or("--arc expects LO:HI in radians")?;
    let lo: f64 = parse_field(lo_raw, 1, "arc endpoint")?;
    let hi: f64 = parse_field(hi_raw, 1, "arc endpoint")?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err("arc endpoints must be finite".into());
    }
    let (lo, hi) = (Angle::new(lo), Angle::new(hi));
    if lo.radians() > hi.radians() {
        return Err(format!(
            "arc endpoints must satisfy LO <= HI after reduction to [0, 2*pi), got {}:{}",
            lo.radians(),
            hi.radians()
        )
        .into());
    }
    let projected = Arc::segment(lo, hi).project(Angle::new(angle))?;
    writeln!(out, "{:.4}", projected.radians())?;
    Ok(())
}

fn sample(out: &mut impl Write, model: &str, count: usize, seed: u64) -> CliResult {
    let spec: DistributionSpec = serde_json::from_str(&read_input(model)?)
        .map_err(|err| format!("parsing distribution JSON: {err}"))?;
    match spec.build()? {
        BuiltModel::Circular(model) => {
            for angle in model.sample_seeded(count, seed) {
                writeln!(out, "{:.10}", angle.radians())?;
            }
        }
        BuiltModel::Sphere(model) => {
            for (theta, phi) in model.sample_seeded(count, seed) {
                writeln!(out, "{:.10},{:.10}", theta, phi.radians())?;
            }
        }
        BuiltModel::Cylinder(model) => {
            for (x, theta) in model.sample_seeded(count, seed) {
                writeln!(out, "{:.10},{:.10}", x, theta.radians())?;
            }
        }
    }
    Ok(())
}

fn risk_curve(out: &mut impl Write, config: &str) -> CliResult {
    let cfg: ExperimentConfig = serde_json::from_str(&read_input(config)?)
        .map_err(|err| format!("parsing experiment JSON: {err}"))?;
    let curves = risk_curves(&cfg)?;
    write!(out, "{}", render_csv(&curves))?;
    Ok(())
}

fn dominance(out: &mut impl Write, files: &[String]) -> CliResult {
    let mut curves: Vec<RiskCurve> = Vec::new();
    for path in files {
        for curve in parse_csv(&read_input(path)?)? {
            if curves.iter().any(|c| c.estimator == curve.estimator) {
                return Err(format!(
                    "estimator '{}' appears in more than one input",
                    curve.estimator
                )
                .into());
            }
            curves.push(curve);
        }
    }
    if curves.len() < 2 {
        return Err("need at least two curves to compare".into());
    }
    let report = dominance_report(&curves)?;
    let grid_len = curves[0].points.len();
    writeln!(
        out,
        "comparing {} curve(s) pairwise on a {}-point location grid",
        curves.len(),
        grid_len
    )?;
    for pair in &report {
        let dominated = pair
            .verdicts
            .iter()
            .filter(|v| **v == PointVerdict::Dominated)
            .count();
        let verdict = if pair.uniformly_dominates {
            "uniformly dominates".to_string()
        } else if dominated > 0 {
            format!("dominated at {dominated} point(s)")
        } else {
            "no significant difference".to_string()
        };
        writeln!(out)?;
        writeln!(out, "'{}' vs '{}': {}", pair.challenger, pair.baseline, verdict)?;
        writeln!(
            out,
            "  {:>14}  {:>14}  {:>14}  {:>13}  {:>13}",
            "nu", "challenger", "baseline", "verdict", "improvement%"
        )?;
        let challenger = curves
            .iter()
            .find(|c| c.estimator == pair.challenger)
            .expect("report names come from the curves");
        let baseline = curves
            .iter()
            .find(|c| c.estimator == pair.baseline)
            .expect("report names come from the curves");
        for (((point, other), verdict), improvement) in challenger
            .points
            .iter()
            .zip(&baseline.points)
            .zip(&pair.verdicts)
            .zip(&pair.relative_improvement_pct)
        {
            let word = match verdict {
                PointVerdict::Dominates => "dominates",
                PointVerdict::Dominated => "dominated",
                PointVerdict::Inconclusive => "inconclusive",
            };
            writeln!(
                out,
                "  {:>14.10}  {:>14.10}  {:>14.10}  {:>13}  {:>+13.2}",
                point.nu, point.risk, other.risk, word, improvement
            )?;
        }
    }
    Ok(())
}

fn repro(out: &mut impl Write, figure: Figure) -> CliResult {
    match figure {
        Figure::Figure1 => {
            let curves = risk_curves(&figure1_config())?;
            write!(out, "{}", render_csv(&curves))?;
        }
        Figure::Figure2 => {
            for bound in figure2_bounds() {
                let curves = risk_curves(&figure2_config(bound))?;
                writeln!(out, "# b={bound:.10}")?;
                write!(out, "{}", render_csv(&curves))?;
            }
        }
    }
    Ok(())
}
