//! Command-line interface: curve generation, rendering, dimension
//! estimation, bound tables, and invariant self-checks.
//!
//! Exit codes: 0 on success, 1 when a verify check fails or output cannot
//! be written, 2 for argument and domain errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use dragondim::{
    angle_histogram, build_curve, coordinate_function, cover_bound, dyadic_vertex,
    emit_curve_svg, emit_graph_csv, emit_graph_svg, emit_vertices_csv, estimate_dimension,
    lambda_min, max_depth, mesh_count_streaming, noncover_bound, tail_bound, validate_params,
    AngleWord, Axis, DragonError, DragonParams, RenderSpec,
};

#[derive(Parser)]
#[command(
    name = "dragondim",
    version,
    about = "Angle-parameterized dragon curves and box-counting dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write curve vertices or coordinate-graph breakpoints as CSV
    Gen(GenArgs),
    /// Render the curve or a coordinate graph as SVG
    Plot(PlotArgs),
    /// Estimate box-counting dimension and emit a JSON report
    Dim(DimArgs),
    /// Tabulate cover/noncover bounds and minimum direction components
    Bounds(BoundsArgs),
    /// Run invariant self-checks and report pass/fail per check
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct AngleArg {
    /// Opening angle in radians, or a pi fraction such as "pi/2", "2pi/3"
    #[arg(long)]
    theta: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    /// The polyline curve in the plane
    Curve,
    /// Graph of the x coordinate function
    X,
    /// Graph of the y coordinate function
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Axis {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Y => Axis::Y,
        }
    }
}

#[derive(clap::Args)]
struct GenArgs {
    #[command(flatten)]
    angle: AngleArg,
    /// Refinement depth (2^depth segments)
    #[arg(long, default_value_t = 10)]
    depth: u32,
    /// curve: vertex x,y rows; x or y: t,value rows
    #[arg(long, value_enum, default_value_t = PlotKind::Curve)]
    what: PlotKind,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct PlotArgs {
    #[command(flatten)]
    angle: AngleArg,
    /// Refinement depth
    #[arg(long, default_value_t = 12)]
    depth: u32,
    #[arg(long, value_enum, default_value_t = PlotKind::Curve)]
    what: PlotKind,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
    #[arg(long, default_value_t = 20.0)]
    margin: f64,
    #[arg(long, default_value_t = 1.0)]
    stroke_width: f64,
    /// Draw the previous stage in black beneath the current stage in red
    #[arg(long)]
    highlight: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DimArgs {
    #[command(flatten)]
    angle: AngleArg,
    /// Coordinate graph to count
    #[arg(long, value_enum, default_value_t = AxisArg::X)]
    axis: AxisArg,
    /// Mesh level range, e.g. "6..12" or a single level pair "6..8"
    #[arg(long, default_value = "6..12")]
    m: String,
    /// Extra stage depth beyond each mesh level
    #[arg(long, default_value_t = 2)]
    margin: u32,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BoundsArgs {
    #[command(flatten)]
    angle: AngleArg,
    /// Depth range, e.g. "1..8"
    #[arg(long, default_value = "1..8")]
    k: String,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    angle: AngleArg,
    /// Largest depth exercised by the checks
    #[arg(long, default_value_t = 10)]
    k: u32,
    /// Seed for sampled vertex checks
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

enum CliError {
    /// Bad arguments or a domain error: exit code 2.
    Args(String),
    /// Runtime failure such as an unwritable output file: exit code 1.
    Runtime(String),
}

impl From<DragonError> for CliError {
    fn from(e: DragonError) -> Self {
        CliError::Args(e.to_string())
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Args(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Plot(args) => run_plot(args),
        Command::Dim(args) => run_dim(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Verify(args) => run_verify(args),
    }
}

/// Accepts "1.8", "pi", "pi/2", "2pi/3", "25pi/18" (case-insensitive,
/// optional spaces and '*').
fn parse_theta(s: &str) -> Result<DragonParams, CliError> {
    let t: String = s
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    if let Some(idx) = t.find("pi") {
        let bad = || CliError::Args(format!("cannot parse angle '{s}'"));
        let num_s = &t[..idx];
        let den_s = &t[idx + 2..];
        let num: u64 = if num_s.is_empty() {
            1
        } else {
            num_s.parse().map_err(|_| bad())?
        };
        let den: u64 = if den_s.is_empty() {
            1
        } else {
            den_s
                .strip_prefix('/')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?
        };
        Ok(DragonParams::from_pi_fraction(num, den)?)
    } else {
        let v: f64 = t
            .parse()
            .map_err(|_| CliError::Args(format!("cannot parse angle '{s}'")))?;
        Ok(validate_params(v)?)
    }
}

/// "6..12" or a single "8".
fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Args(format!("cannot parse range '{s}'"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok((v, v))
    }
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_gen(args: GenArgs) -> Result<ExitCode, CliError> {
    let params = parse_theta(&args.angle.theta)?;
    let content = match args.what {
        PlotKind::Curve => emit_vertices_csv(&build_curve(&params, args.depth)?),
        PlotKind::X => emit_graph_csv(&coordinate_function(&params, args.depth, Axis::X)?),
        PlotKind::Y => emit_graph_csv(&coordinate_function(&params, args.depth, Axis::Y)?),
    };
    write_out(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_plot(args: PlotArgs) -> Result<ExitCode, CliError> {
    let params = parse_theta(&args.angle.theta)?;
    let spec = RenderSpec {
        width: args.width,
        height: args.height,
        margin: args.margin,
        stroke_width: args.stroke_width,
        highlight_refinement: args.highlight,
    };
    let content = match args.what {
        PlotKind::Curve => emit_curve_svg(&build_curve(&params, args.depth)?, &spec),
        PlotKind::X => emit_graph_svg(&coordinate_function(&params, args.depth, Axis::X)?, &spec),
        PlotKind::Y => emit_graph_svg(&coordinate_function(&params, args.depth, Axis::Y)?, &spec),
    };
    write_out(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_dim(args: DimArgs) -> Result<ExitCode, CliError> {
    let params = parse_theta(&args.angle.theta)?;
    let (m_lo, m_hi) = parse_range(&args.m)?;
    let est = estimate_dimension(&params, args.axis.into(), m_lo, m_hi, args.margin)?;
    write_out(&args.out, &est.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn run_bounds(args: BoundsArgs) -> Result<ExitCode, CliError> {
    let params = parse_theta(&args.angle.theta)?;
    let (k_lo, k_hi) = parse_range(&args.k)?;
    let lx = lambda_min(&params, Axis::X)?;
    let ly = lambda_min(&params, Axis::Y)?;
    let mut out = String::from("k,cover,noncover_x,noncover_y,lambda_x,lambda_y\n");
    for k in k_lo..=k_hi {
        out.push_str(&format!(
            "{},{},{},{},{:.12},{:.12}\n",
            k,
            cover_bound(&params, k)?,
            noncover_bound(&params, k, Axis::X)?,
            noncover_bound(&params, k, Axis::Y)?,
            lx,
            ly
        ));
    }
    write_out(&args.out, &out)?;
    Ok(ExitCode::SUCCESS)
}

/// Deterministic 64-bit mixer for sampled checks.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

struct CheckReport {
    failed: bool,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport { failed: false }
    }

    fn pass(&mut self, name: &str, detail: &str) {
        println!("check {name}: pass ({detail})");
    }

    fn fail(&mut self, name: &str, detail: &str) {
        self.failed = true;
        println!("check {name}: FAIL ({detail})");
    }

    fn skip(&mut self, name: &str, why: &str) {
        println!("check {name}: skipped ({why})");
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let params = parse_theta(&args.angle.theta)?;
    let mut report = CheckReport::new();
    let mut seed = args.seed;

    // Letter multiplicities follow Pascal's triangle.
    let k_hist = args.k.min(16);
    let mut hist_ok = true;
    for kk in 0..=k_hist {
        let hist = angle_histogram(kk).map_err(CliError::from)?;
        let word = AngleWord::materialize(kk).map_err(CliError::from)?;
        let total: u128 = hist.iter().map(|&(c, _)| c).sum();
        if total != 1u128 << kk {
            hist_ok = false;
            break;
        }
        for &(count, letter) in &hist {
            let seen = word.coeffs().iter().filter(|&&c| c == letter).count() as u128;
            if seen != count {
                hist_ok = false;
                break;
            }
        }
    }
    if hist_ok {
        report.pass("pascal-histogram", &format!("depths 0..={k_hist}"));
    } else {
        report.fail("pascal-histogram", &format!("mismatch within 0..={k_hist}"));
    }

    // Dyadic vertices are stable under refinement.
    let k_dyadic = args.k.min(10);
    let mut worst = 0.0f64;
    for kk in 1..=k_dyadic {
        for extra in 1..=3u32 {
            for _ in 0..40 {
                let j = splitmix64(&mut seed) % ((1u64 << kk) + 1);
                let a = dyadic_vertex(&params, kk, j).map_err(CliError::from)?;
                let b = dyadic_vertex(&params, kk + extra, j << extra).map_err(CliError::from)?;
                worst = worst.max((a.x - b.x).abs()).max((a.y - b.y).abs());
            }
        }
    }
    if worst <= 1e-9 {
        report.pass(
            "dyadic-stability",
            &format!("depths 1..={k_dyadic}, worst drift {worst:.3e}"),
        );
    } else {
        report.fail("dyadic-stability", &format!("worst drift {worst:.3e}"));
    }

    // Consecutive stages differ by at most 4 / (2 cos alpha)^n.
    let k_tail = args.k.min(12);
    let two_cos = 1.0 / params.ratio();
    let mut tail_ok = true;
    let mut worst_ratio = 0.0f64;
    for n in 0..=k_tail.saturating_sub(1) {
        let old = coordinate_function(&params, n, Axis::X).map_err(CliError::from)?;
        let new = coordinate_function(&params, n + 1, Axis::X).map_err(CliError::from)?;
        let mut sup = 0.0f64;
        for j in 0..old.values().len() - 1 {
            let mid = new.values()[2 * j + 1];
            let lin = 0.5 * (old.values()[j] + old.values()[j + 1]);
            sup = sup.max((mid - lin).abs());
        }
        let bound = 4.0 / two_cos.powi(n as i32);
        worst_ratio = worst_ratio.max(sup / bound);
        if sup > bound {
            tail_ok = false;
        }
    }
    if tail_ok {
        report.pass(
            "stage-step-bound",
            &format!("depths 0..={k_tail}, worst sup/bound {worst_ratio:.3}"),
        );
    } else {
        report.fail("stage-step-bound", "a stage step exceeded its bound");
    }

    // Mesh counts sit between the noncover and cover bounds.
    if params.is_degenerate() {
        report.skip("count-sandwich", "degenerate angle");
    } else if params.rational().is_none() {
        report.skip("count-sandwich", "no rational form: noncover bound undefined");
    } else if args.k < 6 {
        report.skip("count-sandwich", "needs k >= 6");
    } else {
        let mut upper_ok = true;
        let mut findings = Vec::new();
        for kk in 6..=args.k.min(12) {
            let depth = sandwich_depth(&params, kk)?;
            let count =
                mesh_count_streaming(&params, Axis::X, depth, kk).map_err(CliError::from)?;
            let upper = cover_bound(&params, kk).map_err(CliError::from)? + 2 * (1u64 << kk);
            let lower = noncover_bound(&params, kk, Axis::X).map_err(CliError::from)?;
            if count.total > upper {
                upper_ok = false;
            }
            if count.total < lower {
                findings.push(format!("k={kk}: count {} below lower bound {lower}", count.total));
            }
        }
        if upper_ok {
            report.pass(
                "count-sandwich",
                &format!("k 6..={}, upper bound holds", args.k.min(12)),
            );
            for f in findings {
                println!("  finding: {f}");
            }
        } else {
            report.fail("count-sandwich", "a count exceeded the cover bound");
        }
    }

    if report.failed {
        Ok(ExitCode::FAILURE)
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

/// Stage depth for the sandwich check at level k: deep enough for the tail
/// bound to certify scale 2^-k when that fits the cap, at least k + 2.
fn sandwich_depth(params: &DragonParams, k: u32) -> Result<u32, CliError> {
    let cap = max_depth();
    let eps = (0.5f64).powi(k as i32);
    let mut certified = 1u32;
    while certified < cap && tail_bound(params, certified).map_err(CliError::from)? >= eps {
        certified += 1;
    }
    Ok((k + 2).max(certified).min(cap))
}
