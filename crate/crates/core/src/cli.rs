//! The `disc-diffeo` command line: reproducible experiments emitted as CSV
//! (the primary, diffable format) or SVG (presentation only).
//!
//! Numbers are serialized with 17 significant digits so CSV output
//! round-trips doubles exactly and identical configurations produce
//! byte-identical files. Data goes to `--out` or standard output; diagnostics
//! go to standard error. Exit codes: 0 success, 1 bad arguments or domain,
//! 2 I/O failure, 3 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convergence_lab::{self, ConvergenceRow, RateEstimate};
use crate::group_metric::{self, MaximizerConfig, NormConvention};
use crate::oracles::{self, GridSpec};
use crate::radial_family::{DiscPoint, RadialDiffeo};
use crate::specnorm2::{self, SymmetricForm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Relative tolerance of the `verify` engine-vs-oracle spot check.
const SPOT_CHECK_TOL: f64 = 1e-12;
/// Number of seeded random forms in the spot check.
const SPOT_CHECK_FORMS: usize = 1000;

/// Parsed invocation.
#[derive(Debug, Parser)]
#[command(
    name = "disc-diffeo",
    version,
    about = "Radial disc diffeomorphisms: Jacobian norm fields, the C1 metric, convergence experiments"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Parameter t of the radial map f_t; repeat the flag where a command
    /// takes two values.
    #[arg(long = "t", global = true, value_name = "REAL", allow_negative_numbers = true)]
    pub t: Vec<f64>,

    /// Polar grid as RADIIxANGLES for norm-field output.
    #[arg(long, global = true, value_name = "RxA", default_value = "65x64", value_parser = parse_grid)]
    pub grid: GridSpec,

    /// Matrix-norm convention for the Jacobian sup.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Spectral)]
    pub convention: ConventionArg,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Output path; standard output when omitted.
    #[arg(long = "out", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Seed for the randomized verification sampling.
    #[arg(long, global = true, value_name = "UINT", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Tabulate ||J(f_t)|| and det J(f_t) over a polar grid.
    NormField,
    /// The C1 distance between f_t1 and f_t2.
    Metric,
    /// Convergence table for f_t against the identity along a schedule t ↓ 1.
    Converge,
    /// Membership checks plus the spectral-engine spot check for one t.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Spectral,
    Entrywise,
}

impl ConventionArg {
    fn to_convention(self) -> NormConvention {
        match self {
            ConventionArg::Spectral => NormConvention::Spectral,
            ConventionArg::Entrywise => NormConvention::EntrywiseMax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Svg,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.parse::<GridSpec>().map_err(|e| e.to_string())
}

enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            eprint!("{e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<i32, CliError> {
    let mut out = open_output(cfg)?;
    let code = match cfg.command {
        Command::NormField => cmd_norm_field(cfg, &mut out)?,
        Command::Metric => cmd_metric(cfg, &mut out)?,
        Command::Converge => cmd_converge(cfg, &mut out)?,
        Command::Verify => cmd_verify(cfg, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    match &cfg.output {
        Some(path) => {
            let file = File::create(path).map_err(CliError::Io)?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

/// 17 significant digits: exact round-trip for f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn single_t(cfg: &RunConfig, command: &str) -> Result<f64, CliError> {
    match cfg.t.as_slice() {
        [t] => Ok(*t),
        other => Err(CliError::Usage(format!(
            "{command} takes exactly one --t, got {}",
            other.len()
        ))),
    }
}

fn cmd_norm_field(cfg: &RunConfig, w: &mut dyn Write) -> Result<i32, CliError> {
    let t = single_t(cfg, "norm-field")?;
    let d = RadialDiffeo::new(t)?;
    match cfg.format {
        FormatArg::Csv => {
            writeln!(w, "x,y,jac_norm,jac_det")?;
            for i in 0..cfg.grid.radii {
                let r = i as f64 / (cfg.grid.radii - 1) as f64;
                for j in 0..cfg.grid.angles {
                    let th = std::f64::consts::TAU * j as f64 / cfg.grid.angles as f64;
                    let p = DiscPoint {
                        x: r * th.cos(),
                        y: r * th.sin(),
                    };
                    let norm = d.jacobian_norm(p).expect("grid point stays in the disc");
                    let det = d.jacobian_det(p).expect("grid point stays in the disc");
                    writeln!(
                        w,
                        "{},{},{},{}",
                        fmt_f64(p.x),
                        fmt_f64(p.y),
                        fmt_f64(norm),
                        fmt_f64(det)
                    )?;
                }
            }
        }
        FormatArg::Svg => write_norm_field_svg(w, d)?,
    }
    Ok(EXIT_OK)
}

fn cmd_metric(cfg: &RunConfig, w: &mut dyn Write) -> Result<i32, CliError> {
    let (t1, t2) = match cfg.t.as_slice() {
        [t1, t2] => (*t1, *t2),
        other => {
            return Err(CliError::Usage(format!(
                "metric takes exactly two --t, got {}",
                other.len()
            )))
        }
    };
    let d1 = RadialDiffeo::new(t1)?;
    let d2 = RadialDiffeo::new(t2)?;
    let report = group_metric::metric(
        d1,
        d2,
        &MaximizerConfig::default(),
        cfg.convention.to_convention(),
    );
    writeln!(
        w,
        "t1,t2,sup_value,sup_jac,d_g,argmax_r_value,argmax_r_jac,convention"
    )?;
    writeln!(
        w,
        "{},{},{},{},{},{},{},{}",
        fmt_f64(t1),
        fmt_f64(t2),
        fmt_f64(report.sup_value_dist),
        fmt_f64(report.sup_jac_dist),
        fmt_f64(report.d_g),
        fmt_f64(report.argmax_radius_value),
        fmt_f64(report.argmax_radius_jac),
        report.convention
    )?;
    Ok(EXIT_OK)
}

fn cmd_converge(cfg: &RunConfig, w: &mut dyn Write) -> Result<i32, CliError> {
    let schedule = if cfg.t.is_empty() {
        convergence_lab::default_schedule()
    } else {
        cfg.t.clone()
    };
    let rows = convergence_lab::convergence_table(
        &schedule,
        &MaximizerConfig::default(),
        cfg.convention.to_convention(),
    )?;
    let rate = if rows.len() >= 3 {
        convergence_lab::fit_rate(&rows).ok()
    } else {
        None
    };
    match cfg.format {
        FormatArg::Csv => {
            writeln!(
                w,
                "t,sup_value,sup_jac,d_g,bound_value,bound_diag,bound_offdiag"
            )?;
            for row in &rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(row.t),
                    fmt_f64(row.sup_value),
                    fmt_f64(row.sup_jac),
                    fmt_f64(row.d_g),
                    fmt_f64(row.bound_value),
                    fmt_f64(row.bound_diag),
                    fmt_f64(row.bound_offdiag)
                )?;
            }
            if let Some(rate) = rate {
                writeln!(
                    w,
                    "# rate_exponent={} r2={}",
                    fmt_f64(rate.exponent),
                    fmt_f64(rate.r_squared)
                )?;
            }
        }
        FormatArg::Svg => write_converge_svg(w, &rows, rate)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cfg: &RunConfig, w: &mut dyn Write) -> Result<i32, CliError> {
    let t = single_t(cfg, "verify")?;
    let report = convergence_lab::verify_membership(t, &MaximizerConfig::default())?;

    // Engine vs eigenvalue oracle on seeded random forms.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut spot_worst = 0.0f64;
    for _ in 0..SPOT_CHECK_FORMS {
        let form = SymmetricForm::new(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        let engine = specnorm2::max_on_disc(form)
            .expect("finite coefficients")
            .max_value;
        let oracle = oracles::eigen_norm(form).powi(2);
        let rel = (engine - oracle).abs() / engine.abs().max(oracle.abs()).max(f64::MIN_POSITIVE);
        if rel > spot_worst {
            spot_worst = rel;
        }
    }
    let spot_passed = spot_worst <= SPOT_CHECK_TOL;

    writeln!(w, "check,passed,worst,threshold")?;
    for check in &report.checks {
        writeln!(
            w,
            "{},{},{},{}",
            check.name,
            check.passed,
            fmt_f64(check.worst),
            fmt_f64(check.threshold)
        )?;
    }
    writeln!(
        w,
        "specnorm2_vs_eigen_oracle,{},{},{}",
        spot_passed,
        fmt_f64(spot_worst),
        fmt_f64(SPOT_CHECK_TOL)
    )?;
    let all = report.all_passed() && spot_passed;
    writeln!(w, "# all_passed={all}")?;
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}

/// Cartesian raster heatmap of the Jacobian norm over the disc.
fn write_norm_field_svg(w: &mut dyn Write, d: RadialDiffeo) -> io::Result<()> {
    const N: usize = 128;
    const CELL: usize = 4;
    let size = N * CELL;
    let (hi, lo) = d.norm_extrema();
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )?;
    writeln!(w, "<rect width=\"{size}\" height=\"{size}\" fill=\"#101018\"/>")?;
    for i in 0..N {
        for j in 0..N {
            let x = 2.0 * (j as f64 + 0.5) / N as f64 - 1.0;
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / N as f64;
            if x * x + y * y > 1.0 {
                continue;
            }
            let norm = d
                .jacobian_norm(DiscPoint { x, y })
                .expect("raster point stays in the disc");
            let s = ((norm - lo) / span).clamp(0.0, 1.0);
            let red = (255.0 * s).round() as u8;
            let blue = (255.0 * (1.0 - s)).round() as u8;
            writeln!(
                w,
                "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"rgb({red},40,{blue})\"/>",
                j * CELL,
                i * CELL
            )?;
        }
    }
    writeln!(
        w,
        "<circle cx=\"{0}\" cy=\"{0}\" r=\"{0}\" fill=\"none\" stroke=\"#e0e0e0\"/>",
        size / 2
    )?;
    writeln!(
        w,
        "<text x=\"8\" y=\"18\" fill=\"#e0e0e0\" font-family=\"monospace\" font-size=\"14\">|J(f_t)|, t = {}</text>",
        d.t()
    )?;
    writeln!(w, "</svg>")
}

/// Log-log plot of d_g against t − 1.
fn write_converge_svg(
    w: &mut dyn Write,
    rows: &[ConvergenceRow],
    rate: Option<RateEstimate>,
) -> io::Result<()> {
    const WIDTH: f64 = 640.0;
    const HEIGHT: f64 = 480.0;
    const MARGIN: f64 = 56.0;
    let xs: Vec<f64> = rows.iter().map(|r| (r.t - 1.0).log10()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.d_g.max(f64::MIN_POSITIVE).log10()).collect();
    let (x_lo, x_hi) = bounds(&xs);
    let (y_lo, y_hi) = bounds(&ys);
    let to_px = |x: f64, y: f64| {
        let px = MARGIN + (x - x_lo) / (x_hi - x_lo).max(1e-300) * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo).max(1e-300) * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    };
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )?;
    writeln!(w, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>")?;
    writeln!(
        w,
        "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>",
        HEIGHT - MARGIN,
        WIDTH - MARGIN
    )?;
    writeln!(
        w,
        "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{}\" stroke=\"black\"/>",
        HEIGHT - MARGIN
    )?;
    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let (px, py) = to_px(x, y);
            format!("{px:.2},{py:.2}")
        })
        .collect();
    if points.len() > 1 {
        writeln!(
            w,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\"/>",
            points.join(" ")
        )?;
    }
    for p in &points {
        let (px, py) = p.split_once(',').expect("formatted pair");
        writeln!(w, "<circle cx=\"{px}\" cy=\"{py}\" r=\"3\" fill=\"#c03030\"/>")?;
    }
    writeln!(
        w,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\">log10(t-1)</text>",
        WIDTH / 2.0 - 40.0,
        HEIGHT - 16.0
    )?;
    writeln!(
        w,
        "<text x=\"14\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" transform=\"rotate(-90 14 {0})\">log10(d_g)</text>",
        HEIGHT / 2.0
    )?;
    if let Some(rate) = rate {
        writeln!(
            w,
            "<text x=\"{}\" y=\"{MARGIN}\" font-family=\"monospace\" font-size=\"13\">slope = {:.4}, r2 = {:.6}</text>",
            MARGIN + 8.0,
            rate.exponent,
            rate.r_squared
        )?;
    }
    writeln!(w, "</svg>")
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}
