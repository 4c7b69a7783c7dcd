//! `quadchar` command-line front end.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quadchar::charsums::{delta_max, Window};
use quadchar::gcdsum::{construct_extremal_set, gcd_sum, gcd_sum_reference, GcdSet};
use quadchar::meanvalues::mean_value_report;
use quadchar::resonance::{
    build_resonator, moment_ratio, PrimeWindow, RatioJson, ResonatorParams, ResonatorSpec, Variant, DEFAULT_ALPHA,
    DEFAULT_DELTA,
};
use quadchar::theorems::TheoremReport;
use quadchar::verify::{run_suite, Suite};
use quadchar::{arith, Error, Workers};

#[derive(Parser, Debug)]
#[command(name = "quadchar", version, about = "Quadratic character sums over fundamental discriminants")]
struct Cli {
    /// Worker threads used by the scans.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Output {
    /// Write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the report as CSV (with header) to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest S_d(x) over the fundamental discriminants of (X, 2X] or (X, hi].
    DeltaMax {
        #[arg(long = "X", value_parser = parse_real, allow_negative_numbers = true)]
        big_x: f64,
        #[arg(long = "x", value_parser = parse_real)]
        x: f64,
        /// Upper end of the window instead of 2X.
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        hi: Option<f64>,
        /// Also report the maximum of |S_d(x)|.
        #[arg(long)]
        abs: bool,
        /// Count d = 1 as a discriminant.
        #[arg(long)]
        include_unit: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Exact mean value Σ_{|d|<=X} χ_d(n) with its main term and envelopes.
    MeanValue {
        #[arg(long, value_parser = parse_count)]
        n: u64,
        #[arg(long = "X", value_parser = parse_real)]
        big_x: f64,
        #[arg(long, value_parser = parse_real, default_value_t = arith::DEFAULT_EPS)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Moment ratio M2/M1 of a resonator against the observed maximum.
    Resonate {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long = "X", value_parser = parse_real)]
        big_x: f64,
        #[arg(long = "x", value_parser = parse_real)]
        x: f64,
        #[arg(long, value_parser = parse_real, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, value_parser = parse_real, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        /// Use S_d(x)² in M2 (default for medium and long).
        #[arg(long, conflicts_with = "unsquared")]
        squared: bool,
        /// Use S_d(x) in M2 (default for short).
        #[arg(long)]
        unsquared: bool,
        /// Medium only: start the prime window at λ instead of λ².
        #[arg(long, conflicts_with = "window_lo")]
        lambda_window: bool,
        /// Medium only: explicit prime window [lo, hi].
        #[arg(long, value_parser = parse_real, requires = "window_hi")]
        window_lo: Option<f64>,
        #[arg(long, value_parser = parse_real, requires = "window_lo")]
        window_hi: Option<f64>,
        /// Long only: read the set M from a file with one integer per line.
        #[arg(long)]
        set_file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// GCD sum of a constructed extremal set or of a set read from a file.
    GcdSum {
        #[arg(long = "N", value_parser = parse_count, required_unless_present = "set_file", conflicts_with = "set_file")]
        n: Option<u64>,
        #[arg(long)]
        set_file: Option<PathBuf>,
        /// Write the set, one member per line.
        #[arg(long)]
        emit_set: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Number of y-smooth integers up to x.
    Psi {
        #[arg(long = "x", value_parser = parse_real)]
        x: f64,
        #[arg(long = "y", value_parser = parse_real)]
        y: f64,
    },
    /// Run built-in consistency checks.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Short,
    Medium,
    Long,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Short => Variant::Short,
            VariantArg::Medium => Variant::Medium,
            VariantArg::Long => Variant::Long,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Arith,
    Charsum,
    Meanvalue,
    Resonance,
    Gcd,
    All,
}

/// A real number, scientific notation allowed.
fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// A nonnegative integer; `1e6` is accepted when it is integral.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.trim().parse::<u64>() {
        return Ok(v);
    }
    let v = parse_real(s)?;
    if v < 0.0 || v.fract() != 0.0 || v > 2f64.powi(53) {
        return Err(format!("{s:?} is not a nonnegative integer"));
    }
    Ok(v as u64)
}

#[derive(Debug)]
enum Failure {
    Precondition(String),
    EmptyWindow(String),
    Io(String),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyWindow { .. } => Failure::EmptyWindow(e.to_string()),
            Error::Io(_) => Failure::Io(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

/// Rendered outputs, written only once every computation has succeeded.
struct Emit {
    stdout: String,
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Emit {
    fn new(stdout: String) -> Self {
        Emit { stdout, files: Vec::new() }
    }

    fn json(&mut self, path: &Option<PathBuf>, value: &impl Serialize) -> Result<(), Failure> {
        if let Some(path) = path {
            let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| io_failure(path, e))?;
            bytes.push(b'\n');
            self.files.push((path.clone(), bytes));
        }
        Ok(())
    }

    fn csv<T: Serialize>(&mut self, path: &Option<PathBuf>, rows: &[T]) -> Result<(), Failure> {
        if let Some(path) = path {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| io_failure(path, e))?;
            }
            let bytes = w.into_inner().map_err(|e| io_failure(path, e))?;
            self.files.push((path.clone(), bytes));
        }
        Ok(())
    }

    fn flush(self) -> Result<(), Failure> {
        for (path, bytes) in &self.files {
            let mut f = BufWriter::new(File::create(path).map_err(|e| io_failure(path, e))?);
            f.write_all(bytes).and_then(|_| f.flush()).map_err(|e| io_failure(path, e))?;
        }
        let mut out = io::stdout().lock();
        out.write_all(self.stdout.as_bytes()).map_err(|e| Failure::Io(format!("stdout: {e}")))
    }
}

fn read_set(path: &Path) -> Result<GcdSet, Failure> {
    let file = File::open(path).map_err(|e| io_failure(path, e))?;
    match GcdSet::read_from(BufReader::new(file)) {
        Ok(set) => Ok(set),
        Err(Error::Io(e)) => Err(io_failure(path, e)),
        Err(e) => Err(Failure::Precondition(format!("{}: {e}", path.display()))),
    }
}

#[derive(Serialize)]
struct ResonateJson {
    #[serde(flatten)]
    ratio: RatioJson,
    theorem: TheoremReport,
}

#[derive(Serialize)]
struct GcdSumRecord {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "y_M")]
    y_m: u64,
    gcd_sum: f64,
    reference: Option<f64>,
}

fn run(cli: Cli) -> Result<Emit, Failure> {
    let workers = Workers::new(cli.threads)?;
    match cli.command {
        Command::DeltaMax { big_x, x, hi, abs, include_unit, output } => {
            let window = match hi {
                Some(hi) => Window::Explicit { lo: big_x.floor() as i64, hi: hi.floor() as i64 },
                None => Window::Doubling(big_x),
            };
            let r = delta_max(window, x, include_unit, &workers)?;
            let mut text = format!(
                "window ({}, {}], x = {}: max S_d(x) = {} at d = {} ({} discriminants)\n",
                r.window_lo, r.window_hi, r.x, r.max_value, r.argmax_d, r.count_scanned
            );
            if abs {
                text += &format!("max |S_d(x)| = {} at d = {}\n", r.max_abs_value, r.argmax_abs_d);
            }
            let mut emit = Emit::new(text);
            if abs {
                emit.json(&output.json, &r.abs_record())?;
                emit.csv(&output.csv, &[r.abs_record()])?;
            } else {
                emit.json(&output.json, &r.record())?;
                emit.csv(&output.csv, &[r.record()])?;
            }
            Ok(emit)
        }
        Command::MeanValue { n, big_x, eps, output } => {
            let r = mean_value_report(n, big_x, eps, &workers)?;
            let mut emit = Emit::new(format!(
                "n = {}, X = {}: sum = {}, main term = {:.6}, residual = {:.6}, unconditional envelope = {:.6}, GRH envelope = {:.6}\n",
                r.n, r.x, r.exact_sum, r.main_term, r.residual, r.unconditional_envelope, r.grh_envelope
            ));
            emit.json(&output.json, &r)?;
            emit.csv(&output.csv, &[r])?;
            Ok(emit)
        }
        Command::Resonate {
            variant,
            big_x,
            x,
            alpha,
            delta,
            squared,
            unsquared,
            lambda_window,
            window_lo,
            window_hi,
            set_file,
            output,
        } => {
            let variant = Variant::from(variant);
            if set_file.is_some() && variant != Variant::Long {
                return Err(Failure::Precondition("--set-file applies to the long variant only".into()));
            }
            if (lambda_window || window_lo.is_some()) && variant != Variant::Medium {
                return Err(Failure::Precondition("prime window options apply to the medium variant only".into()));
            }
            let squared = if squared || unsquared { squared } else { variant.default_squared() };
            let spec = match set_file {
                Some(path) => {
                    if !(big_x >= 16.0 && x >= 2.0) {
                        return Err(Failure::Precondition(format!(
                            "need X >= 16 and x >= 2, got X = {big_x}, x = {x}"
                        )));
                    }
                    ResonatorSpec::long_with_set(big_x, x, read_set(&path)?)
                }
                None => {
                    let window = match (window_lo, window_hi) {
                        (Some(lo), Some(hi)) => PrimeWindow::Explicit { lo, hi },
                        _ if lambda_window => PrimeWindow::Lambda,
                        _ => PrimeWindow::LambdaSquared,
                    };
                    let params = ResonatorParams::new(big_x, x).alpha(alpha).delta(delta).medium_window(window);
                    build_resonator(variant, &params)?
                }
            };
            let report = moment_ratio(&spec, squared, &workers)?;
            let theorem = TheoremReport::new(report.clone());
            let shape = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"));
            let mut emit = Emit::new(format!(
                "{} X = {} x = {}: M1 = {:.9e}, M2 = {:.9e}, ratio = {:.9}, observed max = {}, holds = {} ({} discriminants, {})\nreference shape = {}\n",
                variant,
                big_x,
                x,
                report.m1,
                report.m2,
                report.ratio,
                report.observed_max,
                report.inequality_holds,
                report.discriminants_scanned,
                if squared { "squared" } else { "unsquared" },
                shape(theorem.predicted_shape),
            ));
            emit.json(&output.json, &ResonateJson { ratio: report.json_record(), theorem })?;
            emit.csv(&output.csv, &[report.csv_row()])?;
            Ok(emit)
        }
        Command::GcdSum { n, set_file, emit_set, output } => {
            let set = match (n, set_file) {
                (_, Some(path)) => read_set(&path)?,
                (Some(n), None) => construct_extremal_set(n)?,
                (None, None) => unreachable!("clap requires one of --N and --set-file"),
            };
            let record = GcdSumRecord {
                n: set.len(),
                y_m: set.y_m(),
                gcd_sum: gcd_sum(&set, &workers),
                reference: gcd_sum_reference(set.len() as u64).ok(),
            };
            let mut emit =
                Emit::new(format!("N = {}, y_M = {}: gcd sum = {:.9}\n", record.n, record.y_m, record.gcd_sum));
            if let Some(path) = &emit_set {
                let mut bytes = Vec::new();
                set.write_to(&mut bytes)?;
                emit.files.push((path.clone(), bytes));
            }
            emit.json(&output.json, &record)?;
            emit.csv(&output.csv, &[record])?;
            Ok(emit)
        }
        Command::Psi { x, y } => Ok(Emit::new(format!("{}\n", arith::psi_count(x, y)?))),
        Command::Verify { suite } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::Arith => vec![Suite::Arith],
                SuiteArg::Charsum => vec![Suite::Charsum],
                SuiteArg::Meanvalue => vec![Suite::Meanvalue],
                SuiteArg::Resonance => vec![Suite::Resonance],
                SuiteArg::Gcd => vec![Suite::Gcd],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let mut text = String::new();
            let mut failed = 0;
            for s in suites {
                for outcome in run_suite(s, &workers) {
                    failed += usize::from(!outcome.passed);
                    text += &format!("{outcome}\n");
                }
            }
            print!("{text}");
            if failed > 0 {
                return Err(Failure::Checks(failed));
            }
            Ok(Emit::new(String::new()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(Emit::flush) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Precondition(m) => (2, m),
                Failure::EmptyWindow(m) => (3, m),
                Failure::Io(m) => (1, m),
                Failure::Checks(n) => (1, format!("{n} check(s) failed")),
            };
            eprintln!("quadchar: {message}");
            ExitCode::from(code)
        }
    }
}
