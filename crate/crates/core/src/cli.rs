//! Command-line front end. [`dispatch`] is pure apart from reading
//! `--input` files, so it can be driven from tests.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::cbs_discrete::{cbs_chain, dft_uncertainty, lorentz_chain, q_cbs_chain, DFT_ZERO_TOL, Q_TAIL_TOL};
use crate::cbs_integral::{compare_generalizations, integral_chain, ChainKind, Relation};
use crate::elliptic::{bounds, bounds_csv, bounds_grid, BoundsReport};
use crate::error::Error;
use crate::function::FunctionSpec;
use crate::means::{check_axioms, check_h_conditions, conjugate_eval, entropy, eval_mean, MeanSpec};
use crate::young::{critical_residual, critical_y, young_integral_gap, young_pair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "cbsmeans", version, about = "Means, Young bounds, Cauchy-Bunyakovsky refinements and elliptic K bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate means and check their axioms
    #[command(subcommand)]
    Means(MeansCmd),
    /// Compare the two Young inequalities
    #[command(subcommand)]
    Young(YoungCmd),
    /// Mean-based Cauchy-Bunyakovsky chains
    #[command(subcommand)]
    Cbs(CbsCmd),
    /// Sampled comparison of two refinements
    Compare(CompareArgs),
    /// Bounds for the complete elliptic integral K (x is the modulus)
    #[command(subcommand)]
    Elliptic(EllipticCmd),
    /// Discrete Fourier transform support sizes
    #[command(subcommand)]
    Dft(DftCmd),
    /// Reversed chain for time-like vectors
    #[command(subcommand)]
    Lorentz(LorentzCmd),
}

#[derive(Subcommand)]
enum MeansCmd {
    /// M(x, y), with the conjugate and entropy for positive arguments
    Eval {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Sampled check of the mean axioms
    Axioms {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check of the h-function conditions on a grid
    HCheck {
        #[arg(long)]
        spec: String,
        /// Comma-separated, ascending, nonnegative
        #[arg(long, default_value = "0,0.5,1,2")]
        grid: String,
    },
}

#[derive(Subcommand)]
enum YoungCmd {
    /// Both right-hand sides for one (x, y, p) and the winner
    Classify {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        p: f64,
    },
    /// Crossover y at which the two bounds coincide
    Critical {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Integral Young gap for an increasing f with f(a) = 0
    IntegralGap {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
}

#[derive(Subcommand)]
enum CbsCmd {
    /// Chain over two positive columns of a CSV file
    Discrete {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        input: String,
    },
    /// Integral chain on [a, b]
    Integral {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Mean)]
        kind: KindArg,
    },
    /// Chain with Jackson q-integrals on [0, 1]
    Q {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = Q_TAIL_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mean,
    Logderiv,
}

impl From<KindArg> for ChainKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Mean => ChainKind::Mean,
            KindArg::Logderiv => ChainKind::LogDerivative,
        }
    }
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Mean)]
    kind: KindArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum EllipticCmd {
    Bounds {
        #[arg(long, conflicts_with = "grid")]
        x: Option<f64>,
        /// lo:hi:step
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum DftCmd {
    /// Rows of `re,im`
    Uncertainty {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = DFT_ZERO_TOL)]
        zero_tol: f64,
    },
}

#[derive(Subcommand)]
enum LorentzCmd {
    Chain {
        #[arg(long)]
        mean: String,
        #[arg(long)]
        x0: f64,
        /// Comma-separated positive spatial components
        #[arg(long)]
        x: String,
        #[arg(long)]
        y0: f64,
        #[arg(long)]
        y: String,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn ok_json<T: Serialize>(v: &T, verified: bool) -> Outcome {
    Ok((to_json(v), verified))
}

fn mean_spec(s: &str) -> std::result::Result<MeanSpec, Failure> {
    s.parse::<MeanSpec>().map_err(Failure::Lib)
}

fn function_spec(s: &str) -> std::result::Result<FunctionSpec, Failure> {
    s.parse::<FunctionSpec>().map_err(Failure::Lib)
}

fn number_list(s: &str) -> std::result::Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("'{t}' is not a number"))))
        .collect()
}

fn read_rows(path: &str, width: usize) -> std::result::Result<Vec<Vec<f64>>, Failure> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(Path::new(path))
        .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        if rec.len() != width {
            return Err(Failure::Usage(format!("{path}:{}: expected {width} columns, got {}", i + 1, rec.len())));
        }
        let row = rec
            .iter()
            .map(|t| t.parse::<f64>().map_err(|_| Failure::Usage(format!("{path}:{}: '{t}' is not a number", i + 1))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn parse_grid(s: &str) -> std::result::Result<(f64, f64, f64), Failure> {
    let v = s.split(':').map(|t| t.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>();
    match v.as_deref() {
        Ok([lo, hi, step]) => Ok((*lo, *hi, *step)),
        _ => Err(Failure::Usage(format!("grid '{s}' is not lo:hi:step"))),
    }
}

fn run_means(cmd: MeansCmd) -> Outcome {
    match cmd {
        MeansCmd::Eval { spec, x, y } => {
            let m = mean_spec(&spec)?;
            let value = eval_mean(&m, x, y)?;
            let (conjugate, ent) = if x > 0.0 && y > 0.0 {
                (Some(conjugate_eval(&m, x, y)?), Some(entropy(&m, x, y)?))
            } else {
                (None, None)
            };
            ok_json(&json!({"spec": m, "x": x, "y": y, "value": value, "conjugate": conjugate, "entropy": ent}), true)
        }
        MeansCmd::Axioms { spec, samples, seed } => {
            if samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let r = check_axioms(&mean_spec(&spec)?, samples, seed);
            let pass = r.all_pass();
            ok_json(&r, pass)
        }
        MeansCmd::HCheck { spec, grid } => {
            let r = check_h_conditions(&mean_spec(&spec)?, &number_list(&grid)?)?;
            let valid = r.is_valid();
            ok_json(&r, valid)
        }
    }
}

fn run_young(cmd: YoungCmd) -> Outcome {
    match cmd {
        YoungCmd::Classify { x, y, p } => ok_json(&young_pair(x, y, p)?, true),
        YoungCmd::Critical { x, p, tol } => {
            let y = critical_y(x, p, tol)?;
            ok_json(&json!({"x": x, "p": p, "y_cr": y, "residual": critical_residual(x, y, p)}), true)
        }
        YoungCmd::IntegralGap { f, a, b } => {
            let func = function_spec(&f)?;
            let gap = young_integral_gap(&func, a, b)?;
            ok_json(&json!({"f": func, "a": a, "b": b, "gap": gap}), gap >= -1e-10)
        }
    }
}

fn run_cbs(cmd: CbsCmd) -> Outcome {
    let r = match cmd {
        CbsCmd::Discrete { mean, input } => {
            let m = mean_spec(&mean)?;
            let rows = read_rows(&input, 2)?;
            let x: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            let y: Vec<f64> = rows.iter().map(|r| r[1]).collect();
            cbs_chain(&x, &y, &m)?
        }
        CbsCmd::Integral { mean, f, g, a, b, kind } => {
            integral_chain(&function_spec(&f)?, &function_spec(&g)?, a, b, &mean_spec(&mean)?, kind.into())?
        }
        CbsCmd::Q { mean, f, g, q, tol } => q_cbs_chain(&function_spec(&f)?, &function_spec(&g)?, q, &mean_spec(&mean)?, tol)?,
    };
    let ordered = r.ordered;
    ok_json(&r, ordered)
}

fn run_compare(args: CompareArgs) -> Outcome {
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let (a, b) = (mean_spec(&args.a)?, mean_spec(&args.b)?);
    let v = compare_generalizations(&a, &b, args.kind.into(), args.trials, args.seed);
    let label = match v.relation {
        Relation::APrecB => format!("A ≺ B: consistent with ≺ over {} trials", v.trials_run),
        Relation::BPrecA => format!("B ≺ A: consistent with ≺ over {} trials", v.trials_run),
        Relation::Incomparable => "incomparable: witnesses in both directions".to_string(),
        Relation::Undetermined => format!("undetermined: no strict difference over {} trials", v.trials_run),
    };
    ok_json(&json!({"verdict": label, "report": v}), true)
}

fn run_elliptic(cmd: EllipticCmd) -> Outcome {
    let EllipticCmd::Bounds { x, grid, format } = cmd;
    let rows: Vec<BoundsReport> = match (x, grid) {
        (Some(x), None) => vec![bounds(x)?],
        (None, Some(g)) => {
            let (lo, hi, step) = parse_grid(&g)?;
            bounds_grid(lo, hi, step)?
        }
        _ => return Err(Failure::Usage("give --x or --grid".into())),
    };
    let ok = rows.iter().all(|r| r.chain_ok);
    let out = match format {
        Format::Csv => bounds_csv(&rows),
        Format::Json if rows.len() == 1 => to_json(&rows[0]),
        Format::Json => to_json(&rows),
    };
    Ok((out, ok))
}

fn run_dft(cmd: DftCmd) -> Outcome {
    let DftCmd::Uncertainty { input, zero_tol } = cmd;
    let a: Vec<Complex64> = read_rows(&input, 2)?.iter().map(|r| Complex64::new(r[0], r[1])).collect();
    let r = dft_uncertainty(&a, zero_tol)?;
    let holds = r.holds;
    ok_json(&r, holds)
}

fn run_lorentz(cmd: LorentzCmd) -> Outcome {
    let LorentzCmd::Chain { mean, x0, x, y0, y } = cmd;
    let r = lorentz_chain(x0, &number_list(&x)?, y0, &number_list(&y)?, &mean_spec(&mean)?)?;
    let ordered = r.ordered;
    ok_json(&r, ordered)
}

fn lib_exit(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
///
/// Exit codes: 0 success, 1 a verified chain or property failed, 2 usage or
/// parse error, 3 numeric or domain error.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                CommandResult { exit_code: code, stdout: text, stderr: String::new() }
            } else {
                CommandResult { exit_code: code, stdout: String::new(), stderr: text }
            };
        }
    };
    let outcome = match cli.command {
        Command::Means(c) => run_means(c),
        Command::Young(c) => run_young(c),
        Command::Cbs(c) => run_cbs(c),
        Command::Compare(a) => run_compare(a),
        Command::Elliptic(c) => run_elliptic(c),
        Command::Dft(c) => run_dft(c),
        Command::Lorentz(c) => run_lorentz(c),
    };
    match outcome {
        Ok((stdout, true)) => CommandResult { exit_code: EXIT_OK, stdout, stderr: String::new() },
        Ok((stdout, false)) => CommandResult {
            exit_code: EXIT_VERIFICATION,
            stdout,
            stderr: "verification failed\n".into(),
        },
        Err(Failure::Usage(msg)) => CommandResult {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => CommandResult {
            exit_code: lib_exit(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
