//! Command-line front end: bound queries on built-in families and CSV
//! rectangles, spectrum utilities, embezzlement searches, and the
//! seeded verification suite.
//!
//! Exit codes: 0 on success, 1 on an invariant violation (a failing
//! verify suite or an exhausted embezzlement search), 2 on usage or
//! input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use renyicc::bounds::{
    self, function_bound_promise, function_bound_uniform, function_promise_sweep,
    function_uniform_sweep, state_approx_bound, BoundReport, ParamValue,
};
use renyicc::embezzle::{embezzle_fidelity, min_embezzle_dim, EmbezzleResult};
use renyicc::rectangles::Rectangle;
use renyicc::report::{bound_report_json, embezzle_result_json, sweep_csv, Json};
use renyicc::spectra::{Order, Spectrum};
use renyicc::verify;
use renyicc::Error;

#[derive(Parser)]
#[command(name = "renyicc", version, about = "Rényi-entropic communication complexity bounds")]
struct Cli {
    /// Seed for the verification suites
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,

    /// Output format (csv is available for function-bound sweeps)
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Ip,
    Qchar,
}

#[derive(Subcommand)]
enum Command {
    /// Rényi entropy of a spectrum file at one order
    Entropy {
        /// Spectrum file: one decimal value per line
        #[arg(long)]
        spectrum: PathBuf,
        /// Order: a real >= 0 or the literal "inf"
        #[arg(long)]
        alpha: String,
    },
    /// Lower bounds for a distributed Boolean function
    FunctionBound {
        /// Built-in family (requires --n for ip, --q for qchar)
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Rectangle CSV file (entries -1, 0, 1)
        #[arg(long)]
        rectangle: Option<PathBuf>,
        /// Input length in bits for the ip family
        #[arg(long)]
        n: Option<u32>,
        /// Field size for the qchar family (odd prime)
        #[arg(long)]
        q: Option<u64>,
        /// Allowed error probability, 0 <= eps < 1/2
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
    },
    /// Transformation lower bound between two spectra
    StateBound {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Allowed infidelity, 0 <= eps < 1
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Use the exact-transformation bound instead of the eps-error one
        #[arg(long)]
        exact: bool,
    },
    /// Embezzlement fidelity at a fixed dimension, or the minimal
    /// dimension reaching a fidelity goal
    Embezzle {
        /// Target spectrum file
        #[arg(long)]
        target: Option<PathBuf>,
        /// Target a maximally entangled state of this rank instead
        #[arg(long)]
        target_epr: Option<u64>,
        /// Search for the smallest power-of-two dimension with fidelity > 1-eps
        #[arg(long)]
        eps: Option<f64>,
        /// Probe a single catalyst dimension
        #[arg(long)]
        dim: Option<u64>,
    },
    /// Run the seeded verification suites
    Verify {
        /// One of: all, linalg, spectra, bounds, embezzle
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

struct Failure {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 2,
    }
}

fn from_error(e: Error) -> Failure {
    let code = match e {
        Error::EmbezzleCap { .. } => 1,
        _ => 2,
    };
    Failure {
        message: format!("error: {e}"),
        code,
    }
}

struct RunOutput {
    text: String,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<RunOutput, Failure> {
    match &cli.command {
        Command::Entropy { spectrum, alpha } => cmd_entropy(cli, spectrum, alpha),
        Command::FunctionBound {
            family,
            rectangle,
            n,
            q,
            eps,
        } => cmd_function_bound(cli, *family, rectangle.as_deref(), *n, *q, *eps),
        Command::StateBound {
            phi,
            psi,
            eps,
            exact,
        } => cmd_state_bound(cli, phi, psi, *eps, *exact),
        Command::Embezzle {
            target,
            target_epr,
            eps,
            dim,
        } => cmd_embezzle(cli, target.as_deref(), *target_epr, *eps, *dim),
        Command::Verify { suite } => cmd_verify(cli, suite),
    }
}

fn require_json(cli: &Cli) -> Result<(), Failure> {
    if cli.format == OutputFormat::Csv {
        return Err(usage(
            "error: csv output is only available for function-bound sweeps",
        ));
    }
    Ok(())
}

fn cmd_entropy(cli: &Cli, spectrum: &Path, alpha: &str) -> Result<RunOutput, Failure> {
    require_json(cli)?;
    let order: Order = alpha
        .parse()
        .map_err(|_| usage(format!("error: bad --alpha {alpha:?}; expected a real >= 0 or \"inf\"")))?;
    let spec = Spectrum::load(spectrum).map_err(from_error)?;
    let json = Json::Object(vec![
        (
            "alpha".to_string(),
            match order {
                Order::Inf => Json::Text("inf".to_string()),
                Order::Finite(a) => Json::Real(a),
            },
        ),
        ("entropy_bits".to_string(), Json::Real(spec.renyi(order))),
        ("rank".to_string(), Json::Int(spec.rank() as i64)),
    ]);
    Ok(RunOutput {
        text: json.render() + "\n",
        exit: 0,
    })
}

fn cmd_function_bound(
    cli: &Cli,
    family: Option<Family>,
    rectangle: Option<&Path>,
    n: Option<u32>,
    q: Option<u64>,
    eps: f64,
) -> Result<RunOutput, Failure> {
    match (family, rectangle) {
        (Some(Family::Ip), None) => {
            let n = n.ok_or_else(|| usage("error: --family ip requires --n"))?;
            if !(1..=13).contains(&n) {
                return Err(usage(format!("error: --n {n} outside 1..=13")));
            }
            // R_ip has integer-orthogonal rows, so its spectrum is exactly
            // flat; the eigensolver route is cross-checked in the test suite.
            let sigma = Spectrum::uniform(1usize << n).map_err(from_error)?;
            if cli.format == OutputFormat::Csv {
                let sweep = function_uniform_sweep(&sigma, eps).map_err(from_error)?;
                return Ok(RunOutput {
                    text: sweep_csv("ip", &n.to_string(), eps, &sweep),
                    exit: 0,
                });
            }
            let mut report = function_bound_uniform(&sigma, eps).map_err(from_error)?;
            report.params = vec![
                ("family".to_string(), ParamValue::Text("ip".to_string())),
                ("n".to_string(), ParamValue::Int(n as u64)),
            ];
            let closed = bounds::ip_bounds_closed(n, eps).map_err(from_error)?;
            report
                .companions
                .push(("lower_closed".to_string(), closed.value_bits));
            report.companions.push((
                "upper_closed".to_string(),
                closed.companion("upper").unwrap(),
            ));
            report.companions.push((
                "classical_cstar".to_string(),
                closed.companion("classical_cstar").unwrap(),
            ));
            render_bound(report)
        }
        (Some(Family::Qchar), None) => {
            let q = q.ok_or_else(|| usage("error: --family qchar requires --q"))?;
            let rect = Rectangle::qchar(q).map_err(from_error)?;
            if cli.format == OutputFormat::Csv {
                let sweep = function_promise_sweep(&rect, eps).map_err(from_error)?;
                return Ok(RunOutput {
                    text: sweep_csv("qchar", &q.to_string(), eps, &sweep),
                    exit: 0,
                });
            }
            let mut report = function_bound_promise(&rect, eps).map_err(from_error)?;
            report.params = vec![
                ("family".to_string(), ParamValue::Text("qchar".to_string())),
                ("q".to_string(), ParamValue::Int(q)),
            ];
            let closed = bounds::qchar_bound_closed(q, eps).map_err(from_error)?;
            report
                .companions
                .push(("lower_closed".to_string(), closed.value_bits));
            report.companions.push((
                "upper_closed".to_string(),
                closed.companion("upper").unwrap(),
            ));
            render_bound(report)
        }
        (None, Some(path)) => {
            let rect = Rectangle::from_csv(path).map_err(from_error)?;
            let name = path.display().to_string();
            if rect.is_full_support() {
                let sigma = rect.function_spectrum().map_err(from_error)?;
                if cli.format == OutputFormat::Csv {
                    let sweep = function_uniform_sweep(&sigma, eps).map_err(from_error)?;
                    return Ok(RunOutput {
                        text: sweep_csv("rectangle", &name, eps, &sweep),
                        exit: 0,
                    });
                }
                let mut report = function_bound_uniform(&sigma, eps).map_err(from_error)?;
                report.params = vec![("rectangle".to_string(), ParamValue::Text(name))];
                render_bound(report)
            } else {
                if cli.format == OutputFormat::Csv {
                    let sweep = function_promise_sweep(&rect, eps).map_err(from_error)?;
                    return Ok(RunOutput {
                        text: sweep_csv("rectangle", &name, eps, &sweep),
                        exit: 0,
                    });
                }
                let mut report = function_bound_promise(&rect, eps).map_err(from_error)?;
                report.params = vec![("rectangle".to_string(), ParamValue::Text(name))];
                render_bound(report)
            }
        }
        (Some(_), Some(_)) => Err(usage(
            "error: pass exactly one of --family or --rectangle",
        )),
        (None, None) => Err(usage(
            "error: pass exactly one of --family or --rectangle",
        )),
    }
}

fn cmd_state_bound(
    cli: &Cli,
    phi: &Path,
    psi: &Path,
    eps: f64,
    exact: bool,
) -> Result<RunOutput, Failure> {
    require_json(cli)?;
    let phi_spec = Spectrum::load(phi).map_err(from_error)?;
    let psi_spec = Spectrum::load(psi).map_err(from_error)?;
    let mut report = if exact {
        bounds::exact_transform_bound(&phi_spec, &psi_spec)
    } else {
        state_approx_bound(&phi_spec, &psi_spec, eps).map_err(from_error)?
    };
    report.params = vec![
        (
            "phi".to_string(),
            ParamValue::Text(phi.display().to_string()),
        ),
        (
            "psi".to_string(),
            ParamValue::Text(psi.display().to_string()),
        ),
    ];
    render_bound(report)
}

fn cmd_embezzle(
    cli: &Cli,
    target: Option<&Path>,
    target_epr: Option<u64>,
    eps: Option<f64>,
    dim: Option<u64>,
) -> Result<RunOutput, Failure> {
    require_json(cli)?;
    let (spec, descriptor) = match (target, target_epr) {
        (Some(path), None) => (
            Spectrum::load(path).map_err(from_error)?,
            format!("file:{}", path.display()),
        ),
        (None, Some(k)) => (
            Spectrum::uniform(k as usize).map_err(from_error)?,
            format!("epr:{k}"),
        ),
        _ => return Err(usage("error: pass exactly one of --target or --target-epr")),
    };
    let result = match (eps, dim) {
        (Some(eps), None) => min_embezzle_dim(&spec, eps, &descriptor).map_err(from_error)?,
        (None, Some(d)) => {
            if d == 0 {
                return Err(usage("error: --dim must be at least 1"));
            }
            let fidelity = embezzle_fidelity(d, &spec).map_err(from_error)?;
            EmbezzleResult {
                d,
                fidelity,
                target: descriptor,
                eps_target: None,
                predecessor: None,
            }
        }
        _ => return Err(usage("error: pass exactly one of --eps or --dim")),
    };
    Ok(RunOutput {
        text: embezzle_result_json(&result).render() + "\n",
        exit: 0,
    })
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<RunOutput, Failure> {
    require_json(cli)?;
    let outcomes = verify::run(suite, cli.seed).map_err(|e| usage(format!("error: {e}")))?;
    let violations: usize = outcomes.iter().map(|s| s.violations()).sum();
    Ok(RunOutput {
        text: verify::render(suite, cli.seed, &outcomes),
        exit: if violations == 0 { 0 } else { 1 },
    })
}

fn render_bound(report: BoundReport) -> Result<RunOutput, Failure> {
    Ok(RunOutput {
        text: bound_report_json(&report).render() + "\n",
        exit: 0,
    })
}
