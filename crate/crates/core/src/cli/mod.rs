//! Command-line front end.
//!
//! Every invocation is first resolved into a [`RunConfig`], which is embedded
//! in the output file. Passing that file back through `--config` reruns the
//! same computation and reproduces the file byte for byte.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 usage or validation
//! error, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::Error;
use crate::modulation::{Envelope, Exponent, LatticeSpec, Measure, Window};
use crate::uncertainty::{RegimeInput, WitnessConfig};
pub use config::RunConfig;
use config::{
    parse_complex, CommandConfig, Direction, Family, GridSettings, Grids, InputSource, LinSpace,
    OutputFormat, Subject, Suite,
};
use output::Body;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(Error),
    #[error("{0}")]
    Numerical(Error),
    #[error("input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Pole(_) | Error::NonConvergence { .. } | Error::Positivity { .. } => {
                CliError::Numerical(e)
            }
            _ => CliError::Validation(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cherednik", version, about = "Opdam–Cherednik transform toolkit")]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0.75, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, global = true, default_value_t = 0.25, allow_negative_numbers = true)]
    beta: f64,

    /// Spatial grid half-width.
    #[arg(long, global = true, default_value_t = 8.0)]
    x_max: f64,
    #[arg(long, global = true, default_value_t = 32)]
    x_panels: usize,
    #[arg(long, global = true, default_value_t = 16)]
    x_nodes: usize,
    /// Spectral grid half-width.
    #[arg(long, global = true, default_value_t = 20.0)]
    lambda_max: f64,
    #[arg(long, global = true, default_value_t = 40)]
    lambda_panels: usize,
    #[arg(long, global = true, default_value_t = 16)]
    lambda_nodes: usize,

    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Output format; inferred from the output extension when absent.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, env = "CHEREDNIK_WORKERS")]
    workers: Option<usize>,
    /// Rerun the configuration embedded in a previous output file (or a bare
    /// config JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate G, phi, A, B, C, the Plancherel density or the heat kernel.
    Eval {
        #[arg(value_enum)]
        subject: SubjectArg,
        /// Spectral parameter, e.g. `2` or `1+0.5i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// `lo:hi:n`
        #[arg(long, allow_hyphen_values = true)]
        x_grid: Option<LinSpace>,
        /// `lo:hi:n`, for C and density.
        #[arg(long, allow_hyphen_values = true)]
        lambda_grid: Option<LinSpace>,
    },
    /// Forward or inverse transform of a named family or of CSV samples
    /// (`x,re,im` at the nodes of the configured grid).
    Transform {
        #[arg(value_enum)]
        direction: DirectionArg,
        #[arg(long, default_value = "gaussian_envelope")]
        family: String,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, conflicts_with = "family")]
        input: Option<String>,
        /// Output points `lo:hi:n` (λ for forward, x otherwise).
        #[arg(long, allow_hyphen_values = true)]
        points: Option<LinSpace>,
    },
    /// Heat kernel values and the log of its Gaussian-envelope ratio.
    Heat {
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4:81")]
        x_grid: LinSpace,
    },
    /// Short-time Fourier transform on a uniform lattice.
    Stft {
        #[arg(long, default_value = "constant")]
        family: String,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        window_width: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4:33")]
        x_lattice: LinSpace,
        #[arg(long, allow_hyphen_values = true, default_value = "-4:4:33")]
        w_lattice: LinSpace,
    },
    /// Truncated mixed norms of a family, optionally times a growth envelope.
    Modnorm {
        #[arg(long, default_value = "gaussian_envelope")]
        family: String,
        #[arg(long)]
        t: Option<f64>,
        /// `gaussian:a` or `power:a:mu`.
        #[arg(long)]
        envelope: Option<String>,
        #[arg(long, default_value = "2")]
        p: Exponent,
        #[arg(long, default_value = "2")]
        q: Exponent,
        #[arg(long, value_enum, default_value = "a-weighted")]
        measure: MeasureArg,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        truncations: Vec<f64>,
        #[arg(long, default_value_t = 8.0)]
        w_cap: f64,
        #[arg(long, default_value_t = 0.125)]
        w_step: f64,
    },
    /// Run the self-check suites; exit status 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Spectral parameters for the eigen suite (comma separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Extra random λ drawn from `--seed`.
        #[arg(long, default_value_t = 3)]
        random_lambdas: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify an uncertainty-principle regime and optionally probe the
    /// heat-kernel witness.
    Regime {
        #[arg(value_enum)]
        principle: PrincipleArg,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        p: Option<Exponent>,
        #[arg(long)]
        q: Option<Exponent>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        nu: Option<f64>,
        /// Compute the witness norm sequences at `--t`.
        #[arg(long)]
        probe: bool,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        spatial_truncations: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
        spectral_truncations: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SubjectArg {
    #[value(name = "G")]
    G,
    #[value(name = "phi")]
    Phi,
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    Density,
    Heat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Inverse,
    Roundtrip,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureArg {
    AWeighted,
    SigmaWeighted,
    Lebesgue,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Eigen,
    Plancherel,
    Roundtrip,
    Sandwich,
    Stft,
    DensityGrowth,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PrincipleArg {
    CowlingPrice,
    Hardy,
    Morgan,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(Error::InvalidArgument(msg.into()))
}

fn parse_envelope(s: &str) -> Result<Envelope, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let f = |k: usize| -> Result<f64, CliError> {
        parts
            .get(k)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| invalid(format!("bad envelope '{s}'")))
    };
    match (parts[0], parts.len()) {
        ("gaussian", 2) => Ok(Envelope::Gaussian { a: f(1)? }),
        ("power", 3) => Ok(Envelope::Power { a: f(1)?, mu: f(2)? }),
        _ => Err(invalid(format!("bad envelope '{s}'; use gaussian:a or power:a:mu"))),
    }
}

fn resolve(global: &GlobalArgs, command: Command) -> Result<RunConfig, CliError> {
    let command = match command {
        Command::Eval { subject, lambda, t, x, x_grid, lambda_grid } => {
            let subject = match subject {
                SubjectArg::G => Subject::G,
                SubjectArg::Phi => Subject::Phi,
                SubjectArg::A => Subject::A,
                SubjectArg::B => Subject::B,
                SubjectArg::C => Subject::C,
                SubjectArg::Density => Subject::Density,
                SubjectArg::Heat => Subject::Heat,
            };
            let lambda = lambda.as_deref().map(parse_complex).transpose()?;
            let points = match subject {
                Subject::C | Subject::Density => match (lambda_grid, lambda) {
                    (Some(g), _) => g,
                    (None, Some(l)) if l.im == 0.0 => LinSpace::single(l.re),
                    _ => return Err(invalid("C and density need --lambda-grid or a real --lambda")),
                },
                _ => match (x_grid, x) {
                    (Some(g), _) => g,
                    (None, Some(x)) => LinSpace::single(x),
                    (None, None) => LinSpace { lo: -3.0, hi: 3.0, n: 61 },
                },
            };
            CommandConfig::Eval { subject, lambda, t, points }
        }
        Command::Transform { direction, family, t, input, points } => {
            let direction = match direction {
                DirectionArg::Forward => Direction::Forward,
                DirectionArg::Inverse => Direction::Inverse,
                DirectionArg::Roundtrip => Direction::Roundtrip,
            };
            let input = match input {
                Some(path) => InputSource::Csv { path },
                None => InputSource::Family { family: Family::parse(&family, t)? },
            };
            let points = points.unwrap_or(match direction {
                Direction::Forward => LinSpace { lo: 0.0, hi: 5.0, n: 21 },
                _ => LinSpace { lo: -3.0, hi: 3.0, n: 25 },
            });
            CommandConfig::Transform { direction, input, points }
        }
        Command::Heat { t, x, x_grid } => CommandConfig::Heat {
            t,
            points: x.map(LinSpace::single).unwrap_or(x_grid),
        },
        Command::Stft { family, t, window_width, x_lattice, w_lattice } => CommandConfig::Stft {
            family: Family::parse(&family, t)?,
            window_width,
            x: x_lattice,
            w: w_lattice,
        },
        Command::Modnorm { family, t, envelope, p, q, measure, truncations, w_cap, w_step } => {
            CommandConfig::Modnorm {
                family: Family::parse(&family, t)?,
                envelope: envelope.as_deref().map(parse_envelope).transpose()?,
                p,
                q,
                measure: match measure {
                    MeasureArg::AWeighted => Measure::AWeighted,
                    MeasureArg::SigmaWeighted => Measure::SigmaWeighted,
                    MeasureArg::Lebesgue => Measure::Lebesgue,
                },
                truncations,
                lattice: LatticeSpec { w_cap, w_step, window: Window::default(), ..LatticeSpec::default() },
            }
        }
        Command::Verify { suite, lambda, random_lambdas, seed } => CommandConfig::Verify {
            suite: match suite {
                SuiteArg::Eigen => Suite::Eigen,
                SuiteArg::Plancherel => Suite::Plancherel,
                SuiteArg::Roundtrip => Suite::Roundtrip,
                SuiteArg::Sandwich => Suite::Sandwich,
                SuiteArg::Stft => Suite::Stft,
                SuiteArg::DensityGrowth => Suite::DensityGrowth,
                SuiteArg::All => Suite::All,
            },
            lambdas: lambda.iter().map(|s| parse_complex(s)).collect::<Result<Vec<Complex64>, _>>()?,
            random_lambdas,
            seed,
        },
        Command::Regime {
            principle,
            a,
            b,
            p,
            q,
            mu,
            nu,
            probe,
            t,
            spatial_truncations,
            spectral_truncations,
        } => {
            let two = Exponent::Finite(2.0);
            let input = match principle {
                PrincipleArg::CowlingPrice => {
                    RegimeInput::cowling_price(a, b, p.unwrap_or(two), q.unwrap_or(two))
                }
                PrincipleArg::Hardy => {
                    let mut input = RegimeInput::hardy(a, b);
                    input.p = p.unwrap_or(Exponent::Infinite);
                    input.q = q.unwrap_or(Exponent::Infinite);
                    input
                }
                PrincipleArg::Morgan => {
                    let mu = mu.ok_or_else(|| invalid("morgan needs --mu"))?;
                    let mut input =
                        RegimeInput::morgan(a, b, p.unwrap_or(two), q.unwrap_or(two), mu);
                    if nu.is_some() {
                        input.morgan_nu = nu;
                    }
                    input
                }
            };
            let probe_t = if probe {
                Some(t.or_else(|| (b < 1.0 / (4.0 * a)).then(|| 0.5 * (b + 1.0 / (4.0 * a)))).ok_or_else(
                    || invalid("--probe needs --t when the witness interval is empty"),
                )?)
            } else {
                None
            };
            CommandConfig::Regime {
                input,
                probe_t,
                ladder: WitnessConfig {
                    spatial_truncations,
                    spectral_truncations,
                    lattice: LatticeSpec::default(),
                },
            }
        }
    };
    let format = match global.format {
        Some(FormatArg::Json) => OutputFormat::Json,
        Some(FormatArg::Csv) => OutputFormat::Csv,
        None if global.output.as_ref().and_then(|p| p.extension()).is_some_and(|e| e == "csv") => {
            OutputFormat::Csv
        }
        None => OutputFormat::Json,
    };
    Ok(RunConfig {
        alpha: global.alpha,
        beta: global.beta,
        grids: Grids {
            spatial: GridSettings {
                half_width: global.x_max,
                panels: global.x_panels,
                nodes_per_panel: global.x_nodes,
            },
            spectral: GridSettings {
                half_width: global.lambda_max,
                panels: global.lambda_panels,
                nodes_per_panel: global.lambda_nodes,
            },
        },
        format,
        command,
    })
}

fn load_config(path: &PathBuf, format: Option<FormatArg>) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value = value.get("config").cloned().unwrap_or(value);
    let mut config: RunConfig = serde_json::from_value(value)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    match format {
        Some(FormatArg::Json) => config.format = OutputFormat::Json,
        Some(FormatArg::Csv) => config.format = OutputFormat::Csv,
        None => {}
    }
    Ok(config)
}

fn run_parsed(cli: Cli) -> Result<i32, CliError> {
    let config = match (&cli.global.config, cli.command) {
        (Some(path), None) => load_config(path, cli.global.format)?,
        (Some(_), Some(_)) => return Err(invalid("--config replaces the subcommand; give only one")),
        (None, Some(command)) => resolve(&cli.global, command)?,
        (None, None) => return Err(invalid("no subcommand given; see --help")),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.workers {
        if n == 0 {
            return Err(invalid("--workers must be at least 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let out = pool.install(|| commands::execute(&config))?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let text = out.render();
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let failed = match &out.body {
        Body::Checks(checks) => checks.iter().filter(|c| !c.passed).count(),
        _ => 0,
    };
    if failed > 0 {
        eprintln!("{failed} check(s) failed");
        return Ok(1);
    }
    Ok(0)
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
