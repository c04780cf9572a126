//! Command-line front end. [`run`] does all the work so tests can drive it
//! without spawning a process.

mod emit;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goldenz::fib::{self, Engine};
use goldenz::lti::{self, cascade};
use goldenz::response::{self, parse_signal, simulate_difference_equation};
use goldenz::{InverseZ, Polynomial, QuadRational, RationalSystem, RocSelector};

pub use emit::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] goldenz::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Check(String),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "goldenz",
    version,
    about = "Fibonacci sequences as a rational LTI system, computed exactly"
)]
struct Cli {
    /// Output format; the default depends on the subcommand.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate Fibonacci numbers with one of the engines.
    Gen {
        #[arg(long, value_enum, default_value_t = EngineArg::Recursive)]
        engine: EngineArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
        #[arg(long, default_value_t = 11)]
        count: usize,
    },
    /// Poles, regions of convergence and partial fractions of a system.
    Analyze(SystemArgs),
    /// Impulse response for a chosen region of convergence.
    Impz {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Unit-circle magnitude and phase on a uniform grid over [0, pi].
    Freqz {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 512)]
        points: usize,
    },
    /// Response to an input read from an `index,value` file.
    Respond {
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        /// Last output index.
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Numerator; with --den, the response comes from the difference equation.
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        num: Option<Polynomial>,
        /// Denominator; omitted means the Fibonacci system via its weighted-sum form.
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        den: Option<Polynomial>,
    },
    /// Step response of the Fibonacci system in closed form.
    Step {
        #[arg(long, default_value_t = 8)]
        to: i64,
    },
    /// Series connection of two systems and its impulse response.
    Cascade {
        #[command(flatten)]
        system: SystemArgs,
        /// Second numerator (defaults to the first system's).
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        num2: Option<Polynomial>,
        /// Second denominator (defaults to the first system's).
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        den2: Option<Polynomial>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Identity checks over 1..=n-max.
    Props {
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        /// Instead, print the sequence values tied to the index 1729 and to
        /// the exponent 1789 used in its worked example.
        #[arg(long)]
        ramanujan: bool,
    },
    /// Impulse response -n phi^-n of the minimum-phase companion system.
    Minphase {
        #[arg(long, default_value_t = 20)]
        to: i64,
        /// Report how its unit-circle magnitude relates to the Fibonacci system's.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = 512)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Numerator coefficients of z^0, z^-1, ...
    #[arg(long, value_parser = parse_coeffs, default_value = "1", allow_hyphen_values = true)]
    num: Polynomial,
    /// Denominator coefficients of z^0, z^-1, ...
    #[arg(long, value_parser = parse_coeffs, default_value = "1,-1,-1", allow_hyphen_values = true)]
    den: Polynomial,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// causal, anticausal, two-sided, or a 0-based index into the region list.
    #[arg(long, value_parser = parse_roc, default_value = "causal")]
    roc: RocSelector,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    from: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    to: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Recursive,
    Binet,
    Doubling,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Recursive => Engine::Recursive,
            EngineArg::Binet => Engine::Binet,
            EngineArg::Doubling => Engine::FastDoubling,
        }
    }
}

fn parse_coeffs(s: &str) -> Result<Polynomial, String> {
    let coeffs = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<QuadRational>()
                .map_err(|e| format!("`{}`: {e}", c.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(coeffs))
}

fn parse_roc(s: &str) -> Result<RocSelector, String> {
    s.parse().map_err(|e: goldenz::Error| e.to_string())
}

impl SystemArgs {
    fn build(&self) -> CliResult<RationalSystem> {
        Ok(RationalSystem::new(self.num.clone(), self.den.clone())?)
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes its output. Returns the process exit status: 0 on success, 2 on a
/// usage error, 1 when the computation or I/O fails.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let format = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Gen {
            engine,
            start,
            count,
        } => {
            let engine = Engine::from(*engine);
            let values = engine.generate(*start, *count);
            Ok(emit::fib_values(
                format(Format::Text),
                engine.name(),
                &values,
            ))
        }
        Command::Analyze(args) => {
            let sys = args.build()?;
            Ok(emit::analysis(
                format(Format::Json),
                &emit::Analysis::new(&sys)?,
            ))
        }
        Command::Impz { system, window } => {
            let sys = system.build()?;
            let h = sys.impulse_response(window.roc, window.from, window.to)?;
            let notes = vec![format!("roc {}", describe_roc(&sys, window.roc)?)];
            Ok(emit::inverse(format(Format::Text), &h, &notes))
        }
        Command::Freqz { system, points } => {
            let sys = system.build()?;
            let grid = response::freq_response(&sys, *points)?;
            let features = response::response_features(&sys, *points)?;
            Ok(emit::frequency(format(Format::Csv), &grid, &features))
        }
        Command::Respond {
            input,
            to,
            num,
            den,
        } => {
            let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
                path: input.clone(),
                source,
            })?;
            let x = parse_signal(&text)?;
            if x.values.is_empty() {
                return Err(CliError::Check(format!(
                    "{}: input has no samples",
                    input.display()
                )));
            }
            let y = match (num, den) {
                (None, None) => response::respond_closed_form(&x, *to),
                (num, den) => {
                    let sys = RationalSystem::new(
                        num.clone().unwrap_or_else(Polynomial::one),
                        den.clone().unwrap_or_else(Polynomial::one),
                    )?;
                    simulate_difference_equation(&sys, &x, *to)?
                }
            };
            let notes = vec![format!(
                "input support [{}, {}], output truncated at n={}",
                x.n0,
                x.n1(),
                to
            )];
            Ok(emit::inverse(
                format(Format::Text),
                &InverseZ::Exact(y),
                &notes,
            ))
        }
        Command::Step { to } => {
            if *to < 0 {
                return Err(goldenz::Error::Domain("--to must be non-negative".into()).into());
            }
            let y = response::step_response_closed_form(*to);
            let notes = vec!["y(n) = f(n+3) - 1".to_string()];
            Ok(emit::inverse(
                format(Format::Text),
                &InverseZ::Exact(y),
                &notes,
            ))
        }
        Command::Cascade {
            system,
            num2,
            den2,
            window,
        } => {
            let a = system.build()?;
            let b = RationalSystem::new(
                num2.clone().unwrap_or_else(|| system.num.clone()),
                den2.clone().unwrap_or_else(|| system.den.clone()),
            )?;
            let sys = cascade(&attach_poles(a)?, &attach_poles(b)?)?;
            let h = sys.impulse_response(window.roc, window.from, window.to)?;
            let notes = vec![
                format!("num {}", sys.numerator()),
                format!("den {}", sys.denominator()),
                format!("roc {}", describe_roc(&sys, window.roc)?),
            ];
            Ok(emit::inverse(format(Format::Text), &h, &notes))
        }
        Command::Props {
            ramanujan: true, ..
        } => Ok(emit::ramanujan(
            format(Format::Text),
            &fib::ramanujan_indices(),
        )),
        Command::Props { n_max, .. } => {
            if *n_max < 2 {
                return Err(goldenz::Error::Domain("--n-max must be at least 2".into()).into());
            }
            Ok(emit::identities(
                format(Format::Text),
                &fib::check_identities(*n_max),
            ))
        }
        Command::Minphase {
            to,
            compare,
            points,
        } => {
            if *compare {
                let cmp = response::compare_magnitudes(
                    &response::min_phase_system(),
                    &RationalSystem::fibonacci(),
                    *points,
                )?;
                return Ok(emit::comparison(format(Format::Text), &cmp));
            }
            if *to < 0 {
                return Err(goldenz::Error::Domain("--to must be non-negative".into()).into());
            }
            let closed = response::min_phase_impulse(*to);
            let sim = simulate_difference_equation(
                &response::min_phase_system(),
                &response::make_impulse(),
                *to,
            )?;
            if sim != closed {
                return Err(CliError::Check(
                    "closed form disagrees with the difference equation".into(),
                ));
            }
            let notes = vec!["h(n) = -n phi^-n".to_string()];
            Ok(emit::inverse(
                format(Format::Text),
                &InverseZ::Exact(closed),
                &notes,
            ))
        }
    }
}

/// Factors the denominator up front so cascades keep exact poles.
fn attach_poles(sys: RationalSystem) -> CliResult<RationalSystem> {
    let poles = sys.poles()?;
    if poles.iter().all(|p| p.is_exact()) {
        Ok(sys.clone().with_poles(poles).unwrap_or(sys))
    } else {
        Ok(sys)
    }
}

fn describe_roc(sys: &RationalSystem, selector: RocSelector) -> CliResult<String> {
    let poles = sys.poles()?;
    let rocs = lti::enumerate_rocs(&poles);
    let roc = selector.select(&rocs, &poles)?;
    let c = lti::classify(roc, &poles);
    Ok(format!(
        "{roc} ({}, {})",
        roc.kind(),
        if c.stable { "stable" } else { "unstable" }
    ))
}
