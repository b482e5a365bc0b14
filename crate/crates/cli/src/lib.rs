//! Command-line front end: `check`, `verify-paper` and `orders validate`.
//!
//! Exit codes: 0 when the property is verified (or vacuous), the suites pass
//! or the order is admissible; 1 on a counterexample or failed validation;
//! 2 on usage, contract and evaluation errors.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ivmono::claims;
use ivmono::{
    check_directional_adm, check_directional_km, check_g_weak, check_increasing, check_weak_adm,
    check_weak_km, is_admissible, Builtin, CheckError, CheckResult, DegenerateVec, FunctionError,
    IVFunction, OrderSpec, RealPairs, SamplingConfig, Sense,
};
use serde::Serialize;
use thiserror::Error;

pub use report::{OrdersReport, Report, SuiteReport, VERSION};

#[derive(Debug, Parser)]
#[command(
    name = "ivmono",
    version,
    about = "Monotonicity checks for interval-valued functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one monotonicity property of one function.
    Check(CheckArgs),
    /// Run the three instance suites over the builtin catalogue.
    VerifyPaper(SuiteArgs),
    /// Order utilities.
    Orders {
        #[command(subcommand)]
        command: OrdersCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OrdersCommand {
    /// Empirically check that an order is total and refines Kulisch–Miranker.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Increasing,
    Decreasing,
    WeakInc,
    WeakDec,
    DirInc,
    DirDec,
    GWeakInc,
    GWeakDec,
}

impl Property {
    fn sense(self) -> Sense {
        match self {
            Property::Increasing | Property::WeakInc | Property::DirInc | Property::GWeakInc => {
                Sense::Increasing
            }
            _ => Sense::Decreasing,
        }
    }

    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Debug, Args)]
struct Sampling {
    /// Endpoint pitch of the interval grid.
    #[arg(long, default_value_t = 0.1)]
    grid_step: f64,
    /// Random base points added after the grid.
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Shift samples per base point.
    #[arg(long, default_value_t = 8)]
    shifts: usize,
    /// RNG seed, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
    seed: u64,
}

impl Sampling {
    fn config(&self) -> SamplingConfig {
        SamplingConfig {
            grid_step: self.grid_step,
            random_count: self.random,
            shift_count: self.shifts,
            seed: self.seed,
            ..SamplingConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Builtin name (`mean`, `wmean(0.3,0.7)`, `g-max(lex-lower)`, ...) or
    /// an expression over X1..Xn.
    #[arg(long)]
    function: String,
    #[arg(long)]
    arity: usize,
    /// km, lex-lower, lex-upper, xu-yager or two-key:<k1>,<k2>.
    #[arg(long)]
    order: String,
    #[arg(long, value_enum)]
    property: Property,
    /// Real pairs `a1,b1;...;an,bn` (Kulisch–Miranker order only).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "direction_deg")]
    direction: Option<String>,
    /// Degenerate direction `v1,...,vn`.
    #[arg(long, allow_hyphen_values = true)]
    direction_deg: Option<String>,
    /// G-function for g-weak properties; bare `g-max` takes the --order.
    #[arg(long)]
    g: Option<String>,
    #[command(flatten)]
    sampling: Sampling,
    /// Only sample degenerate uniform shifts `[c,c]`.
    #[arg(long)]
    degenerate_shifts: bool,
    /// Leave `[0,0]` out of the G parameters.
    #[arg(long)]
    exclude_zero_lambda: bool,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    order: String,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("{s:?} is not a seed: {e}"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_order(flag: &str, text: &str) -> Result<OrderSpec, CliError> {
    text.parse().map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_reals(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| usage(format!("{flag}: {:?} is not a real number", v.trim())))
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    text.split(';')
        .map(|p| match parse_reals("--direction", p)?.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(usage(format!(
                "--direction: {:?} is not a pair a,b",
                p.trim()
            ))),
        })
        .collect()
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Resolves `--g`: `g-max` alone takes the checked order, an explicit
/// `g-max(<order>)` must match it.
fn resolve_g(text: &str, order: &OrderSpec) -> Result<IVFunction, CliError> {
    if text.trim() == "g-max" {
        return Ok(IVFunction::g_max(*order));
    }
    let g = IVFunction::from_spec(text, 2)?;
    if let ivmono::function::Body::Builtin(Builtin::GMax(o)) = g.body() {
        if o != order {
            return Err(usage(format!(
                "--g: {g} uses order {o}, but --order is {order}"
            )));
        }
    }
    Ok(g)
}

struct Checked {
    result: CheckResult,
    function: IVFunction,
    order: OrderSpec,
    direction: Option<String>,
    g: Option<String>,
}

fn run_check(a: &CheckArgs) -> Result<Checked, CliError> {
    let order = parse_order("--order", &a.order)?;
    let f = IVFunction::from_spec(&a.function, a.arity)?;
    let cfg = SamplingConfig {
        degenerate_shifts: a.degenerate_shifts,
        exclude_zero_lambda: a.exclude_zero_lambda,
        ..a.sampling.config()
    };
    cfg.validate()
        .map_err(|e| usage(format!("sampling flags: {e}")))?;
    let sense = a.property.sense();
    let prop = a.property.name();
    let no_flag = |flag: &str, cond: bool| {
        if cond {
            Err(usage(format!(
                "{flag} does not apply to --property {prop} with --order {order}"
            )))
        } else {
            Ok(())
        }
    };
    let mut direction = None;
    let mut g_name = None;
    let result = match a.property {
        Property::Increasing | Property::Decreasing => {
            no_flag(
                "--direction",
                a.direction.is_some() || a.direction_deg.is_some(),
            )?;
            no_flag("--g", a.g.is_some())?;
            check_increasing(&f, &order, &cfg, sense)?
        }
        Property::WeakInc | Property::WeakDec => {
            no_flag("--g", a.g.is_some())?;
            no_flag("--direction-deg", a.direction_deg.is_some())?;
            if order.is_total() {
                no_flag("--direction", a.direction.is_some())?;
                check_weak_adm(&f, &order, &cfg, sense)?
            } else {
                let pair = match &a.direction {
                    None => (1.0, 1.0),
                    Some(text) => match parse_pairs(text)?.as_slice() {
                        [p] => *p,
                        _ => {
                            return Err(usage(
                                "--direction: weak properties take a single pair a,b",
                            ))
                        }
                    },
                };
                direction = Some(format!("{},{}", pair.0, pair.1));
                check_weak_km(&f, pair, &cfg, sense)?
            }
        }
        Property::DirInc | Property::DirDec => {
            no_flag("--g", a.g.is_some())?;
            match (&a.direction, &a.direction_deg, order.is_total()) {
                (Some(text), None, false) => {
                    direction = Some(text.clone());
                    let dir = RealPairs::new(parse_pairs(text)?)
                        .map_err(|e| usage(format!("--direction: {e}")))?;
                    check_directional_km(&f, &dir, &cfg, sense)?
                }
                (None, Some(text), total) => {
                    direction = Some(text.clone());
                    let values = parse_reals("--direction-deg", text)?;
                    if total {
                        let dir = DegenerateVec::from_values(&values)
                            .map_err(|e| usage(format!("--direction-deg: {e}")))?;
                        check_directional_adm(&f, &dir, &order, &cfg, sense)?
                    } else {
                        let dir = RealPairs::new(values.iter().map(|&v| (v, v)).collect())
                            .map_err(|e| usage(format!("--direction-deg: {e}")))?;
                        check_directional_km(&f, &dir, &cfg, sense)?
                    }
                }
                (Some(_), None, true) => {
                    return Err(usage(
                        "--direction takes real pairs and needs --order km; use --direction-deg with an admissible order",
                    ))
                }
                _ => {
                    return Err(usage(format!(
                        "--property {prop} needs --direction a1,b1;...;an,bn (km) or --direction-deg v1,...,vn"
                    )))
                }
            }
        }
        Property::GWeakInc | Property::GWeakDec => {
            no_flag(
                "--direction",
                a.direction.is_some() || a.direction_deg.is_some(),
            )?;
            let text =
                a.g.as_deref()
                    .ok_or_else(|| usage(format!("--property {prop} needs --g <builtin>")))?;
            let g = resolve_g(text, &order)?;
            g_name = Some(g.to_string());
            check_g_weak(&f, &g, &order, &cfg, sense)?
        }
    };
    Ok(Checked {
        result,
        function: f,
        order,
        direction,
        g: g_name,
    })
}

fn check(a: CheckArgs, command: String, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let c = run_check(&a)?;
    let report = Report {
        version: VERSION.into(),
        command,
        function: c.function.to_string(),
        arity: c.function.arity(),
        order: c.order.to_string(),
        property: a.property.name(),
        direction: c.direction,
        g: c.g,
        result: c.result,
        timing_ms: millis(start),
    };
    let _ = out.write_all(report.human().as_bytes());
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    Ok(report.exit_code())
}

fn verify_paper(a: SuiteArgs, command: String, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let config = a.sampling.config();
    config
        .validate()
        .map_err(|e| usage(format!("sampling flags: {e}")))?;
    let claims = claims::run_all(&config)?;
    let pass = claims.iter().all(|c| c.pass);
    let report = SuiteReport {
        version: VERSION.into(),
        command,
        config,
        pass,
        claims,
        timing_ms: millis(start),
    };
    let _ = out.write_all(report.human().as_bytes());
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    Ok(if pass { 0 } else { 1 })
}

fn validate(a: ValidateArgs, command: String, out: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let order = parse_order("--order", &a.order)?;
    let config = a.sampling.config();
    config
        .validate()
        .map_err(|e| usage(format!("sampling flags: {e}")))?;
    let report = is_admissible(&order, &config);
    let report = OrdersReport {
        version: VERSION.into(),
        command,
        config,
        report,
        timing_ms: millis(start),
    };
    let _ = out.write_all(report.human().as_bytes());
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    Ok(if report.report.pass { 0 } else { 1 })
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let result = match cli.command {
        Command::Check(a) => check(a, command, out),
        Command::VerifyPaper(a) => verify_paper(a, command, out),
        Command::Orders {
            command: OrdersCommand::Validate(a),
        } => validate(a, command, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Check(CheckError::GContract { examples, .. }) = &e {
                for v in examples {
                    let _ = writeln!(
                        err,
                        "  G({}, {}) = {}, {} the second argument",
                        v.lambda, v.x, v.value, v.relation
                    );
                }
            }
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_accept_decimal_and_hex() {
        assert_eq!(parse_seed("7"), Ok(7));
        assert_eq!(parse_seed("0xC0FFEE"), Ok(0xC0FFEE));
        assert!(parse_seed("0xZZ").is_err());
        assert!(parse_seed("-1").is_err());
    }

    #[test]
    fn directions_parse_as_pairs_and_reals() {
        assert_eq!(
            parse_pairs("-1,-1; 1,1").unwrap(),
            vec![(-1.0, -1.0), (1.0, 1.0)]
        );
        assert!(parse_pairs("1,1,1").is_err());
        assert_eq!(
            parse_reals("--direction-deg", "0, -0.5").unwrap(),
            vec![0.0, -0.5]
        );
        assert!(parse_reals("--direction-deg", "1,inf").is_err());
    }

    #[test]
    fn bare_g_max_follows_the_order() {
        let g = resolve_g("g-max", &OrderSpec::LEX_UPPER).unwrap();
        assert_eq!(g.to_string(), "g-max(lex-upper)");
        assert!(resolve_g("g-max(xu-yager)", &OrderSpec::LEX_UPPER).is_err());
        assert!(resolve_g("g-probsum", &OrderSpec::KM).is_ok());
    }
}
