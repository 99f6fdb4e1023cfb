use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tscale_core::Complex64;

#[derive(Debug, Parser)]
#[command(name = "tscale", version, about = "Exponential and trigonometric functions on time scales")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an exponential, hyperbolic or trigonometric function on a grid.
    Eval(EvalArgs),
    /// Check an identity on a grid and report the largest residual.
    Identity(IdentityArgs),
    /// Measure convergence to exp(alpha t) on shrinking lattices.
    Converge(ConvergeArgs),
    /// Solve x^D = alpha x (in the scheme's form) from x(t0) = x0.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hilger,
    Nabla,
    Cayley,
    Exact,
    Bp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Exp,
    Cosh,
    Sinh,
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hyp,
    Trig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Pythagorean,
    Semigroup,
    SigmaShift,
    ProductLaw,
    UnitCircle,
    OscillatorCayley,
    OscillatorExact,
    Delbis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Explicit,
    Trapezoidal,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Options shared by the commands that work on one time scale.
#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Time scale, e.g. "interval(0,1) + points(1.5,2)" or "uniform(0,0.5,9)".
    #[arg(long)]
    pub scale: String,
    /// Constant coefficient as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    /// JSON file with a constant, piecewise or tabulated coefficient; replaces --alpha.
    #[arg(long, conflicts_with = "alpha")]
    pub coefficient: Option<PathBuf>,
    /// Initial point; defaults to the start of the range.
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Grid range `a,b`; defaults to the whole scale.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    /// Largest spacing of grid points inside intervals.
    #[arg(long, default_value_t = 0.1)]
    pub dense_step: f64,
    /// Quadrature and step tolerance; also the pass threshold of `identity`.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format; `identity` defaults to json, everything else to csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value = "cayley")]
    pub family: Family,
    #[arg(long, value_enum, default_value = "exp")]
    pub function: Function,
    #[command(flatten)]
    pub scale: ScaleArgs,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    #[arg(long, value_enum, default_value = "cayley")]
    pub family: Family,
    /// Hyperbolic or trigonometric variant, where the identity has both.
    #[arg(long, value_enum, default_value = "trig")]
    pub kind: Kind,
    /// Second coefficient for product-law.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
    /// Third point for semigroup; defaults to the start of the range.
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[command(flatten)]
    pub scale: ScaleArgs,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum, default_value = "cayley")]
    pub family: Family,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1")]
    pub alpha: Complex64,
    /// Target point.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Lattice spacings; defaults to 2^-k for k = 1..10.
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value = "trapezoidal")]
    pub scheme: SchemeArg,
    /// Initial value as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1")]
    pub x0: Complex64,
    #[command(flatten)]
    pub scale: ScaleArgs,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    let v = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got '{s}'"))?;
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a <= b {
        Ok((a, b))
    } else {
        Err(format!("range start {a} exceeds end {b}"))
    }
}
