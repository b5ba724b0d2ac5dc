use abcalc::abops::Multiplier;
use abcalc::{Formulation, C64};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::parse_complex;

#[derive(Parser, Debug)]
#[command(name = "abcalc", version, about = "Complex-order Riemann-Liouville and Atangana-Baleanu differintegrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one operator at one point.
    Eval(EvalArgs),
    /// Evaluate several formulations and report pairwise deviations.
    Compare(CompareArgs),
    /// Evaluate over a grid of nu, mu or z.
    Sweep(SweepArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    RlInt,
    RlDer,
    AbInt,
    Abr,
    Abc,
    Iab,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::RlInt => "rl-int",
            Operator::RlDer => "rl-der",
            Operator::AbInt => "ab-int",
            Operator::Abr => "abr",
            Operator::Abc => "abc",
            Operator::Iab => "iab",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Nu,
    Mu,
    Z,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    RealLine,
    ComplexRect,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Golden,
    Identity,
    Continuation,
    All,
}

fn formulation(s: &str) -> Result<Formulation, String> {
    s.parse()
}

fn multiplier(s: &str) -> Result<Multiplier, String> {
    s.parse()
}

#[derive(Args, Debug, Clone)]
pub struct OperatorArgs {
    #[arg(long, value_enum)]
    pub operator: Operator,
    /// kernel (alias integral), series, hankel or auto.
    #[arg(long, default_value = "auto", value_parser = formulation)]
    pub formulation: Formulation,
    /// Function of z, e.g. "pow(z-0,1.5) + exp(2*z)".
    #[arg(long = "f")]
    pub f: String,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: C64,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: C64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub nu: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Option<C64>,
    /// Normalisation multiplier: one or abnorm.
    #[arg(long = "B", default_value = "one", value_parser = multiplier)]
    pub b: Multiplier,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputFormat,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[command(flatten)]
    pub op: OperatorArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub op: OperatorArgs,
    /// Comma-separated list; defaults to every formulation valid at nu.
    #[arg(long, value_delimiter = ',', value_parser = formulation)]
    pub formulations: Vec<Formulation>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub op: OperatorArgs,
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub start: C64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub stop: C64,
    /// Points per axis.
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "real-line")]
    pub axis: Axis,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Loosens the built-in tolerances; never tightens them.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: ReportFormat,
}
