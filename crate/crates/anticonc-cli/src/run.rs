//! Argument definitions, dispatch, and report assembly.

use crate::fmt::{csv_line, opt_sig, sig};
use crate::inputs;
use anticonc::bounds::{
    corollary_logweight_rhs, corollary_threshold_rhs, optimize_threshold, theorem1_rhs,
    BoundReport, ScanRow, ThresholdScan,
};
use anticonc::charfn::{esseen_functional, CharFn};
use anticonc::concentration::{
    concentration_exact_1d, concentration_exact_2d, concentration_mc, law_of_weighted_sum,
    rademacher_sum_concentration, ConcentrationResult,
};
use anticonc::error::Error;
use anticonc::measures::FiniteDiscreteMeasure;
use anticonc::quad::QuadratureSpec;
use anticonc::rng::Stream;
use anticonc::structure::{
    product_scaling_report, search_generators, theorem_scaling_report, SearchMode,
    StructureReport,
};
use anticonc::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::Path;

#[derive(Parser, Serialize, Clone)]
#[command(
    name = "anticonc",
    version,
    about = "Concentration functions of weighted i.i.d. sums: exact values, bounds, structure search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Clone)]
pub enum Command {
    /// Q(F_a, tau) for the weighted sum of i.i.d. summands
    Concentration(ConcentrationArgs),
    /// tau^d * integral of |F_a^| over the sup-norm box of half-width 1/tau
    Esseen(EsseenArgs),
    /// Upper bounds through the comparison law H_1^lambda
    Bound {
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Generator sets, deficits, scaling diagnostics
    Structure {
        #[command(subcommand)]
        which: StructureCommand,
    },
    /// Run the seeded invariant suite; nonzero exit on any violation
    Verify(VerifyArgs),
    /// Sweep eps or tau, one CSV row per grid point
    Scan(ScanArgs),
}

#[derive(Args, Serialize, Clone)]
pub struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Serialize, Clone)]
pub struct QuadArgs {
    /// Gauss-Legendre nodes per panel
    #[arg(long, default_value_t = 16)]
    pub quad_nodes: usize,
    /// Absolute tolerance between successive refinements
    #[arg(long, default_value_t = 1e-8)]
    pub quad_tol: f64,
    /// Maximum panel halvings
    #[arg(long, default_value_t = 12)]
    pub quad_max_refine: usize,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            nodes_per_panel: self.quad_nodes,
            abs_tol: self.quad_tol,
            max_refinements: self.quad_max_refine,
        }
    }
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ConcentrationMethod {
    Auto,
    Dp,
    Exact,
    Mc,
}

#[derive(Args, Serialize, Clone)]
pub struct ConcentrationArgs {
    /// Coefficient vector JSON file
    #[arg(long)]
    pub coeffs: String,
    /// Summand law: 'rademacher', 'gaussian:k', or a measure JSON file
    #[arg(long)]
    pub x: String,
    /// Ball diameter (the ball has radius tau/2)
    #[arg(long)]
    pub tau: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: ConcentrationMethod,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize, Clone)]
pub struct EsseenArgs {
    #[arg(long)]
    pub coeffs: String,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub tau: f64,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Serialize, Clone)]
pub struct BoundArgs {
    #[arg(long)]
    pub coeffs: String,
    /// Summand law (its symmetrization becomes G when --g is absent)
    #[arg(long)]
    pub x: Option<String>,
    /// Symmetric mixing measure JSON file
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub tau: f64,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand, Serialize, Clone)]
pub enum BoundCommand {
    /// General dominated-sub-measure bound; weights align with G's atoms
    Theorem1 {
        #[command(flatten)]
        common: BoundArgs,
        /// JSON array of per-atom weights in [0, 1]
        #[arg(long)]
        v_weights: String,
    },
    /// Indicator threshold weight f = 1{|z| >= delta}
    CorThreshold {
        #[command(flatten)]
        common: BoundArgs,
        #[arg(long)]
        delta: f64,
    },
    /// Log weight f = 1 / max{1, log_factor}
    CorLogweight {
        #[command(flatten)]
        common: BoundArgs,
    },
    /// Scan the threshold family plus the log-weight row
    Optimize {
        #[command(flatten)]
        common: BoundArgs,
        /// Comma-separated delta grid; defaults to G's atom magnitudes
        #[arg(long)]
        delta_grid: Option<String>,
    },
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Greedy,
    Exact,
}

#[derive(Subcommand, Serialize, Clone)]
pub enum StructureCommand {
    /// Greedy or exhaustive generator search on a measure
    Search {
        /// Measure JSON file (any total mass)
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        rmax: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        method: SearchMethod,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// gamma = Q(D, tau) by Monte Carlo plus a generator search
    Scaling {
        /// Compound Poisson model JSON file
        #[arg(long)]
        model: Option<String>,
        /// Comma-separated factor measure files (product-law variant)
        #[arg(long)]
        factors: Option<String>,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        rmax: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Serialize, Clone)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ScanTarget {
    Esseen,
    CorThreshold,
    CorLogweight,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ScanVariable {
    Eps,
    Tau,
}

#[derive(Args, Serialize, Clone)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub target: ScanTarget,
    #[arg(long, value_enum)]
    pub vary: ScanVariable,
    /// Comma-separated grid for the varied parameter
    #[arg(long)]
    pub values: String,
    #[arg(long)]
    pub coeffs: String,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    /// Fixed eps (ignored when varying eps; esseen ignores it entirely)
    #[arg(long)]
    pub eps: Option<f64>,
    /// Fixed tau (ignored when varying tau)
    #[arg(long)]
    pub tau: Option<f64>,
    /// Threshold for cor-threshold
    #[arg(long)]
    pub delta: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Full report: the resolved configuration plus the result payload.
#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    config: &'a Cli,
    result: T,
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(cli: &Cli, output: &OutputArgs, result: T) -> Result<(), Error> {
    let report = Report { config: cli, result };
    let text = serde_json::to_string_pretty(&report)?;
    emit(output, text)
}

const BOUND_CSV_HEADER: &str = "delta,p_delta,lambda,exponent,q_proxy,rhs";

fn bound_csv_row(r: &BoundReport) -> String {
    csv_line(&[
        opt_sig(r.delta),
        opt_sig(r.p_delta),
        sig(r.lambda),
        sig(r.exponent_integral),
        sig(r.q_proxy),
        sig(r.rhs),
    ])
}

fn scan_row_csv(r: &ScanRow) -> String {
    csv_line(&[
        opt_sig(r.delta),
        opt_sig(r.p_delta),
        sig(r.lambda),
        sig(r.exponent),
        sig(r.q_proxy),
        sig(r.rhs),
    ])
}

fn structure_csv(r: &StructureReport) -> String {
    let header = "r,deficit,gamma,ratio_r,ratio_deficit".to_string();
    let row = csv_line(&[
        r.r.to_string(),
        sig(r.deficit),
        opt_sig(r.gamma),
        opt_sig(r.ratio_r),
        opt_sig(r.ratio_deficit),
    ]);
    format!("{header}\n{row}")
}

fn run_concentration(cli: &Cli, args: &ConcentrationArgs) -> Result<(), Error> {
    let a = inputs::resolve_coefficients(&args.coeffs)?;
    let x = inputs::resolve_x(&args.x)?;
    let is_rademacher = args.x == "rademacher";
    let result: ConcentrationResult = match args.method {
        ConcentrationMethod::Dp => {
            if !is_rademacher {
                return Err(Error::InvalidInput(
                    "--method dp needs --x rademacher".into(),
                ));
            }
            rademacher_sum_concentration(&a, args.tau)?
        }
        ConcentrationMethod::Auto if is_rademacher && a.dim() == 1 => {
            rademacher_sum_concentration(&a, args.tau)?
        }
        ConcentrationMethod::Exact | ConcentrationMethod::Auto => {
            let law = law_of_weighted_sum(&x, &a)?;
            match a.dim() {
                1 => concentration_exact_1d(&law, args.tau)?,
                2 => concentration_exact_2d(&law, args.tau)?,
                d => {
                    return Err(Error::InvalidInput(format!(
                        "no exact concentration path for d = {d}; use --method mc"
                    )))
                }
            }
        }
        ConcentrationMethod::Mc => {
            let x_atoms = x.scalar_atoms()?;
            let coeffs = a.entries().to_vec();
            let dim = a.dim();
            let cdf: Vec<(f64, f64)> = {
                let mut acc = 0.0;
                x_atoms
                    .iter()
                    .map(|(v, p)| {
                        acc += p;
                        (*v, acc)
                    })
                    .collect()
            };
            let sampler = move |seed: u64| {
                let mut s = Stream::new(seed);
                let mut point = vec![0.0_f64; dim];
                for ak in &coeffs {
                    let u = s.next_f64();
                    let xv = cdf.iter().find(|(_, c)| u < *c).unwrap_or(cdf.last().unwrap()).0;
                    for (acc, c) in point.iter_mut().zip(ak) {
                        *acc += c * xv;
                    }
                }
                point
            };
            concentration_mc(sampler, args.tau, args.samples, args.seed)?
        }
    };
    match args.output.format {
        Format::Json => emit_json(cli, &args.output, result),
        Format::Csv => {
            let text = format!(
                "value,method,half_width,samples\n{}",
                csv_line(&[
                    sig(result.value),
                    serde_json::to_value(result.method)?
                        .as_str()
                        .unwrap_or("?")
                        .to_string(),
                    sig(result.half_width),
                    result.samples.to_string(),
                ])
            );
            emit(&args.output, text)
        }
    }
}

#[derive(Serialize)]
struct EsseenReport {
    value: f64,
    unconverged: bool,
    diagnostics: Option<anticonc::quad::QuadDiagnostics>,
}

fn run_esseen(cli: &Cli, args: &EsseenArgs) -> Result<i32, Error> {
    let a = inputs::resolve_coefficients(&args.coeffs)?;
    let x = inputs::resolve_x(&args.x)?;
    let cf = CharFn::weighted_sum(&x, &a)?;
    let (report, code) = match esseen_functional(&cf, args.tau, &args.quad.spec()) {
        Ok(out) => (
            EsseenReport {
                value: out.value,
                unconverged: false,
                diagnostics: Some(out.diagnostics),
            },
            0,
        ),
        Err(Error::Unconverged { best, .. }) => (
            EsseenReport {
                value: best,
                unconverged: true,
                diagnostics: None,
            },
            3,
        ),
        Err(e) => return Err(e),
    };
    match args.output.format {
        Format::Json => emit_json(cli, &args.output, &report)?,
        Format::Csv => {
            let text = format!(
                "value,unconverged\n{}",
                csv_line(&[sig(report.value), report.unconverged.to_string()])
            );
            emit(&args.output, text)?;
        }
    }
    Ok(code)
}

fn run_bound(cli: &Cli, which: &BoundCommand) -> Result<i32, Error> {
    let (common, report): (&BoundArgs, BoundReport) = match which {
        BoundCommand::Theorem1 { common, v_weights } => {
            let a = inputs::resolve_coefficients(&common.coeffs)?;
            let g = inputs::resolve_g(common.g.as_deref(), common.x.as_deref())?;
            let v = inputs::resolve_submeasure(g, v_weights)?;
            (
                common,
                theorem1_rhs(&a, &v, common.eps, common.tau, &common.quad.spec())?,
            )
        }
        BoundCommand::CorThreshold { common, delta } => {
            let a = inputs::resolve_coefficients(&common.coeffs)?;
            let g = inputs::resolve_g(common.g.as_deref(), common.x.as_deref())?;
            (
                common,
                corollary_threshold_rhs(&a, &g, *delta, common.eps, common.tau, &common.quad.spec())?,
            )
        }
        BoundCommand::CorLogweight { common } => {
            let a = inputs::resolve_coefficients(&common.coeffs)?;
            let g = inputs::resolve_g(common.g.as_deref(), common.x.as_deref())?;
            (
                common,
                corollary_logweight_rhs(&a, &g, common.eps, common.tau, &common.quad.spec())?,
            )
        }
        BoundCommand::Optimize { common, delta_grid } => {
            let a = inputs::resolve_coefficients(&common.coeffs)?;
            let g = inputs::resolve_g(common.g.as_deref(), common.x.as_deref())?;
            let grid = match delta_grid {
                Some(text) => inputs::parse_grid(text)?,
                None => inputs::default_delta_grid(&g)?,
            };
            let scan: ThresholdScan =
                optimize_threshold(&a, &g, common.eps, common.tau, &grid, &common.quad.spec())?;
            return match common.output.format {
                Format::Json => {
                    emit_json(cli, &common.output, &scan)?;
                    Ok(0)
                }
                Format::Csv => {
                    let mut lines = vec![BOUND_CSV_HEADER.to_string()];
                    lines.extend(scan.table.iter().map(scan_row_csv));
                    emit(&common.output, lines.join("\n"))?;
                    Ok(0)
                }
            };
        }
    };
    match common.output.format {
        Format::Json => emit_json(cli, &common.output, &report)?,
        Format::Csv => {
            let text = format!("{BOUND_CSV_HEADER}\n{}", bound_csv_row(&report));
            emit(&common.output, text)?;
        }
    }
    // an infinite sentinel is a vacuous bound, not an input error
    Ok(0)
}

fn run_structure(cli: &Cli, which: &StructureCommand) -> Result<(), Error> {
    let (output, report) = match which {
        StructureCommand::Search {
            measure,
            alpha,
            tau,
            rmax,
            method,
            seed,
            output,
        } => {
            let m = anticonc::io::read_measure(Path::new(measure))?;
            let mode = match method {
                SearchMethod::Greedy => SearchMode::Greedy,
                SearchMethod::Exact => SearchMode::Exact,
            };
            (
                output,
                search_generators(&m, *alpha, *tau, *rmax, mode, None, *seed)?,
            )
        }
        StructureCommand::Scaling {
            model,
            factors,
            tau,
            rmax,
            samples,
            seed,
            output,
        } => {
            let report = match (model, factors) {
                (Some(path), None) => {
                    let m = anticonc::io::read_model(Path::new(path))?;
                    theorem_scaling_report(&m, *tau, *rmax, *samples, *seed)?
                }
                (None, Some(list)) => {
                    let factors: Vec<FiniteDiscreteMeasure> = list
                        .split(',')
                        .map(|p| anticonc::io::read_measure(Path::new(p.trim())))
                        .collect::<Result<_, _>>()?;
                    product_scaling_report(&factors, *tau, *rmax, *samples, *seed)?
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "scaling needs exactly one of --model or --factors".into(),
                    ))
                }
            };
            (output, report)
        }
    };
    match output.format {
        Format::Json => emit_json(cli, output, &report),
        Format::Csv => emit(output, structure_csv(&report)),
    }
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<i32, Error> {
    let results = verify::run_all(args.seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    match args.output.format {
        Format::Json => emit_json(cli, &args.output, &results)?,
        Format::Csv => {
            let mut lines = vec!["status,name,detail".to_string()];
            for r in &results {
                lines.push(csv_line(&[
                    if r.passed { "PASS" } else { "FAIL" }.to_string(),
                    r.name.to_string(),
                    r.detail.replace(',', ";"),
                ]));
            }
            emit(&args.output, lines.join("\n"))?;
        }
    }
    if args.output.out.is_some() || matches!(args.output.format, Format::Csv) {
        // summary still goes to stderr so scripted runs see it
        eprintln!("{} passed, {failed} failed (seed {})", results.len() - failed, args.seed);
    } else {
        for r in &results {
            println!(
                "{} {} - {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.detail
            );
        }
        println!("{} passed, {failed} failed (seed {})", results.len() - failed, args.seed);
    }
    Ok(if failed > 0 { 1 } else { 0 })
}

fn run_scan(cli: &Cli, args: &ScanArgs) -> Result<i32, Error> {
    let a = inputs::resolve_coefficients(&args.coeffs)?;
    let grid = inputs::parse_grid(&args.values)?;
    let spec = args.quad.spec();
    let mut lines = vec![format!("{},{}", "eps,tau", BOUND_CSV_HEADER)];
    let mut exit = 0;
    for &value in &grid {
        let (eps, tau) = match args.vary {
            ScanVariable::Eps => (
                value,
                args.tau
                    .ok_or_else(|| Error::InvalidInput("need fixed --tau".into()))?,
            ),
            ScanVariable::Tau => (
                args.eps.unwrap_or(f64::NAN),
                value,
            ),
        };
        let row = match args.target {
            ScanTarget::Esseen => {
                let x = inputs::resolve_x(
                    args.x
                        .as_deref()
                        .ok_or_else(|| Error::InvalidInput("esseen scan needs --x".into()))?,
                )?;
                let cf = CharFn::weighted_sum(&x, &a)?;
                let (v, unconv) = match esseen_functional(&cf, tau, &spec) {
                    Ok(out) => (out.value, false),
                    Err(Error::Unconverged { best, .. }) => (best, true),
                    Err(e) => return Err(e),
                };
                if unconv {
                    exit = 3;
                }
                csv_line(&[
                    opt_sig(None),
                    opt_sig(None),
                    sig(0.0),
                    sig(0.0),
                    sig(v),
                    sig(v),
                ])
            }
            ScanTarget::CorThreshold => {
                if !eps.is_finite() {
                    return Err(Error::InvalidInput("need fixed --eps".into()));
                }
                let g = inputs::resolve_g(args.g.as_deref(), args.x.as_deref())?;
                let delta = args
                    .delta
                    .ok_or_else(|| Error::InvalidInput("cor-threshold scan needs --delta".into()))?;
                let r = corollary_threshold_rhs(&a, &g, delta, eps, tau, &spec)?;
                bound_csv_row(&r)
            }
            ScanTarget::CorLogweight => {
                if !eps.is_finite() {
                    return Err(Error::InvalidInput("need fixed --eps".into()));
                }
                let g = inputs::resolve_g(args.g.as_deref(), args.x.as_deref())?;
                let r = corollary_logweight_rhs(&a, &g, eps, tau, &spec)?;
                bound_csv_row(&r)
            }
        };
        lines.push(format!("{},{},{}", sig(eps), sig(tau), row));
    }
    match args.output.format {
        Format::Csv | Format::Json => emit(&args.output, lines.join("\n"))?,
    }
    let _ = cli;
    Ok(exit)
}

/// Dispatch; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let outcome: Result<i32, Error> = match &cli.command {
        Command::Concentration(args) => run_concentration(&cli, args).map(|_| 0),
        Command::Esseen(args) => run_esseen(&cli, args),
        Command::Bound { which } => run_bound(&cli, which),
        Command::Structure { which } => run_structure(&cli, which).map(|_| 0),
        Command::Verify(args) => run_verify(&cli, args),
        Command::Scan(args) => run_scan(&cli, args),
    };
    match outcome {
        Ok(code) => code,
        Err(Error::Unconverged { best, .. }) => {
            eprintln!("error: quadrature did not converge; best estimate {best}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
