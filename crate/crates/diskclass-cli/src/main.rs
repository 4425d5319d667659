//! Command-line front end for the disk-class toolkit.
//!
//! Six subcommands cover the library surface: `check` runs the weighted
//! coefficient test on a series file, `classify` inverts it for the
//! extremal parameters, `extremal` emits sharp boundary functions,
//! `bounds` prints the derived coefficient bounds, `verify` cross-checks
//! the algebra against the analytic condition on a disk grid, and
//! `falsify` runs randomized sweeps hunting for disagreements.
//!
//! Exit codes: 0 pass, 1 criterion or verification failure (or a sweep
//! counterexample), 2 invalid input, 3 numerical degeneracy.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diskclass::{
    aggregate_bounds, boundary_limit, classify, coefficient_bound, coefficient_sum,
    extremal_function, grid_samples, min_re_on_grid, necessity_sweep, refine_real_axis,
    soundness_sweep, ClassParams, Complex64, CriterionReport, DiskGrid, Error, PowerSeries,
    RealAxisMinimum, SeriesFile, SignConvention, SweepSummary, VerificationReport,
    GRID_PASS_TOLERANCE,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "diskclass",
    version,
    about = "Coefficient criteria for starlike/convex-type classes of complex order",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the weighted coefficient test on a series file
    Check(CheckArgs),
    /// Invert the criterion for the extremal order and order magnitude
    Classify(ClassifyArgs),
    /// Emit the sharp extremal function concentrated at one index
    Extremal(ExtremalArgs),
    /// Print the aggregate and per-coefficient bounds for members
    Bounds(BoundsArgs),
    /// Cross-check the criterion against the analytic condition on a grid
    Verify(VerifyArgs),
    /// Randomized search for criterion/analysis disagreements
    Falsify(FalsifyArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Order parameter, in [0, 1)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Convexity-mixing parameter, in [0, 1]
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Complex order, written as "re", "re+imi", or "imi" (e.g. 1, -0.5, 1+2i)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    tau: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<ClassParams, Failure> {
        let tau = parse_complex(&self.tau)
            .map_err(|msg| Failure::input(format!("invalid --tau {:?}: {msg}", self.tau)))?;
        ClassParams::new(self.alpha, self.beta, tau).map_err(Failure::from)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Number of radial rings in the sample grid
    #[arg(long = "grid-radii")]
    grid_radii: Option<usize>,
    /// Number of angles per ring
    #[arg(long = "grid-angles")]
    grid_angles: Option<usize>,
    /// Outermost sampled radius, in (0, 1)
    #[arg(long)]
    rmax: Option<f64>,
}

impl GridArgs {
    fn build(&self) -> Result<DiskGrid, Failure> {
        if self.grid_radii.is_none() && self.grid_angles.is_none() && self.rmax.is_none() {
            return Ok(DiskGrid::standard());
        }
        let r_max = self.rmax.unwrap_or(0.99);
        let r_min = f64::min(0.01, r_max / 2.0);
        DiskGrid::geometric(
            self.grid_radii.unwrap_or(64),
            r_min,
            r_max,
            self.grid_angles.unwrap_or(256),
        )
        .map_err(Failure::from)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CheckArgs {
    /// Series file (JSON: {"sign_convention": ..., "coeffs": [[re, im], ...]})
    #[arg(long = "fn", value_name = "PATH")]
    function: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "fn", value_name = "PATH")]
    function: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Index of the single nonzero higher coefficient (n >= 2)
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Args)]
struct BoundsArgs {
    /// Largest coefficient index to tabulate
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "fn", value_name = "PATH")]
    function: PathBuf,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Args)]
struct FalsifyArgs {
    /// Criterion-passing members to scan on the grid (soundness direction)
    #[arg(long, default_value_t = 0)]
    members: usize,
    /// Criterion-failing series to test at the boundary (necessity direction)
    #[arg(long = "non-members", default_value_t = 0)]
    non_members: usize,
    /// How far past the criterion bound the non-members are pushed
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    /// Base seed for the deterministic sweeps
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

/// A terminating failure: diagnostic for stderr plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::ExcessiveDenominatorFailures { .. } | Error::DegenerateBoundary { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Falsify(args) => cmd_falsify(args),
    }
}

/// Parse "re", "re+imi", "re-imi", or a pure-imaginary "imi" form.
/// Whitespace is ignored; exponents like 1e-3 are understood.
fn parse_complex(input: &str) -> Result<Complex64, String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty value".into());
    }
    let Some(body) = compact.strip_suffix('i') else {
        return compact
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|e| e.to_string());
    };
    // Split at the last sign that is not an exponent sign and not leading.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|e| e.to_string())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|e| e.to_string())?,
    };
    Ok(Complex64::new(re, im))
}

fn format_complex(value: Complex64) -> String {
    if value.im == 0.0 {
        format!("{}", value.re)
    } else if value.im < 0.0 {
        format!("{}-{}i", value.re, -value.im)
    } else {
        format!("{}+{}i", value.re, value.im)
    }
}

fn load_series(path: &PathBuf) -> Result<PowerSeries, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let file: SeriesFile = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    file.to_series().map_err(Failure::from)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn reject_csv(out: OutputFormat, command: &str) -> Result<(), Failure> {
    if out == OutputFormat::Csv {
        return Err(Failure::input(format!(
            "csv output is only available for verify, not {command}"
        )));
    }
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<u8, Failure> {
    reject_csv(args.out, "check")?;
    let params = args.params.parse()?;
    let f = load_series(&args.function)?;
    let report = coefficient_sum(&f, params);
    match args.out {
        OutputFormat::Json => print_json(&report)?,
        OutputFormat::Text => print_check_text(&report),
        OutputFormat::Csv => unreachable!(),
    }
    Ok(if report.passes { 0 } else { 1 })
}

fn print_check_text(report: &CriterionReport) {
    for term in &report.terms {
        println!(
            "n={} weight {} contribution {}",
            term.n, term.weight, term.contribution
        );
    }
    println!("total {} vs bound {}", report.total, report.bound);
    println!("margin {}", report.margin);
    println!(
        "interpretation {}",
        match report.interpretation {
            diskclass::Interpretation::Iff => "iff",
            diskclass::Interpretation::SufficientOnly => "sufficient_only",
        }
    );
    println!("verdict {}", if report.passes { "pass" } else { "fail" });
}

fn cmd_classify(args: ClassifyArgs) -> Result<u8, Failure> {
    reject_csv(args.out, "classify")?;
    let params = args.params.parse()?;
    let f = load_series(&args.function)?;
    let result = classify(&f, params);
    match args.out {
        OutputFormat::Json => print_json(&result)?,
        OutputFormat::Text => {
            match result.alpha_star {
                Some(a) => println!("alpha_star {a}"),
                None => println!("alpha_star none"),
            }
            match result.tau_star {
                Some(t) => println!("tau_star {t}"),
                None => println!("tau_star none"),
            }
            println!("A {}", result.a);
            println!("B {}", result.b);
            println!(
                "feasible {}",
                if result.feasible {
                    "yes"
                } else {
                    "no (B >= 1)"
                }
            );
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

fn cmd_extremal(args: ExtremalArgs) -> Result<u8, Failure> {
    reject_csv(args.out, "extremal")?;
    let params = args.params.parse()?;
    // Real tau admits the negative-coefficient sharp function; a genuinely
    // complex tau only has the general-convention one.
    let convention = if params.real_tau().is_some() {
        SignConvention::NegativeT
    } else {
        SignConvention::General
    };
    let f = extremal_function(args.n, params, convention)?;
    let file = SeriesFile::from_series(&f);
    match args.out {
        OutputFormat::Json => print_json(&file)?,
        OutputFormat::Text => {
            let (n, a) = f.terms().next().expect("extremal series has one term");
            println!(
                "a_{n} = {} ({})",
                a.norm(),
                match convention {
                    SignConvention::NegativeT => "negative_t",
                    SignConvention::General => "general",
                }
            );
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

#[derive(Serialize)]
struct CoefficientBound {
    n: usize,
    bound: f64,
}

#[derive(Serialize)]
struct BoundsOutput {
    alpha: f64,
    beta: f64,
    tau: f64,
    sum_bound: f64,
    weighted_sum_bound: f64,
    /// The weighted bound only holds when (1 - alpha)|tau| <= 1.
    weighted_sum_applies: bool,
    coefficient_bounds: Vec<CoefficientBound>,
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8, Failure> {
    reject_csv(args.out, "bounds")?;
    let params = args.params.parse()?;
    if args.n < 2 {
        return Err(Failure::input(format!(
            "--n must be at least 2, got {}",
            args.n
        )));
    }
    let (sum_bound, weighted_sum_bound) = aggregate_bounds(params)?;
    let tau = params
        .real_tau()
        .expect("aggregate_bounds already rejected non-real tau");
    let coefficient_bounds = (2..=args.n)
        .map(|n| coefficient_bound(n, params).map(|bound| CoefficientBound { n, bound }))
        .collect::<Result<Vec<_>, _>>()?;
    let output = BoundsOutput {
        alpha: params.alpha(),
        beta: params.beta(),
        tau,
        sum_bound,
        weighted_sum_bound,
        weighted_sum_applies: (1.0 - params.alpha()) * params.tau_abs() <= 1.0,
        coefficient_bounds,
    };
    match args.out {
        OutputFormat::Json => print_json(&output)?,
        OutputFormat::Text => {
            println!("sum of |a_n| <= {}", output.sum_bound);
            if output.weighted_sum_applies {
                println!("sum of n|a_n| <= {}", output.weighted_sum_bound);
            } else {
                println!(
                    "sum of n|a_n| <= {} (not applicable: (1-alpha)|tau| > 1)",
                    output.weighted_sum_bound
                );
            }
            for cb in &output.coefficient_bounds {
                println!("|a_{}| <= {}", cb.n, cb.bound);
            }
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(0)
}

#[derive(Serialize)]
struct ComplexField {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct VerifyOutput {
    alpha: f64,
    beta: f64,
    tau: ComplexField,
    grid: VerificationReport,
    real_axis: RealAxisMinimum,
    boundary_limit: Option<f64>,
    criterion: CriterionReport,
    /// CERTIFIED when the verdict follows from the algebra alone,
    /// SAMPLED when it rests on the finite scan.
    label: &'static str,
    verdict: &'static str,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let params = args.params.parse()?;
    let f = load_series(&args.function)?;
    let grid = args.grid.build()?;

    if args.out == OutputFormat::Csv {
        let dump = grid_samples(&f, params, &grid)?;
        println!("r,theta,re");
        for s in &dump.samples {
            println!("{},{},{}", s.r, s.theta, s.re);
        }
        return Ok(0);
    }

    let report = min_re_on_grid(&f, params, &grid)?;
    let top_radius = *grid.radii().last().expect("grid is nonempty");
    let real_axis = refine_real_axis(&f, params, top_radius)?;
    let criterion = coefficient_sum(&f, params);
    let boundary = match boundary_limit(&f, params) {
        Ok(limit) => Some(limit),
        Err(Error::RequiresNegativeT { .. })
        | Err(Error::NonRealTau { .. })
        | Err(Error::DegenerateBoundary { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    // The criterion certifies membership outright. Failure is certified
    // only on the branch where it is necessary as well: negative
    // coefficients, real positive order, and a boundary value below alpha.
    let certified_fail = !criterion.passes
        && params.real_tau().is_some_and(|t| t > 0.0)
        && boundary.is_some_and(|b| b < params.alpha());
    let sampled_pass = report.passes && real_axis.re > params.alpha() - GRID_PASS_TOLERANCE;
    let (label, pass) = if criterion.passes {
        ("CERTIFIED", true)
    } else if certified_fail {
        ("CERTIFIED", false)
    } else {
        ("SAMPLED", sampled_pass)
    };

    let output = VerifyOutput {
        alpha: params.alpha(),
        beta: params.beta(),
        tau: ComplexField {
            re: params.tau().re,
            im: params.tau().im,
        },
        grid: report,
        real_axis,
        boundary_limit: boundary,
        criterion,
        label,
        verdict: if pass { "pass" } else { "fail" },
    };

    match args.out {
        OutputFormat::Json => print_json(&output)?,
        OutputFormat::Text => print_verify_text(&output),
        OutputFormat::Csv => unreachable!(),
    }
    Ok(if pass { 0 } else { 1 })
}

fn print_verify_text(output: &VerifyOutput) {
    println!(
        "condition Re{{1 + (1/tau)(Q(z) - 1)}} > {} with tau = {}",
        output.alpha,
        format_complex(Complex64::new(output.tau.re, output.tau.im)),
    );
    println!(
        "grid minimum {} at z = {} ({} samples, {} denominator failures)",
        output.grid.min_re,
        format_complex(output.grid.witness.value()),
        output.grid.samples,
        output.grid.denominator_failures,
    );
    println!(
        "real-axis minimum {} at r = {}",
        output.real_axis.re, output.real_axis.r
    );
    match output.boundary_limit {
        Some(limit) => println!("boundary value {limit} (closed form)"),
        None => println!("boundary value not available for this series/order"),
    }
    println!(
        "criterion total {} vs bound {} ({})",
        output.criterion.total,
        output.criterion.bound,
        if output.criterion.passes {
            "passes"
        } else {
            "fails"
        }
    );
    println!("verdict: {} ({})", output.verdict, output.label);
}

#[derive(Serialize)]
struct FalsifyOutput {
    members: usize,
    non_members: usize,
    soundness: Option<SweepSummary>,
    necessity: Option<SweepSummary>,
}

fn cmd_falsify(args: FalsifyArgs) -> Result<u8, Failure> {
    reject_csv(args.out, "falsify")?;
    let grid = args.grid.build()?;
    let soundness = if args.members > 0 {
        Some(soundness_sweep(args.members, args.seed, &grid)?)
    } else {
        None
    };
    let necessity = if args.non_members > 0 {
        Some(necessity_sweep(args.non_members, args.margin, args.seed)?)
    } else {
        None
    };

    let violations = soundness.as_ref().map_or(0, |s| s.counterexamples)
        + necessity.as_ref().map_or(0, |s| s.counterexamples);
    for summary in [&soundness, &necessity].into_iter().flatten() {
        if let Some(ce) = &summary.counterexample {
            let serialized = serde_json::to_string(ce)
                .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
            eprintln!("counterexample: {serialized}");
        }
    }

    let output = FalsifyOutput {
        members: args.members,
        non_members: args.non_members,
        soundness,
        necessity,
    };
    match args.out {
        OutputFormat::Json => print_json(&output)?,
        OutputFormat::Text => {
            print_sweep_text("soundness", output.members, output.soundness.as_ref());
            print_sweep_text("necessity", output.non_members, output.necessity.as_ref());
        }
        OutputFormat::Csv => unreachable!(),
    }
    Ok(if violations == 0 { 0 } else { 1 })
}

fn print_sweep_text(name: &str, requested: usize, summary: Option<&SweepSummary>) {
    match summary {
        None => println!("{name}: skipped ({requested} requested)"),
        Some(s) => {
            let worst = s
                .worst_margin
                .map_or_else(|| "n/a".to_string(), |w| format!("{w}"));
            println!(
                "{name}: checked {}, counterexamples {}, worst margin {worst}",
                s.checked, s.counterexamples
            );
        }
    }
}
