//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use nboson_core::jacobi::{build_jacobi_matrix, verify_appendix_coefficients, verify_row_sum_identity};
use nboson_core::kleingordon::{critical_nu_with, single_curve, supercritical_nu_from, KgOptions, SpectralCurve};
use nboson_core::potential::PotentialShape;
use nboson_core::scaling::{jacobi_constants, to_scaled, PhysicalParams};

use crate::config;
use crate::error::CliError;
use crate::format::{csv_line, fixed6, g9, opt_g9};
use crate::report::{compute_bounds, BoundsReport, Inputs, Physical};

#[derive(Debug, Parser)]
#[command(
    name = "nboson",
    version,
    about = "Energy bounds for N bosons with semirelativistic kinematics"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Pair-potential shape.
    #[arg(long, global = true, value_enum, default_value_t = ShapeArg::Exp)]
    pub shape: ShapeArg,
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid evaluations (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// File of key=value lines supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Exp,
    Gauss,
}

impl ShapeArg {
    fn shape(self) -> PotentialShape {
        match self {
            ShapeArg::Exp => nboson_core::potential::exponential_shape(),
            ShapeArg::Gauss => nboson_core::potential::gaussian_shape(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Nc,
    Ns,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds at one parameter point.
    #[command(args_override_self = true)]
    Bounds(BoundsArgs),
    /// Bounds over a uniform grid of couplings.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Spectral curves F(e) and the parabolas e² − μ².
    #[command(args_override_self = true)]
    Curves(CurvesArgs),
    /// Critical or supercritical coupling.
    #[command(args_override_self = true)]
    Critical(CriticalArgs),
    /// Jacobi-matrix identity checks up to a size.
    #[command(name = "jacobi-check", args_override_self = true)]
    JacobiCheck(JacobiArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// (N−1)/N; defaults to 1, the large-N limit.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Particle number.
    #[arg(long = "N")]
    pub n: Option<u64>,
    /// Particle mass.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Potential range.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Coupling strength.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long = "nu-min", allow_hyphen_values = true)]
    pub nu_min: f64,
    #[arg(long = "nu-max", allow_hyphen_values = true)]
    pub nu_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long = "nu-list", value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub nu_list: Vec<f64>,
    #[arg(long = "e-min", default_value_t = -1.5, allow_hyphen_values = true)]
    pub e_min: f64,
    #[arg(long = "e-max", default_value_t = 1.5, allow_hyphen_values = true)]
    pub e_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(
        long = "mu-list",
        value_delimiter = ',',
        default_value = "1",
        allow_hyphen_values = true
    )]
    pub mu_list: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, value_enum)]
    pub which: Which,
    /// Potential range used to translate ν_s into a particle bound.
    #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
    pub a: f64,
    /// Coupling strength used to translate ν_s into a particle bound.
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
}

#[derive(Debug, Args)]
pub struct JacobiArgs {
    #[arg(long = "n-max")]
    pub n_max: usize,
}

const SUBCOMMANDS: &[&str] = &["bounds", "sweep", "curves", "critical", "jacobi-check"];
const SWITCHES: &[&str] = &["json"];

/// Splices config-file entries in right after the subcommand name, so
/// later command-line flags override them.
fn with_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config::find_config_flag(&args) else {
        return Ok(args);
    };
    let entries = config::load(Path::new(&path))?;
    let extra = config::to_args(&entries, SWITCHES)?;
    let Some(pos) = args.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) else {
        return Ok(args);
    };
    let mut out = args[..=pos].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}

/// Runs the tool on `args` (program name first). Returns the exit code.
pub fn run(args: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let args = match with_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "nboson: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "nboson: {e}");
            e.exit_code()
        }
    }
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let n = match jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))
}

/// Writes `text` to `--out` through a temporary sibling that is renamed
/// into place, or to standard output.
fn emit(common: &Common, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let Some(path) = &common.out else {
        stdout.write_all(text.as_bytes())?;
        return Ok(());
    };
    let mut tmp = path.clone().into_os_string();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let written = std::fs::write(&tmp, text).and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = written {
        let _ = std::fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if cli.common.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let shape = cli.common.shape.shape();
    let text = match &cli.command {
        Command::Bounds(a) => bounds(a, &cli.common, &shape)?,
        Command::Sweep(a) => sweep(a, &cli.common, &shape)?,
        Command::Curves(a) => curves(a, &cli.common, &shape)?,
        Command::Critical(a) => critical(a, &cli.common, &shape)?,
        Command::JacobiCheck(a) => {
            let (text, failure) = jacobi_check(a, &cli.common)?;
            emit(&cli.common, &text, stdout)?;
            return match failure {
                Some(msg) => Err(CliError::CheckFailed(msg)),
                None => Ok(()),
            };
        }
    };
    match text {
        Ok(text) => emit(&cli.common, &text, stdout),
        Err((partial, err)) => {
            // the report is still useful when a single component failed
            if let Some(text) = partial {
                emit(&cli.common, &text, stdout)?;
            }
            Err(err)
        }
    }
}

type Rendered = Result<String, (Option<String>, CliError)>;

fn bounds_inputs(a: &BoundsArgs, shape: &PotentialShape) -> Result<Inputs, CliError> {
    let physical = [a.n.is_some(), a.m.is_some(), a.a.is_some(), a.v.is_some()];
    let scaled = [a.mu.is_some(), a.nu.is_some(), a.lambda.is_some()];
    let name = shape.name().to_string();
    if physical.iter().any(|&p| p) {
        if scaled.iter().any(|&s| s) {
            return Err(CliError::Usage(
                "give either --mu/--nu[/--lambda] or --N/--m/--a/--v, not both".into(),
            ));
        }
        let (Some(n), Some(m), Some(range), Some(v)) = (a.n, a.m, a.a, a.v) else {
            return Err(CliError::Usage("physical input needs all of --N, --m, --a, --v".into()));
        };
        let p = PhysicalParams::new(n, m, range, v)?;
        let s = to_scaled(&p)?;
        return Ok(Inputs {
            mu: s.mu,
            nu: s.nu,
            lambda: s.lambda,
            shape: name,
            physical: Some(Physical { n, m, a: range, v }),
        });
    }
    let (Some(mu), Some(nu)) = (a.mu, a.nu) else {
        return Err(CliError::Usage(
            "bounds needs --mu and --nu, or --N, --m, --a and --v".into(),
        ));
    };
    let lambda = a.lambda.unwrap_or(1.0);
    validate_scaled(mu, nu, lambda)?;
    Ok(Inputs {
        mu,
        nu,
        lambda,
        shape: name,
        physical: None,
    })
}

fn validate_scaled(mu: f64, nu: f64, lambda: f64) -> Result<(), CliError> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(CliError::Usage(format!("--mu must be non-negative, got {mu}")));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(CliError::Usage(format!("--nu must be positive, got {nu}")));
    }
    if !(0.5..=1.0).contains(&lambda) {
        return Err(CliError::Usage(format!("--lambda must lie in [0.5, 1], got {lambda}")));
    }
    Ok(())
}

fn bounds(a: &BoundsArgs, common: &Common, shape: &PotentialShape) -> Result<Rendered, CliError> {
    let inputs = bounds_inputs(a, shape)?;
    let report = compute_bounds(shape, inputs, &KgOptions::default());
    let text = if common.json {
        to_json(&report)
    } else {
        format!("{}{}", BoundsReport::CSV_HEADER, report.csv_row())
    };
    Ok(if report.has_failure() {
        Err((Some(text), CliError::Numerical(report.failure_details().join("; "))))
    } else {
        Ok(text)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub nu: f64,
    pub e_k: Option<f64>,
    pub e_g: Option<f64>,
    pub e_2g: Option<f64>,
}

pub fn nu_grid(nu_min: f64, nu_max: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                nu_max
            } else {
                nu_min + (nu_max - nu_min) * i as f64 / last
            }
        })
        .collect()
}

fn sweep(a: &SweepArgs, common: &Common, shape: &PotentialShape) -> Result<Rendered, CliError> {
    if a.steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {}", a.steps)));
    }
    if !(a.nu_min < a.nu_max) {
        return Err(CliError::Usage("--nu-min must be below --nu-max".into()));
    }
    validate_scaled(a.mu, a.nu_min, a.lambda)?;
    let grid = nu_grid(a.nu_min, a.nu_max, a.steps);
    let opts = KgOptions::default();
    let pool = thread_pool(common.jobs)?;
    let reports: Vec<BoundsReport> = pool.install(|| {
        grid.par_iter()
            .map(|&nu| {
                let inputs = Inputs {
                    mu: a.mu,
                    nu,
                    lambda: a.lambda,
                    shape: shape.name().to_string(),
                    physical: None,
                };
                compute_bounds(shape, inputs, &opts)
            })
            .collect()
    });
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| r.has_failure())
        .map(|r| format!("nu={}: {}", g9(r.inputs.nu), r.failure_details().join("; ")))
        .collect();
    if !failures.is_empty() {
        return Ok(Err((None, CliError::Numerical(failures.join("; ")))));
    }
    let rows: Vec<SweepRow> = reports
        .iter()
        .map(|r| SweepRow {
            nu: r.inputs.nu,
            e_k: r.e_k.value,
            e_g: r.e_g.value,
            e_2g: r.e_2g.value,
        })
        .collect();
    if common.json {
        return Ok(Ok(to_json(&rows)));
    }
    let mut text = String::from("nu,e_k,e_g,e_2g\n");
    for r in &rows {
        text.push_str(&csv_line([g9(r.nu), opt_g9(r.e_k), opt_g9(r.e_g), opt_g9(r.e_2g)]));
    }
    Ok(Ok(text))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParabolaPoint {
    pub e: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parabola {
    pub mu: f64,
    pub points: Vec<ParabolaPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct CurvesOutput {
    curves: Vec<SpectralCurve>,
    parabolas: Vec<Parabola>,
}

fn curves(a: &CurvesArgs, common: &Common, shape: &PotentialShape) -> Result<Rendered, CliError> {
    if a.steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {}", a.steps)));
    }
    if !(a.e_min < a.e_max) {
        return Err(CliError::Usage("--e-min must be below --e-max".into()));
    }
    if let Some(nu) = a.nu_list.iter().find(|&&nu| !(nu > 0.0)) {
        return Err(CliError::Usage(format!("couplings must be positive, got {nu}")));
    }
    let e_grid = nu_grid(a.e_min, a.e_max, a.steps);
    let radial = KgOptions::default().radial;
    let pool = thread_pool(common.jobs)?;
    let computed: Result<Vec<SpectralCurve>, _> = pool.install(|| {
        a.nu_list
            .par_iter()
            .map(|&nu| single_curve(shape, nu, &e_grid, &radial))
            .collect()
    });
    let curves = match computed {
        Ok(c) => c,
        Err(e) => return Ok(Err((None, e.into()))),
    };
    let parabolas: Vec<Parabola> = a
        .mu_list
        .iter()
        .map(|&mu| Parabola {
            mu,
            points: e_grid
                .iter()
                .map(|&e| ParabolaPoint {
                    e,
                    value: e * e - mu * mu,
                })
                .collect(),
        })
        .collect();
    if common.json {
        return Ok(Ok(to_json(&CurvesOutput { curves, parabolas })));
    }
    let mut text = String::from("kind,param,e,value,exists\n");
    for c in &curves {
        for p in &c.points {
            text.push_str(&csv_line([
                "F".to_string(),
                g9(c.nu),
                g9(p.e),
                g9(p.f),
                p.exists.to_string(),
            ]));
        }
    }
    for p in &parabolas {
        for q in &p.points {
            text.push_str(&csv_line([
                "parabola".to_string(),
                g9(p.mu),
                g9(q.e),
                g9(q.value),
                String::new(),
            ]));
        }
    }
    Ok(Ok(text))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct CriticalOutput {
    which: Which,
    mu: f64,
    shape: String,
    nu: f64,
    /// Large-N particle bound times coupling, `N·v < 2√2·ν_s/a`.
    n_max_times_v: Option<f64>,
    v: Option<f64>,
    n_max: Option<f64>,
}

/// `ν = √γ·v·a/2` with `γ ≈ N²/2` for large N.
pub fn n_max_times_v(nu_s: f64, range: f64) -> f64 {
    2.0 * std::f64::consts::SQRT_2 * nu_s / range
}

fn critical(a: &CriticalArgs, common: &Common, shape: &PotentialShape) -> Result<Rendered, CliError> {
    if !(a.mu > 0.0) || !a.mu.is_finite() {
        return Err(CliError::Usage(format!("--mu must be positive, got {}", a.mu)));
    }
    if !(a.a > 0.0) || !(a.v > 0.0) {
        return Err(CliError::Usage("--a and --v must be positive".into()));
    }
    let opts = KgOptions::default();
    let found = critical_nu_with(shape, a.mu, &opts).and_then(|nc| match a.which {
        Which::Nc => Ok(nc),
        // climb from just above ν_c, where a valid solution exists
        Which::Ns => supercritical_nu_from(shape, a.mu, nc + opts.nu_tol, &opts),
    });
    let nu = match found {
        Ok(nu) => nu,
        Err(e) => return Ok(Err((None, e.into()))),
    };
    let translation = (a.which == Which::Ns).then(|| n_max_times_v(nu, a.a));
    let out = CriticalOutput {
        which: a.which,
        mu: a.mu,
        shape: shape.name().to_string(),
        nu,
        n_max_times_v: translation,
        v: translation.map(|_| a.v),
        n_max: translation.map(|t| t / a.v),
    };
    if common.json {
        return Ok(Ok(to_json(&out)));
    }
    let mut text = match a.which {
        Which::Nc => format!("nu_c={}\n", fixed6(nu)),
        Which::Ns => format!("nu_s={}\n", fixed6(nu)),
    };
    if let Some(t) = translation {
        text.push_str(&format!(
            "n_max_times_v={}\nn_max={} (v={})\n",
            fixed6(t),
            fixed6(t / a.v),
            g9(a.v)
        ));
    }
    Ok(Ok(text))
}

pub const JACOBI_TOL: f64 = 1e-12;
pub const CONSTANTS_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiRow {
    pub n: usize,
    pub orthogonality: f64,
    pub row_sum: f64,
    pub coef_diagonal: f64,
    pub coef_cross: f64,
}

impl JacobiRow {
    fn worst(&self) -> f64 {
        self.orthogonality
            .max(self.row_sum)
            .max(self.coef_diagonal)
            .max(self.coef_cross)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ConstantsBlock {
    n: u64,
    alpha: f64,
    beta: f64,
    b: f64,
    delta: f64,
    residuals: [f64; 7],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct JacobiOutput {
    rows: Vec<JacobiRow>,
    constants: ConstantsBlock,
    passed: bool,
}

pub fn jacobi_rows(n_max: usize, jobs: Option<usize>) -> Result<Vec<JacobiRow>, CliError> {
    let pool = thread_pool(jobs)?;
    pool.install(|| {
        (2..=n_max)
            .into_par_iter()
            .map(|n| {
                let b = build_jacobi_matrix(n)?;
                let coef = verify_appendix_coefficients(&b);
                Ok(JacobiRow {
                    n,
                    orthogonality: b.orthogonality_deviation(),
                    row_sum: verify_row_sum_identity(&b),
                    coef_diagonal: coef.diagonal_sum,
                    coef_cross: coef.cross_sum,
                })
            })
            .collect()
    })
}

fn jacobi_check(a: &JacobiArgs, common: &Common) -> Result<(String, Option<String>), CliError> {
    if a.n_max < 2 {
        return Err(CliError::Usage(format!("--n-max must be at least 2, got {}", a.n_max)));
    }
    let rows = jacobi_rows(a.n_max, common.jobs)?;
    let n = a.n_max as u64;
    let c = jacobi_constants(n)?;
    let constants = ConstantsBlock {
        n,
        alpha: c.alpha,
        beta: c.beta,
        b: c.b,
        delta: c.delta,
        residuals: c.identity_residuals(n),
    };
    let bad_rows: Vec<usize> = rows
        .iter()
        .filter(|r| !(r.worst() <= JACOBI_TOL))
        .map(|r| r.n)
        .collect();
    let bad_constants = constants.residuals.iter().any(|r| !(*r <= CONSTANTS_TOL));
    let passed = bad_rows.is_empty() && !bad_constants;

    let text = if common.json {
        to_json(&JacobiOutput {
            rows,
            constants: constants.clone(),
            passed,
        })
    } else {
        let mut t = String::from("n,orthogonality,row_sum,coef_diagonal,coef_cross\n");
        for r in &rows {
            t.push_str(&csv_line([
                r.n.to_string(),
                g9(r.orthogonality),
                g9(r.row_sum),
                g9(r.coef_diagonal),
                g9(r.coef_cross),
            ]));
        }
        t.push_str("\nconstant,value\n");
        for (name, v) in [
            ("n", n as f64),
            ("alpha", c.alpha),
            ("beta", c.beta),
            ("b", c.b),
            ("delta", c.delta),
        ] {
            t.push_str(&csv_line([name.to_string(), g9(v)]));
        }
        for (i, r) in constants.residuals.iter().enumerate() {
            t.push_str(&csv_line([format!("identity_{}", i + 1), g9(*r)]));
        }
        t
    };
    let failure = (!passed).then(|| {
        let mut parts = Vec::new();
        if !bad_rows.is_empty() {
            parts.push(format!("matrix identities above {JACOBI_TOL:e} at n = {bad_rows:?}"));
        }
        if bad_constants {
            parts.push(format!("constant identities above {CONSTANTS_TOL:e}"));
        }
        parts.join("; ")
    });
    Ok((text, failure))
}

/// The clap command, for help rendering and introspection.
pub fn command() -> clap::Command {
    Cli::command()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("nboson")
            .chain(s.split_whitespace())
            .map(String::from)
            .collect()
    }

    fn run_str(s: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv(s), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn clap_definition_is_consistent() {
        command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str("bounds --mu 1").0, 2);
        assert_eq!(run_str("bounds --mu 1 --nu 1 --N 3").0, 2);
        assert_eq!(run_str("bounds --N 3 --m 1").0, 2);
        assert_eq!(run_str("sweep --nu-min 2 --nu-max 1 --steps 3").0, 2);
        assert_eq!(run_str("sweep --nu-min 1 --nu-max 2 --steps 1").0, 2);
        assert_eq!(run_str("bounds --mu 1 --nu 1 --shape coulomb").0, 2);
        assert_eq!(run_str("frobnicate").0, 2);
        assert_eq!(run_str("jacobi-check --n-max 1").0, 2);
        assert_eq!(run_str("jacobi-check --n-max 3 --jobs 0").0, 2);
        assert_eq!(run_str("sweep --nu-min 1 --nu-max 2 --steps 2 --jobs 0").0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str("--help");
        assert_eq!(code, 0);
        assert!(out.contains("jacobi-check"));
    }

    #[test]
    fn nu_grid_hits_endpoints() {
        let g = nu_grid(1.0, 6.0, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[10], 6.0);
        assert_eq!(g[3], 2.5);
    }

    #[test]
    fn particle_translation() {
        assert!((n_max_times_v(5.7, std::f64::consts::SQRT_2) - 11.4).abs() < 1e-12);
    }

    #[test]
    fn small_jacobi_check_passes() {
        let (code, out, _) = run_str("jacobi-check --n-max 5");
        assert_eq!(code, 0);
        assert!(out.starts_with("n,orthogonality,row_sum,coef_diagonal,coef_cross\n2,"));
        assert!(out.contains("\nconstant,value\nn,5\n"));
    }
}
