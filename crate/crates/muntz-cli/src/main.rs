//! `muntz` — command-line front end for the Müntz ball polynomial
//! spectral-Galerkin eigensolvers: solve spectra, run convergence studies,
//! query the Bessel-zero oracle, sample eigenfunctions, and dump the
//! assembled Galerkin matrices. All outputs are machine-readable (CSV or
//! JSON) and byte-identical across reruns.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure
//! (non-SPD mass matrix or Bessel window exceeded), each with a single
//! line on stderr.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use muntz_ball::assembly::{assemble, BasisTheta, ProblemConfig};
use muntz_ball::harmonics::harmonic_dim;
use muntz_ball::oracle::{analytic_eigenvalue, oracle_eigen};
use muntz_ball::solver::{eigenfunction_radial_eval, normalize, solve_spectrum, SpectrumRequest};
use output::{float17, write_output, Cell, Format, Table};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "muntz",
    version,
    about = "Müntz ball polynomial spectral eigensolvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the smallest eigenvalues of a problem configuration.
    Solve(SolveArgs),
    /// Analytic eigenvalues of the degenerate problem from Bessel zeros.
    Oracle(OracleArgs),
    /// Eigenvalue error versus radial truncation K.
    Convergence(ConvergenceArgs),
    /// Sample a normalized radial eigenfunction.
    Eigenfunction(EigenfunctionArgs),
    /// Dump the assembled stiffness/mass matrices of one radial block.
    Matrices(MatricesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemKind {
    Degenerate,
    Fractional,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisKind {
    Full,
    Half,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReferenceKind {
    Oracle,
    SelfRef,
}

/// Flags defining the eigenvalue problem; a `--config FILE` (JSON with the
/// same field names) fills in anything not given on the command line.
#[derive(Args, Clone)]
struct ProblemArgs {
    /// Problem kind: degenerate (default) or fractional.
    #[arg(long, value_enum)]
    problem: Option<ProblemKind>,
    /// Space dimension d >= 1.
    #[arg(long)]
    d: Option<u32>,
    /// Degeneracy exponent mu (degenerate problem only), -1/2 < mu < 1.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Inverse-square potential strength c.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Fractional-potential strength z (may be negative).
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Fractional exponent parameter eta (non-negative integer).
    #[arg(long)]
    eta: Option<u32>,
    /// Fractional exponent parameter nu (non-negative integer).
    #[arg(long)]
    nu: Option<u32>,
    /// Basis variant for the degenerate problem: full (theta = 1-mu) or
    /// half (theta = (1-mu)/2).
    #[arg(long, value_enum)]
    basis: Option<BasisKind>,
    /// JSON file mirroring these flags; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Maximum harmonic degree N.
    #[arg(long = "N")]
    n_max: Option<u32>,
    /// Radial truncation K.
    #[arg(long = "K")]
    k_trunc: Option<usize>,
    /// Number of smallest eigenvalues to report.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    /// Output path (stdout when omitted); relative paths land under
    /// MUNTZ_OUT_DIR when set.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Maximum harmonic degree N.
    #[arg(long = "N")]
    n_max: Option<u32>,
    /// Number of Bessel zeros per degree.
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long = "N")]
    n_max: Option<u32>,
    /// Truncation sweep start:end:step, e.g. 8:40:4.
    #[arg(long = "K-list")]
    k_list: String,
    /// Error reference: the Bessel-zero oracle (degenerate problems) or a
    /// self-reference at twice the largest K in the list.
    #[arg(long, value_enum)]
    reference: Option<ReferenceKind>,
    /// Number of smallest eigenvalues to track.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EigenfunctionArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long = "N")]
    n_max: Option<u32>,
    #[arg(long = "K")]
    k_trunc: Option<usize>,
    /// Comma-separated radii in (0, 1].
    #[arg(long)]
    r: String,
    /// 1-based index into the ascending spectrum.
    #[arg(long, default_value_t = 1)]
    index: usize,
    /// Rescale so the value at the first radius equals this reference.
    #[arg(long, allow_negative_numbers = true)]
    match_scale: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatKind>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatricesArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Harmonic degree of the radial block.
    #[arg(long)]
    n: Option<u32>,
    /// Radial truncation K.
    #[arg(long = "K")]
    k_trunc: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// JSON config file mirroring the command-line flags.
#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    problem: Option<String>,
    d: Option<u32>,
    mu: Option<f64>,
    c: Option<f64>,
    z: Option<f64>,
    eta: Option<u32>,
    nu: Option<u32>,
    basis: Option<String>,
    #[serde(rename = "N")]
    n_max: Option<u32>,
    #[serde(rename = "K")]
    k_trunc: Option<usize>,
    count: Option<usize>,
    format: Option<String>,
}

enum AppError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl From<muntz_ball::Error> for AppError {
    fn from(e: muntz_ball::Error) -> Self {
        if e.is_numerical() {
            AppError::Numerical(e.to_string())
        } else {
            AppError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

fn load_file_config(path: &Option<PathBuf>) -> Result<FileConfig, AppError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                AppError::Config(format!("cannot read config {}: {e}", p.display()))
            })?;
            serde_json::from_str(&text)
                .map_err(|e| AppError::Config(format!("invalid config {}: {e}", p.display())))
        }
    }
}

struct Resolved {
    config: ProblemConfig,
    file: FileConfig,
}

fn resolve_problem(args: &ProblemArgs) -> Result<Resolved, AppError> {
    let file = load_file_config(&args.config)?;
    let kind = match (args.problem, file.problem.as_deref()) {
        (Some(k), _) => k,
        (None, Some("degenerate")) => ProblemKind::Degenerate,
        (None, Some("fractional")) => ProblemKind::Fractional,
        (None, Some(other)) => {
            return Err(AppError::Config(format!("unknown problem kind {other:?}")))
        }
        (None, None) => ProblemKind::Degenerate,
    };
    let d = args
        .d
        .or(file.d)
        .ok_or_else(|| AppError::Config("missing --d".into()))?;
    let c = args
        .c
        .or(file.c)
        .ok_or_else(|| AppError::Config("missing --c".into()))?;
    let config = match kind {
        ProblemKind::Degenerate => {
            let mu = args
                .mu
                .or(file.mu)
                .ok_or_else(|| AppError::Config("degenerate problem needs --mu".into()))?;
            let basis = match (args.basis, file.basis.as_deref()) {
                (Some(BasisKind::Full), _) => BasisTheta::Full,
                (Some(BasisKind::Half), _) => BasisTheta::Half,
                (None, Some("full")) | (None, None) => BasisTheta::Full,
                (None, Some("half")) => BasisTheta::Half,
                (None, Some(other)) => {
                    return Err(AppError::Config(format!("unknown basis {other:?}")))
                }
            };
            ProblemConfig::Degenerate { d, mu, c, basis }
        }
        ProblemKind::Fractional => {
            let eta = args
                .eta
                .or(file.eta)
                .ok_or_else(|| AppError::Config("fractional problem needs --eta".into()))?;
            let nu = args
                .nu
                .or(file.nu)
                .ok_or_else(|| AppError::Config("fractional problem needs --nu".into()))?;
            let z = args.z.or(file.z).unwrap_or(0.0);
            ProblemConfig::Fractional { d, c, z, eta, nu }
        }
    };
    config.validate()?;
    Ok(Resolved { config, file })
}

/// Deterministic flat JSON echo of the resolved configuration.
fn config_json(config: &ProblemConfig, n_max: Option<u32>, k_trunc: Option<usize>) -> String {
    let mut s = String::from("{");
    match config {
        ProblemConfig::Degenerate { d, mu, c, basis } => {
            s.push_str(&format!(
                "\"problem\":\"degenerate\",\"d\":{d},\"mu\":{mu},\"c\":{c},\"basis\":\"{}\"",
                match basis {
                    BasisTheta::Full => "full",
                    BasisTheta::Half => "half",
                }
            ));
        }
        ProblemConfig::Fractional { d, c, z, eta, nu } => {
            s.push_str(&format!(
                "\"problem\":\"fractional\",\"d\":{d},\"c\":{c},\"z\":{z},\"eta\":{eta},\"nu\":{nu}"
            ));
        }
    }
    if let Some(n) = n_max {
        s.push_str(&format!(",\"N\":{n}"));
    }
    if let Some(k) = k_trunc {
        s.push_str(&format!(",\"K\":{k}"));
    }
    s.push('}');
    s
}

fn pick_format(cli: Option<FormatKind>, file: &FileConfig) -> Result<Format, AppError> {
    match (cli, file.format.as_deref()) {
        (Some(FormatKind::Csv), _) => Ok(Format::Csv),
        (Some(FormatKind::Json), _) => Ok(Format::Json),
        (None, Some("csv")) | (None, None) => Ok(Format::Csv),
        (None, Some("json")) => Ok(Format::Json),
        (None, Some(other)) => Err(AppError::Config(format!("unknown format {other:?}"))),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), AppError> {
    let resolved = resolve_problem(&args.problem)?;
    let n_max = args
        .n_max
        .or(resolved.file.n_max)
        .ok_or_else(|| AppError::Config("missing --N".into()))?;
    let k_trunc = args
        .k_trunc
        .or(resolved.file.k_trunc)
        .ok_or_else(|| AppError::Config("missing --K".into()))?;
    let count = args.count.or(resolved.file.count).unwrap_or(5);
    let format = pick_format(args.format, &resolved.file)?;
    let results = solve_spectrum(&SpectrumRequest {
        config: resolved.config,
        max_degree: n_max,
        k_trunc,
        count,
    })?;
    let table = Table {
        columns: &["index", "lambda", "n", "radial_rank", "multiplicity"],
        rows: results
            .iter()
            .enumerate()
            .map(|(i, r)| {
                vec![
                    Cell::Int(i as u64 + 1),
                    Cell::Float(r.lambda),
                    Cell::Int(r.n as u64),
                    Cell::Int(r.radial_rank as u64),
                    Cell::Int(r.multiplicity),
                ]
            })
            .collect(),
    };
    let cfg_json = config_json(&resolved.config, Some(n_max), Some(k_trunc));
    write_output(&args.out, &table.render(format, "solve", &cfg_json))?;
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), AppError> {
    let file = load_file_config(&args.config)?;
    let d = args
        .d
        .or(file.d)
        .ok_or_else(|| AppError::Config("missing --d".into()))?;
    let mu = args
        .mu
        .or(file.mu)
        .ok_or_else(|| AppError::Config("missing --mu".into()))?;
    let c = args
        .c
        .or(file.c)
        .ok_or_else(|| AppError::Config("missing --c".into()))?;
    let n_max = args
        .n_max
        .or(file.n_max)
        .ok_or_else(|| AppError::Config("missing --N".into()))?;
    let format = pick_format(args.format, &file)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        if harmonic_dim(n, d) == 0 {
            continue;
        }
        for m in 1..=args.m_max {
            let eig = oracle_eigen(d, mu, c, n, m)?;
            rows.push(vec![
                Cell::Float(c),
                Cell::Int(n as u64),
                Cell::Int(m as u64),
                Cell::Float(eig.nu_order),
                Cell::Float(eig.zero),
                Cell::Float(eig.lambda),
            ]);
        }
    }
    let table = Table {
        columns: &["c", "n", "m", "order", "zero", "lambda"],
        rows,
    };
    let cfg_json =
        format!("{{\"problem\":\"degenerate\",\"d\":{d},\"mu\":{mu},\"c\":{c},\"N\":{n_max}}}");
    write_output(&args.out, &table.render(format, "oracle", &cfg_json))?;
    Ok(())
}

fn parse_k_list(text: &str) -> Result<Vec<usize>, AppError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(AppError::Config(format!(
            "--K-list expects start:end:step, got {text:?}"
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| AppError::Config(format!("bad K-list component {s:?}")))
    };
    let (start, end, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step == 0 || start == 0 || end < start {
        return Err(AppError::Config(format!("bad K-list range {text:?}")));
    }
    Ok((start..=end).step_by(step).collect())
}

fn cmd_convergence(args: ConvergenceArgs) -> Result<(), AppError> {
    let resolved = resolve_problem(&args.problem)?;
    let n_max = args
        .n_max
        .or(resolved.file.n_max)
        .ok_or_else(|| AppError::Config("missing --N".into()))?;
    let count = args.count.or(resolved.file.count).unwrap_or(5);
    let format = pick_format(args.format, &resolved.file)?;
    let k_list = parse_k_list(&args.k_list)?;
    let reference = args.reference.unwrap_or(match resolved.config {
        ProblemConfig::Degenerate { .. } => ReferenceKind::Oracle,
        ProblemConfig::Fractional { .. } => ReferenceKind::SelfRef,
    });
    let ref_values: Vec<f64> = match reference {
        ReferenceKind::Oracle => {
            let (mu, c) = match resolved.config {
                ProblemConfig::Degenerate { mu, c, .. } => (mu, c),
                ProblemConfig::Fractional { .. } => {
                    return Err(AppError::Config(
                        "the oracle reference exists only for the degenerate problem".into(),
                    ))
                }
            };
            let d = resolved.config.d();
            let mut all = Vec::new();
            for n in 0..=n_max {
                if harmonic_dim(n, d) == 0 {
                    continue;
                }
                for m in 1..=(count + 2) {
                    all.push(analytic_eigenvalue(d, mu, c, n, m)?);
                }
            }
            all.sort_by(f64::total_cmp);
            all.truncate(count);
            all
        }
        ReferenceKind::SelfRef => {
            let k_ref = 2 * *k_list.last().unwrap();
            solve_spectrum(&SpectrumRequest {
                config: resolved.config,
                max_degree: n_max,
                k_trunc: k_ref,
                count,
            })?
            .iter()
            .map(|r| r.lambda)
            .collect()
        }
    };
    let mut rows = Vec::new();
    for &k_trunc in &k_list {
        let results = solve_spectrum(&SpectrumRequest {
            config: resolved.config,
            max_degree: n_max,
            k_trunc,
            count: count.min(k_trunc),
        })?;
        for (i, (r, reference)) in results.iter().zip(&ref_values).enumerate() {
            rows.push(vec![
                Cell::Int(k_trunc as u64),
                Cell::Int(i as u64 + 1),
                Cell::Float(r.lambda),
                Cell::Float((r.lambda - reference).abs()),
            ]);
        }
    }
    let table = Table {
        columns: &["K", "eigen_index", "lambda", "abs_error"],
        rows,
    };
    let cfg_json = config_json(&resolved.config, Some(n_max), None);
    write_output(&args.out, &table.render(format, "convergence", &cfg_json))?;
    Ok(())
}

fn cmd_eigenfunction(args: EigenfunctionArgs) -> Result<(), AppError> {
    let resolved = resolve_problem(&args.problem)?;
    let n_max = args
        .n_max
        .or(resolved.file.n_max)
        .ok_or_else(|| AppError::Config("missing --N".into()))?;
    let k_trunc = args
        .k_trunc
        .or(resolved.file.k_trunc)
        .ok_or_else(|| AppError::Config("missing --K".into()))?;
    let format = pick_format(args.format, &resolved.file)?;
    if args.index == 0 {
        return Err(AppError::Config("--index is 1-based".into()));
    }
    let radii: Result<Vec<f64>, AppError> = args
        .r
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| AppError::Config(format!("bad radius {s:?}")))
        })
        .collect();
    let radii = radii?;
    let results = solve_spectrum(&SpectrumRequest {
        config: resolved.config,
        max_degree: n_max,
        k_trunc,
        count: args.index,
    })?;
    let result = results
        .last()
        .filter(|_| results.len() == args.index)
        .ok_or_else(|| AppError::Config(format!("spectrum has no index {}", args.index)))?;
    let normalized = normalize(result)?;
    let mut values = eigenfunction_radial_eval(&normalized, &radii)?;
    if let Some(reference) = args.match_scale {
        let base = values[0];
        if base == 0.0 {
            return Err(AppError::Config(
                "cannot match scale against a zero sample".into(),
            ));
        }
        let scale = reference / base;
        for v in values.iter_mut() {
            *v *= scale;
        }
    }
    let table = Table {
        columns: &["r", "value"],
        rows: radii
            .iter()
            .zip(&values)
            .map(|(&r, &v)| vec![Cell::Float(r), Cell::Float(v)])
            .collect(),
    };
    let cfg_json = config_json(&resolved.config, Some(n_max), Some(k_trunc));
    write_output(&args.out, &table.render(format, "eigenfunction", &cfg_json))?;
    Ok(())
}

fn banded_json(m: &muntz_ball::linalg::SymBanded) -> String {
    let mut s = format!(
        "{{\"dim\":{},\"half_bandwidth\":{},\"bands\":[",
        m.dim(),
        m.half_bandwidth()
    );
    for (b, band) in m.bands().iter().enumerate() {
        if b > 0 {
            s.push(',');
        }
        s.push('[');
        for (i, v) in band.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&float17(*v));
        }
        s.push(']');
    }
    s.push_str("]}");
    s
}

fn cmd_matrices(args: MatricesArgs) -> Result<(), AppError> {
    let resolved = resolve_problem(&args.problem)?;
    let n = args.n.unwrap_or(0);
    let k_trunc = args
        .k_trunc
        .or(resolved.file.k_trunc)
        .ok_or_else(|| AppError::Config("missing --K".into()))?;
    let block = assemble(&resolved.config, n, k_trunc)?;
    let cfg_json = config_json(&resolved.config, None, Some(k_trunc));
    let content = format!(
        "{{\"schema\":{},\"command\":\"matrices\",\"config\":{},\"n\":{},\"K\":{},\"stiffness\":{},\"mass\":{}}}\n",
        output::SCHEMA_VERSION,
        cfg_json,
        n,
        k_trunc,
        banded_json(&block.stiffness),
        banded_json(&block.mass),
    );
    write_output(&args.out, &content)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::Eigenfunction(args) => cmd_eigenfunction(args),
        Command::Matrices(args) => cmd_matrices(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(AppError::Config(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(AppError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
        Err(AppError::Io(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
