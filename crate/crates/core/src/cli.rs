//! Command-line front end. Exit codes: 0 all checks pass, 1 some check fails
//! or is indeterminate, 2 usage or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::certify_optimize::{certify_point, gamma_max, optimize_delta, GammaMode, Theorem};
use crate::exact_arith::{parse_rational, Rational};
use crate::model_geometry::{builtin_lambda_grid, check_models};
use crate::report::{merge_markdown, render_markdown, ConfigError, Format, GammaResult, ReportDocument, RunConfig};
use crate::spectral_identities::suites::{run_all, SuiteConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pinchcert", version, about = "Certified constants for pinching rigidity of self-shrinkers and λ-hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify the coefficient signs at the configured point.
    Certify(RunArgs),
    /// Search (σ, ε, κ) for the largest certifiable pinching gap.
    Optimize(RunArgs),
    /// Bracket the largest admissible |λ| in sharp and threshold modes.
    Gamma(RunArgs),
    /// Run the randomized exact identity and inequality suites.
    Identities(RunArgs),
    /// Exact checks on the sphere and cylinder models.
    Models(RunArgs),
    /// Merge JSON reports into one Markdown document.
    Report(MergeArgs),
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = parse_rational_arg)]
    pub delta: Option<Rational>,
    #[arg(long = "lambda", value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub lambdas: Vec<Rational>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Ambient dimension for model checks.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Disable data parallelism.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug)]
pub struct MergeArgs {
    /// JSON reports to merge.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// File config (or defaults) overlaid with flags.
pub fn resolve_config(args: &RunArgs) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
                path: path.display().to_string(),
                source,
            })?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(p) = args.precision {
        cfg.precision_bits = p;
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
        cfg.search.seed = s;
    }
    if let Some(d) = &args.delta {
        cfg.delta = d.clone();
    }
    if !args.lambdas.is_empty() {
        cfg.lambdas = args.lambdas.clone();
    }
    if let Some(o) = &args.out {
        cfg.output_path = Some(o.clone());
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    if let Some(n) = args.dim {
        cfg.dim = n;
    }
    if args.sequential {
        cfg.execution = crate::exec::Execution::Sequential;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_certify(cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("certify", cfg);
    let p = cfg.proof_params();
    let prec = cfg.precision_bits;
    doc.certificates.push(certify_point(&p, Theorem::One, prec));
    let lambdas = if cfg.lambdas.is_empty() {
        vec![Rational::from_integer(0.into())]
    } else {
        cfg.lambdas.clone()
    };
    for l in lambdas {
        doc.certificates.push(certify_point(&p.with_lambda(l), Theorem::Two, prec));
    }
    doc.passed = doc.certificates.iter().all(|c| c.passed);
    doc
}

pub fn cmd_optimize(cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("optimize", cfg);
    match optimize_delta(&cfg.search, &cfg.delta, cfg.precision_bits, cfg.execution) {
        Ok(opt) => {
            doc.passed = opt.best.passed;
            doc.certificates.push(opt.best.clone());
            doc.optimization = Some(opt);
        }
        Err(e) => {
            doc.passed = false;
            doc.diagnostics.push(e.to_string());
        }
    }
    doc
}

pub fn cmd_gamma(cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("gamma", cfg);
    let p = cfg.proof_params();
    doc.certificates.push(certify_point(&p, Theorem::One, cfg.precision_bits));
    for mode in [GammaMode::Sharp, GammaMode::reference_threshold()] {
        let r = gamma_max(&p, &mode, cfg.precision_bits);
        doc.gamma.push(match r {
            Ok(b) => GammaResult {
                mode,
                bracket: Some(b),
                error: None,
            },
            Err(e) => GammaResult {
                mode,
                bracket: None,
                error: Some(e.to_string()),
            },
        });
    }
    doc.passed = doc.gamma.iter().all(|g| g.bracket.as_ref().is_some_and(|b| b.pass > Rational::from_integer(0.into())));
    for g in doc.gamma.iter().filter_map(|g| g.error.as_ref()) {
        doc.diagnostics.push(g.clone());
    }
    doc
}

pub fn cmd_identities(cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("identities", cfg);
    let suite_cfg = SuiteConfig {
        exec: cfg.execution,
        ..SuiteConfig::new(cfg.trials, cfg.seed)
    };
    doc.property_suites = run_all(&suite_cfg);
    doc.passed = doc.property_suites.iter().all(|s| s.passed());
    doc
}

pub fn cmd_models(cfg: &RunConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("models", cfg);
    let mut lambdas = builtin_lambda_grid();
    for l in &cfg.lambdas {
        if !lambdas.contains(l) {
            lambdas.push(l.clone());
        }
    }
    for l in lambdas {
        match check_models(&l, cfg.dim) {
            Ok(m) => doc.models.push(m),
            Err(e) => doc.diagnostics.push(e.to_string()),
        }
    }
    doc.passed = doc.diagnostics.is_empty() && doc.models.iter().all(|m| m.passed);
    doc
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Writes the report per `format`; `Both` writes `<out>.json` and `<out>.md`.
pub fn emit(doc: &ReportDocument, out: Option<&Path>, format: Format) -> Result<(), String> {
    let json = || doc.to_json();
    let md = || render_markdown(doc);
    match (out, format) {
        (None, Format::Json) => print!("{}", json()),
        (None, Format::Markdown) => print!("{}", md()),
        (None, Format::Both) => print!("{}\n{}", json(), md()),
        (Some(p), Format::Json) => write_file(p, &json())?,
        (Some(p), Format::Markdown) => write_file(p, &md())?,
        (Some(p), Format::Both) => {
            write_file(&p.with_extension("json"), &json())?;
            write_file(&p.with_extension("md"), &md())?;
        }
    }
    Ok(())
}

fn run_command(f: fn(&RunConfig) -> ReportDocument, args: &RunArgs) -> i32 {
    let cfg = match resolve_config(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let mut doc = f(&cfg);
    doc.wall_time_ms = start.elapsed().as_millis() as u64;
    for d in &doc.diagnostics {
        eprintln!("{d}");
    }
    if let Err(e) = emit(&doc, cfg.output_path.as_deref(), cfg.format) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if doc.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn run_merge(args: &MergeArgs) -> i32 {
    let mut docs = Vec::new();
    for path in &args.inputs {
        let parsed = fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str::<ReportDocument>(&t).map_err(|e| e.to_string()));
        match parsed {
            Ok(d) => docs.push(d),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
    }
    let md = merge_markdown(&docs);
    match &args.out {
        Some(p) => {
            if let Err(e) = write_file(p, &md) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
        None => print!("{md}"),
    }
    if docs.iter().all(|d| d.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn run(cli: Cli) -> i32 {
    match &cli.command {
        Command::Certify(a) => run_command(cmd_certify, a),
        Command::Optimize(a) => run_command(cmd_optimize, a),
        Command::Gamma(a) => run_command(cmd_gamma, a),
        Command::Identities(a) => run_command(cmd_identities, a),
        Command::Models(a) => run_command(cmd_models, a),
        Command::Report(a) => run_merge(a),
    }
}

/// Parses `argv` and runs; clap usage errors map to exit code 2.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}
