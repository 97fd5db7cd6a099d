//! Run configuration, report documents and their Markdown rendering.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify_optimize::{Certificate, GammaBracket, GammaMode, Optimization, SearchConfig, Verdict};
use crate::exact_arith::rational::{serde_str, to_decimal};
use crate::exact_arith::{format_rational, rat, Rational, DEFAULT_PRECISION};
use crate::exec::Execution;
use crate::model_geometry::ModelCheck;
use crate::pinch_coefficients::ProofParams;
use crate::spectral_identities::suites::SuiteReport;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
    Both,
}

/// `(σ, ε, κ)`; δ and λ are configured separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamPoint {
    #[serde(with = "serde_str")]
    pub sigma: Rational,
    #[serde(with = "serde_str")]
    pub epsilon: Rational,
    #[serde(with = "serde_str")]
    pub kappa: Rational,
}

impl Default for ParamPoint {
    fn default() -> Self {
        let p = ProofParams::reference_point();
        Self {
            sigma: p.sigma,
            epsilon: p.epsilon,
            kappa: p.kappa,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub trials: u64,
    pub seed: u64,
    #[serde(with = "serde_str")]
    pub delta: Rational,
    pub params: ParamPoint,
    #[serde(with = "serde_str::vec")]
    pub lambdas: Vec<Rational>,
    /// Ambient dimension `n` for model checks.
    pub dim: usize,
    pub search: SearchConfig,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: DEFAULT_PRECISION,
            trials: 10_000,
            seed: 0,
            delta: rat(1, 18),
            params: ParamPoint::default(),
            lambdas: Vec::new(),
            dim: 5,
            search: SearchConfig::default(),
            output_path: None,
            format: Format::Json,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.precision_bits < 64 {
            return bad(format!("precision_bits must be >= 64, got {}", self.precision_bits));
        }
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.dim == 0 {
            return bad("dim must be >= 1".into());
        }
        self.proof_params().validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.search.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(())
    }

    pub fn proof_params(&self) -> ProofParams {
        ProofParams {
            sigma: self.params.sigma.clone(),
            epsilon: self.params.epsilon.clone(),
            kappa: self.params.kappa.clone(),
            delta: self.delta.clone(),
            lambda: Rational::from_integer(0.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub mode: GammaMode,
    pub bracket: Option<GammaBracket>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    pub config_echo: RunConfig,
    pub passed: bool,
    pub certificates: Vec<Certificate>,
    pub property_suites: Vec<SuiteReport>,
    pub models: Vec<ModelCheck>,
    pub gamma: Vec<GammaResult>,
    pub optimization: Option<Optimization>,
    pub diagnostics: Vec<String>,
    /// Informational; excluded from determinism comparisons.
    pub wall_time_ms: u64,
}

impl ReportDocument {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config_echo: config.clone(),
            passed: true,
            certificates: Vec::new(),
            property_suites: Vec::new(),
            models: Vec::new(),
            gamma: Vec::new(),
            optimization: None,
            diagnostics: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn relation_symbol(v: &Verdict) -> &'static str {
    match v.relation {
        crate::certify_optimize::Relation::Lt => "<",
        crate::certify_optimize::Relation::Gt => ">",
        crate::certify_optimize::Relation::Le => "≤",
    }
}

/// What each verdict certifies, in words.
fn verdict_role(name: &str) -> &'static str {
    use crate::certify_optimize::*;
    match name {
        THETA_POSITIVE => "Simons-inequality weight",
        A_NEGATIVE => "coefficient of the third-derivative integral",
        B_NEGATIVE => "constant coefficient before the gap term",
        FINAL_T1 => "coefficient of the gradient integral, self-shrinkers",
        FINAL_T2 => "coefficient of the gradient integral, λ-hypersurfaces",
        REF_B => "reference bound on the constant coefficient",
        REF_D => "reference bound on the gap slope",
        REF_ETA => "reference bound on the λ perturbation",
        _ => "",
    }
}

fn chain_name(t: crate::certify_optimize::Theorem) -> &'static str {
    match t {
        crate::certify_optimize::Theorem::One => "Self-shrinker",
        crate::certify_optimize::Theorem::Two => "λ-hypersurface",
    }
}

fn fmt_params(p: &ProofParams) -> String {
    format!(
        "σ={}, ε={}, κ={}, δ={}, λ={}",
        format_rational(&p.sigma),
        format_rational(&p.epsilon),
        format_rational(&p.kappa),
        format_rational(&p.delta),
        format_rational(&p.lambda)
    )
}

fn outcome_word(v: &Verdict) -> &'static str {
    match v.outcome {
        crate::certify_optimize::Outcome::Pass => "pass",
        crate::certify_optimize::Outcome::Fail => "FAIL",
        crate::certify_optimize::Outcome::Indeterminate => "INDETERMINATE",
    }
}

fn render_certificate(out: &mut String, c: &Certificate) {
    let _ = writeln!(
        out,
        "#### {} chain at {} ({} bits): {}\n",
        chain_name(c.theorem),
        fmt_params(&c.params),
        c.precision,
        if c.passed { "pass" } else { "FAIL" }
    );
    let _ = writeln!(out, "| verdict | role | enclosure | outcome |");
    let _ = writeln!(out, "|---|---|---|---|");
    for (v, informational) in c
        .verdicts
        .iter()
        .map(|v| (v, false))
        .chain(c.reference_checks.iter().map(|v| (v, true)))
    {
        let _ = writeln!(
            out,
            "| `{}`{} | {} | {} {} {} | {} |",
            v.name,
            if informational { " (ref)" } else { "" },
            verdict_role(&v.name),
            v.enclosure,
            relation_symbol(v),
            format_rational(&v.threshold),
            outcome_word(v)
        );
    }
    if let Some(ds) = &c.delta_sup {
        let _ = writeln!(out, "\nLargest admissible gap −B/D ∈ {ds}");
    }
    out.push('\n');
}

/// Markdown summary of one report.
pub fn render_markdown(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "## `{}`: {}\n\ntool version {}, seed {}, precision {} bits, wall time {} ms\n",
        doc.command,
        if doc.passed { "PASS" } else { "FAIL" },
        doc.tool_version,
        doc.config_echo.seed,
        doc.config_echo.precision_bits,
        doc.wall_time_ms
    );
    for d in &doc.diagnostics {
        let _ = writeln!(out, "> {d}\n");
    }
    if !doc.certificates.is_empty() {
        out.push_str("### Certificates\n\n");
        for c in &doc.certificates {
            render_certificate(&mut out, c);
        }
    }
    if let Some(opt) = &doc.optimization {
        let _ = writeln!(
            out,
            "### Search\n\n{} grid points, {} feasible, {} certified candidates, κ-profile unimodal: {}\n",
            opt.grid_points,
            opt.feasible_points,
            opt.trace.len(),
            opt.kappa_profile_unimodal
        );
        let _ = writeln!(out, "| σ | ε | κ | −B/D | B+Dδ<0 |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for c in &opt.trace {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                format_rational(&c.params.sigma),
                format_rational(&c.params.epsilon),
                format_rational(&c.params.kappa),
                c.delta_sup.as_ref().map_or("—".to_string(), |d| d.approx(10)),
                if c.passed { "pass" } else { "fail" }
            );
        }
        out.push('\n');
    }
    if !doc.gamma.is_empty() {
        out.push_str("### Largest admissible |λ|\n\n| mode | certified λ | first failing λ | evaluations |\n|---|---|---|---|\n");
        for g in &doc.gamma {
            match &g.bracket {
                Some(b) => {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        g.mode.label(),
                        to_decimal(&b.pass, 9),
                        to_decimal(&b.fail, 9),
                        b.evaluations
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "| {} | — | — | {} |",
                        g.mode.label(),
                        g.error.as_deref().unwrap_or("")
                    );
                }
            }
        }
        out.push('\n');
    }
    if !doc.property_suites.is_empty() {
        out.push_str("### Property suites\n\n| suite | trials | failures | indeterminate | notes |\n|---|---|---|---|---|\n");
        for s in &doc.property_suites {
            let notes: Vec<String> = s.notes.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                s.name,
                s.trials,
                s.failures,
                s.indeterminate,
                notes.join(", ")
            );
        }
        out.push('\n');
        for s in doc.property_suites.iter().filter(|s| !s.counterexamples.is_empty()) {
            let _ = writeln!(out, "Counterexamples in `{}`:\n", s.name);
            for c in &s.counterexamples {
                let _ = writeln!(out, "- `{c}`");
            }
            out.push('\n');
        }
    }
    if !doc.models.is_empty() {
        out.push_str("### Model hypersurfaces\n\n| λ | n | admissible k | residuals 0 | closed forms | gap 0 | pass |\n|---|---|---|---|---|---|---|\n");
        for m in &doc.models {
            let ks: Vec<String> = m.admissible_k.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                format_rational(&m.lambda),
                m.n,
                if ks.is_empty() { "none".to_string() } else { ks.join(", ") },
                m.residuals_vanish,
                m.closed_forms_match,
                m.gap_vanishes,
                if m.passed { "pass" } else { "FAIL" }
            );
        }
        out.push('\n');
    }
    out
}

/// Concatenates several reports under one heading.
pub fn merge_markdown(docs: &[ReportDocument]) -> String {
    let passed = docs.iter().filter(|d| d.passed).count();
    let mut out = format!(
        "# Pinching certification report\n\n{} of {} runs passed.\n\n",
        passed,
        docs.len()
    );
    for d in docs {
        out.push_str(&render_markdown(d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify_optimize::{certify_point, Theorem};

    #[test]
    fn config_defaults_round_trip() {
        let cfg = RunConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
        assert_eq!(RunConfig::from_json("{}").unwrap(), cfg);
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(RunConfig::from_json(r#"{"precision_bits": 32}"#).is_err());
        assert!(RunConfig::from_json(r#"{"trials": 0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"delta": 0.05}"#).is_err());
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(RunConfig::from_json(r#"{"params": {"sigma": "-1", "epsilon": "1/10", "kappa": "1/10"}}"#).is_err());
    }

    #[test]
    fn report_round_trips() {
        let cfg = RunConfig::default();
        let mut doc = ReportDocument::new("certify", &cfg);
        doc.certificates.push(certify_point(&cfg.proof_params(), Theorem::One, 128));
        let back: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let md = render_markdown(&doc);
        assert!(md.contains("`B+Dδ<0`"));
    }
}
