//! Command-line front end: `analyze`, `audit-theorem` and `catalog-list`.
//!
//! Reports are deterministic for a given configuration: no timings, no
//! hash-ordered maps, and the seed is always echoed. Exit codes are 0 on
//! success, 1 on input errors and 2 when a cross-check fails.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::catalog::{catalog, find_entry, make_random_variety, make_segre, make_veronese};
use crate::chart::{project_generic, Chart, JetLength};
use crate::curvilinear::generic_speciality;
use crate::error::{Error, Result};
use crate::exactlin::{rat, ratio, Rational, DEFAULT_SZ_TRIALS};
use crate::quasiasymptotic::{
    claim_coefficient_audit, defect_pipeline, equivalence_audit, gamma15_identically_zero,
    pi_constancy_check, DefectReport, PipelineConfig,
};
use crate::sample::{Sampler, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::terracini::{osc2_regular, osc_variety_dim, secant_defect};

pub const SCHEMA: &str = "infterra.report/v1";

const CONVENTIONS: &[&str] = &[
    "rationals are written as decimal strings \"p\" or \"p/q\"",
    "derivative multi-indices in data are 0-based: x_11 is [0, 0]",
    "a general object is certified by the maximum rank over seeded draws",
    "the fifth curve derivative uses the five-index symbol x_ijklm",
    "gamma_1,5 at a five-jet: rank of x, x_i, x', ..., x''''' is at most n + 4",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Parser, Debug)]
#[command(name = "infterra", version, about = "Secant defects, curvilinear tangent spaces and the γ₁,₅ determinant on parametrized varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run individual checks on one variety.
    Analyze(AnalyzeArgs),
    /// Run the 2-defectivity pipeline on one variety, or on the catalog.
    AuditTheorem(AuditArgs),
    /// List the catalog.
    CatalogList(CatalogArgs),
}

#[derive(clap::Args, Debug, Clone)]
pub struct AnalyzeArgs {
    /// veronese:n:d, segre:a:b, random:n:deg:r:seed, file:PATH or a catalog id.
    #[arg(long)]
    pub variety: String,
    /// secant:K, osc:M, speciality:LEN, gamma15, pi-constancy, audit, claim.
    #[arg(long = "check", required = true)]
    pub checks: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Projection target: an integer or `3n+2`.
    #[arg(long)]
    pub project: Option<String>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct AuditArgs {
    /// A variety spec, or `catalog` for every entry with r >= 3n + 2.
    #[arg(long)]
    pub variety: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CatalogArgs {
    #[arg(long)]
    pub id: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

/// Echo of every setting that influences a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisConfig {
    pub variety: String,
    pub checks: Vec<String>,
    pub trials: usize,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub project: Option<String>,
}

impl From<&AnalyzeArgs> for AnalysisConfig {
    fn from(a: &AnalyzeArgs) -> Self {
        AnalysisConfig {
            variety: a.variety.clone(),
            checks: a.checks.clone(),
            trials: a.trials,
            samples: a.samples,
            seed: a.seed,
            format: a.format,
            project: a.project.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartInfo {
    pub label: String,
    pub n: usize,
    pub r: usize,
    pub degree: u32,
}

impl ChartInfo {
    fn of(c: &Chart) -> Self {
        ChartInfo {
            label: c.label().to_string(),
            n: c.n(),
            r: c.r(),
            degree: c.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub summary: String,
    pub consistent: bool,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub chart: ChartInfo,
    pub results: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: AnalysisConfig,
    pub conventions: Vec<&'static str>,
    pub sections: Vec<Section>,
    pub consistent: bool,
}

impl Report {
    fn new(command: &str, config: AnalysisConfig, sections: Vec<Section>) -> Self {
        let consistent = sections
            .iter()
            .all(|s| s.results.iter().all(|r| r.consistent));
        Report {
            schema: SCHEMA,
            command: command.into(),
            config,
            conventions: CONVENTIONS.to_vec(),
            sections,
            consistent,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let c = &self.config;
        let mut s = format!("# {} report\n\n", self.command);
        s += &format!(
            "- variety: `{}`\n- seed: {}\n- trials: {}, samples: {}\n",
            c.variety, c.seed, c.trials, c.samples
        );
        if let Some(p) = &c.project {
            s += &format!("- projection: {p}\n");
        }
        s += &format!(
            "- consistent: {}\n",
            if self.consistent { "yes" } else { "NO" }
        );
        for sec in &self.sections {
            let ch = &sec.chart;
            s += &format!("\n## {} (n = {}, r = {}, degree {})\n\n", ch.label, ch.n, ch.r, ch.degree);
            for r in &sec.results {
                let flag = if r.consistent { "" } else { " **INCONSISTENT**" };
                s += &format!("- `{}`: {}{}\n", r.check, r.summary, flag);
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("{what}: {s:?} is not a nonnegative integer")))
}

/// Builds a chart from a variety spec.
pub fn load_variety(spec: &str) -> Result<Chart> {
    let parts: Vec<&str> = spec.split(':').collect();
    let arity = |k: usize| -> Result<()> {
        if parts.len() != k + 1 {
            return Err(Error::Parse(format!(
                "variety {spec:?}: expected {k} parameters after {:?}",
                parts[0]
            )));
        }
        Ok(())
    };
    match parts[0] {
        "veronese" => {
            arity(2)?;
            make_veronese(parse_usize(parts[1], "n")?, parse_usize(parts[2], "d")?)
        }
        "segre" => {
            arity(2)?;
            make_segre(parse_usize(parts[1], "a")?, parse_usize(parts[2], "b")?)
        }
        "random" => {
            arity(4)?;
            let seed = parts[4]
                .parse()
                .map_err(|_| Error::Parse(format!("seed: {:?} is not an integer", parts[4])))?;
            make_random_variety(
                parse_usize(parts[1], "n")?,
                parse_usize(parts[2], "degree")?,
                parse_usize(parts[3], "r")?,
                seed,
            )
        }
        "file" => {
            let path = spec.strip_prefix("file:").unwrap_or_default();
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            Chart::from_json(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
        }
        id => find_entry(id)?.build(),
    }
}

/// Projection target from `--project`: an integer or `3n+2`.
pub fn projection_target(spec: &str, n: usize) -> Result<usize> {
    if spec.replace(' ', "") == "3n+2" {
        return Ok(3 * n + 2);
    }
    parse_usize(spec, "--project")
}

/// Sample values of `u_1` for the Π check.
pub fn pi_samples() -> Vec<Rational> {
    vec![rat(0), rat(1), rat(2), ratio(1, 2), rat(-1)]
}

fn run_check(c: &Chart, check: &str, cfg: &AnalysisConfig) -> Result<CheckResult> {
    let (name, arg) = match check.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (check, None),
    };
    let need_arg = |what: &str| -> Result<usize> {
        parse_usize(
            arg.ok_or_else(|| Error::Parse(format!("check {name:?} needs :{what}")))?,
            what,
        )
    };
    let seed = cfg.seed;
    let ok = |summary: String, data: Value| CheckResult {
        check: check.to_string(),
        summary,
        consistent: true,
        data,
    };
    match name {
        "secant" => {
            let d = secant_defect(c, need_arg("k")?, cfg.samples, seed)?;
            Ok(ok(
                format!(
                    "dim Sec_{} = {} (expected {}), defect {}",
                    d.k, d.observed, d.expected, d.defect
                ),
                to_value(&d),
            ))
        }
        "osc" => match need_arg("m")? {
            1 => {
                let d = osc_variety_dim(c, 1, cfg.samples, seed)?;
                Ok(ok(format!("dim Osc_1 = {d}"), serde_json::json!({ "dim": d })))
            }
            2 => {
                let v = osc2_regular(c, cfg.trials, seed)?;
                let d = osc_variety_dim(c, 2, cfg.samples, seed)?;
                let consistent = (d == 3 * c.n()) == v.regular;
                Ok(CheckResult {
                    check: check.to_string(),
                    summary: format!(
                        "{} (rank {} of {}), dim Osc_2 = {d}",
                        if v.regular { "2-osculating regular" } else { "not 2-osculating regular" },
                        v.best_rank,
                        v.needed_rank
                    ),
                    consistent,
                    data: serde_json::json!({ "verdict": to_value(&v), "dim": d }),
                })
            }
            m => Err(Error::InvalidArgument(format!("osc:{m}: m must be 1 or 2"))),
        },
        "speciality" => {
            let len = JetLength::from_value(need_arg("len")?)?;
            let v = generic_speciality(c, len, cfg.trials, seed)?;
            let consistent = len == JetLength::Two || v.special == v.system_exceeds_threshold;
            Ok(CheckResult {
                check: check.to_string(),
                summary: format!(
                    "{} along a general length-{} scheme: dim T = {} (expected {})",
                    if v.special { "special" } else { "regular" },
                    len.value(),
                    v.best_dim,
                    v.expected
                ),
                consistent,
                data: to_value(&v),
            })
        }
        "gamma15" => {
            let v = gamma15_identically_zero(c, DEFAULT_SZ_TRIALS, seed)?;
            Ok(ok(
                if v.identically_zero {
                    "D is identically zero".to_string()
                } else {
                    "D is not identically zero (witness recorded)".to_string()
                },
                to_value(&v),
            ))
        }
        "pi-constancy" => {
            let p = pi_constancy_check(c, &pi_samples())?;
            let dims: Vec<i64> = p.spaces.iter().map(|s| s.dim).collect();
            Ok(ok(
                format!(
                    "constant: {}, tangent spaces contained: {}, dims {:?}, within [3n, 3n+1]: {}",
                    p.constant,
                    p.tangent_contained.iter().all(|&b| b),
                    dims,
                    p.within_bounds
                ),
                to_value(&p),
            ))
        }
        "audit" => {
            let a = equivalence_audit(c, cfg.trials, seed)?;
            Ok(CheckResult {
                check: check.to_string(),
                summary: format!(
                    "speciality {} / D ≡ 0 {}: {}",
                    a.speciality.special,
                    a.gamma15.identically_zero,
                    if a.consistent { "consistent" } else { "MISMATCH" }
                ),
                consistent: a.consistent,
                data: to_value(&a),
            })
        }
        "claim" => {
            let pt = Sampler::derived(seed, 0x434c_4149).point(c.n());
            let a = claim_coefficient_audit(c, &pt)?;
            Ok(CheckResult {
                check: check.to_string(),
                summary: format!(
                    "{} terms, weighted homogeneous: {}, cited coefficients vanish: {}",
                    a.num_terms,
                    a.weighted_homogeneous,
                    a.cited_coefficients_vanish()
                ),
                consistent: a.weighted_homogeneous && a.prediction_matches() != Some(false),
                data: to_value(&a),
            })
        }
        _ => Err(Error::Parse(format!("unknown check {check:?}"))),
    }
}

/// Runs `analyze` and returns the report.
pub fn analyze(cfg: &AnalysisConfig) -> Result<Report> {
    let mut c = load_variety(&cfg.variety)?;
    if let Some(p) = &cfg.project {
        let target = projection_target(p, c.n())?;
        c = project_generic(&c, target, cfg.seed)?;
    }
    let results = cfg
        .checks
        .iter()
        .map(|k| run_check(&c, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(
        "analyze",
        cfg.clone(),
        vec![Section {
            chart: ChartInfo::of(&c),
            results,
        }],
    ))
}

fn pipeline_result(rep: &DefectReport) -> CheckResult {
    let verdict = match rep.prediction_confirmed {
        Some(true) => format!("hypotheses hold, δ_2 = {} > 0: PASS", rep.secant2.defect),
        Some(false) => "hypotheses hold but δ_2 = 0: FAIL".to_string(),
        None => format!(
            "hypotheses fail (special {}, 2-osculating regular {}), δ_2 = {}: no prediction",
            rep.speciality.special, rep.osc2.regular, rep.secant2.defect
        ),
    };
    CheckResult {
        check: "pipeline".into(),
        summary: verdict,
        consistent: rep.consistency.all(),
        data: to_value(rep),
    }
}

/// Runs `audit-theorem` and returns the report.
pub fn audit_theorem(args: &AuditArgs) -> Result<Report> {
    let cfg = PipelineConfig {
        trials: args.trials,
        samples: args.samples,
        seed: args.seed,
        ..PipelineConfig::default()
    };
    let charts: Vec<Chart> = if args.variety == "catalog" {
        catalog()
            .into_iter()
            .filter(|e| e.supports_length3())
            .map(|e| e.build())
            .collect::<Result<_>>()?
    } else {
        vec![load_variety(&args.variety)?]
    };
    let sections = charts
        .iter()
        .map(|c| {
            Ok(Section {
                chart: ChartInfo::of(c),
                results: vec![pipeline_result(&defect_pipeline(c, &cfg)?)],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let config = AnalysisConfig {
        variety: args.variety.clone(),
        checks: vec!["pipeline".into()],
        trials: args.trials,
        samples: args.samples,
        seed: args.seed,
        format: args.format,
        project: None,
    };
    Ok(Report::new("audit-theorem", config, sections))
}

/// Renders the catalog listing.
pub fn catalog_list(args: &CatalogArgs) -> Result<String> {
    let entries = match &args.id {
        Some(id) => vec![find_entry(id)?],
        None => catalog(),
    };
    Ok(match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&entries).expect("catalog serializes");
            s.push('\n');
            s
        }
        Format::Markdown => {
            let mut s = String::from("| id | n | r | known defects | description |\n|---|---|---|---|---|\n");
            for e in &entries {
                let defects: Vec<String> = e
                    .known_defects
                    .iter()
                    .map(|d| format!("δ_{} = {}", d.k, d.defect))
                    .collect();
                s += &format!(
                    "| {} | {} | {} | {} | {} |\n",
                    e.id,
                    e.n,
                    e.r,
                    defects.join(", "),
                    e.description
                );
            }
            s
        }
    })
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and errors to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => analyze(&AnalysisConfig::from(a)).map(|r| (r.render(a.format), r.consistent)),
        Command::AuditTheorem(a) => audit_theorem(a).map(|r| (r.render(a.format), r.consistent)),
        Command::CatalogList(a) => catalog_list(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, consistent)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if consistent {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
