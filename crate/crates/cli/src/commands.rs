//! Command implementations; each returns the JSON report to print.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use srg_core::classes::{dys_preflight, Enlargement, OperatorClassSpec};
use srg_core::rates::{Comparison, PriorConstants};
use srg_core::search::{search, search_regions_for, SearchDomain};
use srg_core::verify::{verify_claim, Claim, VerificationReport, VerifyOptions};
use srg_core::{DysParams, PreflightReport, SearchResult, SCHEMA_VERSION};

use crate::error::CliError;
use crate::factor::{compare_classes, select_factor, Candidate, Factor, SkippedPairing, TheoremChoice};
use crate::plot::{render_svg, symbol_cloud, Cloud, Figure, Outline};
use crate::problem::ProblemSpecFile;
use crate::{Cli, Command, RhoArg, TheoremArg};

/// Every report carries the schema version and the command that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorBody {
    #[serde(flatten)]
    pub factor: Factor,
    /// Every theorem/role tried; the reported factor is the smallest applicable one.
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxmodBody {
    pub params: DysParams,
    pub preflight: PreflightReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlargement: Option<Enlargement>,
    /// The class searched for C (C′ when enlarged).
    pub c_class: OperatorClassSpec,
    pub result: SearchResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyBody {
    /// `"auto"` when the claim came from the closed-form factor, else `"given"`.
    pub claim_source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<Factor>,
    pub report: VerificationReport,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareBody {
    pub constants: PriorConstants,
    pub rows: Vec<Comparison>,
    pub skipped: Vec<SkippedPairing>,
    pub min_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleInfo {
    pub center: f64,
    pub radius: f64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotBody {
    pub out: String,
    pub eps: f64,
    /// Symbol values over the class regions (dark cloud).
    pub cloud_points: usize,
    /// Largest `|ζ − s|` in the dark cloud.
    pub cloud_max_modulus: f64,
    /// Symbol values with C replaced by C′ (light cloud), when enlarged.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlarged_cloud_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enlarged_cloud_max_modulus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle: Option<CircleInfo>,
}

pub struct Output {
    pub json: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

pub fn to_json<T: Serialize>(value: &T, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(value).expect("reports serialize");
    }
    let pad = vec![b' '; indent];
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("reports serialize");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn envelope<T: Serialize>(command: &str, body: T, indent: usize) -> String {
    to_json(&Envelope { schema_version: SCHEMA_VERSION, command: command.to_string(), body }, indent)
}

fn choice(t: TheoremArg) -> TheoremChoice {
    match t {
        TheoremArg::Thm31 => TheoremChoice::Thm31,
        TheoremArg::Thm32 => TheoremChoice::Thm32,
        TheoremArg::Thm33 => TheoremChoice::Thm33,
        TheoremArg::Thm41 => TheoremChoice::Thm41,
        TheoremArg::Auto => TheoremChoice::Auto,
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let indent = cli.json_indent;
    let ok = |json| Output { json, warnings: Vec::new(), exit_code: 0 };
    match &cli.command {
        Command::Factor { spec, theorem } => {
            let spec = ProblemSpecFile::load(spec)?;
            let (factor, candidates) = select_factor(choice(*theorem), &spec.classes, &spec.params)?;
            Ok(ok(envelope("factor", FactorBody { factor, candidates }, indent)))
        }
        Command::Maxmod { spec, eps, shift } => {
            let spec = ProblemSpecFile::load(spec)?;
            Ok(ok(envelope("maxmod", maxmod(&spec, *eps, *shift)?, indent)))
        }
        Command::Verify { spec, rho, trials, seed } => {
            let spec = ProblemSpecFile::load(spec)?;
            let body = verify(&spec, *rho, *trials, *seed)?;
            let exit_code = if body.report.passed { 0 } else { 1 };
            let warnings = body.warnings.clone();
            Ok(Output { json: envelope("verify", body, indent), warnings, exit_code })
        }
        Command::Compare { spec } => {
            let spec = ProblemSpecFile::load(spec)?;
            let (constants, rows, skipped) = compare_classes(&spec.classes, &spec.params)?;
            let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
            Ok(ok(envelope("compare", CompareBody { constants, rows, skipped, min_margin }, indent)))
        }
        Command::Plot { spec, out, eps, rho } => {
            let spec = ProblemSpecFile::load(spec)?;
            let (svg, body) = plot(&spec, out, *eps, *rho)?;
            std::fs::write(out, svg).map_err(|source| CliError::Io { path: out.clone(), source })?;
            Ok(ok(envelope("plot", body, indent)))
        }
    }
}

pub fn maxmod(spec: &ProblemSpecFile, eps: Option<f64>, shift: Option<f64>) -> Result<MaxmodBody, CliError> {
    let mut params = spec.params;
    if let Some(s) = shift {
        params = params.with_shift(s)?;
    }
    let mut config = spec.search;
    if let Some(e) = eps {
        config.eps_grid = e;
        config.validate()?;
    }
    let c = spec.effective_c()?;
    let preflight = dys_preflight(&spec.classes.a, &spec.classes.b, &c, &params)?;
    let result = search(&spec.classes.a, &spec.classes.b, &c, &params, &config)?;
    Ok(MaxmodBody { params, preflight, enlargement: spec.enlargement, c_class: c, result })
}

pub fn verify(spec: &ProblemSpecFile, rho: RhoArg, trials: usize, seed: u64) -> Result<VerifyBody, CliError> {
    let (claim, factor, source) = match rho {
        RhoArg::Value(rho) => (Claim::Contraction { rho }, None, "given"),
        RhoArg::Auto => {
            let (factor, _) = select_factor(TheoremChoice::Auto, &spec.classes, &spec.params)?;
            let claim = match &factor {
                Factor::Contraction(r) => Claim::Contraction { rho: r.rho },
                Factor::Averagedness(r) => Claim::Averagedness { theta: r.theta },
            };
            (claim, Some(factor), "auto")
        }
        RhoArg::None => return Err(CliError::Parse("verify needs --rho <value|auto>".into())),
    };
    let mut warnings = Vec::new();
    if trials == 0 {
        warnings.push("no trials were run; the claim passes vacuously".to_string());
    }
    let c = spec.effective_c()?;
    let opts = VerifyOptions { n_trials: trials, seed, ..VerifyOptions::default() };
    let report = verify_claim(&spec.classes.a, &spec.classes.b, &c, &spec.params, claim, &opts)?;
    Ok(VerifyBody { claim_source: source.to_string(), factor, report, warnings })
}

pub fn plot(spec: &ProblemSpecFile, out: &Path, eps: f64, rho: RhoArg) -> Result<(String, PlotBody), CliError> {
    if !(eps > 0.0) {
        return Err(CliError::Parse(format!("eps must be positive, got {eps}")));
    }
    let p = &spec.params;
    let (a, b, c) = (&spec.classes.a, &spec.classes.b, &spec.classes.c);
    let [ra, rb, rc] = search_regions_for(a, b, c, p.alpha)?;
    let domain = SearchDomain::new([&ra, &rb, &rc])?;
    let mut clouds = Vec::new();
    let mut outlines = vec![
        Outline { label: "srg(J_aA)".into(), color: "#1f77b4", pieces: domain.pieces[0].clone() },
        Outline { label: "srg(J_aB)".into(), color: "#2ca02c", pieces: domain.pieces[1].clone() },
        Outline { label: "srg(C)".into(), color: "#d62728", pieces: domain.pieces[2].clone() },
    ];

    let max_modulus = |pts: &[Complex64]| pts.iter().map(|z| (z - p.s).norm()).fold(0.0, f64::max);
    let mut enlarged_cloud_points = None;
    let mut enlarged_cloud_max_modulus = None;
    if spec.enlargement.is_some() {
        let c_enlarged = spec.effective_c()?.srg();
        let wide = SearchDomain::new([&ra, &rb, &c_enlarged])?;
        let points = symbol_cloud(&wide, p, eps)?;
        enlarged_cloud_points = Some(points.len());
        enlarged_cloud_max_modulus = Some(max_modulus(&points));
        clouds.push(Cloud { label: "symbol image with C'".into(), color: "#c8c8c8", points });
        outlines.push(Outline { label: "srg(C')".into(), color: "#ff7f0e", pieces: wide.pieces[2].clone() });
    }
    let points = symbol_cloud(&domain, p, eps)?;
    let cloud_points = points.len();
    let cloud_max_modulus = max_modulus(&points);
    clouds.push(Cloud { label: "symbol image".into(), color: "#505050", points });

    let circle = match rho {
        RhoArg::None => None,
        RhoArg::Value(r) => Some(CircleInfo { center: p.s, radius: r, source: "given".into() }),
        RhoArg::Auto => match select_factor(TheoremChoice::Auto, &spec.classes, p) {
            Ok((Factor::Contraction(r), _)) => {
                Some(CircleInfo { center: p.s, radius: r.rho, source: format!("theorem {}", r.theorem.label()) })
            }
            Ok((Factor::Averagedness(r), _)) => Some(CircleInfo {
                center: 1.0 - r.theta,
                radius: r.theta,
                source: format!("theorem {}", r.theorem.label()),
            }),
            Err(_) => None,
        },
    };
    let fig = Figure {
        title: format!("DYS symbol image, alpha = {}, lambda = {}", p.alpha, p.lambda),
        clouds,
        outlines,
        circle: circle
            .as_ref()
            .map(|c| (Complex64::new(c.center, 0.0), c.radius, format!("|z - {}| = {:.10}", c.center, c.radius))),
    };
    let body = PlotBody {
        out: out.display().to_string(),
        eps,
        cloud_points,
        cloud_max_modulus,
        enlarged_cloud_points,
        enlarged_cloud_max_modulus,
        circle,
    };
    Ok((render_svg(&fig), body))
}
