//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 unknown or invalid model, 4 unsupported backend, 5 invalid bound inputs.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    bounds_clifford, bounds_general, check_cd_inequality, random_test_functions, rayleigh_ritz, BoundsResult,
};
use crate::error::Error;
use crate::foliation::{
    check_curvature_constancy, check_einstein, check_foliation_axioms, check_h_type, check_lemma_identities,
    check_oneill, check_parallel_clifford, check_torsion_class, check_vertical_curvature, check_yang_mills,
    detect_quaternionic, ricci_lower_bound, Backend, CheckReport, FoliationModel, QuaternionicType, TorsionClass,
    TOL_CURVATURE,
};
use crate::models::{catalog, load_model_str, model_by_name, model_points};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN_MODEL: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_BAD_BOUNDS: i32 = 5;

/// Checks run by `verify` when none are selected.
pub const DEFAULT_CHECKS: [&str; 9] = [
    "axioms",
    "h-type",
    "torsion-class",
    "yang-mills",
    "lemma-identities",
    "parallel-clifford",
    "einstein",
    "curvature-constancy",
    "cd",
];

/// Checks that may be requested in addition to the defaults.
pub const EXTRA_CHECKS: [&str; 2] = ["oneill", "vertical-curvature"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "htype", version, about = "Verify H-type foliation model spaces and their spectral bounds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Sample points per check.
    #[arg(long, global = true, default_value_t = 64)]
    pub points: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Override every check tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Load the model from a JSON file instead of the catalog.
    #[arg(long, global = true)]
    pub model_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in models.
    Catalog,
    /// Run verification checks on a model.
    Verify {
        model: Option<String>,
        /// Every catalog model whose default metric is H-type.
        #[arg(long)]
        all: bool,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Rayleigh–Ritz spectrum of the sub-Laplacian.
    Spectrum {
        model: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Evaluate the diameter and spectral-gap bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Lower bound for the horizontal Ricci curvature.
        #[arg(long = "K", allow_negative_numbers = true)]
        k: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        kappa: Option<f64>,
        #[arg(long)]
        quaternionic: bool,
    },
    /// Check the curvature-dimension inequality on random polynomials.
    Cd {
        model: Option<String>,
        /// Defaults to the measured lower bound of the horizontal Ricci curvature.
        #[arg(long = "K", allow_negative_numbers = true)]
        k: Option<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 1.0, 10.0])]
        epsilons: Vec<f64>,
    },
    /// Combined JSON report: checks, spectrum and bounds.
    Report {
        models: Vec<String>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

fn model_error(e: Error) -> CliError {
    let code = match e {
        Error::UnknownModel(_) | Error::Schema(_) | Error::InvalidModel(_) => EXIT_UNKNOWN_MODEL,
        Error::UnsupportedBackend(_) => EXIT_UNSUPPORTED,
        _ => EXIT_CHECK_FAILED,
    };
    CliError::new(code, e.to_string())
}

fn resolve_model(global: &GlobalArgs, name: Option<&str>) -> Result<FoliationModel, CliError> {
    if let Some(path) = &global.model_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(EXIT_UNKNOWN_MODEL, format!("cannot read {}: {e}", path.display())))?;
        return load_model_str(&text).map_err(model_error);
    }
    let name = name.ok_or_else(|| CliError::new(EXIT_USAGE, "a model name or --model-file is required"))?;
    model_by_name(name).map_err(model_error)
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub check: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub model: String,
    pub n: usize,
    pub m: usize,
    pub torsion_class: Option<&'static str>,
    pub kappa: Option<f64>,
    pub quaternionic: Option<QuaternionicType>,
    pub reports: Vec<CheckReport>,
    pub skipped: Vec<Skipped>,
    pub all_passed: bool,
}

fn failed_precondition(check: &str, points: usize, tol: f64, e: &Error) -> CheckReport {
    CheckReport::new(check, f64::NAN, tol, points, json!({"error": e.to_string()}))
}

/// Run the selected checks; errors other than unmet preconditions abort.
pub fn verify_model(
    model: &FoliationModel,
    checks: &[String],
    points: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<VerifyOutcome, Error> {
    for c in checks {
        if !DEFAULT_CHECKS.contains(&c.as_str()) && !EXTRA_CHECKS.contains(&c.as_str()) {
            return Err(Error::InvalidArgument(format!("unknown check `{c}`")));
        }
    }
    let want = |name: &str| checks.iter().any(|c| c == name);
    let pts = model_points(model, points, seed);
    let tol_c = tol.unwrap_or(TOL_CURVATURE);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut skip = |check: &str, reason: &str| skipped.push(Skipped { check: check.into(), reason: reason.into() });

    if want("axioms") {
        reports.push(check_foliation_axioms(model, &pts, tol_c)?);
    }
    let h = check_h_type(model, &pts, tol_c)?;
    let h_ok = h.passed();
    if want("h-type") {
        reports.push(h);
    }
    let (class, class_report) = check_torsion_class(model, &pts, tol_c)?;
    if want("torsion-class") {
        reports.push(class_report);
    }
    if want("yang-mills") {
        reports.push(check_yang_mills(model, &pts, tol_c)?);
    }
    let horizontally_parallel = matches!(class, TorsionClass::CompletelyParallel | TorsionClass::HorizontallyParallel);
    if want("lemma-identities") {
        if !h_ok {
            skip("lemma-identities", "the identities are stated for H-type foliations");
        } else if horizontally_parallel {
            reports.extend(check_lemma_identities(model, &pts, tol_c)?);
        } else {
            skip("lemma-identities", "torsion is not horizontally parallel");
        }
    }

    let mut kappa = None;
    let needs_fit = ["parallel-clifford", "curvature-constancy", "vertical-curvature"].iter().any(|c| want(c));
    if needs_fit {
        match check_parallel_clifford(model, &pts, tol_c) {
            Ok((fit, report)) => {
                if report.passed() {
                    kappa = fit.kappa;
                }
                if want("parallel-clifford") {
                    reports.push(report);
                }
            }
            Err(e @ Error::InvalidModel(_)) => {
                if want("parallel-clifford") {
                    reports.push(failed_precondition("parallel-clifford", points, tol_c, &e));
                }
            }
            Err(e) => return Err(e),
        }
    }
    if want("vertical-curvature") {
        match kappa {
            Some(k) => reports.push(check_vertical_curvature(model, k, &pts, tol_c)?),
            None => skip("vertical-curvature", "no fitted κ (m = 1 or no parallel Clifford structure)"),
        }
    }
    if want("einstein") {
        match check_einstein(model, &pts, tol_c) {
            Ok(r) => reports.push(r),
            Err(Error::NotApplicable(reason)) => skip("einstein", &reason),
            Err(e @ Error::InvalidModel(_)) => reports.push(failed_precondition("einstein", points, tol_c, &e)),
            Err(e) => return Err(e),
        }
    }
    if want("curvature-constancy") {
        match kappa {
            Some(k) if k != 0.0 => reports.push(check_curvature_constancy(model, k, &pts, tol_c)?),
            _ => skip("curvature-constancy", "needs a fitted κ ≠ 0"),
        }
    }
    if want("oneill") {
        reports.push(check_oneill(model, &pts, tol_c)?);
    }
    if want("cd") {
        if !h_ok {
            skip("cd", "the inequality is stated for H-type foliations");
        } else if model.backend() == Backend::Group && model.group_structure().is_none() {
            skip("cd", "no polynomial sub-Laplacian for this model");
        } else {
            let k = ricci_lower_bound(model, &pts)?;
            let fs = random_test_functions(model.ambient_dim(), 3, 8, seed);
            match check_cd_inequality(model, k, &fs, &[0.1, 1.0, 10.0], &pts, tol.unwrap_or(1e-9)) {
                Ok(r) => reports.push(r),
                Err(Error::NotApplicable(reason)) => skip("cd", &reason),
                Err(e @ Error::Precondition(_)) => reports.push(failed_precondition("cd", points, tol_c, &e)),
                Err(e) => return Err(e),
            }
        }
    }

    let quaternionic = match pts.first() {
        Some(p) if model.m() == 3 => Some(detect_quaternionic(model, p, tol_c)?),
        _ => None,
    };
    let all_passed = reports.iter().all(CheckReport::passed);
    Ok(VerifyOutcome {
        model: model.name().to_string(),
        n: model.n(),
        m: model.m(),
        torsion_class: Some(class.label()),
        kappa,
        quaternionic,
        reports,
        skipped,
        all_passed,
    })
}

fn text_table(outcome: &VerifyOutcome) -> String {
    let mut s = format!("model {} (n={}, m={})\n", outcome.model, outcome.n, outcome.m);
    s.push_str(&format!("{:<26} {:<6} {:>12} {:>10}\n", "check", "status", "residual", "tol"));
    for r in &outcome.reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        s.push_str(&format!("{:<26} {:<6} {:>12.3e} {:>10.1e}\n", r.check, status, r.max_residual, r.tolerance));
    }
    for k in &outcome.skipped {
        s.push_str(&format!("{:<26} {:<6} {}\n", k.check, "skip", k.reason));
    }
    if let Some(c) = outcome.torsion_class {
        s.push_str(&format!("torsion class: {c}\n"));
    }
    if let Some(k) = outcome.kappa {
        s.push_str(&format!("kappa: {k:.12}\n"));
    }
    s
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(global: &GlobalArgs, text: &str) -> Result<(), CliError> {
    match &global.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::new(EXIT_CHECK_FAILED, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(|e| CliError::new(EXIT_CHECK_FAILED, e.to_string()))
        }
    }
}

fn cmd_catalog(global: &GlobalArgs) -> Result<i32, CliError> {
    let cat = catalog();
    let text = match global.format {
        Format::Json => to_json(&cat),
        _ => cat.iter().map(|s| s.summary() + "\n").collect(),
    };
    emit(global, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(global: &GlobalArgs, model: Option<&str>, all: bool, checks: &[String]) -> Result<i32, CliError> {
    let checks: Vec<String> =
        if checks.is_empty() { DEFAULT_CHECKS.iter().map(|s| s.to_string()).collect() } else { checks.to_vec() };
    let models: Vec<FoliationModel> = if all {
        catalog().iter().filter(|s| s.normalized).map(|s| s.build().map_err(model_error)).collect::<Result<_, _>>()?
    } else {
        vec![resolve_model(global, model)?]
    };
    let mut outcomes = Vec::new();
    for m in &models {
        let o = verify_model(m, &checks, global.points, global.seed, global.tol)
            .map_err(|e| CliError::new(if matches!(e, Error::InvalidArgument(_)) { EXIT_USAGE } else { EXIT_CHECK_FAILED }, e.to_string()))?;
        outcomes.push(o);
    }
    let text = match global.format {
        Format::Json if outcomes.len() == 1 => to_json(&outcomes[0]),
        Format::Json => to_json(&outcomes),
        _ => outcomes.iter().map(text_table).collect::<Vec<_>>().join("\n"),
    };
    emit(global, &text)?;
    Ok(if outcomes.iter().all(|o| o.all_passed) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Clone, Debug, Serialize)]
struct SpectrumOutput {
    #[serde(flatten)]
    spectrum: crate::analysis::SpectrumResult,
    lambda1: Option<f64>,
    bound: Option<BoundsResult>,
    gap: Option<f64>,
}

/// Bound matching the model's measured structure, if one applies.
fn model_bound(model: &FoliationModel, seed: u64) -> Result<Option<BoundsResult>, Error> {
    let pts = model_points(model, 8, seed);
    if !check_h_type(model, &pts, TOL_CURVATURE)?.passed() {
        return Ok(None);
    }
    if model.m() >= 2 {
        if let Ok((fit, report)) = check_parallel_clifford(model, &pts, TOL_CURVATURE) {
            if let (true, Some(k)) = (report.passed(), fit.kappa) {
                if k > 0.0 {
                    let quaternionic = matches!(
                        pts.first().map(|p| detect_quaternionic(model, p, TOL_CURVATURE)).transpose()?,
                        Some(QuaternionicType::Quaternionic { .. })
                    );
                    return bounds_clifford(model.n(), model.m(), k, quaternionic).map(Some);
                }
            }
        }
    }
    let k = ricci_lower_bound(model, &pts)?;
    Ok(if k > 1e-9 { Some(bounds_general(model.n(), model.m(), k)?) } else { None })
}

fn spectrum_output(model: &FoliationModel, degree: u32, seed: u64) -> Result<SpectrumOutput, Error> {
    let spectrum = rayleigh_ritz(model, degree)?;
    let lambda1 = spectrum.first_nonzero(1e-8);
    let bound = model_bound(model, seed)?;
    let gap = match (lambda1, &bound) {
        (Some(l), Some(b)) => Some(l - b.lambda1_bound).map(|g| if g.abs() < 1e-12 { 0.0 } else { g }),
        _ => None,
    };
    Ok(SpectrumOutput { spectrum, lambda1, bound, gap })
}

fn cmd_spectrum(global: &GlobalArgs, model: Option<&str>, degree: u32) -> Result<i32, CliError> {
    let model = resolve_model(global, model)?;
    let out = spectrum_output(&model, degree, global.seed).map_err(model_error)?;
    let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_string(), |v| format!("{v:.9}"));
    let text = match global.format {
        Format::Json => to_json(&out),
        Format::Csv => out.spectrum.to_csv(),
        Format::Text => {
            let mut s = format!(
                "model {} degree {} basis {} rank {} asymmetry {:.3e} condition {:.3e}\n",
                out.spectrum.model,
                degree,
                out.spectrum.basis_size,
                out.spectrum.rank,
                out.spectrum.asymmetry,
                out.spectrum.gram_condition
            );
            s.push_str(&format!(
                "measured λ₁ = {} vs bound {} (gap {})\n",
                fmt(out.lambda1),
                fmt(out.bound.as_ref().map(|b| b.lambda1_bound)),
                fmt(out.gap)
            ));
            s
        }
    };
    emit(global, &text)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(
    global: &GlobalArgs,
    n: usize,
    m: usize,
    k: Option<f64>,
    kappa: Option<f64>,
    quaternionic: bool,
) -> Result<i32, CliError> {
    let bad = |e: Error| CliError::new(EXIT_BAD_BOUNDS, e.to_string());
    let result = match (k, kappa) {
        (Some(k), None) if !quaternionic => bounds_general(n, m, k).map_err(bad)?,
        (None, Some(kappa)) => bounds_clifford(n, m, kappa, quaternionic).map_err(bad)?,
        _ => return Err(CliError::new(EXIT_BAD_BOUNDS, "give exactly one of --K or --kappa (--quaternionic needs --kappa)")),
    };
    let text = match global.format {
        Format::Json => to_json(&result),
        _ => format!(
            "λ₁ ≥ {:.9}\ndiam ≤ {:.9}\nformula: {}\n",
            result.lambda1_bound, result.diameter_bound, result.formula_used
        ),
    };
    emit(global, &text)?;
    Ok(EXIT_OK)
}

fn cmd_cd(
    global: &GlobalArgs,
    model: Option<&str>,
    k: Option<f64>,
    trials: usize,
    degree: u32,
    epsilons: &[f64],
) -> Result<i32, CliError> {
    let model = resolve_model(global, model)?;
    let pts = model_points(&model, global.points, global.seed);
    let k = match k {
        Some(k) => k,
        None => ricci_lower_bound(&model, &pts).map_err(model_error)?,
    };
    let fs = random_test_functions(model.ambient_dim(), degree, trials, global.seed);
    let report = match check_cd_inequality(&model, k, &fs, epsilons, &pts, global.tol.unwrap_or(1e-9)) {
        Ok(r) => r,
        Err(e @ Error::Precondition(_)) => failed_precondition("cd", pts.len(), global.tol.unwrap_or(1e-9), &e),
        Err(e @ Error::InvalidArgument(_)) => return Err(CliError::new(EXIT_USAGE, e.to_string())),
        Err(e) => return Err(model_error(e)),
    };
    let text = match global.format {
        Format::Json => to_json(&report),
        _ => format!(
            "cd {} K={} min margin {:.3e}: {}\n",
            model.name(),
            k,
            report.detail_f64("min_margin").unwrap_or(f64::NAN),
            if report.passed() { "pass" } else { "FAIL" }
        ),
    };
    emit(global, &text)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_report(global: &GlobalArgs, names: &[String], degree: u32) -> Result<i32, CliError> {
    let models: Vec<FoliationModel> = if global.model_file.is_some() {
        vec![resolve_model(global, None)?]
    } else if names.is_empty() {
        catalog().iter().filter(|s| s.normalized).map(|s| s.build().map_err(model_error)).collect::<Result<_, _>>()?
    } else {
        names.iter().map(|n| model_by_name(n).map_err(model_error)).collect::<Result<_, _>>()?
    };
    let checks: Vec<String> = DEFAULT_CHECKS.iter().map(|s| s.to_string()).collect();
    let mut entries = Vec::new();
    let mut ok = true;
    for model in &models {
        let verify = verify_model(model, &checks, global.points, global.seed, global.tol)
            .map_err(|e| CliError::new(EXIT_CHECK_FAILED, e.to_string()))?;
        ok &= verify.all_passed;
        let spectrum = if model.backend() == Backend::Sphere {
            Some(spectrum_output(model, degree, global.seed).map_err(model_error)?)
        } else {
            None
        };
        entries.push(json!({"verify": verify, "spectrum": spectrum}));
    }
    let doc: Value = json!({"points": global.points, "seed": global.seed, "models": entries});
    emit(global, &to_json(&doc))?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    if g.points == 0 {
        return Err(CliError::new(EXIT_USAGE, "--points must be positive"));
    }
    match &cli.command {
        Command::Catalog => cmd_catalog(g),
        Command::Verify { model, all, checks } => cmd_verify(g, model.as_deref(), *all, checks),
        Command::Spectrum { model, degree } => cmd_spectrum(g, model.as_deref(), *degree),
        Command::Bounds { n, m, k, kappa, quaternionic } => cmd_bounds(g, *n, *m, *k, *kappa, *quaternionic),
        Command::Cd { model, k, trials, degree, epsilons } => {
            cmd_cd(g, model.as_deref(), *k, *trials, *degree, epsilons)
        }
        Command::Report { models, degree } => cmd_report(g, models, *degree),
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run(["htype", "catalog", "--bogus"]), EXIT_USAGE);
    }

    #[test]
    fn unknown_model_exit_code() {
        assert_eq!(run(["htype", "verify", "no-such-model", "--points", "2"]), EXIT_UNKNOWN_MODEL);
    }

    #[test]
    fn bounds_exit_codes() {
        let out = std::env::temp_dir().join("htype-cli-bounds.json");
        let out = out.to_str().unwrap();
        assert_eq!(run(["htype", "bounds", "--n", "4", "--m", "3", "--kappa", "2", "--quaternionic", "--out", out]), EXIT_OK);
        assert_eq!(run(["htype", "bounds", "--n", "4", "--m", "3", "--K", "0"]), EXIT_BAD_BOUNDS);
        assert_eq!(run(["htype", "bounds", "--n", "4", "--m", "3"]), EXIT_BAD_BOUNDS);
    }

    #[test]
    fn spectrum_on_group_is_unsupported() {
        assert_eq!(run(["htype", "spectrum", "heisenberg"]), EXIT_UNSUPPORTED);
    }
}
