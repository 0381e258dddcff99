//! Commands behind the `eventprob` binary. Each returns a [`RunReport`] and
//! the process exit code, so they can be driven directly from tests.
//!
//! Exit codes: 0 ok, 1 parse or validation error, 2 space too large for
//! enumeration, 3 exact methods disagree, 4 a consistency check failed.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::ambiguity::{detect_ambiguity_sites, dual_readings, explain};
use crate::corpus::{corpus, CORPUS_FORK_ATOMS, CORPUS_TEXT};
use crate::decimal::to_repeating_decimal;
use crate::dsl::{parse_atom_list, parse_problem_named, render_diagnostics, ProblemSet};
use crate::error::{AmbiguityError, ExactError, McError};
use crate::exact::{prob_compositional_with_cap, prob_enumerate_with_cap, ExactResult, DEFAULT_ENUMERATION_CAP};
use crate::mc::{consistency_check, estimate, McConfig, DEFAULT_BATCH_SIZE, DEFAULT_Z_THRESHOLD};
use crate::rational::Rational;
use crate::report::{
    render_text, Analysis, EstimateRecord, EventRecord, ExactRecord, RunReport, Sampling, SiteRecord, VerdictRecord,
};

pub const DEFAULT_TRIALS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub format: Format,
    pub max_enumeration: u64,
    pub trials: u64,
    pub seed: u64,
    pub z: f64,
    pub workers: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            format: Format::Text,
            max_enumeration: DEFAULT_ENUMERATION_CAP,
            trials: DEFAULT_TRIALS,
            seed: 0,
            z: DEFAULT_Z_THRESHOLD,
            workers: 0,
        }
    }
}

impl Settings {
    fn mc_config(&self) -> McConfig {
        McConfig { trials: self.trials, seed: self.seed, batch_size: DEFAULT_BATCH_SIZE, workers: self.workers }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    SpaceTooLarge(String),
    #[error("internal error: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::SpaceTooLarge(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::SpaceTooLarge { .. } => CliError::SpaceTooLarge(format!(
                "{e} (raise --max-enumeration, or run `simulate`)"
            )),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> Self {
        match e {
            McError::BadConfig => CliError::Usage(e.to_string()),
            McError::Invalid { .. } => CliError::Parse(e.to_string()),
        }
    }
}

impl From<AmbiguityError> for CliError {
    fn from(e: AmbiguityError) -> Self {
        match e {
            AmbiguityError::Exact(inner) => inner.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub report: RunReport,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(report: RunReport) -> Self {
        CommandOutput { report, exit_code: 0 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = self.report.to_json();
                s.push('\n');
                s
            }
            Format::Text => render_text(&self.report),
        }
    }
}

pub fn parse_source(text: &str, source_name: &str) -> Result<ProblemSet, CliError> {
    parse_problem_named(text, source_name).map_err(|d| CliError::Parse(render_diagnostics(source_name, &d)))
}

pub fn load_problem(path: &Path) -> Result<ProblemSet, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {name}: {e}")))?;
    parse_source(&text, &name)
}

/// Both exact routes must agree; a disagreement is a bug, not a result.
pub fn reconcile(name: &str, enumerated: &ExactResult, compositional: &ExactResult) -> Result<ExactRecord, CliError> {
    let record = ExactRecord {
        probability: enumerated.probability.clone(),
        decimal: to_repeating_decimal(&enumerated.probability),
        satisfying_count: enumerated.satisfying_count.as_ref().map(ToString::to_string).unwrap_or_default(),
        space_size: enumerated.space_size.to_string(),
        compositional: compositional.probability.clone(),
        methods_agree: enumerated.probability == compositional.probability,
    };
    if !record.methods_agree {
        return Err(CliError::Mismatch(format!(
            "event `{name}`: enumeration gives {} but compositional rules give {}",
            record.probability, record.compositional
        )));
    }
    Ok(record)
}

fn exact_records(problem: &ProblemSet, settings: &Settings) -> Result<Vec<EventRecord>, CliError> {
    problem
        .events
        .iter()
        .map(|(name, expr)| {
            let enumerated = prob_enumerate_with_cap(&problem.space, expr, settings.max_enumeration)?;
            let compositional = prob_compositional_with_cap(&problem.space, expr, settings.max_enumeration)?;
            let mut record = EventRecord::new(name, expr.to_string());
            record.exact = Some(reconcile(name, &enumerated, &compositional)?);
            Ok(record)
        })
        .collect()
}

pub fn cmd_eval(problem: &ProblemSet, settings: &Settings) -> Result<CommandOutput, CliError> {
    let mut report = RunReport::new("eval", &problem.source_name);
    report.events = exact_records(problem, settings)?;
    Ok(CommandOutput::ok(report))
}

pub fn cmd_simulate(problem: &ProblemSet, settings: &Settings) -> Result<CommandOutput, CliError> {
    let mut report = RunReport::new("simulate", &problem.source_name);
    let config = settings.mc_config();
    let estimates = estimate(&problem.space, &problem.events, &config)?;
    report.sampling = Some(Sampling { seed: config.seed, trials: config.trials });
    report.events = problem
        .events
        .iter()
        .zip(estimates)
        .map(|((name, expr), est)| {
            let mut record = EventRecord::new(name, expr.to_string());
            record.estimate = Some(EstimateRecord { hits: est.hits, trials: est.trials, p_hat: est.p_hat, std_err: est.std_err });
            record
        })
        .collect();
    Ok(CommandOutput::ok(report))
}

/// Exact values, one shared Monte Carlo pass and a z-test per event.
///
/// `assumed_exact` replaces the computed exact value of the named events
/// before testing; it exists to show that a wrong closed form is caught.
pub fn cmd_check(
    problem: &ProblemSet,
    settings: &Settings,
    assumed_exact: &BTreeMap<String, Rational>,
) -> Result<CommandOutput, CliError> {
    if let Some(unknown) = assumed_exact.keys().find(|k| problem.event(k).is_none()) {
        return Err(CliError::Usage(format!("no event named `{unknown}`")));
    }
    let mut report = RunReport::new("check", &problem.source_name);
    let mut events = exact_records(problem, settings)?;
    let config = settings.mc_config();
    let estimates = estimate(&problem.space, &problem.events, &config)?;
    report.sampling = Some(Sampling { seed: config.seed, trials: config.trials });

    let mut all_pass = true;
    for (record, est) in events.iter_mut().zip(&estimates) {
        let computed = &record.exact.as_ref().expect("exact record present").probability;
        let target = assumed_exact.get(&record.name).unwrap_or(computed);
        let verdict = consistency_check(est, target, settings.z);
        all_pass &= verdict.pass;
        record.estimate = Some(EstimateRecord { hits: est.hits, trials: est.trials, p_hat: est.p_hat, std_err: est.std_err });
        record.verdict = Some(VerdictRecord {
            p_exact: verdict.p_exact,
            z_score: verdict.z_score,
            threshold: verdict.threshold,
            pass: verdict.pass,
        });
    }
    report.events = events;
    Ok(CommandOutput { report, exit_code: if all_pass { 0 } else { 4 } })
}

/// What `analyze` looks at: sites in one named event, dual readings of an
/// atom list, or both.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeTarget {
    pub event: Option<String>,
    pub atoms: Option<String>,
}

pub fn cmd_analyze(problem: &ProblemSet, target: &AnalyzeTarget) -> Result<CommandOutput, CliError> {
    if target.event.is_none() && target.atoms.is_none() {
        return Err(CliError::Usage("analyze needs --event NAME or --atoms SPEC".into()));
    }
    let mut report = RunReport::new("analyze", &problem.source_name);
    let mut analysis = Analysis { sites: Vec::new(), readings: None };
    if let Some(name) = &target.event {
        let expr = problem
            .event(name)
            .ok_or_else(|| CliError::Parse(format!("no event named `{name}` in {}", problem.source_name)))?;
        analysis.sites = sites_of(name, expr);
        report.events.push(EventRecord::new(name, expr.to_string()));
    }
    if let Some(spec) = &target.atoms {
        analysis.readings = Some(readings_of(problem, spec)?);
    }
    report.analysis = Some(analysis);
    Ok(CommandOutput::ok(report))
}

fn sites_of(name: &str, expr: &crate::model::EventExpr) -> Vec<SiteRecord> {
    detect_ambiguity_sites(expr)
        .into_iter()
        .map(|s| SiteRecord { event: name.to_string(), location: s.location, expression: s.sub_expression.to_string() })
        .collect()
}

fn readings_of(problem: &ProblemSet, spec: &str) -> Result<crate::ambiguity::AmbiguityReport, CliError> {
    let atoms = parse_atom_list(spec, &problem.space)
        .map_err(|d| CliError::Parse(render_diagnostics("--atoms", &d)))?;
    Ok(explain(&dual_readings(&problem.space, &atoms)?))
}

/// Checks the built-in corpus with `settings` and analyzes its
/// "not born in May" fork. The corpus text is part of the report.
pub fn cmd_corpus(settings: &Settings) -> Result<CommandOutput, CliError> {
    let problem = corpus();
    let mut out = cmd_check(&problem, settings, &BTreeMap::new())?;
    out.report.command = "corpus".into();
    out.report.problem_text = Some(CORPUS_TEXT.to_string());
    let sites = problem.events.iter().flat_map(|(name, expr)| sites_of(name, expr)).collect();
    out.report.analysis = Some(Analysis { sites, readings: Some(readings_of(&problem, CORPUS_FORK_ATOMS)?) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn quick() -> Settings {
        Settings { trials: 20_000, ..Settings::default() }
    }

    #[test]
    fn eval_reports_both_methods() {
        let out = cmd_eval(&corpus(), &Settings::default()).unwrap();
        let p1 = out.report.event("p1").unwrap().exact.as_ref().unwrap();
        assert_eq!(p1.probability, Rational::frac(11, 12));
        assert_eq!(p1.decimal, "0.91(6)");
        assert_eq!(p1.satisfying_count, "132");
        assert!(p1.methods_agree);
    }

    #[test]
    fn eval_true_event() {
        let p = parse_source("space person[1] uniform(12)\nevent t: true", "t").unwrap();
        let out = cmd_eval(&p, &Settings::default()).unwrap();
        assert_eq!(out.report.events[0].exact.as_ref().unwrap().probability.to_string(), "1/1");
    }

    #[test]
    fn mismatch_is_exit_three() {
        let space = crate::model::SampleSpace::uniform("x", 1, 2).unwrap();
        let a = ExactResult {
            probability: Rational::frac(1, 2),
            method: crate::exact::Method::Enumeration,
            satisfying_count: Some(BigUint::from(1u32)),
            space_size: space.total_size(),
        };
        let b = ExactResult { probability: Rational::frac(1, 3), method: crate::exact::Method::Compositional, ..a.clone() };
        let err = reconcile("e", &a, &b).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(reconcile("e", &a, &a).is_ok());
    }

    #[test]
    fn too_large_is_exit_two_and_names_cap() {
        let p = parse_source("space person[8] uniform(12)\nevent e: person[0] == 1", "big").unwrap();
        let err = cmd_eval(&p, &Settings::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("10000000"), "{err}");
    }

    #[test]
    fn parse_errors_are_exit_one() {
        let err = parse_source("event p: person[0] == 5", "f.prob").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().starts_with("f.prob:1:10: error: unknown family"), "{err}");
    }

    #[test]
    fn check_detects_planted_fallacy() {
        let ok = cmd_check(&corpus(), &quick(), &BTreeMap::new()).unwrap();
        assert_eq!(ok.exit_code, 0);
        let planted = BTreeMap::from([("p2".to_string(), Rational::frac(11, 12))]);
        let bad = cmd_check(&corpus(), &quick(), &planted).unwrap();
        assert_eq!(bad.exit_code, 4);
        assert!(!bad.report.event("p2").unwrap().verdict.as_ref().unwrap().pass);
        let unknown = BTreeMap::from([("nope".to_string(), Rational::one())]);
        assert_eq!(cmd_check(&corpus(), &quick(), &unknown).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn single_trial_simulation() {
        let s = Settings { trials: 1, ..Settings::default() };
        let out = cmd_simulate(&corpus(), &s).unwrap();
        for e in &out.report.events {
            let m = e.estimate.as_ref().unwrap();
            assert!(m.p_hat == 0.0 || m.p_hat == 1.0);
            assert_eq!(m.std_err, 0.0);
        }
    }

    #[test]
    fn analyze_targets() {
        let c = corpus();
        let out = cmd_analyze(&c, &AnalyzeTarget { event: Some("p3".into()), atoms: None }).unwrap();
        assert!(out.report.analysis.as_ref().unwrap().sites.is_empty());
        assert!(render_text(&out.report).contains("no ambiguity sites"));

        let out = cmd_analyze(&c, &AnalyzeTarget { event: Some("p2".into()), atoms: None }).unwrap();
        assert_eq!(out.report.analysis.as_ref().unwrap().sites.len(), 1);

        let err = cmd_analyze(&c, &AnalyzeTarget { event: Some("p9".into()), atoms: None }).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert_eq!(cmd_analyze(&c, &AnalyzeTarget::default()).unwrap_err().exit_code(), 1);

        let out = cmd_analyze(&c, &AnalyzeTarget { event: None, atoms: Some("person[0]==person[1]".into()) }).unwrap();
        let r = out.report.analysis.unwrap().readings.unwrap();
        assert_eq!(r.not_both.probability, Rational::frac(11, 12));
        assert_eq!(r.neither.probability, Rational::frac(11, 12));
        assert!(r.divergence.is_zero());
    }

    #[test]
    fn corpus_command_includes_text_and_fork() {
        let out = cmd_corpus(&quick()).unwrap();
        assert_eq!(out.exit_code, 0);
        let text = out.render(Format::Text);
        assert!(text.starts_with("# Two randomly chosen people"));
        assert!(text.contains("143/144 = 0.9930(5)"));
        assert!(text.contains("121/144 = 0.8402(7)"));
        let sites = &out.report.analysis.as_ref().unwrap().sites;
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].event, "p2");
    }
}
