//! Run reports: the JSON document every command produces, and its text
//! rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ambiguity::AmbiguityReport;
use crate::rational::Rational;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub source: String,
    pub events: Vec<EventRecord>,
    pub sampling: Option<Sampling>,
    pub analysis: Option<Analysis>,
    /// The problem file itself, for commands that ship their own input.
    pub problem_text: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, source: &str) -> Self {
        RunReport {
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            source: source.to_string(),
            events: Vec::new(),
            sampling: None,
            analysis: None,
            problem_text: None,
        }
    }

    pub fn event(&self, name: &str) -> Option<&EventRecord> {
        self.events.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub name: String,
    pub expression: String,
    pub exact: Option<ExactRecord>,
    pub estimate: Option<EstimateRecord>,
    pub verdict: Option<VerdictRecord>,
}

impl EventRecord {
    pub fn new(name: &str, expression: String) -> Self {
        EventRecord { name: name.to_string(), expression, exact: None, estimate: None, verdict: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub probability: Rational,
    pub decimal: String,
    /// Decimal strings so arbitrarily large counts survive any JSON reader.
    pub satisfying_count: String,
    pub space_size: String,
    pub compositional: Rational,
    pub methods_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub hits: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub std_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub p_exact: Rational,
    #[serde(with = "float_or_inf")]
    pub z_score: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteRecord {
    pub event: String,
    pub location: Vec<usize>,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub sites: Vec<SiteRecord>,
    pub readings: Option<AmbiguityReport>,
}

/// Finite floats as JSON numbers, infinities as the strings `"inf"` /
/// `"-inf"` (JSON has no infinity literal).
pub mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

/// Shortest round-trip decimal for a float, spelled the way Python prints
/// floats: scientific below 1e-4 and from 1e16 up, two-digit exponents.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let magnitude = x.abs();
    if magnitude != 0.0 && !(1e-4..1e16).contains(&magnitude) {
        let sci = format!("{x:e}");
        let (mantissa, exp) = sci.split_once('e').expect("LowerExp has an exponent");
        let exp: i32 = exp.parse().expect("integer exponent");
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let plain = format!("{x}");
    if plain.contains('.') {
        plain
    } else {
        format!("{plain}.0")
    }
}

/// Human-readable rendering; carries the same numbers as the JSON.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(text) = &report.problem_text {
        out.push_str(text);
        if !text.ends_with('\n') {
            out.push('\n');
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{} {} ({})", report.command, report.source, report.version);
    if let Some(s) = &report.sampling {
        let _ = writeln!(out, "sampling: seed {} trials {}", s.seed, s.trials);
    }
    for e in &report.events {
        let _ = writeln!(out, "{}: {}", e.name, e.expression);
        if let Some(x) = &e.exact {
            let _ = writeln!(
                out,
                "  exact     {} = {}  ({} of {} outcomes; compositional {}{})",
                x.probability,
                x.decimal,
                x.satisfying_count,
                x.space_size,
                x.compositional,
                if x.methods_agree { ", agrees" } else { ", MISMATCH" }
            );
        }
        if let Some(m) = &e.estimate {
            let _ = writeln!(
                out,
                "  estimate  {} ± {}  ({} of {})",
                format_float(m.p_hat),
                format_float(m.std_err),
                m.hits,
                m.trials
            );
        }
        if let Some(v) = &e.verdict {
            let _ = writeln!(
                out,
                "  check     against {}: z = {} (threshold {}) {}",
                v.p_exact,
                format_float(v.z_score),
                format_float(v.threshold),
                if v.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if let Some(a) = &report.analysis {
        if a.sites.is_empty() {
            let _ = writeln!(out, "no ambiguity sites");
        }
        for s in &a.sites {
            let _ = writeln!(out, "ambiguity site in {} at {:?}: {}", s.event, s.location, s.expression);
        }
        if let Some(r) = &a.readings {
            let _ = writeln!(out, "readings:\n{r}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn python_style_floats() {
        assert_eq!(format_float(8.738956491594981e-05), "8.738956491594981e-05");
        assert_eq!(format_float(0.00011581810052096347), "0.00011581810052096347");
        assert_eq!(format_float(0.9166901), "0.9166901");
        assert_eq!(format_float(1.0), "1.0");
        assert_eq!(format_float(0.0), "0.0");
        assert_eq!(format_float(5.0), "5.0");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(1e20), "1e+20");
    }

    #[test]
    fn floats_survive_json() {
        for x in [0.9166901f64, 8.738956491594981e-05, 1.0 / 3.0, 0.0] {
            let text = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<f64>(&text).unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn infinite_z_round_trips() {
        let v = VerdictRecord { p_exact: Rational::one(), z_score: f64::INFINITY, threshold: 5.0, pass: false };
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"inf\""));
        assert_eq!(serde_json::from_str::<VerdictRecord>(&json).unwrap(), v);
    }
}
