//! The two ways to read a negated compound condition.
//!
//! "The two were not born in May" can mean *not both* (`not (a and b)`) or
//! *neither* (`not a and not b`). Given the atoms of such a condition this
//! module builds both readings, computes their exact probabilities and how
//! far apart they are. It never picks a winner.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decimal::to_repeating_decimal;
use crate::dsl::pretty_print;
use crate::error::AmbiguityError;
use crate::exact::prob_compositional;
use crate::model::{EventExpr, SampleSpace};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingPair {
    /// "Not both": `not (a1 and a2 ...)`.
    pub loose_reading: EventExpr,
    /// "Neither": `not a1 and not a2 ...`.
    pub strict_reading: EventExpr,
    pub p_loose: Rational,
    pub p_strict: Rational,
    /// `p_loose - p_strict`; never negative since the strict reading implies
    /// the loose one.
    pub divergence: Rational,
    pub ambiguous: bool,
}

/// Builds both readings of the negation of `atoms`. A single atom has only
/// one reading, `not atom`.
pub fn dual_readings(space: &SampleSpace, atoms: &[EventExpr]) -> Result<ReadingPair, AmbiguityError> {
    if atoms.is_empty() {
        return Err(AmbiguityError::EmptyAtoms);
    }
    if let Some(bad) = atoms.iter().find(|a| !a.is_atom()) {
        return Err(AmbiguityError::NotAnAtom(pretty_print(bad)));
    }
    let (loose, strict) = match atoms {
        [single] => (EventExpr::not(single.clone()), EventExpr::not(single.clone())),
        _ => (
            EventExpr::not(EventExpr::And(atoms.to_vec())),
            EventExpr::And(atoms.iter().cloned().map(EventExpr::not).collect()),
        ),
    };
    let p_loose = prob_compositional(space, &loose)?.probability;
    let p_strict = prob_compositional(space, &strict)?.probability;
    let divergence = &p_loose - &p_strict;
    Ok(ReadingPair {
        ambiguous: !divergence.is_zero(),
        loose_reading: loose,
        strict_reading: strict,
        p_loose,
        p_strict,
        divergence,
    })
}

/// A `not (c1 and ... and cn)` subexpression with `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguitySite {
    /// Child indices from the root; `not` has one child, index 0.
    pub location: Vec<usize>,
    pub sub_expression: EventExpr,
}

/// Every syntactic `not (… and …)` in `expr`, in preorder.
pub fn detect_ambiguity_sites(expr: &EventExpr) -> Vec<AmbiguitySite> {
    let mut sites = Vec::new();
    let mut path = Vec::new();
    walk(expr, &mut path, &mut sites);
    sites
}

fn walk(expr: &EventExpr, path: &mut Vec<usize>, sites: &mut Vec<AmbiguitySite>) {
    match expr {
        EventExpr::Not(child) => {
            if matches!(&**child, EventExpr::And(cs) if cs.len() >= 2) {
                sites.push(AmbiguitySite { location: path.clone(), sub_expression: expr.clone() });
            }
            path.push(0);
            walk(child, path, sites);
            path.pop();
        }
        EventExpr::And(cs) | EventExpr::Or(cs) => {
            for (i, c) in cs.iter().enumerate() {
                path.push(i);
                walk(c, path, sites);
                path.pop();
            }
        }
        EventExpr::True | EventExpr::False | EventExpr::Atom(_) => {}
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingReport {
    pub text: String,
    pub probability: Rational,
    pub decimal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityReport {
    pub not_both: ReadingReport,
    pub neither: ReadingReport,
    pub divergence: Rational,
    pub divergence_decimal: String,
    /// True when both readings denote the same event.
    pub equivalent: bool,
}

pub fn explain(pair: &ReadingPair) -> AmbiguityReport {
    let reading = |e: &EventExpr, p: &Rational| ReadingReport {
        text: pretty_print(e),
        probability: p.clone(),
        decimal: to_repeating_decimal(p),
    };
    AmbiguityReport {
        not_both: reading(&pair.loose_reading, &pair.p_loose),
        neither: reading(&pair.strict_reading, &pair.p_strict),
        divergence: pair.divergence.clone(),
        divergence_decimal: to_repeating_decimal(&pair.divergence),
        equivalent: !pair.ambiguous,
    }
}

impl fmt::Display for AmbiguityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, label: &str, r: &ReadingReport| {
            writeln!(f, "  {label:<9} {}\n            P = {} = {}", r.text, r.probability, r.decimal)
        };
        if self.not_both.text == self.neither.text {
            writeln!(f, "single reading (the two readings coincide):")?;
            line(f, "reading", &self.not_both)?;
        } else {
            line(f, "not both", &self.not_both)?;
            line(f, "neither", &self.neither)?;
        }
        writeln!(f, "  divergence {} = {}", self.divergence, self.divergence_decimal)?;
        if self.equivalent {
            write!(f, "  readings are equivalent: the condition is not ambiguous here")
        } else {
            write!(f, "  readings differ: the condition is ambiguous")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Atom, Cmp, VarRef};

    fn person(i: usize) -> VarRef {
        VarRef::new("person", i)
    }

    fn eq(i: usize, v: u32) -> EventExpr {
        EventExpr::Atom(Atom::var_const(person(i), Cmp::Eq, v))
    }

    fn months() -> SampleSpace {
        SampleSpace::uniform("person", 2, 12).unwrap()
    }

    #[test]
    fn may_atoms_fork() {
        let pair = dual_readings(&months(), &[eq(0, 5), eq(1, 5)]).unwrap();
        assert_eq!(pair.p_loose, Rational::frac(143, 144));
        assert_eq!(pair.p_strict, Rational::frac(121, 144));
        assert_eq!(pair.divergence, Rational::frac(11, 72));
        assert!(pair.ambiguous);
    }

    #[test]
    fn same_month_collapses() {
        let same = EventExpr::Atom(Atom::var_var(person(0), Cmp::Eq, person(1)));
        let pair = dual_readings(&months(), std::slice::from_ref(&same)).unwrap();
        assert_eq!(pair.loose_reading, EventExpr::not(same));
        assert_eq!(pair.loose_reading, pair.strict_reading);
        assert_eq!(pair.p_loose, Rational::frac(11, 12));
        assert!(pair.divergence.is_zero() && !pair.ambiguous);
    }

    #[test]
    fn forced_event_on_trivial_space() {
        let space = SampleSpace::uniform("x", 1, 1).unwrap();
        let a = EventExpr::Atom(Atom::var_const(VarRef::new("x", 0), Cmp::Eq, 1));
        let pair = dual_readings(&space, &[a]).unwrap();
        assert!(pair.p_loose.is_zero() && pair.p_strict.is_zero() && pair.divergence.is_zero());
    }

    #[test]
    fn rejects_empty_and_compound_inputs() {
        assert_eq!(dual_readings(&months(), &[]), Err(AmbiguityError::EmptyAtoms));
        let compound = EventExpr::And(vec![eq(0, 1), eq(1, 1)]);
        assert!(matches!(dual_readings(&months(), &[compound]), Err(AmbiguityError::NotAnAtom(_))));
        assert!(matches!(dual_readings(&months(), &[eq(3, 1)]), Err(AmbiguityError::Exact(_))));
    }

    #[test]
    fn site_detection() {
        let p2 = EventExpr::not(EventExpr::And(vec![eq(0, 5), eq(1, 5)]));
        let sites = detect_ambiguity_sites(&p2);
        assert_eq!(sites.len(), 1);
        assert!(sites[0].location.is_empty());

        let p3 = EventExpr::And(vec![EventExpr::not(eq(0, 5)), EventExpr::not(eq(1, 5))]);
        assert!(detect_ambiguity_sites(&p3).is_empty());

        let double = EventExpr::not(p2.clone());
        let sites = detect_ambiguity_sites(&double);
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].location, vec![0]);
        assert_eq!(sites[0].sub_expression, p2);
        assert_eq!(double.at_path(&sites[0].location), Some(&p2));
    }

    #[test]
    fn report_lists_both_values() {
        let pair = dual_readings(&months(), &[eq(0, 5), eq(1, 5)]).unwrap();
        let text = explain(&pair).to_string();
        assert!(text.contains("143/144 = 0.9930(5)"), "{text}");
        assert!(text.contains("121/144 = 0.8402(7)"), "{text}");
        assert!(text.contains("11/72"));
        assert!(text.contains("ambiguous"));
    }

    #[test]
    fn report_for_collapsed_pair() {
        let same = EventExpr::Atom(Atom::var_var(person(0), Cmp::Eq, person(1)));
        let report = explain(&dual_readings(&months(), &[same]).unwrap());
        assert!(report.equivalent);
        assert!(report.to_string().contains("coincide"));
    }

    #[test]
    fn multi_atom_readings_equivalent_on_cardinality_one() {
        let space = SampleSpace::uniform("x", 2, 1).unwrap();
        let atoms: Vec<EventExpr> =
            (0..2).map(|i| EventExpr::Atom(Atom::var_const(VarRef::new("x", i), Cmp::Neq, 1))).collect();
        let pair = dual_readings(&space, &atoms).unwrap();
        assert_ne!(pair.loose_reading, pair.strict_reading);
        let report = explain(&pair);
        assert!(report.equivalent);
        // confirmed by brute force
        let loose = crate::exact::prob_enumerate(&space, &pair.loose_reading).unwrap().probability;
        let strict = crate::exact::prob_enumerate(&space, &pair.strict_reading).unwrap().probability;
        assert_eq!(loose, strict);
    }
}
