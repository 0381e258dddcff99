//! Probabilities of boolean events over independent uniform categorical
//! draws, computed three ways: by exhaustive enumeration, by composing
//! closed-form probability rules, and by seeded Monte Carlo with standard
//! errors. Also builds the "not both" and "neither" readings of a negated
//! condition and measures how far apart they are.
//!
//! ```
//! use eventprob::{dsl, exact, decimal};
//!
//! let problem = dsl::parse_problem(
//!     "space person[2] uniform(12)\n\
//!      event p3: person[0] != may and person[1] != may",
//! ).unwrap();
//! let (_, neither) = &problem.events[0];
//! let p = exact::prob_enumerate(&problem.space, neither).unwrap().probability;
//! assert_eq!(p.to_string(), "121/144");
//! assert_eq!(decimal::to_repeating_decimal(&p), "0.8402(7)");
//! ```

pub mod ambiguity;
pub mod cli;
pub mod corpus;
pub mod decimal;
pub mod dsl;
pub mod error;
pub mod exact;
pub mod mc;
pub mod model;
pub mod rational;
pub mod report;

pub use ambiguity::{detect_ambiguity_sites, dual_readings, explain, AmbiguityReport, AmbiguitySite, ReadingPair};
pub use decimal::{parse_repeating_decimal, to_repeating_decimal};
pub use dsl::{parse_problem, pretty_print, ParseDiagnostic, ProblemSet, SourceSpan};
pub use error::{AmbiguityError, ExactError, McError, ModelError, RationalError};
pub use exact::{atom_probability, binomial_term, prob_compositional, prob_enumerate, ExactResult, Method};
pub use mc::{consistency_check, estimate, sample_outcome, std_error, ConsistencyVerdict, McConfig, McEstimate};
pub use model::{
    complement, evaluate, free_vars, to_nnf, validate, Atom, CategoricalFamily, Cmp, EventExpr, Operand, Outcome,
    SampleSpace, VarRef,
};
pub use rational::Rational;
pub use report::RunReport;
