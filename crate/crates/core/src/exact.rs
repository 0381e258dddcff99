//! Exact event probabilities, computed two independent ways.
//!
//! [`prob_enumerate`] walks every outcome of the space and counts. It is the
//! oracle. [`prob_compositional`] uses probability rules instead: the
//! complement rule for `not`, products over independent conjuncts,
//! inclusion–exclusion for `or`, and closed forms for atoms. Conjuncts that
//! share draws are enumerated jointly over just those draws. On every space
//! within the cap both routes must give the same fraction.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ExactError;
use crate::model::{
    for_each_assignment, free_vars, validate, Atom, Cmp, Compiled, EventExpr, Operand, SampleSpace, VarRef,
};
use crate::rational::Rational;

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Spaces at least this large split enumeration across worker threads.
const PARALLEL_THRESHOLD: u64 = 1 << 16;

/// Above this many disjuncts, `or` goes through the complement of a
/// conjunction instead of 2^n inclusion–exclusion terms.
const MAX_INCLUSION_EXCLUSION_TERMS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Compositional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub probability: Rational,
    pub method: Method,
    /// Number of satisfying outcomes; enumeration only.
    pub satisfying_count: Option<BigUint>,
    pub space_size: BigUint,
}

fn check_valid(expr: &EventExpr, space: &SampleSpace) -> Result<(), ExactError> {
    let diagnostics = validate(expr, space);
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(ExactError::Invalid(diagnostics))
    }
}

pub fn prob_enumerate(space: &SampleSpace, expr: &EventExpr) -> Result<ExactResult, ExactError> {
    prob_enumerate_with_cap(space, expr, DEFAULT_ENUMERATION_CAP)
}

/// Counts satisfying outcomes in row-major order over the whole space.
pub fn prob_enumerate_with_cap(space: &SampleSpace, expr: &EventExpr, cap: u64) -> Result<ExactResult, ExactError> {
    check_valid(expr, space)?;
    let size = space.total_size();
    let total = size.to_u64().filter(|&n| n <= cap).ok_or(ExactError::SpaceTooLarge { size: size.clone(), cap })?;
    let compiled = Compiled::for_space(expr, space).expect("validated expression resolves");
    let cards = space.slot_cardinalities();
    let hits = count_satisfying(&compiled, &cards, total);
    let satisfying = BigUint::from(hits);
    Ok(ExactResult {
        probability: Rational::from_counts(&satisfying, &size).expect("space size is positive"),
        method: Method::Enumeration,
        satisfying_count: Some(satisfying),
        space_size: size,
    })
}

fn count_satisfying(compiled: &Compiled, cards: &[u32], total: u64) -> u64 {
    let count_all = |cards: &[u32], prefix: Option<u32>| {
        let mut hits = 0u64;
        let mut buf = Vec::with_capacity(cards.len() + 1);
        for_each_assignment(cards, |rest| {
            buf.clear();
            buf.extend(prefix);
            buf.extend_from_slice(rest);
            hits += compiled.eval(&buf) as u64;
            true
        });
        hits
    };
    match cards.split_first() {
        Some((&first, rest)) if total >= PARALLEL_THRESHOLD => {
            (1..=first).into_par_iter().map(|v| count_all(rest, Some(v))).sum()
        }
        _ => count_all(cards, None),
    }
}

pub fn prob_compositional(space: &SampleSpace, expr: &EventExpr) -> Result<ExactResult, ExactError> {
    prob_compositional_with_cap(space, expr, DEFAULT_ENUMERATION_CAP)
}

/// Rule-based evaluation; `cap` bounds only the joint enumerations needed
/// for conjuncts that share draws.
pub fn prob_compositional_with_cap(space: &SampleSpace, expr: &EventExpr, cap: u64) -> Result<ExactResult, ExactError> {
    check_valid(expr, space)?;
    let probability = Compositional { space, cap }.prob(expr)?;
    Ok(ExactResult { probability, method: Method::Compositional, satisfying_count: None, space_size: space.total_size() })
}

struct Compositional<'a> {
    space: &'a SampleSpace,
    cap: u64,
}

impl Compositional<'_> {
    fn prob(&self, expr: &EventExpr) -> Result<Rational, ExactError> {
        match expr {
            EventExpr::True => Ok(Rational::one()),
            EventExpr::False => Ok(Rational::zero()),
            EventExpr::Atom(a) => Ok(atom_closed_form(self.space, a)),
            EventExpr::Not(c) => Ok(self.prob(c)?.complement()),
            EventExpr::And(cs) => self.prob_and(&cs.iter().collect::<Vec<_>>()),
            EventExpr::Or(cs) if cs.len() > MAX_INCLUSION_EXCLUSION_TERMS => {
                let negated: Vec<EventExpr> = cs.iter().cloned().map(EventExpr::not).collect();
                Ok(self.prob_and(&negated.iter().collect::<Vec<_>>())?.complement())
            }
            EventExpr::Or(cs) => self.inclusion_exclusion(cs),
        }
    }

    /// `Σ over nonempty S of (-1)^(|S|+1) · P(∧ S)`.
    fn inclusion_exclusion(&self, children: &[EventExpr]) -> Result<Rational, ExactError> {
        let n = children.len();
        let mut total = Rational::zero();
        for mask in 1u32..(1 << n) {
            let subset: Vec<&EventExpr> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &children[i]).collect();
            let term = self.prob_and(&subset)?;
            if subset.len() % 2 == 1 {
                total = total + term;
            } else {
                total = total - term;
            }
        }
        Ok(total)
    }

    /// Groups conjuncts into classes connected by shared draws. Classes are
    /// independent, so their probabilities multiply; a class with several
    /// conjuncts is enumerated jointly over its own draws.
    fn prob_and(&self, children: &[&EventExpr]) -> Result<Rational, ExactError> {
        if let [only] = children {
            return self.prob(only);
        }
        let vars: Vec<BTreeSet<VarRef>> = children.iter().map(|c| free_vars(c)).collect();
        let mut parent: Vec<usize> = (0..children.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut root = i;
            while parent[root] != root {
                root = parent[root];
            }
            parent[i] = root;
            root
        }
        for i in 0..children.len() {
            for j in (i + 1)..children.len() {
                if !vars[i].is_disjoint(&vars[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut product = Rational::one();
        for root in 0..children.len() {
            let members: Vec<usize> = (0..children.len()).filter(|&i| find(&mut parent, i) == root).collect();
            let p = match members.as_slice() {
                [] => continue,
                [single] => self.prob(children[*single])?,
                _ => {
                    let group = EventExpr::And(members.iter().map(|&i| children[i].clone()).collect());
                    let draws: BTreeSet<VarRef> = members.iter().flat_map(|&i| vars[i].iter().cloned()).collect();
                    self.joint(&group, &draws)?
                }
            };
            if p.is_zero() {
                return Ok(p);
            }
            product = product * p;
        }
        Ok(product)
    }

    /// Enumerates `expr` over only `draws`, marginalizing every other draw.
    fn joint(&self, expr: &EventExpr, draws: &BTreeSet<VarRef>) -> Result<Rational, ExactError> {
        let draws: Vec<&VarRef> = draws.iter().collect();
        let cards: Vec<u32> = draws
            .iter()
            .map(|v| self.space.cardinality_of(v).expect("validated draw"))
            .collect();
        let size = cards.iter().fold(BigUint::from(1u32), |acc, &k| acc * k);
        let total = size
            .to_u64()
            .filter(|&n| n <= self.cap)
            .ok_or(ExactError::SpaceTooLarge { size: size.clone(), cap: self.cap })?;
        let compiled = Compiled::new(expr, &|v| draws.iter().position(|d| *d == v)).expect("draws cover expression");
        let hits = count_satisfying(&compiled, &cards, total);
        Ok(Rational::new(BigInt::from(hits), BigInt::from(size)).expect("positive size"))
    }
}

/// Closed-form probability of one comparison.
///
/// Against a constant: `1/k` for `==`, `(k-1)/k` for `!=`. Between two
/// draws of cardinalities `k1`, `k2`: the number of shared values
/// `min(k1, k2)` over `k1·k2` for `==`, and its complement for `!=`.
pub fn atom_probability(space: &SampleSpace, atom: &Atom) -> Result<Rational, ExactError> {
    check_valid(&EventExpr::Atom(atom.clone()), space)?;
    Ok(atom_closed_form(space, atom))
}

fn atom_closed_form(space: &SampleSpace, atom: &Atom) -> Rational {
    let k = i64::from(space.cardinality_of(&atom.lhs).expect("validated draw"));
    let p_eq = match &atom.rhs {
        Operand::Const(_) => Rational::frac(1, k),
        Operand::Var(v) => {
            let k2 = i64::from(space.cardinality_of(v).expect("validated draw"));
            Rational::frac(k.min(k2), k * k2)
        }
    };
    match atom.cmp {
        Cmp::Eq => p_eq,
        Cmp::Neq => p_eq.complement(),
    }
}

/// `C(n, k) · p^k · (1 - p)^(n - k)`.
pub fn binomial_term(k: u64, n: u64, p: &Rational) -> Result<Rational, ExactError> {
    if k > n {
        return Err(ExactError::BinomialRange { k, n });
    }
    if !p.is_probability() {
        return Err(ExactError::NotAProbability);
    }
    let exp = |e: u64| u32::try_from(e).map_err(|_| ExactError::BinomialRange { k, n });
    Ok(Rational::from_integer(binomial_coefficient(n, k)) * p.pow(exp(k)?) * p.complement().pow(exp(n - k)?))
}

/// `n! / (k! (n-k)!)` by the multiplicative formula; exact at every step.
pub fn binomial_coefficient(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
