//! Sample spaces of independent uniform categorical draws, and the boolean
//! event language evaluated over them.
//!
//! Category values are 1-based: a family with cardinality 12 takes values
//! `1..=12`. Every type here is an immutable value and every operation is pure.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// `count` independent draws, each uniform over `1..=cardinality`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CategoricalFamily {
    name: String,
    count: usize,
    cardinality: u32,
}

impl CategoricalFamily {
    pub fn new(name: impl Into<String>, count: usize, cardinality: u32) -> Result<Self, ModelError> {
        let name = name.into();
        if count == 0 || cardinality == 0 {
            return Err(ModelError::EmptyFamily { name, count, cardinality });
        }
        Ok(CategoricalFamily { name, count, cardinality })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn cardinality(&self) -> u32 {
        self.cardinality
    }
}

/// Ordered product of categorical families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleSpace {
    families: Vec<CategoricalFamily>,
}

impl SampleSpace {
    pub fn new(families: Vec<CategoricalFamily>) -> Result<Self, ModelError> {
        let mut seen = HashSet::new();
        for f in &families {
            if !seen.insert(f.name.as_str()) {
                return Err(ModelError::DuplicateFamily(f.name.clone()));
            }
        }
        Ok(SampleSpace { families })
    }

    /// Convenience for the common one-family case, e.g. `uniform("person", 2, 12)`.
    pub fn uniform(name: &str, count: usize, cardinality: u32) -> Result<Self, ModelError> {
        SampleSpace::new(vec![CategoricalFamily::new(name, count, cardinality)?])
    }

    pub fn families(&self) -> &[CategoricalFamily] {
        &self.families
    }

    pub fn family(&self, name: &str) -> Option<&CategoricalFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    /// Number of outcomes, always recomputed from the families.
    pub fn total_size(&self) -> BigUint {
        derive_total_size(&self.families)
    }

    /// Total number of individual draws (sum of counts).
    pub fn draw_count(&self) -> usize {
        self.families.iter().map(|f| f.count).sum()
    }

    /// Position of a draw in the row-major slot order: families in
    /// declaration order, draws in index order.
    pub fn slot_of(&self, var: &VarRef) -> Option<usize> {
        let mut offset = 0;
        for f in &self.families {
            if f.name == var.family {
                return (var.index < f.count).then_some(offset + var.index);
            }
            offset += f.count;
        }
        None
    }

    /// Cardinality of every slot, in slot order.
    pub fn slot_cardinalities(&self) -> Vec<u32> {
        self.families
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.cardinality, f.count))
            .collect()
    }

    pub fn cardinality_of(&self, var: &VarRef) -> Option<u32> {
        self.family(&var.family).filter(|f| var.index < f.count).map(|f| f.cardinality)
    }
}

/// `Π cardinality^count` over the families.
pub fn derive_total_size(families: &[CategoricalFamily]) -> BigUint {
    families.iter().fold(BigUint::one(), |acc, f| {
        acc * BigUint::from(f.cardinality).pow(f.count as u32)
    })
}

/// One draw: `family[index]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarRef {
    pub family: String,
    pub index: usize,
}

impl VarRef {
    pub fn new(family: impl Into<String>, index: usize) -> Self {
        VarRef { family: family.into(), index }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cmp {
    Eq,
    Neq,
}

impl Cmp {
    pub fn flip(self) -> Cmp {
        match self {
            Cmp::Eq => Cmp::Neq,
            Cmp::Neq => Cmp::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "==",
            Cmp::Neq => "!=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operand {
    Var(VarRef),
    Const(u32),
}

/// `lhs cmp rhs`, where the right side is another draw or a category value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub lhs: VarRef,
    pub cmp: Cmp,
    pub rhs: Operand,
}

impl Atom {
    pub fn var_const(lhs: VarRef, cmp: Cmp, value: u32) -> Self {
        Atom { lhs, cmp, rhs: Operand::Const(value) }
    }

    pub fn var_var(lhs: VarRef, cmp: Cmp, rhs: VarRef) -> Self {
        Atom { lhs, cmp, rhs: Operand::Var(rhs) }
    }

    pub fn negated(&self) -> Atom {
        Atom { cmp: self.cmp.flip(), ..self.clone() }
    }
}

/// Boolean event over the draws of a sample space.
///
/// `And` and `Or` are n-ary and expected to carry at least two children;
/// [`validate`] reports shorter ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventExpr {
    True,
    False,
    Atom(Atom),
    Not(Box<EventExpr>),
    And(Vec<EventExpr>),
    Or(Vec<EventExpr>),
}

impl EventExpr {
    pub fn atom(atom: Atom) -> Self {
        EventExpr::Atom(atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: EventExpr) -> Self {
        EventExpr::Not(Box::new(child))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, EventExpr::Atom(_))
    }

    /// The child at `path`, following `Not` as child 0.
    pub fn at_path(&self, path: &[usize]) -> Option<&EventExpr> {
        let Some((&head, rest)) = path.split_first() else {
            return Some(self);
        };
        match self {
            EventExpr::Not(c) if head == 0 => c.at_path(rest),
            EventExpr::And(cs) | EventExpr::Or(cs) => cs.get(head)?.at_path(rest),
            _ => None,
        }
    }

    /// Node count, for generators and reporting.
    pub fn size(&self) -> usize {
        match self {
            EventExpr::True | EventExpr::False | EventExpr::Atom(_) => 1,
            EventExpr::Not(c) => 1 + c.size(),
            EventExpr::And(cs) | EventExpr::Or(cs) => 1 + cs.iter().map(EventExpr::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for EventExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::pretty_print(self))
    }
}

/// A complete assignment of category values to the draws of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    families: Vec<(String, Vec<u32>)>,
}

impl Outcome {
    pub fn new(families: Vec<(String, Vec<u32>)>) -> Self {
        Outcome { families }
    }

    /// Builds an outcome from values in slot order. Returns `None` if the
    /// length does not match the space or a value is out of range.
    pub fn from_slots(space: &SampleSpace, slots: &[u32]) -> Option<Self> {
        if slots.len() != space.draw_count() {
            return None;
        }
        let mut rest = slots;
        let mut families = Vec::with_capacity(space.families.len());
        for f in &space.families {
            let (head, tail) = rest.split_at(f.count);
            if head.iter().any(|&v| v == 0 || v > f.cardinality) {
                return None;
            }
            families.push((f.name.clone(), head.to_vec()));
            rest = tail;
        }
        Some(Outcome { families })
    }

    pub fn get(&self, var: &VarRef) -> Option<u32> {
        self.families
            .iter()
            .find(|(name, _)| *name == var.family)
            .and_then(|(_, values)| values.get(var.index).copied())
    }

    /// Values flattened in family order.
    pub fn slots(&self) -> Vec<u32> {
        self.families.iter().flat_map(|(_, v)| v.iter().copied()).collect()
    }
}

/// Truth value of `expr` on `outcome`.
pub fn evaluate(expr: &EventExpr, outcome: &Outcome) -> Result<bool, ModelError> {
    let lookup = |v: &VarRef| outcome.get(v).ok_or_else(|| ModelError::UnresolvedVar(v.clone()));
    Ok(match expr {
        EventExpr::True => true,
        EventExpr::False => false,
        EventExpr::Atom(atom) => {
            let lhs = lookup(&atom.lhs)?;
            let rhs = match &atom.rhs {
                Operand::Var(v) => lookup(v)?,
                Operand::Const(c) => *c,
            };
            match atom.cmp {
                Cmp::Eq => lhs == rhs,
                Cmp::Neq => lhs != rhs,
            }
        }
        EventExpr::Not(c) => !evaluate(c, outcome)?,
        EventExpr::And(cs) => {
            for c in cs {
                if !evaluate(c, outcome)? {
                    return Ok(false);
                }
            }
            true
        }
        EventExpr::Or(cs) => {
            for c in cs {
                if evaluate(c, outcome)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DiagnosticKind {
    UnknownFamily(String),
    IndexOutOfRange { var: VarRef, count: usize },
    ConstantOutOfRange { value: u32, cardinality: u32 },
    SelfComparison(VarRef),
    TooFewChildren { operator: &'static str, children: usize },
}

/// A validation problem, located by its path from the root
/// (child indices, with `Not` contributing index 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Diagnostic {
    pub path: Vec<usize>,
    pub kind: DiagnosticKind,
    pub subexpr: EventExpr,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DiagnosticKind::UnknownFamily(name) => write!(f, "unknown family `{name}`")?,
            DiagnosticKind::IndexOutOfRange { var, count } => {
                write!(f, "index out of range: `{var}` but family has {count} draw(s)")?
            }
            DiagnosticKind::ConstantOutOfRange { value, cardinality } => {
                write!(f, "constant out of range: {value} is not in 1..={cardinality}")?
            }
            DiagnosticKind::SelfComparison(var) => write!(f, "degenerate self-comparison of `{var}`")?,
            DiagnosticKind::TooFewChildren { operator, children } => {
                write!(f, "`{operator}` needs at least 2 operands, found {children}")?
            }
        }
        write!(f, " in `{}`", self.subexpr)
    }
}

/// Every problem with `expr` against `space`; empty means valid.
pub fn validate(expr: &EventExpr, space: &SampleSpace) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    validate_into(expr, space, &mut path, &mut out);
    out
}

fn validate_into(expr: &EventExpr, space: &SampleSpace, path: &mut Vec<usize>, out: &mut Vec<Diagnostic>) {
    let mut report = |kind| out.push(Diagnostic { path: path.clone(), kind, subexpr: expr.clone() });
    match expr {
        EventExpr::True | EventExpr::False => {}
        EventExpr::Atom(atom) => {
            let check_var = |v: &VarRef, report: &mut dyn FnMut(DiagnosticKind)| -> Option<u32> {
                match space.family(&v.family) {
                    None => {
                        report(DiagnosticKind::UnknownFamily(v.family.clone()));
                        None
                    }
                    Some(f) if v.index >= f.count => {
                        report(DiagnosticKind::IndexOutOfRange { var: v.clone(), count: f.count });
                        None
                    }
                    Some(f) => Some(f.cardinality),
                }
            };
            let lhs_card = check_var(&atom.lhs, &mut report);
            match &atom.rhs {
                Operand::Var(v) => {
                    check_var(v, &mut report);
                    if *v == atom.lhs {
                        report(DiagnosticKind::SelfComparison(v.clone()));
                    }
                }
                Operand::Const(c) => {
                    if let Some(k) = lhs_card {
                        if *c == 0 || *c > k {
                            report(DiagnosticKind::ConstantOutOfRange { value: *c, cardinality: k });
                        }
                    }
                }
            }
        }
        EventExpr::Not(c) => {
            path.push(0);
            validate_into(c, space, path, out);
            path.pop();
        }
        EventExpr::And(cs) | EventExpr::Or(cs) => {
            if cs.len() < 2 {
                let operator = if matches!(expr, EventExpr::And(_)) { "and" } else { "or" };
                report(DiagnosticKind::TooFewChildren { operator, children: cs.len() });
            }
            for (i, c) in cs.iter().enumerate() {
                path.push(i);
                validate_into(c, space, path, out);
                path.pop();
            }
        }
    }
}

/// `Not(expr)`, unsimplified.
pub fn complement(expr: &EventExpr) -> EventExpr {
    EventExpr::not(expr.clone())
}

/// Negation normal form: no `Not` nodes remain; negated atoms flip `==`/`!=`
/// and negated literals swap.
pub fn to_nnf(expr: &EventExpr) -> EventExpr {
    nnf(expr, false)
}

fn nnf(expr: &EventExpr, negate: bool) -> EventExpr {
    match (expr, negate) {
        (EventExpr::True, false) | (EventExpr::False, true) => EventExpr::True,
        (EventExpr::True, true) | (EventExpr::False, false) => EventExpr::False,
        (EventExpr::Atom(a), false) => EventExpr::Atom(a.clone()),
        (EventExpr::Atom(a), true) => EventExpr::Atom(a.negated()),
        (EventExpr::Not(c), _) => nnf(c, !negate),
        (EventExpr::And(cs), false) | (EventExpr::Or(cs), true) => {
            EventExpr::And(cs.iter().map(|c| nnf(c, negate)).collect())
        }
        (EventExpr::Or(cs), false) | (EventExpr::And(cs), true) => {
            EventExpr::Or(cs.iter().map(|c| nnf(c, negate)).collect())
        }
    }
}

/// Draws referenced by any atom of `expr`.
pub fn free_vars(expr: &EventExpr) -> BTreeSet<VarRef> {
    let mut out = BTreeSet::new();
    collect_vars(expr, &mut out);
    out
}

fn collect_vars(expr: &EventExpr, out: &mut BTreeSet<VarRef>) {
    match expr {
        EventExpr::True | EventExpr::False => {}
        EventExpr::Atom(a) => {
            out.insert(a.lhs.clone());
            if let Operand::Var(v) = &a.rhs {
                out.insert(v.clone());
            }
        }
        EventExpr::Not(c) => collect_vars(c, out),
        EventExpr::And(cs) | EventExpr::Or(cs) => cs.iter().for_each(|c| collect_vars(c, out)),
    }
}

/// An expression with draws resolved to slot indices, for tight
/// enumeration and sampling loops.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Const(bool),
    EqVar(usize, usize),
    NeqVar(usize, usize),
    EqConst(usize, u32),
    NeqConst(usize, u32),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
}

impl Compiled {
    pub(crate) fn new(expr: &EventExpr, slot: &impl Fn(&VarRef) -> Option<usize>) -> Result<Self, ModelError> {
        let resolve = |v: &VarRef| slot(v).ok_or_else(|| ModelError::UnresolvedVar(v.clone()));
        Ok(match expr {
            EventExpr::True => Compiled::Const(true),
            EventExpr::False => Compiled::Const(false),
            EventExpr::Atom(a) => {
                let l = resolve(&a.lhs)?;
                match (&a.rhs, a.cmp) {
                    (Operand::Var(v), Cmp::Eq) => Compiled::EqVar(l, resolve(v)?),
                    (Operand::Var(v), Cmp::Neq) => Compiled::NeqVar(l, resolve(v)?),
                    (Operand::Const(c), Cmp::Eq) => Compiled::EqConst(l, *c),
                    (Operand::Const(c), Cmp::Neq) => Compiled::NeqConst(l, *c),
                }
            }
            EventExpr::Not(c) => Compiled::Not(Box::new(Compiled::new(c, slot)?)),
            EventExpr::And(cs) => Compiled::And(cs.iter().map(|c| Compiled::new(c, slot)).collect::<Result<_, _>>()?),
            EventExpr::Or(cs) => Compiled::Or(cs.iter().map(|c| Compiled::new(c, slot)).collect::<Result<_, _>>()?),
        })
    }

    pub(crate) fn for_space(expr: &EventExpr, space: &SampleSpace) -> Result<Self, ModelError> {
        Compiled::new(expr, &|v| space.slot_of(v))
    }

    #[inline]
    pub(crate) fn eval(&self, slots: &[u32]) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::EqVar(a, b) => slots[*a] == slots[*b],
            Compiled::NeqVar(a, b) => slots[*a] != slots[*b],
            Compiled::EqConst(a, c) => slots[*a] == *c,
            Compiled::NeqConst(a, c) => slots[*a] != *c,
            Compiled::Not(c) => !c.eval(slots),
            Compiled::And(cs) => cs.iter().all(|c| c.eval(slots)),
            Compiled::Or(cs) => cs.iter().any(|c| c.eval(slots)),
        }
    }
}

/// Visits every assignment of `cardinalities` in row-major order (last slot
/// fastest), stopping early if `visit` returns false.
pub(crate) fn for_each_assignment(cardinalities: &[u32], mut visit: impl FnMut(&[u32]) -> bool) {
    if cardinalities.contains(&0) {
        return;
    }
    let mut slots = vec![1u32; cardinalities.len()];
    loop {
        if !visit(&slots) {
            return;
        }
        let mut i = slots.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if slots[i] < cardinalities[i] {
                slots[i] += 1;
                break;
            }
            slots[i] = 1;
        }
    }
}
