#![allow(dead_code)]

use eventprob::model::{Atom, CategoricalFamily, Cmp, EventExpr, Operand, Outcome, SampleSpace, VarRef};
use eventprob::Rational;
use proptest::prelude::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const MAX_OUTCOMES: u64 = 10_000;

/// Up to three families, each with up to three draws, shrunk until the
/// space has at most `MAX_OUTCOMES` outcomes.
pub fn space_strategy() -> impl Strategy<Value = SampleSpace> {
    prop::collection::vec((1usize..=3, 1u32..=6), 1..=3).prop_map(|mut shape| {
        let total = |s: &[(usize, u32)]| s.iter().map(|&(c, k)| u64::from(k).pow(c as u32)).product::<u64>();
        while total(&shape) > MAX_OUTCOMES {
            let widest = (0..shape.len()).max_by_key(|&i| shape[i].1).unwrap();
            shape[widest].1 -= 1;
        }
        let families = shape
            .iter()
            .enumerate()
            .map(|(i, &(c, k))| CategoricalFamily::new(format!("f{i}"), c, k).unwrap())
            .collect();
        SampleSpace::new(families).unwrap()
    })
}

pub fn draws(space: &SampleSpace) -> Vec<(VarRef, u32)> {
    space
        .families()
        .iter()
        .flat_map(|f| (0..f.count()).map(move |i| (VarRef::new(f.name(), i), f.cardinality())))
        .collect()
}

/// A valid atom of the space: against a constant, or against a different draw.
pub fn atom_strategy(space: &SampleSpace) -> impl Strategy<Value = Atom> {
    let draws = draws(space);
    let n = draws.len();
    (0..n, 0..n, any::<u32>(), any::<bool>(), any::<bool>()).prop_map(move |(i, j, c, eq, var)| {
        let (lhs, k) = draws[i].clone();
        let cmp = if eq { Cmp::Eq } else { Cmp::Neq };
        if var && i != j {
            Atom::var_var(lhs, cmp, draws[j].0.clone())
        } else {
            Atom::var_const(lhs, cmp, c % k + 1)
        }
    })
}

/// Random event of depth at most 6 whose n-ary nodes have 2 to 3 children.
pub fn expr_strategy(space: &SampleSpace) -> impl Strategy<Value = EventExpr> {
    let leaf = prop_oneof![
        1 => Just(EventExpr::True),
        1 => Just(EventExpr::False),
        12 => atom_strategy(space).prop_map(EventExpr::Atom),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(EventExpr::not),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(EventExpr::And),
            prop::collection::vec(inner, 2..=3).prop_map(EventExpr::Or),
        ]
    })
}

pub fn instance_strategy() -> impl Strategy<Value = (SampleSpace, EventExpr)> {
    space_strategy().prop_flat_map(|space| {
        let expr = expr_strategy(&space);
        (Just(space), expr)
    })
}

pub fn pair_instance_strategy() -> impl Strategy<Value = (SampleSpace, EventExpr, EventExpr)> {
    space_strategy().prop_flat_map(|space| {
        let a = expr_strategy(&space);
        let b = expr_strategy(&space);
        (Just(space), a, b)
    })
}

pub fn atoms_instance_strategy() -> impl Strategy<Value = (SampleSpace, Vec<EventExpr>)> {
    space_strategy().prop_flat_map(|space| {
        let atoms = prop::collection::vec(atom_strategy(&space).prop_map(EventExpr::Atom), 1..=4);
        (Just(space), atoms)
    })
}

/// `n` values drawn from `strategy` with a fixed-seed generator, so suites
/// that need an exact instance count get the same instances every run.
pub fn fixed_sample<S: Strategy>(strategy: S, n: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..n).map(|_| strategy.new_tree(&mut runner).expect("strategy generates").current()).collect()
}

/// Every outcome of the space, row-major.
pub fn all_outcomes(space: &SampleSpace) -> Vec<Outcome> {
    let cards: Vec<u32> = space.families().iter().flat_map(|f| std::iter::repeat_n(f.cardinality(), f.count())).collect();
    let mut out = Vec::new();
    let mut slots = vec![1u32; cards.len()];
    loop {
        out.push(Outcome::from_slots(space, &slots).unwrap());
        let mut i = slots.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if slots[i] < cards[i] {
                slots[i] += 1;
                break;
            }
            slots[i] = 1;
        }
    }
}

/// Brute-force probability straight from the tree evaluator.
pub fn brute_force(space: &SampleSpace, expr: &EventExpr) -> Rational {
    let outcomes = all_outcomes(space);
    let hits = outcomes.iter().filter(|o| eventprob::evaluate(expr, o).unwrap()).count();
    Rational::frac(hits as i64, outcomes.len() as i64)
}

pub fn contains_not(expr: &EventExpr) -> bool {
    match expr {
        EventExpr::Not(_) => true,
        EventExpr::And(cs) | EventExpr::Or(cs) => cs.iter().any(contains_not),
        _ => false,
    }
}

pub fn is_atom_var_const(expr: &EventExpr) -> bool {
    matches!(expr, EventExpr::Atom(Atom { rhs: Operand::Const(_), .. }))
}

pub fn depth(expr: &EventExpr) -> usize {
    match expr {
        EventExpr::Not(c) => 1 + depth(c),
        EventExpr::And(cs) | EventExpr::Or(cs) => 1 + cs.iter().map(depth).max().unwrap_or(0),
        _ => 1,
    }
}
