//! Building spaces and events in code instead of parsing them: shared birth
//! months for growing groups, and a mixed dice and coin space.
//!
//!     cargo run --release --example custom_space

use eventprob::decimal::to_repeating_decimal;
use eventprob::exact::{prob_compositional, prob_enumerate};
use eventprob::mc::{estimate, McConfig};
use eventprob::model::{Atom, CategoricalFamily, Cmp, EventExpr, SampleSpace, VarRef};
use eventprob::Rational;

fn all_distinct(family: &str, count: usize) -> EventExpr {
    let mut atoms = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            atoms.push(EventExpr::Atom(Atom::var_var(VarRef::new(family, i), Cmp::Neq, VarRef::new(family, j))));
        }
    }
    if atoms.len() == 1 {
        atoms.pop().unwrap()
    } else {
        EventExpr::And(atoms)
    }
}

fn main() {
    for people in 2..=6 {
        let space = SampleSpace::uniform("month", people, 12).unwrap();
        let distinct = all_distinct("month", people);
        let p = prob_compositional(&space, &distinct).unwrap().probability;
        // 12/12 * 11/12 * ... counted by hand
        let by_hand: Rational = (0..people as i64).map(|i| Rational::frac(12 - i, 12)).product();
        assert_eq!(p, by_hand);
        println!("{people} people, all birth months differ: {p} ~ {:.6}", p.to_f64());
    }

    // 365^23 outcomes: only sampling is practical
    let space = SampleSpace::uniform("day", 23, 365).unwrap();
    let shared = EventExpr::not(all_distinct("day", 23));
    let est = estimate(&space, &[("shared".into(), shared)], &McConfig::new(200_000, 0)).unwrap();
    println!("23 people, some shared birthday: {:.4} ± {:.4}", est[0].p_hat, est[0].std_err);

    let space = SampleSpace::new(vec![
        CategoricalFamily::new("die", 2, 6).unwrap(),
        CategoricalFamily::new("coin", 1, 2).unwrap(),
    ])
    .unwrap();
    let heads_and_double = EventExpr::And(vec![
        EventExpr::Atom(Atom::var_const(VarRef::new("coin", 0), Cmp::Eq, 1)),
        EventExpr::Atom(Atom::var_var(VarRef::new("die", 0), Cmp::Eq, VarRef::new("die", 1))),
    ]);
    let exact = prob_enumerate(&space, &heads_and_double).unwrap().probability;
    let est = estimate(&space, &[("heads_and_double".into(), heads_and_double)], &McConfig::new(1_000_000, 1)).unwrap();
    println!(
        "heads and a double: {exact} = {}, estimated {:.5} ± {:.5}",
        to_repeating_decimal(&exact),
        est[0].p_hat,
        est[0].std_err
    );
}
