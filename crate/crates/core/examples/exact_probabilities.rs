//! Exact probabilities of the built-in birthday-month events, by
//! enumeration and by composing closed-form rules.
//!
//!     cargo run --example exact_probabilities

use eventprob::corpus::corpus;
use eventprob::decimal::to_repeating_decimal;
use eventprob::exact::{prob_compositional, prob_enumerate};

fn main() {
    let problem = corpus();
    println!("space of {} outcomes", problem.space.total_size());
    for (name, expr) in &problem.events {
        let counted = prob_enumerate(&problem.space, expr).expect("corpus is valid");
        let composed = prob_compositional(&problem.space, expr).expect("corpus is valid");
        assert_eq!(counted.probability, composed.probability);
        println!(
            "{name}: {expr}\n    {} = {}  ({} satisfying outcomes)",
            counted.probability,
            to_repeating_decimal(&counted.probability),
            counted.satisfying_count.expect("enumeration counts outcomes"),
        );
    }
}
