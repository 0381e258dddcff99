//! "The two were not born in May" read two ways: not both in May, or
//! neither in May. Also shows a single condition, where the readings agree.
//!
//!     cargo run --example ambiguity_fork

use eventprob::ambiguity::{detect_ambiguity_sites, dual_readings, explain};
use eventprob::corpus::{corpus, CORPUS_FORK_ATOMS};
use eventprob::dsl::parse_atom_list;

fn main() {
    let problem = corpus();

    let atoms = parse_atom_list(CORPUS_FORK_ATOMS, &problem.space).expect("atoms parse");
    let pair = dual_readings(&problem.space, &atoms).unwrap();
    println!("negating {CORPUS_FORK_ATOMS}\n{}", explain(&pair));

    let same_month = parse_atom_list("person[0] == person[1]", &problem.space).unwrap();
    let pair = dual_readings(&problem.space, &same_month).unwrap();
    println!("negating person[0] == person[1]\n{}", explain(&pair));

    for (name, expr) in &problem.events {
        for site in detect_ambiguity_sites(expr) {
            println!("{name} has a negated conjunction at {:?}: {}", site.location, site.sub_expression);
        }
    }
}
