//! Ten million shared-sample trials of the birthday-month events, checked
//! against the exact values with a z-test.
//!
//!     cargo run --release --example monte_carlo -- [TRIALS] [SEED]

use eventprob::corpus::corpus;
use eventprob::exact::prob_enumerate;
use eventprob::mc::{consistency_check, estimate, McConfig, DEFAULT_Z_THRESHOLD, REFERENCE_TRIALS};
use eventprob::report::format_float;

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(REFERENCE_TRIALS, |t| t.parse().expect("TRIALS is an integer"));
    let seed = args.next().map_or(0, |s| s.parse().expect("SEED is an integer"));

    let problem = corpus();
    let estimates = estimate(&problem.space, &problem.events, &McConfig::new(trials, seed)).expect("corpus is valid");
    for ((_, expr), est) in problem.events.iter().zip(&estimates) {
        let exact = prob_enumerate(&problem.space, expr).unwrap().probability;
        let verdict = consistency_check(est, &exact, DEFAULT_Z_THRESHOLD);
        println!(
            "{}: {} ± {}   exact {exact}, z = {:.3} {}",
            est.event_name,
            format_float(est.p_hat),
            format_float(est.std_err),
            verdict.z_score,
            if verdict.pass { "ok" } else { "INCONSISTENT" }
        );
    }
}
