//! Parse a problem file, report diagnostics with line and column, and print
//! the canonical form back.
//!
//!     cargo run --example parse_and_print -- [FILE]

use eventprob::dsl::{parse_problem_named, print_problem, render_diagnostics};

const SAMPLE: &str = "\
# three dice and a coin
space die[3] uniform(6)
space coin[1] uniform(2)
event doubles: die[0] == die[1] or die[1] == die[2] or die[0] == die[2]
event lucky: coin[0] == 1 and not (die[0] == 6 or die[1] == 6)
";

const BROKEN: [&str; 2] = [
    "space die[2] uniform(6)\nevent a: die[0] == 7\nevent b: die[2] != die[0]\n",
    "space die[2] uniform(6)\nevent c: (die[0] == 1\nevent d: die[1] == 2\n",
];

fn main() {
    let (name, text) = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable file");
            (path, text)
        }
        None => ("sample".to_string(), SAMPLE.to_string()),
    };
    match parse_problem_named(&text, &name) {
        Ok(problem) => {
            eprint!("{}", render_diagnostics(&name, &problem.warnings));
            print!("{}", print_problem(&problem));
        }
        Err(diags) => {
            eprint!("{}", render_diagnostics(&name, &diags));
            std::process::exit(1);
        }
    }

    for (i, text) in BROKEN.iter().enumerate() {
        let name = format!("broken{i}");
        println!("\n# {name}:\n{text}");
        if let Err(diags) = parse_problem_named(text, &name) {
            print!("{}", render_diagnostics(&name, &diags));
        }
    }
}
