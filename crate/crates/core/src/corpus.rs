//! The built-in birthday-month problems.

use crate::dsl::{parse_problem_named, ProblemSet};

pub const CORPUS_SOURCE: &str = "builtin:birthday-months";

/// Problem file for the three problems that have a single formalization.
pub const CORPUS_TEXT: &str = "\
# Two randomly chosen people; each birth month is uniform over 1..12.
space person[2] uniform(12)

# 1. The two were not born in the same month.
event p1: person[0] != person[1]

# 2. The two were not both born in May.
event p2: not (person[0] == may and person[1] == may)

# 3. Neither of the two was born in May.
event p3: person[0] != may and person[1] != may

# \"The two were not born in May\" has no single formalization; it is
# analyzed as the negation of these atoms instead of being an event:
#   person[0] == may, person[1] == may
";

/// Atoms whose negation is the ambiguous \"not born in May\" condition.
pub const CORPUS_FORK_ATOMS: &str = "person[0] == may, person[1] == may";

pub fn corpus() -> ProblemSet {
    parse_problem_named(CORPUS_TEXT, CORPUS_SOURCE).expect("built-in corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_atom_list, parse_problem, print_problem};

    #[test]
    fn corpus_parses_cleanly() {
        let c = corpus();
        assert!(c.warnings.is_empty());
        let names: Vec<&str> = c.events.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["p1", "p2", "p3"]);
        assert_eq!(parse_atom_list(CORPUS_FORK_ATOMS, &c.space).unwrap().len(), 2);
    }

    #[test]
    fn canonical_text_reparses_identically() {
        let c = corpus();
        let again = parse_problem(&print_problem(&c)).unwrap();
        assert_eq!(again.space, c.space);
        assert_eq!(again.events, c.events);
    }
}
