//! Acceptance suite. Every criterion runs in order inside one test so the
//! timing checks are not disturbed by other tests, and each prints a
//! `criterion N: PASS` or `criterion N: FAIL` line straight to stdout.

mod common;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use eventprob::cli::{cmd_analyze, cmd_check, cmd_eval, cmd_simulate, load_problem, AnalyzeTarget, Format, Settings};
use eventprob::corpus::CORPUS_TEXT;
use eventprob::dsl::ProblemSet;
use eventprob::exact::{binomial_term, prob_compositional, prob_enumerate};
use eventprob::model::{complement, evaluate, to_nnf, EventExpr};
use eventprob::{dual_readings, Rational, RunReport};

const SEEDS: std::ops::Range<u64> = 0..20;

fn corpus_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".prob").tempfile().unwrap();
    f.write_all(CORPUS_TEXT.as_bytes()).unwrap();
    f
}

fn shipped_corpus() -> (tempfile::NamedTempFile, ProblemSet) {
    let f = corpus_file();
    let problem = load_problem(f.path()).unwrap();
    (f, problem)
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// Satisfying counts over the 144 (month, month) pairs, counted with plain
/// integer loops: (different months, not both May, neither May).
fn month_pair_counts() -> (i64, i64, i64) {
    let (mut p1, mut p2, mut p3) = (0, 0, 0);
    for a in 1..=12 {
        for b in 1..=12 {
            p1 += i64::from(a != b);
            p2 += i64::from(!(a == 5 && b == 5));
            p3 += i64::from(a != 5 && b != 5);
        }
    }
    (p1, p2, p3)
}

fn within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(elapsed < limit, "{what} took {elapsed:?}, limit {limit:?}");
}

fn criterion_1() {
    let start = Instant::now();
    let (_f, problem) = shipped_corpus();
    let out = cmd_eval(&problem, &Settings::default()).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(out.exit_code, 0);

    let (c1, c2, c3) = month_pair_counts();
    let expected = [("p1", frac(c1, 144), "0.91(6)"), ("p2", frac(c2, 144), "0.9930(5)"), ("p3", frac(c3, 144), "0.8402(7)")];
    // the closed forms as printed: 11/12, 143/144, 121/144
    assert_eq!(expected.clone().map(|e| e.1), [frac(11, 12), frac(143, 144), frac(121, 144)]);
    for (name, p, decimal) in expected {
        let exact = out.report.event(name).unwrap().exact.as_ref().unwrap();
        assert_eq!(exact.probability, p, "{name}");
        assert_eq!(exact.compositional, p, "{name}");
        assert_eq!(exact.decimal, decimal, "{name}");
    }
    within(elapsed, Duration::from_secs(1), "corpus eval");
}

fn check(problem: &ProblemSet, trials: u64, seed: u64, assumed: &BTreeMap<String, Rational>) -> (i32, RunReport) {
    let settings = Settings { trials, seed, z: 5.0, ..Settings::default() };
    let out = cmd_check(problem, &settings, assumed).unwrap();
    (out.exit_code, out.report)
}

fn criterion_2() {
    let (_f, problem) = shipped_corpus();
    let mut within_one_se = [0; 3];
    for seed in SEEDS {
        let (code, report) = check(&problem, 1_000_000, seed, &BTreeMap::new());
        assert_eq!(code, 0, "seed {seed}: {}", report.to_json());
        for (i, e) in report.events.iter().enumerate() {
            within_one_se[i] += usize::from(e.verdict.as_ref().unwrap().z_score < 1.0);
        }
    }
    // a calibrated standard error puts about 68% of estimates within one SE
    assert!(within_one_se.iter().all(|&n| n >= 10), "seeds within 1 SE per event: {within_one_se:?}");

    let start = Instant::now();
    let (code, report) = check(&problem, 10_000_000, 0, &BTreeMap::new());
    let elapsed = start.elapsed();
    assert_eq!(code, 0);
    let printed = [("p1", 8.738956491594981e-05), ("p2", 2.627183271079508e-05), ("p3", 0.00011581810052096347)];
    for (name, se) in printed {
        let got = report.event(name).unwrap().estimate.as_ref().unwrap().std_err;
        assert!((got - se).abs() <= 0.2 * se, "{name}: SE {got} vs {se}");
    }
    within(elapsed, Duration::from_secs(60), "check at 10^7 trials");
}

fn criterion_3() {
    let (_f, problem) = shipped_corpus();
    // P(first not May)^2, the value obtained by dropping the binomial coefficient
    let planted = BTreeMap::from([("p2".to_string(), frac(11, 12))]);
    for trials in [10_000, 100_000] {
        for seed in SEEDS {
            let (code, report) = check(&problem, trials, seed, &planted);
            assert_eq!(code, 4, "trials {trials} seed {seed}");
            let p2 = report.event("p2").unwrap().verdict.as_ref().unwrap();
            assert!(!p2.pass && p2.z_score > 5.0, "trials {trials} seed {seed}: z {}", p2.z_score);
            assert!(report.event("p1").unwrap().verdict.as_ref().unwrap().pass);
        }
    }
}

fn criterion_4() {
    let (_f, problem) = shipped_corpus();
    let (_, not_both, neither) = month_pair_counts();

    let target = AnalyzeTarget { event: None, atoms: Some("person[0]==may, person[1]==may".into()) };
    let out = cmd_analyze(&problem, &target).unwrap();
    let r = out.report.analysis.unwrap().readings.unwrap();
    assert_eq!(r.not_both.probability, frac(not_both, 144));
    assert_eq!(r.neither.probability, frac(neither, 144));
    assert_eq!(r.divergence, frac(not_both - neither, 144));
    assert_eq!((r.not_both.probability, r.neither.probability, r.divergence), (frac(143, 144), frac(121, 144), frac(11, 72)));
    assert!(!r.equivalent);

    let target = AnalyzeTarget { event: None, atoms: Some("person[0]==person[1]".into()) };
    let r = cmd_analyze(&problem, &target).unwrap().report.analysis.unwrap().readings.unwrap();
    assert_eq!(r.not_both.probability, frac(11, 12));
    assert_eq!(r.neither.probability, frac(11, 12));
    assert!(r.divergence.is_zero() && r.equivalent);
}

fn criterion_5() {
    let start = Instant::now();
    for (space, e) in fixed_sample(instance_strategy(), 200, 1) {
        let oracle = brute_force(&space, &e);
        assert_eq!(prob_enumerate(&space, &e).unwrap().probability, oracle, "{e}");
        assert_eq!(prob_compositional(&space, &e).unwrap().probability, oracle, "{e}");

        let not_e = complement(&e);
        assert_eq!(prob_compositional(&space, &not_e).unwrap().probability, Rational::one() - &oracle);
        assert_eq!(prob_enumerate(&space, &not_e).unwrap().probability, Rational::one() - &oracle);
        let nnf = to_nnf(&e);
        let neg_nnf = to_nnf(&not_e);
        assert!(!contains_not(&nnf) && !contains_not(&neg_nnf));
        for o in all_outcomes(&space) {
            let v = evaluate(&e, &o).unwrap();
            assert_eq!(evaluate(&nnf, &o).unwrap(), v, "{e} vs {nnf}");
            assert_eq!(evaluate(&neg_nnf, &o).unwrap(), !v);
        }
    }
    for (space, a, b) in fixed_sample(pair_instance_strategy(), 200, 2) {
        let p = |x: &EventExpr| brute_force(&space, x);
        let or = EventExpr::Or(vec![a.clone(), b.clone()]);
        let and = EventExpr::And(vec![a.clone(), b.clone()]);
        assert_eq!(prob_compositional(&space, &or).unwrap().probability, p(&a) + p(&b) - p(&and));
        assert_eq!(prob_compositional(&space, &and).unwrap().probability, p(&and));
    }
    for (space, atoms) in fixed_sample(atoms_instance_strategy(), 200, 3) {
        let pair = dual_readings(&space, &atoms).unwrap();
        for o in all_outcomes(&space) {
            if evaluate(&pair.strict_reading, &o).unwrap() {
                assert!(evaluate(&pair.loose_reading, &o).unwrap());
            }
        }
        assert_eq!(pair.p_loose, brute_force(&space, &pair.loose_reading));
        assert_eq!(pair.p_strict, brute_force(&space, &pair.strict_reading));
        assert!(pair.p_strict <= pair.p_loose);
    }
    within(start.elapsed(), Duration::from_secs(30), "oracle suite");
}

/// C(n, k) from Pascal's triangle.
fn pascal(n: usize, k: usize) -> i64 {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

fn criterion_6() {
    for p in [frac(1, 12), frac(11, 12), frac(1, 2), frac(3, 7), Rational::zero(), Rational::one()] {
        for n in 0..=12u64 {
            let mut total = Rational::zero();
            for k in 0..=n {
                let term = binomial_term(k, n, &p).unwrap();
                let oracle =
                    Rational::from_integer(pascal(n as usize, k as usize)) * p.pow(k as u32) * p.complement().pow((n - k) as u32);
                assert_eq!(term, oracle, "k {k} n {n} p {p}");
                total = total + term;
            }
            assert_eq!(total, Rational::one(), "n {n} p {p}");
        }
    }
    // neither in May plus exactly one in May
    let may = frac(1, 12);
    let decomposition = frac(11, 12) * frac(11, 12) + frac(2, 1) * frac(1, 12) * frac(11, 12);
    assert_eq!(decomposition, frac(143, 144));
    assert_eq!(binomial_term(0, 2, &may).unwrap() + binomial_term(1, 2, &may).unwrap(), frac(143, 144));
    assert_eq!(Rational::one() - binomial_term(2, 2, &may).unwrap(), frac(143, 144));
}

fn criterion_7() {
    let f = corpus_file();
    let path = f.path().to_str().unwrap();
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_eventprob"))
            .args(["simulate", path, "--trials", "1000000", "--seed", "11", "--format", "json", "--workers", workers])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let reference = run("1");
    for workers in ["1", "2", "4", "0"] {
        assert_eq!(run(workers), reference, "--workers {workers}");
    }

    let (_f, problem) = shipped_corpus();
    let render = |workers| {
        let s = Settings { trials: 500_000, seed: 5, workers, format: Format::Json, ..Settings::default() };
        cmd_simulate(&problem, &s).unwrap().render(Format::Json)
    };
    let reference = render(1);
    for workers in [1, 3, 8] {
        assert_eq!(render(workers), reference);
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn()); 7] =
        [(1, criterion_1), (2, criterion_2), (3, criterion_3), (4, criterion_4), (5, criterion_5), (6, criterion_6), (7, criterion_7)];
    let mut failed = Vec::new();
    for (n, criterion) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion));
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        // written to the stdout handle directly so the lines survive test capture
        let _ = writeln!(std::io::stdout(), "criterion {n}: {verdict} ({:.2?})", start.elapsed());
        if outcome.is_err() {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
