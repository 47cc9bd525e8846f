//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use paso::ground::{ground, GroundProgram};
use paso::oracle::{brute_answer_sets, classical_rank, gen_random, ClassicalProgram, OracleError, RandomParams};
use paso::prefs::{
    compare_combination, compare_rule, maximal_compare, pareto_compare, Ordering3, PreferenceRelation,
};
use paso::solver::{answer_sets, SolverConfig};
use paso::strategy::{builtin, StrategyKind};
use paso::syntax::{Combination, Literal};
use paso::{parse_program, PInterpretation, ProbInterval};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> GroundProgram {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture");
    ground(&parse_program(&text).expect("fixture parses")).expect("fixture grounds")
}

fn point(v: &str) -> ProbInterval {
    ProbInterval::from_decimals(v, v)
}

fn service(nurse: &str, shift: &str, day: &str) -> Literal {
    Literal::ground("service", &[nurse, shift, day])
}

/// The eight answer sets of the weekend instance, keyed by their published labels.
fn weekend_sets() -> BTreeMap<&'static str, PInterpretation> {
    let jeen = |s: &str| (service("jeen", s, "sat"), point(if s == "early" { "0.8" } else { "0.4" }));
    let lily = |s: &str| (service("lily", s, "sat"), point(if s == "day" { "0.6" } else { "0.2" }));
    let sat = |s: &str| (service("lucci", s, "sat"), point(if s == "night" { "0.7" } else { "0.3" }));
    let sun = |s: &str| (service("lucci", s, "sun"), point(if s == "night" { "0.7" } else { "0.5" }));
    let rows = [
        ("h1", "day", "late", "night", "early"),
        ("h2", "early", "late", "night", "early"),
        ("h3", "day", "late", "night", "night"),
        ("h4", "early", "late", "night", "night"),
        ("h5", "early", "day", "late", "early"),
        ("h6", "early", "day", "late", "night"),
        ("h7", "early", "day", "night", "early"),
        ("h8", "early", "day", "night", "night"),
    ];
    rows.iter()
        .map(|(id, j, l, a, b)| (*id, [jeen(j), lily(l), sat(a), sun(b)].into_iter().collect()))
        .collect()
}

/// The published satisfaction matrix (rows h1..h8, columns r1..r4).
const WEEKEND_TABLE: [(&str, [u64; 4]); 8] = [
    ("h1", [2, 2, 1, 2]),
    ("h2", [1, 2, 1, 2]),
    ("h3", [2, 2, 1, 1]),
    ("h4", [1, 2, 1, 1]),
    ("h5", [1, 1, 2, 2]),
    ("h6", [1, 1, 2, 1]),
    ("h7", [1, 1, 1, 2]),
    ("h8", [1, 1, 1, 1]),
];

fn paso(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_paso")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

/// Solver id ("h3") to published label, by comparing set contents.
fn id_to_label(doc: &Value) -> BTreeMap<String, &'static str> {
    let known = weekend_sets();
    let mut map = BTreeMap::new();
    for set in doc["answer_sets"].as_array().expect("answer_sets") {
        let h: PInterpretation = set["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let program = parse_program(&format!("{}.", e["formula"].as_str().unwrap())).unwrap();
                let lit = program.generator_rules[0].head[0].atom.clone();
                let lo = e["interval"][0].as_str().unwrap();
                let hi = e["interval"][1].as_str().unwrap();
                (lit, ProbInterval::from_decimals(lo, hi))
            })
            .collect();
        if let Some((label, _)) = known.iter().find(|(_, p)| **p == h) {
            map.insert(set["id"].as_str().unwrap().to_string(), *label);
        }
    }
    map
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = load("intro.paso");
    let sets = answer_sets(&g, &SolverConfig::default()).expect("solves");
    let elapsed = start.elapsed();
    let expected = vec![
        PInterpretation::new().with(service("a", "s1", "d"), point("0.7")),
        PInterpretation::new().with(service("a", "s2", "d"), point("0.4")),
    ];
    let got: BTreeSet<_> = sets.iter().cloned().collect();
    let want: BTreeSet<_> = expected.into_iter().collect();
    outcome(
        got == want && sets.len() == 2 && elapsed < Duration::from_secs(1),
        format!("{} answer sets in {elapsed:.2?}", sets.len()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = load("nurse_example2.paso");
    let sets = answer_sets(&g, &SolverConfig::default()).expect("solves");
    let elapsed = start.elapsed();
    let got: BTreeSet<_> = sets.iter().cloned().collect();
    let want: BTreeSet<_> = weekend_sets().into_values().collect();
    outcome(
        got == want && sets.len() == 8 && elapsed < Duration::from_secs(2),
        format!("{} answer sets, {} match the published h1-h8, in {elapsed:.2?}", sets.len(), got.intersection(&want).count()),
    )
}

fn criterion_3() -> Outcome {
    let path = fixture("nurse_example2.paso");
    let (code, out) = paso(&["explain", path.to_str().unwrap(), "--format", "json"]);
    let doc: Value = serde_json::from_str(&out).expect("json");
    let labels = id_to_label(&doc);
    let mut table: BTreeMap<(&str, String), u64> = BTreeMap::new();
    for e in doc["satisfaction"].as_array().expect("satisfaction") {
        let Some(label) = labels.get(e["set"].as_str().unwrap()) else { continue };
        if let Some(i) = e["index"].as_u64() {
            table.insert((label, e["rule"].as_str().unwrap().to_string()), i);
        }
    }
    let mut matching = 0;
    for (label, row) in WEEKEND_TABLE {
        for (j, want) in row.iter().enumerate() {
            if table.get(&(label, format!("r{}", j + 1))) == Some(want) {
                matching += 1;
            }
        }
    }
    outcome(code == 0 && matching == 32 && table.len() == 32, format!("{matching}/32 entries match"))
}

fn criterion_4() -> Outcome {
    let path = fixture("nurse_example2.paso");
    let (code, out) = paso(&["rank", path.to_str().unwrap(), "--mode", "maximal", "--format", "json"]);
    let doc: Value = serde_json::from_str(&out).expect("json");
    let labels = id_to_label(&doc);
    let strata: Vec<BTreeSet<&str>> = doc["ranking"]["strata"]
        .as_array()
        .map(|s| {
            s.iter()
                .map(|c| c.as_array().unwrap().iter().map(|id| labels[id.as_str().unwrap()]).collect())
                .collect()
        })
        .unwrap_or_default();
    let want: Vec<BTreeSet<&str>> =
        vec![["h8"].into(), ["h4", "h6", "h7"].into(), ["h2", "h3", "h5"].into(), ["h1"].into()];
    outcome(code == 0 && strata == want, format!("strata {strata:?}"))
}

fn criterion_5() -> Outcome {
    let g = load("nurse_example2.paso");
    let known = weekend_sets();
    let top = &known["h8"];
    let beaten = known
        .iter()
        .filter(|(l, _)| **l != "h8")
        .filter(|(_, h)| pareto_compare(top, h, &g.pref_rules) == Ordering3::StrictFirst)
        .count();
    outcome(beaten == 7, format!("h8 strictly Pareto-preferred to {beaten}/7 other sets"))
}

fn criterion_6() -> Outcome {
    let params = RandomParams::default();
    let (mut compared, mut mismatches, mut skipped, mut nonempty) = (0, 0, 0, 0);
    let mut first_bad = None;
    for seed in 0..2000u64 {
        if compared >= 250 {
            break;
        }
        let g = ground(&gen_random(seed, params, false)).expect("generated programs are safe");
        match brute_answer_sets(&g) {
            Err(OracleError::TooLarge { .. }) => skipped += 1,
            Err(e) => panic!("{e}"),
            Ok(brute) => {
                compared += 1;
                let solver = answer_sets(&g, &SolverConfig::default()).expect("solves");
                let a: BTreeSet<_> = solver.into_iter().collect();
                let b: BTreeSet<_> = brute.into_iter().collect();
                nonempty += usize::from(!a.is_empty());
                if a != b {
                    mismatches += 1;
                    first_bad.get_or_insert(seed);
                }
            }
        }
    }
    outcome(
        compared >= 200 && mismatches == 0,
        format!(
            "{compared} instances ({nonempty} with answer sets, {skipped} over the cap skipped), {mismatches} mismatches{}",
            first_bad.map(|s| format!(", first at seed {s}")).unwrap_or_default()
        ),
    )
}

fn has_or(c: &Combination) -> bool {
    match c {
        Combination::Leaf { .. } => false,
        Combination::Or(..) => true,
        Combination::And(a, b) => has_or(a) || has_or(b),
    }
}

fn criterion_7() -> Outcome {
    let params = RandomParams::default();
    let (mut relation_bad, mut optimal_bad, mut or_free_bad, mut with_or) = (0, 0, 0, 0);
    let instances = 250u64;
    let mut first_bad = None;
    for seed in 0..instances {
        let g = ground(&gen_random(seed, params, true)).expect("safe");
        let sets = answer_sets(&g, &SolverConfig::default()).expect("solves");
        let classical = classical_rank(&ClassicalProgram::from_ground(&g).expect("classical")).expect("small");
        let index: Vec<Option<usize>> = sets
            .iter()
            .map(|h| {
                let atoms: BTreeSet<Literal> = h.iter().map(|(l, _)| l.clone()).collect();
                classical.answer_sets.iter().position(|m| *m == atoms)
            })
            .collect();
        let uses_or = g.pref_rules.iter().any(|r| r.head.iter().any(has_or));
        with_or += usize::from(uses_or);
        if index.iter().any(Option::is_none) || sets.len() != classical.answer_sets.len() {
            relation_bad += 1;
            continue;
        }
        let index: Vec<usize> = index.into_iter().flatten().collect();
        let n = sets.len();
        let mut same = true;
        for i in 0..n {
            for j in 0..n {
                if pareto_compare(&sets[i], &sets[j], &g.pref_rules) != classical.relation[index[i]][index[j]] {
                    same = false;
                }
            }
        }
        let prob_opt: BTreeSet<usize> = (0..n)
            .filter(|&j| (0..n).all(|i| pareto_compare(&sets[i], &sets[j], &g.pref_rules) != Ordering3::StrictFirst))
            .map(|j| index[j])
            .collect();
        let classical_opt: BTreeSet<usize> = classical.pareto_optimal().into_iter().collect();
        if !same {
            relation_bad += 1;
            or_free_bad += usize::from(!uses_or);
            first_bad.get_or_insert(seed);
        }
        if prob_opt != classical_opt {
            optimal_bad += 1;
        }
    }
    outcome(
        relation_bad == 0 && optimal_bad == 0,
        format!(
            "{instances} instances: {relation_bad} relation mismatches ({or_free_bad} without `||`; {with_or} instances use `||`), {optimal_bad} Pareto-optimal mismatches{}",
            first_bad.map(|s| format!(", first at seed {s}")).unwrap_or_default()
        ),
    )
}

fn runner() -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn interval() -> impl Strategy<Value = ProbInterval> {
    (0u32..=20, 0u32..=20).prop_map(|(a, b)| {
        let (lo, hi) = (a.min(b), a.max(b));
        ProbInterval::from_decimals(&format!("{}", lo as f64 / 20.0), &format!("{}", hi as f64 / 20.0))
    })
}

fn interpretation() -> impl Strategy<Value = PInterpretation> {
    proptest::collection::vec(proptest::option::of(interval()), 3).prop_map(|vals| {
        vals.into_iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (Literal::ground(&format!("p{i}"), &[]), v)))
            .collect()
    })
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |name: &str, result: Result<(), String>| {
        if let Err(e) = result {
            failures.push(format!("{name}: {e}"));
        }
    };

    check(
        "order laws",
        runner()
            .run(&(interval(), interval(), interval()), |(a, b, c)| {
                prop_assert!(a.truth_leq(&a));
                if a.truth_leq(&b) && b.truth_leq(&a) {
                    prop_assert_eq!(&a, &b);
                }
                if a.truth_leq(&b) && b.truth_leq(&c) {
                    prop_assert!(a.truth_leq(&c));
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    let strategies: Vec<_> =
        builtin().all(StrategyKind::Conjunctive).chain(builtin().all(StrategyKind::Disjunctive)).cloned().collect();
    check(
        "strategy laws",
        runner()
            .run(&(interval(), interval(), interval()), |(a, b, c)| {
                for s in &strategies {
                    let ab = s.compose2(&a, &b);
                    prop_assert_eq!(&ab, &s.compose2(&b, &a), "{} commutes", s.id());
                    prop_assert_eq!(s.compose2(&ab, &c), s.compose2(&a, &s.compose2(&b, &c)), "{} associates", s.id());
                    prop_assert!(ProbInterval::new(ab.lower().clone(), ab.upper().clone()).is_ok());
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    let relations: Vec<std::sync::Arc<dyn PreferenceRelation>> =
        ["pareto", "maximal"].iter().map(|m| paso::prefs::relations().get(m).unwrap()).collect();
    let prefs_case = (any::<u64>(), interpretation(), interpretation());
    check(
        "comparator antisymmetry and reflexivity",
        runner()
            .run(&prefs_case, |(seed, h1, h2)| {
                let params = RandomParams { atoms: 3, rules: 0, pref_rules: 3, ..RandomParams::default() };
                let g = ground(&gen_random(seed, params, false)).unwrap();
                for r in &g.pref_rules {
                    for c in &r.head {
                        prop_assert_eq!(compare_combination(&h1, &h2, c), compare_combination(&h2, &h1, c).reverse());
                        prop_assert_eq!(compare_combination(&h1, &h1, c), Ordering3::Equal);
                    }
                    prop_assert_eq!(compare_rule(&h1, &h2, r), compare_rule(&h2, &h1, r).reverse());
                    prop_assert_eq!(compare_rule(&h1, &h1, r), Ordering3::Equal);
                }
                for rel in &relations {
                    prop_assert_eq!(rel.compare(&h1, &h2, &g.pref_rules), rel.compare(&h2, &h1, &g.pref_rules).reverse());
                    prop_assert_eq!(rel.compare(&h1, &h1, &g.pref_rules), Ordering3::Equal);
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    check(
        "Pareto implies Maximal",
        runner()
            .run(&prefs_case, |(seed, h1, h2)| {
                let params = RandomParams { atoms: 3, rules: 0, pref_rules: 4, ..RandomParams::default() };
                let g = ground(&gen_random(seed, params, false)).unwrap();
                if pareto_compare(&h1, &h2, &g.pref_rules) == Ordering3::StrictFirst {
                    prop_assert_eq!(maximal_compare(&h1, &h2, &g.pref_rules), Ordering3::StrictFirst);
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    let n = failures.len();
    outcome(n == 0, if n == 0 { "4 properties x 1000 cases".to_string() } else { failures.join("; ") })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("intro example answer sets", criterion_1),
        ("weekend instance answer sets", criterion_2),
        ("weekend satisfaction table", criterion_3),
        ("weekend Maximal strata", criterion_4),
        ("weekend Pareto top", criterion_5),
        ("solver agrees with brute-force oracle", criterion_6),
        ("classical embedding under Pareto", criterion_7),
        ("algebra property suite", criterion_8),
    ];
    let suite_start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {}: {status}: {name}: {} [{:.2?}]", i + 1, o.detail, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, suite_start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
