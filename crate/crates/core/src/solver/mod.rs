//! Probability answer sets by guess and check over a finite candidate lattice.
//!
//! Candidates assign each head atom either nothing or a value from its lattice
//! cell. A candidate `h` is an answer set when it is a p-model of the program
//! and of its reduct `R^h`, and no smaller lattice candidate models `R^h`.

mod lattice;
mod reduct;
mod satisfaction;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::ground::GroundProgram;
use crate::interp::PInterpretation;
use crate::interval::ProbInterval;
use crate::syntax::{GeneratorRule, Literal};

pub use lattice::{enumerate_candidates, CandidateLattice};
pub use reduct::{compute_reduct, Reduct};
pub use satisfaction::{bind_body, is_p_model, satisfies_body, satisfies_head, satisfies_naf, satisfies_positive, satisfies_rule};

pub const DEFAULT_MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_candidates: u64,
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_candidates: DEFAULT_MAX_CANDIDATES, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search space of {} candidates exceeds the cap of {cap}", candidates.map_or("more than 2^64".to_string(), |n| n.to_string()))]
    ResourceLimit { candidates: Option<u64>, cap: u64 },
}

/// Rules whose positive body mentions a formula over non-head atoms only can
/// never fire (such formulas are undefined in every candidate). Removing them
/// changes neither satisfaction nor support.
fn live_rules(g: &GroundProgram) -> Vec<&GeneratorRule> {
    let heads: BTreeSet<&Literal> = g.rules.iter().flat_map(|r| r.head.iter().map(|d| &d.atom)).collect();
    g.rules
        .iter()
        .filter(|r| {
            !r.body.positive.iter().any(|item| {
                let never_defined = item.formula.literals().iter().all(|l| !heads.contains(l));
                let needs_value = item.annotation.binder_var().is_some()
                    || item
                        .annotation
                        .as_constant()
                        .and_then(Result::ok)
                        .is_some_and(|mu| !mu.truth_leq(&ProbInterval::zero()));
                never_defined && needs_value
            })
        })
        .collect()
}

fn is_answer_set(h: &PInterpretation, rules: &[&GeneratorRule], g: &GroundProgram, lattice: &CandidateLattice) -> bool {
    let tau = |l: &Literal| g.tau_of(l);
    if !is_p_model(h, rules.iter().copied(), &tau) {
        return false;
    }
    let reduct: Vec<GeneratorRule> =
        rules.iter().filter(|r| reduct::survives(h, r)).map(|r| reduct::strip_naf(r)).collect();
    if !is_p_model(h, &reduct, &tau) {
        return false;
    }
    lattice.strictly_below(h).iter().all(|smaller| !is_p_model(smaller, &reduct, &tau))
}

/// All probability answer sets of `g`, sorted by [`PInterpretation`]'s order.
pub fn answer_sets(g: &GroundProgram, config: &SolverConfig) -> Result<Vec<PInterpretation>, SolveError> {
    let lattice = CandidateLattice::build(g, config.max_candidates)?;
    let total = lattice::checked_total(&lattice, config.max_candidates)?;
    let rules = live_rules(g);
    let check = |i: u64| {
        let h = lattice.decode(i);
        is_answer_set(&h, &rules, g, &lattice).then_some(h)
    };
    let mut out: Vec<PInterpretation> = if config.parallel {
        (0..total).into_par_iter().filter_map(check).collect()
    } else {
        (0..total).filter_map(check).collect()
    };
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground;
    use crate::parser::parse_program;

    fn solve(src: &str) -> Vec<PInterpretation> {
        let g = ground(&parse_program(src).unwrap()).unwrap();
        let seq = answer_sets(&g, &SolverConfig { parallel: false, ..Default::default() }).unwrap();
        let par = answer_sets(&g, &SolverConfig::default()).unwrap();
        assert_eq!(seq, par);
        seq
    }

    fn p(v: &str) -> ProbInterval {
        ProbInterval::from_decimals(v, v)
    }

    #[test]
    fn intro_program() {
        let sets = solve("service(a,s1,d):0.7 | service(a,s2,d):0.4.");
        let s = |x| Literal::ground("service", &["a", x, "d"]);
        assert_eq!(
            sets,
            [PInterpretation::new().with(s("s1"), p("0.7")), PInterpretation::new().with(s("s2"), p("0.4"))]
        );
    }

    #[test]
    fn odd_loop_has_no_answer_set() {
        assert!(solve("a:0.5 :- not a:0.5.").is_empty());
    }

    #[test]
    fn even_loop_has_two() {
        assert_eq!(solve("a :- not b. b :- not a.").len(), 2);
    }

    #[test]
    fn support_is_composed() {
        let sets = solve("#strategy a = ind.\nb. c. a:0.5 :- b. a:0.5 :- c.");
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].get(&Literal::ground("a", &[])), Some(&p("0.75")));
    }

    #[test]
    fn constraint_eliminates() {
        assert!(solve("a. inconsistent :- not inconsistent, a.").is_empty());
        assert_eq!(solve("a | b. inconsistent :- not inconsistent, a.").len(), 1);
    }

    #[test]
    fn unsupported_atoms_stay_undefined() {
        let sets = solve("a :- b.");
        assert_eq!(sets, [PInterpretation::new()]);
    }

    #[test]
    fn dead_rules_are_skipped_without_changing_results() {
        let src = "a:0.4. b :- zz:V. c :- zz:0.";
        let sets = solve(src);
        assert_eq!(sets.len(), 1);
        assert!(sets[0].is_defined(&Literal::ground("c", &[])));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::ground::ground;
    use crate::oracle::{gen_random, RandomParams};
    use proptest::prelude::*;

    fn small(seed: u64) -> GroundProgram {
        let params = RandomParams { atoms: 3, rules: 4, pref_rules: 0, ..RandomParams::default() };
        ground(&gen_random(seed, params, false)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn answer_sets_model_program_and_reduct(seed in any::<u64>()) {
            let g = small(seed);
            let tau = |l: &Literal| g.tau_of(l);
            for h in answer_sets(&g, &SolverConfig::default()).unwrap() {
                prop_assert!(is_p_model(&h, &g.rules, &tau));
                prop_assert!(is_p_model(&h, &compute_reduct(&g, &h).rules, &tau));
            }
        }

        #[test]
        fn sequential_equals_parallel(seed in any::<u64>()) {
            let g = small(seed);
            let seq = answer_sets(&g, &SolverConfig { parallel: false, ..Default::default() }).unwrap();
            prop_assert_eq!(seq, answer_sets(&g, &SolverConfig::default()).unwrap());
        }

        #[test]
        fn rule_order_is_irrelevant(seed in any::<u64>()) {
            let g = small(seed);
            let mut shuffled = g.clone();
            shuffled.rules.reverse();
            let config = SolverConfig::default();
            prop_assert_eq!(answer_sets(&g, &config).unwrap(), answer_sets(&shuffled, &config).unwrap());
        }

        #[test]
        fn reduct_of_naf_free_program_is_itself(seed in any::<u64>(), pick in any::<u64>()) {
            let mut g = small(seed);
            g.rules.retain(|r| r.body.naf.is_empty());
            let lattice = CandidateLattice::build(&g, DEFAULT_MAX_CANDIDATES).unwrap();
            let total = lattice.candidate_count().unwrap();
            let h = lattice.decode(pick % total);
            prop_assert_eq!(compute_reduct(&g, &h).rules, g.rules.clone());
        }
    }
}
