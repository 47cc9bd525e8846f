//! Reference implementations for cross-checking the solver and the preference
//! relations. Nothing here is tuned for speed.

mod brute;
mod classical;
mod random;

use thiserror::Error;

pub use brute::{brute_answer_sets, BRUTE_CAP};
pub use classical::{
    classical_pareto, classical_rank, degree, ClassicalCombination, ClassicalPrefRule, ClassicalProgram,
    ClassicalRanking, ClassicalRule,
};
pub use random::{gen_random, RandomParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle ({} candidates, cap {cap})", candidates.map_or("overflowing".to_string(), |n| n.to_string()))]
    TooLarge { candidates: Option<u64>, cap: u64 },
    #[error("not a classical program: {0} is not a plain [1,1] literal")]
    NotClassical(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground;
    use crate::interp::PInterpretation;
    use crate::parser::parse_program;
    use crate::prefs::Ordering3;
    use crate::syntax::Literal;

    fn g(src: &str) -> crate::ground::GroundProgram {
        ground(&parse_program(src).unwrap()).unwrap()
    }

    #[test]
    fn brute_intro_and_empty() {
        assert_eq!(brute_answer_sets(&g("service(a,s1,d):0.7 | service(a,s2,d):0.4.")).unwrap().len(), 2);
        assert_eq!(brute_answer_sets(&g("")).unwrap(), [PInterpretation::new()]);
        assert!(brute_answer_sets(&g("a:0.5 :- not a:0.5.")).unwrap().is_empty());
    }

    #[test]
    fn classical_choice() {
        let p = ClassicalProgram::from_ground(&g("a | b. a >> b.")).unwrap();
        let r = classical_rank(&p).unwrap();
        let a: std::collections::BTreeSet<Literal> = [Literal::ground("a", &[])].into();
        assert_eq!(r.answer_sets[0], a);
        assert_eq!(r.relation[0][1], Ordering3::StrictFirst);
        assert_eq!(r.pareto_optimal(), [0]);
    }

    #[test]
    fn classical_without_preferences_is_flat() {
        let p = ClassicalProgram::from_ground(&g("a | b | c.")).unwrap();
        let r = classical_rank(&p).unwrap();
        assert_eq!(r.answer_sets.len(), 3);
        assert!(r.relation.iter().flatten().all(|o| *o == Ordering3::Equal));
    }

    #[test]
    fn annotated_programs_are_not_classical() {
        assert!(matches!(ClassicalProgram::from_ground(&g("a:0.5.")), Err(OracleError::NotClassical(_))));
    }

    #[test]
    fn generator_is_deterministic_and_bounded() {
        let params = RandomParams { atoms: 3, rules: 4, ..Default::default() };
        let a = gen_random(7, params, false).to_string();
        assert_eq!(a, gen_random(7, params, false).to_string());
        let p = gen_random(7, params, false);
        assert_eq!(p.generator_rules.len(), 4);
        let atoms: std::collections::BTreeSet<String> = p
            .generator_rules
            .iter()
            .flat_map(|r| r.head.iter().map(|h| h.atom.predicate.clone()))
            .collect();
        assert!(atoms.len() <= 3);
        let c = gen_random(7, params, true);
        assert!(ClassicalProgram::from_ground(&ground(&c).unwrap()).is_ok(), "{c}");
    }
}
