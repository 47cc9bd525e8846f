//! Seeded random programs for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annotation::{Annotation, AnnotationItem};
use crate::interval::ProbInterval;
use crate::strategy::{builtin, StrategyKind};
use crate::syntax::{
    AnnotatedFormula, Body, Combination, GeneratorRule, HeadAtom, HybridFormula, Literal, PreferenceRule, Program,
    StrategyDecl,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub atoms: usize,
    pub rules: usize,
    pub pref_rules: usize,
    pub max_head: usize,
    pub max_body: usize,
    pub max_combinations: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { atoms: 4, rules: 5, pref_rules: 3, max_head: 2, max_body: 2, max_combinations: 3 }
    }
}

const POINTS: [&str; 6] = ["0.2", "0.3", "0.5", "0.6", "0.8", "1"];

struct Gen {
    rng: ChaCha8Rng,
    params: RandomParams,
    classical: bool,
    fresh: usize,
}

impl Gen {
    fn atom(&mut self) -> Literal {
        Literal::ground(&format!("p{}", self.rng.gen_range(0..self.params.atoms.max(1))), &[])
    }

    fn distinct_atoms(&mut self, n: usize) -> Vec<Literal> {
        let mut all: Vec<usize> = (0..self.params.atoms.max(1)).collect();
        all.shuffle(&mut self.rng);
        all.into_iter().take(n).map(|i| Literal::ground(&format!("p{i}"), &[])).collect()
    }

    fn annotation(&mut self) -> Annotation {
        if self.classical {
            return Annotation::one();
        }
        let a = POINTS[self.rng.gen_range(0..POINTS.len())];
        if self.rng.gen_bool(0.1) {
            let b = POINTS[self.rng.gen_range(0..POINTS.len())];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Annotation::constant(&ProbInterval::from_decimals(lo, hi))
        } else {
            Annotation::constant(&ProbInterval::from_decimals(a, a))
        }
    }

    fn formula(&mut self) -> HybridFormula {
        if !self.classical && self.params.atoms >= 2 && self.rng.gen_bool(0.2) {
            let kind = if self.rng.gen_bool(0.5) { StrategyKind::Conjunctive } else { StrategyKind::Disjunctive };
            let strategies: Vec<_> = builtin().all(kind).collect();
            let strategy = strategies[self.rng.gen_range(0..strategies.len())].clone();
            HybridFormula::Compound { strategy, parts: self.distinct_atoms(2) }
        } else {
            HybridFormula::Single(self.atom())
        }
    }

    fn body(&mut self, max: usize) -> Body {
        let mut body = Body::default();
        for _ in 0..self.rng.gen_range(0..=max) {
            let formula = self.formula();
            if self.rng.gen_bool(0.4) {
                let annotation = self.annotation();
                body.naf.push(AnnotatedFormula { formula, annotation });
            } else if !self.classical && self.rng.gen_bool(0.15) {
                self.fresh += 1;
                let binder = Annotation::point(AnnotationItem::Var(format!("V{}", self.fresh)));
                body.positive.push(AnnotatedFormula { formula, annotation: binder });
            } else {
                let annotation = self.annotation();
                body.positive.push(AnnotatedFormula { formula, annotation });
            }
        }
        body
    }

    fn generator_rule(&mut self) -> GeneratorRule {
        let k = self.rng.gen_range(1..=self.params.max_head.clamp(1, self.params.atoms.max(1)));
        let head = self
            .distinct_atoms(k)
            .into_iter()
            .map(|atom| HeadAtom { atom, annotation: self.annotation() })
            .collect();
        let max_body = self.params.max_body;
        GeneratorRule { head, body: self.body(max_body) }
    }

    fn leaf(&mut self) -> Combination {
        let item = AnnotatedFormula { formula: HybridFormula::Single(self.atom()), annotation: self.annotation() };
        if self.rng.gen_bool(0.25) {
            Combination::naf_leaf(item)
        } else {
            Combination::leaf(item)
        }
    }

    fn combination(&mut self) -> Combination {
        match self.rng.gen_range(0..4) {
            0 => Combination::and(self.leaf(), self.leaf()),
            1 => Combination::or(self.leaf(), self.leaf()),
            _ => self.leaf(),
        }
    }

    fn preference_rule(&mut self) -> PreferenceRule {
        let k = self.rng.gen_range(1..=self.params.max_combinations.max(1));
        let head = (0..k).map(|_| self.combination()).collect();
        PreferenceRule { head, body: self.body(1) }
    }
}

/// A small random program, identical for identical arguments. Classical mode
/// uses `[1,1]` everywhere and plain literals only.
pub fn gen_random(seed: u64, params: RandomParams, classical: bool) -> Program {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), params, classical, fresh: 0 };
    let mut program = Program::default();
    if !classical {
        let taus: Vec<_> = builtin().all(StrategyKind::Disjunctive).collect();
        for i in 0..params.atoms {
            if g.rng.gen_bool(0.3) {
                let strategy = taus[g.rng.gen_range(0..taus.len())].clone();
                program.strategies.push(StrategyDecl { predicate: format!("p{i}"), strategy });
            }
        }
    }
    program.generator_rules = (0..params.rules).map(|_| g.generator_rule()).collect();
    program.preference_rules = (0..params.pref_rules).map(|_| g.preference_rule()).collect();
    program
}
