use std::collections::BTreeMap;

use crate::ground::GroundProgram;
use crate::interp::PInterpretation;
use crate::strategy::StrategyRef;
use crate::syntax::{Body, GeneratorRule, Literal};

use super::satisfaction::{bind_body, satisfies_naf};

/// The naf-free program kept for a given interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduct {
    pub rules: Vec<GeneratorRule>,
    pub tau: BTreeMap<Literal, StrategyRef>,
}

/// Whether a rule survives the reduct w.r.t. `h`. Annotation variables in naf
/// items take their values from the positive binders under `h`; a rule whose
/// binders fail under `h` is dropped, which matches its body being false.
pub(crate) fn survives(h: &PInterpretation, rule: &GeneratorRule) -> bool {
    if rule.body.naf.is_empty() {
        return true;
    }
    match bind_body(h, &rule.body) {
        Some(bindings) => rule.body.naf.iter().all(|item| satisfies_naf(h, item, &bindings)),
        None => false,
    }
}

pub(crate) fn strip_naf(rule: &GeneratorRule) -> GeneratorRule {
    GeneratorRule {
        head: rule.head.clone(),
        body: Body { positive: rule.body.positive.clone(), naf: Vec::new(), comparisons: Vec::new() },
    }
}

pub fn compute_reduct(g: &GroundProgram, h: &PInterpretation) -> Reduct {
    Reduct {
        rules: g.rules.iter().filter(|r| survives(h, r)).map(strip_naf).collect(),
        tau: g.tau.clone(),
    }
}
