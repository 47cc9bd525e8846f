//! Rule and program satisfaction for p-interpretations.

use std::collections::BTreeMap;

use crate::annotation::{Annotation, Bindings};
use crate::interp::{read_formula, value_of, PInterpretation};
use crate::interval::ProbInterval;
use crate::strategy::StrategyRef;
use crate::syntax::{AnnotatedFormula, Body, GeneratorRule, Literal};

/// Binds the annotation variables of `body` from its positive binder items
/// (`F:V`). `None` when a binder formula is undefined in `h` or two binders of
/// the same variable disagree.
pub fn bind_body(h: &PInterpretation, body: &Body) -> Option<Bindings> {
    let mut bindings = Bindings::new();
    for item in &body.positive {
        if let Some(var) = item.annotation.binder_var() {
            let value = value_of(h, &item.formula)?;
            match bindings.get(var) {
                Some(prev) if *prev != value => return None,
                Some(_) => {}
                None => {
                    bindings.insert(var.to_string(), value);
                }
            }
        }
    }
    Some(bindings)
}

fn annotation_value(annotation: &Annotation, bindings: &Bindings) -> Option<ProbInterval> {
    annotation.eval(bindings).ok()
}

/// `µ ≤_t h(F)` with undefined read as `[0,0]`. Binder items were already
/// checked by [`bind_body`].
pub fn satisfies_positive(h: &PInterpretation, item: &AnnotatedFormula, bindings: &Bindings) -> bool {
    if item.annotation.binder_var().is_some() {
        return true;
    }
    annotation_value(&item.annotation, bindings).is_some_and(|mu| mu.truth_leq(&read_formula(h, &item.formula)))
}

/// `µ ≰_t h(F)`. An annotation that does not evaluate to an interval is never
/// satisfied.
pub fn satisfies_naf(h: &PInterpretation, item: &AnnotatedFormula, bindings: &Bindings) -> bool {
    annotation_value(&item.annotation, bindings).is_some_and(|mu| !mu.truth_leq(&read_formula(h, &item.formula)))
}

pub fn satisfies_body(h: &PInterpretation, body: &Body) -> bool {
    let Some(bindings) = bind_body(h, body) else { return false };
    body.positive.iter().all(|i| satisfies_positive(h, i, &bindings))
        && body.naf.iter().all(|i| satisfies_naf(h, i, &bindings))
}

fn head_constant(annotation: &Annotation) -> ProbInterval {
    match annotation.as_constant() {
        Some(Ok(v)) => v,
        _ => panic!("head annotation {annotation} is not a constant interval"),
    }
}

/// Satisfaction of a single ground rule: the head holds whenever the body does.
pub fn satisfies_rule(h: &PInterpretation, rule: &GeneratorRule) -> bool {
    !satisfies_body(h, &rule.body) || satisfies_head(h, rule)
}

pub fn satisfies_head(h: &PInterpretation, rule: &GeneratorRule) -> bool {
    rule.head.iter().any(|d| head_constant(&d.annotation).truth_leq(&h.read(&d.atom)))
}

/// Whether `h` is a p-model of `rules` under `tau`: every rule is satisfied and,
/// per atom, the τ-composition of the annotations supported by `h` stays below
/// `h(a)`.
pub fn is_p_model<'a>(
    h: &PInterpretation,
    rules: impl IntoIterator<Item = &'a GeneratorRule>,
    tau: &dyn Fn(&Literal) -> StrategyRef,
) -> bool {
    let mut support: BTreeMap<&Literal, Vec<ProbInterval>> = BTreeMap::new();
    for rule in rules {
        if !satisfies_body(h, &rule.body) {
            continue;
        }
        let mut head_ok = false;
        for d in &rule.head {
            let mu = head_constant(&d.annotation);
            if mu.truth_leq(&h.read(&d.atom)) {
                head_ok = true;
                support.entry(&d.atom).or_default().push(mu);
            }
        }
        if !head_ok {
            return false;
        }
    }
    support.into_iter().all(|(atom, mus)| {
        let composed = tau(atom).compose(&mus).expect("support is non-empty");
        composed.truth_leq(&h.read(atom))
    })
}
