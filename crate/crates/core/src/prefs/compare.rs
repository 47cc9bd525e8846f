//! Satisfaction and pairwise comparison of answer sets under preference rules.

use std::fmt;

use crate::annotation::Bindings;
use crate::interp::{value_of, PInterpretation};
use crate::interval::ProbInterval;
use crate::syntax::{AnnotatedFormula, Body, Combination, PreferenceRule};

/// Outcome of comparing `h1` against `h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ordering3 {
    StrictFirst,
    StrictSecond,
    Equal,
    Incomparable,
}

impl Ordering3 {
    /// The same comparison seen from `h2`.
    pub fn reverse(self) -> Self {
        match self {
            Ordering3::StrictFirst => Ordering3::StrictSecond,
            Ordering3::StrictSecond => Ordering3::StrictFirst,
            other => other,
        }
    }

    /// `h1 ⪰ h2`.
    pub fn first_at_least(self) -> bool {
        matches!(self, Ordering3::StrictFirst | Ordering3::Equal)
    }

    /// `h2 ⪰ h1`.
    pub fn second_at_least(self) -> bool {
        matches!(self, Ordering3::StrictSecond | Ordering3::Equal)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Ordering3::StrictFirst => ">",
            Ordering3::StrictSecond => "<",
            Ordering3::Equal => "=",
            Ordering3::Incomparable => "?",
        }
    }
}

impl fmt::Display for Ordering3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `h ⊨_i r` with the smallest such `i` (1-based), or `h ⊨_irr r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SatisfactionIndex {
    Index(usize),
    Irrelevant,
}

impl fmt::Display for SatisfactionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatisfactionIndex::Index(i) => write!(f, "{i}"),
            SatisfactionIndex::Irrelevant => f.write_str("irr"),
        }
    }
}

fn positive_holds(h: &PInterpretation, item: &AnnotatedFormula, bindings: &Bindings) -> bool {
    let Some(value) = value_of(h, &item.formula) else { return false };
    item.annotation.eval(bindings).is_ok_and(|mu| mu.truth_leq(&value))
}

fn naf_holds(h: &PInterpretation, item: &AnnotatedFormula, bindings: &Bindings) -> bool {
    let Some(value) = value_of(h, &item.formula) else { return true };
    item.annotation.eval(bindings).is_ok_and(|mu| !mu.truth_leq(&value))
}

/// Bindings for a preference body's `F:V` items; `None` if a binder formula is
/// undefined or two binders of one variable disagree.
fn bind(h: &PInterpretation, body: &Body) -> Option<Bindings> {
    let mut bindings = Bindings::new();
    for item in &body.positive {
        if let Some(var) = item.annotation.binder_var() {
            let value = value_of(h, &item.formula)?;
            if bindings.get(var).is_some_and(|prev| *prev != value) {
                return None;
            }
            bindings.insert(var.to_string(), value);
        }
    }
    Some(bindings)
}

/// Bindings of a satisfied preference body, `None` when the body fails.
pub fn pref_body_bindings(h: &PInterpretation, body: &Body) -> Option<Bindings> {
    let bindings = bind(h, body)?;
    let ok = body.positive.iter().all(|i| positive_holds(h, i, &bindings))
        && body.naf.iter().all(|i| naf_holds(h, i, &bindings));
    ok.then_some(bindings)
}

pub fn eval_combination_with(h: &PInterpretation, c: &Combination, bindings: &Bindings) -> bool {
    match c {
        Combination::Leaf { item, naf: false } => positive_holds(h, item, bindings),
        Combination::Leaf { item, naf: true } => naf_holds(h, item, bindings),
        Combination::And(l, r) => eval_combination_with(h, l, bindings) && eval_combination_with(h, r, bindings),
        Combination::Or(l, r) => eval_combination_with(h, l, bindings) || eval_combination_with(h, r, bindings),
    }
}

/// `h ⊨ C` for a combination without annotation variables.
pub fn eval_combination(h: &PInterpretation, c: &Combination) -> bool {
    eval_combination_with(h, c, &Bindings::new())
}

pub fn pref_rule_index(h: &PInterpretation, r: &PreferenceRule) -> SatisfactionIndex {
    let Some(bindings) = pref_body_bindings(h, &r.body) else { return SatisfactionIndex::Irrelevant };
    r.head
        .iter()
        .position(|c| eval_combination_with(h, c, &bindings))
        .map_or(SatisfactionIndex::Irrelevant, |i| SatisfactionIndex::Index(i + 1))
}

fn compare_values(v1: &ProbInterval, v2: &ProbInterval) -> Ordering3 {
    if v1 == v2 {
        Ordering3::Equal
    } else if v2.truth_leq(v1) {
        Ordering3::StrictFirst
    } else if v1.truth_leq(v2) {
        Ordering3::StrictSecond
    } else {
        Ordering3::Incomparable
    }
}

/// One side of a comparison: an interpretation with its body bindings.
#[derive(Clone, Copy)]
pub struct Side<'a> {
    pub h: &'a PInterpretation,
    pub bindings: &'a Bindings,
}

pub fn compare_combination_with(a: Side<'_>, b: Side<'_>, c: &Combination) -> Ordering3 {
    let sat1 = eval_combination_with(a.h, c, a.bindings);
    let sat2 = eval_combination_with(b.h, c, b.bindings);
    match (sat1, sat2) {
        (true, false) => return Ordering3::StrictFirst,
        (false, true) => return Ordering3::StrictSecond,
        (false, false) => return Ordering3::Equal,
        (true, true) => {}
    }
    match c {
        Combination::Leaf { item, naf: false } => {
            let v1 = value_of(a.h, &item.formula).expect("satisfied positive leaf is defined");
            let v2 = value_of(b.h, &item.formula).expect("satisfied positive leaf is defined");
            compare_values(&v1, &v2)
        }
        Combination::Leaf { item, naf: true } => {
            match (value_of(a.h, &item.formula), value_of(b.h, &item.formula)) {
                (None, None) => Ordering3::Equal,
                (None, Some(_)) => Ordering3::StrictFirst,
                (Some(_), None) => Ordering3::StrictSecond,
                // Smaller values are preferred under naf.
                (Some(v1), Some(v2)) => compare_values(&v1, &v2).reverse(),
            }
        }
        Combination::And(l, r) => {
            let parts = [compare_combination_with(a, b, l), compare_combination_with(a, b, r)];
            strict_from_parts(&parts).unwrap_or_else(|| {
                if parts.iter().all(|p| *p == Ordering3::Equal) {
                    Ordering3::Equal
                } else {
                    Ordering3::Incomparable
                }
            })
        }
        Combination::Or(l, r) => {
            let parts = [compare_combination_with(a, b, l), compare_combination_with(a, b, r)];
            strict_from_parts(&parts).unwrap_or_else(|| {
                let first = parts.iter().filter(|p| p.first_at_least()).count();
                let second = parts.iter().filter(|p| p.second_at_least()).count();
                if first == second {
                    Ordering3::Equal
                } else {
                    Ordering3::Incomparable
                }
            })
        }
    }
}

/// Some position strict and every position at least as preferred.
fn strict_from_parts(parts: &[Ordering3]) -> Option<Ordering3> {
    if parts.contains(&Ordering3::StrictFirst) && parts.iter().all(|p| p.first_at_least()) {
        Some(Ordering3::StrictFirst)
    } else if parts.contains(&Ordering3::StrictSecond) && parts.iter().all(|p| p.second_at_least()) {
        Some(Ordering3::StrictSecond)
    } else {
        None
    }
}

/// Comparison w.r.t. a combination without annotation variables.
pub fn compare_combination(h1: &PInterpretation, h2: &PInterpretation, c: &Combination) -> Ordering3 {
    let empty = Bindings::new();
    compare_combination_with(Side { h: h1, bindings: &empty }, Side { h: h2, bindings: &empty }, c)
}

fn first_satisfied<'b>(h: &PInterpretation, r: &PreferenceRule, b: Option<&'b Bindings>) -> Option<(usize, &'b Bindings)> {
    let b = b?;
    r.head.iter().position(|c| eval_combination_with(h, c, b)).map(|i| (i, b))
}

pub fn compare_rule(h1: &PInterpretation, h2: &PInterpretation, r: &PreferenceRule) -> Ordering3 {
    let b1 = pref_body_bindings(h1, &r.body);
    let b2 = pref_body_bindings(h2, &r.body);
    match (first_satisfied(h1, r, b1.as_ref()), first_satisfied(h2, r, b2.as_ref())) {
        (None, None) => Ordering3::Equal,
        (Some(_), None) => Ordering3::StrictFirst,
        (None, Some(_)) => Ordering3::StrictSecond,
        (Some((i, _)), Some((j, _))) if i < j => Ordering3::StrictFirst,
        (Some((i, _)), Some((j, _))) if i > j => Ordering3::StrictSecond,
        (Some((i, x)), Some((_, y))) => {
            compare_combination_with(Side { h: h1, bindings: x }, Side { h: h2, bindings: y }, &r.head[i])
        }
    }
}
