//! Exhaustive answer-set search, written independently of the solver.

use std::collections::BTreeMap;

use crate::annotation::Bindings;
use crate::ground::GroundProgram;
use crate::interp::{value_of, PInterpretation};
use crate::interval::ProbInterval;
use crate::syntax::{Body, GeneratorRule, HybridFormula, Literal};

use super::OracleError;

pub const BRUTE_CAP: u64 = 100_000;
const MAX_OCCURRENCES: usize = 16;

fn read(h: &PInterpretation, f: &HybridFormula) -> ProbInterval {
    value_of(h, f).unwrap_or_else(ProbInterval::zero)
}

fn binders(h: &PInterpretation, body: &Body) -> Option<Bindings> {
    let mut out = Bindings::new();
    for item in &body.positive {
        let Some(v) = item.annotation.binder_var() else { continue };
        let value = value_of(h, &item.formula)?;
        if let Some(old) = out.insert(v.to_string(), value.clone()) {
            if old != value {
                return None;
            }
        }
    }
    Some(out)
}

fn body_holds(h: &PInterpretation, body: &Body) -> bool {
    let Some(b) = binders(h, body) else { return false };
    for item in &body.positive {
        if item.annotation.binder_var().is_some() {
            continue;
        }
        match item.annotation.eval(&b) {
            Ok(mu) if mu.truth_leq(&read(h, &item.formula)) => {}
            _ => return false,
        }
    }
    for item in &body.naf {
        match item.annotation.eval(&b) {
            Ok(mu) if !mu.truth_leq(&read(h, &item.formula)) => {}
            _ => return false,
        }
    }
    true
}

fn head_mu(rule: &GeneratorRule, i: usize) -> ProbInterval {
    rule.head[i].annotation.eval(&Bindings::new()).expect("ground head annotation")
}

fn is_model(h: &PInterpretation, rules: &[GeneratorRule], g: &GroundProgram) -> bool {
    let mut support: BTreeMap<Literal, Vec<ProbInterval>> = BTreeMap::new();
    for r in rules {
        if !body_holds(h, &r.body) {
            continue;
        }
        let mut any = false;
        for (i, d) in r.head.iter().enumerate() {
            let mu = head_mu(r, i);
            if mu.truth_leq(&h.read(&d.atom)) {
                any = true;
                support.entry(d.atom.clone()).or_default().push(mu);
            }
        }
        if !any {
            return false;
        }
    }
    for (atom, mus) in &support {
        let total = g.tau_of(atom).compose(mus).expect("non-empty");
        if !total.truth_leq(&h.read(atom)) {
            return false;
        }
    }
    // Compound formulas of the program text: the composed part values bound the formula.
    for r in rules {
        for item in r.body.formulas() {
            if let HybridFormula::Compound { strategy, parts } = &item.formula {
                let vals: Vec<ProbInterval> = parts.iter().map(|p| h.read(p)).collect();
                if !strategy.compose(&vals).expect("two parts").truth_leq(&read(h, &item.formula)) {
                    return false;
                }
            }
        }
    }
    true
}

fn reduct(g: &GroundProgram, h: &PInterpretation) -> Vec<GeneratorRule> {
    let mut out = Vec::new();
    for r in &g.rules {
        let keep = if r.body.naf.is_empty() {
            true
        } else {
            match binders(h, &r.body) {
                None => false,
                Some(b) => r.body.naf.iter().all(|item| match item.annotation.eval(&b) {
                    Ok(mu) => !mu.truth_leq(&read(h, &item.formula)),
                    Err(_) => false,
                }),
            }
        };
        if keep {
            let mut stripped = r.clone();
            stripped.body.naf.clear();
            out.push(stripped);
        }
    }
    out
}

/// Per head atom: τ-compositions of every non-empty sub-multiset of its head
/// annotations, listed by subset mask.
fn cells(g: &GroundProgram) -> Result<Vec<(Literal, Vec<ProbInterval>)>, OracleError> {
    let mut occurrences: BTreeMap<Literal, Vec<ProbInterval>> = BTreeMap::new();
    for r in &g.rules {
        for (i, d) in r.head.iter().enumerate() {
            occurrences.entry(d.atom.clone()).or_default().push(head_mu(r, i));
        }
    }
    let mut out = Vec::new();
    for (atom, mus) in occurrences {
        if mus.len() > MAX_OCCURRENCES {
            return Err(OracleError::TooLarge { candidates: None, cap: BRUTE_CAP });
        }
        let tau = g.tau_of(&atom);
        let mut values: Vec<ProbInterval> = Vec::new();
        for mask in 1u32..(1 << mus.len()) {
            let subset: Vec<&ProbInterval> =
                mus.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, m)| m).collect();
            let v = tau.compose(subset).expect("non-empty subset");
            if !v.is_zero() && !values.contains(&v) {
                values.push(v);
            }
        }
        out.push((atom, values));
    }
    Ok(out)
}

fn all_candidates(cells: &[(Literal, Vec<ProbInterval>)]) -> Vec<PInterpretation> {
    match cells.split_first() {
        None => vec![PInterpretation::new()],
        Some(((atom, values), rest)) => {
            let tails = all_candidates(rest);
            let mut out = tails.clone();
            for v in values {
                out.extend(tails.iter().map(|t| t.clone().with(atom.clone(), v.clone())));
            }
            out
        }
    }
}

/// Every answer set of `g`, sorted like the solver's output.
pub fn brute_answer_sets(g: &GroundProgram) -> Result<Vec<PInterpretation>, OracleError> {
    let cells = cells(g)?;
    let count = cells.iter().try_fold(1u64, |acc, (_, v)| acc.checked_mul(v.len() as u64 + 1));
    match count {
        Some(n) if n <= BRUTE_CAP => {}
        n => return Err(OracleError::TooLarge { candidates: n, cap: BRUTE_CAP }),
    }
    let candidates = all_candidates(&cells);
    let mut out = Vec::new();
    for h in &candidates {
        if !is_model(h, &g.rules, g) {
            continue;
        }
        let rh = reduct(g, h);
        if !is_model(h, &rh, g) {
            continue;
        }
        let minimal = candidates.iter().all(|other| !(other.truth_lt(h) && is_model(other, &rh, g)));
        if minimal {
            out.push(h.clone());
        }
    }
    out.sort();
    Ok(out)
}
