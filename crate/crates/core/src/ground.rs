//! Herbrand instantiation of programs.
//!
//! Each rule's object variables range over the constants occurring in the
//! program, except variables with a `#domain` declaration, which range over the
//! declared constants only. Instances are produced in source order, then in
//! lexicographic substitution order (variables sorted by name, first variable
//! most significant). Instances whose comparisons fail are dropped.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::annotation::Annotation;
use crate::strategy::{default_tau, StrategyRef};
use crate::syntax::{
    AnnotatedFormula, Body, CompareOp, Combination, Comparison, DomainDecl, GeneratorRule, HeadAtom, HybridFormula,
    Literal, PreferenceRule, Program, StrategyDecl, Term,
};

/// Identifies a rule of a [`Program`] for diagnostics. Both numberings are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleRef {
    Generator(usize),
    Preference(usize),
}

impl fmt::Display for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleRef::Generator(i) => write!(f, "generator rule {i}"),
            RuleRef::Preference(i) => write!(f, "preference rule r{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiagnosticKind {
    /// Object variable not bound by a positive body literal, an equality with a
    /// bound term, or a `#domain` declaration.
    UnsafeVariable(String),
    /// Annotation variable without a binder (`F:V` in the positive body).
    UnboundAnnotationVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub rule: RuleRef,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DiagnosticKind::UnsafeVariable(v) => write!(f, "{}: unsafe variable {v}", self.rule),
            DiagnosticKind::UnboundAnnotationVariable(v) => {
                write!(f, "{}: annotation variable {v} has no positive binder", self.rule)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("unsafe program:\n{}", .0.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n"))]
    Unsafe(Vec<Diagnostic>),
    #[error("{0} has variables but the program has no constants")]
    EmptyUniverse(RuleRef),
    #[error("#domain {0} declared more than once")]
    DomainRedeclared(String),
    #[error("#strategy for predicate {0} declared with conflicting strategies")]
    ConflictingStrategy(String),
    #[error("{0}: head annotations must be variable-free")]
    HeadAnnotationVariable(RuleRef),
}

/// A variable-free program with its τ mapping and atom table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GeneratorRule>,
    pub pref_rules: Vec<PreferenceRule>,
    /// Disjunctive strategy per head atom.
    pub tau: BTreeMap<Literal, StrategyRef>,
    /// Every ground literal occurring in the program, sorted.
    pub atoms: Vec<Literal>,
    pub strategy_decls: Vec<StrategyDecl>,
}

impl GroundProgram {
    /// τ of an atom; atoms outside every head fall back to the default.
    pub fn tau_of(&self, atom: &Literal) -> StrategyRef {
        self.tau.get(atom).cloned().unwrap_or_else(default_tau)
    }

    /// Head atoms in atom-table order.
    pub fn head_atoms(&self) -> Vec<&Literal> {
        self.tau.keys().collect()
    }

    /// The ground program as a [`Program`]; grounding it again is the identity.
    pub fn to_program(&self) -> Program {
        Program {
            generator_rules: self.rules.clone(),
            preference_rules: self.pref_rules.clone(),
            strategies: self.strategy_decls.clone(),
            domains: Vec::new(),
        }
    }
}

struct RuleVars {
    object: Vec<String>,
    bound: BTreeSet<String>,
}

fn lits_of_body(body: &Body) -> impl Iterator<Item = &Literal> {
    body.formulas().flat_map(|f| f.formula.literals())
}

fn combination_lits(c: &Combination) -> Vec<&Literal> {
    c.leaves().into_iter().flat_map(|l| l.formula.literals()).collect()
}

fn push_vars<'a>(out: &mut Vec<String>, lits: impl IntoIterator<Item = &'a Literal>) {
    for l in lits {
        for v in l.vars() {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        }
    }
}

fn rule_vars<'a>(
    head_lits: Vec<&'a Literal>,
    body: &'a Body,
    domains: &BTreeMap<&str, &DomainDecl>,
) -> RuleVars {
    let mut object = Vec::new();
    push_vars(&mut object, head_lits);
    push_vars(&mut object, lits_of_body(body));
    for c in &body.comparisons {
        for t in [&c.left, &c.right] {
            if let Term::Var(v) = t {
                if !object.contains(v) {
                    object.push(v.clone());
                }
            }
        }
    }
    let mut bound: BTreeSet<String> = body
        .positive
        .iter()
        .flat_map(|f| f.formula.literals())
        .flat_map(|l| l.vars().map(str::to_string))
        .collect();
    bound.extend(object.iter().filter(|v| domains.contains_key(v.as_str())).cloned());
    loop {
        let before = bound.len();
        for c in body.comparisons.iter().filter(|c| c.op == CompareOp::Eq) {
            let known = |t: &Term| match t {
                Term::Const(_) => true,
                Term::Var(v) => bound.contains(v),
            };
            let newly: Vec<String> = match (&c.left, &c.right) {
                (Term::Var(v), other) | (other, Term::Var(v)) if known(other) && !bound.contains(v) => {
                    vec![v.clone()]
                }
                _ => vec![],
            };
            bound.extend(newly);
        }
        if bound.len() == before {
            break;
        }
    }
    RuleVars { object, bound }
}

fn annotation_diagnostics(rule: RuleRef, annotations: Vec<&Annotation>, body: &Body, out: &mut Vec<Diagnostic>) {
    let binders: HashSet<&str> = body.positive.iter().filter_map(|f| f.annotation.binder_var()).collect();
    let mut seen = BTreeSet::new();
    for a in annotations {
        for v in a.vars() {
            if !binders.contains(v) && seen.insert(v.to_string()) {
                out.push(Diagnostic { rule, kind: DiagnosticKind::UnboundAnnotationVariable(v.to_string()) });
            }
        }
    }
}

/// Safety diagnostics for every rule; empty iff the program can be grounded
/// safely.
pub fn check_safety(program: &Program) -> Vec<Diagnostic> {
    let domains: BTreeMap<&str, &DomainDecl> = program.domains.iter().map(|d| (d.var.as_str(), d)).collect();
    let mut out = Vec::new();
    let mut check = |rule: RuleRef, head_lits: Vec<&Literal>, head_annotations: Vec<&Annotation>, body: &Body| {
        let vars = rule_vars(head_lits, body, &domains);
        for v in vars.object.iter().filter(|v| !vars.bound.contains(*v)) {
            out.push(Diagnostic { rule, kind: DiagnosticKind::UnsafeVariable(v.clone()) });
        }
        let mut annotations = head_annotations;
        annotations.extend(body.formulas().map(|f| &f.annotation));
        annotation_diagnostics(rule, annotations, body, &mut out);
    };
    for (i, r) in program.generator_rules.iter().enumerate() {
        check(
            RuleRef::Generator(i + 1),
            r.head.iter().map(|h| &h.atom).collect(),
            r.head.iter().map(|h| &h.annotation).collect(),
            &r.body,
        );
    }
    for (i, r) in program.preference_rules.iter().enumerate() {
        let lits: Vec<&Literal> = r.head.iter().flat_map(combination_lits).collect();
        let annotations: Vec<&Annotation> =
            r.head.iter().flat_map(|c| c.leaves()).map(|l| &l.annotation).collect();
        check(RuleRef::Preference(i + 1), lits, annotations, &r.body);
    }
    out
}

type Subst = BTreeMap<String, String>;

fn subst_literal(l: &Literal, s: &Subst) -> Literal {
    Literal {
        predicate: l.predicate.clone(),
        negated: l.negated,
        terms: l
            .terms
            .iter()
            .map(|t| match t {
                Term::Var(v) => Term::Const(s[v].clone()),
                c => c.clone(),
            })
            .collect(),
    }
}

fn subst_formula(f: &AnnotatedFormula, s: &Subst) -> AnnotatedFormula {
    let formula = match &f.formula {
        HybridFormula::Single(l) => HybridFormula::Single(subst_literal(l, s)),
        HybridFormula::Compound { strategy, parts } => {
            // Instances may make two parts identical; a formula is over distinct literals.
            let mut distinct: Vec<Literal> = Vec::with_capacity(parts.len());
            for p in parts.iter().map(|p| subst_literal(p, s)) {
                if !distinct.contains(&p) {
                    distinct.push(p);
                }
            }
            if distinct.len() == 1 {
                HybridFormula::Single(distinct.pop().unwrap())
            } else {
                HybridFormula::Compound { strategy: strategy.clone(), parts: distinct }
            }
        }
    };
    AnnotatedFormula { formula, annotation: f.annotation.fold_constants() }
}

fn subst_term(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Var(v) => Term::Const(s[v].clone()),
        c => c.clone(),
    }
}

/// Grounds the body; `None` when a comparison fails.
fn subst_body(b: &Body, s: &Subst) -> Option<Body> {
    for c in &b.comparisons {
        let ground = Comparison { left: subst_term(&c.left, s), op: c.op, right: subst_term(&c.right, s) };
        if !ground.eval_ground().expect("comparison is ground") {
            return None;
        }
    }
    Some(Body {
        positive: b.positive.iter().map(|f| subst_formula(f, s)).collect(),
        naf: b.naf.iter().map(|f| subst_formula(f, s)).collect(),
        comparisons: Vec::new(),
    })
}

/// All substitutions for `vars` (sorted by name) in lexicographic order.
fn substitutions(vars: &[String], domain_of: impl Fn(&str) -> Vec<String>) -> Vec<Subst> {
    let mut sorted: Vec<&String> = vars.iter().collect();
    sorted.sort();
    let domains: Vec<Vec<String>> = sorted.iter().map(|v| domain_of(v)).collect();
    if domains.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; sorted.len()];
    loop {
        out.push(sorted.iter().zip(&idx).zip(&domains).map(|((v, &i), d)| ((*v).clone(), d[i].clone())).collect());
        let mut k = sorted.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Grounds a safe program.
pub fn ground(program: &Program) -> Result<GroundProgram, GroundError> {
    let diagnostics = check_safety(program);
    if !diagnostics.is_empty() {
        return Err(GroundError::Unsafe(diagnostics));
    }

    let mut domains: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for d in &program.domains {
        let mut consts = d.constants.clone();
        consts.sort();
        consts.dedup();
        if domains.insert(&d.var, consts).is_some() {
            return Err(GroundError::DomainRedeclared(d.var.clone()));
        }
    }
    let mut tau_decls: BTreeMap<&str, &StrategyRef> = BTreeMap::new();
    for s in &program.strategies {
        if let Some(prev) = tau_decls.insert(&s.predicate, &s.strategy) {
            if *prev != s.strategy {
                return Err(GroundError::ConflictingStrategy(s.predicate.clone()));
            }
        }
    }

    let universe: Vec<String> = program.constants().into_iter().collect();
    let domain_of = |v: &str| domains.get(v).cloned().unwrap_or_else(|| universe.clone());
    let no_domains = BTreeMap::new();

    let mut rules = Vec::new();
    let mut seen_rules = HashSet::new();
    for (i, r) in program.generator_rules.iter().enumerate() {
        let rule_ref = RuleRef::Generator(i + 1);
        if r.head.iter().any(|h| !h.annotation.is_constant()) {
            return Err(GroundError::HeadAnnotationVariable(rule_ref));
        }
        let vars = rule_vars(r.head.iter().map(|h| &h.atom).collect(), &r.body, &no_domains).object;
        if !vars.is_empty() && universe.is_empty() && vars.iter().any(|v| !domains.contains_key(v.as_str())) {
            return Err(GroundError::EmptyUniverse(rule_ref));
        }
        for s in substitutions(&vars, domain_of) {
            let Some(body) = subst_body(&r.body, &s) else { continue };
            let head = r
                .head
                .iter()
                .map(|h| HeadAtom { atom: subst_literal(&h.atom, &s), annotation: h.annotation.fold_constants() })
                .collect();
            let rule = GeneratorRule { head, body };
            if seen_rules.insert(rule.clone()) {
                rules.push(rule);
            }
        }
    }

    let mut pref_rules = Vec::new();
    let mut seen_prefs = HashSet::new();
    for (i, r) in program.preference_rules.iter().enumerate() {
        let rule_ref = RuleRef::Preference(i + 1);
        let head_lits: Vec<&Literal> = r.head.iter().flat_map(combination_lits).collect();
        let vars = rule_vars(head_lits, &r.body, &no_domains).object;
        if !vars.is_empty() && universe.is_empty() && vars.iter().any(|v| !domains.contains_key(v.as_str())) {
            return Err(GroundError::EmptyUniverse(rule_ref));
        }
        for s in substitutions(&vars, domain_of) {
            let Some(body) = subst_body(&r.body, &s) else { continue };
            let head = r.head.iter().map(|c| c.map_leaves(&mut |leaf| subst_formula(leaf, &s))).collect();
            let rule = PreferenceRule { head, body };
            if seen_prefs.insert(rule.clone()) {
                pref_rules.push(rule);
            }
        }
    }

    let mut tau = BTreeMap::new();
    for r in &rules {
        for h in &r.head {
            let strategy = tau_decls
                .get(h.atom.predicate.as_str())
                .map(|s| (*s).clone())
                .unwrap_or_else(default_tau);
            tau.insert(h.atom.clone(), strategy);
        }
    }

    let mut atoms = BTreeSet::new();
    for r in &rules {
        atoms.extend(r.head.iter().map(|h| h.atom.clone()));
        atoms.extend(lits_of_body(&r.body).cloned());
    }
    for r in &pref_rules {
        atoms.extend(r.head.iter().flat_map(combination_lits).cloned());
        atoms.extend(lits_of_body(&r.body).cloned());
    }

    Ok(GroundProgram {
        rules,
        pref_rules,
        tau,
        atoms: atoms.into_iter().collect(),
        strategy_decls: program.strategies.clone(),
    })
}
