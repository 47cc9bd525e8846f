//! Abstract syntax of probability answer set optimization programs.
//!
//! `Display` on every node prints the concrete `.paso` syntax accepted by
//! [`crate::parser::parse_program`].

use std::collections::BTreeSet;
use std::fmt;

use crate::annotation::Annotation;
use crate::strategy::{StrategyKind, StrategyRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Const(s) | Term::Var(s) => s,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An atom or a classically negated atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: String,
    pub terms: Vec<Term>,
    pub negated: bool,
}

impl Literal {
    pub fn atom(predicate: impl Into<String>, terms: Vec<Term>) -> Self {
        Literal { predicate: predicate.into(), terms, negated: false }
    }

    /// Ground atom from a predicate and constant names.
    pub fn ground(predicate: &str, consts: &[&str]) -> Self {
        Self::atom(predicate, consts.iter().map(|c| Term::Const((*c).to_string())).collect())
    }

    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    pub fn is_ground(&self) -> bool {
        self.terms.iter().all(|t| !t.is_var())
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().filter(|t| t.is_var()).map(Term::name)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        if !self.terms.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.terms.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A single literal or a conjunction/disjunction of distinct literals under
/// one p-strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HybridFormula {
    Single(Literal),
    Compound { strategy: StrategyRef, parts: Vec<Literal> },
}

impl HybridFormula {
    pub fn literals(&self) -> &[Literal] {
        match self {
            HybridFormula::Single(l) => std::slice::from_ref(l),
            HybridFormula::Compound { parts, .. } => parts,
        }
    }

    pub fn literals_mut(&mut self) -> &mut [Literal] {
        match self {
            HybridFormula::Single(l) => std::slice::from_mut(l),
            HybridFormula::Compound { parts, .. } => parts,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.literals().iter().all(Literal::is_ground)
    }
}

impl From<Literal> for HybridFormula {
    fn from(l: Literal) -> Self {
        HybridFormula::Single(l)
    }
}

impl fmt::Display for HybridFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HybridFormula::Single(l) => write!(f, "{l}"),
            HybridFormula::Compound { strategy, parts } => {
                let op = match strategy.kind() {
                    StrategyKind::Conjunctive => format!(" ^{} ", strategy.id()),
                    StrategyKind::Disjunctive => format!(" v{} ", strategy.id()),
                };
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(&op)?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `F : µ` as it appears in a rule body or a combination leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnotatedFormula {
    pub formula: HybridFormula,
    pub annotation: Annotation,
}

impl AnnotatedFormula {
    pub fn new(formula: impl Into<HybridFormula>, annotation: Annotation) -> Self {
        AnnotatedFormula { formula: formula.into(), annotation }
    }
}

impl fmt::Display for AnnotatedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.formula)?;
        if self.annotation != Annotation::one() {
            write!(f, ":{}", self.annotation)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompareOp {
    Eq,
    Neq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparison {
    pub left: Term,
    pub op: CompareOp,
    pub right: Term,
}

impl Comparison {
    /// Truth value once both sides are constants.
    pub fn eval_ground(&self) -> Option<bool> {
        match (&self.left, &self.right) {
            (Term::Const(a), Term::Const(b)) => Some(match self.op {
                CompareOp::Eq => a == b,
                CompareOp::Neq => a != b,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            CompareOp::Eq => "==",
            CompareOp::Neq => "!=",
        };
        write!(f, "{} {} {}", self.left, op, self.right)
    }
}

/// Positive items, naf items and term comparisons of a rule body.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Body {
    pub positive: Vec<AnnotatedFormula>,
    pub naf: Vec<AnnotatedFormula>,
    pub comparisons: Vec<Comparison>,
}

impl Body {
    pub fn is_empty(&self) -> bool {
        self.positive.is_empty() && self.naf.is_empty() && self.comparisons.is_empty()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &AnnotatedFormula> {
        self.positive.iter().chain(&self.naf)
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.positive.iter().map(|p| p.to_string()).collect();
        parts.extend(self.naf.iter().map(|n| format!("not {n}")));
        parts.extend(self.comparisons.iter().map(|c| c.to_string()));
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeadAtom {
    pub atom: Literal,
    pub annotation: Annotation,
}

impl fmt::Display for HeadAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atom)?;
        if self.annotation != Annotation::one() {
            write!(f, ":{}", self.annotation)?;
        }
        Ok(())
    }
}

/// `a_1:µ_1 | ... | a_k:µ_k :- body.`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorRule {
    pub head: Vec<HeadAtom>,
    pub body: Body,
}

impl fmt::Display for GeneratorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(|h| h.to_string()).collect();
        f.write_str(&head.join(" | "))?;
        if !self.body.is_empty() {
            write!(f, " :- {}", self.body)?;
        }
        f.write_str(".")
    }
}

/// And/or tree over annotated hybrid literals; naf only at the leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Combination {
    Leaf { item: AnnotatedFormula, naf: bool },
    And(Box<Combination>, Box<Combination>),
    Or(Box<Combination>, Box<Combination>),
}

impl Combination {
    pub fn leaf(item: AnnotatedFormula) -> Self {
        Combination::Leaf { item, naf: false }
    }

    pub fn naf_leaf(item: AnnotatedFormula) -> Self {
        Combination::Leaf { item, naf: true }
    }

    pub fn and(l: Combination, r: Combination) -> Self {
        Combination::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Combination, r: Combination) -> Self {
        Combination::Or(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> Vec<&AnnotatedFormula> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |item, _| out.push(item));
        out
    }

    pub fn visit_leaves<'a>(&'a self, f: &mut dyn FnMut(&'a AnnotatedFormula, bool)) {
        match self {
            Combination::Leaf { item, naf } => f(item, *naf),
            Combination::And(l, r) | Combination::Or(l, r) => {
                l.visit_leaves(f);
                r.visit_leaves(f);
            }
        }
    }

    pub fn map_leaves(&self, f: &mut dyn FnMut(&AnnotatedFormula) -> AnnotatedFormula) -> Combination {
        match self {
            Combination::Leaf { item, naf } => Combination::Leaf { item: f(item), naf: *naf },
            Combination::And(l, r) => Combination::and(l.map_leaves(f), r.map_leaves(f)),
            Combination::Or(l, r) => Combination::or(l.map_leaves(f), r.map_leaves(f)),
        }
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrapped(c: &Combination, paren: bool) -> String {
            if paren {
                format!("({c})")
            } else {
                c.to_string()
            }
        }
        match self {
            Combination::Leaf { item, naf } => {
                if *naf {
                    f.write_str("not ")?;
                }
                write!(f, "{item}")
            }
            // `&&` binds tighter than `||`; both associate to the left.
            Combination::And(l, r) => write!(
                f,
                "{} && {}",
                wrapped(l, matches!(**l, Combination::Or(..))),
                wrapped(r, !matches!(**r, Combination::Leaf { .. }))
            ),
            Combination::Or(l, r) => write!(
                f,
                "{} || {}",
                wrapped(l, false),
                wrapped(r, matches!(**r, Combination::Or(..)))
            ),
        }
    }
}

/// `C_1 >> ... >> C_k :- body.`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceRule {
    pub head: Vec<Combination>,
    pub body: Body,
}

impl fmt::Display for PreferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // A lone leaf would read back as a generator rule without the marker.
        if matches!(self.head.as_slice(), [Combination::Leaf { .. }]) {
            f.write_str("#pref ")?;
        }
        let head: Vec<String> = self.head.iter().map(|c| c.to_string()).collect();
        f.write_str(&head.join(" >> "))?;
        if !self.body.is_empty() {
            write!(f, " :- {}", self.body)?;
        }
        f.write_str(".")
    }
}

/// `#strategy pred = sid.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyDecl {
    pub predicate: String,
    pub strategy: StrategyRef,
}

/// `#domain X = {c1, ..., cn}.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainDecl {
    pub var: String,
    pub constants: Vec<String>,
}

/// A parsed program: generator rules, preference rules (numbered `r1, r2, ...`
/// in source order) and directives.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub generator_rules: Vec<GeneratorRule>,
    pub preference_rules: Vec<PreferenceRule>,
    pub strategies: Vec<StrategyDecl>,
    pub domains: Vec<DomainDecl>,
}

impl Program {
    pub fn is_empty(&self) -> bool {
        self.generator_rules.is_empty()
            && self.preference_rules.is_empty()
            && self.strategies.is_empty()
            && self.domains.is_empty()
    }

    /// Constants occurring anywhere in the program text, sorted.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let add_lit = |l: &Literal, out: &mut BTreeSet<String>| {
            for t in &l.terms {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        };
        let add_body = |b: &Body, out: &mut BTreeSet<String>| {
            for item in b.formulas() {
                item.formula.literals().iter().for_each(|l| add_lit(l, out));
            }
            for c in &b.comparisons {
                for t in [&c.left, &c.right] {
                    if let Term::Const(s) = t {
                        out.insert(s.clone());
                    }
                }
            }
        };
        for r in &self.generator_rules {
            r.head.iter().for_each(|h| add_lit(&h.atom, &mut out));
            add_body(&r.body, &mut out);
        }
        for r in &self.preference_rules {
            for c in &r.head {
                for item in c.leaves() {
                    item.formula.literals().iter().for_each(|l| add_lit(l, &mut out));
                }
            }
            add_body(&r.body, &mut out);
        }
        for d in &self.domains {
            out.extend(d.constants.iter().cloned());
        }
        out
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.strategies {
            writeln!(f, "#strategy {} = {}.", s.predicate, s.strategy.id())?;
        }
        for d in &self.domains {
            writeln!(f, "#domain {} = {{{}}}.", d.var, d.constants.join(", "))?;
        }
        for r in &self.generator_rules {
            writeln!(f, "{r}")?;
        }
        for r in &self.preference_rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
