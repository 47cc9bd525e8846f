//! Classical answer sets and classical answer-set-optimization ranking for the
//! image of all-`[1,1]` programs.

use std::collections::BTreeSet;

use crate::annotation::Bindings;
use crate::ground::GroundProgram;
use crate::interval::ProbInterval;
use crate::prefs::Ordering3;
use crate::syntax::{AnnotatedFormula, Body, Combination, HybridFormula, Literal};

use super::OracleError;

const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRule {
    pub head: Vec<Literal>,
    pub positive: Vec<Literal>,
    pub naf: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassicalCombination {
    Lit(Literal),
    Not(Literal),
    And(Box<ClassicalCombination>, Box<ClassicalCombination>),
    Or(Box<ClassicalCombination>, Box<ClassicalCombination>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalPrefRule {
    pub head: Vec<ClassicalCombination>,
    pub positive: Vec<Literal>,
    pub naf: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalProgram {
    pub rules: Vec<ClassicalRule>,
    pub prefs: Vec<ClassicalPrefRule>,
}

fn plain(item: &AnnotatedFormula) -> Result<Literal, OracleError> {
    let one = item.annotation.eval(&Bindings::new()).ok() == Some(ProbInterval::one());
    match &item.formula {
        HybridFormula::Single(l) if one => Ok(l.clone()),
        _ => Err(OracleError::NotClassical(item.to_string())),
    }
}

fn body(b: &Body) -> Result<(Vec<Literal>, Vec<Literal>), OracleError> {
    Ok((b.positive.iter().map(plain).collect::<Result<_, _>>()?, b.naf.iter().map(plain).collect::<Result<_, _>>()?))
}

fn combination(c: &Combination) -> Result<ClassicalCombination, OracleError> {
    Ok(match c {
        Combination::Leaf { item, naf: false } => ClassicalCombination::Lit(plain(item)?),
        Combination::Leaf { item, naf: true } => ClassicalCombination::Not(plain(item)?),
        Combination::And(l, r) => ClassicalCombination::And(Box::new(combination(l)?), Box::new(combination(r)?)),
        Combination::Or(l, r) => ClassicalCombination::Or(Box::new(combination(l)?), Box::new(combination(r)?)),
    })
}

impl ClassicalProgram {
    /// Erases the annotations of a program whose annotations are all `[1,1]`
    /// and whose formulas are plain literals.
    pub fn from_ground(g: &GroundProgram) -> Result<Self, OracleError> {
        let mut rules = Vec::new();
        for r in &g.rules {
            let head = r
                .head
                .iter()
                .map(|d| plain(&AnnotatedFormula::new(d.atom.clone(), d.annotation.clone())))
                .collect::<Result<_, _>>()?;
            let (positive, naf) = body(&r.body)?;
            rules.push(ClassicalRule { head, positive, naf });
        }
        let mut prefs = Vec::new();
        for r in &g.pref_rules {
            let head = r.head.iter().map(combination).collect::<Result<_, _>>()?;
            let (positive, naf) = body(&r.body)?;
            prefs.push(ClassicalPrefRule { head, positive, naf });
        }
        Ok(ClassicalProgram { rules, prefs })
    }

    fn head_atoms(&self) -> Vec<Literal> {
        let set: BTreeSet<Literal> = self.rules.iter().flat_map(|r| r.head.iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// Answer sets: subset-minimal models of the Gelfond-Lifschitz reduct.
    pub fn answer_sets(&self) -> Result<Vec<BTreeSet<Literal>>, OracleError> {
        let atoms = self.head_atoms();
        if atoms.len() > MAX_ATOMS {
            return Err(OracleError::TooLarge { candidates: None, cap: 1 << MAX_ATOMS });
        }
        let subsets: Vec<BTreeSet<Literal>> = (0u32..(1 << atoms.len()))
            .map(|mask| atoms.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, a)| a.clone()).collect())
            .collect();
        let mut out = Vec::new();
        for m in &subsets {
            let reduct: Vec<&ClassicalRule> =
                self.rules.iter().filter(|r| r.naf.iter().all(|a| !m.contains(a))).collect();
            let model = |s: &BTreeSet<Literal>| {
                reduct.iter().all(|r| !r.positive.iter().all(|a| s.contains(a)) || r.head.iter().any(|a| s.contains(a)))
            };
            if model(m) && !subsets.iter().any(|s| s.len() < m.len() && s.is_subset(m) && model(s)) {
                out.push(m.clone());
            }
        }
        Ok(out)
    }
}

fn holds(m: &BTreeSet<Literal>, c: &ClassicalCombination) -> bool {
    match c {
        ClassicalCombination::Lit(l) => m.contains(l),
        ClassicalCombination::Not(l) => !m.contains(l),
        ClassicalCombination::And(a, b) => holds(m, a) && holds(m, b),
        ClassicalCombination::Or(a, b) => holds(m, a) || holds(m, b),
    }
}

/// Satisfaction degree: the first satisfied combination (1-based), or `k+1`
/// when the rule is irrelevant, which puts irrelevant sets below all others.
pub fn degree(m: &BTreeSet<Literal>, r: &ClassicalPrefRule) -> usize {
    let body = r.positive.iter().all(|a| m.contains(a)) && r.naf.iter().all(|a| !m.contains(a));
    let first = if body { r.head.iter().position(|c| holds(m, c)) } else { None };
    first.map_or(r.head.len() + 1, |i| i + 1)
}

/// Pareto comparison on degrees (smaller is better).
pub fn classical_pareto(m1: &BTreeSet<Literal>, m2: &BTreeSet<Literal>, prefs: &[ClassicalPrefRule]) -> Ordering3 {
    let (d1, d2): (Vec<usize>, Vec<usize>) = prefs.iter().map(|r| (degree(m1, r), degree(m2, r))).unzip();
    let pairs: Vec<(usize, usize)> = d1.into_iter().zip(d2).collect();
    if pairs.iter().all(|(a, b)| a == b) {
        Ordering3::Equal
    } else if pairs.iter().all(|(a, b)| a <= b) {
        Ordering3::StrictFirst
    } else if pairs.iter().all(|(a, b)| a >= b) {
        Ordering3::StrictSecond
    } else {
        Ordering3::Incomparable
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRanking {
    pub answer_sets: Vec<BTreeSet<Literal>>,
    pub relation: Vec<Vec<Ordering3>>,
}

impl ClassicalRanking {
    /// Indices of sets no other set is strictly preferred to.
    pub fn pareto_optimal(&self) -> Vec<usize> {
        let n = self.answer_sets.len();
        (0..n).filter(|&j| (0..n).all(|i| self.relation[i][j] != Ordering3::StrictFirst)).collect()
    }
}

/// Classical answer sets with their pairwise Pareto relation.
pub fn classical_rank(p: &ClassicalProgram) -> Result<ClassicalRanking, OracleError> {
    let answer_sets = p.answer_sets()?;
    let relation = answer_sets
        .iter()
        .map(|m1| answer_sets.iter().map(|m2| classical_pareto(m1, m2, &p.prefs)).collect())
        .collect();
    Ok(ClassicalRanking { answer_sets, relation })
}
