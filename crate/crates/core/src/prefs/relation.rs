//! Global preference relations over a set of preference rules.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::{Arc, OnceLock};

use crate::interp::PInterpretation;
use crate::syntax::PreferenceRule;

use super::compare::{compare_rule, Ordering3};

pub trait PreferenceRelation: Send + Sync + Debug {
    fn name(&self) -> &str;

    /// Combines the per-rule outcomes for one ordered pair.
    fn combine(&self, per_rule: &[Ordering3]) -> Ordering3;

    fn compare(&self, h1: &PInterpretation, h2: &PInterpretation, rules: &[PreferenceRule]) -> Ordering3 {
        let per_rule: Vec<Ordering3> = rules.iter().map(|r| compare_rule(h1, h2, r)).collect();
        self.combine(&per_rule)
    }
}

/// Strict on some rule and at least as preferred on all others.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pareto;

impl PreferenceRelation for Pareto {
    fn name(&self) -> &str {
        "pareto"
    }

    fn combine(&self, per_rule: &[Ordering3]) -> Ordering3 {
        if per_rule.iter().all(|o| *o == Ordering3::Equal) {
            Ordering3::Equal
        } else if per_rule.contains(&Ordering3::StrictFirst) && per_rule.iter().all(|o| o.first_at_least()) {
            Ordering3::StrictFirst
        } else if per_rule.contains(&Ordering3::StrictSecond) && per_rule.iter().all(|o| o.second_at_least()) {
            Ordering3::StrictSecond
        } else {
            Ordering3::Incomparable
        }
    }
}

/// Compares how many rules favour each side (ties count for both).
#[derive(Debug, Clone, Copy, Default)]
pub struct Maximal;

impl PreferenceRelation for Maximal {
    fn name(&self) -> &str {
        "maximal"
    }

    fn combine(&self, per_rule: &[Ordering3]) -> Ordering3 {
        let first = per_rule.iter().filter(|o| o.first_at_least()).count();
        let second = per_rule.iter().filter(|o| o.second_at_least()).count();
        match first.cmp(&second) {
            std::cmp::Ordering::Greater => Ordering3::StrictFirst,
            std::cmp::Ordering::Less => Ordering3::StrictSecond,
            std::cmp::Ordering::Equal => Ordering3::Equal,
        }
    }
}

pub fn pareto_compare(h1: &PInterpretation, h2: &PInterpretation, rules: &[PreferenceRule]) -> Ordering3 {
    Pareto.compare(h1, h2, rules)
}

pub fn maximal_compare(h1: &PInterpretation, h2: &PInterpretation, rules: &[PreferenceRule]) -> Ordering3 {
    Maximal.compare(h1, h2, rules)
}

#[derive(Debug, Clone, Default)]
pub struct RelationRegistry {
    relations: BTreeMap<String, Arc<dyn PreferenceRelation>>,
}

impl RelationRegistry {
    pub fn with_builtins() -> Self {
        let mut reg = RelationRegistry::default();
        reg.register(Pareto);
        reg.register(Maximal);
        reg
    }

    pub fn register<R: PreferenceRelation + 'static>(&mut self, relation: R) {
        self.relations.insert(relation.name().to_string(), Arc::new(relation));
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn PreferenceRelation>> {
        self.relations.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.relations.keys().map(String::as_str)
    }
}

pub fn relations() -> &'static RelationRegistry {
    static REGISTRY: OnceLock<RelationRegistry> = OnceLock::new();
    REGISTRY.get_or_init(RelationRegistry::with_builtins)
}
