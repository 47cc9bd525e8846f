//! Ranking answer sets with preference rules.

mod compare;
mod rank;
mod relation;

pub use compare::{
    compare_combination, compare_combination_with, compare_rule, eval_combination, eval_combination_with,
    pref_body_bindings, pref_rule_index, Ordering3, SatisfactionIndex, Side,
};
pub use rank::{rank, rank_matrix, relation_matrix, PairIssue, RankIssue, RankingResult};
pub use relation::{maximal_compare, pareto_compare, relations, Maximal, Pareto, PreferenceRelation, RelationRegistry};
