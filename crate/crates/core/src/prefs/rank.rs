//! Strata from a pairwise relation, or a report of why none exist.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::interp::PInterpretation;
use crate::syntax::PreferenceRule;

use super::compare::Ordering3;
use super::relation::PreferenceRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankIssue {
    /// Neither strictly preferred nor equal.
    Incomparable,
    /// Part of a strict cycle between classes.
    Cycle,
    /// Sets joined through equality that compare differently with each other or with a third set.
    EqualityConflict,
}

/// A pair of answer sets (0-based indices into the ranked list).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairIssue {
    pub first: usize,
    pub second: usize,
    pub issue: RankIssue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingResult {
    /// `relation[i][j]` compares set `i` against set `j`.
    pub relation: Vec<Vec<Ordering3>>,
    /// Classes of equally preferred sets, most preferred first. Present only
    /// when the relation is a total preorder.
    pub strata: Option<Vec<Vec<usize>>>,
    pub partial_report: Vec<PairIssue>,
    /// Sets no other set is strictly preferred to.
    pub undominated: Vec<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    parent[x] = root;
    root
}

pub fn relation_matrix(
    sets: &[PInterpretation],
    rules: &[PreferenceRule],
    relation: &dyn PreferenceRelation,
) -> Vec<Vec<Ordering3>> {
    let n = sets.len();
    let upper: Vec<Vec<Ordering3>> = (0..n)
        .into_par_iter()
        .map(|i| ((i + 1)..n).map(|j| relation.compare(&sets[i], &sets[j], rules)).collect())
        .collect();
    let mut m = vec![vec![Ordering3::Equal; n]; n];
    for i in 0..n {
        m[i][i] = relation.compare(&sets[i], &sets[i], rules);
        for j in (i + 1)..n {
            m[i][j] = upper[i][j - i - 1];
            m[j][i] = m[i][j].reverse();
        }
    }
    m
}

pub fn rank(sets: &[PInterpretation], rules: &[PreferenceRule], relation: &dyn PreferenceRelation) -> RankingResult {
    let m = relation_matrix(sets, rules, relation);
    rank_matrix(m)
}

pub fn rank_matrix(m: Vec<Vec<Ordering3>>) -> RankingResult {
    let n = m.len();
    let undominated = (0..n).filter(|&j| (0..n).all(|i| m[i][j] != Ordering3::StrictFirst)).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] == Ordering3::Equal {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[b.max(a)] = a.min(b);
            }
        }
    }
    let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let classes: Vec<Vec<usize>> =
        roots.iter().map(|&r| (0..n).filter(|&i| find(&mut parent, i) == r).collect()).collect();

    let mut report = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if m[i][j] == Ordering3::Incomparable {
                report.insert(PairIssue { first: i, second: j, issue: RankIssue::Incomparable });
            }
        }
    }

    // Class-level strict relation; None when members disagree.
    let k = classes.len();
    let mut beats = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let mut outcomes = BTreeSet::new();
            for &i in &classes[a] {
                outcomes.extend(classes[b].iter().map(|&j| m[i][j]));
            }
            if outcomes.len() == 1 && outcomes.contains(&Ordering3::StrictFirst) {
                beats[a][b] = true;
            } else if outcomes.len() > 1 && a < b {
                for &i in &classes[a] {
                    for &j in &classes[b] {
                        if m[i][j] != Ordering3::Incomparable {
                            let (x, y) = (i.min(j), i.max(j));
                            report.insert(PairIssue { first: x, second: y, issue: RankIssue::EqualityConflict });
                        }
                    }
                }
            }
        }
    }
    for class in &classes {
        for (p, &i) in class.iter().enumerate() {
            for &j in &class[p + 1..] {
                if m[i][j] != Ordering3::Equal && m[i][j] != Ordering3::Incomparable {
                    report.insert(PairIssue { first: i, second: j, issue: RankIssue::EqualityConflict });
                }
            }
        }
    }

    // Reachability over the class relation to find strict cycles.
    let mut reach = beats.clone();
    for via in 0..k {
        for a in 0..k {
            if reach[a][via] {
                for b in 0..k {
                    if reach[via][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if beats[a][b] && reach[b][a] {
                for &i in &classes[a] {
                    for &j in &classes[b] {
                        let (x, y) = (i.min(j), i.max(j));
                        report.insert(PairIssue { first: x, second: y, issue: RankIssue::Cycle });
                    }
                }
            }
        }
    }

    let strata = if report.is_empty() {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(beats[a].iter().filter(|b| **b).count()));
        Some(order.into_iter().map(|a| classes[a].clone()).collect())
    } else {
        None
    };

    RankingResult { relation: m, strata, partial_report: report.into_iter().collect(), undominated }
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::prefs::{relations, Ordering3};
    use proptest::prelude::*;

    fn matrix() -> impl Strategy<Value = Vec<Vec<Ordering3>>> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(0u8..4, n * n).prop_map(move |raw| {
                let mut m = vec![vec![Ordering3::Equal; n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        let o = [Ordering3::StrictFirst, Ordering3::StrictSecond, Ordering3::Equal, Ordering3::Incomparable]
                            [raw[i * n + j] as usize];
                        m[i][j] = o;
                        m[j][i] = o.reverse();
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn strata_partition_and_respect_relation(m in matrix()) {
            let n = m.len();
            let result = rank_matrix(m.clone());
            prop_assert!(!result.undominated.is_empty() || result.strata.is_none());
            for &j in &result.undominated {
                prop_assert!((0..n).all(|i| m[i][j] != Ordering3::StrictFirst));
            }
            if let Some(strata) = result.strata {
                prop_assert!(result.partial_report.is_empty());
                let mut level = vec![usize::MAX; n];
                for (k, class) in strata.iter().enumerate() {
                    for &i in class {
                        prop_assert_eq!(level[i], usize::MAX);
                        level[i] = k;
                    }
                }
                prop_assert!(level.iter().all(|&l| l != usize::MAX));
                for i in 0..n {
                    for j in 0..n {
                        let expected = level[i].cmp(&level[j]);
                        let got = match m[i][j] {
                            Ordering3::StrictFirst => std::cmp::Ordering::Less,
                            Ordering3::StrictSecond => std::cmp::Ordering::Greater,
                            Ordering3::Equal => std::cmp::Ordering::Equal,
                            Ordering3::Incomparable => { prop_assert!(false, "incomparable pair in strata"); unreachable!() }
                        };
                        prop_assert_eq!(got, expected);
                    }
                }
            } else {
                prop_assert!(!result.partial_report.is_empty());
            }
        }

        #[test]
        fn relations_registered(name in prop_oneof![Just("pareto"), Just("maximal")]) {
            let relation = relations().get(name).unwrap();
            prop_assert_eq!(relation.name(), name);
        }
    }
}
