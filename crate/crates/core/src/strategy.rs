//! Probabilistic strategies (p-strategies) and their composition functions.
//!
//! Every strategy is a [`PStrategy`] trait object registered by name in a
//! [`StrategyRegistry`]. Conjunctive and disjunctive strategies live in separate
//! namespaces, so `ind` names both the conjunctive and the disjunctive
//! independence strategy.
//!
//! | id    | kind        | lower                | upper                |
//! |-------|-------------|----------------------|----------------------|
//! | `igc` | conjunctive | max(0, a1 + a2 - 1)  | min(b1, b2)          |
//! | `pcc` | conjunctive | min(a1, a2)          | min(b1, b2)          |
//! | `ind` | conjunctive | a1 * a2              | b1 * b2              |
//! | `ncc` | conjunctive | max(0, a1 + a2 - 1)  | max(0, b1 + b2 - 1)  |
//! | `igd` | disjunctive | max(a1, a2)          | min(1, b1 + b2)      |
//! | `pcd` | disjunctive | max(a1, a2)          | max(b1, b2)          |
//! | `ind` | disjunctive | a1 + a2 - a1 * a2    | b1 + b2 - b1 * b2    |
//! | `me`  | disjunctive | min(1, a1 + a2)      | min(1, b1 + b2)      |

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::interval::{Prob, ProbInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyKind {
    Conjunctive,
    Disjunctive,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::Conjunctive => f.write_str("conjunctive"),
            StrategyKind::Disjunctive => f.write_str("disjunctive"),
        }
    }
}

/// A composition function over `C[0,1]`. Implementations must be commutative,
/// associative and closed over valid intervals.
pub trait PStrategy: Send + Sync + fmt::Debug {
    fn id(&self) -> &str;
    fn kind(&self) -> StrategyKind;
    fn compose2(&self, a: &ProbInterval, b: &ProbInterval) -> ProbInterval;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot compose an empty multiset of intervals")]
pub struct EmptyMultiset;

/// Left fold of `compose2` over a non-empty multiset.
pub fn compose<'a, I>(strategy: &dyn PStrategy, intervals: I) -> Result<ProbInterval, EmptyMultiset>
where
    I: IntoIterator<Item = &'a ProbInterval>,
{
    let mut iter = intervals.into_iter();
    let first = iter.next().ok_or(EmptyMultiset)?.clone();
    Ok(iter.fold(first, |acc, next| strategy.compose2(&acc, next)))
}

/// Shared handle to a registered strategy. Equality, ordering and hashing go by
/// `(kind, id)`.
#[derive(Clone)]
pub struct StrategyRef(Arc<dyn PStrategy>);

impl StrategyRef {
    pub fn new<S: PStrategy + 'static>(strategy: S) -> Self {
        StrategyRef(Arc::new(strategy))
    }

    pub fn id(&self) -> &str {
        self.0.id()
    }

    pub fn kind(&self) -> StrategyKind {
        self.0.kind()
    }

    pub fn compose2(&self, a: &ProbInterval, b: &ProbInterval) -> ProbInterval {
        self.0.compose2(a, b)
    }

    pub fn compose<'a, I>(&self, intervals: I) -> Result<ProbInterval, EmptyMultiset>
    where
        I: IntoIterator<Item = &'a ProbInterval>,
    {
        compose(self.0.as_ref(), intervals)
    }

    fn key(&self) -> (StrategyKind, &str) {
        (self.kind(), self.id())
    }
}

impl fmt::Debug for StrategyRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self.id())
    }
}

impl PartialEq for StrategyRef {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for StrategyRef {}

impl PartialOrd for StrategyRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StrategyRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for StrategyRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

/// Name-keyed table of strategies.
#[derive(Debug, Clone, Default)]
pub struct StrategyRegistry {
    entries: BTreeMap<(StrategyKind, String), StrategyRef>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The eight built-in strategies.
    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register(IgnoranceConj);
        reg.register(PositiveCorrelationConj);
        reg.register(IndependenceConj);
        reg.register(NegativeCorrelationConj);
        reg.register(IgnoranceDisj);
        reg.register(PositiveCorrelationDisj);
        reg.register(IndependenceDisj);
        reg.register(MutualExclusionDisj);
        reg
    }

    /// Registers a strategy, replacing any previous one with the same kind and id.
    pub fn register<S: PStrategy + 'static>(&mut self, strategy: S) -> StrategyRef {
        let handle = StrategyRef::new(strategy);
        self.entries
            .insert((handle.kind(), handle.id().to_string()), handle.clone());
        handle
    }

    pub fn get(&self, kind: StrategyKind, id: &str) -> Option<StrategyRef> {
        self.entries.get(&(kind, id.to_string())).cloned()
    }

    pub fn ids(&self, kind: StrategyKind) -> impl Iterator<Item = &str> {
        self.entries
            .keys()
            .filter(move |(k, _)| *k == kind)
            .map(|(_, id)| id.as_str())
    }

    pub fn all(&self, kind: StrategyKind) -> impl Iterator<Item = &StrategyRef> {
        self.entries
            .iter()
            .filter(move |((k, _), _)| *k == kind)
            .map(|(_, s)| s)
    }
}

/// Process-wide registry holding the built-ins.
pub fn builtin() -> &'static StrategyRegistry {
    static REGISTRY: OnceLock<StrategyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(StrategyRegistry::with_builtins)
}

/// Id of the disjunctive strategy used for atoms without a `#strategy` directive.
pub const DEFAULT_TAU: &str = "pcd";

pub fn default_tau() -> StrategyRef {
    builtin()
        .get(StrategyKind::Disjunctive, DEFAULT_TAU)
        .expect("pcd is built in")
}

fn max(a: &Prob, b: &Prob) -> Prob {
    a.max(b).clone()
}

fn min(a: &Prob, b: &Prob) -> Prob {
    a.min(b).clone()
}

/// max(0, x + y - 1)
fn luk_and(x: &Prob, y: &Prob) -> Prob {
    let v = x + y - Prob::one();
    if v < Prob::zero() {
        Prob::zero()
    } else {
        v
    }
}

/// min(1, x + y)
fn bounded_sum(x: &Prob, y: &Prob) -> Prob {
    let v = x + y;
    if v > Prob::one() {
        Prob::one()
    } else {
        v
    }
}

fn prob_or(x: &Prob, y: &Prob) -> Prob {
    x + y - x * y
}

macro_rules! strategy {
    ($(#[$doc:meta])* $name:ident, $id:literal, $kind:ident, |$a:ident, $b:ident| ($lo:expr, $hi:expr)) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $name;

        impl PStrategy for $name {
            fn id(&self) -> &str {
                $id
            }

            fn kind(&self) -> StrategyKind {
                StrategyKind::$kind
            }

            fn compose2(&self, $a: &ProbInterval, $b: &ProbInterval) -> ProbInterval {
                ProbInterval::from_valid($lo, $hi)
            }
        }
    };
}

strategy!(
    /// Conjunction under ignorance of the dependency.
    IgnoranceConj, "igc", Conjunctive,
    |a, b| (luk_and(a.lower(), b.lower()), min(a.upper(), b.upper()))
);
strategy!(
    PositiveCorrelationConj, "pcc", Conjunctive,
    |a, b| (min(a.lower(), b.lower()), min(a.upper(), b.upper()))
);
strategy!(
    IndependenceConj, "ind", Conjunctive,
    |a, b| (a.lower() * b.lower(), a.upper() * b.upper())
);
strategy!(
    NegativeCorrelationConj, "ncc", Conjunctive,
    |a, b| (luk_and(a.lower(), b.lower()), luk_and(a.upper(), b.upper()))
);
strategy!(
    /// Disjunction under ignorance of the dependency.
    IgnoranceDisj, "igd", Disjunctive,
    |a, b| (max(a.lower(), b.lower()), bounded_sum(a.upper(), b.upper()))
);
strategy!(
    /// Max/max; idempotent, which makes it the default for τ.
    PositiveCorrelationDisj, "pcd", Disjunctive,
    |a, b| (max(a.lower(), b.lower()), max(a.upper(), b.upper()))
);
strategy!(
    IndependenceDisj, "ind", Disjunctive,
    |a, b| (prob_or(a.lower(), b.lower()), prob_or(a.upper(), b.upper()))
);
strategy!(
    MutualExclusionDisj, "me", Disjunctive,
    |a, b| (bounded_sum(a.lower(), b.lower()), bounded_sum(a.upper(), b.upper()))
);
