//! Probability annotations: `[item, item]` pairs built from constants,
//! annotation variables and a closed set of annotation functions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::interval::{format_prob, IntervalError, Prob, ProbInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnotationError {
    #[error("annotation variable {0} is unbound")]
    Unbound(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnnotationFn {
    Min,
    Max,
    Prod,
    /// Sum clipped at 1.
    Bsum,
    /// First argument minus the rest, clipped at 0.
    Bdiff,
    Avg,
}

impl AnnotationFn {
    pub const ALL: [AnnotationFn; 6] = [
        AnnotationFn::Min,
        AnnotationFn::Max,
        AnnotationFn::Prod,
        AnnotationFn::Bsum,
        AnnotationFn::Bdiff,
        AnnotationFn::Avg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnnotationFn::Min => "min",
            AnnotationFn::Max => "max",
            AnnotationFn::Prod => "prod",
            AnnotationFn::Bsum => "bsum",
            AnnotationFn::Bdiff => "bdiff",
            AnnotationFn::Avg => "avg",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Applies the function. `args` must be non-empty.
    pub fn apply(self, args: &[Prob]) -> Prob {
        assert!(!args.is_empty(), "annotation functions take at least one argument");
        match self {
            AnnotationFn::Min => args.iter().min().unwrap().clone(),
            AnnotationFn::Max => args.iter().max().unwrap().clone(),
            AnnotationFn::Prod => args.iter().fold(Prob::one(), |acc, x| acc * x),
            AnnotationFn::Bsum => {
                let sum = args.iter().fold(Prob::zero(), |acc, x| acc + x);
                sum.min(Prob::one())
            }
            AnnotationFn::Bdiff => {
                let diff = args[1..].iter().fold(args[0].clone(), |acc, x| acc - x);
                diff.max(Prob::zero())
            }
            AnnotationFn::Avg => {
                let sum = args.iter().fold(Prob::zero(), |acc, x| acc + x);
                sum / Prob::from_integer(args.len().into())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnnotationItem {
    Const(Prob),
    Var(String),
    Apply(AnnotationFn, Vec<AnnotationItem>),
}

/// Which endpoint of a bound variable an item reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Endpoint {
    Lower,
    Upper,
}

pub type Bindings = BTreeMap<String, ProbInterval>;

impl AnnotationItem {
    fn eval(&self, at: Endpoint, bindings: &Bindings) -> Result<Prob, AnnotationError> {
        match self {
            AnnotationItem::Const(c) => Ok(c.clone()),
            AnnotationItem::Var(v) => {
                let bound = bindings.get(v).ok_or_else(|| AnnotationError::Unbound(v.clone()))?;
                Ok(match at {
                    Endpoint::Lower => bound.lower().clone(),
                    Endpoint::Upper => bound.upper().clone(),
                })
            }
            AnnotationItem::Apply(f, args) => {
                let vals = args
                    .iter()
                    .map(|a| a.eval(at, bindings))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(f.apply(&vals))
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            AnnotationItem::Const(_) => true,
            AnnotationItem::Var(_) => false,
            AnnotationItem::Apply(_, args) => args.iter().all(Self::is_constant),
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            AnnotationItem::Const(_) => {}
            AnnotationItem::Var(v) => out.push(v),
            AnnotationItem::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Replaces variable-free function applications by their value.
    pub fn fold_constants(&self) -> AnnotationItem {
        match self {
            AnnotationItem::Apply(f, args) => {
                let args: Vec<_> = args.iter().map(Self::fold_constants).collect();
                if args.iter().all(|a| matches!(a, AnnotationItem::Const(_))) {
                    let vals: Vec<Prob> = args
                        .into_iter()
                        .map(|a| match a {
                            AnnotationItem::Const(c) => c,
                            _ => unreachable!(),
                        })
                        .collect();
                    AnnotationItem::Const(f.apply(&vals))
                } else {
                    AnnotationItem::Apply(*f, args)
                }
            }
            other => other.clone(),
        }
    }
}

impl fmt::Display for AnnotationItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnotationItem::Const(c) => f.write_str(&format_prob(c)),
            AnnotationItem::Var(v) => f.write_str(v),
            AnnotationItem::Apply(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A probability annotation `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Annotation {
    pub lower: AnnotationItem,
    pub upper: AnnotationItem,
}

impl Annotation {
    pub fn new(lower: AnnotationItem, upper: AnnotationItem) -> Self {
        Annotation { lower, upper }
    }

    /// Point shorthand: `A:α` stands for `A:[α,α]`.
    pub fn point(item: AnnotationItem) -> Self {
        Annotation { lower: item.clone(), upper: item }
    }

    /// The implicit annotation of unannotated formulas.
    pub fn one() -> Self {
        Self::point(AnnotationItem::Const(Prob::one()))
    }

    pub fn constant(interval: &ProbInterval) -> Self {
        Annotation {
            lower: AnnotationItem::Const(interval.lower().clone()),
            upper: AnnotationItem::Const(interval.upper().clone()),
        }
    }

    /// `Some(name)` when the annotation is exactly one bare variable (`:V`).
    /// Such annotations on positive body items act as binders.
    pub fn binder_var(&self) -> Option<&str> {
        match (&self.lower, &self.upper) {
            (AnnotationItem::Var(a), AnnotationItem::Var(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.lower.is_constant() && self.upper.is_constant()
    }

    /// Value of a variable-free annotation.
    pub fn as_constant(&self) -> Option<Result<ProbInterval, AnnotationError>> {
        self.is_constant().then(|| self.eval(&Bindings::new()))
    }

    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.lower.collect_vars(&mut out);
        self.upper.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<ProbInterval, AnnotationError> {
        let lo = self.lower.eval(Endpoint::Lower, bindings)?;
        let hi = self.upper.eval(Endpoint::Upper, bindings)?;
        Ok(ProbInterval::new(lo, hi)?)
    }

    pub fn fold_constants(&self) -> Annotation {
        Annotation { lower: self.lower.fold_constants(), upper: self.upper.fold_constants() }
    }
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower == self.upper {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{},{}]", self.lower, self.upper)
        }
    }
}

/// Evaluates an annotation against variable bindings.
pub fn eval_annotation(annotation: &Annotation, bindings: &Bindings) -> Result<ProbInterval, AnnotationError> {
    annotation.eval(bindings)
}
