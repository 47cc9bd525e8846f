//! Partial probabilistic interpretations.

use std::collections::BTreeMap;
use std::fmt;

use crate::interval::ProbInterval;
use crate::syntax::{HybridFormula, Literal};

/// A finite partial map from ground literals to intervals. Compound formulas
/// are never stored; their values derive from the parts.
///
/// Absent literals are undefined. Wherever an interval is needed for the truth
/// order, undefined reads as `[0,0]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PInterpretation {
    values: BTreeMap<Literal, ProbInterval>,
}

impl PInterpretation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an assignment. A `[0,0]` value removes the literal instead, so
    /// interpretations never carry defined-at-zero entries.
    pub fn set(&mut self, literal: Literal, value: ProbInterval) {
        if value.is_zero() {
            self.values.remove(&literal);
        } else {
            self.values.insert(literal, value);
        }
    }

    pub fn with(mut self, literal: Literal, value: ProbInterval) -> Self {
        self.set(literal, value);
        self
    }

    pub fn get(&self, literal: &Literal) -> Option<&ProbInterval> {
        self.values.get(literal)
    }

    pub fn is_defined(&self, literal: &Literal) -> bool {
        self.values.contains_key(literal)
    }

    /// Value with undefined read as `[0,0]`.
    pub fn read(&self, literal: &Literal) -> ProbInterval {
        self.values.get(literal).cloned().unwrap_or_else(ProbInterval::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Literal, &ProbInterval)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise truth order over the union of both domains, undefined as `[0,0]`.
    pub fn truth_leq(&self, other: &PInterpretation) -> bool {
        self.values.iter().all(|(l, v)| v.truth_leq(&other.read(l)))
    }

    pub fn truth_lt(&self, other: &PInterpretation) -> bool {
        self.truth_leq(other) && self != other
    }
}

impl FromIterator<(Literal, ProbInterval)> for PInterpretation {
    fn from_iter<T: IntoIterator<Item = (Literal, ProbInterval)>>(iter: T) -> Self {
        let mut h = PInterpretation::new();
        for (l, v) in iter {
            h.set(l, v);
        }
        h
    }
}

impl fmt::Display for PInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{v}")?;
        }
        f.write_str("}")
    }
}

/// Value of a ground formula in `h`; `None` when undefined.
///
/// A compound is defined iff at least one of its parts is; its value composes
/// the part values with undefined parts read as `[0,0]`.
pub fn value_of(h: &PInterpretation, formula: &HybridFormula) -> Option<ProbInterval> {
    match formula {
        HybridFormula::Single(l) => h.get(l).cloned(),
        HybridFormula::Compound { strategy, parts } => {
            if !parts.iter().any(|p| h.is_defined(p)) {
                return None;
            }
            let values: Vec<ProbInterval> = parts.iter().map(|p| h.read(p)).collect();
            Some(strategy.compose(&values).expect("compound formulas have at least two parts"))
        }
    }
}

/// [`value_of`] with undefined read as `[0,0]`.
pub fn read_formula(h: &PInterpretation, formula: &HybridFormula) -> ProbInterval {
    value_of(h, formula).unwrap_or_else(ProbInterval::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{builtin, StrategyKind};

    fn p(v: &str) -> ProbInterval {
        ProbInterval::from_decimals(v, v)
    }

    fn atom(name: &str) -> Literal {
        Literal::ground(name, &[])
    }

    #[test]
    fn lookup_and_absence() {
        let h = PInterpretation::new().with(atom("a"), p("0.7"));
        assert_eq!(value_of(&h, &atom("a").into()), Some(p("0.7")));
        assert_eq!(value_of(&h, &atom("b").into()), None);
        assert_eq!(read_formula(&h, &atom("b").into()), ProbInterval::zero());
    }

    #[test]
    fn compound_values() {
        let h = PInterpretation::new().with(atom("a"), p("0.6")).with(atom("b"), p("0.2"));
        let pcc = builtin().get(StrategyKind::Conjunctive, "pcc").unwrap();
        let f = HybridFormula::Compound { strategy: pcc.clone(), parts: vec![atom("a"), atom("b")] };
        assert_eq!(value_of(&h, &f), Some(p("0.2")));

        let g = HybridFormula::Compound { strategy: pcc, parts: vec![atom("a"), atom("c")] };
        assert_eq!(value_of(&h, &g), Some(p("0")), "defined through a, c read as [0,0]");

        let pcd = builtin().get(StrategyKind::Disjunctive, "pcd").unwrap();
        let none = HybridFormula::Compound { strategy: pcd, parts: vec![atom("c"), atom("d")] };
        assert_eq!(value_of(&h, &none), None);
    }

    #[test]
    fn zero_values_are_not_stored() {
        let h = PInterpretation::new().with(atom("a"), ProbInterval::zero());
        assert!(h.is_empty());
        assert_eq!(h, PInterpretation::new());
    }

    #[test]
    fn pointwise_order() {
        let small = PInterpretation::new().with(atom("a"), p("0.3"));
        let big = PInterpretation::new().with(atom("a"), p("0.5")).with(atom("b"), p("0.1"));
        assert!(small.truth_lt(&big));
        assert!(!big.truth_leq(&small));
        assert!(PInterpretation::new().truth_leq(&small));
    }
}
