use std::collections::{BTreeMap, BTreeSet};

use crate::ground::GroundProgram;
use crate::interp::PInterpretation;
use crate::interval::ProbInterval;
use crate::syntax::Literal;

use super::SolveError;

/// Possible defined values of each head atom: the τ-composition closure of the
/// annotations it carries across rule heads, `[0,0]` excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLattice {
    pub per_atom: BTreeMap<Literal, Vec<ProbInterval>>,
    /// Some head annotation has `lower < upper`. Values strictly inside such
    /// intervals are not enumerated.
    pub interval_width: bool,
}

impl CandidateLattice {
    pub fn build(g: &GroundProgram, cap: u64) -> Result<Self, SolveError> {
        let mut annotations: BTreeMap<&Literal, Vec<ProbInterval>> = BTreeMap::new();
        let mut interval_width = false;
        for rule in &g.rules {
            for d in &rule.head {
                let mu = d.annotation.as_constant().and_then(Result::ok).expect("ground head annotations are constant");
                interval_width |= !mu.is_point();
                annotations.entry(&d.atom).or_default().push(mu);
            }
        }
        let mut per_atom = BTreeMap::new();
        for (atom, mus) in annotations {
            let tau = g.tau_of(atom);
            let mut cell: BTreeSet<ProbInterval> = BTreeSet::new();
            for mu in mus {
                let mut next: BTreeSet<ProbInterval> = cell.iter().map(|c| tau.compose2(c, &mu)).collect();
                next.insert(mu);
                cell.extend(next);
                if cell.len() as u64 > cap {
                    return Err(SolveError::ResourceLimit { candidates: None, cap });
                }
            }
            cell.remove(&ProbInterval::zero());
            per_atom.insert(atom.clone(), cell.into_iter().collect());
        }
        Ok(CandidateLattice { per_atom, interval_width })
    }

    /// Number of candidates, `None` on overflow.
    pub fn candidate_count(&self) -> Option<u64> {
        self.per_atom.values().try_fold(1u64, |acc, cell| acc.checked_mul(cell.len() as u64 + 1))
    }

    /// Candidate number `index`: mixed radix over atoms in atom-table order,
    /// first atom most significant, digit 0 meaning undefined.
    pub fn decode(&self, mut index: u64) -> PInterpretation {
        let mut h = PInterpretation::new();
        for (atom, cell) in self.per_atom.iter().rev() {
            let radix = cell.len() as u64 + 1;
            let digit = (index % radix) as usize;
            index /= radix;
            if digit > 0 {
                h.set(atom.clone(), cell[digit - 1].clone());
            }
        }
        h
    }

    /// Every lattice candidate `h'` with `h' <_t h`.
    pub fn strictly_below(&self, h: &PInterpretation) -> Vec<PInterpretation> {
        let options: Vec<(&Literal, Vec<&ProbInterval>)> = self
            .per_atom
            .iter()
            .filter_map(|(atom, cell)| {
                let current = h.get(atom)?;
                Some((atom, cell.iter().filter(|v| v.truth_leq(current)).collect()))
            })
            .collect();
        let mut out = vec![PInterpretation::new()];
        for (atom, values) in options {
            let mut next = Vec::with_capacity(out.len() * (values.len() + 1));
            for partial in &out {
                next.push(partial.clone());
                for v in &values {
                    next.push(partial.clone().with(atom.clone(), (*v).clone()));
                }
            }
            out = next;
        }
        out.retain(|c| c != h);
        out
    }
}

/// Every candidate of the lattice, in index order.
pub fn enumerate_candidates(
    g: &GroundProgram,
    cap: u64,
) -> Result<impl Iterator<Item = PInterpretation>, SolveError> {
    let lattice = CandidateLattice::build(g, cap)?;
    let total = checked_total(&lattice, cap)?;
    Ok((0..total).map(move |i| lattice.decode(i)))
}

pub(crate) fn checked_total(lattice: &CandidateLattice, cap: u64) -> Result<u64, SolveError> {
    match lattice.candidate_count() {
        Some(n) if n <= cap => Ok(n),
        n => Err(SolveError::ResourceLimit { candidates: n, cap }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground;
    use crate::parser::parse_program;

    fn g(src: &str) -> GroundProgram {
        ground(&parse_program(src).unwrap()).unwrap()
    }

    fn p(v: &str) -> ProbInterval {
        ProbInterval::from_decimals(v, v)
    }

    #[test]
    fn intro_has_four_candidates() {
        let gp = g("service(a,s1,d):0.7 | service(a,s2,d):0.4.");
        let all: Vec<_> = enumerate_candidates(&gp, 100).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], PInterpretation::new());
    }

    #[test]
    fn single_fact_has_two_candidates() {
        assert_eq!(enumerate_candidates(&g("a:0.5."), 100).unwrap().count(), 2);
    }

    #[test]
    fn pcd_closure_collapses() {
        let lattice = CandidateLattice::build(&g("a:0.3 :- b. a:0.4 :- c."), 100).unwrap();
        assert_eq!(lattice.per_atom[&Literal::ground("a", &[])], [p("0.3"), p("0.4")]);
    }

    #[test]
    fn ind_closure_composes() {
        let lattice = CandidateLattice::build(&g("#strategy a = ind.\na:0.5 :- b. a:0.5 :- c."), 100).unwrap();
        assert_eq!(lattice.per_atom[&Literal::ground("a", &[])], [p("0.5"), p("0.75")]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_candidates(&g("a. b. c."), 7).err().unwrap();
        assert_eq!(err, SolveError::ResourceLimit { candidates: Some(8), cap: 7 });
    }

    #[test]
    fn width_is_flagged() {
        assert!(CandidateLattice::build(&g("a:[0.2,0.4]."), 10).unwrap().interval_width);
        assert!(!CandidateLattice::build(&g("a:0.2."), 10).unwrap().interval_width);
    }

    #[test]
    fn sublattice_below() {
        let lattice = CandidateLattice::build(&g("a:0.3 :- b. a:0.4 :- c. d."), 100).unwrap();
        let h = PInterpretation::new().with(Literal::ground("a", &[]), p("0.4")).with(Literal::ground("d", &[]), p("1"));
        // a ∈ {undef, 0.3, 0.4} × d ∈ {undef, 1}, minus h itself.
        assert_eq!(lattice.strictly_below(&h).len(), 5);
    }
}
