//! Probability answer set optimization programs.
//!
//! Generator rules with interval probability annotations produce probability
//! answer sets; preference rules rank them under the Pareto or Maximal
//! relation. The pipeline is [`parser`] → [`ground`] → [`solver`] → [`prefs`].

pub mod annotation;
pub mod cli;
pub mod ground;
pub mod interp;
pub mod interval;
pub mod oracle;
pub mod output;
pub mod parser;
pub mod prefs;
pub mod solver;
pub mod strategy;
pub mod syntax;

pub use interp::{value_of, PInterpretation};
pub use interval::ProbInterval;
pub use parser::{format_program, parse_program};
