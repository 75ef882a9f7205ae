//! Batch front end: reads a JSON problem file, runs the transversal,
//! normal-form, verification or dimension pipeline, and writes a report.
//!
//! Exit codes: 1 for unreadable or malformed input, 2 for inputs that parse
//! but violate a hypothesis (infinite group, inconsistent signs, linear part
//! not reversible-equivariant, ...), 3 when a check that must always pass
//! came out false.

pub mod error;
pub mod problem;
pub mod report;
pub mod run;

pub use error::CliError;
pub use problem::{DegreeRange, GeneratorSpec, ModeSpec, Problem, ProblemSpec, TermSpec};
pub use report::{render_basis, render_report, render_subspace, DegreeResult, Report};
pub use run::{run, run_problem, Command, Outcome, RunOptions};
