use revnf_core::{complete_transversal, reduce, slice_basis, verify_decomposition, ActionMode};

use crate::error::CliError;
use crate::problem::{Problem, ProblemSpec};
use crate::report::{
    basis_strings, render_report, ContainmentDims, DecompositionDims, DegreeResult, NormalFormStep,
    Report, TraceDims,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Transversal,
    Normalform,
    Verify,
    Dims,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Transversal => "transversal",
            Command::Normalform => "normalform",
            Command::Verify => "verify",
            Command::Dims => "dims",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub pretty: bool,
    /// Overrides `degrees.max` for `normalform`.
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub output: String,
    /// Theorem-guaranteed checks that failed; nonempty means exit code 3.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            3
        }
    }
}

fn degree_result(problem: &Problem, d: usize, detailed: bool) -> Result<DegreeResult, CliError> {
    let mode = problem.mode();
    let jet = problem.field.with_max_degree(d - 1);
    let tr = complete_transversal(&jet, mode)?;
    let dec = verify_decomposition(&problem.linear, d, problem.group_for_mode())?;
    let basis = slice_basis(problem.n(), d);
    Ok(DegreeResult {
        degree: d,
        transversal_dim: tr.transversal_dim,
        transversal_basis: basis_strings(&tr.transversal, &basis),
        decomposition_ok: dec.holds(),
        containment_ok: tr.contained,
        decomposition: detailed.then_some(DecompositionDims {
            target_dim: dec.target_dim,
            domain_dim: dec.domain_dim,
            normal_form_dim: dec.normal_form_dim,
            image_dim: dec.image_dim,
            intersection_dim: dec.intersection_dim,
            is_direct: dec.is_direct,
            spans_all: dec.spans_all,
        }),
        containment: detailed.then_some(ContainmentDims {
            target_dim: tr.target_dim,
            transversal_dim: tr.transversal_dim,
            tangent_dim: tr.tangent_dim,
            sum_dim: tr.sum_dim,
        }),
        normal_form: None,
        dims: None,
    })
}

pub fn run_problem(
    command: Command,
    problem: &Problem,
    opts: &RunOptions,
) -> Result<Report, CliError> {
    let min = problem.spec.degrees.min;
    let mut max = problem.spec.degrees.max;
    if command == Command::Normalform {
        if let Some(m) = opts.max_degree {
            if m < min {
                return Err(CliError::Validation(format!(
                    "--max-degree {m} is below degrees.min ({min})"
                )));
            }
            max = m;
        }
    }
    let mut results = Vec::with_capacity(max + 1 - min);
    match command {
        Command::Transversal | Command::Verify => {
            for d in min..=max {
                results.push(degree_result(problem, d, command == Command::Verify)?);
            }
        }
        Command::Normalform => {
            let reduced = reduce(&problem.field, max, problem.mode())?;
            for d in min..=max {
                let mut r = degree_result(problem, d, false)?;
                r.normal_form = Some(NormalFormStep {
                    part: reduced.normal_form.part_or_zero(d).to_string(),
                    change: reduced.xis[d - 2].to_string(),
                    in_normal_form_space: reduced.certificate[d - 2].in_normal_form_space,
                });
                results.push(r);
            }
        }
        Command::Dims => {
            let g = &problem.group;
            for d in min..=max {
                let mut r = degree_result(problem, d, false)?;
                let dims = TraceDims {
                    reversible_trace: g.dim_by_trace(d, ActionMode::Reversible)?,
                    reversible_basis: g.fixed_slice(d, ActionMode::Reversible).dim(),
                    equivariant_trace: g.dim_by_trace(d, ActionMode::Equivariant)?,
                    equivariant_basis: g.fixed_slice(d, ActionMode::Equivariant).dim(),
                    agree: false,
                };
                r.dims = Some(TraceDims {
                    agree: dims.reversible_trace == dims.reversible_basis
                        && dims.equivariant_trace == dims.equivariant_basis,
                    ..dims
                });
                results.push(r);
            }
        }
    }
    Ok(Report {
        problem: problem.spec.clone(),
        command: command.name().to_string(),
        results,
    })
}

/// Parses, validates and runs one problem file's contents.
pub fn run(command: Command, input: &str, opts: &RunOptions) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::from_json(input)?;
    let problem = Problem::from_spec(spec)?;
    let report = run_problem(command, &problem, opts)?;
    let output = if opts.pretty {
        render_report(&report, problem.group.order())
    } else {
        let mut s = serde_json::to_string_pretty(&report).expect("reports always serialize");
        s.push('\n');
        s
    };
    let failures = report
        .results
        .iter()
        .flat_map(DegreeResult::failures)
        .collect();
    Ok(Outcome {
        report,
        output,
        failures,
    })
}
