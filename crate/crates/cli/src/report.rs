//! Report assembly: structured JSON and human-readable text.

use serde::Serialize;

use revnf_core::{SliceBasis, Subspace};

use crate::problem::ProblemSpec;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub problem: ProblemSpec,
    pub command: String,
    pub results: Vec<DegreeResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeResult {
    pub degree: usize,
    pub transversal_dim: usize,
    pub transversal_basis: Vec<String>,
    pub decomposition_ok: bool,
    pub containment_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment: Option<ContainmentDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<TraceDims>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionDims {
    pub target_dim: usize,
    pub domain_dim: usize,
    pub normal_form_dim: usize,
    pub image_dim: usize,
    pub intersection_dim: usize,
    pub is_direct: bool,
    pub spans_all: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentDims {
    pub target_dim: usize,
    pub transversal_dim: usize,
    pub tangent_dim: usize,
    pub sum_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalFormStep {
    /// Degree-`d` part of the reduced field.
    pub part: String,
    /// The change `ξ_d` applied at this degree.
    pub change: String,
    pub in_normal_form_space: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceDims {
    pub reversible_trace: usize,
    pub reversible_basis: usize,
    pub equivariant_trace: usize,
    pub equivariant_basis: usize,
    pub agree: bool,
}

impl DegreeResult {
    /// Names of theorem-guaranteed checks that came out false.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.decomposition_ok {
            out.push(format!(
                "degree {}: decomposition check failed",
                self.degree
            ));
        }
        if !self.containment_ok {
            out.push(format!("degree {}: containment check failed", self.degree));
        }
        if matches!(&self.normal_form, Some(s) if !s.in_normal_form_space) {
            out.push(format!(
                "degree {}: reduced part outside normal-form space",
                self.degree
            ));
        }
        if matches!(&self.dims, Some(d) if !d.agree) {
            out.push(format!(
                "degree {}: trace and basis dimensions disagree",
                self.degree
            ));
        }
        out
    }
}

/// Basis vectors of `s` rendered as fields, in canonical order.
pub fn basis_strings(s: &Subspace, basis: &SliceBasis) -> Vec<String> {
    s.vectors()
        .map(|v| basis.from_coords(v).expect("slice coordinates").to_string())
        .collect()
}

/// `dim 0, basis: (none)`, `dim 1, basis: x1^2 e_2`, or one indented line per vector.
pub fn render_basis(lines: &[String]) -> String {
    match lines {
        [] => "dim 0, basis: (none)".to_string(),
        [one] => format!("dim 1, basis: {one}"),
        many => {
            let mut out = format!("dim {}, basis:", many.len());
            for l in many {
                out.push_str("\n  ");
                out.push_str(l);
            }
            out
        }
    }
}

pub fn render_subspace(s: &Subspace, basis: &SliceBasis) -> String {
    render_basis(&basis_strings(s, basis))
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAILED"
    }
}

fn indent(text: &str, by: &str) -> String {
    text.lines()
        .map(|l| format!("{by}{l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_report(report: &Report, group_order: usize) -> String {
    let p = &report.problem;
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!(
        "mode: {} (n = {}, group order {})\n",
        p.mode.as_str(),
        p.dimension,
        group_order
    ));
    let linear = p
        .linear_part
        .iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect::<Vec<_>>()
        .join(", ");
    out.push_str(&format!("linear part: [{linear}]\n"));
    for r in &report.results {
        out.push_str(&format!("\ndegree {}\n", r.degree));
        out.push_str(&indent(
            &format!("transversal: {}", render_basis(&r.transversal_basis)),
            "  ",
        ));
        out.push('\n');
        match &r.decomposition {
            Some(d) => out.push_str(&format!(
                "  decomposition: {} (target {} = {} + {}, intersection {})\n",
                ok(r.decomposition_ok),
                d.target_dim,
                d.normal_form_dim,
                d.image_dim,
                d.intersection_dim
            )),
            None => out.push_str(&format!("  decomposition: {}\n", ok(r.decomposition_ok))),
        }
        match &r.containment {
            Some(c) => out.push_str(&format!(
                "  containment: {} (target {}, transversal {}, tangent {}, sum {})\n",
                ok(r.containment_ok),
                c.target_dim,
                c.transversal_dim,
                c.tangent_dim,
                c.sum_dim
            )),
            None => out.push_str(&format!("  containment: {}\n", ok(r.containment_ok))),
        }
        if let Some(s) = &r.normal_form {
            out.push_str(&format!("  normal form part: {}\n", s.part));
            out.push_str(&format!("  change: {}\n", s.change));
            out.push_str(&format!("  certificate: {}\n", ok(s.in_normal_form_space)));
        }
        if let Some(d) = &r.dims {
            out.push_str(&format!(
                "  dims (trace/basis): reversible {}/{}, equivariant {}/{} {}\n",
                d.reversible_trace,
                d.reversible_basis,
                d.equivariant_trace,
                d.equivariant_basis,
                ok(d.agree)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use revnf_core::{int, slice_basis};

    #[test]
    fn render_basis_contract() {
        let b = slice_basis(2, 2);
        assert_eq!(
            render_subspace(&Subspace::zero(6), &b),
            "dim 0, basis: (none)"
        );
        let mut v = vec![int(0); 6];
        v[3] = int(1);
        let s = Subspace::from_vectors(6, [v]).unwrap();
        assert_eq!(render_subspace(&s, &b), "dim 1, basis: x1^2 e_2");
        let full = render_subspace(&Subspace::full(6), &b);
        let lines: Vec<&str> = full.lines().skip(1).map(str::trim).collect();
        assert_eq!(
            lines,
            [
                "x1^2 e_1",
                "x1*x2 e_1",
                "x2^2 e_1",
                "x1^2 e_2",
                "x1*x2 e_2",
                "x2^2 e_2"
            ]
        );
    }
}
