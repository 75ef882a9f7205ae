//! Tangent slices to the orbit of a jet under near-identity changes of
//! coordinates, and complete transversals degree by degree.
//!
//! The tangent slice at degree `d` is the linear span of the degree-`d`
//! components of `Ad_h(ξ) = (dξ) h − (dh) ξ` for `ξ` ranging over slices of
//! degrees `2..=d` (Γ-equivariant slices in the reversible-equivariant
//! setting). Higher-order terms of the orbit map land in degree `> d` and are
//! not part of the slice.

use crate::error::{Error, Result};
use crate::homological::nf_space;
use crate::polyvec::{ad_apply, slice_basis, TruncatedVF};
use crate::ratlinalg::Subspace;
use crate::symmetry::Mode;

#[derive(Clone, Debug)]
pub struct JetOrbitSlice {
    pub h: TruncatedVF,
    pub degree: usize,
    pub span: Subspace,
}

pub fn tangent_slice(h: &TruncatedVF, d: usize, mode: Mode<'_>) -> Result<JetOrbitSlice> {
    if d < 2 {
        return Err(Error::DegreeError(format!(
            "tangent slices start at degree 2, got {d}"
        )));
    }
    mode.check_jet(h)?;
    let n = h.n();
    let target = slice_basis(n, d);
    let mut images = Vec::new();
    for l in 2..=d {
        if h.part(d + 1 - l).is_none() {
            continue;
        }
        let basis = slice_basis(n, l);
        for v in mode.domain_slice(n, l).vectors() {
            let xi = basis.from_coords(v)?;
            images.push(target.to_coords(&ad_apply(h, &xi, d))?);
        }
    }
    Ok(JetOrbitSlice {
        h: h.clone(),
        degree: d,
        span: Subspace::from_vectors(target.len(), images)?,
    })
}

#[derive(Clone, Debug)]
pub struct TransversalReport {
    pub degree: usize,
    /// The complete transversal `W`.
    pub transversal: Subspace,
    pub tangent: Subspace,
    /// `P_V^d`, or `Q_V^d(Γ)` in the reversible-equivariant setting.
    pub target: Subspace,
    pub contained: bool,
    pub target_dim: usize,
    pub transversal_dim: usize,
    pub tangent_dim: usize,
    pub sum_dim: usize,
}

/// `target ⊆ w + tangent`.
pub fn containment_holds(target: &Subspace, w: &Subspace, tangent: &Subspace) -> Result<bool> {
    let (sum, _) = w.sum(tangent)?;
    target.is_subspace_of(&sum)
}

fn report(h: &TruncatedVF, mode: Mode<'_>, w: Option<&Subspace>) -> Result<TransversalReport> {
    let k = h.max_degree();
    let d = k + 1;
    mode.check_jet(h)?;
    let transversal = match w {
        Some(w) => w.clone(),
        None => nf_space(&h.linear_part(), d, mode)?,
    };
    let tangent = tangent_slice(h, d, mode)?.span;
    let target = mode.target_slice(h.n(), d);
    let (sum, _) = transversal.sum(&tangent)?;
    let contained = target.is_subspace_of(&sum)?;
    Ok(TransversalReport {
        degree: d,
        target_dim: target.dim(),
        transversal_dim: transversal.dim(),
        tangent_dim: tangent.dim(),
        sum_dim: sum.dim(),
        transversal,
        tangent,
        target,
        contained,
    })
}

/// Complete transversal at degree `k + 1` for the `k`-jet `h` (`k = h.max_degree()`).
pub fn complete_transversal(h: &TruncatedVF, mode: Mode<'_>) -> Result<TransversalReport> {
    report(h, mode, None)
}

/// Whether every degree-`(k+1)` element of the target slice lies in
/// `W + T·j^k h`. This always holds; `false` means a bug.
pub fn verify_containment(h: &TruncatedVF, k: usize, mode: Mode<'_>) -> Result<bool> {
    Ok(report(&h.with_max_degree(k), mode, None)?.contained)
}

/// As [`verify_containment`] but against a caller-supplied candidate `W`.
pub fn verify_containment_with(
    h: &TruncatedVF,
    k: usize,
    mode: Mode<'_>,
    w: &Subspace,
) -> Result<bool> {
    Ok(report(&h.with_max_degree(k), mode, Some(w))?.contained)
}
