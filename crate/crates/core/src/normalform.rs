//! Degree-by-degree reduction to normal form.
//!
//! At each degree `k = 2..=N` the current part `g_k` is split as
//! `w + Ad_L^k(ξ)` with `w` in the normal-form space, and the field is
//! conjugated by `I + ξ`, which replaces `g_k` by `w` and leaves lower degrees
//! untouched. Higher-degree terms created along the way are handled at their
//! own degree.

use crate::error::{Error, Result};
use crate::homological::{ad_matrix, nf_space};
use crate::polyvec::{pushforward, slice_basis, HomogeneousVF, TruncatedVF};
use crate::ratlinalg::{solve, RatMatrix, Rational};
use crate::symmetry::Mode;

use num_traits::Zero;

/// Splits `v = w + Ad_L^k(ξ)` with `w` in the degree-`k` normal-form space.
///
/// `ξ` is the solution whose free coordinates (kernel directions of `Ad_L^k`
/// on the domain slice) are zero, so the split is deterministic.
pub fn split(
    v: &HomogeneousVF,
    l: &RatMatrix,
    mode: Mode<'_>,
) -> Result<(HomogeneousVF, HomogeneousVF)> {
    let k = v.degree();
    let n = v.n();
    mode.check_linear(l)?;
    let basis = slice_basis(n, k);
    let coords = basis.to_coords(v)?;
    if let Mode::ReversibleEquivariant(_) = mode {
        if !mode.target_slice(n, k).contains(&coords)? {
            return Err(Error::NotInTargetSlice { degree: k });
        }
    }
    let w_space = nf_space(l, k, mode)?;
    let domain = mode.domain_slice(n, k);
    let ad = ad_matrix(l, k)?;

    let mut columns: Vec<Vec<Rational>> = w_space.vectors().map(<[Rational]>::to_vec).collect();
    columns.extend(domain.vectors().map(|d| ad.matrix().mul_vec(d)));
    let system = RatMatrix::from_columns(basis.len(), &columns)?;
    let x = solve(&system, &coords)?.ok_or(Error::SplitFailed { degree: k })?;
    let (wc, dc) = x.split_at(w_space.dim());

    let combine = |coeffs: &[Rational], vectors: &mut dyn Iterator<Item = &[Rational]>| {
        let mut acc = vec![Rational::zero(); basis.len()];
        for (c, vec) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(vec) {
                *a += c * b;
            }
        }
        acc
    };
    let w = basis.from_coords(&combine(wc, &mut w_space.vectors()))?;
    let xi = basis.from_coords(&combine(dc, &mut domain.vectors()))?;
    Ok((w, xi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub degree: usize,
    /// The reduced part lies in the normal-form space of its degree.
    pub in_normal_form_space: bool,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub normal_form: TruncatedVF,
    /// Applied changes `ξ_k`, one per degree `2..=N` (zero where nothing was removed).
    pub xis: Vec<HomogeneousVF>,
    pub certificate: Vec<DegreeCertificate>,
    /// The field before any change, then after each change.
    pub history: Vec<TruncatedVF>,
}

impl ReductionResult {
    pub fn certified(&self) -> bool {
        self.certificate.iter().all(|c| c.in_normal_form_space)
    }
}

/// Reduces `h` to normal form through degree `max_degree`.
pub fn reduce(h: &TruncatedVF, max_degree: usize, mode: Mode<'_>) -> Result<ReductionResult> {
    if max_degree < 1 {
        return Err(Error::DegreeError("truncation degree must be >= 1".into()));
    }
    mode.check_jet(h)?;
    let l = h.linear_part();
    let mut g = h.with_max_degree(max_degree);
    let mut history = vec![g.clone()];
    let mut xis = Vec::new();
    let mut certificate = Vec::new();
    for k in 2..=max_degree {
        let (_, xi) = split(&g.part_or_zero(k), &l, mode)?;
        if !xi.is_zero() {
            g = pushforward(&g, &xi, max_degree)?;
        }
        history.push(g.clone());
        let basis = slice_basis(g.n(), k);
        let reduced = basis.to_coords(&g.part_or_zero(k))?;
        certificate.push(DegreeCertificate {
            degree: k,
            in_normal_form_space: nf_space(&l, k, mode)?.contains(&reduced)?,
        });
        xis.push(xi);
    }
    Ok(ReductionResult {
        normal_form: g,
        xis,
        certificate,
        history,
    })
}

/// Pushes `h` forward by `I + ξ` for each stored change in order.
pub fn replay(h: &TruncatedVF, xis: &[HomogeneousVF], max_degree: usize) -> Result<TruncatedVF> {
    let mut g = h.with_max_degree(max_degree);
    for xi in xis {
        if !xi.is_zero() {
            g = pushforward(&g, xi, max_degree)?;
        }
    }
    Ok(g)
}
