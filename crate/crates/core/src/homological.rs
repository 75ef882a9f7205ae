//! The homological operator `Ad_L^k(p) = (dp)_x L x − L p(x)` on each graded
//! slice, the normal-form spaces `ker Ad_{L^t}^k` (intersected with
//! `Q_V^k(Γ)` in the reversible-equivariant setting), and checks of the
//! direct-sum decompositions they belong to.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyvec::{slice_basis, HomogeneousVF, SliceBasis, TermIndex};
use crate::ratlinalg::{kernel_basis, RatMatrix, Rational, Subspace};
use crate::symmetry::{ActionMode, Mode, SignedGroup};

#[derive(Clone, Debug)]
pub struct HomologicalMatrix {
    linear: RatMatrix,
    degree: usize,
    basis: SliceBasis,
    matrix: RatMatrix,
}

impl HomologicalMatrix {
    pub fn linear(&self) -> &RatMatrix {
        &self.linear
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &SliceBasis {
        &self.basis
    }

    /// Column `j` holds the coordinates of `Ad_L^k` applied to basis term `j`.
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, p: &HomogeneousVF) -> Result<HomogeneousVF> {
        let v = self.basis.to_coords(p)?;
        self.basis.from_coords(&self.matrix.mul_vec(&v))
    }

    pub fn kernel(&self) -> Subspace {
        kernel_basis(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        Subspace::column_space(&self.matrix)
    }

    /// `Ad_L^k(domain)` for a subspace given in slice coordinates.
    pub fn image_of(&self, domain: &Subspace) -> Subspace {
        let images = domain.vectors().map(|v| self.matrix.mul_vec(v));
        Subspace::from_vectors(self.basis.len(), images).expect("slice coordinates")
    }
}

pub fn ad_matrix(l: &RatMatrix, k: usize) -> Result<HomologicalMatrix> {
    if !l.is_square() {
        return Err(Error::DimensionMismatch {
            expected: l.rows(),
            found: l.cols(),
        });
    }
    if k == 0 {
        return Err(Error::DegreeError(
            "homological operator needs degree >= 1".into(),
        ));
    }
    let n = l.rows();
    let basis = slice_basis(n, k);
    let mut matrix = RatMatrix::zeros(basis.len(), basis.len());
    for (col, term) in basis.terms().iter().enumerate() {
        // (dp) L x for p = x^α e_i: sum_v α_v L_{vm} x^{α − e_v + e_m} e_i
        for v in 0..n {
            let a = term.exponents[v];
            if a == 0 {
                continue;
            }
            for m in 0..n {
                let lvm = &l[(v, m)];
                if lvm.is_zero() {
                    continue;
                }
                let mut e = term.exponents.clone();
                e[v] -= 1;
                e[m] += 1;
                let row = basis
                    .position(&TermIndex::new(term.component, e))
                    .expect("same degree");
                matrix[(row, col)] += lvm * Rational::from_integer(a.into());
            }
        }
        // − L p = − sum_r L_{ri} x^α e_r
        for r in 0..n {
            let lri = &l[(r, term.component)];
            if lri.is_zero() {
                continue;
            }
            let row = basis
                .position(&TermIndex::new(r, term.exponents.clone()))
                .expect("same degree");
            matrix[(row, col)] -= lri;
        }
    }
    Ok(HomologicalMatrix {
        linear: l.clone(),
        degree: k,
        basis,
        matrix,
    })
}

fn check_nf_degree(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::DegreeError(format!(
            "normal-form slices start at degree 2, got {k}"
        )))
    } else {
        Ok(())
    }
}

/// `ker Ad_{L^t}^k`: the degree-`k` normal-form space without symmetry.
pub fn nf_space_nonsym(l: &RatMatrix, k: usize) -> Result<Subspace> {
    check_nf_degree(k)?;
    Ok(ad_matrix(&l.transpose(), k)?.kernel())
}

/// `ker Ad_{L^t}^k ∩ Q_V^k(Γ)`: the degree-`k` reversible-equivariant normal-form space.
pub fn nf_space_reveq(l: &RatMatrix, g: &SignedGroup, k: usize) -> Result<Subspace> {
    if !g.is_rev_equivariant_linear(l) {
        return Err(Error::LinearPartNotReversible);
    }
    nf_space_nonsym(l, k)?.intersect(&g.fixed_slice(k, ActionMode::Reversible))
}

pub fn nf_space(l: &RatMatrix, k: usize, mode: Mode<'_>) -> Result<Subspace> {
    match mode {
        Mode::Nonsymmetric => nf_space_nonsym(l, k),
        Mode::ReversibleEquivariant(g) => nf_space_reveq(l, g, k),
    }
}

/// Dimensions behind the check `target = normal-form space ⊕ Ad_L^k(domain)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub degree: usize,
    pub target_dim: usize,
    pub domain_dim: usize,
    pub normal_form_dim: usize,
    pub image_dim: usize,
    pub intersection_dim: usize,
    pub sum_dim: usize,
    pub is_direct: bool,
    pub spans_all: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.is_direct && self.spans_all
    }
}

/// Checks `P_V^k = ker Ad_{L^t}^k ⊕ Ad_L^k(P_V^k)`, or with a group
/// `Q_V^k(Γ) = Q_V^k(S⋊Γ) ⊕ Ad_L^k(P_V^k(Γ))`. Failure is reported in the
/// result rather than as an error.
pub fn verify_decomposition(
    l: &RatMatrix,
    k: usize,
    g: Option<&SignedGroup>,
) -> Result<DecompositionReport> {
    let mode = g.map_or(Mode::Nonsymmetric, Mode::ReversibleEquivariant);
    mode.check_linear(l)?;
    let n = l.rows();
    let nf = nf_space(l, k, mode)?;
    let target = mode.target_slice(n, k);
    let domain = mode.domain_slice(n, k);
    let image = ad_matrix(l, k)?.image_of(&domain);
    let (sum, is_direct) = nf.sum(&image)?;
    let intersection = nf.intersect(&image)?;
    let spans_all = target.is_subspace_of(&sum)? && sum.is_subspace_of(&target)?;
    Ok(DecompositionReport {
        degree: k,
        target_dim: target.dim(),
        domain_dim: domain.dim(),
        normal_form_dim: nf.dim(),
        image_dim: image.dim(),
        intersection_dim: intersection.dim(),
        sum_dim: sum.dim(),
        is_direct,
        spans_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyvec::{ad_apply, TruncatedVF};
    use crate::ratlinalg::int;
    use crate::symmetry::{SignedElement, DEFAULT_ORDER_CAP};
    use proptest::prelude::*;

    fn bt() -> RatMatrix {
        RatMatrix::from_ints(&[[0, 1], [0, 0]])
    }

    fn term(n: usize, comp: usize, e: &[u32]) -> HomogeneousVF {
        let t = TermIndex::new(comp, e.to_vec());
        HomogeneousVF::from_terms(n, t.degree(), [(t, int(1))]).unwrap()
    }

    fn span(b: &SliceBasis, fields: &[HomogeneousVF]) -> Subspace {
        Subspace::from_vectors(b.len(), fields.iter().map(|p| b.to_coords(p).unwrap())).unwrap()
    }

    fn reversing_z2() -> SignedGroup {
        SignedGroup::generate(
            2,
            &[SignedElement::reversing(RatMatrix::from_ints(&[
                [1, 0],
                [0, -1],
            ]))],
            DEFAULT_ORDER_CAP,
        )
        .unwrap()
    }

    #[test]
    fn ad_matrix_special_cases() {
        assert!(ad_matrix(&RatMatrix::zeros(2, 2), 3)
            .unwrap()
            .matrix()
            .is_zero());
        for k in 1..5 {
            let m = ad_matrix(&RatMatrix::identity(2), k).unwrap();
            assert_eq!(
                m.matrix(),
                &RatMatrix::identity(m.basis().len()).scaled(&int(k as i64 - 1))
            );
        }
    }

    #[test]
    fn ad_matrix_diagonal_resonances() {
        let lambda = [1i64, -1];
        let m = ad_matrix(&RatMatrix::from_ints(&[[1, 0], [0, -1]]), 2).unwrap();
        for (j, t) in m.basis().terms().iter().enumerate() {
            let dot: i64 = t
                .exponents
                .iter()
                .zip(lambda)
                .map(|(&a, l)| a as i64 * l)
                .sum();
            for i in 0..m.basis().len() {
                let expected = if i == j {
                    int(dot - lambda[t.component])
                } else {
                    int(0)
                };
                assert_eq!(m.matrix()[(i, j)], expected);
            }
        }
    }

    #[test]
    fn nf_space_examples() {
        for k in 2..5 {
            assert!(nf_space_nonsym(&RatMatrix::identity(2), k)
                .unwrap()
                .is_zero());
        }
        for k in 2..6u32 {
            let b = slice_basis(2, k as usize);
            let expected = span(
                &b,
                &[
                    term(2, 0, &[k, 0]).add(&term(2, 1, &[k - 1, 1])),
                    term(2, 1, &[k, 0]),
                ],
            );
            assert_eq!(nf_space_nonsym(&bt(), k as usize).unwrap(), expected);
        }
        let center = RatMatrix::from_ints(&[[0, -1], [1, 0]]);
        assert_eq!(nf_space_nonsym(&center, 2).unwrap().dim(), 0);
        let w3 = nf_space_nonsym(&center, 3).unwrap();
        assert_eq!(w3.dim(), 2);
        // (x² + y²)(x, y) and (x² + y²)(−y, x)
        let b = slice_basis(2, 3);
        let radial = term(2, 0, &[3, 0])
            .add(&term(2, 0, &[1, 2]))
            .add(&term(2, 1, &[2, 1]))
            .add(&term(2, 1, &[0, 3]));
        let angular = term(2, 1, &[3, 0])
            .add(&term(2, 1, &[1, 2]))
            .sub(&term(2, 0, &[2, 1]))
            .sub(&term(2, 0, &[0, 3]));
        assert_eq!(w3, span(&b, &[radial, angular]));
        assert!(matches!(
            nf_space_nonsym(&bt(), 1),
            Err(Error::DegreeError(_))
        ));
    }

    #[test]
    fn reversible_nf_space_examples() {
        let g = reversing_z2();
        for k in 2..6u32 {
            let b = slice_basis(2, k as usize);
            assert_eq!(
                nf_space_reveq(&bt(), &g, k as usize).unwrap(),
                span(&b, &[term(2, 1, &[k, 0])])
            );
            assert_eq!(
                nf_space_reveq(&bt(), &SignedGroup::trivial(2), k as usize).unwrap(),
                nf_space_nonsym(&bt(), k as usize).unwrap()
            );
        }
        let pm = SignedGroup::generate(
            2,
            &[SignedElement::symmetry(
                RatMatrix::identity(2).scaled(&int(-1)),
            )],
            8,
        )
        .unwrap();
        assert!(nf_space_reveq(&bt(), &pm, 2).unwrap().is_zero());
        assert_eq!(
            nf_space_reveq(&RatMatrix::identity(2), &g, 2),
            Err(Error::LinearPartNotReversible)
        );
    }

    #[test]
    fn decomposition_examples() {
        let r = verify_decomposition(&RatMatrix::identity(2), 3, None).unwrap();
        assert_eq!((r.normal_form_dim, r.image_dim, r.target_dim), (0, 8, 8));
        assert!(r.holds());

        let r = verify_decomposition(&RatMatrix::from_ints(&[[1, 0], [0, -1]]), 3, None).unwrap();
        assert_eq!((r.normal_form_dim, r.image_dim, r.target_dim), (2, 6, 8));
        assert!(r.holds());

        let r = verify_decomposition(&RatMatrix::from_ints(&[[1, 0], [0, -1]]), 2, None).unwrap();
        assert_eq!((r.normal_form_dim, r.image_dim, r.target_dim), (0, 6, 6));
        assert!(r.holds());

        let g = reversing_z2();
        let r = verify_decomposition(&bt(), 2, Some(&g)).unwrap();
        assert_eq!(
            (r.target_dim, r.normal_form_dim, r.image_dim, r.domain_dim),
            (3, 1, 2, 3)
        );
        assert!(r.holds());
    }

    #[test]
    fn apply_agrees_with_generic_ad() {
        let l = RatMatrix::from_ints(&[[2, -1, 0], [1, 0, 3], [0, 1, -2]]);
        let m = ad_matrix(&l, 3).unwrap();
        let h = TruncatedVF::from_linear(&l, 1).unwrap();
        for j in 0..m.basis().len() {
            let p = m.basis().element(j);
            assert_eq!(m.apply(&p).unwrap(), ad_apply(&h, &p, 3));
        }
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
            RatMatrix::from_ints(&rows)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn kernel_and_image_are_complementary(l in arb_matrix(2), k in 2usize..5) {
            let r = verify_decomposition(&l, k, None).unwrap();
            prop_assert!(r.holds(), "{:?}", r);
        }

        #[test]
        fn transpose_has_same_kernel_dimension(l in arb_matrix(3), k in 2usize..4) {
            let a = ad_matrix(&l, k).unwrap().kernel().dim();
            let b = ad_matrix(&l.transpose(), k).unwrap().kernel().dim();
            prop_assert_eq!(a, b);
        }
    }
}
