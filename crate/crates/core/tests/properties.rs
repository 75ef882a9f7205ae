mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use revnf_core::{
    ad_apply, ad_matrix, complete_transversal, nf_space_nonsym, nf_space_reveq, reduce, replay,
    slice_basis, verify_containment, verify_decomposition, ActionMode, Mode, RatMatrix,
    SignedGroup, Subspace,
};

#[test]
fn diagonal_normal_forms_are_resonant_terms() {
    for lambda in [vec![1i64, -1], vec![1, 2], vec![2, -1, 1], vec![3, 1]] {
        let l = RatMatrix::from_diagonal(
            &lambda
                .iter()
                .map(|&x| revnf_core::int(x))
                .collect::<Vec<_>>(),
        );
        for k in 2..=5 {
            assert_eq!(
                nf_space_nonsym(&l, k).unwrap(),
                resonant_subspace(&lambda, k),
                "lambda = {lambda:?}, k = {k}"
            );
        }
    }
}

#[test]
fn ad_matrix_matches_jacobian_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        for k in 1..=4 {
            let l = random_matrix(&mut rng, n, 3);
            assert_eq!(
                ad_matrix(&l, k).unwrap().matrix(),
                &ad_matrix_via_jacobians(&l, k)
            );
        }
    }
}

#[test]
fn kernel_dimensions_match_mod_p_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let l = random_matrix(&mut rng, 3, 3);
        for k in 2..=3 {
            let m = ad_matrix_via_jacobians(&l.transpose(), k);
            let nf = nf_space_nonsym(&l, k).unwrap();
            assert_eq!(nf.dim(), m.cols() - rank_mod_p(&m));
        }
    }
}

#[test]
fn trace_oracle_agrees_with_fixed_slices() {
    let mut groups = groups_n2();
    groups.extend(groups_n3());
    for g in &groups {
        let kmax = if g.n() == 2 { 5 } else { 3 };
        for k in 1..=kmax {
            for mode in [ActionMode::Equivariant, ActionMode::Reversible] {
                assert_eq!(
                    g.dim_by_trace(k, mode).unwrap(),
                    g.fixed_slice(k, mode).dim()
                );
            }
        }
    }
}

#[test]
fn reversible_and_equivariant_slices_meet_trivially_when_sigma_is_nontrivial() {
    for g in groups_n2().iter().chain(groups_n3().iter()) {
        if g.is_sigma_trivial() {
            assert_eq!(
                g.fixed_slice(3, ActionMode::Reversible),
                g.fixed_slice(3, ActionMode::Equivariant)
            );
        } else {
            let both = g
                .fixed_slice(3, ActionMode::Reversible)
                .intersect(&g.fixed_slice(3, ActionMode::Equivariant))
                .unwrap();
            assert!(both.is_zero());
        }
    }
}

#[test]
fn ad_preserves_reversible_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in groups_n2().iter().chain(groups_n3().iter()) {
        let h = random_reversible_jet(&mut rng, g, 3);
        for l in 2..=3 {
            let xi = g
                .reynolds_equivariant(&random_field(&mut rng, g.n(), l))
                .unwrap();
            for d in l..=l + 2 {
                assert!(g.is_reversible_equivariant(&ad_apply(&h, &xi, d)));
            }
        }
    }
}

#[test]
fn containment_holds_for_random_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=3 {
        for k in 1..=3 {
            let l = random_matrix(&mut rng, n, 3);
            let h = random_jet(&mut rng, &l, k);
            assert!(verify_containment(&h, k, Mode::Nonsymmetric).unwrap());
        }
    }
    for g in groups_n2().iter().chain(groups_n3().iter()) {
        for k in 1..=3 {
            let h = random_reversible_jet(&mut rng, g, k);
            assert!(verify_containment(&h, k, Mode::ReversibleEquivariant(g)).unwrap());
        }
    }
}

#[test]
fn transversal_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for g in groups_n2() {
        for k in 1..=3 {
            let h = random_reversible_jet(&mut rng, &g, k);
            let r = complete_transversal(&h, Mode::ReversibleEquivariant(&g)).unwrap();
            let l = h.linear_part();
            let image = ad_matrix(&l, k + 1)
                .unwrap()
                .image_of(&g.fixed_slice(k + 1, ActionMode::Equivariant));
            assert_eq!(r.transversal_dim, r.target_dim - image.dim());
            // The tangent slice always contains the homological image.
            assert!(image.is_subspace_of(&r.tangent).unwrap());
        }
    }
}

#[test]
fn decompositions_hold_with_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for g in groups_n2().iter().chain(groups_n3().iter()) {
        let l = g.reynolds_linear(&random_matrix(&mut rng, g.n(), 3), ActionMode::Reversible);
        for k in 2..=3 {
            let r = verify_decomposition(&l, k, Some(g)).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}

#[test]
fn trivial_group_reduces_to_nonsymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = SignedGroup::trivial(3);
    for k in 2..=3 {
        let l = random_matrix(&mut rng, 3, 3);
        assert_eq!(
            nf_space_reveq(&l, &g, k).unwrap(),
            nf_space_nonsym(&l, k).unwrap()
        );
    }
}

#[test]
fn reduction_replays_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for n in 1..=2 {
        for _ in 0..4 {
            let l = random_matrix(&mut rng, n, 2);
            let h = random_jet(&mut rng, &l, 4);
            let r = reduce(&h, 4, Mode::Nonsymmetric).unwrap();
            assert!(r.certified());
            assert_eq!(replay(&h, &r.xis, 4).unwrap(), r.normal_form);
            assert_eq!(r.normal_form.linear_part(), l);
            // degree stability: each step leaves lower degrees alone
            for (k, pair) in r.history.windows(2).enumerate() {
                for d in 1..k + 2 {
                    assert_eq!(pair[0].part_or_zero(d), pair[1].part_or_zero(d));
                }
            }
            let again = reduce(&r.normal_form, 4, Mode::Nonsymmetric).unwrap();
            assert_eq!(again.normal_form, r.normal_form);
            assert!(again.xis.iter().all(|x| x.is_zero()));
        }
    }
}

#[test]
fn reversible_reduction_keeps_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for g in groups_n2() {
        let h = random_reversible_jet(&mut rng, &g, 4);
        let mode = Mode::ReversibleEquivariant(&g);
        let r = reduce(&h, 4, mode).unwrap();
        assert!(r.certified());
        for xi in &r.xis {
            assert!(g.is_equivariant(xi));
        }
        for step in &r.history {
            assert!(mode.check_jet(step).is_ok());
        }
        assert_eq!(replay(&h, &r.xis, 4).unwrap(), r.normal_form);
    }
}

#[test]
fn bogdanov_takens_reversible_normal_form() {
    let g = reversing_reflection();
    let l = RatMatrix::from_ints(&[[0, 1], [0, 0]]);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut h = revnf_core::TruncatedVF::from_linear(&l, 4).unwrap();
    for d in 2..=4 {
        h.set_part(
            g.reynolds_reversible(&random_field(&mut rng, 2, d))
                .unwrap(),
        )
        .unwrap();
    }
    let r = reduce(&h, 4, Mode::ReversibleEquivariant(&g)).unwrap();
    for k in 2..=4u32 {
        let b = slice_basis(2, k as usize);
        let target = Subspace::from_vectors(
            b.len(),
            [b.to_coords(
                &revnf_core::HomogeneousVF::from_terms(
                    2,
                    k as usize,
                    [(
                        revnf_core::TermIndex::new(1, vec![k, 0]),
                        revnf_core::int(1),
                    )],
                )
                .unwrap(),
            )
            .unwrap()],
        )
        .unwrap();
        let part = b
            .to_coords(&r.normal_form.part_or_zero(k as usize))
            .unwrap();
        assert!(target.contains(&part).unwrap());
    }
}
