//! Test-only oracles and fixtures. Nothing here calls the homological-operator
//! or kernel code paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use revnf_core::{
    ad_apply, int, slice_basis, ActionMode, HomogeneousVF, RatMatrix, Rational, SignedElement,
    SignedGroup, Subspace, TruncatedVF, DEFAULT_ORDER_CAP,
};

/// Span of the resonant terms `x^α e_i` with `<α, λ> = λ_i`, by enumeration.
pub fn resonant_subspace(lambda: &[i64], k: usize) -> Subspace {
    let basis = slice_basis(lambda.len(), k);
    let units = basis.terms().iter().enumerate().filter_map(|(j, t)| {
        let dot: i64 = t
            .exponents
            .iter()
            .zip(lambda)
            .map(|(&a, l)| a as i64 * l)
            .sum();
        (dot == lambda[t.component]).then(|| {
            let mut v = vec![Rational::zero(); basis.len()];
            v[j] = int(1);
            v
        })
    });
    Subspace::from_vectors(basis.len(), units).unwrap()
}

const P: i128 = (1 << 61) - 1;

fn mod_p(x: &BigInt) -> i128 {
    let r = x.mod_floor(&BigInt::from(P));
    r.to_i128().unwrap()
}

fn pow_mod(mut b: i128, mut e: i128) -> i128 {
    let mut acc = 1i128;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: i128) -> i128 {
    pow_mod(a, P - 2)
}

/// Rank over `Z/p` for the Mersenne prime `2^61 − 1`; equals the rational rank
/// for the small-entry matrices used in tests.
pub fn rank_mod_p(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<i128>> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| mod_p(x.numer()) * inv_mod(mod_p(x.denom())) % P)
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = inv_mod(a[rank][c]);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = ((*x - f * y) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `Ad_L^k` assembled column by column through the generic Jacobian route.
pub fn ad_matrix_via_jacobians(l: &RatMatrix, k: usize) -> RatMatrix {
    let n = l.rows();
    let basis = slice_basis(n, k);
    let h = TruncatedVF::from_linear(l, 1).unwrap();
    let cols: Vec<Vec<Rational>> = (0..basis.len())
        .map(|j| {
            basis
                .to_coords(&ad_apply(&h, &basis.element(j), k))
                .unwrap()
        })
        .collect();
    RatMatrix::from_columns(basis.len(), &cols).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    RatMatrix::from_ints(&rows)
}

pub fn random_field<R: Rng>(rng: &mut R, n: usize, k: usize) -> HomogeneousVF {
    let basis = slice_basis(n, k);
    let coeffs: Vec<Rational> = (0..basis.len())
        .map(|_| {
            if rng.gen_bool(0.5) {
                int(0)
            } else {
                int(rng.gen_range(-3..=3))
            }
        })
        .collect();
    basis.from_coords(&coeffs).unwrap()
}

/// A jet with linear part `l` and random nonlinear parts of degrees `2..=k`.
pub fn random_jet<R: Rng>(rng: &mut R, l: &RatMatrix, k: usize) -> TruncatedVF {
    let n = l.rows();
    let mut h = TruncatedVF::from_linear(l, k).unwrap();
    for d in 2..=k {
        h.set_part(random_field(rng, n, d)).unwrap();
    }
    h
}

/// Random jet projected onto the reversible-equivariant fields of `g`.
pub fn random_reversible_jet<R: Rng>(rng: &mut R, g: &SignedGroup, k: usize) -> TruncatedVF {
    let n = g.n();
    let l = g.reynolds_linear(&random_matrix(rng, n, 3), ActionMode::Reversible);
    let mut h = TruncatedVF::from_linear(&l, k).unwrap();
    for d in 2..=k {
        let p = g.reynolds_reversible(&random_field(rng, n, d)).unwrap();
        h.set_part(p).unwrap();
    }
    h
}

fn gen(n: usize, gens: &[SignedElement]) -> SignedGroup {
    SignedGroup::generate(n, gens, DEFAULT_ORDER_CAP).unwrap()
}

pub fn minus_identity(n: usize) -> SignedGroup {
    gen(
        n,
        &[SignedElement::symmetry(
            RatMatrix::identity(n).scaled(&int(-1)),
        )],
    )
}

/// `Z_2` generated by `diag(1, −1)` acting as a reversing symmetry.
pub fn reversing_reflection() -> SignedGroup {
    gen(
        2,
        &[SignedElement::reversing(RatMatrix::from_ints(&[
            [1, 0],
            [0, -1],
        ]))],
    )
}

/// Dihedral group of order 8 with rotations as symmetries and reflections reversing.
pub fn dihedral8() -> SignedGroup {
    gen(
        2,
        &[
            SignedElement::symmetry(RatMatrix::from_ints(&[[0, -1], [1, 0]])),
            SignedElement::reversing(RatMatrix::from_ints(&[[1, 0], [0, -1]])),
        ],
    )
}

/// Signed permutation groups on `Q^3`.
pub fn groups_n3() -> Vec<SignedGroup> {
    vec![
        gen(
            3,
            &[SignedElement::reversing(RatMatrix::from_ints(&[
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, -1],
            ]))],
        ),
        gen(
            3,
            &[SignedElement::reversing(RatMatrix::from_ints(&[
                [0, 1, 0],
                [1, 0, 0],
                [0, 0, 1],
            ]))],
        ),
        gen(
            3,
            &[
                SignedElement::symmetry(RatMatrix::from_ints(&[[-1, 0, 0], [0, -1, 0], [0, 0, 1]])),
                SignedElement::reversing(RatMatrix::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, -1]])),
            ],
        ),
    ]
}

pub fn groups_n2() -> Vec<SignedGroup> {
    vec![
        SignedGroup::trivial(2),
        minus_identity(2),
        reversing_reflection(),
        dihedral8(),
        gen(
            2,
            &[SignedElement::reversing(
                RatMatrix::identity(2).scaled(&int(-1)),
            )],
        ),
    ]
}
