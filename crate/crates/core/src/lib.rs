//! Exact normal forms and complete transversals for polynomial vector fields.
//!
//! Everything is computed degree by degree over the rationals: the homological
//! operator on each graded slice, its kernel for the transposed linear part
//! (the normal-form space), Reynolds projections onto reversible-equivariant
//! slices of a finite signed group, tangent slices to orbits of jets, and the
//! successive near-identity reduction to normal form.

pub mod error;
pub mod homological;
pub mod normalform;
pub mod poly;
pub mod polyvec;
pub mod ratlinalg;
pub mod symmetry;
pub mod transversal;

pub use error::{Error, Result};
pub use homological::{
    ad_matrix, nf_space_nonsym, nf_space_reveq, verify_decomposition, DecompositionReport,
    HomologicalMatrix,
};
pub use normalform::{reduce, replay, split, DegreeCertificate, ReductionResult};
pub use polyvec::{
    ad_apply, compose_truncate, conjugate, jacobian, pushforward, slice_basis, slice_dim,
    HomogeneousVF, NearIdentity, SliceBasis, TermIndex, TruncatedVF,
};
pub use ratlinalg::{
    frac, in_span, int, kernel_basis, rref, subspace_intersect, subspace_sum, Echelon, RatMatrix,
    Rational, Subspace,
};
pub use symmetry::{ActionMode, Mode, Sign, SignedElement, SignedGroup, DEFAULT_ORDER_CAP};
pub use transversal::{
    complete_transversal, tangent_slice, verify_containment, verify_containment_with,
    JetOrbitSlice, TransversalReport,
};
