//! Finite signed matrix groups `(Γ, σ)` acting on polynomial vector fields.
//!
//! An element `γ` acts on a field `p` by `p ↦ ρ_σ(γ)^{-1} p(ρ(γ) x)` with
//! `ρ_σ(γ) = σ(γ) ρ(γ)` in reversible mode and `ρ_σ = ρ` in equivariant mode.
//! Fixed points of the first are the reversible-equivariant fields
//! `g(ρ(γ)x) = ρ_σ(γ) g(x)`, of the second the equivariant ones.

use std::collections::{HashMap, VecDeque};
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polyvec::{slice_basis, HomogeneousVF, TruncatedVF};
use crate::ratlinalg::{int, RatMatrix, Rational, Subspace};

pub const DEFAULT_ORDER_CAP: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Which twist of the action to use on the target side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionMode {
    /// `g(ρx) = ρ g(x)`; the slices `P_V^k(Γ)`.
    Equivariant,
    /// `g(ρx) = σρ g(x)`; the slices `Q_V^k(Γ)`.
    Reversible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedElement {
    pub rho: RatMatrix,
    pub sigma: Sign,
}

impl SignedElement {
    pub fn new(rho: RatMatrix, sigma: Sign) -> Self {
        SignedElement { rho, sigma }
    }

    pub fn symmetry(rho: RatMatrix) -> Self {
        Self::new(rho, Sign::Plus)
    }

    pub fn reversing(rho: RatMatrix) -> Self {
        Self::new(rho, Sign::Minus)
    }

    /// `ρ_σ(γ) = σ(γ) ρ(γ)`.
    pub fn dual(&self) -> RatMatrix {
        self.rho.scaled(&int(self.sigma.value()))
    }

    fn target(&self, mode: ActionMode) -> RatMatrix {
        match mode {
            ActionMode::Equivariant => self.rho.clone(),
            ActionMode::Reversible => self.dual(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignedGroup {
    n: usize,
    elements: Vec<SignedElement>,
    inverses: Vec<RatMatrix>,
}

impl SignedGroup {
    pub fn trivial(n: usize) -> Self {
        SignedGroup {
            n,
            elements: vec![SignedElement::symmetry(RatMatrix::identity(n))],
            inverses: vec![RatMatrix::identity(n)],
        }
    }

    /// Closure of `gens` under multiplication, breadth-first from the identity.
    pub fn generate(n: usize, gens: &[SignedElement], cap: usize) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            if g.rho.rows() != n || g.rho.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if g.rho.rows() != n {
                        g.rho.rows()
                    } else {
                        g.rho.cols()
                    },
                });
            }
            if g.rho.inverse().is_none() {
                return Err(Error::SingularGenerator { index });
            }
        }
        let identity = SignedElement::symmetry(RatMatrix::identity(n));
        let mut seen: HashMap<RatMatrix, Sign> = HashMap::new();
        seen.insert(identity.rho.clone(), Sign::Plus);
        let mut elements = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let rho = &elements[i].rho * &g.rho;
                let sigma = elements[i].sigma * g.sigma;
                match seen.get(&rho) {
                    Some(&s) if s != sigma => return Err(Error::SigmaInconsistent),
                    Some(_) => {}
                    None => {
                        if elements.len() == cap {
                            return Err(Error::NotFinite { cap });
                        }
                        seen.insert(rho.clone(), sigma);
                        elements.push(SignedElement::new(rho, sigma));
                        queue.push_back(elements.len() - 1);
                    }
                }
            }
        }
        let inverses = elements
            .iter()
            .map(|e| e.rho.inverse().expect("products of invertible matrices"))
            .collect();
        Ok(SignedGroup {
            n,
            elements,
            inverses,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedElement] {
        &self.elements
    }

    pub fn is_sigma_trivial(&self) -> bool {
        self.elements.iter().all(|e| e.sigma == Sign::Plus)
    }

    /// The symmetry subgroup `Γ_+ = ker σ`.
    pub fn symmetries(&self) -> impl Iterator<Item = &SignedElement> {
        self.elements.iter().filter(|e| e.sigma == Sign::Plus)
    }

    /// The same matrices with σ forgotten.
    pub fn without_signs(&self) -> SignedGroup {
        SignedGroup {
            n: self.n,
            elements: self
                .elements
                .iter()
                .map(|e| SignedElement::symmetry(e.rho.clone()))
                .collect(),
            inverses: self.inverses.clone(),
        }
    }

    fn check_n(&self, found: usize) -> Result<()> {
        if found == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            })
        }
    }

    fn inverse_target(&self, i: usize, mode: ActionMode) -> RatMatrix {
        let inv = &self.inverses[i];
        match mode {
            ActionMode::Equivariant => inv.clone(),
            ActionMode::Reversible => inv.scaled(&int(self.elements[i].sigma.value())),
        }
    }

    /// `γ · p = ρ_mode(γ)^{-1} p(ρ(γ) x)`.
    pub fn act(&self, i: usize, p: &HomogeneousVF, mode: ActionMode) -> HomogeneousVF {
        p.substitute_linear(&self.elements[i].rho)
            .left_mul(&self.inverse_target(i, mode))
    }

    /// Group average of `γ · p`.
    pub fn reynolds(&self, p: &HomogeneousVF, mode: ActionMode) -> Result<HomogeneousVF> {
        self.check_n(p.n())?;
        let mut acc = HomogeneousVF::zero(p.n(), p.degree());
        for i in 0..self.order() {
            acc = acc.add(&self.act(i, p, mode));
        }
        Ok(acc.scaled(&Rational::new(1.into(), (self.order() as i64).into())))
    }

    pub fn reynolds_equivariant(&self, p: &HomogeneousVF) -> Result<HomogeneousVF> {
        self.reynolds(p, ActionMode::Equivariant)
    }

    pub fn reynolds_reversible(&self, p: &HomogeneousVF) -> Result<HomogeneousVF> {
        self.reynolds(p, ActionMode::Reversible)
    }

    /// Checks `p(ρ(γ)x) = ρ_mode(γ) p(x)` for every element.
    pub fn is_fixed(&self, p: &HomogeneousVF, mode: ActionMode) -> bool {
        p.n() == self.n
            && self
                .elements
                .iter()
                .all(|e| p.substitute_linear(&e.rho) == p.left_mul(&e.target(mode)))
    }

    pub fn is_reversible_equivariant(&self, p: &HomogeneousVF) -> bool {
        self.is_fixed(p, ActionMode::Reversible)
    }

    pub fn is_equivariant(&self, p: &HomogeneousVF) -> bool {
        self.is_fixed(p, ActionMode::Equivariant)
    }

    /// Image of the Reynolds projector on the degree-`k` slice.
    pub fn fixed_slice(&self, k: usize, mode: ActionMode) -> Subspace {
        let basis = slice_basis(self.n, k);
        let images = (0..basis.len()).map(|j| {
            let r = self.reynolds(&basis.element(j), mode).expect("same n");
            basis.to_coords(&r).expect("same slice")
        });
        Subspace::from_vectors(basis.len(), images).expect("slice coordinates")
    }

    /// Dimension of the fixed slice from the averaged trace of the action.
    pub fn dim_by_trace(&self, k: usize, mode: ActionMode) -> Result<usize> {
        let basis = slice_basis(self.n, k);
        let mut total = Rational::zero();
        for i in 0..self.order() {
            let rho = &self.elements[i].rho;
            let outer = self.inverse_target(i, mode);
            let subs: Vec<Poly> = (0..self.n).map(|r| Poly::linear_form(rho.row(r))).collect();
            // Diagonal entry for x^α e_c: [ρ_mode^{-1}]_{cc} times the coefficient
            // of x^α in the monomial x^α evaluated at ρx.
            let mut cache: HashMap<&[u32], Rational> = HashMap::new();
            for t in basis.terms() {
                let scale = &outer[(t.component, t.component)];
                if scale.is_zero() {
                    continue;
                }
                let self_coeff = cache
                    .entry(t.exponents.as_slice())
                    .or_insert_with(|| {
                        Poly::monomial(t.exponents.clone(), Rational::one())
                            .compose(&subs, None)
                            .coeff(&t.exponents)
                    })
                    .clone();
                total += scale * self_coeff;
            }
        }
        let avg = total / Rational::from_integer((self.order() as i64).into());
        if !avg.is_integer() || avg < Rational::zero() {
            return Err(Error::NonIntegerTrace {
                numerator: avg.numer().to_string(),
                denominator: avg.denom().to_string(),
            });
        }
        Ok(avg
            .to_integer()
            .try_into()
            .expect("dimension fits in usize"))
    }

    /// `L ρ(γ) = ρ_σ(γ) L` for every element.
    pub fn is_rev_equivariant_linear(&self, l: &RatMatrix) -> bool {
        l.rows() == self.n
            && l.cols() == self.n
            && self.elements.iter().all(|e| l * &e.rho == &e.dual() * l)
    }

    /// Average of `ρ_mode(γ)^{-1} L ρ(γ)`, projecting a linear map onto the
    /// (reversible-)equivariant ones.
    pub fn reynolds_linear(&self, l: &RatMatrix, mode: ActionMode) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.n, self.n);
        for i in 0..self.order() {
            let term = &(&self.inverse_target(i, mode) * l) * &self.elements[i].rho;
            for r in 0..self.n {
                for c in 0..self.n {
                    acc[(r, c)] += &term[(r, c)];
                }
            }
        }
        acc.scaled(&Rational::new(1.into(), (self.order() as i64).into()))
    }
}

/// The setting a computation runs in: no symmetry, or reversible-equivariant
/// for a finite signed group (equivariant when σ is trivial).
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    Nonsymmetric,
    ReversibleEquivariant(&'a SignedGroup),
}

impl<'a> Mode<'a> {
    pub fn group(&self) -> Option<&'a SignedGroup> {
        match *self {
            Mode::Nonsymmetric => None,
            Mode::ReversibleEquivariant(g) => Some(g),
        }
    }

    /// Slice the vector field lives in: `P_V^k` or `Q_V^k(Γ)`.
    pub fn target_slice(&self, n: usize, k: usize) -> Subspace {
        match self {
            Mode::Nonsymmetric => Subspace::full(slice_basis(n, k).len()),
            Mode::ReversibleEquivariant(g) => g.fixed_slice(k, ActionMode::Reversible),
        }
    }

    /// Slice coordinate changes are drawn from: `P_V^k` or `P_V^k(Γ)`.
    pub fn domain_slice(&self, n: usize, k: usize) -> Subspace {
        match self {
            Mode::Nonsymmetric => Subspace::full(slice_basis(n, k).len()),
            Mode::ReversibleEquivariant(g) => g.fixed_slice(k, ActionMode::Equivariant),
        }
    }

    pub fn check_linear(&self, l: &RatMatrix) -> Result<()> {
        match self {
            Mode::ReversibleEquivariant(g) if !g.is_rev_equivariant_linear(l) => {
                Err(Error::LinearPartNotReversible)
            }
            _ => Ok(()),
        }
    }

    /// Every part of `h` must be reversible-equivariant.
    pub fn check_jet(&self, h: &TruncatedVF) -> Result<()> {
        let Mode::ReversibleEquivariant(g) = self else {
            return Ok(());
        };
        g.check_n(h.n())?;
        self.check_linear(&h.linear_part())?;
        for p in h.parts() {
            if p.degree() >= 2 && !g.is_reversible_equivariant(p) {
                return Err(Error::JetNotReversible { degree: p.degree() });
            }
        }
        Ok(())
    }
}
