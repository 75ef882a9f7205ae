//! Graded polynomial vector fields.
//!
//! A degree-`k` homogeneous field on `Q^n` is a combination of basis terms
//! `x^α e_i` with `|α| = k`. Slices are coordinatized by [`SliceBasis`] in the
//! canonical order: component ascending, then exponents lexicographically
//! descending (`x1^2, x1*x2, x2^2` for `n = 2, k = 2`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{jacobian_of, mat_vec, total_degree, Poly};
use crate::ratlinalg::{RatMatrix, Rational};

/// Label of the basis term `x^exponents e_{component+1}`. Components are
/// zero-based here and rendered one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermIndex {
    pub component: usize,
    pub exponents: Vec<u32>,
}

impl TermIndex {
    pub fn new(component: usize, exponents: Vec<u32>) -> Self {
        TermIndex {
            component,
            exponents,
        }
    }

    pub fn degree(&self) -> usize {
        total_degree(&self.exponents)
    }
}

impl Ord for TermIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.component
            .cmp(&other.component)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for TermIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of length `n` and total degree `k`, lexicographically descending.
pub fn monomials(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(n - 1, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, k as u32, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Dimension of the slice `P_V^k` of degree-`k` fields on `Q^n`.
pub fn slice_dim(n: usize, k: usize) -> usize {
    if n == 0 {
        0
    } else {
        n * binomial(n + k - 1, k)
    }
}

#[derive(Clone, Debug)]
pub struct SliceBasis {
    n: usize,
    degree: usize,
    terms: Vec<TermIndex>,
    positions: HashMap<TermIndex, usize>,
}

impl SliceBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let monos = monomials(n, degree);
        let terms: Vec<TermIndex> = (0..n)
            .flat_map(|i| monos.iter().map(move |e| TermIndex::new(i, e.clone())))
            .collect();
        let positions = terms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        SliceBasis {
            n,
            degree,
            terms,
            positions,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[TermIndex] {
        &self.terms
    }

    pub fn position(&self, t: &TermIndex) -> Option<usize> {
        self.positions.get(t).copied()
    }

    /// The field consisting of basis term `j` alone.
    pub fn element(&self, j: usize) -> HomogeneousVF {
        let mut p = HomogeneousVF::zero(self.n, self.degree);
        p.coeffs.insert(self.terms[j].clone(), Rational::one());
        p
    }

    fn check(&self, p: &HomogeneousVF) -> Result<()> {
        if p.n == self.n && p.degree == self.degree {
            Ok(())
        } else {
            Err(Error::SliceMismatch {
                n: self.n,
                degree: self.degree,
                found_n: p.n,
                found_degree: p.degree,
            })
        }
    }

    pub fn to_coords(&self, p: &HomogeneousVF) -> Result<Vec<Rational>> {
        self.check(p)?;
        let mut v = vec![Rational::zero(); self.len()];
        for (t, c) in &p.coeffs {
            v[self.positions[t]] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[Rational]) -> Result<HomogeneousVF> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        let coeffs = self
            .terms
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        Ok(HomogeneousVF {
            n: self.n,
            degree: self.degree,
            coeffs,
        })
    }
}

pub fn slice_basis(n: usize, k: usize) -> SliceBasis {
    SliceBasis::new(n, k)
}

/// A homogeneous polynomial vector field of fixed degree (an element of `P_V^k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousVF {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<TermIndex, Rational>,
}

impl HomogeneousVF {
    pub fn zero(n: usize, degree: usize) -> Self {
        HomogeneousVF {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (TermIndex, Rational)>,
    {
        let mut p = Self::zero(n, degree);
        for (t, c) in terms {
            p.add_term(t, c)?;
        }
        Ok(p)
    }

    /// The linear field `x ↦ L x`.
    pub fn from_linear(l: &RatMatrix) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::DimensionMismatch {
                expected: l.rows(),
                found: l.cols(),
            });
        }
        let n = l.rows();
        let mut p = Self::zero(n, 1);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                p.add_term(TermIndex::new(i, e), l[(i, j)].clone())?;
            }
        }
        Ok(p)
    }

    pub fn add_term(&mut self, t: TermIndex, c: Rational) -> Result<()> {
        if t.component >= self.n || t.exponents.len() != self.n || t.degree() != self.degree {
            return Err(Error::SliceMismatch {
                n: self.n,
                degree: self.degree,
                found_n: t.exponents.len(),
                found_degree: t.degree(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(t).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t: &TermIndex) -> Rational {
        self.coeffs.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TermIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        if !s.is_zero() {
            out.coeffs = self
                .coeffs
                .iter()
                .map(|(t, c)| (t.clone(), c * s))
                .collect();
        }
        out
    }

    /// Panics if the two fields live in different slices.
    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.n == other.n && self.degree == other.degree,
            "adding fields from different slices"
        );
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), c.clone()).expect("same slice");
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn components(&self) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.n); self.n];
        for (t, c) in &self.coeffs {
            out[t.component].add_term(t.exponents.clone(), c.clone());
        }
        out
    }

    /// Collects the degree-`degree` terms of a polynomial map; other degrees are an error.
    pub fn from_components(n: usize, degree: usize, f: &[Poly]) -> Result<Self> {
        if f.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.len(),
            });
        }
        let mut out = Self::zero(n, degree);
        for (i, fi) in f.iter().enumerate() {
            for (e, c) in fi.terms() {
                out.add_term(TermIndex::new(i, e.clone()), c.clone())?;
            }
        }
        Ok(out)
    }

    /// `x ↦ p(M x)`.
    pub fn substitute_linear(&self, m: &RatMatrix) -> Self {
        assert_eq!(m.rows(), self.n);
        let subs: Vec<Poly> = (0..self.n).map(|i| Poly::linear_form(m.row(i))).collect();
        let comps: Vec<Poly> = self
            .components()
            .iter()
            .map(|c| c.compose(&subs, None))
            .collect();
        Self::from_components(self.n, self.degree, &comps)
            .expect("linear substitution keeps degree")
    }

    /// `x ↦ M p(x)`.
    pub fn left_mul(&self, m: &RatMatrix) -> Self {
        assert_eq!(m.cols(), self.n);
        let comps = self.components();
        let mut out = Self::zero(self.n, self.degree);
        for (r, row) in (0..m.rows()).map(|r| (r, m.row(r))) {
            for (j, mij) in row.iter().enumerate() {
                if mij.is_zero() {
                    continue;
                }
                for (e, c) in comps[j].terms() {
                    out.add_term(TermIndex::new(r, e.clone()), mij * c)
                        .expect("same slice");
                }
            }
        }
        out
    }
}

fn fmt_monomial(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(j, &a)| {
            if a == 1 {
                format!("x{}", j + 1)
            } else {
                format!("x{}^{}", j + 1, a)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for HomogeneousVF {
    /// Renders e.g. `(3/2)*x1^2*x2 e_1 - x2^3 e_2`, in canonical term order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mono = fmt_monomial(&t.exponents);
            let coeff = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
            write!(f, " e_{}", t.component + 1)?;
        }
        Ok(())
    }
}

/// Jacobian `(dp)_x`; entry `(i, j)` is `∂p_i/∂x_j`, homogeneous of degree `k − 1`.
pub fn jacobian(p: &HomogeneousVF) -> Vec<Vec<Poly>> {
    jacobian_of(&p.components())
}

/// `Ad_h(ξ) = (dξ) h − (dh) ξ` for homogeneous `h` and `ξ`; the result has
/// degree `deg h + deg ξ − 1`.
pub fn ad_homogeneous(h: &HomogeneousVF, xi: &HomogeneousVF) -> HomogeneousVF {
    assert_eq!(h.n, xi.n, "fields on different spaces");
    let n = h.n;
    let out_degree = (h.degree + xi.degree).saturating_sub(1);
    let hc = h.components();
    let xc = xi.components();
    let first = mat_vec(&jacobian_of(&xc), &hc, None);
    let second = mat_vec(&jacobian_of(&hc), &xc, None);
    let diff: Vec<Poly> = first
        .iter()
        .zip(&second)
        .map(|(a, b)| {
            let mut d = a.clone();
            d.add_scaled(b, &-Rational::one());
            d
        })
        .collect();
    HomogeneousVF::from_components(n, out_degree, &diff)
        .expect("Ad of homogeneous fields is homogeneous")
}

/// A jet `j^N h`: homogeneous parts of degrees `1..=N`, no constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedVF {
    n: usize,
    max_degree: usize,
    parts: BTreeMap<usize, HomogeneousVF>,
}

impl TruncatedVF {
    pub fn zero(n: usize, max_degree: usize) -> Self {
        TruncatedVF {
            n,
            max_degree,
            parts: BTreeMap::new(),
        }
    }

    pub fn from_linear(l: &RatMatrix, max_degree: usize) -> Result<Self> {
        let mut h = Self::zero(l.rows(), max_degree);
        h.set_part(HomogeneousVF::from_linear(l)?)?;
        Ok(h)
    }

    pub fn from_parts<I>(n: usize, max_degree: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = HomogeneousVF>,
    {
        let mut h = Self::zero(n, max_degree);
        for p in parts {
            h.add_part(&p)?;
        }
        Ok(h)
    }

    fn check_part(&self, p: &HomogeneousVF) -> Result<()> {
        if p.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n,
            });
        }
        if p.degree == 0 && !p.is_zero() {
            return Err(Error::NonzeroConstant);
        }
        if p.degree > self.max_degree {
            return Err(Error::DegreeError(format!(
                "part of degree {} exceeds truncation degree {}",
                p.degree, self.max_degree
            )));
        }
        Ok(())
    }

    /// Replaces the part of degree `p.degree()`.
    pub fn set_part(&mut self, p: HomogeneousVF) -> Result<()> {
        self.check_part(&p)?;
        if p.is_zero() {
            self.parts.remove(&p.degree);
        } else {
            self.parts.insert(p.degree, p);
        }
        Ok(())
    }

    pub fn add_part(&mut self, p: &HomogeneousVF) -> Result<()> {
        self.check_part(p)?;
        let sum = match self.parts.get(&p.degree) {
            Some(q) => q.add(p),
            None => p.clone(),
        };
        self.set_part(sum)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn part(&self, k: usize) -> Option<&HomogeneousVF> {
        self.parts.get(&k)
    }

    pub fn part_or_zero(&self, k: usize) -> HomogeneousVF {
        self.parts
            .get(&k)
            .cloned()
            .unwrap_or_else(|| HomogeneousVF::zero(self.n, k))
    }

    /// Nonzero parts in ascending degree.
    pub fn parts(&self) -> impl Iterator<Item = &HomogeneousVF> {
        self.parts.values()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The matrix `L` with `h_1(x) = L x`.
    pub fn linear_part(&self) -> RatMatrix {
        let mut l = RatMatrix::zeros(self.n, self.n);
        if let Some(p) = self.parts.get(&1) {
            for (t, c) in p.terms() {
                let j = t
                    .exponents
                    .iter()
                    .position(|&a| a == 1)
                    .expect("degree-1 term");
                l[(t.component, j)] = c.clone();
            }
        }
        l
    }

    /// Same field with truncation degree `max_degree`; higher parts are dropped.
    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        TruncatedVF {
            n: self.n,
            max_degree,
            parts: self
                .parts
                .range(..=max_degree)
                .map(|(&k, p)| (k, p.clone()))
                .collect(),
        }
    }

    pub fn components(&self) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.n); self.n];
        for p in self.parts.values() {
            for (o, c) in out.iter_mut().zip(p.components()) {
                o.add_assign(&c);
            }
        }
        out
    }

    /// Splits a polynomial map into graded parts, dropping degrees above `max_degree`.
    pub fn from_components(n: usize, max_degree: usize, f: &[Poly]) -> Result<Self> {
        if f.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.len(),
            });
        }
        let mut h = Self::zero(n, max_degree);
        for (i, fi) in f.iter().enumerate() {
            for (e, c) in fi.terms() {
                let d = total_degree(e);
                if d == 0 {
                    return Err(Error::NonzeroConstant);
                }
                if d > max_degree {
                    continue;
                }
                let part =
                    HomogeneousVF::from_terms(n, d, [(TermIndex::new(i, e.clone()), c.clone())])?;
                h.add_part(&part)?;
            }
        }
        Ok(h)
    }
}

impl fmt::Display for TruncatedVF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.values().enumerate() {
            if i > 0 {
                write!(f, " + [")?;
            } else {
                write!(f, "[")?;
            }
            write!(f, "{p}]")?;
        }
        Ok(())
    }
}

/// Degree-`d` graded component of `Ad_h(ξ)`. Only the part `h_m` with
/// `m + deg ξ − 1 = d` contributes.
pub fn ad_apply(h: &TruncatedVF, xi: &HomogeneousVF, d: usize) -> HomogeneousVF {
    let n = h.n;
    let l = xi.degree;
    if l == 0 || d + 1 < l {
        return HomogeneousVF::zero(n, d);
    }
    let m = d + 1 - l;
    match h.part(m) {
        Some(hm) if m >= 1 => ad_homogeneous(hm, xi),
        _ => HomogeneousVF::zero(n, d),
    }
}

/// A near-identity change of coordinates `y ↦ y + ξ̃(y)` with `ξ̃` of order ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearIdentity {
    tail: TruncatedVF,
}

impl NearIdentity {
    pub fn identity(n: usize) -> Self {
        NearIdentity {
            tail: TruncatedVF::zero(n, 2),
        }
    }

    pub fn new(tail: TruncatedVF) -> Result<Self> {
        if tail.part(1).is_some() {
            return Err(Error::DegreeError(
                "near-identity change has a linear term".into(),
            ));
        }
        Ok(NearIdentity { tail })
    }

    pub fn from_part(xi: HomogeneousVF) -> Result<Self> {
        if xi.degree < 2 {
            return Err(Error::DegreeError(format!(
                "change of coordinates must have degree >= 2, got {}",
                xi.degree
            )));
        }
        let mut tail = TruncatedVF::zero(xi.n, xi.degree);
        tail.set_part(xi)?;
        Ok(NearIdentity { tail })
    }

    pub fn tail(&self) -> &TruncatedVF {
        &self.tail
    }

    pub fn n(&self) -> usize {
        self.tail.n
    }

    /// `self ∘ other`, truncated at `max_degree`.
    pub fn then(&self, other: &NearIdentity, max_degree: usize) -> Result<NearIdentity> {
        let mut tail = compose_truncate(&self.tail, other, max_degree)?;
        for p in other.tail.with_max_degree(max_degree).parts() {
            tail.add_part(p)?;
        }
        NearIdentity::new(tail)
    }

    fn substitution(&self) -> Vec<Poly> {
        let n = self.n();
        let mut subs = self.tail.components();
        for (i, s) in subs.iter_mut().enumerate() {
            s.add_assign(&Poly::var(n, i));
        }
        subs
    }
}

/// Graded parts of `f(y + ξ̃(y))` up to degree `max_degree`.
pub fn compose_truncate(
    f: &TruncatedVF,
    g: &NearIdentity,
    max_degree: usize,
) -> Result<TruncatedVF> {
    if f.n != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: g.n(),
        });
    }
    let subs = g.substitution();
    let comps: Vec<Poly> = f
        .components()
        .iter()
        .map(|c| c.compose(&subs, Some(max_degree)))
        .collect();
    TruncatedVF::from_components(f.n, max_degree, &comps)
}

/// The conjugated field `g(y) = (I + dξ̃(y))^{-1} h(y + ξ̃(y))`, truncated at
/// `max_degree`. The inverse is the Neumann series `Σ (−dξ̃)^m`, which
/// terminates under truncation because `dξ̃` has no constant term.
pub fn conjugate(h: &TruncatedVF, phi: &NearIdentity, max_degree: usize) -> Result<TruncatedVF> {
    let pulled = compose_truncate(h, phi, max_degree)?;
    let jac = jacobian_of(&phi.tail.components());
    let neg_jac: Vec<Vec<Poly>> = jac
        .iter()
        .map(|row| row.iter().map(Poly::neg).collect())
        .collect();
    let mut term = pulled.components();
    let mut total = term.clone();
    loop {
        term = mat_vec(&neg_jac, &term, Some(max_degree));
        if term.iter().all(Poly::is_zero) {
            break;
        }
        for (t, x) in total.iter_mut().zip(&term) {
            t.add_assign(x);
        }
    }
    TruncatedVF::from_components(h.n, max_degree, &total)
}

/// Conjugates `h` by `I + ξ_k`. Parts of degree `< k` are unchanged and the
/// degree-`k` part becomes `h_k − Ad_L^k(ξ_k)`.
pub fn pushforward(h: &TruncatedVF, xi: &HomogeneousVF, max_degree: usize) -> Result<TruncatedVF> {
    if xi.degree > max_degree {
        return Err(Error::DegreeError(format!(
            "change of degree {} exceeds truncation degree {max_degree}",
            xi.degree
        )));
    }
    let phi = NearIdentity::from_part(xi.clone())?;
    conjugate(h, &phi, max_degree)
}
