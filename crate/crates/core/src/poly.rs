//! Sparse multivariate polynomials with rational coefficients, used as the
//! component functions of polynomial maps.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::ratlinalg::Rational;

pub type Exponents = Vec<u32>;

pub fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|&a| a as usize).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// The linear form `sum_j row[j] x_j`.
    pub fn linear_form(row: &[Rational]) -> Self {
        let n = row.len();
        let mut p = Self::zero(n);
        for (j, c) in row.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: Rational) {
        debug_assert_eq!(exponents.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scaled(&self, s: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> Poly {
        self.scaled(&-Rational::one())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn truncated(&self, max_degree: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Part of exact total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product, dropping every term of total degree above `max_degree`.
    pub fn mul_truncated(&self, other: &Poly, max_degree: Option<usize>) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for (eb, cb) in &other.terms {
                if let Some(m) = max_degree {
                    if da + total_degree(eb) > m {
                        continue;
                    }
                }
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e[var];
            if a == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Rational::from_integer(a.into()));
        }
        out
    }

    /// Substitutes `x_j := subs[j]`, truncating at `max_degree` when given.
    pub fn compose(&self, subs: &[Poly], max_degree: Option<usize>) -> Poly {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        let out_vars = subs.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = subs
            .iter()
            .map(|s| {
                vec![
                    Poly::monomial(vec![0; out_vars], Rational::one()),
                    s.clone(),
                ]
            })
            .collect();
        let mut out = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut acc = Poly::monomial(vec![0; out_vars], c.clone());
            for (j, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[j].len() <= a as usize {
                    let next = powers[j]
                        .last()
                        .unwrap()
                        .mul_truncated(&subs[j], max_degree);
                    powers[j].push(next);
                }
                acc = acc.mul_truncated(&powers[j][a as usize], max_degree);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }
}

/// Matrix-vector product of polynomial matrices with truncation.
pub fn mat_vec(m: &[Vec<Poly>], v: &[Poly], max_degree: Option<usize>) -> Vec<Poly> {
    let nvars = v.first().map_or(0, Poly::nvars);
    m.iter()
        .map(|row| {
            let mut acc = Poly::zero(nvars);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign(&a.mul_truncated(b, max_degree));
                }
            }
            acc
        })
        .collect()
}

/// Jacobian of a polynomial map: entry `(i, j)` is `d f_i / d x_j`.
pub fn jacobian_of(f: &[Poly]) -> Vec<Vec<Poly>> {
    f.iter()
        .map(|fi| (0..fi.nvars()).map(|j| fi.derivative(j)).collect())
        .collect()
}
