//! Dense exact linear algebra over arbitrary-precision rationals.
//!
//! Subspaces are stored as the reduced row echelon form of a basis matrix, so
//! two [`Subspace`] values span the same set exactly when they compare equal.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix from row vectors. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor for small integer matrices. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Panics if `v.len() != self.cols()`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let ech = rref(&aug);
        if ech.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = ech.matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of [`rref`]: the canonical echelon matrix, its pivot columns and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Scales a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x /= &g;
        }
    }
}

/// Gauss-Jordan elimination computing the unique reduced row echelon form.
///
/// Works fraction-free on integer rows kept primitive, pivoting on the
/// sparsest available row; only the final normalisation divides.
pub fn rref(m: &RatMatrix) -> Echelon {
    let cols = m.cols;
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|r| integer_row(m.row(r))).collect();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let weight = |r: &Vec<BigInt>| r.iter().filter(|x| !x.is_zero()).count();
        let Some(found) = (pivot_row..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| (weight(&rows[r]), rows[r][col].bits()))
        else {
            continue;
        };
        rows.swap(pivot_row, found);
        let (before, rest) = rows.split_at_mut(pivot_row);
        let (prow, after) = rest.split_first_mut().expect("pivot row");
        let p = prow[col].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let g = p.gcd(&row[col]);
            let a = &p / &g;
            let b = &row[col] / &g;
            for c in 0..cols {
                if row[c].is_zero() && prow[c].is_zero() {
                    continue;
                }
                row[c] = &a * &row[c] - &b * &prow[c];
            }
            make_primitive(row);
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let mut a = RatMatrix::zeros(m.rows, cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let p = rows[i][pc].clone();
        for c in pc..cols {
            if !rows[i][c].is_zero() {
                a[(i, c)] = Rational::new(rows[i][c].clone(), p.clone());
            }
        }
    }
    let rank = pivots.len();
    Echelon {
        matrix: a,
        pivots,
        rank,
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank
}

/// Null space of `m` as a subspace of `Q^cols`.
pub fn kernel_basis(m: &RatMatrix) -> Subspace {
    let ech = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols).filter(|&f| !is_pivot[f]).map(|free| {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (i, &p) in ech.pivots.iter().enumerate() {
            v[p] = -ech.matrix[(i, free)].clone();
        }
        v
    });
    Subspace::from_vectors(cols, vectors).expect("kernel vectors have matching length")
}

/// One solution of `m x = b` with every free variable set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let mut aug = RatMatrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols)] = b[r].clone();
    }
    let ech = rref(&aug);
    if ech.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix[(i, m.cols)].clone();
    }
    Ok(Some(x))
}

/// A linear subspace of `Q^ambient_dim`, stored as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RatMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RatMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors (which need not be independent).
    pub fn from_vectors<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let rows: Vec<Vec<Rational>> = vectors.into_iter().collect();
        let m = RatMatrix::from_rows_with_cols(rows, ambient_dim).map_err(|e| match e {
            Error::DimensionMismatch { expected, found } => Error::AmbientMismatch {
                left: expected,
                right: found,
            },
            other => other,
        })?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &RatMatrix) -> Self {
        let ech = rref(m);
        let mut basis = RatMatrix::zeros(ech.rank, m.cols);
        for r in 0..ech.rank {
            for c in 0..m.cols {
                basis[(r, c)] = ech.matrix[(r, c)].clone();
            }
        }
        Subspace {
            ambient_dim: m.cols,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn column_space(m: &RatMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, len: usize) -> Result<()> {
        if len == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: len,
            })
        }
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        self.check_ambient(v.len())?;
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = rest[p].clone();
            if !c.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(i)) {
                    if !b.is_zero() {
                        *x -= &c * b;
                    }
                }
            }
            coords.push(c);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(coords))
    }

    /// Membership test (`in_span`).
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_ambient(self.ambient_dim)?;
        for v in self.vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Returns `a + b` and whether the sum is direct.
    pub fn sum(&self, other: &Subspace) -> Result<(Subspace, bool)> {
        self.check_ambient(other.ambient_dim)?;
        let s = Subspace::from_vectors(
            self.ambient_dim,
            self.vectors()
                .chain(other.vectors())
                .map(<[Rational]>::to_vec),
        )?;
        let direct = s.dim() == self.dim() + other.dim();
        Ok((s, direct))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient_dim)?;
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solve sum_i c_i a_i = sum_j d_j b_j: kernel of [A^T | -B^T].
        let mut m = RatMatrix::zeros(self.ambient_dim, da + db);
        for (i, a) in self.vectors().enumerate() {
            for (r, x) in a.iter().enumerate() {
                m[(r, i)] = x.clone();
            }
        }
        for (j, b) in other.vectors().enumerate() {
            for (r, x) in b.iter().enumerate() {
                m[(r, da + j)] = -x.clone();
            }
        }
        let ker = kernel_basis(&m);
        let vectors = ker.vectors().map(|coeffs| {
            let mut v = vec![Rational::zero(); self.ambient_dim];
            for (c, a) in coeffs[..da].iter().zip(self.vectors()) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(a) {
                    *x += c * y;
                }
            }
            v
        });
        Subspace::from_vectors(self.ambient_dim, vectors)
    }
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<(Subspace, bool)> {
    a.sum(b)
}

pub fn in_span(v: &[Rational], s: &Subspace) -> Result<bool> {
    s.contains(v)
}
