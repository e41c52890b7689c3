//! Exact rational scalars, dense matrices, row reduction, subspaces and quotients.
//!
//! Every solve is deterministic: leftmost pivots, pivots normalized to one, and
//! free variables set to zero unless a caller asks for another fill value.

use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Zero vector of length `n`.
pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`, skipping the work when `s` is zero.
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

/// Dense row-major matrix. Column `j` of a linear map holds the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, s: Rational) -> Self {
        Matrix::identity(n).scale(&s)
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds from rows; all rows must share a length. `cols` disambiguates the empty case.
    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in {cols}-column matrix",
                    r.len()
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds from columns of length `rows`.
    pub fn from_cols(cols: &[Vec<Rational>], rows: usize) -> Result<Self> {
        Ok(Matrix::from_rows(cols, rows)?.transpose())
    }

    /// Integer convenience constructor for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Matrix::from_rows(&data, cols).expect("ragged integer matrix")
    }

    pub fn diag(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[Rational]) {
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = zero_vec(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: add_vec(&self.entries, &other.entries),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix difference dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: sub_vec(&self.entries, &other.entries),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: scale_vec(s, &self.entries),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-Rational::one())
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Row-major flattening, the coordinate convention for spaces of matrices.
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn unflatten(n_rows: usize, n_cols: usize, v: &[Rational]) -> Result<Matrix> {
        Matrix::from_entries(n_rows, n_cols, v.to_vec())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        a.hcat(b).vcat(&c.hcat(d))
    }

    /// Submatrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        solve(self, &Matrix::identity(self.rows))
            .filter(|x| self.mul(x) == Matrix::identity(self.rows))
    }
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead_row = 0;
    for c in 0..a.cols {
        if lead_row == a.rows {
            break;
        }
        let Some(p) = (lead_row..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        if p != lead_row {
            for k in 0..a.cols {
                a.entries.swap(p * a.cols + k, lead_row * a.cols + k);
            }
        }
        let inv = a.get(lead_row, c).recip();
        for k in c..a.cols {
            let v = a.get(lead_row, k) * &inv;
            a.set(lead_row, k, v);
        }
        let pivot_row = a.row(lead_row).to_vec();
        for r in 0..a.rows {
            if r == lead_row {
                continue;
            }
            let f = a.get(r, c).clone();
            if f.is_zero() {
                continue;
            }
            for k in c..a.cols {
                if !pivot_row[k].is_zero() {
                    let v = a.get(r, k) - &f * &pivot_row[k];
                    a.set(r, k, v);
                }
            }
        }
        pivots.push(c);
        lead_row += 1;
    }
    (a, pivots)
}

/// One solution of `a x = b`, free variables zero; `None` when inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    solve_with_free(a, b, &Rational::zero())
}

/// As [`solve`], with every free variable set to `free`.
pub fn solve_with_free(a: &Matrix, b: &Matrix, free: &Rational) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve: row mismatch");
    let n = a.cols;
    let (red, pivots) = rref(&a.hcat(b));
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(n, b.cols);
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for col in 0..b.cols {
        for &f in &free_cols {
            x.set(f, col, free.clone());
        }
        for (r, &p) in pivots.iter().enumerate() {
            let mut v = red.get(r, n + col).clone();
            if !free.is_zero() {
                for &f in &free_cols {
                    v -= red.get(r, f) * free;
                }
            }
            x.set(p, col, v);
        }
    }
    Some(x)
}

/// Vector form of [`solve`].
pub fn solve_vec(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    solve_vec_with_free(a, b, &Rational::zero())
}

pub fn solve_vec_with_free(a: &Matrix, b: &[Rational], free: &Rational) -> Option<Vec<Rational>> {
    let bm = Matrix::from_cols(&[b.to_vec()], b.len()).ok()?;
    solve_with_free(a, &bm, free).map(|x| x.col(0))
}

/// RREF basis of the null space of `a`.
pub fn kernel_basis(a: &Matrix) -> Subspace {
    let n = a.cols;
    let (red, pivots) = rref(a);
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = zero_vec(n);
        v[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, f).clone();
        }
        basis.push(v);
    }
    Subspace::span(n, &basis)
}

/// A subspace of `Q^n` stored as an RREF row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary vectors, canonicalized to RREF.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = Matrix::from_rows(vectors, ambient_dim).expect("span: vector length mismatch");
        let (red, pivots) = rref(&m);
        let basis = red.slice(0..pivots.len(), 0..ambient_dim);
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|c| m.col(c)).collect();
        Subspace::span(m.rows(), &cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim())
            .map(|r| self.basis.row(r).to_vec())
            .collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its pivot-determined projection; zero exactly on the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = out[p].clone();
            if !f.is_zero() {
                axpy(&mut out, &-f, self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of a member with respect to the RREF basis (its pivot entries).
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of basis rows.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.ambient_dim);
        for (r, c) in coords.iter().enumerate() {
            axpy(&mut out, c, self.basis.row(r));
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vs)
    }
}

/// `Q^n / sub` with canonical coset coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient_dim: usize,
    sub: Subspace,
    complement_coords: Vec<usize>,
}

/// Quotient of the ambient space by `sub`.
pub fn quotient(ambient_dim: usize, sub: &Subspace) -> Result<QuotientSpace> {
    if sub.ambient_dim() != ambient_dim {
        return Err(Error::Dimension(format!(
            "subspace of Q^{} in quotient of Q^{ambient_dim}",
            sub.ambient_dim()
        )));
    }
    let complement_coords = (0..ambient_dim)
        .filter(|c| !sub.pivots().contains(c))
        .collect();
    Ok(QuotientSpace {
        ambient_dim,
        sub: sub.clone(),
        complement_coords,
    })
}

impl QuotientSpace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.complement_coords.len()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn complement_coords(&self) -> &[usize] {
        &self.complement_coords
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.sub.reduce(v)
    }

    /// Coordinates of the class of `v`.
    pub fn class_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.reduce(v);
        self.complement_coords
            .iter()
            .map(|&c| r[c].clone())
            .collect()
    }

    /// Canonical representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut v = zero_vec(self.ambient_dim);
        for (&c, x) in self.complement_coords.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    pub fn same_class(&self, a: &[Rational], b: &[Rational]) -> bool {
        self.sub.contains(&sub_vec(a, b))
    }
}
