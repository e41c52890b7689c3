//! Lie algebras given by structure constants, derivations, centers and outer derivations.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, kernel_basis, quotient, rat, solve_vec_with_free, unit_vec, zero_vec, Matrix,
    QuotientSpace, Rational, Subspace,
};

/// A finite-dimensional Lie algebra over Q with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    c: Vec<Rational>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({:?}, dim {})", self.name, self.dim)
    }
}

/// First basis triple `(i, j, k)` on which the Jacobi sum does not vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: [usize; 3],
}

impl fmt::Display for JacobiFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.triple;
        write!(f, "Jacobi fails on (e{}, e{}, e{})", i + 1, j + 1, k + 1)
    }
}

impl LieAlgebra {
    /// Builds from `i < j` bracket data `(i, j, [e_i, e_j])`; antisymmetry is filled in.
    pub fn from_brackets<I>(name: impl Into<String>, dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        let mut c = zero_vec(dim * dim * dim);
        for (i, j, v) in brackets {
            if i >= j || j >= dim {
                return Err(Error::Invalid(format!(
                    "bracket key ({i},{j}) must satisfy i < j < {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket value of length {} in dimension {dim}",
                    v.len()
                )));
            }
            for (k, x) in v.into_iter().enumerate() {
                c[(j * dim + i) * dim + k] = -x.clone();
                c[(i * dim + j) * dim + k] = x;
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            c,
        })
    }

    /// Integer convenience form: `(i, j, [(k, coeff)])` with 0-based indices.
    pub fn from_table(name: &str, dim: usize, table: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let data = table.iter().map(|&(i, j, terms)| {
            let mut v = zero_vec(dim);
            for &(k, x) in terms {
                v[k] += rat(x);
            }
            (i, j, v)
        });
        LieAlgebra::from_brackets(name, dim, data).expect("invalid bracket table")
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            name: format!("abelian{dim}"),
            dim,
            c: zero_vec(dim * dim * dim),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.c[start..start + self.dim]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        out
    }

    /// `[x, e_j]`.
    pub fn bracket_with_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.bracket_basis(i, j));
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn jacobi_check(&self) -> std::result::Result<(), JacobiFailure> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket_with_basis(self.bracket_basis(i, j), k);
                    let t = self.bracket_with_basis(self.bracket_basis(j, k), i);
                    let u = self.bracket_with_basis(self.bracket_basis(k, i), j);
                    for (a, (b, c)) in s.iter_mut().zip(t.iter().zip(&u)) {
                        *a += b + c;
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return Err(JacobiFailure { triple: [i, j, k] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad(e_i): x -> [e_i, x]`.
    pub fn ad_matrix(&self, i: usize) -> Result<Matrix> {
        if i >= self.dim {
            return Err(Error::Index {
                index: i,
                dim: self.dim,
            });
        }
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.bracket_basis(i, j).to_vec())
            .collect();
        Matrix::from_cols(&cols, self.dim)
    }

    /// Matrix of `ad(u)`.
    pub fn ad(&self, u: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.bracket(u, &unit_vec(self.dim, j)))
            .collect();
        Matrix::from_cols(&cols, self.dim).expect("ad of a vector of the wrong length")
    }

    /// Linear map `u -> flatten(ad u)` as a `dim^2 x dim` matrix.
    pub fn ad_operator(&self) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| self.ad_matrix(i).expect("basis index").flatten())
            .collect();
        Matrix::from_cols(&cols, self.dim * self.dim).expect("ad operator shape")
    }

    /// Some `u` with `ad(u) = m`, free variables zero.
    pub fn ad_preimage(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.ad_preimage_with_free(m, &Rational::zero())
    }

    pub fn ad_preimage_with_free(&self, m: &Matrix, free: &Rational) -> Option<Vec<Rational>> {
        solve_vec_with_free(&self.ad_operator(), &m.flatten(), free)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut stacked = Matrix::zeros(0, n);
        for j in 0..n {
            // Row block for u -> [u, e_j].
            let cols: Vec<Vec<Rational>> =
                (0..n).map(|i| self.bracket_basis(i, j).to_vec()).collect();
            stacked = stacked.vcat(&Matrix::from_cols(&cols, n).expect("shape"));
        }
        kernel_basis(&stacked)
    }

    /// Linear system whose null space is `Der(L)` in row-major flattened coordinates.
    fn leibniz_system(&self) -> Matrix {
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = zero_vec(n * n);
                    for m in 0..n {
                        row[k * n + m] += self.constant(i, j, m);
                    }
                    for r in 0..n {
                        row[r * n + i] -= self.constant(r, j, k);
                        row[r * n + j] -= self.constant(i, r, k);
                    }
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(&rows, n * n).expect("shape")
    }

    /// `Der(L)` inside the `dim^2`-dimensional space of flattened matrices.
    pub fn derivation_space(&self) -> Subspace {
        kernel_basis(&self.leibniz_system())
    }

    /// Span of the ad-matrices.
    pub fn inner_derivations(&self) -> Subspace {
        let vs: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| self.ad_matrix(i).expect("basis index").flatten())
            .collect();
        Subspace::span(self.dim * self.dim, &vs)
    }

    /// `Out(L) = Der(L) / ad(L)`, with ambient coordinates those of the RREF basis of `Der(L)`.
    pub fn out_space(&self) -> QuotientSpace {
        let der = self.derivation_space();
        let inner: Vec<Vec<Rational>> = self
            .inner_derivations()
            .basis_vectors()
            .iter()
            .map(|v| {
                der.coordinates(v)
                    .expect("inner derivations are derivations")
            })
            .collect();
        quotient(der.dim(), &Subspace::span(der.dim(), &inner)).expect("shape")
    }

    /// Class of a derivation in `Out(L)`; `None` when `d` is not a derivation.
    pub fn out_class(&self, d: &Matrix) -> Option<Vec<Rational>> {
        let coords = self.derivation_space().coordinates(&d.flatten())?;
        Some(self.out_space().class_coords(&coords))
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        if d.rows() != self.dim || d.cols() != self.dim {
            return false;
        }
        self.leibniz_defect(d).is_none()
    }

    /// First pair `(i, j)` violating Leibniz.
    pub fn leibniz_defect(&self, d: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| d.col(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(self.bracket_basis(i, j));
                let mut rhs = self.bracket_with_basis(&cols[i], j);
                let t = self.bracket(&unit_vec(n, i), &cols[j]);
                for (a, b) in rhs.iter_mut().zip(&t) {
                    *a += b;
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True when `f` (columns = images of basis vectors of `self`) is a homomorphism into `target`.
    pub fn is_hom_to(&self, f: &Matrix, target: &LieAlgebra) -> bool {
        if f.cols() != self.dim || f.rows() != target.dim {
            return false;
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if f.apply(self.bracket_basis(i, j)) != target.bracket(&f.col(i), &f.col(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Reads a flattened matrix back as an operator on this algebra.
    pub fn unflatten(&self, v: &[Rational]) -> Matrix {
        Matrix::unflatten(self.dim, self.dim, v).expect("flattened operator length")
    }
}

/// Leibniz check for a candidate derivation.
pub fn is_lieder_pair(l: &LieAlgebra, d: &Matrix) -> bool {
    l.is_derivation(d)
}

/// A Lie algebra together with one of its derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerPair {
    algebra: LieAlgebra,
    d: Matrix,
}

impl LieDerPair {
    pub fn new(algebra: LieAlgebra, d: Matrix) -> Result<Self> {
        if d.rows() != algebra.dim() || d.cols() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} derivation on a {}-dimensional algebra",
                d.rows(),
                d.cols(),
                algebra.dim()
            )));
        }
        if let Some((i, j)) = algebra.leibniz_defect(&d) {
            return Err(Error::Invalid(format!(
                "Leibniz fails on (e{}, e{})",
                i + 1,
                j + 1
            )));
        }
        Ok(LieDerPair { algebra, d })
    }

    /// Pair with the zero derivation.
    pub fn trivial(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        LieDerPair {
            algebra,
            d: Matrix::zeros(n, n),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn derivation(&self) -> &Matrix {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Standard small algebras.
pub mod catalog {
    use super::*;

    /// Heisenberg algebra `[e1, e2] = e3`.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_table("H3", 3, &[(0, 1, &[(2, 1)])])
    }

    /// Two-dimensional non-abelian algebra `[e1, e2] = e2`.
    pub fn n2() -> LieAlgebra {
        LieAlgebra::from_table("N2", 2, &[(0, 1, &[(1, 1)])])
    }

    /// `sl2` in the basis `(h, e, f)`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_table(
            "sl2",
            3,
            &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
        )
    }

    /// Defining representation of `sl2` on `Q^2`, in the basis `(h, e, f)`.
    pub fn sl2_standard_rep() -> Vec<Matrix> {
        vec![
            Matrix::from_i64(&[&[1, 0], &[0, -1]]),
            Matrix::from_i64(&[&[0, 1], &[0, 0]]),
            Matrix::from_i64(&[&[0, 0], &[1, 0]]),
        ]
    }

    /// Direct sum of two algebras, basis of `a` first.
    pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
        let (m, n) = (a.dim(), b.dim());
        let mut data = Vec::new();
        for i in 0..m + n {
            for j in i + 1..m + n {
                let mut v = zero_vec(m + n);
                if j < m {
                    v[..m].clone_from_slice(a.bracket_basis(i, j));
                } else if i >= m {
                    v[m..].clone_from_slice(b.bracket_basis(i - m, j - m));
                }
                data.push((i, j, v));
            }
        }
        LieAlgebra::from_brackets(format!("{}+{}", a.name(), b.name()), m + n, data)
            .expect("direct sum")
    }

    /// `lambda * Id` as a derivation of an abelian algebra.
    pub fn scalar_derivation(n: usize, lambda: i64) -> Matrix {
        Matrix::scalar(n, rat(lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert!(sl2().jacobi_check().is_ok());
        assert!(LieAlgebra::abelian(3).jacobi_check().is_ok());
        // [e1,e2]=e1, [e1,e3]=e3, [e2,e3]=0: the cyclic sum on (e1,e2,e3) is
        // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = [e1,e3] + 0 + [-e3,e2] = e3.
        let l = LieAlgebra::from_table("x", 3, &[(0, 1, &[(0, 1)]), (0, 2, &[(2, 1)])]);
        assert_eq!(l.jacobi_check(), Err(JacobiFailure { triple: [0, 1, 2] }));
    }

    #[test]
    fn ad_examples() {
        let h = heisenberg();
        let a = h.ad_matrix(0).unwrap();
        let mut expected = Matrix::zeros(3, 3);
        expected.set(2, 1, rat(1));
        assert_eq!(a, expected);
        assert_eq!(
            n2().ad_matrix(0).unwrap(),
            Matrix::from_i64(&[&[0, 0], &[0, 1]])
        );
        assert!(LieAlgebra::abelian(2).ad_matrix(1).unwrap().is_zero());
        assert!(h.ad_matrix(3).is_err());
    }

    #[test]
    fn center_examples() {
        let z = heisenberg().center();
        assert_eq!(z.basis_vectors(), vec![unit_vec(3, 2)]);
        assert_eq!(LieAlgebra::abelian(2).center().dim(), 2);
        assert_eq!(sl2().center().dim(), 0);
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(LieAlgebra::abelian(2).derivation_space().dim(), 4);
        assert_eq!(n2().derivation_space().dim(), 2);
        assert_eq!(heisenberg().derivation_space().dim(), 6);
        assert_eq!(n2().inner_derivations().dim(), 2);
        assert_eq!(n2().out_space().dim(), 0);
        assert_eq!(heisenberg().inner_derivations().dim(), 2);
        assert_eq!(heisenberg().out_space().dim(), 4);
        assert_eq!(LieAlgebra::abelian(2).out_space().dim(), 4);
        assert_eq!(sl2().derivation_space().dim(), 3);
    }

    #[test]
    fn lieder_pair_examples() {
        let d = Matrix::diag(&[rat(1), rat(1), rat(2)]);
        assert!(is_lieder_pair(&heisenberg(), &d));
        assert!(is_lieder_pair(&sl2(), &Matrix::zeros(3, 3)));
        assert!(!is_lieder_pair(&n2(), &Matrix::identity(2)));
        assert!(LieDerPair::new(n2(), Matrix::identity(2)).is_err());
    }

    #[test]
    fn derivation_space_members_are_derivations() {
        for l in [heisenberg(), n2(), sl2(), LieAlgebra::abelian(2)] {
            let der = l.derivation_space();
            for v in der.basis_vectors() {
                assert!(l.is_derivation(&l.unflatten(&v)));
            }
            assert!(der.contains_subspace(&l.inner_derivations()));
            for i in 0..l.dim() {
                let class = l.out_class(&l.ad_matrix(i).unwrap()).unwrap();
                assert!(class.iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn direct_sum_is_lie() {
        let s = direct_sum(&heisenberg(), &n2());
        assert!(s.jacobi_check().is_ok());
        assert_eq!(s.center().dim(), 1);
    }
}
