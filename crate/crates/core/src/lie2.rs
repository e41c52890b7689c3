//! Strict Lie 2-algebras with strict derivations, their homomorphisms and 2-homomorphisms,
//! and the dictionary with non-abelian 2-cocycles through `(Der(h), h, ad, [.,.])`.

use std::fmt;

use crate::cochain::AltCochain;
use crate::error::{Error, Result};
use crate::exactlin::{axpy, rat, unit_vec, Matrix, Rational, Subspace};
use crate::lie::{LieAlgebra, LieDerPair};
use crate::nonabelian::{combine, NonAbelianCocycle};

/// `(g0, g1, d, [.,.])`. The mixed bracket is `[x, a] = act(x) a` and `[a, x] = -act(x) a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictLie2 {
    pub g0: LieAlgebra,
    pub g1_dim: usize,
    /// `g1 -> g0`.
    pub d: Matrix,
    /// One `g1 x g1` matrix per basis vector of `g0`.
    pub act: Vec<Matrix>,
}

/// `(D0, D1)` acting on `g0` and `g1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictDer2 {
    pub d0: Matrix,
    pub d1: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2DerPair {
    pub lie2: StrictLie2,
    pub der: StrictDer2,
}

/// `(phi0, phi1, phi2, theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lie2DerHom {
    pub phi0: Matrix,
    pub phi1: Matrix,
    pub phi2: AltCochain,
    pub theta: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHom {
    pub vartheta: Matrix,
}

/// The first axiom found to fail, with the basis indices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails", self.axiom)?;
        if !self.indices.is_empty() {
            let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, " at ({})", idx.join(", "))?;
        }
        Ok(())
    }
}

type Check = std::result::Result<(), AxiomFailure>;

fn fail(axiom: &'static str, indices: Vec<usize>) -> Check {
    Err(AxiomFailure { axiom, indices })
}

impl StrictLie2 {
    pub fn g0_dim(&self) -> usize {
        self.g0.dim()
    }

    /// `act(x)` for a vector `x in g0`.
    pub fn act_at(&self, x: &[Rational]) -> Matrix {
        combine(&self.act, x, self.g1_dim)
    }

    fn shape_ok(&self) -> bool {
        let (m, n) = (self.g0_dim(), self.g1_dim);
        self.d.rows() == m
            && self.d.cols() == n
            && self.act.len() == m
            && self.act.iter().all(|a| a.rows() == n && a.cols() == n)
    }

    /// `(g, 0, 0, [.,.]_g)`.
    pub fn from_lie(g: &LieAlgebra) -> Self {
        StrictLie2 {
            g0: g.clone(),
            g1_dim: 0,
            d: Matrix::zeros(g.dim(), 0),
            act: vec![Matrix::zeros(0, 0); g.dim()],
        }
    }
}

pub fn verify_lie2(l: &StrictLie2) -> Check {
    if !l.shape_ok() {
        return fail("shape", vec![]);
    }
    let (m, n) = (l.g0_dim(), l.g1_dim);
    if let Err(j) = l.g0.jacobi_check() {
        return fail("Jacobi on g0", j.triple.to_vec());
    }
    for x in 0..m {
        for y in x + 1..m {
            let lhs = l.act[x].commutator(&l.act[y]);
            if lhs != l.act_at(l.g0.bracket_basis(x, y)) {
                return fail("mixed Jacobi", vec![x, y]);
            }
        }
    }
    for x in 0..m {
        for a in 0..n {
            let lhs = l.d.apply(&l.act[x].col(a));
            if lhs != l.g0.bracket(&unit_vec(m, x), &l.d.col(a)) {
                return fail("d[x,a] = [x,da]", vec![x, a]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            // [da, b] = act(da) b and [a, db] = -act(db) a.
            let lhs = l.act_at(&l.d.col(a)).col(b);
            let rhs: Vec<Rational> = l
                .act_at(&l.d.col(b))
                .col(a)
                .into_iter()
                .map(|v| -v)
                .collect();
            if lhs != rhs {
                return fail("[da,b] = [a,db]", vec![a, b]);
            }
        }
    }
    Ok(())
}

pub fn verify_strict_der(l: &StrictLie2, der: &StrictDer2) -> Check {
    let (m, n) = (l.g0_dim(), l.g1_dim);
    if der.d0.rows() != m || der.d0.cols() != m || der.d1.rows() != n || der.d1.cols() != n {
        return fail("shape", vec![]);
    }
    if der.d0.mul(&l.d) != l.d.mul(&der.d1) {
        return fail("D0 d = d D1", vec![]);
    }
    if let Some((i, j)) = l.g0.leibniz_defect(&der.d0) {
        return fail("D0 Leibniz", vec![i, j]);
    }
    for x in 0..m {
        let lhs = der.d1.mul(&l.act[x]);
        let rhs = l.act_at(&der.d0.col(x)).add(&l.act[x].mul(&der.d1));
        if lhs != rhs {
            return fail("D1 Leibniz", vec![x]);
        }
    }
    Ok(())
}

impl Lie2DerPair {
    pub fn verify(&self) -> Check {
        verify_lie2(&self.lie2)?;
        verify_strict_der(&self.lie2, &self.der)
    }

    /// `(g, 0, 0, [.,.]_g)` with `(D, 0)`.
    pub fn from_pair(p: &LieDerPair) -> Self {
        Lie2DerPair {
            lie2: StrictLie2::from_lie(p.algebra()),
            der: StrictDer2 {
                d0: p.derivation().clone(),
                d1: Matrix::zeros(0, 0),
            },
        }
    }
}

/// `(h_Der, K_Der)` with `Der(h)` in the reduced basis of [`LieAlgebra::derivation_space`].
#[derive(Clone, Debug)]
pub struct HDer {
    pub pair: Lie2DerPair,
    der_space: Subspace,
    basis: Vec<Matrix>,
}

impl HDer {
    pub fn dim_der(&self) -> usize {
        self.basis.len()
    }

    /// Derivation matrices indexed by the basis of `g0`.
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.der_space.coordinates(&m.flatten())
    }

    pub fn matrix_of(&self, coords: &[Rational]) -> Matrix {
        let n = self.pair.lie2.g1_dim;
        combine(&self.basis, coords, n)
    }
}

pub fn build_hder(hpair: &LieDerPair) -> Result<HDer> {
    let h = hpair.algebra();
    let n = h.dim();
    let der_space = h.derivation_space();
    let basis = der_space
        .basis_vectors()
        .iter()
        .map(|v| Matrix::unflatten(n, n, v))
        .collect::<Result<Vec<_>>>()?;
    let coords = |m: &Matrix| {
        der_space
            .coordinates(&m.flatten())
            .ok_or_else(|| Error::Inconsistent("matrix is not a derivation".into()))
    };
    let k = basis.len();
    let mut brackets = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            brackets.push((a, b, coords(&basis[a].commutator(&basis[b]))?));
        }
    }
    let g0 = LieAlgebra::from_brackets(format!("Der({})", h.name()), k, brackets)?;
    let d_cols = (0..n)
        .map(|a| coords(&h.ad_matrix(a)?))
        .collect::<Result<Vec<_>>>()?;
    let d = Matrix::from_cols(&d_cols, k)?;
    let kk = hpair.derivation();
    let d0_cols = basis
        .iter()
        .map(|b| coords(&kk.commutator(b)))
        .collect::<Result<Vec<_>>>()?;
    let lie2 = StrictLie2 {
        g0,
        g1_dim: n,
        d,
        act: basis.clone(),
    };
    let der = StrictDer2 {
        d0: Matrix::from_cols(&d0_cols, k)?,
        d1: kk.clone(),
    };
    let pair = Lie2DerPair { lie2, der };
    pair.verify()
        .map_err(|f| Error::Inconsistent(format!("h_Der: {f}")))?;
    Ok(HDer {
        pair,
        der_space,
        basis,
    })
}

/// Checks the Lie 2-algebra homomorphism equations and the three derivation equations.
pub fn verify_hom(src: &Lie2DerPair, dst: &Lie2DerPair, f: &Lie2DerHom) -> Check {
    let (g, h) = (&src.lie2, &dst.lie2);
    let (m, p) = (g.g0_dim(), g.g1_dim);
    let (q, r) = (h.g0_dim(), h.g1_dim);
    let shapes = f.phi0.rows() == q
        && f.phi0.cols() == m
        && f.phi1.rows() == r
        && f.phi1.cols() == p
        && f.theta.rows() == r
        && f.theta.cols() == m
        && f.phi2.source_dim() == m
        && f.phi2.target_dim() == r
        && f.phi2.degree() == 2;
    if !shapes {
        return fail("shape", vec![]);
    }
    let phi0x = |x: usize| f.phi0.col(x);
    let phi2 = |x: &[Rational], y: &[Rational]| f.phi2.eval(&[x.to_vec(), y.to_vec()]);
    if f.phi0.mul(&g.d) != h.d.mul(&f.phi1) {
        return fail("phi0 d = d phi1", vec![]);
    }
    for x in 0..m {
        for y in x + 1..m {
            let lhs: Vec<Rational> = f
                .phi0
                .apply(g.g0.bracket_basis(x, y))
                .iter()
                .zip(h.g0.bracket(&phi0x(x), &phi0x(y)))
                .map(|(a, b)| a - b)
                .collect();
            if lhs != h.d.apply(f.phi2.get(&[x, y])) {
                return fail("phi0 bracket defect = d phi2", vec![x, y]);
            }
        }
    }
    for x in 0..m {
        for a in 0..p {
            let lhs = f.phi1.apply(&g.act[x].col(a));
            let lhs: Vec<Rational> = lhs
                .iter()
                .zip(h.act_at(&phi0x(x)).apply(&f.phi1.col(a)))
                .map(|(u, v)| u - v)
                .collect();
            if lhs != phi2(&unit_vec(m, x), &g.d.col(a)) {
                return fail("phi1 mixed bracket defect = phi2(x, da)", vec![x, a]);
            }
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            for z in y + 1..m {
                let cyc = [(x, y, z), (y, z, x), (z, x, y)];
                let mut lhs = vec![rat(0); r];
                let mut rhs = lhs.clone();
                for &(a, b, c) in &cyc {
                    let v = h.act_at(&phi0x(a)).apply(&f.phi2.value_at(&[b, c]));
                    axpy(&mut lhs, &rat(1), &v);
                    let w = phi2(g.g0.bracket_basis(a, b), &unit_vec(m, c));
                    axpy(&mut rhs, &rat(1), &w);
                }
                if lhs != rhs {
                    return fail("phi2 cocycle condition", vec![x, y, z]);
                }
            }
        }
    }
    let (d0, k0) = (&src.der.d0, &dst.der.d0);
    let (d1, k1) = (&src.der.d1, &dst.der.d1);
    if f.phi0.mul(d0).sub(&k0.mul(&f.phi0)) != h.d.mul(&f.theta) {
        return fail("phi0 D0 - K0 phi0 = d theta", vec![]);
    }
    if f.phi1.mul(d1).sub(&k1.mul(&f.phi1)) != f.theta.mul(&g.d) {
        return fail("phi1 D1 - K1 phi1 = theta d", vec![]);
    }
    for x in 0..m {
        for y in x + 1..m {
            let (ex, ey) = (unit_vec(m, x), unit_vec(m, y));
            let mut lhs = k1.apply(f.phi2.get(&[x, y]));
            for (u, v) in lhs.iter_mut().zip(phi2(&d0.col(x), &ey)) {
                *u -= v;
            }
            for (u, v) in lhs.iter_mut().zip(phi2(&ex, &d0.col(y))) {
                *u -= v;
            }
            // [theta x, phi0 y] = -act(phi0 y) theta x.
            let t1 = h.act_at(&phi0x(y)).apply(&f.theta.col(x));
            let t2 = h.act_at(&phi0x(x)).apply(&f.theta.col(y));
            let t3 = f.theta.apply(g.g0.bracket_basis(x, y));
            let rhs: Vec<Rational> = t1
                .iter()
                .zip(&t2)
                .zip(&t3)
                .map(|((a, b), c)| -a + b - c)
                .collect();
            if lhs != rhs {
                return fail(
                    "K1 phi2 - phi2(D0.,.) - phi2(.,D0.) = theta terms",
                    vec![x, y],
                );
            }
        }
    }
    Ok(())
}

/// Checks that `t` is a 2-homomorphism from `phi` to `psi`.
pub fn verify_two_hom(
    src: &Lie2DerPair,
    dst: &Lie2DerPair,
    phi: &Lie2DerHom,
    psi: &Lie2DerHom,
    t: &TwoHom,
) -> Check {
    let (g, h) = (&src.lie2, &dst.lie2);
    let m = g.g0_dim();
    let th = &t.vartheta;
    if th.rows() != h.g1_dim || th.cols() != m {
        return fail("shape", vec![]);
    }
    if psi.phi0.sub(&phi.phi0) != h.d.mul(th) {
        return fail("psi0 - phi0 = d vartheta", vec![]);
    }
    if psi.phi1.sub(&phi.phi1) != th.mul(&g.d) {
        return fail("psi1 - phi1 = vartheta d", vec![]);
    }
    for x in 0..m {
        for y in x + 1..m {
            let lhs: Vec<Rational> = psi
                .phi2
                .get(&[x, y])
                .iter()
                .zip(phi.phi2.get(&[x, y]))
                .map(|(a, b)| a - b)
                .collect();
            // vartheta[x,y] - [phi0 x, vartheta y] - [vartheta x, psi0 y]
            let a = th.apply(g.g0.bracket_basis(x, y));
            let b = h.act_at(&phi.phi0.col(x)).apply(&th.col(y));
            let c = h.act_at(&psi.phi0.col(y)).apply(&th.col(x));
            let rhs: Vec<Rational> = a
                .iter()
                .zip(&b)
                .zip(&c)
                .map(|((a, b), c)| a - b + c)
                .collect();
            if lhs != rhs {
                return fail("psi2 - phi2 = vartheta terms", vec![x, y]);
            }
        }
    }
    if th.mul(&src.der.d0).sub(&dst.der.d1.mul(th)) != psi.theta.sub(&phi.theta) {
        return fail("vartheta D0 - K1 vartheta = theta_psi - theta_phi", vec![]);
    }
    Ok(())
}

/// `(phi0, phi1, phi2, theta) = (varrho, 0, -omega, -chi)`, with `phi0` in `Der(h)` coordinates.
pub fn cocycle_to_hom(c: &NonAbelianCocycle, hder: &HDer) -> Result<Lie2DerHom> {
    c.check_shape()?;
    let cols = c
        .varrho
        .iter()
        .map(|r| {
            hder.coords(r)
                .ok_or_else(|| Error::Invalid("varrho leaves Der(h)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lie2DerHom {
        phi0: Matrix::from_cols(&cols, hder.dim_der())?,
        phi1: Matrix::zeros(c.hdim(), 0),
        phi2: c.omega.neg(),
        theta: c.chi.neg(),
    })
}

/// `(varrho, omega, chi) = (phi0, -phi2, -theta)`.
pub fn hom_to_cocycle(
    gpair: &LieDerPair,
    hpair: &LieDerPair,
    hder: &HDer,
    f: &Lie2DerHom,
) -> Result<NonAbelianCocycle> {
    let m = gpair.dim();
    if f.phi0.rows() != hder.dim_der() || f.phi0.cols() != m || f.phi1.cols() != 0 {
        return Err(Error::Dimension(
            "hom does not start at (g, 0, 0, [.,.]) or end at h_Der".into(),
        ));
    }
    let varrho = (0..m).map(|i| hder.matrix_of(&f.phi0.col(i))).collect();
    NonAbelianCocycle::new(
        gpair.clone(),
        hpair.clone(),
        varrho,
        f.phi2.neg(),
        f.theta.neg(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::nonabelian::{apply_gauge, verify_equivalence_witness};

    fn n2_h3() -> NonAbelianCocycle {
        let g = LieDerPair::new(n2(), Matrix::from_i64(&[&[0, 0], &[1, 1]])).unwrap();
        let h = LieDerPair::new(heisenberg(), Matrix::diag(&[rat(1), rat(1), rat(2)])).unwrap();
        let tau = Matrix::from_i64(&[&[1, 0], &[2, -1], &[0, 1]]);
        apply_gauge(&NonAbelianCocycle::zero(g, h), &tau).unwrap()
    }

    fn semidirect() -> NonAbelianCocycle {
        let g = LieDerPair::trivial(sl2());
        let h = LieDerPair::new(LieAlgebra::abelian(2), Matrix::scalar(2, rat(3))).unwrap();
        let mut c = NonAbelianCocycle::zero(g, h);
        c.varrho = sl2_standard_rep();
        c
    }

    #[test]
    fn examples_are_strict_lie2_algebras() {
        for g in [heisenberg(), n2(), sl2()] {
            assert!(verify_lie2(&StrictLie2::from_lie(&g)).is_ok());
        }
        let h = build_hder(&LieDerPair::trivial(n2())).unwrap();
        assert_eq!((h.dim_der(), h.pair.lie2.g1_dim), (2, 2));
        let k = Matrix::diag(&[rat(1), rat(1), rat(2)]);
        let h = build_hder(&LieDerPair::new(heisenberg(), k).unwrap()).unwrap();
        assert_eq!(h.dim_der(), 6);
        assert!(h.pair.verify().is_ok());
        let h = build_hder(
            &LieDerPair::new(LieAlgebra::abelian(2), Matrix::scalar(2, rat(3))).unwrap(),
        )
        .unwrap();
        assert!(h.pair.lie2.d.is_zero());
        assert_eq!(h.dim_der(), 4);
    }

    #[test]
    fn broken_structures_are_rejected() {
        let mut l = build_hder(&LieDerPair::trivial(heisenberg())).unwrap().pair;
        l.der.d1 = Matrix::identity(3);
        assert!(l.verify().is_err());
        let mut l = build_hder(&LieDerPair::trivial(heisenberg()))
            .unwrap()
            .pair
            .lie2;
        l.act[0] = l.act[0].scale(&rat(2));
        assert!(verify_lie2(&l).is_err());
    }

    #[test]
    fn dictionary_round_trip() {
        for c in [n2_h3(), semidirect()] {
            let hder = build_hder(&c.h).unwrap();
            let src = Lie2DerPair::from_pair(&c.g);
            let f = cocycle_to_hom(&c, &hder).unwrap();
            assert!(verify_hom(&src, &hder.pair, &f).is_ok());
            assert_eq!(hom_to_cocycle(&c.g, &c.h, &hder, &f).unwrap(), c);

            let mut bad = c.clone();
            bad.chi.set(0, 0, &bad.chi.get(0, 0).clone() + rat(1));
            assert_eq!(
                bad.verify().is_ok(),
                verify_hom(&src, &hder.pair, &cocycle_to_hom(&bad, &hder).unwrap()).is_ok()
            );
        }
        let zero = NonAbelianCocycle::zero(n2_h3().g, n2_h3().h);
        let hder = build_hder(&zero.h).unwrap();
        let f = cocycle_to_hom(&zero, &hder).unwrap();
        assert!(f.phi0.is_zero() && f.phi2.is_zero() && f.theta.is_zero());
    }

    #[test]
    fn gauge_witness_is_a_two_hom() {
        let c = n2_h3();
        let hder = build_hder(&c.h).unwrap();
        let src = Lie2DerPair::from_pair(&c.g);
        let tau = Matrix::from_i64(&[&[0, 1], &[1, 1], &[-2, 0]]);
        let c2 = apply_gauge(&c, &tau).unwrap();
        assert!(verify_equivalence_witness(&c, &c2, &tau));
        let f = cocycle_to_hom(&c, &hder).unwrap();
        let f2 = cocycle_to_hom(&c2, &hder).unwrap();
        let t = TwoHom {
            vartheta: tau.clone(),
        };
        assert!(verify_two_hom(&src, &hder.pair, &f2, &f, &t).is_ok());
        // Homotopy is symmetric: -tau goes back.
        assert!(verify_two_hom(
            &src,
            &hder.pair,
            &f,
            &f2,
            &TwoHom {
                vartheta: tau.neg()
            }
        )
        .is_ok());
        assert!(verify_two_hom(&src, &hder.pair, &f, &f2, &t).is_err());
        assert!(verify_two_hom(
            &src,
            &hder.pair,
            &f,
            &f,
            &TwoHom {
                vartheta: Matrix::zeros(3, 2)
            }
        )
        .is_ok());
        let other = TwoHom {
            vartheta: Matrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]]),
        };
        assert!(verify_two_hom(&src, &hder.pair, &f2, &f, &other).is_err());
    }
}
