//! (g,D)-kernels: homomorphisms `g -> Out(h)` compatible with the derivations, their
//! obstruction class in `H^3_LieDer(g, z(h))`, realization by cocycles, and the
//! `H^2` torsor acting on the extensions with a given kernel.

use std::fmt;

use num::One;

use crate::cochain::{
    coboundary_matrix, cohomology, cup_product, delta_op, formal_coboundary, AltCochain, Complex,
    LieDerCochain, LieDerRep,
};
use crate::error::{Error, Result};
use crate::exactlin::{frac, rat, solve_vec, Matrix, Rational, Subspace};
use crate::lie::{LieAlgebra, LieDerPair};
use crate::nonabelian::{combine, extract_cocycle, Extension, NonAbelianCocycle, Section};

/// Representatives `K_i in Der(h)` of `k(e_i) in Out(h)`, one per basis vector of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDatum {
    pub gpair: LieDerPair,
    pub hpair: LieDerPair,
    pub reps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelViolation {
    Shape,
    NotDerivation { index: usize },
    NotHomomorphism { i: usize, j: usize },
    NotCompatible { index: usize },
}

impl fmt::Display for KernelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelViolation::Shape => {
                write!(f, "representatives do not match the dimensions of g and h")
            }
            KernelViolation::NotDerivation { index } => {
                write!(f, "K_{} is not a derivation of h", index + 1)
            }
            KernelViolation::NotHomomorphism { i, j } => {
                write!(
                    f,
                    "[K_{}, K_{}] - K([e{}, e{}]) is not inner",
                    i + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )
            }
            KernelViolation::NotCompatible { index } => {
                write!(f, "[K, K_{}] - K(D e{}) is not inner", index + 1, index + 1)
            }
        }
    }
}

impl KernelDatum {
    pub fn new(gpair: LieDerPair, hpair: LieDerPair, reps: Vec<Matrix>) -> Self {
        KernelDatum { gpair, hpair, reps }
    }

    pub fn gdim(&self) -> usize {
        self.gpair.dim()
    }

    pub fn hdim(&self) -> usize {
        self.hpair.dim()
    }

    /// `sum x_i K_i`.
    pub fn rep_at(&self, x: &[Rational]) -> Matrix {
        combine(&self.reps, x, self.hdim())
    }

    pub fn verify(&self) -> std::result::Result<(), KernelViolation> {
        verify_kernel(self)
    }

    /// True when the two data define the same map `g -> Out(h)`.
    pub fn same_mod_inner(&self, other: &KernelDatum) -> bool {
        if self.reps.len() != other.reps.len() {
            return false;
        }
        let inner = self.hpair.algebra().inner_derivations();
        self.reps.iter().zip(&other.reps).all(|(a, b)| {
            a.rows() == b.rows() && a.cols() == b.cols() && inner.contains(&a.sub(b).flatten())
        })
    }
}

pub fn verify_kernel(k: &KernelDatum) -> std::result::Result<(), KernelViolation> {
    let (m, n) = (k.gdim(), k.hdim());
    if k.reps.len() != m || k.reps.iter().any(|r| r.rows() != n || r.cols() != n) {
        return Err(KernelViolation::Shape);
    }
    let h = k.hpair.algebra();
    let g = k.gpair.algebra();
    if let Some(index) = k.reps.iter().position(|r| !h.is_derivation(r)) {
        return Err(KernelViolation::NotDerivation { index });
    }
    let inner = h.inner_derivations();
    for i in 0..m {
        for j in i + 1..m {
            let defect = k.reps[i]
                .commutator(&k.reps[j])
                .sub(&k.rep_at(g.bracket_basis(i, j)));
            if !inner.contains(&defect.flatten()) {
                return Err(KernelViolation::NotHomomorphism { i, j });
            }
        }
    }
    let kk = k.hpair.derivation();
    let d = k.gpair.derivation();
    for i in 0..m {
        let defect = kk.commutator(&k.reps[i]).sub(&k.rep_at(&d.col(i)));
        if !inner.contains(&defect.flatten()) {
            return Err(KernelViolation::NotCompatible { index: i });
        }
    }
    Ok(())
}

/// Center of `h` with its coordinate maps.
#[derive(Clone, Debug)]
pub struct CenterCoords {
    space: Subspace,
    embed: Matrix,
}

impl CenterCoords {
    pub fn of(h: &LieAlgebra) -> Self {
        let space = h.center();
        let embed = Matrix::from_cols(&space.basis_vectors(), h.dim())
            .expect("center basis has ambient length");
        CenterCoords { space, embed }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Columns are the center basis in `h`-coordinates.
    pub fn embedding(&self) -> &Matrix {
        &self.embed
    }

    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.space.coordinates(v)
    }

    /// Restriction of an operator preserving the center.
    pub fn restrict(&self, m: &Matrix) -> Result<Matrix> {
        let cols = self
            .space
            .basis_vectors()
            .iter()
            .map(|b| self.coords(&m.apply(b)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Inconsistent("operator does not preserve the center".into()))?;
        Matrix::from_cols(&cols, self.dim())
    }

    /// An `h`-valued cochain read in center coordinates.
    pub fn to_center(&self, c: &AltCochain) -> Result<AltCochain> {
        c.try_map_target(self.dim(), |v| self.coords(v))
            .ok_or_else(|| Error::Inconsistent("cochain does not take values in the center".into()))
    }

    pub fn to_h(&self, c: &AltCochain) -> AltCochain {
        c.map_target(&self.embed)
    }
}

/// `rho_k(e_i) = K_i|_{z(h)}` and `T = K|_{z(h)}`.
pub fn induced_rep(k: &KernelDatum) -> Result<LieDerRep> {
    verify_kernel(k).map_err(|v| Error::Invalid(v.to_string()))?;
    let z = CenterCoords::of(k.hpair.algebra());
    let rho = k
        .reps
        .iter()
        .map(|r| z.restrict(r))
        .collect::<Result<Vec<_>>>()?;
    let t = z.restrict(k.hpair.derivation())?;
    LieDerRep::new(k.gpair.clone(), rho, t)
}

pub fn kernel_of_extension(e: &Extension, s: &Section) -> Result<KernelDatum> {
    let c = extract_cocycle(e, s)?;
    Ok(kernel_of_cocycle(&c))
}

pub fn kernel_of_cocycle(c: &NonAbelianCocycle) -> KernelDatum {
    KernelDatum::new(c.g.clone(), c.h.clone(), c.varrho.clone())
}

/// A choice of `varrho`, `omega`, `chi` solving the defining `ad`-equations of a kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLift {
    pub kernel: KernelDatum,
    pub varrho: Vec<Matrix>,
    pub omega: AltCochain,
    pub chi: Matrix,
}

impl KernelLift {
    fn varrho_at(&self, x: &[Rational]) -> Matrix {
        combine(&self.varrho, x, self.kernel.hdim())
    }

    /// Checks `ad omega(x,y) = [varrho x, varrho y] - varrho[x,y]` and
    /// `ad chi(x) = K varrho(x) - varrho(Dx) - varrho(x) K` on basis vectors.
    pub fn verify(&self) -> bool {
        let k = &self.kernel;
        let (g, h) = (k.gpair.algebra(), k.hpair.algebra());
        let (d, kk) = (k.gpair.derivation(), k.hpair.derivation());
        let m = k.gdim();
        for i in 0..m {
            for j in i + 1..m {
                let rhs = self.varrho[i]
                    .commutator(&self.varrho[j])
                    .sub(&self.varrho_at(g.bracket_basis(i, j)));
                if h.ad(self.omega.get(&[i, j])) != rhs {
                    return false;
                }
            }
            let rhs = kk
                .mul(&self.varrho[i])
                .sub(&self.varrho_at(&d.col(i)))
                .sub(&self.varrho[i].mul(kk));
            if h.ad(&self.chi.col(i)) != rhs {
                return false;
            }
        }
        true
    }
}

/// Lift with free variables set to zero.
pub fn choose_lift(k: &KernelDatum) -> Result<KernelLift> {
    choose_lift_with_free(k, &rat(0))
}

/// Lift solving each `ad(u) = M` with every free variable set to `free`.
pub fn choose_lift_with_free(k: &KernelDatum, free: &Rational) -> Result<KernelLift> {
    verify_kernel(k).map_err(|v| Error::Invalid(v.to_string()))?;
    let (g, h) = (k.gpair.algebra(), k.hpair.algebra());
    let (d, kk) = (k.gpair.derivation(), k.hpair.derivation());
    let (m, n) = (k.gdim(), k.hdim());
    let solve_ad = |target: &Matrix| {
        h.ad_preimage_with_free(target, free)
            .ok_or_else(|| Error::Inconsistent("kernel data admit no ad-preimage".into()))
    };
    let mut omega = AltCochain::zero(m, n, 2);
    for i in 0..m {
        for j in i + 1..m {
            let rhs = k.reps[i]
                .commutator(&k.reps[j])
                .sub(&k.rep_at(g.bracket_basis(i, j)));
            omega.set(&[i, j], solve_ad(&rhs)?);
        }
    }
    let cols = (0..m)
        .map(|i| {
            solve_ad(
                &kk.mul(&k.reps[i])
                    .sub(&k.rep_at(&d.col(i)))
                    .sub(&k.reps[i].mul(kk)),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = Matrix::from_cols(&cols, n)?;
    Ok(KernelLift {
        kernel: k.clone(),
        varrho: k.reps.clone(),
        omega,
        chi,
    })
}

/// Changes the representatives by `ad o r` and adjusts `omega`, `chi` to match:
/// `omega' = omega + d^F r + 1/2 [r,r]`, `chi' = chi - delta r`.
pub fn perturb_lift(lift: &KernelLift, r: &Matrix) -> Result<KernelLift> {
    let k = &lift.kernel;
    let (g, h) = (k.gpair.algebra(), k.hpair.algebra());
    let (m, n) = (k.gdim(), k.hdim());
    if r.rows() != n || r.cols() != m {
        return Err(Error::Dimension("perturbation must map g to h".into()));
    }
    let varrho: Vec<Matrix> = (0..m)
        .map(|i| lift.varrho[i].add(&h.ad(&r.col(i))))
        .collect();
    let rc = AltCochain::from_linear_map(r);
    let half = cup_product(h, &rc, &rc)?.scale(&frac(1, 2));
    let omega = lift
        .omega
        .add(&formal_coboundary(g, &lift.varrho, &rc)?)
        .add(&half);
    let delta_r = delta_op(k.gpair.derivation(), k.hpair.derivation(), &rc)?.to_matrix();
    let chi = lift.chi.sub(&delta_r);
    let kernel = KernelDatum::new(k.gpair.clone(), k.hpair.clone(), varrho.clone());
    Ok(KernelLift {
        kernel,
        varrho,
        omega,
        chi,
    })
}

/// `(d^F omega, d^F chi + delta omega)` in center coordinates, with its class in `H^3_LieDer`.
#[derive(Clone, Debug)]
pub struct ObstructionClass3 {
    pub rep: LieDerRep,
    pub cochain: LieDerCochain,
    /// Coordinates of the class against the canonical representatives of `H^3`.
    pub class: Vec<Rational>,
}

impl ObstructionClass3 {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(num::Zero::is_zero)
    }

    /// Exact comparison by reducing the difference against the coboundaries.
    pub fn same_class(&self, other: &ObstructionClass3) -> Result<bool> {
        let h3 = cohomology(&self.rep, 3, Complex::LieDer)?;
        let a = self.cochain.to_vector();
        let b = other.cochain.to_vector();
        if a.len() != b.len() {
            return Err(Error::Dimension(
                "obstruction cochains of different shapes".into(),
            ));
        }
        let diff: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(h3.is_coboundary(&diff))
    }
}

/// The `h`-valued pair `(d^F omega, d^F chi + delta omega)` of a lift.
pub fn obstruction_cochain_h(lift: &KernelLift) -> Result<(AltCochain, AltCochain)> {
    let k = &lift.kernel;
    let g = k.gpair.algebra();
    let top = formal_coboundary(g, &lift.varrho, &lift.omega)?;
    let chi = AltCochain::from_linear_map(&lift.chi);
    let lower = formal_coboundary(g, &lift.varrho, &chi)?.add(&delta_op(
        k.gpair.derivation(),
        k.hpair.derivation(),
        &lift.omega,
    )?);
    Ok((top, lower))
}

pub fn obstruction_of_lift(lift: &KernelLift) -> Result<ObstructionClass3> {
    let rep = induced_rep(&lift.kernel)?;
    let z = CenterCoords::of(lift.kernel.hpair.algebra());
    let (top, lower) = obstruction_cochain_h(lift)?;
    let cochain = LieDerCochain::new(z.to_center(&top)?, Some(z.to_center(&lower)?))?;
    if !rep.lieder_coboundary(&cochain)?.is_zero() {
        return Err(Error::Inconsistent(
            "obstruction cochain is not closed".into(),
        ));
    }
    let class = cohomology(&rep, 3, Complex::LieDer)?.class_coords(&cochain.to_vector())?;
    Ok(ObstructionClass3 {
        rep,
        cochain,
        class,
    })
}

pub fn obstruction_ch(k: &KernelDatum) -> Result<ObstructionClass3> {
    obstruction_of_lift(&choose_lift(k)?)
}

/// A cocycle with kernel `k`, or `None` when `ch(k) != 0`.
pub fn realize_kernel(k: &KernelDatum) -> Result<Option<NonAbelianCocycle>> {
    let lift = choose_lift(k)?;
    let ch = obstruction_of_lift(&lift)?;
    let d2 = coboundary_matrix(&ch.rep, 2, Complex::LieDer)?;
    let Some(x) = solve_vec(&d2, &ch.cochain.to_vector()) else {
        return Ok(None);
    };
    let z = CenterCoords::of(k.hpair.algebra());
    let eta_theta = LieDerCochain::from_vector(k.gdim(), z.dim(), 2, &x)?;
    let c = shifted(
        &lift.kernel,
        &lift.varrho,
        &lift.omega,
        &lift.chi,
        &z,
        &eta_theta,
    )?;
    c.verify()
        .map_err(|v| Error::Inconsistent(format!("realized triple is not a cocycle: {v}")))?;
    Ok(Some(c))
}

fn shifted(
    k: &KernelDatum,
    varrho: &[Matrix],
    omega: &AltCochain,
    chi: &Matrix,
    z: &CenterCoords,
    cls: &LieDerCochain,
) -> Result<NonAbelianCocycle> {
    let eta = z.to_h(&cls.top);
    let theta = z.to_h(
        cls.lower
            .as_ref()
            .ok_or_else(|| Error::Invalid("degree-2 class expected".into()))?,
    );
    NonAbelianCocycle::new(
        k.gpair.clone(),
        k.hpair.clone(),
        varrho.to_vec(),
        omega.sub(&eta),
        chi.sub(&theta.to_matrix()),
    )
}

/// `(varrho, omega - eta, chi - theta)` for a closed `(eta, theta)` in center coordinates.
pub fn torsor_act(base: &NonAbelianCocycle, cls: &LieDerCochain) -> Result<NonAbelianCocycle> {
    let k = kernel_of_cocycle(base);
    let rep = induced_rep(&k)?;
    let z = CenterCoords::of(k.hpair.algebra());
    if cls.degree() != 2 || cls.top.source_dim() != k.gdim() || cls.top.target_dim() != z.dim() {
        return Err(Error::Dimension(
            "torsor action needs a degree-2 cochain in z(h)".into(),
        ));
    }
    if !rep.lieder_coboundary(cls)?.is_zero() {
        return Err(Error::Invalid("(eta, theta) is not closed".into()));
    }
    let c = shifted(&k, &base.varrho, &base.omega, &base.chi, &z, cls)?;
    c.verify()
        .map_err(|v| Error::Inconsistent(format!("torsor action left the cocycles: {v}")))?;
    Ok(c)
}

/// Basis of `g~ = {(x, K') : K' = k(x) mod ad(h)}` inside `g ⊕ Der(h)`:
/// the vectors `(e_i, K_i)` followed by `(0, A_a)` for the reduced basis `A_a` of `ad(h)`.
pub fn pullback_basis(k: &KernelDatum) -> Vec<(Vec<Rational>, Matrix)> {
    let (m, n) = (k.gdim(), k.hdim());
    let h = k.hpair.algebra();
    let mut basis: Vec<(Vec<Rational>, Matrix)> = (0..m)
        .map(|i| {
            let mut x = vec![rat(0); m];
            x[i] = Rational::one();
            (x, k.reps[i].clone())
        })
        .collect();
    for a in h.inner_derivations().basis_vectors() {
        basis.push((
            vec![rat(0); m],
            Matrix::unflatten(n, n, &a).expect("inner derivation has n^2 entries"),
        ));
    }
    basis
}

/// `(g~, D~)` with the bracket of `g ⊕ Der(h)` and `D~(x, K') = (Dx, [K, K'])`.
pub fn pullback_pair(k: &KernelDatum) -> Result<LieDerPair> {
    verify_kernel(k).map_err(|v| Error::Invalid(v.to_string()))?;
    let g = k.gpair.algebra();
    let inner = k.hpair.algebra().inner_derivations();
    let basis = pullback_basis(k);
    let dim = basis.len();
    let coords = |x: &[Rational], km: &Matrix| -> Result<Vec<Rational>> {
        let rest = km.sub(&k.rep_at(x));
        let tail = inner
            .coordinates(&rest.flatten())
            .ok_or_else(|| Error::Inconsistent("element leaves the fiber product".into()))?;
        Ok(x.iter().cloned().chain(tail).collect())
    };
    let mut brackets = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let (x, ka) = &basis[a];
            let (y, kb) = &basis[b];
            let z = g.bracket(x, y);
            brackets.push((a, b, coords(&z, &ka.commutator(kb))?));
        }
    }
    let name = format!("{}~", g.name());
    let total = LieAlgebra::from_brackets(&name, dim, brackets)?;
    let (d, kk) = (k.gpair.derivation(), k.hpair.derivation());
    let cols = basis
        .iter()
        .map(|(x, km)| coords(&d.apply(x), &kk.commutator(km)))
        .collect::<Result<Vec<_>>>()?;
    let dt = Matrix::from_cols(&cols, dim)?;
    LieDerPair::new(total, dt)
}
