//! Non-abelian 2-cocycles of LieDer pairs, their gauge equivalences, and the
//! dictionary between cocycles and extensions.

use std::fmt;

use num::Zero;

use crate::cochain::{formal_coboundary, AltCochain};
use crate::error::{Error, Result};
use crate::exactlin::{add_vec, solve_vec, sub_vec, unit_vec, zero_vec, Matrix, Rational};
use crate::lie::{LieAlgebra, LieDerPair};

/// Equation groups defining a non-abelian 2-cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleEquation {
    /// Each `varrho(e_i)` must be a derivation of `h`.
    VarrhoDerivation,
    /// `varrho([x,y]) = [varrho(x), varrho(y)] - ad(omega(x,y))`.
    Nc1,
    /// The formal coboundary of `omega` vanishes.
    Nc2,
    /// `K varrho(x) - varrho(Dx) - varrho(x) K = ad(chi(x))`.
    Nc3,
    /// `K omega(x,y) + chi([x,y]) = varrho(x)chi(y) - varrho(y)chi(x) + omega(Dx,y) + omega(x,Dy)`.
    Nc4,
}

/// First failing equation and the 0-based g-basis indices where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub equation: CocycleEquation,
    pub indices: Vec<usize>,
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| format!("e{}", i + 1)).collect();
        write!(f, "{:?} fails at ({})", self.equation, idx.join(", "))
    }
}

/// A triple `(varrho, omega, chi)` for LieDer pairs `(g, D)` and `(h, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianCocycle {
    pub g: LieDerPair,
    pub h: LieDerPair,
    /// `varrho(e_i)` as an operator on `h`, one per g-basis vector.
    pub varrho: Vec<Matrix>,
    /// Degree-2 cochain `g -> h`.
    pub omega: AltCochain,
    /// Linear map `g -> h`.
    pub chi: Matrix,
}

impl NonAbelianCocycle {
    /// Shape-checked constructor; the cocycle equations are checked by [`verify_cocycle`].
    pub fn new(
        g: LieDerPair,
        h: LieDerPair,
        varrho: Vec<Matrix>,
        omega: AltCochain,
        chi: Matrix,
    ) -> Result<Self> {
        let c = NonAbelianCocycle {
            g,
            h,
            varrho,
            omega,
            chi,
        };
        c.check_shape()?;
        Ok(c)
    }

    /// The zero triple.
    pub fn zero(g: LieDerPair, h: LieDerPair) -> Self {
        let (m, n) = (g.dim(), h.dim());
        NonAbelianCocycle {
            g,
            h,
            varrho: vec![Matrix::zeros(n, n); m],
            omega: AltCochain::zero(m, n, 2),
            chi: Matrix::zeros(n, m),
        }
    }

    pub fn check_shape(&self) -> Result<()> {
        let (m, n) = (self.g.dim(), self.h.dim());
        let ok = self.varrho.len() == m
            && self.varrho.iter().all(|r| r.rows() == n && r.cols() == n)
            && self.omega.source_dim() == m
            && self.omega.target_dim() == n
            && self.omega.degree() == 2
            && self.chi.rows() == n
            && self.chi.cols() == m;
        if ok {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "cocycle data does not match dim g = {m}, dim h = {n}"
            )))
        }
    }

    pub fn gdim(&self) -> usize {
        self.g.dim()
    }

    pub fn hdim(&self) -> usize {
        self.h.dim()
    }

    /// `varrho(x)` for a vector `x` of `g`.
    pub fn varrho_at(&self, x: &[Rational]) -> Matrix {
        combine(&self.varrho, x, self.hdim())
    }

    pub fn verify(&self) -> std::result::Result<(), CocycleViolation> {
        verify_cocycle(self)
    }
}

/// `sum_i x_i m_i`.
pub(crate) fn combine(ms: &[Matrix], x: &[Rational], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (m, c) in ms.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn violation(
    equation: CocycleEquation,
    indices: Vec<usize>,
) -> std::result::Result<(), CocycleViolation> {
    Err(CocycleViolation { equation, indices })
}

/// Checks every cocycle equation on basis tuples, reporting the first failure.
pub fn verify_cocycle(c: &NonAbelianCocycle) -> std::result::Result<(), CocycleViolation> {
    let (g, h) = (c.g.algebra(), c.h.algebra());
    let (d, k) = (c.g.derivation(), c.h.derivation());
    let m = g.dim();
    for (i, r) in c.varrho.iter().enumerate() {
        if !h.is_derivation(r) {
            return violation(CocycleEquation::VarrhoDerivation, vec![i]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let lhs = c.varrho_at(g.bracket_basis(i, j));
            let rhs = c.varrho[i]
                .commutator(&c.varrho[j])
                .sub(&h.ad(c.omega.get(&[i, j])));
            if lhs != rhs {
                return violation(CocycleEquation::Nc1, vec![i, j]);
            }
        }
    }
    let dw = formal_coboundary(g, &c.varrho, &c.omega).expect("shape checked");
    for (t, v) in dw.tuples().iter().zip(dw.values()) {
        if v.iter().any(|x| !x.is_zero()) {
            return violation(CocycleEquation::Nc2, t.clone());
        }
    }
    for i in 0..m {
        let lhs = k
            .mul(&c.varrho[i])
            .sub(&c.varrho_at(&d.col(i)))
            .sub(&c.varrho[i].mul(k));
        if lhs != h.ad(&c.chi.col(i)) {
            return violation(CocycleEquation::Nc3, vec![i]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let lhs = add_vec(
                &k.apply(c.omega.get(&[i, j])),
                &c.chi.apply(g.bracket_basis(i, j)),
            );
            let rhs = sub_vec(
                &c.varrho[i].apply(&c.chi.col(j)),
                &c.varrho[j].apply(&c.chi.col(i)),
            );
            // omega(Dx, y) + omega(x, Dy) = omega(Dx, y) - omega(Dy, x).
            let dw = sub_vec(
                &c.omega.eval_vec_first(&d.col(i), &[j]),
                &c.omega.eval_vec_first(&d.col(j), &[i]),
            );
            if lhs != add_vec(&rhs, &dw) {
                return violation(CocycleEquation::Nc4, vec![i, j]);
            }
        }
    }
    Ok(())
}

fn same_pairs(c: &NonAbelianCocycle, other: &NonAbelianCocycle) -> bool {
    c.g == other.g && c.h == other.h
}

/// The primed cocycle related to `c` by `tau`:
/// `varrho' = varrho - ad tau`,
/// `omega'(x,y) = omega(x,y) - varrho'(x)tau(y) + varrho'(y)tau(x) - [tau x, tau y] + tau[x,y]`,
/// `chi' = chi - K tau + tau D`.
pub fn apply_gauge(c: &NonAbelianCocycle, tau: &Matrix) -> Result<NonAbelianCocycle> {
    c.check_shape()?;
    let (m, n) = (c.gdim(), c.hdim());
    if tau.rows() != n || tau.cols() != m {
        return Err(Error::Dimension(format!("gauge map must be {n}x{m}")));
    }
    let (g, h) = (c.g.algebra(), c.h.algebra());
    let varrho: Vec<Matrix> = (0..m)
        .map(|i| c.varrho[i].sub(&h.ad(&tau.col(i))))
        .collect();
    let omega = AltCochain::from_fn(m, n, 2, |t| {
        let (i, j) = (t[0], t[1]);
        let (ti, tj) = (tau.col(i), tau.col(j));
        let shift = gauge_shift(
            h,
            &varrho[i],
            &varrho[j],
            &ti,
            &tj,
            &tau.apply(g.bracket_basis(i, j)),
        );
        sub_vec(c.omega.get(t), &shift)
    });
    let chi = c
        .chi
        .sub(&c.h.derivation().mul(tau))
        .add(&tau.mul(c.g.derivation()));
    Ok(NonAbelianCocycle {
        g: c.g.clone(),
        h: c.h.clone(),
        varrho,
        omega,
        chi,
    })
}

/// `varrho'(x)tau(y) - varrho'(y)tau(x) + [tau x, tau y] - tau[x,y]`, the amount by which omega moves.
fn gauge_shift(
    h: &LieAlgebra,
    rx: &Matrix,
    ry: &Matrix,
    tx: &[Rational],
    ty: &[Rational],
    t_xy: &[Rational],
) -> Vec<Rational> {
    let v = sub_vec(&rx.apply(ty), &ry.apply(tx));
    sub_vec(&add_vec(&v, &h.bracket(tx, ty)), t_xy)
}

/// True when `varrho - varrho' = ad tau`,
/// `omega - omega' = varrho'(x)tau(y) - varrho'(y)tau(x) + [tau x, tau y] - tau[x,y]` and
/// `chi - chi' = K tau - tau D`.
pub fn verify_equivalence_witness(
    c: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
    tau: &Matrix,
) -> bool {
    if !same_pairs(c, c2) || c.check_shape().is_err() || c2.check_shape().is_err() {
        return false;
    }
    let (m, n) = (c.gdim(), c.hdim());
    if tau.rows() != n || tau.cols() != m {
        return false;
    }
    let (g, h) = (c.g.algebra(), c.h.algebra());
    let eq11 = (0..m).all(|i| c.varrho[i].sub(&c2.varrho[i]) == h.ad(&tau.col(i)));
    if !eq11 {
        return false;
    }
    let eq22 = (0..m).all(|i| {
        (i + 1..m).all(|j| {
            let lhs = sub_vec(c.omega.get(&[i, j]), c2.omega.get(&[i, j]));
            let t_xy = tau.apply(g.bracket_basis(i, j));
            lhs == gauge_shift(
                h,
                &c2.varrho[i],
                &c2.varrho[j],
                &tau.col(i),
                &tau.col(j),
                &t_xy,
            )
        })
    });
    let eq33 = c.chi.sub(&c2.chi) == c.h.derivation().mul(tau).sub(&tau.mul(c.g.derivation()));
    eq22 && eq33
}

/// A short exact sequence `0 -> h -> total -> g -> 0` of Lie algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieExtension {
    pub total: LieAlgebra,
    /// `h -> total`.
    pub inj: Matrix,
    /// `total -> g`.
    pub proj: Matrix,
    pub g: LieAlgebra,
    pub h: LieAlgebra,
}

/// A short exact sequence of LieDer pairs `0 -> (h,K) -> (total, Dhat) -> (g,D) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub total: LieDerPair,
    pub inj: Matrix,
    pub proj: Matrix,
    pub h: LieDerPair,
    pub g: LieDerPair,
}

/// Why an extension fails its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionViolation {
    Shape(String),
    NotLieAlgebra(&'static str),
    ProjInjNonzero,
    InjNotInjective,
    ProjNotSurjective,
    NotExact,
    InjNotHomomorphism,
    ProjNotHomomorphism,
    ImageNotIdeal,
    DerivationNotLifted,
    DerivationNotProjected,
}

impl fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionViolation::Shape(s) => write!(f, "shape mismatch: {s}"),
            ExtensionViolation::NotLieAlgebra(which) => {
                write!(f, "{which} fails the Jacobi identity")
            }
            ExtensionViolation::ProjInjNonzero => write!(f, "proj . inj is not zero"),
            ExtensionViolation::InjNotInjective => write!(f, "inj is not injective"),
            ExtensionViolation::ProjNotSurjective => write!(f, "proj is not surjective"),
            ExtensionViolation::NotExact => write!(f, "sequence is not exact in the middle"),
            ExtensionViolation::InjNotHomomorphism => write!(f, "inj is not a homomorphism"),
            ExtensionViolation::ProjNotHomomorphism => write!(f, "proj is not a homomorphism"),
            ExtensionViolation::ImageNotIdeal => write!(f, "image of inj is not an ideal"),
            ExtensionViolation::DerivationNotLifted => write!(f, "Dhat . inj differs from inj . K"),
            ExtensionViolation::DerivationNotProjected => {
                write!(f, "proj . Dhat differs from D . proj")
            }
        }
    }
}

impl LieExtension {
    pub fn verify(&self) -> std::result::Result<(), ExtensionViolation> {
        let (nt, nh, ng) = (self.total.dim(), self.h.dim(), self.g.dim());
        if self.inj.rows() != nt
            || self.inj.cols() != nh
            || self.proj.rows() != ng
            || self.proj.cols() != nt
        {
            return Err(ExtensionViolation::Shape(format!(
                "inj {}x{}, proj {}x{} for dims h={nh}, total={nt}, g={ng}",
                self.inj.rows(),
                self.inj.cols(),
                self.proj.rows(),
                self.proj.cols()
            )));
        }
        for (name, alg) in [("total", &self.total), ("g", &self.g), ("h", &self.h)] {
            if alg.jacobi_check().is_err() {
                return Err(ExtensionViolation::NotLieAlgebra(name));
            }
        }
        if !self.proj.mul(&self.inj).is_zero() {
            return Err(ExtensionViolation::ProjInjNonzero);
        }
        if self.inj.rank() != nh {
            return Err(ExtensionViolation::InjNotInjective);
        }
        if self.proj.rank() != ng {
            return Err(ExtensionViolation::ProjNotSurjective);
        }
        if nh + ng != nt {
            return Err(ExtensionViolation::NotExact);
        }
        if !self.h.is_hom_to(&self.inj, &self.total) {
            return Err(ExtensionViolation::InjNotHomomorphism);
        }
        if !self.total.is_hom_to(&self.proj, &self.g) {
            return Err(ExtensionViolation::ProjNotHomomorphism);
        }
        for b in 0..nt {
            for a in 0..nh {
                let v = self.total.bracket(&unit_vec(nt, b), &self.inj.col(a));
                if self.pull_back(&v).is_none() {
                    return Err(ExtensionViolation::ImageNotIdeal);
                }
            }
        }
        Ok(())
    }

    /// The unique `u` with `inj u = v`, if any.
    pub fn pull_back(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        solve_vec(&self.inj, v).filter(|u| self.inj.apply(u) == v)
    }

    /// True when `proj . s = Id`.
    pub fn is_section(&self, s: &Matrix) -> bool {
        s.rows() == self.total.dim()
            && s.cols() == self.g.dim()
            && self.proj.mul(s) == Matrix::identity(self.g.dim())
    }

    /// `varrho(x)u = [s x, inj u]` and `omega(x,y) = [s x, s y] - s[x,y]`, pulled back to `h`.
    pub fn extract_varrho_omega(&self, s: &Matrix) -> Result<(Vec<Matrix>, AltCochain)> {
        if !self.is_section(s) {
            return Err(Error::Invalid(
                "section does not satisfy proj . s = Id".into(),
            ));
        }
        let (m, n) = (self.g.dim(), self.h.dim());
        let scols: Vec<Vec<Rational>> = (0..m).map(|i| s.col(i)).collect();
        let mut varrho = Vec::with_capacity(m);
        for x in &scols {
            let mut cols = Vec::with_capacity(n);
            for a in 0..n {
                let v = self.total.bracket(x, &self.inj.col(a));
                cols.push(self.pull_back(&v).ok_or_else(|| outside("[s(x), u]"))?);
            }
            varrho.push(Matrix::from_cols(&cols, n)?);
        }
        let mut failed = false;
        let omega = AltCochain::from_fn(m, n, 2, |t| {
            let v = sub_vec(
                &self.total.bracket(&scols[t[0]], &scols[t[1]]),
                &s.apply(self.g.bracket_basis(t[0], t[1])),
            );
            self.pull_back(&v).unwrap_or_else(|| {
                failed = true;
                zero_vec(n)
            })
        });
        if failed {
            return Err(outside("[s(x), s(y)] - s([x,y])"));
        }
        Ok((varrho, omega))
    }
}

fn outside(what: &str) -> Error {
    Error::Inconsistent(format!("{what} is not in the image of inj"))
}

impl Extension {
    /// The underlying extension of Lie algebras.
    pub fn underlying(&self) -> LieExtension {
        LieExtension {
            total: self.total.algebra().clone(),
            inj: self.inj.clone(),
            proj: self.proj.clone(),
            g: self.g.algebra().clone(),
            h: self.h.algebra().clone(),
        }
    }
}

/// Checks exactness, homomorphism and ideal conditions, and compatibility of the derivations.
pub fn verify_extension(e: &Extension) -> std::result::Result<(), ExtensionViolation> {
    e.underlying().verify()?;
    if e.total.derivation().mul(&e.inj) != e.inj.mul(e.h.derivation()) {
        return Err(ExtensionViolation::DerivationNotLifted);
    }
    if e.proj.mul(e.total.derivation()) != e.g.derivation().mul(&e.proj) {
        return Err(ExtensionViolation::DerivationNotProjected);
    }
    Ok(())
}

/// A linear section `s` of an extension with `proj . s = Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub s: Matrix,
}

impl Section {
    pub fn new(e: &Extension, s: Matrix) -> Result<Self> {
        if !e.underlying().is_section(&s) {
            return Err(Error::Invalid(
                "section does not satisfy proj . s = Id".into(),
            ));
        }
        Ok(Section { s })
    }
}

/// Extension on `g ⊕ h` with bracket
/// `[(x,u),(y,v)] = ([x,y], varrho(x)v - varrho(y)u + [u,v] + omega(x,y))`
/// and derivation `(x,u) -> (Dx, Ku + chi x)`, together with the section `x -> (x,0)`.
pub fn build_extension(c: &NonAbelianCocycle) -> Result<(Extension, Section)> {
    c.check_shape()?;
    verify_cocycle(c).map_err(|v| Error::Invalid(format!("not a cocycle: {v}")))?;
    let (g, h) = (c.g.algebra(), c.h.algebra());
    let (m, n) = (g.dim(), h.dim());
    let total_dim = m + n;
    let mut data = Vec::new();
    for i in 0..total_dim {
        for j in i + 1..total_dim {
            let mut v = zero_vec(total_dim);
            if j < m {
                v[..m].clone_from_slice(g.bracket_basis(i, j));
                v[m..].clone_from_slice(c.omega.get(&[i, j]));
            } else if i < m {
                v[m..].clone_from_slice(&c.varrho[i].col(j - m));
            } else {
                v[m..].clone_from_slice(h.bracket_basis(i - m, j - m));
            }
            data.push((i, j, v));
        }
    }
    let name = format!("{}x{}", g.name(), h.name());
    let total = LieAlgebra::from_brackets(name, total_dim, data)?;
    let dhat = Matrix::block(
        c.g.derivation(),
        &Matrix::zeros(m, n),
        &c.chi,
        c.h.derivation(),
    );
    let total = LieDerPair::new(total, dhat)?;
    let inj = Matrix::zeros(m, n).vcat(&Matrix::identity(n));
    let proj = Matrix::identity(m).hcat(&Matrix::zeros(m, n));
    let s = Matrix::identity(m).vcat(&Matrix::zeros(n, m));
    let ext = Extension {
        total,
        inj,
        proj,
        h: c.h.clone(),
        g: c.g.clone(),
    };
    Ok((ext, Section { s }))
}

/// Cocycle of an extension relative to a section, pulled back to `h`-coordinates.
pub fn extract_cocycle(e: &Extension, s: &Section) -> Result<NonAbelianCocycle> {
    let plain = e.underlying();
    let (varrho, omega) = plain.extract_varrho_omega(&s.s)?;
    let (m, n) = (e.g.dim(), e.h.dim());
    let dhat = e.total.derivation();
    let mut cols = Vec::with_capacity(m);
    for i in 0..m {
        let v = sub_vec(
            &dhat.apply(&s.s.col(i)),
            &s.s.apply(&e.g.derivation().col(i)),
        );
        cols.push(
            plain
                .pull_back(&v)
                .ok_or_else(|| outside("Dhat(s x) - s(Dx)"))?,
        );
    }
    let chi = Matrix::from_cols(&cols, n)?;
    NonAbelianCocycle::new(e.g.clone(), e.h.clone(), varrho, omega, chi)
}

/// The isomorphism `(x,u) -> (x, u + tau x)` from the extension of `c` to that of `c2`.
pub fn iso_from_gauge(
    c: &NonAbelianCocycle,
    c2: &NonAbelianCocycle,
    tau: &Matrix,
) -> Result<Matrix> {
    if !verify_equivalence_witness(c, c2, tau) {
        return Err(Error::Invalid("tau is not an equivalence witness".into()));
    }
    let (e1, _) = build_extension(c)?;
    let (e2, _) = build_extension(c2)?;
    let (m, n) = (c.gdim(), c.hdim());
    let kappa = Matrix::block(
        &Matrix::identity(m),
        &Matrix::zeros(m, n),
        tau,
        &Matrix::identity(n),
    );
    let (a1, a2) = (e1.total.algebra(), e2.total.algebra());
    let preserves = a1.is_hom_to(&kappa, a2)
        && kappa.mul(e1.total.derivation()) == e2.total.derivation().mul(&kappa)
        && kappa.mul(&e1.inj) == e2.inj
        && e2.proj.mul(&kappa) == e1.proj;
    if !preserves {
        return Err(Error::Inconsistent(
            "gauge isomorphism fails its checks".into(),
        ));
    }
    Ok(kappa)
}
