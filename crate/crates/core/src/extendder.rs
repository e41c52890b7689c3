//! Extending a pair of derivations `(K, D)` of `h` and `g` to a derivation of an extension
//! `0 -> h -> ĝ -> g -> 0`, and the obstruction class `W(K, D) in H^2(g, z(h))`.

use crate::cochain::{
    coboundary_matrix, cohomology, delta_op, formal_coboundary, AltCochain, Complex, LieDerRep,
};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rat, solve_vec, Matrix, Rational};
use crate::kernel::CenterCoords;
use crate::lie::{LieAlgebra, LieDerPair};
use crate::nonabelian::{combine, LieExtension};

/// An extension of plain Lie algebras with a chosen section and the data it induces.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    pub ext: LieExtension,
    pub section: Matrix,
    pub varrho: Vec<Matrix>,
    pub omega: AltCochain,
}

impl ExtensionContext {
    pub fn new(ext: LieExtension, section: Matrix) -> Result<Self> {
        ext.verify()
            .map_err(|v| Error::Invalid(format!("not an extension: {v}")))?;
        let (varrho, omega) = ext.extract_varrho_omega(&section)?;
        Ok(ExtensionContext {
            ext,
            section,
            varrho,
            omega,
        })
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.ext.g
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.ext.h
    }

    /// `S(x, u) = s x + inj u` as a square matrix on `ĝ`.
    pub fn splitting(&self) -> Matrix {
        self.section.hcat(&self.ext.inj)
    }
}

/// `K` on `h` and `D` on `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationPair {
    pub k: Matrix,
    pub d: Matrix,
}

impl DerivationPair {
    pub fn new(k: Matrix, d: Matrix) -> Self {
        DerivationPair { k, d }
    }

    fn fits(&self, ctx: &ExtensionContext) -> bool {
        let (m, n) = (ctx.g().dim(), ctx.h().dim());
        self.k.rows() == n && self.k.cols() == n && self.d.rows() == m && self.d.cols() == m
    }

    pub fn is_valid(&self, ctx: &ExtensionContext) -> bool {
        self.fits(ctx) && ctx.h().is_derivation(&self.k) && ctx.g().is_derivation(&self.d)
    }
}

/// True when `dhat` is a derivation of `ĝ` mapping `h` into itself.
pub fn preserves_h(ctx: &ExtensionContext, dhat: &Matrix) -> bool {
    let nt = ctx.ext.total.dim();
    dhat.rows() == nt
        && dhat.cols() == nt
        && ctx.ext.total.is_derivation(dhat)
        && ctx.ext.proj.mul(dhat).mul(&ctx.ext.inj).is_zero()
}

/// `Γ(D̂) = (D̂|_h, p D̂ s)`.
pub fn gamma(ctx: &ExtensionContext, dhat: &Matrix) -> Result<DerivationPair> {
    if !preserves_h(ctx, dhat) {
        return Err(Error::Invalid(
            "map is not a derivation of the extension preserving h".into(),
        ));
    }
    let n = ctx.h().dim();
    let cols = (0..n)
        .map(|a| ctx.ext.pull_back(&dhat.apply(&ctx.ext.inj.col(a))))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Inconsistent("restriction leaves h".into()))?;
    let k = Matrix::from_cols(&cols, n)?;
    let d = ctx.ext.proj.mul(dhat).mul(&ctx.section);
    Ok(DerivationPair { k, d })
}

/// Basis of the derivations of `ĝ` that preserve `h`, as matrices.
pub fn der_h_space(ctx: &ExtensionContext) -> Result<Vec<Matrix>> {
    let total = &ctx.ext.total;
    let nt = total.dim();
    let ders = total.derivation_space().basis_vectors();
    let mats = ders
        .iter()
        .map(|v| Matrix::unflatten(nt, nt, v))
        .collect::<Result<Vec<_>>>()?;
    let constraint_cols: Vec<Vec<Rational>> = mats
        .iter()
        .map(|m| ctx.ext.proj.mul(m).mul(&ctx.ext.inj).flatten())
        .collect();
    let rows = ctx.g().dim() * ctx.h().dim();
    let c = Matrix::from_cols(&constraint_cols, rows)?;
    let ker = kernel_basis(&c);
    Ok(ker
        .basis_vectors()
        .iter()
        .map(|w| combine(&mats, w, nt))
        .collect())
}

fn compat_rhs(ctx: &ExtensionContext, pair: &DerivationPair, i: usize) -> Matrix {
    let n = ctx.h().dim();
    let r = &ctx.varrho[i];
    pair.k
        .mul(r)
        .sub(&combine(&ctx.varrho, &pair.d.col(i), n))
        .sub(&r.mul(&pair.k))
}

/// A map `chi` with `[chi(x), u] = K(varrho(x)u) - varrho(Dx)u - varrho(x)K(u)`, if one exists.
pub fn is_compatible(ctx: &ExtensionContext, pair: &DerivationPair) -> Option<Matrix> {
    is_compatible_with_free(ctx, pair, &rat(0))
}

pub fn is_compatible_with_free(
    ctx: &ExtensionContext,
    pair: &DerivationPair,
    free: &Rational,
) -> Option<Matrix> {
    if !pair.fits(ctx) {
        return None;
    }
    let h = ctx.h();
    let cols = (0..ctx.g().dim())
        .map(|i| h.ad_preimage_with_free(&compat_rhs(ctx, pair, i), free))
        .collect::<Option<Vec<_>>>()?;
    Matrix::from_cols(&cols, h.dim()).ok()
}

/// `[d^F chi + delta omega]` in `H^2(g, z(h))`.
#[derive(Clone, Debug)]
pub struct WClass {
    pub rep: LieDerRep,
    /// Representative in center coordinates.
    pub cochain: AltCochain,
    pub class: Vec<Rational>,
}

impl WClass {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(num::Zero::is_zero)
    }
}

/// `varrho` restricted to the center, as a plain representation of `g`.
pub fn center_rep(ctx: &ExtensionContext) -> Result<LieDerRep> {
    let z = CenterCoords::of(ctx.h());
    let rho = ctx
        .varrho
        .iter()
        .map(|r| z.restrict(r))
        .collect::<Result<Vec<_>>>()?;
    if rho.is_empty() {
        return LieDerRep::trivial(
            LieDerPair::trivial(ctx.g().clone()),
            Matrix::zeros(z.dim(), z.dim()),
        );
    }
    LieDerRep::plain(ctx.g().clone(), rho)
}

fn w_cochain_h(ctx: &ExtensionContext, pair: &DerivationPair, chi: &Matrix) -> Result<AltCochain> {
    let c = AltCochain::from_linear_map(chi);
    Ok(formal_coboundary(ctx.g(), &ctx.varrho, &c)?.add(&delta_op(&pair.d, &pair.k, &ctx.omega)?))
}

pub fn obstruction_w(
    ctx: &ExtensionContext,
    pair: &DerivationPair,
    chi: &Matrix,
) -> Result<WClass> {
    if !pair.fits(ctx) || chi.rows() != ctx.h().dim() || chi.cols() != ctx.g().dim() {
        return Err(Error::Dimension(
            "derivation pair or witness does not match the extension".into(),
        ));
    }
    let z = CenterCoords::of(ctx.h());
    let cochain = z.to_center(&w_cochain_h(ctx, pair, chi)?)?;
    let rep = center_rep(ctx)?;
    let class = cohomology(&rep, 2, Complex::Ce)?.class_coords(&cochain.to_vector())?;
    Ok(WClass {
        rep,
        cochain,
        class,
    })
}

/// Outcome of the extensibility decision.
#[derive(Clone, Debug)]
pub struct Extensibility {
    pub chi: Option<Matrix>,
    pub w: Option<WClass>,
    pub dhat: Option<Matrix>,
}

impl Extensibility {
    pub fn compatible(&self) -> bool {
        self.chi.is_some()
    }
}

pub fn analyze(ctx: &ExtensionContext, pair: &DerivationPair) -> Result<Extensibility> {
    if !pair.fits(ctx) {
        return Err(Error::Dimension(
            "derivation pair does not match the extension".into(),
        ));
    }
    let none = Extensibility {
        chi: None,
        w: None,
        dhat: None,
    };
    if !pair.is_valid(ctx) {
        return Ok(none);
    }
    let Some(chi) = is_compatible(ctx, pair) else {
        return Ok(none);
    };
    let w = obstruction_w(ctx, pair, &chi)?;
    if !w.is_zero() {
        return Ok(Extensibility {
            chi: Some(chi),
            w: Some(w),
            dhat: None,
        });
    }
    let z = CenterCoords::of(ctx.h());
    let d1 = coboundary_matrix(&w.rep, 1, Complex::Ce)?;
    let theta = solve_vec(&d1, &w.cochain.to_vector())
        .ok_or_else(|| Error::Inconsistent("zero class without a primitive".into()))?;
    let theta = AltCochain::from_vector(ctx.g().dim(), z.dim(), 1, &theta)?;
    let chi2 = chi.sub(&z.to_h(&theta).to_matrix());
    let block = Matrix::block(
        &pair.d,
        &Matrix::zeros(pair.d.rows(), pair.k.cols()),
        &chi2,
        &pair.k,
    );
    let s = ctx.splitting();
    let s_inv = s
        .inverse()
        .ok_or_else(|| Error::Inconsistent("section and inj do not span".into()))?;
    let dhat = s.mul(&block).mul(&s_inv);
    let lifted = ctx.ext.inj.mul(&pair.k) == dhat.mul(&ctx.ext.inj);
    let projected = ctx.ext.proj.mul(&dhat) == pair.d.mul(&ctx.ext.proj);
    if !ctx.ext.total.is_derivation(&dhat) || !lifted || !projected {
        return Err(Error::Inconsistent(
            "constructed lift is not a derivation".into(),
        ));
    }
    Ok(Extensibility {
        chi: Some(chi),
        w: Some(w),
        dhat: Some(dhat),
    })
}

/// A derivation of `ĝ` restricting to `K` and inducing `D`, when one exists.
pub fn is_extensible(ctx: &ExtensionContext, pair: &DerivationPair) -> Result<Option<Matrix>> {
    Ok(analyze(ctx, pair)?.dhat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::nonabelian::{apply_gauge, build_extension, NonAbelianCocycle};

    fn heisenberg_over_a2() -> ExtensionContext {
        let ext = LieExtension {
            total: heisenberg(),
            inj: Matrix::from_i64(&[&[0], &[0], &[1]]),
            proj: Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]),
            g: LieAlgebra::abelian(2),
            h: LieAlgebra::abelian(1),
        };
        ExtensionContext::new(ext, Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap()
    }

    fn from_cocycle(c: &NonAbelianCocycle) -> (ExtensionContext, Matrix) {
        let (e, s) = build_extension(c).unwrap();
        let dhat = e.total.derivation().clone();
        (ExtensionContext::new(e.underlying(), s.s).unwrap(), dhat)
    }

    fn n2_h3() -> NonAbelianCocycle {
        let g = LieDerPair::new(n2(), Matrix::from_i64(&[&[0, 0], &[1, 1]])).unwrap();
        let h = LieDerPair::new(heisenberg(), Matrix::diag(&[rat(1), rat(1), rat(2)])).unwrap();
        apply_gauge(
            &NonAbelianCocycle::zero(g, h),
            &Matrix::from_i64(&[&[1, 0], &[2, -1], &[0, 1]]),
        )
        .unwrap()
    }

    fn semidirect() -> NonAbelianCocycle {
        let g = LieDerPair::trivial(sl2());
        let h = LieDerPair::new(LieAlgebra::abelian(2), Matrix::scalar(2, rat(3))).unwrap();
        let mut c = NonAbelianCocycle::zero(g, h);
        c.varrho = sl2_standard_rep();
        c
    }

    #[test]
    fn gamma_restricts_and_projects() {
        let ctx = heisenberg_over_a2();
        let zero = gamma(&ctx, &Matrix::zeros(3, 3)).unwrap();
        assert!(zero.k.is_zero() && zero.d.is_zero());
        let dhat = Matrix::diag(&[rat(1), rat(1), rat(2)]);
        let p = gamma(&ctx, &dhat).unwrap();
        assert_eq!(
            p,
            DerivationPair::new(Matrix::scalar(1, rat(2)), Matrix::identity(2))
        );
        let mut other = ctx.clone();
        other.section = Matrix::from_i64(&[&[1, 0], &[0, 1], &[3, -1]]);
        let other = ExtensionContext::new(other.ext, other.section).unwrap();
        assert_eq!(gamma(&other, &dhat).unwrap(), p);
        assert!(gamma(&ctx, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn gamma_is_a_homomorphism() {
        for (ctx, _) in [from_cocycle(&n2_h3()), from_cocycle(&semidirect())] {
            let ders = der_h_space(&ctx).unwrap();
            assert!(!ders.is_empty());
            for a in &ders {
                for b in &ders {
                    let (ga, gb) = (gamma(&ctx, a).unwrap(), gamma(&ctx, b).unwrap());
                    let gab = gamma(&ctx, &a.commutator(b)).unwrap();
                    assert_eq!(gab.k, ga.k.commutator(&gb.k));
                    assert_eq!(gab.d, ga.d.commutator(&gb.d));
                }
            }
        }
    }

    #[test]
    fn heisenberg_trace_criterion() {
        let ctx = heisenberg_over_a2();
        let good = DerivationPair::new(Matrix::scalar(1, rat(2)), Matrix::identity(2));
        let chi = is_compatible(&ctx, &good).unwrap();
        assert!(chi.is_zero());
        let dhat = is_extensible(&ctx, &good).unwrap().unwrap();
        assert_eq!(dhat.col(2), vec![rat(0), rat(0), rat(2)]);
        assert_eq!(gamma(&ctx, &dhat).unwrap(), good);

        let bad = DerivationPair::new(Matrix::scalar(1, rat(1)), Matrix::identity(2));
        let res = analyze(&ctx, &bad).unwrap();
        assert!(res.compatible());
        assert_eq!(res.w.unwrap().class, vec![rat(1)]);
        assert!(res.dhat.is_none());

        let d = Matrix::from_i64(&[&[2, 1], &[5, -1]]);
        let p = DerivationPair::new(Matrix::scalar(1, rat(1)), d);
        assert!(is_extensible(&ctx, &p).unwrap().is_some());
    }

    #[test]
    fn incompatible_pair_on_a_semidirect_product() {
        let (ctx, _) = from_cocycle(&semidirect());
        let p = DerivationPair::new(Matrix::diag(&[rat(1), rat(0)]), Matrix::zeros(3, 3));
        assert!(is_compatible(&ctx, &p).is_none());
        assert!(is_extensible(&ctx, &p).unwrap().is_none());
        let p = DerivationPair::new(Matrix::scalar(2, rat(5)), Matrix::zeros(3, 3));
        assert!(is_extensible(&ctx, &p).unwrap().is_some());
    }

    #[test]
    fn pairs_from_lifts_are_extensible() {
        for c in [n2_h3(), semidirect()] {
            let (ctx, dhat) = from_cocycle(&c);
            let p = gamma(&ctx, &dhat).unwrap();
            assert_eq!(
                p,
                DerivationPair::new(c.h.derivation().clone(), c.g.derivation().clone())
            );
            let chi0 = is_compatible(&ctx, &p).unwrap();
            let chi1 = is_compatible_with_free(&ctx, &p, &rat(1)).unwrap();
            let w0 = obstruction_w(&ctx, &p, &chi0).unwrap();
            let w1 = obstruction_w(&ctx, &p, &chi1).unwrap();
            assert!(w0.is_zero());
            assert_eq!(w0.class, w1.class);
            let lifted = is_extensible(&ctx, &p).unwrap().unwrap();
            assert_eq!(gamma(&ctx, &lifted).unwrap(), p);
        }
    }
}
