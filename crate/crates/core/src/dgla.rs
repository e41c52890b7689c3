//! The Nijenhuis-Richardson bracket, lifts of bigraded cochains, and the
//! differential graded Lie algebra `L^{g,h}` whose Maurer-Cartan elements are
//! the non-abelian 2-cocycles.
//!
//! Elements of `L^{g,h}` are stored by bidegree. Brackets and differentials
//! lift the components to alternating maps on `g ⊕ h` (basis of `g` first),
//! apply the Nijenhuis-Richardson bracket there, and read the result back.

use num::One;

use crate::cochain::{binomial, shuffles, tuple_rank, tuples, AltCochain};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, frac, is_zero_vec, zero_vec, Matrix, Rational};
use crate::lie::{LieAlgebra, LieDerPair};
use crate::nonabelian::NonAbelianCocycle;

/// An alternating map `Λ^arity V -> V` on a single space, the carrier of the NR bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedMap {
    map: AltCochain,
}

impl LiftedMap {
    pub fn zero(space_dim: usize, arity: usize) -> Self {
        LiftedMap {
            map: AltCochain::zero(space_dim, space_dim, arity),
        }
    }

    pub fn from_cochain(map: AltCochain) -> Result<Self> {
        if map.source_dim() != map.target_dim() {
            return Err(Error::Dimension("lifted maps are endomorphic".into()));
        }
        Ok(LiftedMap { map })
    }

    /// The bracket of a Lie algebra as an arity-2 map.
    pub fn from_bracket(l: &LieAlgebra) -> Self {
        LiftedMap {
            map: AltCochain::from_fn(l.dim(), l.dim(), 2, |t| {
                l.bracket_basis(t[0], t[1]).to_vec()
            }),
        }
    }

    pub fn from_linear(m: &Matrix) -> Self {
        LiftedMap {
            map: AltCochain::from_linear_map(m),
        }
    }

    pub fn cochain(&self) -> &AltCochain {
        &self.map
    }

    pub fn space_dim(&self) -> usize {
        self.map.source_dim()
    }

    pub fn arity(&self) -> usize {
        self.map.degree()
    }

    /// NR degree, `arity - 1`.
    pub fn degree(&self) -> i64 {
        self.arity() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    pub fn add(&self, other: &LiftedMap) -> LiftedMap {
        LiftedMap {
            map: self.map.add(&other.map),
        }
    }

    pub fn sub(&self, other: &LiftedMap) -> LiftedMap {
        LiftedMap {
            map: self.map.sub(&other.map),
        }
    }

    pub fn scale(&self, s: &Rational) -> LiftedMap {
        LiftedMap {
            map: self.map.scale(s),
        }
    }
}

/// `(a ∘ b)(x_1..x_{m+n-1}) = sum over (n, m-1)-shuffles of sign * a(b(x_σ1..x_σn), x_σ(n+1)..)`.
pub fn nr_compose(a: &LiftedMap, b: &LiftedMap) -> LiftedMap {
    assert_eq!(
        a.space_dim(),
        b.space_dim(),
        "NR composition on different spaces"
    );
    let (m, n) = (a.arity(), b.arity());
    let dim = a.space_dim();
    if m == 0 {
        return LiftedMap::zero(dim, n.saturating_sub(1));
    }
    let sh = shuffles(n, m - 1);
    let map = AltCochain::from_fn(dim, dim, m + n - 1, |t| {
        let mut out = zero_vec(dim);
        for s in &sh {
            let first: Vec<usize> = s.first.iter().map(|&p| t[p]).collect();
            let rest: Vec<usize> = s.rest.iter().map(|&p| t[p]).collect();
            let inner = b.map.get(&first);
            if is_zero_vec(inner) {
                continue;
            }
            let v = a.map.eval_vec_first(inner, &rest);
            let sign = if s.negative {
                -Rational::one()
            } else {
                Rational::one()
            };
            axpy(&mut out, &sign, &v);
        }
        out
    });
    LiftedMap { map }
}

/// `[a, b]_NR = a ∘ b - (-1)^{(m-1)(n-1)} b ∘ a`.
pub fn nr_bracket(a: &LiftedMap, b: &LiftedMap) -> LiftedMap {
    let ab = nr_compose(a, b);
    let ba = nr_compose(b, a);
    let both_odd = a.degree().rem_euclid(2) == 1 && b.degree().rem_euclid(2) == 1;
    if both_odd {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Which summand of `g ⊕ h` a bigraded cochain takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    G,
    H,
}

/// A map `Λ^k g ⊗ Λ^l h -> g` or `-> h`, stored on pairs of increasing tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedCochain {
    gdim: usize,
    hdim: usize,
    k: usize,
    l: usize,
    target: Target,
    values: Vec<Vec<Rational>>,
}

impl BigradedCochain {
    pub fn zero(gdim: usize, hdim: usize, k: usize, l: usize, target: Target) -> Self {
        let tdim = if target == Target::G { gdim } else { hdim };
        let values = vec![zero_vec(tdim); binomial(gdim, k) * binomial(hdim, l)];
        BigradedCochain {
            gdim,
            hdim,
            k,
            l,
            target,
            values,
        }
    }

    /// Value on each pair `(g-tuple, h-tuple)` of increasing tuples is `f(gt, ht)`.
    pub fn from_fn(
        gdim: usize,
        hdim: usize,
        k: usize,
        l: usize,
        target: Target,
        mut f: impl FnMut(&[usize], &[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut c = BigradedCochain::zero(gdim, hdim, k, l, target);
        let hts = tuples(hdim, l);
        let mut idx = 0;
        for gt in tuples(gdim, k) {
            for ht in &hts {
                let v = f(&gt, ht);
                assert_eq!(v.len(), c.target_dim(), "bigraded value length");
                c.values[idx] = v;
                idx += 1;
            }
        }
        c
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    /// `(k, l)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn target_dim(&self) -> usize {
        match self.target {
            Target::G => self.gdim,
            Target::H => self.hdim,
        }
    }

    fn index(&self, gt: &[usize], ht: &[usize]) -> usize {
        tuple_rank(self.gdim, gt) * binomial(self.hdim, self.l) + tuple_rank(self.hdim, ht)
    }

    pub fn get(&self, gt: &[usize], ht: &[usize]) -> &[Rational] {
        &self.values[self.index(gt, ht)]
    }

    pub fn set(&mut self, gt: &[usize], ht: &[usize], v: Vec<Rational>) {
        assert_eq!(v.len(), self.target_dim(), "bigraded value length");
        let i = self.index(gt, ht);
        self.values[i] = v;
    }

    /// Entries as `(g-tuple, h-tuple, value)`.
    pub fn entries(&self) -> Vec<(Vec<usize>, Vec<usize>, Vec<Rational>)> {
        let hts = tuples(self.hdim, self.l);
        let mut out = Vec::new();
        let mut idx = 0;
        for gt in tuples(self.gdim, self.k) {
            for ht in &hts {
                out.push((gt.clone(), ht.clone(), self.values[idx].clone()));
                idx += 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    fn same_shape(&self, other: &BigradedCochain) {
        assert_eq!(
            (self.gdim, self.hdim, self.k, self.l, self.target),
            (other.gdim, other.hdim, other.k, other.l, other.target),
            "bigraded shape mismatch"
        );
    }

    pub fn add(&self, other: &BigradedCochain) -> BigradedCochain {
        self.same_shape(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        BigradedCochain {
            values,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Rational) -> BigradedCochain {
        let values = self
            .values
            .iter()
            .map(|a| a.iter().map(|x| s * x).collect())
            .collect();
        BigradedCochain {
            values,
            ..self.clone()
        }
    }
}

/// The shuffle-antisymmetrized extension of `c` to `Λ^{k+l}(g ⊕ h)`.
pub fn lift(c: &BigradedCochain) -> LiftedMap {
    let (m, n) = (c.gdim, c.hdim);
    let dim = m + n;
    let offset = if c.target == Target::G { 0 } else { m };
    let map = AltCochain::from_fn(dim, dim, c.k + c.l, |t| {
        let mut out = zero_vec(dim);
        let gcount = t.iter().filter(|&&i| i < m).count();
        if gcount == c.k {
            // On pure basis vectors only the identity shuffle survives.
            let ht: Vec<usize> = t[c.k..].iter().map(|&i| i - m).collect();
            for (o, x) in out[offset..].iter_mut().zip(c.get(&t[..c.k], &ht)) {
                *o = x.clone();
            }
        }
        out
    });
    LiftedMap { map }
}

/// The `(k, l)` component of a lifted map with values in the chosen summand.
pub fn unlift(f: &LiftedMap, gdim: usize, k: usize, l: usize, target: Target) -> BigradedCochain {
    let hdim = f.space_dim() - gdim;
    assert_eq!(f.arity(), k + l, "unlift arity");
    let offset = if target == Target::G { 0 } else { gdim };
    let tdim = if target == Target::G { gdim } else { hdim };
    BigradedCochain::from_fn(gdim, hdim, k, l, target, |gt, ht| {
        let t: Vec<usize> = gt
            .iter()
            .copied()
            .chain(ht.iter().map(|&i| i + gdim))
            .collect();
        f.map.get(&t)[offset..offset + tdim].to_vec()
    })
}

/// All nonzero bigraded components of a lifted map.
pub fn decompose(f: &LiftedMap, gdim: usize) -> Vec<BigradedCochain> {
    let a = f.arity();
    let hdim = f.space_dim() - gdim;
    let mut out = Vec::new();
    for k in (0..=a).rev() {
        let l = a - k;
        if k > gdim || l > hdim {
            continue;
        }
        for target in [Target::G, Target::H] {
            let c = unlift(f, gdim, k, l, target);
            if !c.is_zero() {
                out.push(c);
            }
        }
    }
    out
}

/// A homogeneous element `(f, alpha)` of `L^{g,h}_n`.
///
/// `f` has one component per `(i, n+1-i)` with `i >= 1`; `alpha` one per `(i, n-i)` with
/// `i >= 1` and is empty in degree 0. All components take values in `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    degree: usize,
    gdim: usize,
    hdim: usize,
    f: Vec<BigradedCochain>,
    alpha: Vec<BigradedCochain>,
}

impl GradedElement {
    pub fn zero(gdim: usize, hdim: usize, degree: usize) -> Self {
        let f = (1..=degree + 1)
            .map(|i| BigradedCochain::zero(gdim, hdim, i, degree + 1 - i, Target::H))
            .collect();
        let alpha = (1..=degree)
            .map(|i| BigradedCochain::zero(gdim, hdim, i, degree - i, Target::H))
            .collect();
        GradedElement {
            degree,
            gdim,
            hdim,
            f,
            alpha,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    /// Components of the first part, ordered by increasing g-arity.
    pub fn f_parts(&self) -> &[BigradedCochain] {
        &self.f
    }

    pub fn alpha_parts(&self) -> &[BigradedCochain] {
        &self.alpha
    }

    /// Component of the first part with g-arity `i`.
    pub fn f_part(&self, i: usize) -> &BigradedCochain {
        &self.f[i - 1]
    }

    pub fn alpha_part(&self, i: usize) -> &BigradedCochain {
        &self.alpha[i - 1]
    }

    /// Replaces the component with the same bidegree; fails when it does not belong to this degree.
    pub fn set_component(&mut self, c: BigradedCochain) -> Result<()> {
        let (k, l) = c.bidegree();
        if c.target() != Target::H || c.gdim() != self.gdim || c.hdim() != self.hdim || k == 0 {
            return Err(Error::Invalid(format!(
                "component ({k},{l}) does not belong to L^(g,h)"
            )));
        }
        if k + l == self.degree + 1 {
            self.f[k - 1] = c;
        } else if k + l == self.degree && self.degree >= 1 {
            self.alpha[k - 1] = c;
        } else {
            return Err(Error::Invalid(format!(
                "component ({k},{l}) does not belong to degree {}",
                self.degree
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.f
            .iter()
            .chain(&self.alpha)
            .all(BigradedCochain::is_zero)
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(
            (self.degree, self.gdim, self.hdim),
            (other.degree, other.gdim, other.hdim),
            "graded shape"
        );
        GradedElement {
            f: self.f.iter().zip(&other.f).map(|(a, b)| a.add(b)).collect(),
            alpha: self
                .alpha
                .iter()
                .zip(&other.alpha)
                .map(|(a, b)| a.add(b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Rational) -> GradedElement {
        GradedElement {
            f: self.f.iter().map(|a| a.scale(s)).collect(),
            alpha: self.alpha.iter().map(|a| a.scale(s)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Sum of the lifts of the first part (arity `degree + 1`).
    pub fn lift_f(&self) -> LiftedMap {
        let dim = self.gdim + self.hdim;
        self.f
            .iter()
            .fold(LiftedMap::zero(dim, self.degree + 1), |acc, c| {
                acc.add(&lift(c))
            })
    }

    /// Sum of the lifts of the second part (arity `degree`); `None` in degree 0.
    pub fn lift_alpha(&self) -> Option<LiftedMap> {
        if self.degree == 0 {
            return None;
        }
        let dim = self.gdim + self.hdim;
        Some(
            self.alpha
                .iter()
                .fold(LiftedMap::zero(dim, self.degree), |acc, c| {
                    acc.add(&lift(c))
                }),
        )
    }

    /// Reads lifted maps back into `L^{g,h}_n`, failing if they leave it.
    pub fn from_lifted(
        gdim: usize,
        degree: usize,
        f: &LiftedMap,
        alpha: Option<&LiftedMap>,
    ) -> Result<Self> {
        let hdim = f.space_dim() - gdim;
        let mut e = GradedElement::zero(gdim, hdim, degree);
        for i in 1..=degree + 1 {
            e.f[i - 1] = unlift(f, gdim, i, degree + 1 - i, Target::H);
        }
        if degree >= 1 {
            let a = alpha.ok_or_else(|| Error::Invalid("missing second part".into()))?;
            for i in 1..=degree {
                e.alpha[i - 1] = unlift(a, gdim, i, degree - i, Target::H);
            }
        }
        let leaves =
            e.lift_f() != *f || matches!((e.lift_alpha(), alpha), (Some(x), Some(y)) if &x != y);
        if leaves {
            return Err(Error::Inconsistent(
                "lifted map has components outside L^(g,h)".into(),
            ));
        }
        Ok(e)
    }
}

/// The pairs `(g, D)` and `(h, K)` defining `L^{g,h}` and its differential.
#[derive(Clone, Debug)]
pub struct LghContext {
    g: LieDerPair,
    h: LieDerPair,
    pi: LiftedMap,
    dk: LiftedMap,
}

/// The structure bracket of `l` as a bigraded cochain on `g ⊕ h` valued in its own summand.
fn bracket_component(l: &LieAlgebra, gdim: usize, hdim: usize, target: Target) -> BigradedCochain {
    match target {
        Target::G => BigradedCochain::from_fn(gdim, hdim, 2, 0, target, |gt, _| {
            l.bracket_basis(gt[0], gt[1]).to_vec()
        }),
        Target::H => BigradedCochain::from_fn(gdim, hdim, 0, 2, target, |_, ht| {
            l.bracket_basis(ht[0], ht[1]).to_vec()
        }),
    }
}

fn linear_component(m: &Matrix, gdim: usize, hdim: usize, target: Target) -> BigradedCochain {
    match target {
        Target::G => BigradedCochain::from_fn(gdim, hdim, 1, 0, target, |gt, _| m.col(gt[0])),
        Target::H => BigradedCochain::from_fn(gdim, hdim, 0, 1, target, |_, ht| m.col(ht[0])),
    }
}

impl LghContext {
    pub fn new(g: LieDerPair, h: LieDerPair) -> Self {
        let (m, n) = (g.dim(), h.dim());
        let pi = lift(&bracket_component(g.algebra(), m, n, Target::G))
            .add(&lift(&bracket_component(h.algebra(), m, n, Target::H)));
        let dk = lift(&linear_component(g.derivation(), m, n, Target::G))
            .add(&lift(&linear_component(h.derivation(), m, n, Target::H)));
        LghContext { g, h, pi, dk }
    }

    pub fn g(&self) -> &LieDerPair {
        &self.g
    }

    pub fn h(&self) -> &LieDerPair {
        &self.h
    }

    pub fn gdim(&self) -> usize {
        self.g.dim()
    }

    pub fn hdim(&self) -> usize {
        self.h.dim()
    }

    /// Lift of `pi_g + pi_h`.
    pub fn pi(&self) -> &LiftedMap {
        &self.pi
    }

    /// Lift of `D + K`.
    pub fn d_plus_k(&self) -> &LiftedMap {
        &self.dk
    }

    fn check(&self, e: &GradedElement) -> Result<()> {
        if e.gdim() != self.gdim() || e.hdim() != self.hdim() {
            return Err(Error::Dimension(
                "graded element does not match the context".into(),
            ));
        }
        Ok(())
    }

    /// `[(f,a),(g,b)] = ([f,g], [f,b] - (-1)^{kl}[g,a])`.
    pub fn bracket(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        self.check(a)?;
        self.check(b)?;
        let (k, l) = (a.degree(), b.degree());
        let f = nr_bracket(&a.lift_f(), &b.lift_f());
        let n = k + l;
        let alpha = if n == 0 {
            None
        } else {
            let dim = self.gdim() + self.hdim();
            let mut s = LiftedMap::zero(dim, n);
            if let Some(beta) = b.lift_alpha() {
                s = s.add(&nr_bracket(&a.lift_f(), &beta));
            }
            if let Some(alpha) = a.lift_alpha() {
                let t = nr_bracket(&b.lift_f(), &alpha);
                s = if (k * l) % 2 == 0 {
                    s.sub(&t)
                } else {
                    s.add(&t)
                };
            }
            Some(s)
        };
        GradedElement::from_lifted(self.gdim(), n, &f, alpha.as_ref())
    }

    /// `d(f,a) = ([pi_g+pi_h, f], [pi_g+pi_h, a] - (-1)^k [f, D+K])`.
    pub fn differential(&self, e: &GradedElement) -> Result<GradedElement> {
        self.check(e)?;
        let k = e.degree();
        let lf = e.lift_f();
        let f = nr_bracket(&self.pi, &lf);
        let t = nr_bracket(&lf, &self.dk);
        let mut alpha = if k % 2 == 0 {
            t.scale(&-Rational::one())
        } else {
            t
        };
        if let Some(a) = e.lift_alpha() {
            alpha = alpha.add(&nr_bracket(&self.pi, &a));
        }
        GradedElement::from_lifted(self.gdim(), k + 1, &f, Some(&alpha))
    }

    /// `d e + 1/2 [e, e]` for a degree-1 element.
    pub fn mc_defect(&self, e: &GradedElement) -> Result<GradedElement> {
        if e.degree() != 1 {
            return Err(Error::Invalid(
                "Maurer-Cartan elements have degree 1".into(),
            ));
        }
        let de = self.differential(e)?;
        let ee = self.bracket(e, e)?;
        Ok(de.add(&ee.scale(&frac(1, 2))))
    }

    pub fn mc_check(&self, e: &GradedElement) -> Result<bool> {
        Ok(self.mc_defect(e)?.is_zero())
    }

    /// Degree-0 element `(tau, 0)`.
    pub fn tau_element(&self, tau: &Matrix) -> Result<GradedElement> {
        if tau.rows() != self.hdim() || tau.cols() != self.gdim() {
            return Err(Error::Dimension("tau must map g to h".into()));
        }
        let mut e = GradedElement::zero(self.gdim(), self.hdim(), 0);
        e.f[0] = BigradedCochain::from_fn(self.gdim(), self.hdim(), 1, 0, Target::H, |gt, _| {
            tau.col(gt[0])
        });
        Ok(e)
    }

    /// `e^{ad t} e' + ((Id - e^{ad t}) / ad t)(d t)` with `t = (tau, 0)`.
    ///
    /// Each application of `ad t` trades an `h` input for a `g` input, so both series stop
    /// after at most `arity + 1` terms; the sums below run until the terms vanish.
    pub fn gauge(&self, e: &GradedElement, tau: &Matrix) -> Result<GradedElement> {
        self.check(e)?;
        let t = self.tau_element(tau)?;
        let dt = self.differential(&t)?;
        let exp_part = self.ad_series(&t, e, |n| factorial_inv(n))?;
        let d_part = self.ad_series(&t, &dt, |n| factorial_inv(n + 1))?;
        Ok(exp_part.sub(&d_part))
    }

    /// `sum_n coeff(n) ad(t)^n x`, stopping at the first vanishing power.
    fn ad_series(
        &self,
        t: &GradedElement,
        x: &GradedElement,
        coeff: impl Fn(usize) -> Rational,
    ) -> Result<GradedElement> {
        let mut term = x.clone();
        let mut acc = x.scale(&coeff(0));
        let bound = x.degree() + 3;
        for n in 1..=bound {
            term = self.bracket(t, &term)?;
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term.scale(&coeff(n)));
        }
        Err(Error::Inconsistent(
            "ad(tau) is not nilpotent on this element".into(),
        ))
    }

    /// Number of nonzero powers `ad(t)^n x` with `n >= 1`.
    pub fn ad_nilpotency(&self, tau: &Matrix, x: &GradedElement) -> Result<usize> {
        let t = self.tau_element(tau)?;
        let mut term = x.clone();
        let mut count = 0;
        loop {
            term = self.bracket(&t, &term)?;
            if term.is_zero() {
                return Ok(count);
            }
            count += 1;
            if count > x.degree() + 3 {
                return Err(Error::Inconsistent(
                    "ad(tau) is not nilpotent on this element".into(),
                ));
            }
        }
    }
}

fn factorial_inv(n: usize) -> Rational {
    let f: i64 = (1..=n as i64).product();
    frac(1, f)
}

/// `mu = (omega + varrho, chi)`, with `varrho` read as the `(1,1)` component `(x, u) -> varrho(x)u`.
pub fn cocycle_to_mc(c: &NonAbelianCocycle) -> Result<GradedElement> {
    c.check_shape()?;
    let (m, n) = (c.gdim(), c.hdim());
    let mut e = GradedElement::zero(m, n, 1);
    e.set_component(BigradedCochain::from_fn(m, n, 2, 0, Target::H, |gt, _| {
        c.omega.get(gt).to_vec()
    }))?;
    e.set_component(BigradedCochain::from_fn(m, n, 1, 1, Target::H, |gt, ht| {
        c.varrho[gt[0]].col(ht[0])
    }))?;
    e.set_component(BigradedCochain::from_fn(m, n, 1, 0, Target::H, |gt, _| {
        c.chi.col(gt[0])
    }))?;
    Ok(e)
}

/// Inverse of [`cocycle_to_mc`] on degree-1 elements.
pub fn mc_to_cocycle(ctx: &LghContext, e: &GradedElement) -> Result<NonAbelianCocycle> {
    ctx.check(e)?;
    if e.degree() != 1 {
        return Err(Error::Invalid(
            "cocycles correspond to degree-1 elements".into(),
        ));
    }
    let (m, n) = (ctx.gdim(), ctx.hdim());
    let w = e.f_part(2);
    let r = e.f_part(1);
    let x = e.alpha_part(1);
    let omega = AltCochain::from_fn(m, n, 2, |t| w.get(t, &[]).to_vec());
    let varrho = (0..m)
        .map(|i| {
            let cols: Vec<Vec<Rational>> = (0..n).map(|a| r.get(&[i], &[a]).to_vec()).collect();
            Matrix::from_cols(&cols, n)
        })
        .collect::<Result<Vec<_>>>()?;
    let chi_cols: Vec<Vec<Rational>> = (0..m).map(|i| x.get(&[i], &[]).to_vec()).collect();
    let chi = Matrix::from_cols(&chi_cols, n)?;
    NonAbelianCocycle::new(ctx.g.clone(), ctx.h.clone(), varrho, omega, chi)
}

/// Gauge action through `L^{g,h}` on an element given as a cocycle triple.
pub fn gauge_dgla(ctx: &LghContext, e: &GradedElement, tau: &Matrix) -> Result<GradedElement> {
    ctx.gauge(e, tau)
}

pub fn mc_check(ctx: &LghContext, e: &GradedElement) -> Result<bool> {
    ctx.mc_check(e)
}

pub fn lgh_differential(ctx: &LghContext, e: &GradedElement) -> Result<GradedElement> {
    ctx.differential(e)
}

impl GradedElement {
    /// True when every component vanishes except possibly those listed.
    pub fn supported_on(&self, allowed: &[(usize, usize)]) -> bool {
        self.f
            .iter()
            .chain(&self.alpha)
            .all(|c| c.is_zero() || allowed.contains(&c.bidegree()))
    }
}
