//! Alternating cochains and the complexes built on them.
//!
//! Cochains store one target vector per strictly increasing index tuple. The
//! Chevalley-Eilenberg coboundary, the operator `delta` induced by a pair of
//! derivations, the LieDer coboundary, the formal coboundary twisted by a map
//! into derivations, and the cup product all act on this storage directly.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, is_zero_vec, kernel_basis, quotient, sub_vec, unit_vec, zero_vec, Matrix, QuotientSpace,
    Rational, Subspace,
};
use crate::lie::{LieAlgebra, LieDerPair};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Lexicographic rank of a strictly increasing tuple.
pub fn tuple_rank(n: usize, t: &[usize]) -> usize {
    let k = t.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &ti) in t.iter().enumerate() {
        for j in prev..ti {
            rank += binomial(n - 1 - j, k - 1 - i);
        }
        prev = ti + 1;
    }
    rank
}

/// Sorts a tuple, returning the sign of the sorting permutation; `None` on a repeat.
pub fn sort_with_sign(t: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = t.to_vec();
    let mut negative = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// A `(p, q)`-shuffle: positions sent to the first block, the rest, and the sign.
#[derive(Clone, Debug)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub rest: Vec<usize>,
    pub negative: bool,
}

pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    tuples(p + q, p)
        .into_iter()
        .map(|first| {
            let inversions: usize = first.iter().enumerate().map(|(i, &s)| s - i).sum();
            let rest = (0..p + q).filter(|i| !first.contains(i)).collect();
            Shuffle {
                first,
                rest,
                negative: inversions % 2 == 1,
            }
        })
        .collect()
}

fn pick(t: &[usize], positions: &[usize]) -> Vec<usize> {
    positions.iter().map(|&p| t[p]).collect()
}

fn without(t: &[usize], skip: &[usize]) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

/// An alternating multilinear map `Λ^degree(Q^source_dim) -> Q^target_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltCochain {
    source_dim: usize,
    target_dim: usize,
    degree: usize,
    values: Vec<Vec<Rational>>,
}

impl AltCochain {
    pub fn zero(source_dim: usize, target_dim: usize, degree: usize) -> Self {
        let values = vec![zero_vec(target_dim); binomial(source_dim, degree)];
        AltCochain {
            source_dim,
            target_dim,
            degree,
            values,
        }
    }

    /// Cochain whose value on each increasing tuple is `f(tuple)`.
    pub fn from_fn(
        source_dim: usize,
        target_dim: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let values = tuples(source_dim, degree)
            .iter()
            .map(|t| {
                let v = f(t);
                assert_eq!(v.len(), target_dim, "cochain value length");
                v
            })
            .collect();
        AltCochain {
            source_dim,
            target_dim,
            degree,
            values,
        }
    }

    /// Degree-one cochain of a linear map (columns are images).
    pub fn from_linear_map(m: &Matrix) -> Self {
        AltCochain::from_fn(m.cols(), m.rows(), 1, |t| m.col(t[0]))
    }

    /// Degree-one cochain as a matrix.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 1, "to_matrix needs a degree-one cochain");
        Matrix::from_cols(&self.values, self.target_dim).expect("shape")
    }

    pub fn from_vector(
        source_dim: usize,
        target_dim: usize,
        degree: usize,
        v: &[Rational],
    ) -> Result<Self> {
        let n = binomial(source_dim, degree);
        if v.len() != n * target_dim {
            return Err(Error::Dimension(format!(
                "cochain vector of length {}, expected {}",
                v.len(),
                n * target_dim
            )));
        }
        let values = v
            .chunks(target_dim.max(1))
            .take(n)
            .map(<[Rational]>::to_vec)
            .collect();
        let values = if target_dim == 0 {
            vec![Vec::new(); n]
        } else {
            values
        };
        Ok(AltCochain {
            source_dim,
            target_dim,
            degree,
            values,
        })
    }

    /// Tuple-major flattening.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn vector_len(&self) -> usize {
        self.values.len() * self.target_dim
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        tuples(self.source_dim, self.degree)
    }

    /// Values in lexicographic tuple order.
    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Value on an increasing tuple.
    pub fn get(&self, t: &[usize]) -> &[Rational] {
        &self.values[tuple_rank(self.source_dim, t)]
    }

    pub fn set(&mut self, t: &[usize], v: Vec<Rational>) {
        let (sorted, negative) = sort_with_sign(t).expect("set on a tuple with repeats");
        assert_eq!(v.len(), self.target_dim, "cochain value length");
        let v = if negative {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        };
        let r = tuple_rank(self.source_dim, &sorted);
        self.values[r] = v;
    }

    /// Value on an arbitrary tuple of basis indices.
    pub fn value_at(&self, t: &[usize]) -> Vec<Rational> {
        match sort_with_sign(t) {
            None => zero_vec(self.target_dim),
            Some((sorted, negative)) => {
                let v = self.get(&sorted);
                if negative {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.to_vec()
                }
            }
        }
    }

    /// `c(v, e_{rest...})` for a vector first argument.
    pub fn eval_vec_first(&self, v: &[Rational], rest: &[usize]) -> Vec<Rational> {
        let mut out = zero_vec(self.target_dim);
        let mut args = Vec::with_capacity(rest.len() + 1);
        for (m, x) in v.iter().enumerate() {
            if x.is_zero() || rest.contains(&m) {
                continue;
            }
            args.clear();
            args.push(m);
            args.extend_from_slice(rest);
            let (sorted, negative) = sort_with_sign(&args).expect("distinct");
            let val = self.get(&sorted);
            if negative {
                axpy(&mut out, &-x.clone(), val);
            } else {
                axpy(&mut out, x, val);
            }
        }
        out
    }

    /// Full multilinear evaluation on vector arguments.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree, "cochain arity");
        let mut out = zero_vec(self.target_dim);
        let mut idx = Vec::with_capacity(self.degree);
        self.eval_rec(args, &mut idx, &Rational::one(), &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[Vec<Rational>],
        idx: &mut Vec<usize>,
        coeff: &Rational,
        out: &mut [Rational],
    ) {
        if idx.len() == args.len() {
            let val = self.value_at(idx);
            axpy(out, coeff, &val);
            return;
        }
        let pos = idx.len();
        for (m, x) in args[pos].iter().enumerate() {
            if x.is_zero() || idx.contains(&m) {
                continue;
            }
            idx.push(m);
            self.eval_rec(args, idx, &(coeff * x), out);
            idx.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    fn check_same_shape(&self, other: &AltCochain) {
        assert_eq!(
            (self.source_dim, self.target_dim, self.degree),
            (other.source_dim, other.target_dim, other.degree),
            "cochain shape mismatch"
        );
    }

    pub fn add(&self, other: &AltCochain) -> AltCochain {
        self.check_same_shape(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        AltCochain {
            values,
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, other: &AltCochain) -> AltCochain {
        self.check_same_shape(other);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| sub_vec(a, b))
            .collect();
        AltCochain {
            values,
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, s: &Rational) -> AltCochain {
        let values = self
            .values
            .iter()
            .map(|a| a.iter().map(|x| s * x).collect())
            .collect();
        AltCochain {
            values,
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> AltCochain {
        self.scale(&-Rational::one())
    }

    fn clone_shape(&self) -> AltCochain {
        AltCochain {
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            degree: self.degree,
            values: Vec::new(),
        }
    }

    /// Post-composition with a linear map on the target.
    pub fn map_target(&self, m: &Matrix) -> AltCochain {
        assert_eq!(m.cols(), self.target_dim, "map_target dimension");
        AltCochain {
            source_dim: self.source_dim,
            target_dim: m.rows(),
            degree: self.degree,
            values: self.values.iter().map(|v| m.apply(v)).collect(),
        }
    }

    /// Pull back each value through `f`, which must solve `f x = value` exactly.
    pub fn try_map_target(
        &self,
        target_dim: usize,
        mut f: impl FnMut(&[Rational]) -> Option<Vec<Rational>>,
    ) -> Option<AltCochain> {
        let values = self
            .values
            .iter()
            .map(|v| f(v))
            .collect::<Option<Vec<_>>>()?;
        Some(AltCochain {
            source_dim: self.source_dim,
            target_dim,
            degree: self.degree,
            values,
        })
    }
}

/// `(dc)(x_0..x_k) = sum_i (-1)^i rho(x_i) c(..^i..) + sum_{i<j} (-1)^{i+j} c([x_i,x_j], ..^i..^j..)`.
///
/// `rho` need not be a representation, which makes this the formal coboundary as well.
pub fn coboundary(g: &LieAlgebra, rho: &[Matrix], c: &AltCochain) -> Result<AltCochain> {
    if rho.len() != g.dim() || c.source_dim() != g.dim() {
        return Err(Error::Dimension(format!(
            "coboundary: algebra of dim {}, {} action matrices, cochain on dim {}",
            g.dim(),
            rho.len(),
            c.source_dim()
        )));
    }
    if rho
        .iter()
        .any(|m| m.rows() != c.target_dim() || m.cols() != c.target_dim())
    {
        return Err(Error::Dimension(
            "coboundary: action matrices do not match the target".into(),
        ));
    }
    let k = c.degree();
    Ok(AltCochain::from_fn(g.dim(), c.target_dim(), k + 1, |t| {
        let mut out = zero_vec(c.target_dim());
        for i in 0..=k {
            let v = rho[t[i]].apply(c.get(&without(t, &[i])));
            let s = if i % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            axpy(&mut out, &s, &v);
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let br = g.bracket_basis(t[i], t[j]);
                if is_zero_vec(br) {
                    continue;
                }
                let v = c.eval_vec_first(br, &without(t, &[i, j]));
                let s = if (i + j) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                axpy(&mut out, &s, &v);
            }
        }
        out
    }))
}

/// Chevalley-Eilenberg coboundary for a representation `rho`.
pub fn ce_coboundary(g: &LieAlgebra, rho: &[Matrix], c: &AltCochain) -> Result<AltCochain> {
    coboundary(g, rho, c)
}

/// Formal coboundary `d^F` twisted by `varrho: g -> Der(h)`, with no representation axiom assumed.
pub fn formal_coboundary(g: &LieAlgebra, varrho: &[Matrix], c: &AltCochain) -> Result<AltCochain> {
    coboundary(g, varrho, c)
}

/// `delta(c)(x_1..x_n) = sum_i c(.., D x_i, ..) - T c(x_1..x_n)`.
pub fn delta_op(d: &Matrix, t: &Matrix, c: &AltCochain) -> Result<AltCochain> {
    if d.rows() != c.source_dim() || !d.is_square() || t.rows() != c.target_dim() || !t.is_square()
    {
        return Err(Error::Dimension(
            "delta: derivation shapes do not match the cochain".into(),
        ));
    }
    let n = c.degree();
    let dcols: Vec<Vec<Rational>> = (0..d.cols()).map(|j| d.col(j)).collect();
    Ok(AltCochain::from_fn(
        c.source_dim(),
        c.target_dim(),
        n,
        |tu| {
            let mut out = t
                .apply(c.get(tu))
                .into_iter()
                .map(|x| -x)
                .collect::<Vec<_>>();
            for i in 0..n {
                // Moving the slot i argument to the front costs (-1)^i.
                let v = c.eval_vec_first(&dcols[tu[i]], &without(tu, &[i]));
                let s = if i % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                axpy(&mut out, &s, &v);
            }
            out
        },
    ))
}

/// `[a, b]_cup(x_1..x_{p+q}) = sum over (p,q)-shuffles of sign * [a(..), b(..)]_h`.
pub fn cup_product(h: &LieAlgebra, a: &AltCochain, b: &AltCochain) -> Result<AltCochain> {
    if a.source_dim() != b.source_dim() || a.target_dim() != h.dim() || b.target_dim() != h.dim() {
        return Err(Error::Dimension("cup product: mismatched cochains".into()));
    }
    let (p, q) = (a.degree(), b.degree());
    let sh = shuffles(p, q);
    Ok(AltCochain::from_fn(a.source_dim(), h.dim(), p + q, |t| {
        let mut out = zero_vec(h.dim());
        for s in &sh {
            let v = h.bracket(a.get(&pick(t, &s.first)), b.get(&pick(t, &s.rest)));
            let sign = if s.negative {
                -Rational::one()
            } else {
                Rational::one()
            };
            axpy(&mut out, &sign, &v);
        }
        out
    }))
}

/// A representation of a LieDer pair `(g, D)` on `V` with compatible operator `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerRep {
    pair: LieDerPair,
    rho: Vec<Matrix>,
    t: Matrix,
}

impl LieDerRep {
    /// Validates the representation axiom and `T(rho(x)u) = rho(Dx)u + rho(x)T(u)`.
    pub fn new(pair: LieDerPair, rho: Vec<Matrix>, t: Matrix) -> Result<Self> {
        let rep = LieDerRep { pair, rho, t };
        rep.validate()?;
        Ok(rep)
    }

    /// A plain representation, viewed with `D = 0` and `T = 0`.
    pub fn plain(g: LieAlgebra, rho: Vec<Matrix>) -> Result<Self> {
        let v = rho.first().map_or(0, Matrix::rows);
        LieDerRep::new(LieDerPair::trivial(g), rho, Matrix::zeros(v, v))
    }

    /// Trivial action on `Q^dim` with operator `T`.
    pub fn trivial(pair: LieDerPair, t: Matrix) -> Result<Self> {
        let v = t.rows();
        let rho = vec![Matrix::zeros(v, v); pair.dim()];
        LieDerRep::new(pair, rho, t)
    }

    /// Adjoint representation with `T = D + c Id`.
    pub fn adjoint(pair: LieDerPair, shift: Rational) -> Result<Self> {
        let g = pair.algebra();
        let rho = (0..g.dim())
            .map(|i| g.ad_matrix(i))
            .collect::<Result<Vec<_>>>()?;
        let t = pair.derivation().add(&Matrix::scalar(g.dim(), shift));
        LieDerRep::new(pair, rho, t)
    }

    fn validate(&self) -> Result<()> {
        let g = self.pair.algebra();
        let v = self.t.rows();
        if self.rho.len() != g.dim() || !self.t.is_square() {
            return Err(Error::Dimension(
                "representation: one matrix per basis vector and a square T".into(),
            ));
        }
        if self.rho.iter().any(|m| m.rows() != v || m.cols() != v) {
            return Err(Error::Dimension(
                "representation matrices must act on the same space".into(),
            ));
        }
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                if self.act(g.bracket_basis(i, j)) != self.rho[i].commutator(&self.rho[j]) {
                    return Err(Error::Invalid(format!(
                        "not a representation on (e{}, e{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let d = self.pair.derivation();
        for i in 0..g.dim() {
            let lhs = self.t.mul(&self.rho[i]);
            let rhs = self.act(&d.col(i)).add(&self.rho[i].mul(&self.t));
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "T is not compatible with rho(e{})",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn pair(&self) -> &LieDerPair {
        &self.pair
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.pair.algebra()
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn space_dim(&self) -> usize {
        self.t.rows()
    }

    /// `rho(x)` for a vector `x`.
    pub fn act(&self, x: &[Rational]) -> Matrix {
        let v = self.space_dim();
        let mut m = Matrix::zeros(v, v);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.rho[i].scale(c));
            }
        }
        m
    }

    pub fn ce_coboundary(&self, c: &AltCochain) -> Result<AltCochain> {
        coboundary(self.algebra(), &self.rho, c)
    }

    pub fn delta(&self, c: &AltCochain) -> Result<AltCochain> {
        delta_op(self.pair.derivation(), &self.t, c)
    }

    /// `∂(w_n, x_{n-1}) = (d w_n, d x_{n-1} + (-1)^n delta(w_n))`, and `∂(w_1) = (d w_1, -delta(w_1))`.
    pub fn lieder_coboundary(&self, c: &LieDerCochain) -> Result<LieDerCochain> {
        let n = c.degree();
        let top = self.ce_coboundary(&c.top)?;
        let mut lower = self.delta(&c.top)?;
        if n % 2 == 1 {
            lower = lower.neg();
        }
        if let Some(l) = &c.lower {
            lower = lower.add(&self.ce_coboundary(l)?);
        }
        Ok(LieDerCochain {
            top,
            lower: Some(lower),
        })
    }
}

/// An element of `Hom(Λ^n g, V) ⊕ Hom(Λ^{n-1} g, V)`; the second part is absent for `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerCochain {
    pub top: AltCochain,
    pub lower: Option<AltCochain>,
}

impl LieDerCochain {
    pub fn new(top: AltCochain, lower: Option<AltCochain>) -> Result<Self> {
        let c = LieDerCochain { top, lower };
        match (&c.lower, c.top.degree()) {
            (None, 1) => Ok(c),
            (Some(l), n) if n >= 2 && l.degree() + 1 == n => {
                if l.source_dim() != c.top.source_dim() || l.target_dim() != c.top.target_dim() {
                    return Err(Error::Dimension(
                        "LieDer cochain parts differ in source or target".into(),
                    ));
                }
                Ok(c)
            }
            _ => Err(Error::Invalid(
                "LieDer cochain: lower part present exactly when degree >= 2".into(),
            )),
        }
    }

    pub fn zero(source_dim: usize, target_dim: usize, n: usize) -> Self {
        assert!(n >= 1, "LieDer cochains start in degree 1");
        let lower = (n >= 2).then(|| AltCochain::zero(source_dim, target_dim, n - 1));
        LieDerCochain {
            top: AltCochain::zero(source_dim, target_dim, n),
            lower,
        }
    }

    pub fn degree(&self) -> usize {
        self.top.degree()
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        let mut v = self.top.to_vector();
        if let Some(l) = &self.lower {
            v.extend(l.to_vector());
        }
        v
    }

    pub fn from_vector(
        source_dim: usize,
        target_dim: usize,
        n: usize,
        v: &[Rational],
    ) -> Result<Self> {
        let split = binomial(source_dim, n) * target_dim;
        if v.len() < split {
            return Err(Error::Dimension("LieDer cochain vector too short".into()));
        }
        let top = AltCochain::from_vector(source_dim, target_dim, n, &v[..split])?;
        let lower = if n >= 2 {
            Some(AltCochain::from_vector(
                source_dim,
                target_dim,
                n - 1,
                &v[split..],
            )?)
        } else if v.len() != split {
            return Err(Error::Dimension(
                "degree-one LieDer cochain has no lower part".into(),
            ));
        } else {
            None
        };
        Ok(LieDerCochain { top, lower })
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.lower.as_ref().map_or(true, AltCochain::is_zero)
    }

    pub fn add(&self, other: &LieDerCochain) -> LieDerCochain {
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(a.add(b)),
            (None, None) => None,
            _ => panic!("LieDer cochain degree mismatch"),
        };
        LieDerCochain {
            top: self.top.add(&other.top),
            lower,
        }
    }

    pub fn neg(&self) -> LieDerCochain {
        LieDerCochain {
            top: self.top.neg(),
            lower: self.lower.as_ref().map(AltCochain::neg),
        }
    }
}

/// Which complex a cohomology computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complex {
    /// Chevalley-Eilenberg complex, degrees from 0.
    Ce,
    /// LieDer complex, degrees from 1.
    LieDer,
}

/// Dimension of the cochain space of the given degree, as a flat vector.
pub fn cochain_space_dim(rep: &LieDerRep, n: usize, complex: Complex) -> usize {
    let (m, v) = (rep.algebra().dim(), rep.space_dim());
    match complex {
        Complex::Ce => binomial(m, n) * v,
        Complex::LieDer if n == 0 => 0,
        Complex::LieDer => (binomial(m, n) + if n >= 2 { binomial(m, n - 1) } else { 0 }) * v,
    }
}

/// Matrix of the coboundary from degree `n` to degree `n + 1`.
pub fn coboundary_matrix(rep: &LieDerRep, n: usize, complex: Complex) -> Result<Matrix> {
    let (m, v) = (rep.algebra().dim(), rep.space_dim());
    let src = cochain_space_dim(rep, n, complex);
    let dst = cochain_space_dim(rep, n + 1, complex);
    let mut cols = Vec::with_capacity(src);
    for k in 0..src {
        let e = unit_vec(src, k);
        let image = match complex {
            Complex::Ce => rep
                .ce_coboundary(&AltCochain::from_vector(m, v, n, &e)?)?
                .to_vector(),
            Complex::LieDer => rep
                .lieder_coboundary(&LieDerCochain::from_vector(m, v, n, &e)?)?
                .to_vector(),
        };
        cols.push(image);
    }
    Matrix::from_cols(&cols, dst)
}

/// Cohomology in one degree, with canonical class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    pub complex: Complex,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
    /// Cocycle vectors spanning a complement of the coboundaries, reduced against their pivots.
    pub representatives: Vec<Vec<Rational>>,
    cocycles: Subspace,
    coboundaries: Subspace,
    modulo: QuotientSpace,
    classes: Subspace,
}

impl CohomologyResult {
    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn is_cocycle(&self, v: &[Rational]) -> bool {
        self.cocycles.contains(v)
    }

    pub fn is_coboundary(&self, v: &[Rational]) -> bool {
        self.coboundaries.contains(v)
    }

    /// Coordinates of the class of a cocycle relative to `representatives`.
    pub fn class_coords(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_cocycle(v) {
            return Err(Error::Invalid("class requested for a non-cocycle".into()));
        }
        let q = self.modulo.class_coords(v);
        Ok(self
            .classes
            .coordinates(&q)
            .expect("cocycle classes lie in the image of the cocycle space"))
    }
}

/// Cohomology of `rep` in degree `n` on the chosen complex.
pub fn cohomology(rep: &LieDerRep, n: usize, complex: Complex) -> Result<CohomologyResult> {
    if complex == Complex::LieDer && n == 0 {
        return Err(Error::Invalid(
            "the LieDer complex starts in degree 1".into(),
        ));
    }
    let ambient = cochain_space_dim(rep, n, complex);
    let d_n = coboundary_matrix(rep, n, complex)?;
    let cocycles = kernel_basis(&d_n);
    let coboundaries = if n == 0 || (complex == Complex::LieDer && n == 1) {
        Subspace::zero(ambient)
    } else {
        Subspace::column_space(&coboundary_matrix(rep, n - 1, complex)?)
    };
    let modulo = quotient(ambient, &coboundaries)?;
    let images: Vec<Vec<Rational>> = cocycles
        .basis_vectors()
        .iter()
        .map(|z| modulo.class_coords(z))
        .collect();
    let classes = Subspace::span(modulo.dim(), &images);
    let representatives = classes
        .basis_vectors()
        .iter()
        .map(|w| modulo.representative(w))
        .collect();
    Ok(CohomologyResult {
        degree: n,
        complex,
        dim_cocycles: cocycles.dim(),
        dim_coboundaries: coboundaries.dim(),
        dim_h: classes.dim(),
        representatives,
        cocycles,
        coboundaries,
        modulo,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat};
    use crate::lie::catalog::*;

    fn vecr(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn tuple_ranks_match_enumeration() {
        for n in 0..7 {
            for k in 0..=n {
                for (i, t) in tuples(n, k).iter().enumerate() {
                    assert_eq!(tuple_rank(n, t), i);
                }
            }
        }
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 2);
        let signs: Vec<bool> = s.iter().map(|x| x.negative).collect();
        assert_eq!(signs, vec![false, true, false]);
        assert_eq!(shuffles(2, 2).len(), 6);
    }

    #[test]
    fn ce_examples() {
        let a2 = LieAlgebra::abelian(2);
        let triv = vec![Matrix::zeros(1, 1); 2];
        let c = AltCochain::from_fn(2, 1, 1, |t| vecr(&[t[0] as i64 + 3]));
        assert!(ce_coboundary(&a2, &triv, &c).unwrap().is_zero());

        let c = AltCochain::from_fn(2, 1, 1, |t| vecr(&[t[0] as i64]));
        let dc = ce_coboundary(&n2(), &triv, &c).unwrap();
        assert_eq!(dc.get(&[0, 1]), &vecr(&[-1])[..]);
    }

    #[test]
    fn dd_zero_on_heisenberg_adjoint() {
        let rep = LieDerRep::adjoint(LieDerPair::trivial(heisenberg()), rat(0)).unwrap();
        let c = AltCochain::from_fn(3, 3, 1, |t| vecr(&[t[0] as i64, 2, -(t[0] as i64)]));
        let dc = rep.ce_coboundary(&c).unwrap();
        assert!(rep.ce_coboundary(&dc).unwrap().is_zero());
    }

    #[test]
    fn delta_examples() {
        let c = AltCochain::from_fn(2, 1, 2, |_| vecr(&[1]));
        let d = Matrix::from_i64(&[&[2, 5], &[-1, 3]]);
        let t = Matrix::scalar(1, rat(4));
        let dc = delta_op(&d, &t, &c).unwrap();
        assert_eq!(dc.get(&[0, 1]), &vecr(&[5 - 4])[..]);

        let id = AltCochain::from_linear_map(&Matrix::identity(3));
        let dd = Matrix::diag(&[rat(1), rat(1), rat(2)]);
        assert!(delta_op(&dd, &dd, &id).unwrap().is_zero());
    }

    #[test]
    fn lieder_degree_one_sign() {
        let pair = LieDerPair::new(heisenberg(), Matrix::diag(&[rat(1), rat(1), rat(2)])).unwrap();
        let rep = LieDerRep::trivial(pair, Matrix::scalar(1, rat(2))).unwrap();
        let w = AltCochain::from_fn(3, 1, 1, |t| vecr(&[1 + t[0] as i64]));
        let c = LieDerCochain::new(w.clone(), None).unwrap();
        let dc = rep.lieder_coboundary(&c).unwrap();
        assert_eq!(dc.lower.clone().unwrap(), rep.delta(&w).unwrap().neg());
        assert!(rep.lieder_coboundary(&dc).unwrap().is_zero());
    }

    #[test]
    fn cup_examples() {
        let h = heisenberg();
        let a = AltCochain::from_fn(2, 3, 1, |t| {
            if t[0] == 0 {
                vecr(&[1, 0, 0])
            } else {
                vecr(&[1, 1, 5])
            }
        });
        let aa = cup_product(&h, &a, &a).unwrap();
        let expected: Vec<Rational> = h
            .bracket(a.get(&[0]), a.get(&[1]))
            .iter()
            .map(|x| x * rat(2))
            .collect();
        assert_eq!(aa.get(&[0, 1]), &expected[..]);

        let b = AltCochain::from_fn(3, 3, 2, |t| vecr(&[t[0] as i64, 1, t[1] as i64]));
        let a3 = AltCochain::from_fn(3, 3, 1, |t| vecr(&[1, t[0] as i64, 0]));
        let ab = cup_product(&h, &a3, &b).unwrap();
        let ba = cup_product(&h, &b, &a3).unwrap();
        assert_eq!(ba, ab.neg());

        let ab0 = AltCochain::from_fn(2, 2, 1, |_| vecr(&[1, 2]));
        assert!(cup_product(&LieAlgebra::abelian(2), &ab0, &ab0)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cohomology_examples() {
        let rep = LieDerRep::plain(LieAlgebra::abelian(2), vec![Matrix::zeros(1, 1); 2]).unwrap();
        assert_eq!(cohomology(&rep, 1, Complex::Ce).unwrap().dim_h, 2);
        assert_eq!(cohomology(&rep, 2, Complex::Ce).unwrap().dim_h, 1);

        let rep = LieDerRep::plain(heisenberg(), vec![Matrix::zeros(1, 1); 3]).unwrap();
        let betti: Vec<usize> = (0..4)
            .map(|n| cohomology(&rep, n, Complex::Ce).unwrap().dim_h)
            .collect();
        assert_eq!(betti, vec![1, 2, 2, 1]);
        for n in 2..4 {
            let ld = cohomology(&rep, n, Complex::LieDer).unwrap().dim_h;
            assert_eq!(ld, betti[n] + betti[n - 1]);
        }
    }

    #[test]
    fn class_coordinates_detect_trace() {
        // delta of the area form on A2 with T = 1/2 and D = diag(1, 3).
        let pair =
            LieDerPair::new(LieAlgebra::abelian(2), Matrix::diag(&[rat(1), rat(3)])).unwrap();
        let rep = LieDerRep::trivial(pair, Matrix::scalar(1, frac(1, 2))).unwrap();
        let c = AltCochain::from_fn(2, 1, 2, |_| vecr(&[1]));
        let dc = rep.delta(&c).unwrap();
        let h = cohomology(
            &LieDerRep::plain(LieAlgebra::abelian(2), vec![Matrix::zeros(1, 1); 2]).unwrap(),
            2,
            Complex::Ce,
        )
        .unwrap();
        assert_eq!(h.class_coords(&dc.to_vector()).unwrap(), vec![frac(7, 2)]);
    }
}
