//! JSON file formats. Rationals are strings, indices in files are 1-based.
//!
//! Fields holding an algebra, a pair or a matrix accept either the object itself or a
//! path to a file containing it, resolved relative to the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cochain::{AltCochain, LieDerCochain, LieDerRep};
use crate::dgla::{BigradedCochain, GradedElement, Target};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, solve_vec, unit_vec, Matrix, Rational};
use crate::kernel::KernelDatum;
use crate::lie::{LieAlgebra, LieDerPair};
use crate::lie2::{Lie2DerHom, Lie2DerPair, StrictDer2, StrictLie2};
use crate::nonabelian::{Extension, LieExtension, NonAbelianCocycle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<String>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn parse_vector(v: &Value) -> Result<Vec<Rational>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("expected an array of rationals"))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => {
                Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into()))
            }
            _ => Err(parse_err(format!("rational expected, found {x}"))),
        })
        .collect()
}

fn index_key(t: &[usize]) -> String {
    t.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses `"i,j,..."` into 0-based indices, each below `bound`.
fn parse_key(key: &str, bound: usize) -> Result<Vec<usize>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|p| {
            let i: usize = p
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad index '{p}' in key '{key}'")))?;
            if i == 0 || i > bound {
                return Err(Error::Index {
                    index: i,
                    dim: bound,
                });
            }
            Ok(i - 1)
        })
        .collect()
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        let entries = (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .map(|c| format_rational(m.get(r, c)))
                    .collect()
            })
            .collect();
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

impl TryFrom<&MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<Matrix> {
        if j.entries.len() != j.rows {
            return Err(Error::Dimension(format!(
                "{} rows listed for a {}-row matrix",
                j.entries.len(),
                j.rows
            )));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&rows, j.cols)
    }
}

impl From<&LieAlgebra> for AlgebraJson {
    fn from(l: &LieAlgebra) -> Self {
        let mut brackets = BTreeMap::new();
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let entry: BTreeMap<String, String> = l
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num::Zero::is_zero(*c))
                    .map(|(k, c)| ((k + 1).to_string(), format_rational(c)))
                    .collect();
                if !entry.is_empty() {
                    brackets.insert(index_key(&[i, j]), entry);
                }
            }
        }
        AlgebraJson {
            name: l.name().to_string(),
            dim: l.dim(),
            brackets,
        }
    }
}

impl TryFrom<&AlgebraJson> for LieAlgebra {
    type Error = Error;

    fn try_from(j: &AlgebraJson) -> Result<LieAlgebra> {
        let mut brackets = Vec::new();
        for (key, vals) in &j.brackets {
            let t = parse_key(key, j.dim)?;
            if t.len() != 2 || t[0] >= t[1] {
                return Err(parse_err(format!(
                    "bracket key '{key}' must be 'i,j' with i<j"
                )));
            }
            let mut v = vec![Rational::from_integer(0.into()); j.dim];
            for (k, c) in vals {
                let idx = parse_key(k, j.dim)?;
                if idx.len() != 1 {
                    return Err(parse_err(format!("bad basis index '{k}'")));
                }
                v[idx[0]] = parse_rational(c)?;
            }
            brackets.push((t[0], t[1], v));
        }
        LieAlgebra::from_brackets(j.name.clone(), j.dim, brackets)
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("matrix serializes")
}

pub fn algebra_json(l: &LieAlgebra) -> Value {
    serde_json::to_value(AlgebraJson::from(l)).expect("algebra serializes")
}

pub fn pair_json(p: &LieDerPair) -> Value {
    json!({ "algebra": algebra_json(p.algebra()), "derivation": matrix_json(p.derivation()) })
}

pub fn cochain_json(c: &AltCochain) -> Value {
    let values: BTreeMap<String, Vec<String>> = c
        .tuples()
        .into_iter()
        .filter(|t| !crate::exactlin::is_zero_vec(c.get(t)))
        .map(|t| {
            (
                index_key(&t),
                c.get(&t).iter().map(format_rational).collect(),
            )
        })
        .collect();
    serde_json::to_value(CochainJson {
        degree: c.degree(),
        values,
    })
    .expect("cochain serializes")
}

pub fn lieder_cochain_json(c: &LieDerCochain) -> Value {
    json!({ "top": cochain_json(&c.top), "lower": c.lower.as_ref().map(cochain_json) })
}

pub fn cocycle_json(c: &NonAbelianCocycle) -> Value {
    json!({
        "g": pair_json(&c.g),
        "h": pair_json(&c.h),
        "varrho": c.varrho.iter().map(matrix_json).collect::<Vec<_>>(),
        "omega": cochain_json(&c.omega),
        "chi": matrix_json(&c.chi),
    })
}

pub fn extension_json(e: &Extension) -> Value {
    json!({
        "total": pair_json(&e.total),
        "inj": matrix_json(&e.inj),
        "proj": matrix_json(&e.proj),
        "g": pair_json(&e.g),
        "h": pair_json(&e.h),
    })
}

pub fn kernel_json(k: &KernelDatum) -> Value {
    json!({
        "g": pair_json(&k.gpair),
        "h": pair_json(&k.hpair),
        "reps": k.reps.iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

fn bigraded_json(c: &BigradedCochain) -> Value {
    let (k, l) = c.bidegree();
    let m = c.gdim();
    let values: BTreeMap<String, Vec<String>> = c
        .entries()
        .into_iter()
        .filter(|(_, _, v)| !crate::exactlin::is_zero_vec(v))
        .map(|(gt, ht, v)| {
            let t: Vec<usize> = gt.iter().copied().chain(ht.iter().map(|i| i + m)).collect();
            (index_key(&t), v.iter().map(format_rational).collect())
        })
        .collect();
    let target = if c.target() == Target::G { "g" } else { "h" };
    json!({ "k": k, "l": l, "target": target, "values": values })
}

/// Blocks use indices of `g ⊕ h`: `1..=dim g` for `g`, then `dim g + 1..` for `h`.
pub fn graded_element_json(e: &GradedElement) -> Value {
    let blocks: Vec<Value> = e
        .f_parts()
        .iter()
        .chain(e.alpha_parts())
        .filter(|c| !c.is_zero())
        .map(bigraded_json)
        .collect();
    json!({ "degree": e.degree(), "blocks": blocks })
}

pub fn hom_json(f: &Lie2DerHom) -> Value {
    json!({
        "phi0": matrix_json(&f.phi0),
        "phi1": matrix_json(&f.phi1),
        "phi2": cochain_json(&f.phi2),
        "theta": matrix_json(&f.theta),
    })
}

pub fn lie2_pair_json(p: &Lie2DerPair) -> Value {
    json!({
        "g0": algebra_json(&p.lie2.g0),
        "g1_dim": p.lie2.g1_dim,
        "d": matrix_json(&p.lie2.d),
        "act": p.lie2.act.iter().map(matrix_json).collect::<Vec<_>>(),
        "d0": matrix_json(&p.der.d0),
        "d1": matrix_json(&p.der.d1),
    })
}

/// Reads documents, following string-valued fields as relative paths.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// A loader rooted at the directory of `file`, with the parsed document.
    pub fn open(file: &Path) -> Result<(Loader, Value)> {
        let text =
            fs::read_to_string(file).map_err(|e| parse_err(format!("{}: {e}", file.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| parse_err(format!("{}: {e}", file.display())))?;
        let base = file.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Loader::new(base), v))
    }

    /// Follows a path reference; returns the loader for nested references and the value.
    fn resolve(&self, v: &Value) -> Result<(Loader, Value)> {
        match v {
            Value::String(p) => Loader::open(&self.base.join(p)),
            other => Ok((self.clone(), other.clone())),
        }
    }

    fn field<'a>(&self, v: &'a Value, name: &str) -> Result<&'a Value> {
        v.get(name)
            .ok_or_else(|| parse_err(format!("missing field '{name}'")))
    }

    pub fn matrix(&self, v: &Value) -> Result<Matrix> {
        let (_, v) = self.resolve(v)?;
        let j: MatrixJson =
            serde_json::from_value(v).map_err(|e| parse_err(format!("matrix: {e}")))?;
        Matrix::try_from(&j)
    }

    pub fn matrices(&self, v: &Value) -> Result<Vec<Matrix>> {
        let arr = v
            .as_array()
            .ok_or_else(|| parse_err("expected an array of matrices"))?;
        arr.iter().map(|m| self.matrix(m)).collect()
    }

    pub fn algebra(&self, v: &Value) -> Result<LieAlgebra> {
        let (_, v) = self.resolve(v)?;
        let j: AlgebraJson =
            serde_json::from_value(v).map_err(|e| parse_err(format!("algebra: {e}")))?;
        LieAlgebra::try_from(&j)
    }

    /// `{"algebra": .., "derivation": ..}`; a bare algebra gets the zero derivation.
    pub fn pair(&self, v: &Value) -> Result<LieDerPair> {
        let (ld, v) = self.resolve(v)?;
        match v.get("algebra") {
            Some(a) => {
                let alg = ld.algebra(a)?;
                let d = match v.get("derivation") {
                    Some(d) => ld.matrix(d)?,
                    None => Matrix::zeros(alg.dim(), alg.dim()),
                };
                LieDerPair::new(alg, d)
            }
            None => Ok(LieDerPair::trivial(ld.algebra(&v)?)),
        }
    }

    pub fn cochain(&self, v: &Value, source_dim: usize, target_dim: usize) -> Result<AltCochain> {
        let (_, v) = self.resolve(v)?;
        let j: CochainJson =
            serde_json::from_value(v).map_err(|e| parse_err(format!("cochain: {e}")))?;
        let mut c = AltCochain::zero(source_dim, target_dim, j.degree);
        for (key, vals) in &j.values {
            let t = parse_key(key, source_dim)?;
            if t.len() != j.degree || t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_err(format!(
                    "cochain key '{key}' must be an increasing {}-tuple",
                    j.degree
                )));
            }
            let v = vals
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != target_dim {
                return Err(Error::Dimension(format!(
                    "value at '{key}' has length {}",
                    v.len()
                )));
            }
            c.set(&t, v);
        }
        Ok(c)
    }

    pub fn lieder_cochain(
        &self,
        v: &Value,
        source_dim: usize,
        target_dim: usize,
    ) -> Result<LieDerCochain> {
        let (ld, v) = self.resolve(v)?;
        let top = ld.cochain(ld.field(&v, "top")?, source_dim, target_dim)?;
        let lower = match v.get("lower") {
            None | Some(Value::Null) => None,
            Some(l) => Some(ld.cochain(l, source_dim, target_dim)?),
        };
        LieDerCochain::new(top, lower)
    }

    pub fn cocycle(&self, v: &Value) -> Result<NonAbelianCocycle> {
        let (ld, v) = self.resolve(v)?;
        let g = ld.pair(ld.field(&v, "g")?)?;
        let h = ld.pair(ld.field(&v, "h")?)?;
        let (m, n) = (g.dim(), h.dim());
        let varrho = match v.get("varrho") {
            Some(r) => ld.matrices(r)?,
            None => vec![Matrix::zeros(n, n); m],
        };
        let omega = match v.get("omega") {
            Some(o) => ld.cochain(o, m, n)?,
            None => AltCochain::zero(m, n, 2),
        };
        let chi = match v.get("chi") {
            Some(c) => ld.matrix(c)?,
            None => Matrix::zeros(n, m),
        };
        NonAbelianCocycle::new(g, h, varrho, omega, chi)
    }

    pub fn extension(&self, v: &Value) -> Result<Extension> {
        let (ld, v) = self.resolve(v)?;
        Ok(Extension {
            total: ld.pair(ld.field(&v, "total")?)?,
            inj: ld.matrix(ld.field(&v, "inj")?)?,
            proj: ld.matrix(ld.field(&v, "proj")?)?,
            g: ld.pair(ld.field(&v, "g")?)?,
            h: ld.pair(ld.field(&v, "h")?)?,
        })
    }

    /// An extension document read without its derivations, with its `"section"` if present.
    pub fn lie_extension(&self, v: &Value) -> Result<(LieExtension, Option<Matrix>)> {
        let (ld, v) = self.resolve(v)?;
        let e = ld.extension(&v)?;
        let section = v.get("section").map(|s| ld.matrix(s)).transpose()?;
        Ok((e.underlying(), section))
    }

    pub fn rep(&self, v: &Value, pair: &LieDerPair) -> Result<LieDerRep> {
        let (ld, v) = self.resolve(v)?;
        let rho = ld.matrices(ld.field(&v, "rho")?)?;
        let dim = rho.first().map(Matrix::rows);
        let t = match (v.get("t"), dim) {
            (Some(t), _) => ld.matrix(t)?,
            (None, Some(d)) => Matrix::zeros(d, d),
            (None, None) => return Err(parse_err("representation needs 't' when 'rho' is empty")),
        };
        LieDerRep::new(pair.clone(), rho, t)
    }

    pub fn kernel(&self, v: &Value) -> Result<KernelDatum> {
        let (ld, v) = self.resolve(v)?;
        let g = ld.pair(ld.field(&v, "g")?)?;
        let h = ld.pair(ld.field(&v, "h")?)?;
        let reps = ld.matrices(ld.field(&v, "reps")?)?;
        Ok(KernelDatum::new(g, h, reps))
    }

    /// A graded element of `L^{g,h}` from its blocks.
    pub fn graded_element(&self, v: &Value, gdim: usize, hdim: usize) -> Result<GradedElement> {
        let (_, v) = self.resolve(v)?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("graded element needs an integer 'degree'"))?
            as usize;
        let blocks = self
            .field(&v, "blocks")?
            .as_array()
            .ok_or_else(|| parse_err("'blocks' must be an array"))?;
        let mut e = GradedElement::zero(gdim, hdim, degree);
        for b in blocks {
            let num = |name: &str| {
                b.get(name)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| parse_err(format!("block needs '{name}'")))
            };
            let (k, l) = (num("k")?, num("l")?);
            let target = match b.get("target").and_then(Value::as_str) {
                Some("g") => Target::G,
                Some("h") => Target::H,
                _ => return Err(parse_err("block target must be \"g\" or \"h\"")),
            };
            let tdim = if target == Target::G { gdim } else { hdim };
            let mut c = BigradedCochain::zero(gdim, hdim, k, l, target);
            let vals = b
                .get("values")
                .and_then(Value::as_object)
                .cloned()
                .unwrap_or_else(Map::new);
            for (key, val) in &vals {
                let t = parse_key(key, gdim + hdim)?;
                let ok = t.len() == k + l
                    && t.windows(2).all(|w| w[0] < w[1])
                    && t[..k].iter().all(|&i| i < gdim)
                    && t[k..].iter().all(|&i| i >= gdim);
                if !ok {
                    return Err(parse_err(format!(
                        "block key '{key}' does not fit bidegree ({k},{l})"
                    )));
                }
                let v = parse_vector(val)?;
                if v.len() != tdim {
                    return Err(Error::Dimension(format!(
                        "value at '{key}' has length {}",
                        v.len()
                    )));
                }
                let ht: Vec<usize> = t[k..].iter().map(|i| i - gdim).collect();
                c.set(&t[..k], &ht, v);
            }
            e.set_component(c)
                .map_err(|err| parse_err(err.to_string()))?;
        }
        Ok(e)
    }

    pub fn lie2_pair(&self, v: &Value) -> Result<Lie2DerPair> {
        let (ld, v) = self.resolve(v)?;
        let g0 = ld.algebra(ld.field(&v, "g0")?)?;
        let g1_dim = ld
            .field(&v, "g1_dim")?
            .as_u64()
            .ok_or_else(|| parse_err("'g1_dim' must be a non-negative integer"))?
            as usize;
        let lie2 = StrictLie2 {
            g0,
            g1_dim,
            d: ld.matrix(ld.field(&v, "d")?)?,
            act: ld.matrices(ld.field(&v, "act")?)?,
        };
        let der = StrictDer2 {
            d0: ld.matrix(ld.field(&v, "d0")?)?,
            d1: ld.matrix(ld.field(&v, "d1")?)?,
        };
        Ok(Lie2DerPair { lie2, der })
    }

    pub fn hom(&self, v: &Value, g0: usize, g1: usize, h0: usize, h1: usize) -> Result<Lie2DerHom> {
        let (ld, v) = self.resolve(v)?;
        let phi1 = match v.get("phi1") {
            Some(p) => ld.matrix(p)?,
            None => Matrix::zeros(h1, g1),
        };
        let f = Lie2DerHom {
            phi0: ld.matrix(ld.field(&v, "phi0")?)?,
            phi1,
            phi2: ld.cochain(ld.field(&v, "phi2")?, g0, h1)?,
            theta: ld.matrix(ld.field(&v, "theta")?)?,
        };
        if f.phi0.rows() != h0
            || f.phi0.cols() != g0
            || f.theta.rows() != h1
            || f.theta.cols() != g0
        {
            return Err(Error::Dimension(
                "hom components do not match the pairs".into(),
            ));
        }
        Ok(f)
    }
}

/// `proj s = Id` with free variables zero.
pub fn canonical_section(e: &LieExtension) -> Result<Matrix> {
    let m = e.g.dim();
    let cols = (0..m)
        .map(|i| solve_vec(&e.proj, &unit_vec(m, i)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("projection is not surjective".into()))?;
    Matrix::from_cols(&cols, e.total.dim())
}
