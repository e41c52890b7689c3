//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use lieder::cochain::AltCochain;
use lieder::exactlin::{frac, rat};
use lieder::extendder::{der_h_space, gamma, DerivationPair, ExtensionContext};
use lieder::format::canonical_section;
use lieder::lie::catalog::{direct_sum, heisenberg, n2, sl2};
use lieder::nonabelian::{
    apply_gauge, extract_cocycle, Extension, LieExtension, NonAbelianCocycle, Section,
};
use lieder::{LieAlgebra, LieDerPair, Matrix, Rational};
use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mostly small integers, sometimes halves and thirds.
pub fn small(r: &mut ChaCha8Rng) -> Rational {
    let n = r.gen_range(-3i64..=3);
    match r.gen_range(0..6) {
        0 => frac(n, 2),
        1 => frac(n, 3),
        _ => rat(n),
    }
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small(r))
}

pub fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small(r)).collect()
}

pub fn random_combo(r: &mut ChaCha8Rng, basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    basis.iter().fold(Matrix::zeros(rows, cols), |acc, b| {
        acc.add(&b.scale(&small(r)))
    })
}

pub fn random_cochain(
    r: &mut ChaCha8Rng,
    source: usize,
    target: usize,
    degree: usize,
) -> AltCochain {
    AltCochain::from_fn(source, target, degree, |_| random_vec(r, target))
}

/// Random derivation of `l`, drawn from its derivation space.
pub fn random_derivation(r: &mut ChaCha8Rng, l: &LieAlgebra) -> Matrix {
    let n = l.dim();
    let basis: Vec<Matrix> = l
        .derivation_space()
        .basis_vectors()
        .iter()
        .map(|v| l.unflatten(v))
        .collect();
    random_combo(r, &basis, n, n)
}

pub fn random_pair(r: &mut ChaCha8Rng, l: &LieAlgebra) -> LieDerPair {
    LieDerPair::new(l.clone(), random_derivation(r, l)).unwrap()
}

fn alg(name: &str, dim: usize, table: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    LieAlgebra::from_table(name, dim, table)
}

fn unit_cols(total: usize, idx: &[usize]) -> Matrix {
    Matrix::from_fn(total, idx.len(), |r, c| {
        if r == idx[c] {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn unit_rows(total: usize, idx: &[usize]) -> Matrix {
    unit_cols(total, idx).transpose()
}

/// Extension whose ideal and quotient are spanned by basis vectors of the total algebra.
fn coordinate_ext(
    total: LieAlgebra,
    h_idx: &[usize],
    g: LieAlgebra,
    h: LieAlgebra,
) -> LieExtension {
    let n = total.dim();
    let g_idx: Vec<usize> = (0..n).filter(|i| !h_idx.contains(i)).collect();
    let e = LieExtension {
        inj: unit_cols(n, h_idx),
        proj: unit_rows(n, &g_idx),
        total,
        g,
        h,
    };
    assert!(
        e.verify().is_ok(),
        "corpus extension {} is invalid",
        e.total.name()
    );
    e
}

pub struct CorpusExt {
    pub name: &'static str,
    pub ext: LieExtension,
}

/// Test extensions, all with `dim ĝ <= 5` and `dim g, dim h <= 4`.
pub fn corpus() -> Vec<CorpusExt> {
    let a = LieAlgebra::abelian;
    let l4 = alg("L4", 4, &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])]);
    let l5 = alg(
        "L5",
        5,
        &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)]), (0, 3, &[(4, 1)])],
    );
    let h5 = alg("H5", 5, &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)])]);
    let r3 = alg("r3", 3, &[(0, 1, &[(1, 1)]), (0, 2, &[(2, 1)])]);
    let r3b = alg("r3b", 3, &[(0, 1, &[(1, 1)]), (0, 2, &[(1, 1), (2, 1)])]);
    let n2n2 = direct_sum(&n2(), &n2());
    vec![
        CorpusExt {
            name: "H3 over A2",
            ext: coordinate_ext(heisenberg(), &[2], a(2), a(1)),
        },
        CorpusExt {
            name: "N2 over A1",
            ext: coordinate_ext(n2(), &[1], a(1), a(1)),
        },
        CorpusExt {
            name: "H3 by <e2,e3>",
            ext: coordinate_ext(heisenberg(), &[1, 2], a(1), a(2)),
        },
        CorpusExt {
            name: "r3 over A1",
            ext: coordinate_ext(r3, &[1, 2], a(1), a(2)),
        },
        CorpusExt {
            name: "r3b over A1",
            ext: coordinate_ext(r3b, &[1, 2], a(1), a(2)),
        },
        CorpusExt {
            name: "L4 over A2",
            ext: coordinate_ext(l4, &[2, 3], a(2), a(2)),
        },
        CorpusExt {
            name: "L5 over A2",
            ext: coordinate_ext(l5, &[2, 3, 4], a(2), a(3)),
        },
        CorpusExt {
            name: "H5 by H3",
            ext: coordinate_ext(h5, &[2, 3, 4], a(2), heisenberg()),
        },
        CorpusExt {
            name: "H3+A1 over A2",
            ext: coordinate_ext(direct_sum(&heisenberg(), &a(1)), &[2, 3], a(2), a(2)),
        },
        CorpusExt {
            name: "N2+H3 by H3",
            ext: coordinate_ext(
                direct_sum(&n2(), &heisenberg()),
                &[2, 3, 4],
                n2(),
                heisenberg(),
            ),
        },
        CorpusExt {
            name: "sl2+A1 by sl2",
            ext: coordinate_ext(direct_sum(&sl2(), &a(1)), &[0, 1, 2], a(1), sl2()),
        },
        CorpusExt {
            name: "N2+N2 by N2",
            ext: coordinate_ext(n2n2, &[2, 3], n2(), n2()),
        },
    ]
}

/// `s0 + inj . m` for a random `m: g -> h`.
pub fn random_section(r: &mut ChaCha8Rng, e: &LieExtension) -> Matrix {
    let s0 = canonical_section(e).unwrap();
    s0.add(&e.inj.mul(&random_matrix(r, e.h.dim(), e.g.dim())))
}

pub fn context(e: &LieExtension) -> ExtensionContext {
    ExtensionContext::new(e.clone(), canonical_section(e).unwrap()).unwrap()
}

/// A random derivation of `ĝ` preserving `h`.
pub fn random_dhat(r: &mut ChaCha8Rng, ctx: &ExtensionContext) -> Matrix {
    let n = ctx.ext.total.dim();
    random_combo(r, &der_h_space(ctx).unwrap(), n, n)
}

/// Equips a plain extension with `D̂` and the induced `(K, D)`.
pub fn with_derivation(ctx: &ExtensionContext, dhat: &Matrix) -> (Extension, DerivationPair) {
    let p = gamma(ctx, dhat).unwrap();
    let e = &ctx.ext;
    let ext = Extension {
        total: LieDerPair::new(e.total.clone(), dhat.clone()).unwrap(),
        inj: e.inj.clone(),
        proj: e.proj.clone(),
        h: LieDerPair::new(e.h.clone(), p.k.clone()).unwrap(),
        g: LieDerPair::new(e.g.clone(), p.d.clone()).unwrap(),
    };
    (ext, p)
}

/// A random extension of LieDer pairs from the corpus, with a random section.
pub fn random_extension(r: &mut ChaCha8Rng) -> (Extension, Section) {
    let corpus = corpus();
    let c = &corpus[r.gen_range(0..corpus.len())];
    let ctx = context(&c.ext);
    let (e, _) = with_derivation(&ctx, &random_dhat(r, &ctx));
    let s = Section::new(&e, random_section(r, &c.ext)).unwrap();
    (e, s)
}

/// A verified cocycle: extracted from a random corpus extension, then gauged.
pub fn random_cocycle(r: &mut ChaCha8Rng) -> NonAbelianCocycle {
    let (e, s) = random_extension(r);
    let c = extract_cocycle(&e, &s).unwrap();
    let tau = random_matrix(r, c.hdim(), c.gdim());
    let c = apply_gauge(&c, &tau).unwrap();
    assert!(c.verify().is_ok());
    c
}

/// Changes one entry of one component; usually breaks the cocycle equations.
pub fn perturb(r: &mut ChaCha8Rng, c: &NonAbelianCocycle) -> NonAbelianCocycle {
    let mut out = c.clone();
    let (m, n) = (c.gdim(), c.hdim());
    let bump = rat(r.gen_range(1i64..=3));
    match r.gen_range(0..3) {
        0 => {
            let i = r.gen_range(0..m);
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            let v = out.varrho[i].get(a, b) + bump;
            out.varrho[i].set(a, b, v);
        }
        1 if m >= 2 => {
            let i = r.gen_range(0..m - 1);
            let j = r.gen_range(i + 1..m);
            let mut v = out.omega.get(&[i, j]).to_vec();
            let a = r.gen_range(0..n);
            v[a] += bump;
            out.omega.set(&[i, j], v);
        }
        _ => {
            let (a, i) = (r.gen_range(0..n), r.gen_range(0..m));
            let v = out.chi.get(a, i) + bump;
            out.chi.set(a, i, v);
        }
    }
    out
}

// Independent linear algebra over plain rows, used by the brute-force oracles.

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let d = &f * &rows[rank][k];
                    rows[i][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `A x = b` has a solution, by comparing ranks.
pub fn solvable(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    rank(a.to_vec()) == rank(aug)
}

fn c(l: &LieAlgebra, i: usize, j: usize, k: usize) -> Rational {
    l.constant(i, j, k).clone()
}

/// Rows of the Leibniz system `X[e_i,e_j] = [X e_i, e_j] + [e_i, X e_j]` in the `n^2` entries of `X`.
pub fn leibniz_rows(l: &LieAlgebra) -> Vec<Vec<Rational>> {
    let n = l.dim();
    let var = |r: usize, s: usize| r * n + s;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for s in 0..n {
                    row[var(k, s)] += c(l, i, j, s);
                    row[var(s, i)] -= c(l, s, j, k);
                    row[var(s, j)] -= c(l, i, s, k);
                }
                rows.push(row);
            }
        }
    }
    rows
}

pub fn brute_dim_der(l: &LieAlgebra) -> usize {
    let n = l.dim();
    if n < 2 {
        return n * n;
    }
    n * n - rank(leibniz_rows(l))
}

pub fn brute_dim_inner(l: &LieAlgebra) -> usize {
    let n = l.dim();
    // ad(e_i) flattened: entry (k, j) is c_ij^k.
    let rows = (0..n)
        .map(|i| (0..n * n).map(|t| c(l, i, t % n, t / n)).collect())
        .collect();
    rank(rows)
}

pub fn brute_dim_center(l: &LieAlgebra) -> usize {
    let n = l.dim();
    let rows: Vec<Vec<Rational>> = (0..n * n)
        .map(|t| (0..n).map(|i| c(l, i, t / n, t % n)).collect())
        .collect();
    n - rank(rows)
}

/// Whether some `X` is a derivation of `ĝ` with `X inj = inj K` and `proj X = D proj`.
pub fn brute_extensible(e: &LieExtension, k: &Matrix, d: &Matrix) -> bool {
    let l = &e.total;
    let n = l.dim();
    let var = |r: usize, s: usize| r * n + s;
    let mut a = leibniz_rows(l);
    let mut b = vec![Rational::zero(); a.len()];
    let rhs = e.inj.mul(k);
    for r in 0..n {
        for col in 0..e.h.dim() {
            let mut row = vec![Rational::zero(); n * n];
            for s in 0..n {
                row[var(r, s)] += e.inj.get(s, col);
            }
            a.push(row);
            b.push(rhs.get(r, col).clone());
        }
    }
    let rhs = d.mul(&e.proj);
    for gi in 0..e.g.dim() {
        for col in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            for s in 0..n {
                row[var(s, col)] += e.proj.get(gi, s);
            }
            a.push(row);
            b.push(rhs.get(gi, col).clone());
        }
    }
    solvable(&a, &b)
}
