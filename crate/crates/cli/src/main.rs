use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lieder::cochain::{cohomology, Complex};
use lieder::dgla::{mc_to_cocycle, LghContext};
use lieder::extendder::{analyze, DerivationPair, ExtensionContext};
use lieder::format::*;
use lieder::kernel::{obstruction_ch, realize_kernel, verify_kernel, KernelViolation};
use lieder::lie2::{build_hder, cocycle_to_hom, verify_hom, verify_two_hom, Lie2DerPair, TwoHom};
use lieder::nonabelian::{
    apply_gauge, build_extension, extract_cocycle, verify_cocycle, verify_equivalence_witness,
    verify_extension, Section,
};
use lieder::{Error, LieAlgebra, Matrix};

#[derive(Parser)]
#[command(
    name = "lieder",
    version,
    about = "Exact computations for Lie algebras with derivations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jacobi identity of an algebra
    Check { algebra: PathBuf },
    /// Basis of the derivation algebra
    Der { algebra: PathBuf },
    /// Basis of the center
    Center { algebra: PathBuf },
    /// Dimensions of Der, ad and Out
    Out { algebra: PathBuf },
    /// Cohomology of a pair with coefficients in a representation
    Cohomology {
        pair: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "lieder")]
        complex: ComplexArg,
    },
    /// Non-abelian 2-cocycles
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Extension built from a cocycle, with its canonical section
    Extend { cocycle: PathBuf },
    /// Cocycle of an extension relative to a section
    Extract {
        extension: PathBuf,
        section: PathBuf,
    },
    /// Maurer-Cartan elements
    #[command(subcommand)]
    Mc(McCmd),
    /// (g,D)-kernels
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Whether (K, D) lifts to a derivation of the total algebra
    Extensible {
        extension: PathBuf,
        k: PathBuf,
        d: PathBuf,
    },
    /// Lie 2-algebra dictionary
    #[command(subcommand)]
    Lie2(Lie2Cmd),
}

#[derive(Subcommand)]
enum CocycleCmd {
    Verify {
        cocycle: PathBuf,
    },
    /// Applies the gauge action of tau: g -> h
    Gauge {
        cocycle: PathBuf,
        tau: PathBuf,
    },
    /// Checks that tau relates two cocycles
    Witness {
        first: PathBuf,
        second: PathBuf,
        tau: PathBuf,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// Context holds the pairs `g` and `h`
    Verify { ctx: PathBuf, element: PathBuf },
}

#[derive(Subcommand)]
enum KernelCmd {
    Verify { kernel: PathBuf },
    Obstruction { kernel: PathBuf },
    Realize { kernel: PathBuf },
}

#[derive(Subcommand)]
enum Lie2Cmd {
    /// Cocycle to Lie2Der homomorphism into h_Der
    Translate { cocycle: PathBuf },
    /// Checks a 2-homomorphism between two homs out of `g` into h_Der
    #[command(name = "verify-2hom")]
    Verify2Hom {
        ctx: PathBuf,
        phi: PathBuf,
        psi: PathBuf,
        vartheta: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexArg {
    Ce,
    Lieder,
}

struct Outcome {
    holds: bool,
    doc: Value,
}

fn holds(doc: Value) -> Outcome {
    Outcome { holds: true, doc }
}

fn verdict(ok: bool, doc: Value) -> Outcome {
    Outcome { holds: ok, doc }
}

type Res = lieder::Result<Outcome>;

fn load(path: &Path) -> lieder::Result<(Loader, Value)> {
    Loader::open(path)
}

fn algebra_at(path: &Path) -> lieder::Result<LieAlgebra> {
    let (ld, v) = load(path)?;
    match v.get("algebra") {
        Some(a) => ld.algebra(a),
        None => ld.algebra(&v),
    }
}

fn matrix_at(path: &Path) -> lieder::Result<Matrix> {
    let (ld, v) = load(path)?;
    ld.matrix(&v)
}

fn ctx_pairs(path: &Path) -> lieder::Result<(lieder::LieDerPair, lieder::LieDerPair)> {
    let (ld, v) = load(path)?;
    let field = |n: &str| {
        v.get(n)
            .ok_or_else(|| Error::Parse(format!("missing field '{n}'")))
    };
    Ok((ld.pair(field("g")?)?, ld.pair(field("h")?)?))
}

fn check(path: &Path) -> Res {
    let l = algebra_at(path)?;
    Ok(match l.jacobi_check() {
        Ok(()) => holds(json!({ "jacobi": true })),
        Err(f) => {
            let t: Vec<usize> = f.triple.iter().map(|i| i + 1).collect();
            verdict(false, json!({ "jacobi": false, "triple": t }))
        }
    })
}

fn der(path: &Path) -> Res {
    let l = algebra_at(path)?;
    let space = l.derivation_space();
    let basis: Vec<Value> = space
        .basis_vectors()
        .iter()
        .map(|v| matrix_json(&l.unflatten(v)))
        .collect();
    Ok(holds(json!({ "dim": space.dim(), "basis": basis })))
}

fn center(path: &Path) -> Res {
    let l = algebra_at(path)?;
    let z = l.center();
    let basis: Vec<Value> = z.basis_vectors().iter().map(|v| vector_json(v)).collect();
    Ok(holds(json!({ "dim": z.dim(), "basis": basis })))
}

fn out(path: &Path) -> Res {
    let l = algebra_at(path)?;
    Ok(holds(json!({
        "dim_der": l.derivation_space().dim(),
        "dim_inner": l.inner_derivations().dim(),
        "dim_out": l.out_space().dim(),
    })))
}

fn cohomology_cmd(pair: &Path, rep: &Path, degree: usize, complex: ComplexArg) -> Res {
    let (ld, v) = load(pair)?;
    let p = ld.pair(&v)?;
    let (ld, v) = load(rep)?;
    let r = ld.rep(&v, &p)?;
    let (cx, name) = match complex {
        ComplexArg::Ce => (Complex::Ce, "ce"),
        ComplexArg::Lieder => (Complex::LieDer, "lieder"),
    };
    let h = cohomology(&r, degree, cx)?;
    Ok(holds(json!({
        "degree": degree,
        "complex": name,
        "dim_cocycles": h.dim_cocycles,
        "dim_coboundaries": h.dim_coboundaries,
        "dim_h": h.dim_h,
        "representatives": h.representatives.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
    })))
}

fn cocycle_at(path: &Path) -> lieder::Result<lieder::nonabelian::NonAbelianCocycle> {
    let (ld, v) = load(path)?;
    ld.cocycle(&v)
}

fn cocycle_cmd(c: &CocycleCmd) -> Res {
    match c {
        CocycleCmd::Verify { cocycle } => {
            let c = cocycle_at(cocycle)?;
            Ok(match verify_cocycle(&c) {
                Ok(()) => holds(json!({ "cocycle": true })),
                Err(v) => {
                    let idx: Vec<usize> = v.indices.iter().map(|i| i + 1).collect();
                    let eq = format!("{:?}", v.equation).to_lowercase();
                    verdict(
                        false,
                        json!({ "cocycle": false, "equation": eq, "indices": idx }),
                    )
                }
            })
        }
        CocycleCmd::Gauge { cocycle, tau } => {
            let c = cocycle_at(cocycle)?;
            Ok(holds(cocycle_json(&apply_gauge(&c, &matrix_at(tau)?)?)))
        }
        CocycleCmd::Witness { first, second, tau } => {
            let (a, b) = (cocycle_at(first)?, cocycle_at(second)?);
            let ok = verify_equivalence_witness(&a, &b, &matrix_at(tau)?);
            Ok(verdict(ok, json!({ "equivalent": ok })))
        }
    }
}

fn extend(path: &Path) -> Res {
    let c = cocycle_at(path)?;
    if let Err(v) = verify_cocycle(&c) {
        return Ok(verdict(
            false,
            json!({ "cocycle": false, "reason": v.to_string() }),
        ));
    }
    let (e, s) = build_extension(&c)?;
    let mut doc = extension_json(&e);
    doc["section"] = matrix_json(&s.s);
    Ok(holds(doc))
}

fn extract(ext: &Path, section: &Path) -> Res {
    let (ld, v) = load(ext)?;
    let e = ld.extension(&v)?;
    if let Err(v) = verify_extension(&e) {
        return Ok(verdict(
            false,
            json!({ "extension": false, "reason": v.to_string() }),
        ));
    }
    let s = Section::new(&e, matrix_at(section)?)?;
    Ok(holds(cocycle_json(&extract_cocycle(&e, &s)?)))
}

fn mc_verify(ctx: &Path, element: &Path) -> Res {
    let (g, h) = ctx_pairs(ctx)?;
    let lgh = LghContext::new(g, h);
    let (ld, v) = load(element)?;
    let e = ld.graded_element(&v, lgh.gdim(), lgh.hdim())?;
    if e.degree() != 1 {
        return Err(Error::Invalid(
            "a Maurer-Cartan element has degree 1".into(),
        ));
    }
    if !lgh.mc_check(&e)? {
        return Ok(verdict(
            false,
            json!({ "mc": false, "defect": graded_element_json(&lgh.mc_defect(&e)?) }),
        ));
    }
    Ok(holds(
        json!({ "mc": true, "cocycle": cocycle_json(&mc_to_cocycle(&lgh, &e)?) }),
    ))
}

fn kernel_cmd(k: &KernelCmd) -> Res {
    let path = match k {
        KernelCmd::Verify { kernel }
        | KernelCmd::Obstruction { kernel }
        | KernelCmd::Realize { kernel } => kernel,
    };
    let (ld, v) = load(path)?;
    let kd = ld.kernel(&v)?;
    if let Err(v) = verify_kernel(&kd) {
        let reason = match v {
            KernelViolation::Shape => json!({ "shape": true }),
            KernelViolation::NotDerivation { index } => json!({ "not_derivation": index + 1 }),
            KernelViolation::NotHomomorphism { i, j } => {
                json!({ "not_homomorphism": [i + 1, j + 1] })
            }
            KernelViolation::NotCompatible { index } => json!({ "not_compatible": index + 1 }),
        };
        return Ok(verdict(false, json!({ "kernel": false, "reason": reason })));
    }
    match k {
        KernelCmd::Verify { .. } => Ok(holds(json!({ "kernel": true }))),
        KernelCmd::Obstruction { .. } => {
            let ch = obstruction_ch(&kd)?;
            let zero = ch.is_zero();
            Ok(verdict(
                zero,
                json!({
                    "zero": zero,
                    "class": vector_json(&ch.class),
                    "cochain": lieder_cochain_json(&ch.cochain),
                }),
            ))
        }
        KernelCmd::Realize { .. } => Ok(match realize_kernel(&kd)? {
            Some(c) => holds(json!({ "realized": true, "cocycle": cocycle_json(&c) })),
            None => verdict(false, json!({ "realized": false })),
        }),
    }
}

fn extensible(ext: &Path, k: &Path, d: &Path) -> Res {
    let (ld, v) = load(ext)?;
    let (e, section) = ld.lie_extension(&v)?;
    let s = match section {
        Some(s) => s,
        None => canonical_section(&e)?,
    };
    let ctx = ExtensionContext::new(e, s)?;
    let pair = DerivationPair::new(matrix_at(k)?, matrix_at(d)?);
    let (m, n) = (ctx.g().dim(), ctx.h().dim());
    if pair.k.rows() != n || pair.k.cols() != n || pair.d.rows() != m || pair.d.cols() != m {
        return Err(Error::Dimension(format!(
            "K must be {n}x{n} and D must be {m}x{m}"
        )));
    }
    if !pair.is_valid(&ctx) {
        return Ok(verdict(false, json!({ "derivations": false })));
    }
    let a = analyze(&ctx, &pair)?;
    let mut doc = json!({ "compatible": a.compatible() });
    if let Some(w) = &a.w {
        doc["obstruction_class"] = vector_json(&w.class);
    }
    if let Some(dh) = &a.dhat {
        doc["dhat"] = matrix_json(dh);
    }
    Ok(verdict(a.dhat.is_some(), doc))
}

fn lie2_cmd(c: &Lie2Cmd) -> Res {
    match c {
        Lie2Cmd::Translate { cocycle } => {
            let c = cocycle_at(cocycle)?;
            let hder = build_hder(&c.h)?;
            let f = cocycle_to_hom(&c, &hder)?;
            let ok = verify_hom(&Lie2DerPair::from_pair(&c.g), &hder.pair, &f);
            let mut doc = json!({
                "hom": hom_json(&f),
                "source": lie2_pair_json(&Lie2DerPair::from_pair(&c.g)),
                "target": lie2_pair_json(&hder.pair),
                "der_basis": hder.basis().iter().map(matrix_json).collect::<Vec<_>>(),
                "hom_axioms": ok.is_ok(),
            });
            if let Err(f) = ok {
                doc["failure"] = json!(f.to_string());
            }
            Ok(verdict(doc["hom_axioms"] == json!(true), doc))
        }
        Lie2Cmd::Verify2Hom {
            ctx,
            phi,
            psi,
            vartheta,
        } => {
            let (g, h) = ctx_pairs(ctx)?;
            let hder = build_hder(&h)?;
            let src = Lie2DerPair::from_pair(&g);
            let dims = (g.dim(), 0, hder.dim_der(), h.dim());
            let hom_at = |p: &Path| -> lieder::Result<_> {
                let (ld, v) = load(p)?;
                ld.hom(&v, dims.0, dims.1, dims.2, dims.3)
            };
            let (f, f2) = (hom_at(phi)?, hom_at(psi)?);
            let t = TwoHom {
                vartheta: matrix_at(vartheta)?,
            };
            let r = verify_two_hom(&src, &hder.pair, &f, &f2, &t);
            let mut doc = json!({ "two_hom": r.is_ok() });
            if let Err(fl) = &r {
                doc["failure"] = json!(fl.to_string());
            }
            Ok(verdict(r.is_ok(), doc))
        }
    }
}

fn run(cli: &Cli) -> Res {
    match &cli.cmd {
        Cmd::Check { algebra } => check(algebra),
        Cmd::Der { algebra } => der(algebra),
        Cmd::Center { algebra } => center(algebra),
        Cmd::Out { algebra } => out(algebra),
        Cmd::Cohomology {
            pair,
            rep,
            degree,
            complex,
        } => cohomology_cmd(pair, rep, *degree, *complex),
        Cmd::Cocycle(c) => cocycle_cmd(c),
        Cmd::Extend { cocycle } => extend(cocycle),
        Cmd::Extract { extension, section } => extract(extension, section),
        Cmd::Mc(McCmd::Verify { ctx, element }) => mc_verify(ctx, element),
        Cmd::Kernel(k) => kernel_cmd(k),
        Cmd::Extensible { extension, k, d } => extensible(extension, k, d),
        Cmd::Lie2(c) => lie2_cmd(c),
    }
}

fn emit(doc: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(doc).expect("json output");
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            emit(&json!({ "error": e.kind().to_string() }));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(o) => {
            emit(&o.doc);
            if o.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            emit(&json!({ "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
