use criterion::{criterion_group, criterion_main, Criterion};
use lieder::cochain::{cohomology, Complex, LieDerRep};
use lieder::exactlin::rat;
use lieder::extendder::{der_h_space, is_extensible, DerivationPair, ExtensionContext};
use lieder::format::canonical_section;
use lieder::kernel::{kernel_of_cocycle, obstruction_ch};
use lieder::lie::catalog::heisenberg;
use lieder::lie2::build_hder;
use lieder::nonabelian::{build_extension, extract_cocycle, Extension, Section};
use lieder::{LieDerPair, Matrix};
use lieder_bench::{filiform, h5_by_h3};

fn derivations(c: &mut Criterion) {
    for n in [4, 6] {
        let l = filiform(n);
        c.bench_function(&format!("derivation_space L{n}"), |b| {
            b.iter(|| l.derivation_space())
        });
    }
    let h = LieDerPair::trivial(heisenberg());
    c.bench_function("build_hder H3", |b| b.iter(|| build_hder(&h).unwrap()));
}

fn cohomology_degrees(c: &mut Criterion) {
    let rep = LieDerRep::adjoint(LieDerPair::trivial(filiform(4)), rat(0)).unwrap();
    for n in [2, 3] {
        c.bench_function(&format!("lieder cohomology L4 adjoint H^{n}"), |b| {
            b.iter(|| cohomology(&rep, n, Complex::LieDer).unwrap())
        });
    }
}

fn extensions(c: &mut Criterion) {
    let ext = h5_by_h3();
    let ctx = ExtensionContext::new(ext.clone(), canonical_section(&ext).unwrap()).unwrap();
    let p = DerivationPair::new(Matrix::zeros(3, 3), Matrix::zeros(2, 2));
    c.bench_function("der_h_space H5 by H3", |b| {
        b.iter(|| der_h_space(&ctx).unwrap())
    });
    c.bench_function("is_extensible H5 by H3", |b| {
        b.iter(|| is_extensible(&ctx, &p).unwrap())
    });

    let lifted = Extension {
        total: LieDerPair::trivial(ext.total.clone()),
        inj: ext.inj.clone(),
        proj: ext.proj.clone(),
        h: LieDerPair::trivial(ext.h.clone()),
        g: LieDerPair::trivial(ext.g.clone()),
    };
    let s = Section::new(&lifted, canonical_section(&ext).unwrap()).unwrap();
    let cocycle = extract_cocycle(&lifted, &s).unwrap();
    c.bench_function("extract + build H5 by H3", |b| {
        b.iter(|| build_extension(&extract_cocycle(&lifted, &s).unwrap()).unwrap())
    });
    let k = kernel_of_cocycle(&cocycle);
    c.bench_function("obstruction_ch H5 by H3", |b| {
        b.iter(|| obstruction_ch(&k).unwrap())
    });
}

criterion_group!(benches, derivations, cohomology_degrees, extensions);
criterion_main!(benches);
