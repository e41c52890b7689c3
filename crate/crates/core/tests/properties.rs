mod support;

use lieder::cochain::{cohomology, Complex, LieDerRep};
use lieder::dgla::{cocycle_to_mc, mc_check, mc_to_cocycle, LghContext};
use lieder::exactlin::rat;
use lieder::extendder::{
    gamma, is_compatible_with_free, is_extensible, obstruction_w, DerivationPair, ExtensionContext,
};
use lieder::format::{cocycle_json, Loader};
use lieder::kernel::{
    choose_lift, kernel_of_cocycle, obstruction_ch, obstruction_of_lift, perturb_lift,
};
use lieder::lie::catalog::{heisenberg, n2, sl2};
use lieder::lie2::{build_hder, cocycle_to_hom, hom_to_cocycle};
use lieder::nonabelian::{
    apply_gauge, build_extension, extract_cocycle, verify_equivalence_witness,
};
use lieder::{LieAlgebra, LieDerPair, Matrix};
use proptest::prelude::*;
use rand::Rng;
use support::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gauge_produces_its_own_witness(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let tau = random_matrix(&mut r, c.hdim(), c.gdim());
        let c2 = apply_gauge(&c, &tau).unwrap();
        prop_assert!(c2.verify().is_ok());
        prop_assert!(verify_equivalence_witness(&c, &c2, &tau));
    }

    #[test]
    fn gauge_actions_compose_additively(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let t1 = random_matrix(&mut r, c.hdim(), c.gdim());
        let t2 = random_matrix(&mut r, c.hdim(), c.gdim());
        let stepwise = apply_gauge(&apply_gauge(&c, &t1).unwrap(), &t2).unwrap();
        prop_assert_eq!(stepwise, apply_gauge(&c, &t1.add(&t2)).unwrap());
    }

    #[test]
    fn cocycle_extension_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let (e, s) = build_extension(&c).unwrap();
        prop_assert_eq!(extract_cocycle(&e, &s).unwrap(), c);
    }

    #[test]
    fn cocycle_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let text = serde_json::to_string(&cocycle_json(&c)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Loader::new(".").cocycle(&v).unwrap(), c);
    }

    #[test]
    fn mc_matches_cocycle_equations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let c = if r.gen_bool(0.5) { perturb(&mut r, &c) } else { c };
        let ctx = LghContext::new(c.g.clone(), c.h.clone());
        let e = cocycle_to_mc(&c).unwrap();
        prop_assert_eq!(mc_check(&ctx, &e).unwrap(), c.verify().is_ok());
        prop_assert_eq!(mc_to_cocycle(&ctx, &e).unwrap(), c);
    }

    #[test]
    fn dictionary_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let hder = build_hder(&c.h).unwrap();
        let f = cocycle_to_hom(&c, &hder).unwrap();
        prop_assert_eq!(hom_to_cocycle(&c.g, &c.h, &hder, &f).unwrap(), c);
    }

    #[test]
    fn gamma_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let corpus = corpus();
        let ce = &corpus[r.gen_range(0..corpus.len())];
        let ctx = context(&ce.ext);
        let (a, b) = (random_dhat(&mut r, &ctx), random_dhat(&mut r, &ctx));
        let (ga, gb) = (gamma(&ctx, &a).unwrap(), gamma(&ctx, &b).unwrap());
        let gab = gamma(&ctx, &a.commutator(&b)).unwrap();
        prop_assert_eq!(gab.k, ga.k.commutator(&gb.k));
        prop_assert_eq!(gab.d, ga.d.commutator(&gb.d));
    }

    #[test]
    fn gamma_ignores_the_section(seed in any::<u64>()) {
        let mut r = rng(seed);
        let corpus = corpus();
        let ce = &corpus[r.gen_range(0..corpus.len())];
        let ctx = context(&ce.ext);
        let other = ExtensionContext::new(ce.ext.clone(), random_section(&mut r, &ce.ext)).unwrap();
        let dhat = random_dhat(&mut r, &ctx);
        prop_assert_eq!(gamma(&ctx, &dhat).unwrap(), gamma(&other, &dhat).unwrap());
    }

    #[test]
    fn lifted_derivation_restricts_to_its_pair(seed in any::<u64>()) {
        let mut r = rng(seed);
        let corpus = corpus();
        let ce = &corpus[r.gen_range(0..corpus.len())];
        let ctx = context(&ce.ext);
        let (_, p) = with_derivation(&ctx, &random_dhat(&mut r, &ctx));
        let dhat = is_extensible(&ctx, &p).unwrap().expect("pairs from Γ lift");
        prop_assert_eq!(gamma(&ctx, &dhat).unwrap(), p);
    }

    #[test]
    fn w_class_ignores_the_witness(seed in any::<u64>()) {
        let mut r = rng(seed);
        let corpus = corpus();
        let ce = &corpus[r.gen_range(0..corpus.len())];
        let ctx = context(&ce.ext);
        let p = DerivationPair::new(random_derivation(&mut r, &ce.ext.h), random_derivation(&mut r, &ce.ext.g));
        if let Some(chi0) = is_compatible_with_free(&ctx, &p, &rat(0)) {
            let chi1 = is_compatible_with_free(&ctx, &p, &rat(1)).unwrap();
            let (w0, w1) = (obstruction_w(&ctx, &p, &chi0).unwrap(), obstruction_w(&ctx, &p, &chi1).unwrap());
            prop_assert_eq!(w0.class, w1.class);
        }
    }

    #[test]
    fn ch_ignores_ad_perturbations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_cocycle(&mut r);
        let k = kernel_of_cocycle(&c);
        let lift = choose_lift(&k).unwrap();
        let rm = random_matrix(&mut r, c.hdim(), c.gdim());
        let ch0 = obstruction_of_lift(&lift).unwrap();
        let ch1 = obstruction_of_lift(&perturb_lift(&lift, &rm).unwrap()).unwrap();
        prop_assert!(ch0.same_class(&ch1).unwrap());
        prop_assert!(obstruction_ch(&k).unwrap().is_zero());
    }

    #[test]
    fn lieder_cohomology_splits_without_derivations(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let algebras = [heisenberg(), n2(), sl2(), LieAlgebra::abelian(2)];
        let g = algebras[r.gen_range(0..algebras.len())].clone();
        let rep = if r.gen_bool(0.5) {
            LieDerRep::adjoint(LieDerPair::trivial(g.clone()), rat(0)).unwrap()
        } else {
            LieDerRep::trivial(LieDerPair::trivial(g.clone()), Matrix::zeros(1, 1)).unwrap()
        };
        let ld = cohomology(&rep, n, Complex::LieDer).unwrap().dim_h;
        let ce = cohomology(&rep, n, Complex::Ce).unwrap().dim_h;
        // C^1 has no lower part, so in degree 2 nothing bounds the lower cocycles
        let below = cohomology(&rep, n - 1, Complex::Ce).unwrap();
        let below = if n == 2 { below.dim_cocycles } else { below.dim_h };
        prop_assert_eq!(ld, ce + below);
    }
}
