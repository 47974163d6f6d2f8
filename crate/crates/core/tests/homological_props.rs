use orderforge_core::azumaya::twisted_cokernel;
use proptest::prelude::*;
use orderforge_core::homological::*;
use orderforge_core::orders::koszul_syzygy;
use orderforge_core::{Field, FPModule, Ideal, MonomialOrder, Ring, SCAlgebra};

fn ring() -> Ring {
    Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
}

fn ideal(r: &Ring, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

#[test]
fn pinned_depths() {
    let r = ring();
    let m = Ideal::maximal_at_origin(&r);
    let z = koszul_syzygy(&r).unwrap();
    // pd(Z) = 1 from 0 -> R -> R^3 -> Z -> 0, so AB gives 3 - 1
    assert_eq!(projective_dimension(&z, None).unwrap(), ProjDim::Exact(1));
    assert_eq!(depth_ext(&m, &z).unwrap(), 2);
    let uv = FPModule::from_ideal(&ideal(&r, &["u", "v"]));
    assert_eq!(depth_ext(&m, &uv).unwrap(), 2);
    assert_eq!(depth_at_prime(&ideal(&r, &["u", "v"]), &uv).unwrap(), 1);
    assert_eq!(depth_at_prime(&ideal(&r, &["u", "v"]), &z).unwrap(), 2);
}

#[test]
fn projective_dimensions_and_ab() {
    let r = ring();
    let m = Ideal::maximal_at_origin(&r);
    let k = FPModule::quotient_ring(&m);
    assert_eq!(projective_dimension(&k, None).unwrap(), ProjDim::Exact(3));
    let ab = ab_verify(&k, &m).unwrap();
    assert!(ab.holds && (ab.pd, ab.depth_module, ab.depth_ring) == (3, 0, 3));
    let uv = FPModule::from_ideal(&ideal(&r, &["u", "v"]));
    let ab = ab_verify(&uv, &m).unwrap();
    assert!(ab.holds && (ab.pd, ab.depth_module) == (1, 2));
}

#[test]
fn regular_sequences_agree_with_ext_and_drop_depth() {
    let r = ring();
    let m = Ideal::maximal_at_origin(&r);
    let mods = [
        FPModule::free(&r, 1),
        FPModule::from_ideal(&ideal(&r, &["u", "v"])),
        FPModule::quotient_ring(&ideal(&r, &["u*v"])),
        koszul_syzygy(&r).unwrap(),
    ];
    for (k, module) in mods.iter().enumerate() {
        let rep = depth_regseq(&m, module, 40, 11 + k as u64).unwrap();
        assert_eq!(rep.regseq_depth, rep.ext_depth);
        let mut cur = module.clone();
        let mut d = rep.depth;
        for x in &rep.witness {
            assert!(is_regular(x, &cur));
            cur = cur.mod_element(x);
            assert_eq!(depth_ext(&m, &cur).unwrap(), d - 1);
            d -= 1;
        }
    }
}

#[test]
fn torsion_free_twisted_module() {
    let r = ring();
    let a = SCAlgebra::quaternion(&r, &r.constant(-1), &r.constant(-1)).unwrap();
    let e = twisted_cokernel(&a, &a.parse_element("u*i + v").unwrap(), &a.parse_element("w*j").unwrap()).unwrap();
    let t = torsionfree_test(&e.unfolded).unwrap();
    assert!(t.torsion_free);
    assert!(t.fitting_codim.unwrap().at_least(2));
}

#[test]
fn reflexivity_certificates() {
    let r = ring();
    let z = koszul_syzygy(&r).unwrap();
    let c = reflexive_certificate(&z, &[Ideal::maximal_at_origin(&r)]).unwrap();
    assert_eq!(c.verdict, Verdict::Reflexive);
    assert!(c.criterion && c.findings.is_empty());
    let uv = FPModule::from_ideal(&ideal(&r, &["u", "v"]));
    let c = reflexive_certificate(&uv, &[]).unwrap();
    assert!(c.torsion_free && !c.bidual_iso && !c.criterion);
    assert_eq!(c.verdict, Verdict::NotReflexive { witness: "(v, u) depth 1".into() });
}

#[test]
fn local_cohomology_vanishing_range() {
    let r = ring();
    let m = Ideal::maximal_at_origin(&r);
    assert!(local_cohomology_vanishing(&m, &FPModule::free(&r, 1), 3, 3).unwrap());
    assert!(!local_cohomology_vanishing(&m, &koszul_syzygy(&r).unwrap(), 3, 2).unwrap());
}

fn monomial(r: &Ring, e: [u32; 3]) -> orderforge_core::Poly {
    r.parse(&format!("u^{}*v^{}*w^{}", e[0], e[1], e[2])).unwrap()
}

fn graded_module() -> impl Strategy<Value = (Vec<[u32; 3]>, Vec<[u32; 3]>, bool)> {
    let exps = prop::array::uniform3(0u32..3).prop_filter("non-constant", |e| e.iter().sum::<u32>() > 0);
    (
        prop::collection::vec(exps.clone(), 1..4),
        prop::collection::vec(exps, 0..3),
        any::<bool>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    // R/J, or R/J ⊕ K for an ideal K, with J and K monomial.
    #[test]
    fn depth_methods_agree_and_ab_holds((j, k, as_ideal) in graded_module()) {
        let r = ring();
        let m = Ideal::maximal_at_origin(&r);
        let jj = Ideal::new(&r, j.iter().map(|e| monomial(&r, *e)).collect()).unwrap();
        let mut module = FPModule::quotient_ring(&jj);
        if !k.is_empty() {
            let kk = Ideal::new(&r, k.iter().map(|e| monomial(&r, *e)).collect()).unwrap();
            let extra = if as_ideal { FPModule::from_ideal(&kk) } else { FPModule::quotient_ring(&kk) };
            module = module.direct_sum(&extra);
        }
        let rep = depth_regseq(&m, &module, 60, 3).unwrap();
        prop_assert_eq!(rep.regseq_depth, rep.ext_depth);
        let mut cur = module.clone();
        for (n, x) in rep.witness.iter().enumerate() {
            cur = cur.mod_element(x);
            prop_assert_eq!(depth_ext(&m, &cur).unwrap(), rep.depth - n - 1);
        }
        let ab = ab_verify(&module, &m).unwrap();
        prop_assert!(ab.holds, "pd {} depth {}", ab.pd, ab.depth_module);
        prop_assert_eq!(ab.depth_ring, 3);
    }
}
