mod common;

use common::{NPoly, Ord};
use orderforge_core::groebner::{buchberger, normal_form, syzygies, GroebnerBasis};
use orderforge_core::{Field, Ideal, Matrix, MonomialOrder, Poly, Ring};
use proptest::prelude::*;

fn ring3(order: MonomialOrder) -> Ring {
    Ring::polynomial(Field::Rational, &["u", "v", "w"], order).unwrap()
}

fn sorted(mut v: Vec<NPoly>, ord: Ord) -> Vec<NPoly> {
    v.sort_by(|a, b| common::cmp(ord, &b.lead(ord).0, &a.lead(ord).0));
    v
}

fn lib_gb(gens: &[Poly], order: MonomialOrder) -> Vec<NPoly> {
    buchberger(gens, order).unwrap().polys().iter().map(NPoly::from_lib).collect()
}

fn oracle_gb(gens: &[Poly], ord: Ord) -> Vec<NPoly> {
    common::groebner(&gens.iter().map(NPoly::from_lib).collect::<Vec<_>>(), ord)
}

#[test]
fn lex_basis_matches_naive_buchberger() {
    let r = ring3(MonomialOrder::Lex);
    let gens = vec![r.parse("u*v - w^2").unwrap(), r.parse("u^2 - v*w").unwrap()];
    let got = sorted(lib_gb(&gens, MonomialOrder::Lex), Ord::Lex);
    let want = oracle_gb(&gens, Ord::Lex);
    assert_eq!(got, want);
    assert!(buchberger(&gens, MonomialOrder::Lex).unwrap().verify());
}

#[test]
fn trivial_bases() {
    let r = ring3(MonomialOrder::GrevLex);
    let uv = vec![r.parse("u").unwrap(), r.parse("v").unwrap()];
    let gb = buchberger(&uv, MonomialOrder::GrevLex).unwrap();
    assert_eq!(gb.polys().len(), 2);
    let lin = vec![r.parse("u - v").unwrap(), r.parse("u + v").unwrap()];
    assert_eq!(
        sorted(lib_gb(&lin, MonomialOrder::GrevLex), Ord::GrevLex),
        sorted(lib_gb(&uv, MonomialOrder::GrevLex), Ord::GrevLex)
    );
    assert!(buchberger(&[], MonomialOrder::GrevLex).is_err());
    assert!(GroebnerBasis::of_ideal(&r, &[]).polys().is_empty());
}

#[test]
fn normal_forms() {
    let r = ring3(MonomialOrder::GrevLex);
    let gb = buchberger(&[r.parse("u - v").unwrap()], MonomialOrder::GrevLex).unwrap();
    assert_eq!(normal_form(&r.parse("u^2").unwrap(), &gb), r.parse("v^2").unwrap());
    let gb = buchberger(&[r.parse("u").unwrap(), r.parse("v").unwrap()], MonomialOrder::GrevLex).unwrap();
    assert!(normal_form(&r.parse("u*w + v^3").unwrap(), &gb).is_zero());
}

#[test]
fn koszul_syzygies_generate_the_syzygy_module() {
    let r = ring3(MonomialOrder::GrevLex);
    let cols: Vec<Vec<Poly>> = ["u", "v", "w"].iter().map(|s| vec![r.parse(s).unwrap()]).collect();
    let syz = syzygies(&r, 1, &cols);
    let p = |s: &str| r.parse(s).unwrap();
    let koszul = vec![
        vec![p("-v"), p("u"), p("0")],
        vec![p("-w"), p("0"), p("u")],
        vec![p("0"), p("-w"), p("v")],
    ];
    // every returned vector is a syzygy, checked by direct substitution
    for s in &syz {
        let total = s.iter().zip(&cols).fold(NPoly::zero(), |acc, (a, c)| acc.add(&NPoly::from_lib(a).mul(&NPoly::from_lib(&c[0]))));
        assert!(total.is_zero());
    }
    let a = GroebnerBasis::of_module(&r, 3, &syz);
    let b = GroebnerBasis::of_module(&r, 3, &koszul);
    assert!(koszul.iter().all(|k| a.contains_vec(k)));
    assert!(syz.iter().all(|s| b.contains_vec(s)));
}

#[test]
fn colon_ideal_by_membership() {
    let r = ring3(MonomialOrder::GrevLex);
    let i = Ideal::parse(&r, &["u*w", "v*w"]).unwrap();
    let j = Ideal::parse(&r, &["u", "v"]).unwrap();
    let c = i.colon(&j);
    let ogb = oracle_gb(i.gens(), Ord::GrevLex);
    for g in c.basis() {
        for h in j.gens() {
            assert!(common::contains(&ogb, &NPoly::from_lib(&g).mul(&NPoly::from_lib(h)), Ord::GrevLex));
        }
    }
    assert_eq!(c, Ideal::parse(&r, &["w"]).unwrap());
}

#[test]
fn dimensions_match_brute_force_independent_sets() {
    let r = ring3(MonomialOrder::GrevLex);
    for (gens, dim) in [(vec!["u", "v", "w"], 0), (vec!["u^2+v^2", "w"], 1), (vec!["u*v", "u*w"], 2), (vec!["1"], -1)] {
        let i = Ideal::parse(&r, &gens).unwrap();
        let ogb = oracle_gb(i.gens(), Ord::GrevLex);
        assert_eq!(common::dimension(&ogb, 3, Ord::GrevLex), dim);
        assert_eq!(i.krull_dim(), dim);
    }
}

#[test]
fn output_independent_of_thread_count() {
    let r = ring3(MonomialOrder::GrevLex);
    let gens: Vec<Poly> = ["u^3 - v*w^2 + 1", "u*v^2 - w^3", "u^2*w - v^2 + u"].iter().map(|s| r.parse(s).unwrap()).collect();
    let run = |t: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
        pool.install(|| buchberger(&gens, MonomialOrder::GrevLex).unwrap().to_strings())
    };
    assert_eq!(run(1), run(4));
}

fn small_poly(r: &Ring) -> impl Strategy<Value = Poly> {
    let r = r.clone();
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2, 0u32..=1), 1..4).prop_map(move |terms| {
        let mut acc = r.zero();
        for (c, a, b, d) in terms {
            let t = r.parse(&format!("{c}*u^{a}*v^{b}*w^{d}")).unwrap();
            acc = &acc + &t;
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn reduced_basis_matches_oracle(gens in prop::collection::vec(small_poly(&ring3(MonomialOrder::GrevLex)), 1..4), lex in any::<bool>()) {
        let (order, ord) = if lex { (MonomialOrder::Lex, Ord::Lex) } else { (MonomialOrder::GrevLex, Ord::GrevLex) };
        let got = sorted(lib_gb(&gens, order), ord);
        let want = oracle_gb(&gens, ord);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn every_s_pair_reduces_to_zero(gens in prop::collection::vec(small_poly(&ring3(MonomialOrder::GrevLex)), 1..4)) {
        let gb = lib_gb(&gens, MonomialOrder::GrevLex);
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                prop_assert!(common::reduce(&common::spoly(&gb[i], &gb[j], Ord::GrevLex), &gb, Ord::GrevLex).is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(gens in prop::collection::vec(small_poly(&ring3(MonomialOrder::GrevLex)), 1..3),
                                          p in small_poly(&ring3(MonomialOrder::GrevLex)),
                                          s in small_poly(&ring3(MonomialOrder::GrevLex))) {
        let r = gens[0].ring().clone();
        let gb = buchberger(&gens, MonomialOrder::GrevLex).unwrap();
        let p = p.transfer(&r);
        let s = s.transfer(&r);
        let nf = normal_form(&p, &gb);
        prop_assert_eq!(normal_form(&nf, &gb), nf.clone());
        let lhs = normal_form(&(&p + &s), &gb);
        let rhs = &nf + &normal_form(&s, &gb);
        prop_assert_eq!(lhs, rhs);
        let diff = &p - &nf;
        prop_assert!(common::contains(&oracle_gb(&gens, Ord::GrevLex), &NPoly::from_lib(&diff), Ord::GrevLex));
    }

    #[test]
    fn codim_plus_dim_is_dim(gens in prop::collection::vec(small_poly(&ring3(MonomialOrder::GrevLex)), 1..4)) {
        let r = gens[0].ring().clone();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let d = i.krull_dim();
        prop_assert_eq!(d, common::dimension(&oracle_gb(&gens, Ord::GrevLex), 3, Ord::GrevLex));
        if d >= 0 {
            prop_assert_eq!(i.codim().finite().unwrap() as i64 + d, 3);
        }
    }
}

#[test]
fn matrix_determinant_matches_cofactor_oracle() {
    let r = ring3(MonomialOrder::GrevLex);
    let rows = vec![
        vec!["u", "v^2", "w + 1"],
        vec!["v - w", "u*w", "2"],
        vec!["1", "u + v", "w^2"],
    ];
    let m = Matrix::from_rows(&r, rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect()).unwrap();
    let nm: Vec<Vec<NPoly>> = rows.iter().map(|row| row.iter().map(|s| NPoly::from_lib(&r.parse(s).unwrap())).collect()).collect();
    assert_eq!(NPoly::from_lib(&m.det()), common::det(&nm));
}
