mod common;

use common::{q, NPoly};
use num_rational::BigRational;
use orderforge_core::azumaya::{dual_numbers, free_twisted, twisted_cokernel, twisted_end, unfold, Side};
use orderforge_core::{AlgElem, Field, MonomialOrder, Poly, Ring, SCAlgebra};
use proptest::prelude::*;

fn ring() -> Ring {
    Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
}

fn quat(r: &Ring) -> SCAlgebra {
    SCAlgebra::quaternion(r, &r.constant(-1), &r.constant(-1)).unwrap()
}

fn linear(r: &Ring) -> impl Strategy<Value = Poly> {
    let r = r.clone();
    (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2).prop_map(move |(a, b, c, d)| r.parse(&format!("{a}*u + {b}*v + {c}*w + {d}")).unwrap())
}

fn element(a: &SCAlgebra) -> impl Strategy<Value = AlgElem> {
    let a = a.clone();
    prop::collection::vec(linear(a.ring()), 4).prop_map(move |c| a.element(c).unwrap())
}

/// `Nrd` of `(x0, x1, x2, x3)` in `(a, b)` written out directly.
fn norm_formula(x: &AlgElem, a: i64, b: i64) -> NPoly {
    let c: Vec<NPoly> = x.coords.iter().map(NPoly::from_lib).collect();
    let k = |n: i64| NPoly::constant(3, q(n));
    c[0].mul(&c[0])
        .sub(&k(a).mul(&c[1]).mul(&c[1]))
        .sub(&k(b).mul(&c[2]).mul(&c[2]))
        .add(&k(a * b).mul(&c[3]).mul(&c[3]))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn left_regular_determinant_is_norm_squared(x in element(&quat(&ring()))) {
        let a = x.algebra.clone();
        let l = a.regular_representation(&x, Side::Left);
        let n = norm_formula(&x, -1, -1);
        prop_assert_eq!(NPoly::from_lib(&l.det()), n.mul(&n));
        prop_assert_eq!(NPoly::from_lib(&a.reduced_norm(&x).unwrap()), n);
    }

    #[test]
    fn norm_is_multiplicative(x in element(&quat(&ring())), y in element(&quat(&ring()))) {
        let a = x.algebra.clone();
        let lhs = a.reduced_norm(&a.mul(&x, &y)).unwrap();
        let rhs = &a.reduced_norm(&x).unwrap() * &a.reduced_norm(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn regular_representation_is_multiplicative(x in element(&quat(&ring())), y in element(&quat(&ring()))) {
        let a = x.algebra.clone();
        let xy = a.mul(&x, &y);
        prop_assert_eq!(a.regular_representation(&xy, Side::Left),
            a.regular_representation(&x, Side::Left).mul(&a.regular_representation(&y, Side::Left)));
        prop_assert_eq!(a.regular_representation(&xy, Side::Right),
            a.regular_representation(&y, Side::Right).mul(&a.regular_representation(&x, Side::Right)));
    }

    #[test]
    fn nonzero_norm_gives_an_inverse_over_the_fraction_field(x in element(&quat(&ring()))) {
        let a = x.algebra.clone();
        let n = a.reduced_norm(&x).unwrap();
        prop_assume!(!n.is_zero());
        // x · conj(x) = Nrd(x) · 1, so conj(x)/Nrd(x) is a two-sided inverse
        prop_assert_eq!(a.mul(&x, &a.conj(&x).unwrap()), a.scalar(&n));
        prop_assert_eq!(a.mul(&a.conj(&x).unwrap(), &x), a.scalar(&n));
    }

    #[test]
    fn unfolding_is_the_block_stack(f in element(&quat(&ring())), g in element(&quat(&ring()))) {
        let a = f.algebra.clone();
        prop_assume!(f != a.zero() || g != a.zero());
        let e = twisted_cokernel(&a, &f, &g).unwrap();
        let stack = a.regular_representation(&f, Side::Right).vstack(&a.regular_representation(&g, Side::Right));
        prop_assert_eq!(e.unfolded.presentation(), &stack);
        prop_assert_eq!(&unfold(&a, &e.relations, 2), &stack);
    }
}

#[test]
fn involution_identities_on_basis() {
    let r = ring();
    let a = quat(&r);
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (a.basis(i), a.basis(j));
            assert_eq!(a.conj(&a.mul(&x, &y)).unwrap(), a.mul(&a.conj(&y).unwrap(), &a.conj(&x).unwrap()));
            for k in 0..4 {
                let z = a.basis(k);
                assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
            }
        }
    }
}

fn enveloping_constants(a: &SCAlgebra) -> Vec<Vec<i64>> {
    let m = a.enveloping_matrix();
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let p = m.get(i, j);
                    assert!(p.is_constant());
                    p.to_string().parse::<i64>().unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn enveloping_determinant_over_q() {
    let r = ring();
    let a = quat(&r);
    let ints = enveloping_constants(&a);
    assert_eq!(ints.len(), 16);
    let d = common::det_q(ints.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect());
    assert!(d != BigRational::from_integer(0.into()));
    let rep = a.azumaya_test();
    assert!(rep.azumaya);
    assert_eq!(NPoly::from_lib(&rep.det), NPoly::constant(3, d));
}

#[test]
fn enveloping_determinant_over_f3() {
    let r = Ring::polynomial(Field::prime(3).unwrap(), &["u", "v", "w"], MonomialOrder::GrevLex).unwrap();
    let a = quat(&r);
    let ints = enveloping_constants(&a);
    assert_ne!(common::det_mod(&ints, 3), 0);
    assert!(a.azumaya_test().azumaya);
}

#[test]
fn nilpotent_algebra_fails_everywhere() {
    let r = ring();
    let rep = dual_numbers(&r).azumaya_test();
    assert!(!rep.azumaya && rep.det.is_zero() && rep.locus.is_zero());
}

#[test]
fn end_of_free_column_is_the_opposite_algebra() {
    let r = ring();
    let a = quat(&r);
    let end = twisted_end(&free_twisted(&a, 1)).unwrap();
    assert_eq!(end.module.free_rank(), Some(4));
    assert!(end.check_associative() && end.check_multiplication());
    // the action is by right multiplications: each generator acts as R_q for
    // the algebra element q it sends 1 to
    for act in &end.action {
        let q = a.element(act.col(0)).unwrap();
        assert_eq!(act, &a.regular_representation(&q, Side::Right));
    }
}

#[test]
fn end_of_a_certified_pair_has_generic_rank_four() {
    let r = ring();
    let a = quat(&r);
    let f = a.parse_element("v + u*i").unwrap();
    let g = a.parse_element("w + u*j").unwrap();
    let e = twisted_cokernel(&a, &f, &g).unwrap();
    let pres: Vec<Vec<NPoly>> = {
        let m = e.unfolded.presentation();
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| NPoly::from_lib(m.get(i, j))).collect()).collect()
    };
    assert_eq!(8 - common::generic_rank(&pres, 3), 4);
    let end = twisted_end(&e).unwrap();
    assert_eq!(end.generic_rank().unwrap(), 4);
    assert!(end.check_multiplication());
    assert!(end.module.free_rank().is_none());
}

#[test]
fn degenerate_presentation_is_an_error() {
    let r = ring();
    let a = dual_numbers(&r);
    let e = twisted_cokernel(&a, &a.basis(1), &a.zero()).unwrap();
    assert!(!e.injective);
    assert!(twisted_end(&e).is_err());
}
