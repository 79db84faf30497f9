//! Randomized algebraic laws of polynomials and tuples.

use expd::expansion::{contract, expand, value_at, MixedDirection, PolyTuple};
use expd::measure::{area_value, BoxDomain};
use expd::polyring::{int, parse_poly, rat, Monomial, Polynomial, Rational};
use num::{BigInt, Zero};
use proptest::prelude::*;

const ARITY: usize = 3;

fn vars() -> Vec<String> {
    vec!["x".into(), "y".into(), "z".into()]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], rational()), 0..6).prop_map(|terms| {
        Polynomial::from_terms(ARITY, terms.into_iter().map(|(e, c)| (Monomial::new(e.to_vec()), c)))
    })
}

fn tuple() -> impl Strategy<Value = PolyTuple> {
    prop::collection::vec(poly(), 2..5).prop_map(|es| PolyTuple::new(es).unwrap())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), ARITY)
}

fn bound() -> impl Strategy<Value = (Rational, Rational)> {
    (rational(), rational())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_commutative_group(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.try_add(&q).unwrap(), q.try_add(&p).unwrap());
        prop_assert_eq!(
            p.try_add(&q).unwrap().try_add(&r).unwrap(),
            p.try_add(&q.try_add(&r).unwrap()).unwrap()
        );
        prop_assert!(p.try_sub(&p).unwrap().is_zero());
        prop_assert_eq!(p.try_add(&Polynomial::zero(ARITY)).unwrap(), p);
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert_eq!(
            p.mul(&q.try_add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().try_add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(p.mul(&Polynomial::constant(ARITY, int(1))).unwrap(), p);
    }

    #[test]
    fn derivative_is_linear(p in poly(), q in poly(), a in rational(), b in rational(), i in 0..ARITY) {
        let lhs = Polynomial::linear_combine(&a, &p, &b, &q).unwrap().partial_derivative(i).unwrap();
        let rhs = Polynomial::linear_combine(
            &a, &p.partial_derivative(i).unwrap(), &b, &q.partial_derivative(i).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_obeys_the_product_rule(p in poly(), q in poly(), i in 0..ARITY) {
        let lhs = p.mul(&q).unwrap().partial_derivative(i).unwrap();
        let rhs = p.partial_derivative(i).unwrap().mul(&q).unwrap()
            .try_add(&p.mul(&q.partial_derivative(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antiderivative_is_a_right_inverse(p in poly(), i in 0..ARITY) {
        prop_assert_eq!(p.antiderivative(i).unwrap().partial_derivative(i).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in poly(), q in poly(), v in rational(), i in 0..ARITY) {
        let s = |f: &Polynomial| f.substitute(i, &v).unwrap();
        prop_assert_eq!(s(&p.try_add(&q).unwrap()), s(&p).try_add(&s(&q)).unwrap());
        prop_assert_eq!(s(&p.mul(&q).unwrap()), s(&p).mul(&s(&q)).unwrap());
    }

    #[test]
    fn evaluation_agrees_with_full_substitution(p in poly(), pt in point()) {
        let mut s = p.clone();
        for (i, v) in pt.iter().enumerate() {
            s = s.substitute(i, v).unwrap();
        }
        prop_assert_eq!(s.constant_value().unwrap(), p.evaluate(&pt).unwrap());
    }

    #[test]
    fn box_integrals_do_not_depend_on_order(p in poly(), bx in bound(), by in bound(), bz in bound()) {
        let fwd = [(0, bx.0.clone(), bx.1.clone()), (1, by.0.clone(), by.1.clone()), (2, bz.0.clone(), bz.1.clone())];
        let rev = [(2, bz.0, bz.1), (0, bx.0, bx.1), (1, by.0, by.1)];
        prop_assert_eq!(p.integrate_box(&fwd).unwrap(), p.integrate_box(&rev).unwrap());
    }

    #[test]
    fn degree_in_a_variable_adds_under_products(p in poly(), q in poly(), i in 0..ARITY) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(pq.x_index(i).unwrap(), p.x_index(i).unwrap() + q.x_index(i).unwrap());
    }

    #[test]
    fn formatting_round_trips(p in poly()) {
        let text = p.format(&vars());
        prop_assert_eq!(parse_poly(&text, &vars()).unwrap(), p);
    }

    #[test]
    fn expansion_is_linear(a in tuple(), b in tuple(), w in rational(), m in rational(), d in 0..ARITY) {
        prop_assume!(a.len() == b.len());
        let lhs = expand(&PolyTuple::linear_combine(&w, &a, &m, &b).unwrap(), d).unwrap();
        let rhs = PolyTuple::linear_combine(&w, &expand(&a, d).unwrap(), &m, &expand(&b, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansions_commute(t in tuple(), i in 0..ARITY, j in 0..ARITY) {
        prop_assert_eq!(
            expand(&expand(&t, i).unwrap(), j).unwrap(),
            expand(&expand(&t, j).unwrap(), i).unwrap()
        );
    }

    #[test]
    fn contraction_is_undone_by_expansion(t in tuple(), d in 0..ARITY) {
        prop_assert_eq!(expand(&contract(&t, d).unwrap(), d).unwrap(), t);
    }

    #[test]
    fn area_is_linear(a in tuple(), b in tuple(), w in rational(), m in rational()) {
        prop_assume!(a.len() == b.len());
        let path = MixedDirection::new(vec![0, 1]).unwrap();
        let bx = BoxDomain::new(vec![(0, rat(-1, 2), int(1)), (1, int(0), int(2))]).unwrap();
        // Areas are numbers only when nothing depends on z, so fix it first.
        let a = value_at(&a, &[(2, int(0))]).unwrap();
        let b = value_at(&b, &[(2, int(0))]).unwrap();
        let combined = PolyTuple::linear_combine(&w, &a, &m, &b).unwrap();
        let lhs = area_value(&combined, &path, &bx).unwrap();
        let rhs = &w * area_value(&a, &path, &bx).unwrap() + &m * area_value(&b, &path, &bx).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn zero_has_no_degree_contribution() {
    let p = Polynomial::zero(ARITY);
    assert!(p.mul(&parse_poly("x^2 + y", &vars()).unwrap()).unwrap().is_zero());
    assert!(Rational::zero().is_zero());
}
