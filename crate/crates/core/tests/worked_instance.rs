//! The tuple (x²y, xy²) in two variables, checked against independent oracles.

use expd::analysis::{
    destabilization, diagonalize, dropler_intensity, normalization_stage, unionization_stage,
    ExpansionExpr,
};
use expd::expansion::{expand, expand_mixed, expand_pow, residue, totient, MixedDirection, PolyTuple};
use expd::measure::{
    area_value, check_integral_inequality, cross_product, norm_squared, BoxDomain,
};
use expd::polyring::{int, Polynomial, Rational};

fn vars() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn tuple(entries: &[&str]) -> PolyTuple {
    PolyTuple::parse(&vars(), entries).unwrap()
}

fn worked() -> PolyTuple {
    tuple(&["x^2*y", "x*y^2"])
}

fn xy() -> MixedDirection {
    MixedDirection::new(vec![0, 1]).unwrap()
}

/// Entry `j` of the expansion is the sum of the derivatives of the other entries.
fn oracle_expand(t: &PolyTuple, d: usize) -> PolyTuple {
    let derivs: Vec<Polynomial> = t.entries().iter().map(|p| p.partial_derivative(d).unwrap()).collect();
    let entries = (0..derivs.len())
        .map(|j| {
            derivs
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .fold(Polynomial::zero(t.arity()), |acc, (_, p)| acc.try_add(p).unwrap())
        })
        .collect();
    PolyTuple::new(entries).unwrap()
}

#[test]
fn expansion_matches_the_oracle() {
    let mut cur = worked();
    for _ in 0..4 {
        for d in 0..2 {
            assert_eq!(expand(&cur, d).unwrap(), oracle_expand(&cur, d));
        }
        cur = oracle_expand(&cur, 0);
    }
    assert_eq!(expand(&worked(), 0).unwrap(), tuple(&["y^2", "2*x*y"]));
    assert_eq!(expand_pow(&worked(), 0, 2).unwrap(), tuple(&["2*y", "0"]));
}

#[test]
fn totient_is_one_past_the_last_non_null_iterate() {
    let mut cur = worked();
    let mut steps = 0;
    while !cur.is_zero() {
        cur = oracle_expand(&cur, 0);
        steps += 1;
    }
    assert_eq!(totient(&worked(), 0).unwrap(), steps);
    assert_eq!(residue(&worked(), 0).unwrap(), tuple(&["2*y", "0"]));
}

#[test]
fn mixed_value_and_diagonal_spot() {
    let mixed = oracle_expand(&oracle_expand(&worked(), 0), 1);
    assert_eq!(expand_mixed(&worked(), &xy()).unwrap(), mixed);
    let g = diagonalize(&worked(), &xy(), 0).unwrap();
    assert_eq!(g.order, 1);
    assert_eq!(oracle_expand(&g.spot, 0), mixed);
    assert_eq!(g.spot, tuple(&["2*x*y", "x^2"]));
}

#[test]
fn intensity_destabilization_and_stages() {
    let src = ExpansionExpr::new(worked(), xy(), 1).unwrap();
    let r = dropler_intensity(&src, &worked(), 0).unwrap();
    assert_eq!((r.intensity, r.energy, r.admits), (2, 1, true));
    let s = destabilization(&worked(), 0).unwrap();
    assert_eq!((s.stage, s.natural, s.strong), (1, false, false));
    assert_eq!(normalization_stage(&worked(), 0).unwrap().0, 2);
    assert_eq!(unionization_stage(&worked(), 0).unwrap(), 3);
}

#[test]
fn area_over_the_unit_square() {
    // ∫₀¹∫₀¹ (2x, 2y) = (1, 1), and the area adds the entries.
    let a = area_value(&worked(), &xy(), &BoxDomain::unit(&[0, 1])).unwrap();
    assert_eq!(a, int(2));
}

#[test]
fn norm_integral_matches_the_closed_form() {
    let r = check_integral_inequality(&worked(), &xy(), &BoxDomain::unit(&[0, 1]), 1e-9).unwrap();
    let closed = 2.0 * (2f64.sqrt() + 1f64.asinh()) / 3.0;
    assert!((r.lhs - closed).abs() < 1e-9, "{} vs {closed}", r.lhs);
    assert!((r.rhs - 2f64.sqrt()).abs() < 1e-12);
    assert!(r.holds && r.applicable && !r.approximate);
}

#[test]
fn cross_product_of_two_vectors_in_space() {
    let a: Vec<Rational> = [1, 2, 3].iter().map(|&v| int(v)).collect();
    let b: Vec<Rational> = [4, 5, 6].iter().map(|&v| int(v)).collect();
    let c = cross_product(&[a.clone(), b.clone()]).unwrap();
    // The classical formula in three dimensions, up to the orientation convention.
    let classical = [int(2 * 6 - 3 * 5), int(3 * 4 - 6), int(5 - 2 * 4)];
    let same = c.iter().zip(&classical).all(|(u, v)| u == v);
    let flipped = c.iter().zip(&classical).all(|(u, v)| *u == -v.clone());
    assert!(same || flipped, "{c:?}");
    assert_eq!(norm_squared(&c), int(9 + 36 + 9));
    let dot = |u: &[Rational], v: &[Rational]| u.iter().zip(v).map(|(p, q)| p * q).sum::<Rational>();
    assert_eq!(dot(&c, &a), int(0));
    assert_eq!(dot(&c, &b), int(0));
}
