mod common;

use std::collections::HashMap;

use common::{random_poly, rng, small_rational};
use hypercohom_core::linalg::Scalar;
use hypercohom_core::poly::{graded_dimension, monomial_basis, GradedPoly, Monomial};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn monomial_counts_are_binomials() {
    assert_eq!(monomial_basis(5, 15).len(), 3876);
    assert_eq!(graded_dimension(5, 15), 3876);
    for nvars in 1..=5 {
        for deg in 0..=8u32 {
            let mut binom: u64 = 1;
            // C(deg + nvars - 1, nvars - 1)
            for i in 1..nvars as u64 {
                binom = binom * (deg as u64 + i) / i;
            }
            assert_eq!(monomial_basis(nvars, deg).len() as u64, binom);
        }
    }
}

#[test]
fn basis_is_strictly_decreasing() {
    let b = monomial_basis(4, 5);
    assert!(b.windows(2).all(|w| w[0] > w[1]));
    assert_eq!(b[0].exponents(), &[5, 0, 0, 0]);
    assert_eq!(b.last().unwrap().exponents(), &[0, 0, 0, 5]);
}

#[test]
fn euler_identity_on_random_quartics() {
    let mut g = rng(11);
    for _ in 0..20 {
        let f = random_poly(&mut g, 4, 4, 0.4);
        let mut sum = GradedPoly::zero(4, 4);
        for i in 0..4 {
            sum = sum.add(&GradedPoly::var(4, i).mul(&f.partial(i)).unwrap()).unwrap();
        }
        assert_eq!(sum, f.scale(&Scalar::from_integer(4.into())));
    }
}

/// Coefficient dictionary product computed pair by pair on raw exponents.
fn convolution(a: &GradedPoly, b: &GradedPoly) -> HashMap<Vec<u32>, Scalar> {
    let mut out: HashMap<Vec<u32>, Scalar> = HashMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e: Vec<u32> = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn multiplication_matches_convolution() {
    let mut g = rng(12);
    for _ in 0..30 {
        let a = random_poly(&mut g, 3, 3, 0.5);
        let b = random_poly(&mut g, 3, 2, 0.5);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.degree(), 5);
        let oracle = convolution(&a, &b);
        assert_eq!(prod.num_terms(), oracle.len());
        for (e, c) in &oracle {
            assert_eq!(&prod.coefficient(&Monomial::new(e.clone())), c);
        }
    }
}

fn poly(nvars: usize, degree: u32) -> impl Strategy<Value = GradedPoly> {
    any::<u64>().prop_map(move |seed| {
        let mut g = rng(seed);
        random_poly(&mut g, nvars, degree as i64, 0.4)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_format_roundtrip(p in poly(4, 3)) {
        prop_assume!(!p.is_zero());
        let text = p.to_string();
        prop_assert_eq!(GradedPoly::parse(&text, 4).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in poly(3, 2), b in poly(3, 2), c in poly(3, 1)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&c).unwrap(), c.mul(&a).unwrap());
        let lhs = a.add(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let abc = a.mul(&b).unwrap().mul(&c).unwrap();
        prop_assert_eq!(abc, a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn partials_are_derivations(a in poly(3, 2), b in poly(3, 3), var in 0usize..3) {
        let lhs = a.mul(&b).unwrap().partial(var);
        let rhs = a.partial(var).mul(&b).unwrap().add(&a.mul(&b.partial(var)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn scaling_by_rationals() {
    let mut g = rng(13);
    let p = random_poly(&mut g, 3, 2, 0.8);
    let c = small_rational(&mut g);
    let scaled = p.scale(&c);
    for (m, v) in p.terms() {
        assert_eq!(scaled.coefficient(m), v * &c);
    }
}
