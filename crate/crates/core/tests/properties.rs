use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quotinv::char_series::{exp_half, inv_cosh_half, local_contribution_codim2};
use quotinv::graded_ring::{case_one, case_two, monomials_up_to, RingElement, RingPresentation};
use quotinv::invariants::{base, BordismClass, Family};

fn pres(second: bool) -> Arc<RingPresentation> {
    if second {
        case_two()
    } else {
        case_one()
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Six coefficients, one per monomial of degree ≤ 4 in two degree-2 generators.
fn element(p: &Arc<RingPresentation>, coeffs: &[(i64, i64)]) -> RingElement {
    let terms = monomials_up_to(p.weights(), p.top_degree())
        .into_iter()
        .zip(coeffs)
        .map(|(m, &(n, d))| (m, q(n, d)))
        .collect();
    RingElement::from_terms(p, &terms)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..=30, 1i64..=6), 6)
}

fn degree_two(p: &Arc<RingPresentation>, a: i64, b: i64) -> RingElement {
    let u = RingElement::generator(p, "u").unwrap();
    let v = RingElement::generator(p, "v").unwrap();
    &u.scale(&q(a, 1)) + &v.scale(&q(b, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn commutative_associative_distributive(second: bool, a in coeffs(), b in coeffs(), c in coeffs()) {
        let p = pres(second);
        let (a, b, c) = (element(&p, &a), element(&p, &b), element(&p, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &RingElement::zero(&p), a.clone());
        prop_assert_eq!(&a * &RingElement::one(&p), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reduction_is_idempotent(second: bool, a in coeffs()) {
        let a = element(&pres(second), &a);
        prop_assert_eq!(a.reduce(), a.clone());
        prop_assert_eq!(a.reduce().reduce(), a.reduce());
    }

    #[test]
    fn pairing_is_linear(second: bool, a in coeffs(), b in coeffs(), n in -50i64..=50, d in 1i64..=50) {
        let p = pres(second);
        let (a, b) = (element(&p, &a), element(&p, &b));
        let s = q(n, d);
        prop_assert_eq!((&a + &b).pair_fundamental(), a.pair_fundamental() + b.pair_fundamental());
        prop_assert_eq!(a.scale(&s).pair_fundamental(), &s * a.pair_fundamental());
    }

    #[test]
    fn expression_strings_round_trip(second: bool, a in coeffs()) {
        let p = pres(second);
        let a = element(&p, &a);
        prop_assert_eq!(RingElement::parse(&p, &a.to_expr_string()).unwrap(), a);
    }

    #[test]
    fn sech_is_even_and_exponentials_cancel(second: bool, a in -40i64..=40, b in -40i64..=40) {
        let p = pres(second);
        let c = degree_two(&p, a, b);
        let minus_c = -&c;
        prop_assert_eq!(inv_cosh_half(&c).unwrap(), inv_cosh_half(&minus_c).unwrap());
        prop_assert_eq!(&exp_half(&c).unwrap() * &exp_half(&minus_c).unwrap(), RingElement::one(&p));
        // sech(c/2) = 1 − c²/8 in degree ≤ 4.
        let expected = &RingElement::one(&p) - &(&c * &c).scale(&q(1, 8));
        prop_assert_eq!(inv_cosh_half(&c).unwrap(), expected);
    }

    #[test]
    fn contribution_ignores_fibre_orientation(second: bool, a in -40i64..=40, b in -40i64..=40) {
        let data = base(if second { Family::CaseII } else { Family::CaseI }).unwrap();
        let p = &data.presentation;
        let c = degree_two(p, a, b);
        let zero = RingElement::zero(p);
        prop_assert_eq!(
            local_contribution_codim2(&zero, &c, &data.p1).unwrap(),
            local_contribution_codim2(&zero, &-&c, &data.p1).unwrap()
        );
    }

    #[test]
    fn canonicalization_is_even_and_periodic(x in -1_000_000_000i64..=1_000_000_000) {
        let c = BordismClass::from_i64(x);
        prop_assert_eq!(c, BordismClass::from_i64(-x));
        prop_assert_eq!(c, BordismClass::from_i64(x + 16));
        prop_assert!(c.canonical() <= 8);
        // Brute force: the smaller of the two residues ±x mod 16.
        let r = x.rem_euclid(16) as u8;
        prop_assert_eq!(c.canonical(), r.min(16 - r));
    }
}
