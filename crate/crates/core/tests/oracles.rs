//! Independent oracles: hand-derived intersection forms, a characteristic
//! polynomial signature count, and closed forms written out from scratch.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use quotinv::classification::{classify, DiffeoType};
use quotinv::graded_ring::{case_one, case_two, intersection_matrix, intersection_signature, parse_presentation};
use quotinv::invariants::{
    bordism_class, c_squared_pairing, eta_via_fixed_points, BordismClass, FamilyDescriptor, SignConvention,
};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Characteristic polynomial coefficients `[1, c₁, …, cₙ]` of `det(tI − A)`
/// by Faddeev–LeVerrier.
fn char_poly(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mul = |x: &[Vec<Q>], y: &[Vec<Q>]| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Q::zero(), |s, t| s + &x[i][t] * &y[t][j])).collect())
            .collect()
    };
    let mut coeffs = vec![q(1)];
    let mut m: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { Q::zero() }).collect()).collect();
    for k in 1..=n {
        let am = mul(a, &m);
        let trace = (0..n).fold(Q::zero(), |s, i| s + &am[i][i]);
        let c = -trace / q(k as i64);
        for i in 0..n {
            m[i] = (0..n).map(|j| am[i][j].clone() + if i == j { c.clone() } else { Q::zero() }).collect();
        }
        coeffs.push(c);
    }
    coeffs
}

fn sign_changes(coeffs: &[Q]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// For a real symmetric matrix all roots are real, so Descartes' rule counts
/// positive and negative eigenvalues exactly.
fn oracle_signature(a: &[Vec<Q>]) -> i64 {
    let p = char_poly(a);
    let positive = sign_changes(&p);
    let mirrored: Vec<Q> = p.iter().enumerate().map(|(i, c)| if (p.len() - 1 - i) % 2 == 1 { -c } else { c.clone() }).collect();
    let negative = sign_changes(&mirrored);
    positive as i64 - negative as i64
}

fn matrix(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// The hand-derived form, laid out in whatever basis order the ring reports.
fn expected_matrix(pres: &std::sync::Arc<quotinv::graded_ring::RingPresentation>, pair: impl Fn(&str, &str) -> i64) -> Vec<Vec<Q>> {
    let names: Vec<String> = pres.basis(2).iter().map(|m| pres.format_monomial(m, false)).collect();
    names.iter().map(|a| names.iter().map(|b| q(pair(a, b))).collect()).collect()
}

#[test]
fn intersection_forms_match_hand_derivation() {
    // u² = −uv, v² = 0, ⟨uv⟩ = 1.
    let one = case_one();
    let expected = expected_matrix(&one, |a, b| match (a, b) {
        ("u", "u") => -1,
        ("v", "v") => 0,
        _ => 1,
    });
    assert_eq!(intersection_matrix(&one), expected);
    // ūv̄ = −ū², v̄² = 2ū², ⟨ū²⟩ = 1.
    let two = case_two();
    let expected = expected_matrix(&two, |a, b| match (a, b) {
        ("u", "u") => 1,
        ("v", "v") => 2,
        _ => -1,
    });
    assert_eq!(intersection_matrix(&two), expected);
}

#[test]
fn signatures_agree_with_characteristic_polynomial() {
    for pres in [case_one(), case_two()] {
        let m = intersection_matrix(&pres);
        assert_eq!(intersection_signature(&pres).value(), oracle_signature(&m));
    }
    assert_eq!(oracle_signature(&intersection_matrix(&case_one())), 0);
    assert_eq!(oracle_signature(&intersection_matrix(&case_two())), 2);

    let cp2_blown_up = parse_presentation(
        "generators: h:2, e:2\nrelations: h*e, e^2 + h^2\norientation: h^2\n",
    )
    .unwrap();
    let pres = std::sync::Arc::new(cp2_blown_up);
    assert_eq!(intersection_signature(&pres).value(), oracle_signature(&intersection_matrix(&pres)));
    assert_eq!(intersection_signature(&pres).value(), 0);
}

#[test]
fn inertia_matches_oracle_on_assorted_forms() {
    use quotinv::graded_ring::inertia;
    let forms: Vec<Vec<Vec<Q>>> = vec![
        matrix(&[&[0, 1], &[1, 0]]),
        matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -3]]),
        matrix(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]),
        matrix(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]),
        matrix(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 10]]),
    ];
    for f in forms {
        let s = inertia(f.clone());
        assert_eq!(s.value(), oracle_signature(&f), "{f:?}");
    }
}

fn sweep() -> impl Iterator<Item = (i64, i64)> {
    (-201i64..=201).filter(|k| k % 2 != 0).flat_map(|k| [(k, 2), (k, 4)])
}

#[test]
fn pairings_match_quadratic_form_oracle() {
    // c = −l·u + k·v evaluated on the hand-derived matrices.
    for (k, l) in sweep() {
        let (a, b) = (-l, k);
        let case_i = -a * a + 2 * a * b;
        let case_ii = a * a - 2 * a * b + 2 * b * b;
        assert_eq!(c_squared_pairing(&FamilyDescriptor::case_one(k, l).unwrap()).unwrap(), BigInt::from(case_i));
        assert_eq!(c_squared_pairing(&FamilyDescriptor::case_two(k, l).unwrap()).unwrap(), BigInt::from(case_ii));
        assert_eq!(case_i, -l * l - 2 * k * l);
        assert_eq!(case_ii, l * l + 2 * k * l + 2 * k * k);
    }
}

#[test]
fn eta_magnitudes_match_closed_form_oracle() {
    for (k, l) in sweep() {
        let one = eta_via_fixed_points(&FamilyDescriptor::case_one(k, l).unwrap()).unwrap();
        let two = eta_via_fixed_points(&FamilyDescriptor::case_two(k, l).unwrap()).unwrap();
        assert_eq!(*one.magnitude(), Q::new(BigInt::from((l * l + 2 * k * l).abs()), BigInt::from(8)));
        assert_eq!(*two.magnitude(), Q::new(BigInt::from((2 + l * l + 2 * k * l + 2 * k * k).abs()), BigInt::from(8)));
        assert!(!one.sign_known() && !two.sign_known());
    }
    for d in (0..=400).step_by(2) {
        let eta = eta_via_fixed_points(&FamilyDescriptor::brieskorn(d).unwrap()).unwrap();
        assert_eq!(eta.value(), Some(Q::new(BigInt::from(-d), BigInt::from(4))));
    }
}

#[test]
fn bordism_classes_match_integer_oracle() {
    // Statement form, computed in i64 with ε/2 cleared: 2P = (2 + ε)·c² − ε·sig.
    for (k, l) in sweep() {
        for (eps, s) in [(1i64, SignConvention::Plus), (-1, SignConvention::Minus)] {
            let c1 = -l * l - 2 * k * l;
            let c2 = l * l + 2 * k * l + 2 * k * k;
            let p1 = ((2 + eps) * c1) / 2;
            let p2 = ((2 + eps) * c2 - 2 * eps) / 2;
            assert_eq!((2 + eps) * c1 % 2, 0);
            let one = FamilyDescriptor::case_one(k, l).unwrap();
            let two = FamilyDescriptor::case_two(k, l).unwrap();
            assert_eq!(bordism_class(&one, s).unwrap(), BordismClass::from_i64(p1));
            assert_eq!(bordism_class(&two, s).unwrap(), BordismClass::from_i64(p2));
        }
    }
}

#[test]
fn known_classifications() {
    let x = |s: &str| s.parse::<DiffeoType>().unwrap();
    let one = |k, l| FamilyDescriptor::case_one(k, l).unwrap();
    let two = |k, l| FamilyDescriptor::case_two(k, l).unwrap();
    for s in SignConvention::BOTH {
        assert_eq!(classify(&one(-1, 2), s).unwrap(), x("X0"));
        assert_eq!(classify(&one(1, 2), s).unwrap(), x("X4"));
        assert_eq!(classify(&one(3, 2), s).unwrap(), x("X8"));
        assert_eq!(classify(&FamilyDescriptor::brieskorn(6).unwrap(), s).unwrap(), x("Q6"));
        assert_eq!(classify(&FamilyDescriptor::brieskorn(26).unwrap(), s).unwrap(), x("Q6"));
    }
    assert_eq!(classify(&two(5, 4), SignConvention::Plus).unwrap(), x("X2"));
    assert_eq!(classify(&two(1, 4), SignConvention::Minus).unwrap(), x("X2"));
    assert_eq!(classify(&two(1, 4), SignConvention::Plus).unwrap(), x("X6"));
    assert_eq!(classify(&two(-3, 4), SignConvention::Minus).unwrap(), x("X6"));
}
