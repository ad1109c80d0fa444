//! The verification roster: every cross-check between closed forms and the
//! symbolic pipeline, classification round-trips, and seeded property sweeps.
//! Each suite reports how many checks ran and the first counterexample.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::char_series::{local_contribution_codim2_with, SeriesKernel};
use crate::classification::{classify, representatives, DiffeoKind, DiffeoType};
use crate::field::{int, ratio, Rational};
use crate::graded_ring::{
    case_one, case_two, intersection_signature, monomials_up_to, RingElement, RingPresentation,
};
use crate::invariants::{
    base, bordism_class, bordism_integer, c_squared_closed_form, c_squared_pairing, eta_closed_form,
    eta_via_fixed_points_with, w2_report, BordismClass, Family, FamilyDescriptor, SignConvention,
};
use crate::moduli::{moduli_row, ModuliTable};

/// Largest `|k|` in the circle-bundle sweep.
pub const SWEEP_K: i64 = 201;
/// Largest Brieskorn exponent in the sweep.
pub const SWEEP_D: i64 = 400;
pub const ROUND_TRIP_COUNT: usize = 50;
pub const MODULI_COUNT: usize = 100;
pub const RANDOM_CASES: usize = 1000;
const SEED: u64 = 0x5eed_2023;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS  {} ({} checks)", self.name, self.checked),
            Some(c) => write!(f, "FAIL  {} (after {} checks): {}", self.name, self.checked, c),
        }
    }
}

struct Suite {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checked: 0, counterexample: None }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn check_result<T, E: fmt::Display>(
        &mut self,
        result: Result<T, E>,
        test: impl FnOnce(&T) -> bool,
        describe: impl FnOnce(&T) -> String,
    ) {
        match result {
            Ok(v) => {
                let ok = test(&v);
                self.check(ok, || describe(&v));
            }
            Err(e) => self.check(false, || format!("error: {e}")),
        }
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome { name: self.name, checked: self.checked, counterexample: self.counterexample }
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "ring presentations",
    "intersection signatures",
    "c² pairing symbolic vs closed form",
    "eta closed-form vs fixed-point",
    "Brieskorn eta via fixed points",
    "bordism integrality and formula agreement",
    "classification round-trip",
    "classification exhaustiveness",
    "moduli distinctness",
    "spin checks",
    "series identities",
    "ring axioms",
    "bordism canonicalization",
];

/// Every descriptor with odd `|k| ≤ 201`, `l ∈ {2, 4}`, in both circle-bundle families.
pub fn bundle_sweep() -> Vec<FamilyDescriptor> {
    let mut out = Vec::new();
    for k in (-SWEEP_K..=SWEEP_K).filter(|k| k % 2 != 0) {
        for l in [2, 4] {
            out.extend(FamilyDescriptor::case_one(k, l));
            out.extend(FamilyDescriptor::case_two(k, l));
        }
    }
    out
}

pub fn brieskorn_sweep() -> Vec<FamilyDescriptor> {
    (0..=SWEEP_D).step_by(2).map(|d| FamilyDescriptor::brieskorn(d).expect("even d")).collect()
}

pub fn run_all(kernel: &SeriesKernel) -> Vec<SuiteOutcome> {
    SUITE_NAMES.iter().map(|name| run_suite(name, kernel).expect("roster name")).collect()
}

/// Run one suite from [`SUITE_NAMES`]; `None` for an unknown name.
pub fn run_suite(name: &str, kernel: &SeriesKernel) -> Option<SuiteOutcome> {
    let i = SUITE_NAMES.iter().position(|n| *n == name)?;
    Some(match i {
        0 => ring_presentations(),
        1 => intersection_signatures(),
        2 => pairing_closed_form(),
        3 => eta_equivalence(kernel),
        4 => brieskorn_eta(kernel),
        5 => bordism_formulas(),
        6 => classification_round_trip(),
        7 => classification_exhaustiveness(),
        8 => moduli_distinctness(kernel),
        9 => spin_checks(),
        10 => series_identities(kernel),
        11 => ring_axioms(),
        _ => bordism_canonicalization(),
    })
}

fn ring_presentations() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[0]);
    for (name, pres, orientation) in [("caseI", case_one(), "u*v"), ("caseII", case_two(), "u^2")] {
        s.check(pres.is_confluent(), || format!("{name} is not confluent"));
        let ranks = pres.basis_ranks();
        let even: Vec<usize> = ranks.iter().step_by(2).copied().collect();
        s.check(even == [1, 2, 1], || format!("{name} basis ranks {even:?}"));
        s.check_result(
            RingElement::parse(&pres, orientation).map(|e| e.pair_fundamental()),
            |p| *p == int(1),
            |p| format!("{name}: ⟨{orientation}⟩ = {p}"),
        );
    }
    s.finish()
}

fn intersection_signatures() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[1]);
    for (name, pres, expected) in [("caseI", case_one(), 0), ("caseII", case_two(), 2)] {
        let sig = intersection_signature(&pres);
        s.check(sig.value() == expected && !sig.is_singular(), || {
            format!("{name}: signature {} (nullity {}), expected {expected}", sig.value(), sig.nullity)
        });
    }
    s.finish()
}

fn pairing_closed_form() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[2]);
    for f in bundle_sweep() {
        let expected = c_squared_closed_form(&f);
        s.check_result(
            c_squared_pairing(&f).map(|p| (p, expected.clone())),
            |(p, e)| e.as_ref().is_ok_and(|e| e == p),
            |(p, e)| format!("{f}: symbolic {p}, closed form {e:?}"),
        );
    }
    s.finish()
}

fn eta_equivalence(kernel: &SeriesKernel) -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[3]);
    for f in bundle_sweep() {
        let closed = eta_closed_form(&f);
        s.check_result(
            eta_via_fixed_points_with(kernel, &f),
            |eta| eta.magnitude() == closed.magnitude() && !eta.sign_known(),
            |eta| format!("(k, l) = ({}, {}) in {}: fixed point {eta}, closed form {closed}", f.k().unwrap(), f.l().unwrap(), f.family()),
        );
        if s.failed() {
            break;
        }
    }
    s.finish()
}

fn brieskorn_eta(kernel: &SeriesKernel) -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[4]);
    for f in brieskorn_sweep() {
        let d = f.d().expect("Brieskorn");
        s.check_result(
            eta_via_fixed_points_with(kernel, &f),
            |eta| eta.value() == Some(ratio(-d, 4)),
            |eta| format!("d = {d}: fixed point {eta}, expected −{d}/4"),
        );
        for m in 0..4 {
            let shifted = FamilyDescriptor::brieskorn(d + 16 * m).expect("even d");
            let diff = eta_closed_form(&shifted).value().zip(eta_closed_form(&f).value()).map(|(a, b)| a - b);
            s.check(diff == Some(int(-4 * m)), || format!("η(Q({})) − η(Q({d})) = {diff:?}", d + 16 * m));
        }
    }
    s.finish()
}

fn bordism_formulas() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[5]);
    for f in bundle_sweep() {
        let (k, l) = (BigInt::from(f.k().unwrap()), BigInt::from(f.l().unwrap()));
        for eps in SignConvention::BOTH {
            // Statement form: (1 + ε/2)(l² + 2kl [+ 2k²]) [− ε].
            let mut base = &l * &l + BigInt::from(2) * &k * &l;
            let mut shift = Rational::from_integer(BigInt::from(0));
            if f.family() == Family::CaseII {
                base += BigInt::from(2) * &k * &k;
                shift = int(eps.value());
            }
            let statement = (int(1) + ratio(eps.value(), 2)) * Rational::from_integer(base) - shift;
            s.check_result(
                bordism_integer(&f, eps),
                |proof| {
                    statement.is_integer()
                        && BordismClass::from_integer(proof) == BordismClass::from_integer(&statement.to_integer())
                },
                |proof| format!("{f}, ε = {eps}: proof formula {proof}, statement formula {statement}"),
            );
        }
    }
    s.finish()
}

fn classification_round_trip() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[6]);
    for t in DiffeoType::ALL {
        for eps in SignConvention::BOTH {
            match representatives(t, eps, ROUND_TRIP_COUNT) {
                Ok(reps) => {
                    s.check(reps.len() == ROUND_TRIP_COUNT, || format!("{t}: {} representatives", reps.len()));
                    for f in reps {
                        s.check_result(classify(&f, eps), |found| *found == t, |found| {
                            format!("{f} (ε = {eps}) classifies as {found}, expected {t}")
                        });
                    }
                }
                Err(e) => s.check(false, || format!("{t}, ε = {eps}: {e}")),
            }
        }
    }
    s.finish()
}

fn classification_exhaustiveness() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[7]);
    let x = |i| DiffeoType::new(DiffeoKind::X, i).expect("even index");
    for f in bundle_sweep() {
        let allowed: &[u8] = match (f.family(), f.l()) {
            (Family::CaseI, _) => &[0, 4, 8],
            (Family::CaseII, Some(4)) => &[2, 6],
            _ => continue,
        };
        let mut types = BTreeSet::new();
        for eps in SignConvention::BOTH {
            s.check_result(
                classify(&f, eps),
                |t| allowed.iter().any(|&i| x(i) == *t),
                |t| format!("{f} (ε = {eps}) classifies as {t}, outside {allowed:?}"),
            );
            if let Ok(t) = classify(&f, eps) {
                types.insert(t);
            }
        }
        if f.family() == Family::CaseI {
            s.check(types.len() == 1, || format!("{f} depends on ε: {types:?}"));
        }
    }
    s.finish()
}

fn moduli_distinctness(kernel: &SeriesKernel) -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[8]);
    for t in DiffeoType::ALL {
        for eps in SignConvention::BOTH {
            let rows = representatives(t, eps, MODULI_COUNT)
                .map_err(crate::moduli::ModuliError::from)
                .and_then(|reps| reps.iter().map(|f| moduli_row(kernel, f, t, eps)).collect::<Result<Vec<_>, _>>());
            let table = match rows {
                Ok(rows) => ModuliTable::from_rows(t, eps, rows),
                Err(e) => {
                    s.check(false, || format!("{t}, ε = {eps}: {e}"));
                    continue;
                }
            };
            s.check(table.all_distinct(), || {
                format!("{t}, ε = {eps}: only {} distinct |η| among {}", table.distinct_count, table.rows.len())
            });
            for (r, row) in table.rows.iter().enumerate() {
                let r = r as i64;
                let expected = match (t.kind(), t.index()) {
                    (DiffeoKind::X, 4) => Some(int(4 * r + 1)),
                    (DiffeoKind::Q, d) => Some(int(-i64::from(d)) / int(4) - int(4 * r)),
                    _ => None,
                };
                if let Some(expected) = expected {
                    let got = if t.kind() == DiffeoKind::Q { row.eta.value() } else { Some(row.eta.magnitude().clone()) };
                    s.check(got.as_ref() == Some(&expected), || {
                        format!("{t}, r = {r}: η = {}, expected {expected}", row.eta)
                    });
                }
            }
        }
    }
    s.finish()
}

fn spin_checks() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[9]);
    for f in bundle_sweep() {
        s.check_result(
            w2_report(&f),
            |r| r.base_w2_nonzero && r.n_spin && !r.x_spin,
            |r| format!("{f}: {r:?}"),
        );
    }
    s.finish()
}

fn random_degree_two(rng: &mut ChaCha8Rng, pres: &Arc<RingPresentation>) -> RingElement {
    let a = rng.gen_range(-20..=20);
    let b = rng.gen_range(-20..=20);
    let u = RingElement::generator(pres, "u").expect("builtin has u");
    let v = RingElement::generator(pres, "v").expect("builtin has v");
    &u.scale(&int(a)) + &v.scale(&int(b))
}

fn series_identities(kernel: &SeriesKernel) -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[10]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for family in [Family::CaseI, Family::CaseII] {
        let data = base(family).expect("circle-bundle family");
        let pres = &data.presentation;
        let zero = RingElement::zero(pres);
        for _ in 0..RANDOM_CASES / 2 {
            let c = random_degree_two(&mut rng, pres);
            let minus_c = -&c;
            s.check_result(
                (kernel.exp_half)(&c).and_then(|a| Ok(&a * &(kernel.exp_half)(&minus_c)?)),
                |p| *p == RingElement::one(pres),
                |p| format!("exp(c/2)·exp(−c/2) = {p} for c = {c}"),
            );
            s.check_result(
                (kernel.inv_cosh_half)(&c).and_then(|a| Ok((a, (kernel.inv_cosh_half)(&minus_c)?))),
                |(a, b)| a == b,
                |(a, b)| format!("sech(c/2) = {a} but sech(−c/2) = {b} for c = {c}"),
            );
            let plus = local_contribution_codim2_with(kernel, &zero, &c, &data.p1);
            let minus = local_contribution_codim2_with(kernel, &zero, &minus_c, &data.p1);
            s.check_result(
                plus.and_then(|a| Ok((a, minus?))),
                |(a, b)| a == b,
                |(a, b)| format!("a(c) = {a}, a(−c) = {b} for c = {c}"),
            );
        }
    }
    s.finish()
}

fn random_element(rng: &mut ChaCha8Rng, pres: &Arc<RingPresentation>) -> RingElement {
    let terms = monomials_up_to(pres.weights(), pres.top_degree())
        .into_iter()
        .map(|m| (m, int(rng.gen_range(-5..=5))))
        .filter(|(_, c)| c != &int(0))
        .collect();
    RingElement::from_terms(pres, &terms)
}

fn ring_axioms() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[11]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let presentations = [case_one(), case_two()];
    for i in 0..RANDOM_CASES {
        let pres = &presentations[i % 2];
        let (a, b, c) = (random_element(&mut rng, pres), random_element(&mut rng, pres), random_element(&mut rng, pres));
        let q = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        s.check(&a * &b == &b * &a, || format!("ab ≠ ba for a = {a}, b = {b}"));
        s.check(&(&a * &b) * &c == &a * &(&b * &c), || format!("(ab)c ≠ a(bc) for a = {a}, b = {b}, c = {c}"));
        s.check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("a(b+c) ≠ ab+ac for a = {a}, b = {b}, c = {c}"));
        s.check(a.reduce() == a, || format!("reduce is not idempotent on {a}"));
        s.check((&a + &b).pair_fundamental() == a.pair_fundamental() + b.pair_fundamental(), || {
            format!("pairing not additive on {a}, {b}")
        });
        s.check(a.scale(&q).pair_fundamental() == &q * a.pair_fundamental(), || {
            format!("pairing not homogeneous on {a}, q = {q}")
        });
    }
    s.finish()
}

fn bordism_canonicalization() -> SuiteOutcome {
    let mut s = Suite::new(SUITE_NAMES[12]);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    for _ in 0..RANDOM_CASES {
        let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let c = BordismClass::from_i64(x);
        s.check(
            c.canonical() <= 8 && c == BordismClass::from_i64(-x) && c == BordismClass::from_i64(x + 16),
            || format!("canonical({x}) = {c}, canonical(−x) = {}, canonical(x+16) = {}", BordismClass::from_i64(-x), BordismClass::from_i64(x + 16)),
        );
    }
    for f in brieskorn_sweep() {
        let d = f.d().expect("Brieskorn");
        s.check_result(bordism_class(&f, SignConvention::Plus), |c| *c == BordismClass::from_i64(d % 16), |c| {
            format!("Q({d}) has class {c}")
        });
    }
    s.finish()
}

/// Deliberately broken series used to confirm that verification catches
/// faults in the fixed-point pipeline.
pub mod mutants {
    use crate::char_series::{SeriesError, SeriesKernel};
    use crate::field::ratio;
    use crate::graded_ring::RingElement;

    /// `1 + c²/8`: the sech series with its quadratic sign flipped.
    pub fn inv_cosh_half_sign_flipped(c: &RingElement) -> Result<RingElement, SeriesError> {
        c.require_degree(2)?;
        Ok(&RingElement::one(c.presentation()) + &(c * c).scale(&ratio(1, 8)))
    }

    pub fn flipped_inv_cosh() -> SeriesKernel {
        SeriesKernel { inv_cosh_half: inv_cosh_half_sign_flipped, ..SeriesKernel::STANDARD }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_sizes() {
        // 202 odd k values, two l values, two families.
        assert_eq!(bundle_sweep().len(), 202 * 2 * 2);
        assert_eq!(brieskorn_sweep().len(), 201);
    }

    #[test]
    fn standard_kernel_passes_every_suite() {
        let outcomes = run_all(&SeriesKernel::STANDARD);
        assert_eq!(outcomes.iter().map(|o| o.name).collect::<Vec<_>>(), SUITE_NAMES);
        for o in &outcomes {
            assert!(o.passed(), "{o}");
            assert!(o.checked > 0, "{o}");
        }
    }

    #[test]
    fn injected_sign_bug_is_caught_with_a_counterexample() {
        let outcomes = run_all(&mutants::flipped_inv_cosh());
        let eta = outcomes.iter().find(|o| o.name == "eta closed-form vs fixed-point").unwrap();
        let msg = eta.counterexample.as_deref().expect("mutant must fail");
        assert!(msg.contains("(k, l) = ("), "{msg}");
        assert!(msg.contains("caseII"), "{msg}");
    }
}
