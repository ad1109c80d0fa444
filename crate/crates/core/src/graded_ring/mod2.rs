use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::field::{rational_mod2, Gf2, Rational};

use super::element::{same_presentation, RingElement};
use super::error::RingError;
use super::monomial::Monomial;
use super::parse::{parse_expr, FreeEvaluator};
use super::presentation::RingPresentation;
use super::rewrite::{add_scaled, Terms};

/// A class with GF(2) coefficients, reduced by the relations taken mod 2.
#[derive(Clone, Debug)]
pub struct Mod2Element {
    pres: Arc<RingPresentation>,
    terms: BTreeSet<Monomial>,
}

impl PartialEq for Mod2Element {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.terms == other.terms
    }
}

impl Mod2Element {
    fn from_gf2(pres: &Arc<RingPresentation>, terms: &Terms<Gf2>) -> Self {
        let reduced = pres.mod2_system().reduce(terms);
        Mod2Element { pres: Arc::clone(pres), terms: reduced.into_keys().collect() }
    }

    pub fn zero(pres: &Arc<RingPresentation>) -> Self {
        Mod2Element { pres: Arc::clone(pres), terms: BTreeSet::new() }
    }

    pub fn generator(pres: &Arc<RingPresentation>, name: &str) -> Option<Self> {
        let i = pres.generator_index(name)?;
        let terms = BTreeMap::from([(Monomial::generator(pres.arity(), i), Gf2(true))]);
        Some(Self::from_gf2(pres, &terms))
    }

    /// Reduce an expression with integer coefficients mod 2.
    pub fn parse(pres: &Arc<RingPresentation>, text: &str) -> Result<Self, RingError> {
        let names = pres.generator_names();
        let raw = parse_expr(text)?.eval(&FreeEvaluator { names: &names })?;
        Self::from_rational_terms(pres, &raw)
    }

    /// Reduction mod 2 of a rational class; fails on even denominators.
    pub fn from_ring_element(e: &RingElement) -> Result<Self, RingError> {
        Self::from_rational_terms(e.presentation(), e.terms())
    }

    fn from_rational_terms(pres: &Arc<RingPresentation>, terms: &Terms<Rational>) -> Result<Self, RingError> {
        let mut gf2 = BTreeMap::new();
        for (m, c) in terms {
            let bit = rational_mod2(c).ok_or_else(|| RingError::NotReducibleMod2(c.to_string()))?;
            add_scaled(&mut gf2, &BTreeMap::from([(m.clone(), bit)]), &Gf2(true));
        }
        Ok(Self::from_gf2(pres, &gf2))
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn monomials(&self) -> &BTreeSet<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.iter().all(|m| m.degree(self.pres.weights()) == degree)
    }

    pub fn checked_add(&self, other: &Mod2Element) -> Result<Mod2Element, RingError> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(RingError::PresentationMismatch);
        }
        Ok(Mod2Element {
            pres: Arc::clone(&self.pres),
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn checked_mul(&self, other: &Mod2Element) -> Result<Mod2Element, RingError> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(RingError::PresentationMismatch);
        }
        let lift = |s: &BTreeSet<Monomial>| -> Terms<Gf2> { s.iter().map(|m| (m.clone(), Gf2(true))).collect() };
        let product = self.pres.mod2_system().multiply(&lift(&self.terms), &lift(&other.terms));
        Ok(Mod2Element { pres: Arc::clone(&self.pres), terms: product.into_keys().collect() })
    }
}

impl fmt::Display for Mod2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| self.pres.format_monomial(m, true)).collect();
        write!(f, "{} mod 2", parts.join(" + "))
    }
}

/// Whether a circle bundle with first Chern class `c1` over a base with
/// second Stiefel-Whitney class `w2_base` has spin total space.
///
/// The pullback of `w2_base` vanishes exactly when it lies in the GF(2) span
/// of `c1 mod 2`, which in degree 2 means it is zero or equals `c1 mod 2`.
pub fn is_total_space_spin(w2_base: &Mod2Element, c1: &RingElement) -> Result<bool, RingError> {
    if !same_presentation(w2_base.presentation(), c1.presentation()) {
        return Err(RingError::PresentationMismatch);
    }
    c1.require_degree(2)?;
    if !w2_base.is_homogeneous_of(2) {
        return Err(RingError::WrongDegree { expected: 2, found: w2_base.to_string() });
    }
    if w2_base.is_zero() {
        return Ok(true);
    }
    let c1_mod2 = Mod2Element::from_ring_element(c1)?;
    Ok(*w2_base == c1_mod2)
}
