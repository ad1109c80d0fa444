use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::field::Rational;

use super::error::RingError;
use super::monomial::Monomial;
use super::parse::{parse_expr, Evaluator};
use super::presentation::{format_terms, RingPresentation};
use super::rewrite::{add_scaled, Terms};

/// An element of a presented ring, always kept in normal form with no zero
/// coefficients and nothing above the top degree.
#[derive(Clone, Debug)]
pub struct RingElement {
    pres: Arc<RingPresentation>,
    terms: Terms<Rational>,
}

pub(crate) fn same_presentation(a: &Arc<RingPresentation>, b: &Arc<RingPresentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.terms == other.terms
    }
}

impl RingElement {
    /// Reduce arbitrary terms (exponent vectors must match the arity).
    pub fn from_terms(pres: &Arc<RingPresentation>, terms: &Terms<Rational>) -> Self {
        RingElement { pres: Arc::clone(pres), terms: pres.system().reduce(terms) }
    }

    pub fn zero(pres: &Arc<RingPresentation>) -> Self {
        RingElement { pres: Arc::clone(pres), terms: BTreeMap::new() }
    }

    pub fn one(pres: &Arc<RingPresentation>) -> Self {
        Self::constant(pres, Rational::one())
    }

    pub fn constant(pres: &Arc<RingPresentation>, q: Rational) -> Self {
        let terms = BTreeMap::from([(Monomial::one(pres.arity()), q)]);
        Self::from_terms(pres, &terms)
    }

    pub fn monomial(pres: &Arc<RingPresentation>, m: Monomial) -> Self {
        Self::from_terms(pres, &BTreeMap::from([(m, Rational::one())]))
    }

    pub fn generator(pres: &Arc<RingPresentation>, name: &str) -> Option<Self> {
        let i = pres.generator_index(name)?;
        Some(Self::monomial(pres, Monomial::generator(pres.arity(), i)))
    }

    /// Evaluate an expression such as `(-2*u+v)^2` in the ring.
    pub fn parse(pres: &Arc<RingPresentation>, text: &str) -> Result<Self, RingError> {
        parse_expr(text)?.eval(&RingEvaluator { pres })
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms<Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> RingElement {
        let w = self.pres.weights();
        RingElement {
            pres: Arc::clone(&self.pres),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(w) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when every term has this degree; zero is homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        let w = self.pres.weights();
        self.terms.keys().all(|m| m.degree(w) == degree)
    }

    pub(crate) fn require_degree(&self, degree: u32) -> Result<(), RingError> {
        if self.is_homogeneous_of(degree) {
            Ok(())
        } else {
            Err(RingError::WrongDegree { expected: degree, found: self.to_string() })
        }
    }

    /// Reduce again. Elements are always stored reduced, so this is the identity
    /// on well-formed values.
    pub fn reduce(&self) -> RingElement {
        Self::from_terms(&self.pres, &self.terms)
    }

    fn check(&self, other: &RingElement) -> Result<(), RingError> {
        if same_presentation(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(RingError::PresentationMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &Rational::one());
        Ok(RingElement { pres: Arc::clone(&self.pres), terms })
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &-Rational::one());
        Ok(RingElement { pres: Arc::clone(&self.pres), terms })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        Ok(RingElement {
            pres: Arc::clone(&self.pres),
            terms: self.pres.system().multiply(&self.terms, &other.terms),
        })
    }

    pub fn scale(&self, q: &Rational) -> RingElement {
        let mut terms = BTreeMap::new();
        add_scaled(&mut terms, &self.terms, q);
        RingElement { pres: Arc::clone(&self.pres), terms }
    }

    pub fn pow(&self, n: u32) -> RingElement {
        (0..n).fold(Self::one(&self.pres), |acc, _| &acc * self)
    }

    /// `⟨e, [M]⟩`: the top-degree part of `e` measured against the orientation class.
    pub fn pair_fundamental(&self) -> Rational {
        self.pres.pair_terms(&self.terms)
    }

    /// Expression syntax accepted by [`RingElement::parse`].
    pub fn to_expr_string(&self) -> String {
        let names = self.pres.generator_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        format_terms(&names, self.pres.sort_for_display(&self.terms), false)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.pres.generator_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&format_terms(&names, self.pres.sort_for_display(&self.terms), true))
    }
}

// Operator forms panic on a presentation mismatch; use the `checked_*`
// methods when the operands may come from different rings.
impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("presentation mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("presentation mismatch")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("presentation mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&-Rational::one())
    }
}

struct RingEvaluator<'a> {
    pres: &'a Arc<RingPresentation>,
}

impl Evaluator for RingEvaluator<'_> {
    type Value = RingElement;

    fn constant(&self, q: Rational) -> RingElement {
        RingElement::constant(self.pres, q)
    }
    fn variable(&self, name: &str) -> Option<RingElement> {
        RingElement::generator(self.pres, name)
    }
    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a + b
    }
    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a * b
    }
    fn scale(&self, a: &RingElement, q: &Rational) -> RingElement {
        a.scale(q)
    }
}
