//! Truncated characteristic-class series and the equivariant local
//! contribution of a codimension-2 fixed-point component.
//!
//! The integrand for a fixed component `F` with normal line bundle `L` is
//! `±i · e^{c/2} · (1/2i) sech(c_L/2) · Â(F)`. The complex prefactors combine
//! to `±1/2`, so everything stays rational and only the magnitude is
//! reported.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{format_rational, ratio, Rational};
use crate::graded_ring::{RingElement, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("the Â-genus is only modelled through p₁; top degree {0} needs higher Pontryagin classes")]
    UnsupportedTopDegree(u32),
}

/// A rational known either exactly or only up to a global sign.
#[derive(Clone, Debug)]
pub struct SignAmbiguousRational {
    magnitude: Rational,
    /// `Some(true)` for nonnegative, `Some(false)` for negative, `None` when unknown.
    sign: Option<bool>,
}

impl SignAmbiguousRational {
    pub fn known(value: Rational) -> Self {
        let nonnegative = !value.is_negative();
        SignAmbiguousRational { magnitude: value.abs(), sign: Some(nonnegative) }
    }

    pub fn up_to_sign(value: Rational) -> Self {
        SignAmbiguousRational { magnitude: value.abs(), sign: None }
    }

    pub fn magnitude(&self) -> &Rational {
        &self.magnitude
    }

    pub fn sign_known(&self) -> bool {
        self.sign.is_some()
    }

    /// `+1` or `-1` when the sign is known; zero counts as `+1`.
    pub fn sign(&self) -> Option<i8> {
        self.sign.map(|nonneg| if nonneg { 1 } else { -1 })
    }

    /// The exact value, when the sign is known.
    pub fn value(&self) -> Option<Rational> {
        self.sign.map(|nonneg| if nonneg { self.magnitude.clone() } else { -self.magnitude.clone() })
    }

    /// Multiply by a rational, keeping sign information only if it was known.
    pub fn scale(&self, q: &Rational) -> Self {
        match self.value() {
            Some(v) => Self::known(v * q),
            None => Self::up_to_sign(&self.magnitude * q),
        }
    }

    /// Signed numerator and denominator for serialization: the exact value
    /// when the sign is known, the magnitude otherwise.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        let v = self.value().unwrap_or_else(|| self.magnitude.clone());
        (v.numer().clone(), v.denom().clone())
    }
}

impl PartialEq for SignAmbiguousRational {
    fn eq(&self, other: &Self) -> bool {
        if self.magnitude != other.magnitude {
            return false;
        }
        match (self.sign, other.sign) {
            (Some(a), Some(b)) => a == b || self.magnitude.is_zero(),
            _ => true,
        }
    }
}

impl fmt::Display for SignAmbiguousRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = format_rational(&self.magnitude);
        match self.sign {
            _ if self.magnitude.is_zero() => f.write_str("0"),
            None => write!(f, "±{mag}"),
            Some(true) => f.write_str(&mag),
            Some(false) => write!(f, "−{mag}"),
        }
    }
}

/// Sum `Σ coeff_n · x^n` for homogeneous `x` of degree 2, stopping past the top degree.
fn truncated_series(x: &RingElement, coeff: impl Fn(u32) -> Rational) -> RingElement {
    let pres = x.presentation();
    let mut power = RingElement::one(pres);
    let mut sum = RingElement::zero(pres);
    let mut n = 0;
    while 2 * n <= pres.top_degree() {
        sum = &sum + &power.scale(&coeff(n));
        power = &power * x;
        n += 1;
    }
    sum
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Euler numbers `E_0, E_2, ..., E_{2m}` from `Σ_k C(2n, 2k) E_{2k} = 0`.
fn even_euler_numbers(m: u32) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=m {
        let s: BigInt = (0..n).map(|k| binomial(2 * n, 2 * k) * &e[k as usize]).sum();
        e.push(-s);
    }
    e
}

/// `Â(M) = 1 − p₁/24` in dimension at most 7.
pub fn ahat_series(p1: &RingElement) -> Result<RingElement, SeriesError> {
    p1.require_degree(4)?;
    let top = p1.presentation().top_degree();
    if top >= 8 && !p1.is_zero() {
        return Err(SeriesError::UnsupportedTopDegree(top));
    }
    Ok(&RingElement::one(p1.presentation()) - &p1.scale(&ratio(1, 24)))
}

/// `sech(c/2)` truncated at the top degree; `1 − c²/8` in dimension 4.
pub fn inv_cosh_half(c: &RingElement) -> Result<RingElement, SeriesError> {
    c.require_degree(2)?;
    let pres = c.presentation();
    let euler = even_euler_numbers(pres.top_degree() / 4);
    let c_squared = c * c;
    // sech(x) = Σ E_{2n} x^{2n} / (2n)!, with x = c/2.
    Ok(truncated_series(&c_squared, |n| {
        match euler.get(n as usize) {
            Some(e) => Rational::new(e.clone(), factorial(2 * n) * BigInt::from(4).pow(n)),
            None => Rational::zero(),
        }
    }))
}

/// `e^{c/2}` truncated at the top degree; `1 + c/2 + c²/8` in dimension 4.
pub fn exp_half(c: &RingElement) -> Result<RingElement, SeriesError> {
    c.require_degree(2)?;
    Ok(truncated_series(c, |n| Rational::new(BigInt::one(), factorial(n) * BigInt::from(2).pow(n))))
}

/// The series factors entering the codimension-2 integrand. Swappable so
/// verification can be exercised against a deliberately broken kernel.
#[derive(Clone, Copy)]
pub struct SeriesKernel {
    pub exp_half: fn(&RingElement) -> Result<RingElement, SeriesError>,
    pub inv_cosh_half: fn(&RingElement) -> Result<RingElement, SeriesError>,
    pub ahat: fn(&RingElement) -> Result<RingElement, SeriesError>,
}

impl SeriesKernel {
    pub const STANDARD: SeriesKernel =
        SeriesKernel { exp_half, inv_cosh_half, ahat: ahat_series };
}

impl Default for SeriesKernel {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl fmt::Debug for SeriesKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesKernel").finish_non_exhaustive()
    }
}

/// `a(F) = ±i ∫_F e^{c/2} · (1/2i) sech(c_L/2) · Â(F)`, returned up to sign.
pub fn local_contribution_codim2(
    canonical_c: &RingElement,
    fiber_c: &RingElement,
    p1: &RingElement,
) -> Result<SignAmbiguousRational, SeriesError> {
    local_contribution_codim2_with(&SeriesKernel::STANDARD, canonical_c, fiber_c, p1)
}

pub fn local_contribution_codim2_with(
    kernel: &SeriesKernel,
    canonical_c: &RingElement,
    fiber_c: &RingElement,
    p1: &RingElement,
) -> Result<SignAmbiguousRational, SeriesError> {
    let integrand = (kernel.exp_half)(canonical_c)?
        .checked_mul(&(kernel.inv_cosh_half)(fiber_c)?)?
        .checked_mul(&(kernel.ahat)(p1)?)?;
    Ok(SignAmbiguousRational::up_to_sign(integrand.pair_fundamental() * ratio(1, 2)))
}

/// Per-point contribution of an isolated fixed point of the holomorphic
/// involution on the Milnor fibre, for the spin^c Dirac (Dolbeault) operator.
pub fn isolated_fixed_point_contribution() -> Rational {
    ratio(1, 8)
}
