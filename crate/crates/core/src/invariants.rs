//! Per-family invariants: Chern classes, `⟨c², [B]⟩`, Pin⁺ bordism classes of
//! characteristic submanifolds and relative η invariants.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::char_series::{
    isolated_fixed_point_contribution, local_contribution_codim2_with, SeriesError, SeriesKernel,
    SignAmbiguousRational,
};
use crate::field::{int, ratio, Rational};
use crate::graded_ring::{
    case_one, case_two, intersection_signature, is_total_space_spin, Mod2Element, RingElement,
    RingError, RingPresentation,
};

/// η values are exact, with the global sign tracked separately.
pub type EtaValue = SignAmbiguousRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Circle-bundle quotients `X_{k,l}` over `B⁴ ≅ ℂP²#−ℂP²`.
    #[serde(rename = "caseI")]
    CaseI,
    /// Circle-bundle quotients `X̄_{k,l}` over `B̄⁴ ≅ ℂP²#ℂP²`.
    #[serde(rename = "caseII")]
    CaseII,
    /// Brieskorn quotients `Q⁵₀(d)`.
    #[serde(rename = "brieskorn")]
    Brieskorn,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::CaseI => "caseI",
            Family::CaseII => "caseII",
            Family::Brieskorn => "brieskorn",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("k must be odd (got k = {0})")]
    KEven(i64),
    #[error("l must be even (got l = {0})")]
    LOdd(i64),
    #[error("k and l must be coprime (gcd({k}, {l}) = {gcd})")]
    NotCoprime { k: i64, l: i64, gcd: i64 },
    #[error("d must be even (got d = {0})")]
    DOdd(i64),
    #[error("d must be nonnegative (got d = {0})")]
    DNegative(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Params {
    Bundle { family: Family, k: i64, l: i64 },
    Brieskorn { d: i64 },
}

/// A validated member of one of the three families. Construction enforces
/// `k` odd, `l` even, `gcd(k, l) = 1` for the circle-bundle families and `d`
/// even and nonnegative for Brieskorn quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyDescriptor(Params);

impl FamilyDescriptor {
    pub fn case_one(k: i64, l: i64) -> Result<Self, DescriptorError> {
        Self::bundle(Family::CaseI, k, l)
    }

    pub fn case_two(k: i64, l: i64) -> Result<Self, DescriptorError> {
        Self::bundle(Family::CaseII, k, l)
    }

    pub fn brieskorn(d: i64) -> Result<Self, DescriptorError> {
        if d < 0 {
            return Err(DescriptorError::DNegative(d));
        }
        if d.is_odd() {
            return Err(DescriptorError::DOdd(d));
        }
        Ok(FamilyDescriptor(Params::Brieskorn { d }))
    }

    fn bundle(family: Family, k: i64, l: i64) -> Result<Self, DescriptorError> {
        if k.is_even() {
            return Err(DescriptorError::KEven(k));
        }
        if l.is_odd() {
            return Err(DescriptorError::LOdd(l));
        }
        let gcd = k.gcd(&l);
        if gcd != 1 {
            return Err(DescriptorError::NotCoprime { k, l, gcd });
        }
        Ok(FamilyDescriptor(Params::Bundle { family, k, l }))
    }

    pub fn family(&self) -> Family {
        match self.0 {
            Params::Bundle { family, .. } => family,
            Params::Brieskorn { .. } => Family::Brieskorn,
        }
    }

    pub fn k(&self) -> Option<i64> {
        match self.0 {
            Params::Bundle { k, .. } => Some(k),
            Params::Brieskorn { .. } => None,
        }
    }

    pub fn l(&self) -> Option<i64> {
        match self.0 {
            Params::Bundle { l, .. } => Some(l),
            Params::Brieskorn { .. } => None,
        }
    }

    pub fn d(&self) -> Option<i64> {
        match self.0 {
            Params::Brieskorn { d } => Some(d),
            Params::Bundle { .. } => None,
        }
    }

    /// Whether `π₁` acts trivially on `π₂`. This is a property of the family:
    /// trivially for the circle-bundle quotients, non-trivially for Brieskorn quotients.
    pub fn pi1_acts_trivially(&self) -> bool {
        self.family() != Family::Brieskorn
    }

    fn bundle_params(&self) -> Result<(Family, i64, i64), InvariantError> {
        match self.0 {
            Params::Bundle { family, k, l } => Ok((family, k, l)),
            Params::Brieskorn { .. } => Err(InvariantError::NotCircleBundle(*self)),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Params::Bundle { family: Family::CaseI, k, l } => write!(f, "X_{{{k},{l}}}"),
            Params::Bundle { family: _, k, l } => write!(f, "X̄_{{{k},{l}}}"),
            Params::Brieskorn { d } => write!(f, "Q₀({d})"),
        }
    }
}

/// The unknown sign `ε ∈ {+1, −1}` in the Pin⁺ bordism formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignConvention {
    Plus,
    Minus,
}

impl SignConvention {
    pub const BOTH: [SignConvention; 2] = [SignConvention::Plus, SignConvention::Minus];

    pub fn value(self) -> i64 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Plus => "+1",
            SignConvention::Minus => "-1",
        })
    }
}

/// An element of `Ω₄^{Pin⁺}/± ≅ ℤ₁₆/±`, canonicalized into `{0, …, 8}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BordismClass(u8);

impl BordismClass {
    pub fn from_integer(x: &BigInt) -> Self {
        let residue = x.mod_floor(&BigInt::from(16)).to_u8().expect("residue below 16");
        BordismClass(residue.min(16 - residue))
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_integer(&BigInt::from(x))
    }

    pub fn canonical(self) -> u8 {
        self.0
    }
}

impl fmt::Display for BordismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("{0} is not a circle-bundle quotient")]
    NotCircleBundle(FamilyDescriptor),
    #[error("bordism formula gave the non-integer {value} for {descriptor}")]
    NonIntegralBordism { descriptor: FamilyDescriptor, value: String },
    #[error("⟨c², [B]⟩ = {value} is not an integer for {descriptor}")]
    NonIntegralPairing { descriptor: FamilyDescriptor, value: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Characteristic data of the base 4-manifold of a circle-bundle family.
#[derive(Clone, Debug)]
pub struct BaseData {
    pub presentation: Arc<RingPresentation>,
    pub p1: RingElement,
    pub w2: Mod2Element,
}

fn base_data(family: Family) -> Option<&'static BaseData> {
    static CASE_I: OnceLock<BaseData> = OnceLock::new();
    static CASE_II: OnceLock<BaseData> = OnceLock::new();
    let build = |pres: Arc<RingPresentation>, p1: &str| BaseData {
        p1: RingElement::parse(&pres, p1).expect("builtin p1 parses"),
        w2: Mod2Element::parse(&pres, "v").expect("builtin w2 parses"),
        presentation: pres,
    };
    match family {
        // p₁(TB) = 0, w₂(TB) = v mod 2.
        Family::CaseI => Some(CASE_I.get_or_init(|| build(case_one(), "0"))),
        // p₁(TB̄) = 6ū², w₂(TB̄) = v̄ mod 2.
        Family::CaseII => Some(CASE_II.get_or_init(|| build(case_two(), "6*u^2"))),
        Family::Brieskorn => None,
    }
}

/// Base data for a circle-bundle family; `None` for Brieskorn quotients.
pub fn base(family: Family) -> Option<&'static BaseData> {
    base_data(family)
}

/// `p₁ = 3·sign(B)·[orientation class]`, from the signature theorem on a
/// base whose top cohomology is one-dimensional.
pub fn hirzebruch_p1(pres: &Arc<RingPresentation>) -> RingElement {
    let sig = intersection_signature(pres).value();
    RingElement::monomial(pres, pres.orientation().clone()).scale(&int(3 * sig))
}

fn lookup(f: &FamilyDescriptor) -> Result<(&'static BaseData, i64, i64), InvariantError> {
    let (family, k, l) = f.bundle_params()?;
    let data = base_data(family).expect("circle-bundle families have base data");
    Ok((data, k, l))
}

/// `c_{k,l} = −l·u + k·v`.
pub fn chern_class(f: &FamilyDescriptor) -> Result<RingElement, InvariantError> {
    let (data, k, l) = lookup(f)?;
    let pres = &data.presentation;
    let u = RingElement::generator(pres, "u").expect("builtin has u");
    let v = RingElement::generator(pres, "v").expect("builtin has v");
    Ok(&u.scale(&int(-l)) + &v.scale(&int(k)))
}

/// `⟨c_{k,l}², [B]⟩` by symbolic expansion in the presented ring.
pub fn c_squared_pairing(f: &FamilyDescriptor) -> Result<BigInt, InvariantError> {
    let c = chern_class(f)?;
    let value = (&c * &c).pair_fundamental();
    if !value.is_integer() {
        return Err(InvariantError::NonIntegralPairing { descriptor: *f, value: value.to_string() });
    }
    Ok(value.to_integer())
}

/// Closed forms for `⟨c², [B]⟩`: `−l² − 2kl` over `B`, `l² + 2kl + 2k²` over `B̄`.
pub fn c_squared_closed_form(f: &FamilyDescriptor) -> Result<BigInt, InvariantError> {
    let (family, k, l) = f.bundle_params()?;
    let (k, l) = (BigInt::from(k), BigInt::from(l));
    Ok(match family {
        Family::CaseI => -(&l * &l) - BigInt::from(2) * &k * &l,
        _ => &l * &l + BigInt::from(2) * &k * &l + BigInt::from(2) * &k * &k,
    })
}

/// The integer `(1 + ε/2)⟨c², [B]⟩ − (ε/2)·sign(B)` (circle-bundle families)
/// or `d` (Brieskorn), before reduction into `ℤ₁₆/±`.
pub fn bordism_integer(f: &FamilyDescriptor, s: SignConvention) -> Result<BigInt, InvariantError> {
    if let Some(d) = f.d() {
        return Ok(BigInt::from(d));
    }
    let (data, _, _) = lookup(f)?;
    let pairing = Rational::from_integer(c_squared_pairing(f)?);
    let signature = int(intersection_signature(&data.presentation).value());
    let half_eps = ratio(s.value(), 2);
    let value = (Rational::one() + &half_eps) * pairing - half_eps * signature;
    if !value.is_integer() {
        return Err(InvariantError::NonIntegralBordism { descriptor: *f, value: value.to_string() });
    }
    Ok(value.to_integer())
}

pub fn bordism_class(f: &FamilyDescriptor, s: SignConvention) -> Result<BordismClass, InvariantError> {
    Ok(BordismClass::from_integer(&bordism_integer(f, s)?))
}

/// Closed-form η: `±(l² + 2kl)/8`, `±(2 + l² + 2kl + 2k²)/8`, or `−d/4`.
pub fn eta_closed_form(f: &FamilyDescriptor) -> EtaValue {
    match (f.family(), f.k(), f.l(), f.d()) {
        (Family::Brieskorn, _, _, Some(d)) => EtaValue::known(ratio(-d, 4)),
        (family, Some(k), Some(l), _) => {
            let (k, l) = (BigInt::from(k), BigInt::from(l));
            let mut numer = &l * &l + BigInt::from(2) * &k * &l;
            if family == Family::CaseII {
                numer += BigInt::from(2) + BigInt::from(2) * &k * &k;
            }
            EtaValue::up_to_sign(Rational::new(numer, BigInt::from(8)))
        }
        _ => unreachable!("descriptor parameters match the family"),
    }
}

/// η through the equivariant fixed-point formula `η = −2 Σ a(N)`.
pub fn eta_via_fixed_points(f: &FamilyDescriptor) -> Result<EtaValue, InvariantError> {
    eta_via_fixed_points_with(&SeriesKernel::STANDARD, f)
}

pub fn eta_via_fixed_points_with(kernel: &SeriesKernel, f: &FamilyDescriptor) -> Result<EtaValue, InvariantError> {
    let minus_two = int(-2);
    if let Some(d) = f.d() {
        // d isolated fixed points, each contributing 1/8.
        let total = isolated_fixed_point_contribution() * int(d);
        return Ok(EtaValue::known(total * minus_two));
    }
    let (data, _, _) = lookup(f)?;
    // The spin^c connection is flat, so its canonical class vanishes.
    let canonical = RingElement::zero(&data.presentation);
    let a = local_contribution_codim2_with(kernel, &canonical, &chern_class(f)?, &data.p1)?;
    Ok(a.scale(&minus_two))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct W2Report {
    pub base_w2_nonzero: bool,
    /// `N_{k,l}`: circle bundle with Chern class `c_{k,l}`.
    pub n_spin: bool,
    /// `X_{k,l} = N_{k,l}/ℤ₂`: circle bundle with Chern class `2c_{k,l}`.
    pub x_spin: bool,
}

pub fn w2_report(f: &FamilyDescriptor) -> Result<W2Report, InvariantError> {
    let (data, _, _) = lookup(f)?;
    let c = chern_class(f)?;
    Ok(W2Report {
        base_w2_nonzero: !data.w2.is_zero(),
        n_spin: is_total_space_spin(&data.w2, &c)?,
        x_spin: is_total_space_spin(&data.w2, &c.scale(&int(2)))?,
    })
}

/// Magnitude of a sign-ambiguous value as `(numerator, denominator)`.
pub fn magnitude_fraction(v: &EtaValue) -> (BigInt, BigInt) {
    let m = v.magnitude();
    (m.numer().abs(), m.denom().clone())
}
