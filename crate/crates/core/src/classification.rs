//! Diffeomorphism classification of the non-spin quotients: a descriptor and
//! a choice of ε determine `X(q)` or `Q(d)` through the Pin⁺ bordism class of
//! a characteristic submanifold, and each type has explicit infinite families
//! of representatives.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::invariants::{bordism_class, DescriptorError, FamilyDescriptor, InvariantError, SignConvention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiffeoKind {
    /// `π₁` acts trivially on `π₂`.
    X,
    /// `π₁` acts non-trivially on `π₂`.
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffeoType {
    kind: DiffeoKind,
    index: u8,
}

impl DiffeoType {
    pub const ALL: [DiffeoType; 10] = [
        DiffeoType { kind: DiffeoKind::X, index: 0 },
        DiffeoType { kind: DiffeoKind::X, index: 2 },
        DiffeoType { kind: DiffeoKind::X, index: 4 },
        DiffeoType { kind: DiffeoKind::X, index: 6 },
        DiffeoType { kind: DiffeoKind::X, index: 8 },
        DiffeoType { kind: DiffeoKind::Q, index: 0 },
        DiffeoType { kind: DiffeoKind::Q, index: 2 },
        DiffeoType { kind: DiffeoKind::Q, index: 4 },
        DiffeoType { kind: DiffeoKind::Q, index: 6 },
        DiffeoType { kind: DiffeoKind::Q, index: 8 },
    ];

    pub fn new(kind: DiffeoKind, index: u8) -> Option<Self> {
        (index.is_multiple_of(2) && index <= 8).then_some(DiffeoType { kind, index })
    }

    pub fn kind(self) -> DiffeoKind {
        self.kind
    }

    pub fn index(self) -> u8 {
        self.index
    }

    /// Short token such as `X4` or `Q0`.
    pub fn token(self) -> String {
        format!("{:?}{}", self.kind, self.index)
    }
}

impl fmt::Display for DiffeoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.index)
    }
}

impl Serialize for DiffeoType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown diffeomorphism type `{0}`; expected one of X0 X2 X4 X6 X8 Q0 Q2 Q4 Q6 Q8")]
pub struct ParseDiffeoTypeError(String);

impl FromStr for DiffeoType {
    type Err = ParseDiffeoTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDiffeoTypeError(s.to_string());
        let mut chars = s.trim().chars();
        let kind = match chars.next() {
            Some('X' | 'x') => DiffeoKind::X,
            Some('Q' | 'q') => DiffeoKind::Q,
            _ => return Err(err()),
        };
        let rest = chars.as_str().trim_start_matches('(').trim_end_matches(')');
        let index: u8 = rest.parse().map_err(|_| err())?;
        DiffeoType::new(kind, index).ok_or_else(err)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("{descriptor} has odd bordism class {class}; valid inputs always land in {{0,2,4,6,8}}")]
    OddClass { descriptor: FamilyDescriptor, class: u8 },
    #[error("representative {descriptor} of {expected} (ε = {epsilon}) classifies as {found}")]
    RepresentativeMismatch {
        descriptor: FamilyDescriptor,
        expected: DiffeoType,
        found: DiffeoType,
        epsilon: SignConvention,
    },
}

pub fn classify(f: &FamilyDescriptor, s: SignConvention) -> Result<DiffeoType, ClassificationError> {
    let class = bordism_class(f, s)?.canonical();
    let kind = if f.pi1_acts_trivially() { DiffeoKind::X } else { DiffeoKind::Q };
    DiffeoType::new(kind, class).ok_or(ClassificationError::OddClass { descriptor: *f, class })
}

/// Which values of the family parameter to walk through.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParameterRange {
    /// `r = 0, 1, 2, …`
    #[default]
    Natural,
    /// `r = 0, 1, −1, 2, −2, …` (circle-bundle families only; Brieskorn
    /// exponents stay nonnegative).
    Integers,
}

impl ParameterRange {
    /// The `i`-th parameter value.
    pub fn nth(self, i: usize) -> i64 {
        let i = i as i64;
        match self {
            ParameterRange::Natural => i,
            ParameterRange::Integers if i % 2 == 1 => (i + 1) / 2,
            ParameterRange::Integers => -(i / 2),
        }
    }
}

/// The member of the family for type `t` at parameter `r`:
///
/// | type | family |
/// |------|--------|
/// | X(0) | `X_{8r−1, 2}` |
/// | X(2) | `X̄_{8r+2ε+3, 4}` |
/// | X(4) | `X_{8r+1, 2}` |
/// | X(6) | `X̄_{8r+2ε−1, 4}` |
/// | X(8) | `X_{8r+3, 2}` |
/// | Q(d) | `Q₀(d + 16r)`, `r ≥ 0` |
pub fn family_member(t: DiffeoType, s: SignConvention, r: i64) -> Result<FamilyDescriptor, DescriptorError> {
    let eps = s.value();
    match (t.kind, t.index) {
        (DiffeoKind::X, 0) => FamilyDescriptor::case_one(8 * r - 1, 2),
        (DiffeoKind::X, 2) => FamilyDescriptor::case_two(8 * r + 2 * eps + 3, 4),
        (DiffeoKind::X, 4) => FamilyDescriptor::case_one(8 * r + 1, 2),
        (DiffeoKind::X, 6) => FamilyDescriptor::case_two(8 * r + 2 * eps - 1, 4),
        (DiffeoKind::X, _) => FamilyDescriptor::case_one(8 * r + 3, 2),
        (DiffeoKind::Q, d) => FamilyDescriptor::brieskorn(i64::from(d) + 16 * r),
    }
}

/// The first `count` representatives of `t` for `r = 0, 1, 2, …`.
pub fn representatives(
    t: DiffeoType,
    s: SignConvention,
    count: usize,
) -> Result<Vec<FamilyDescriptor>, ClassificationError> {
    representatives_in(t, s, count, ParameterRange::Natural)
}

/// Like [`representatives`], with every member re-classified before it is returned.
pub fn representatives_in(
    t: DiffeoType,
    s: SignConvention,
    count: usize,
    range: ParameterRange,
) -> Result<Vec<FamilyDescriptor>, ClassificationError> {
    let range = if t.kind == DiffeoKind::Q { ParameterRange::Natural } else { range };
    (0..count)
        .map(|i| {
            let descriptor = family_member(t, s, range.nth(i))?;
            let found = classify(&descriptor, s)?;
            if found != t {
                return Err(ClassificationError::RepresentativeMismatch { descriptor, expected: t, found, epsilon: s });
            }
            Ok(descriptor)
        })
        .collect()
}
