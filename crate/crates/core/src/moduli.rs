//! Finite-scale tables of relative η invariants over the representatives of
//! one diffeomorphism type. Pairwise distinct η values over a family of
//! metrics of nonnegative curvature and positive scalar curvature separate
//! path components of the moduli space.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::char_series::SeriesKernel;
use crate::classification::{classify, family_member, ClassificationError, DiffeoType, ParameterRange};
use crate::field::Rational;
use crate::invariants::{
    bordism_class, eta_closed_form, eta_via_fixed_points_with, BordismClass, EtaValue, FamilyDescriptor,
    InvariantError, SignConvention,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error(transparent)]
    Classification(#[from] ClassificationError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{descriptor}: fixed-point η {fixed_point} disagrees with closed form {closed_form}")]
    EtaMismatch { descriptor: FamilyDescriptor, fixed_point: String, closed_form: String },
    #[error("{descriptor}: value {value} does not fit the output format")]
    Overflow { descriptor: FamilyDescriptor, value: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuliRow {
    pub descriptor: FamilyDescriptor,
    pub bordism: BordismClass,
    pub eta: EtaValue,
    pub diffeo_type: DiffeoType,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuliTable {
    pub diffeo_type: DiffeoType,
    pub epsilon: SignConvention,
    pub rows: Vec<ModuliRow>,
    /// Number of distinct η magnitudes among the rows.
    pub distinct_count: usize,
}

/// Flat output record; column order is the CSV header order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliRecord {
    pub family: &'static str,
    pub k: Option<i64>,
    pub l: Option<i64>,
    pub d: Option<i64>,
    pub epsilon: i64,
    pub bordism: u8,
    pub eta_num: i128,
    pub eta_den: i128,
    pub eta_sign_known: bool,
    pub diffeo_type: String,
}

pub const CSV_HEADER: [&str; 10] =
    ["family", "k", "l", "d", "epsilon", "bordism", "eta_num", "eta_den", "eta_sign_known", "diffeo_type"];

/// Compute one row, re-classifying the descriptor and cross-checking the
/// fixed-point η against the closed form.
pub fn moduli_row(
    kernel: &SeriesKernel,
    descriptor: &FamilyDescriptor,
    expected: DiffeoType,
    s: SignConvention,
) -> Result<ModuliRow, ModuliError> {
    let found = classify(descriptor, s)?;
    if found != expected {
        return Err(ClassificationError::RepresentativeMismatch {
            descriptor: *descriptor,
            expected,
            found,
            epsilon: s,
        }
        .into());
    }
    let eta = eta_via_fixed_points_with(kernel, descriptor)?;
    let closed = eta_closed_form(descriptor);
    if eta != closed {
        return Err(ModuliError::EtaMismatch {
            descriptor: *descriptor,
            fixed_point: eta.to_string(),
            closed_form: closed.to_string(),
        });
    }
    Ok(ModuliRow { descriptor: *descriptor, bordism: bordism_class(descriptor, s)?, eta, diffeo_type: found })
}

impl ModuliTable {
    pub fn from_rows(diffeo_type: DiffeoType, epsilon: SignConvention, rows: Vec<ModuliRow>) -> Self {
        let distinct: BTreeSet<&Rational> = rows.iter().map(|r| r.eta.magnitude()).collect();
        let distinct_count = distinct.len();
        ModuliTable { diffeo_type, epsilon, rows, distinct_count }
    }

    pub fn all_distinct(&self) -> bool {
        self.distinct_count == self.rows.len()
    }

    pub fn records(&self) -> Result<Vec<ModuliRecord>, ModuliError> {
        self.rows
            .iter()
            .map(|row| {
                let (num, den) = row.eta.to_fraction();
                let fit = |v: &num_bigint::BigInt| {
                    v.to_i128().ok_or_else(|| ModuliError::Overflow {
                        descriptor: row.descriptor,
                        value: v.to_string(),
                    })
                };
                Ok(ModuliRecord {
                    family: row.descriptor.family().name(),
                    k: row.descriptor.k(),
                    l: row.descriptor.l(),
                    d: row.descriptor.d(),
                    epsilon: self.epsilon.value(),
                    bordism: row.bordism.canonical(),
                    eta_num: fit(&num)?,
                    eta_den: fit(&den)?,
                    eta_sign_known: row.eta.sign_known(),
                    diffeo_type: row.diffeo_type.token(),
                })
            })
            .collect()
    }
}

/// The descriptors a table for `t` covers, in parameter order.
pub fn table_descriptors(
    t: DiffeoType,
    s: SignConvention,
    count: usize,
    range: ParameterRange,
) -> Result<Vec<FamilyDescriptor>, ModuliError> {
    let range = if t.kind() == crate::classification::DiffeoKind::Q { ParameterRange::Natural } else { range };
    (0..count)
        .map(|i| family_member(t, s, range.nth(i)).map_err(|e| ModuliError::Classification(e.into())))
        .collect()
}

pub fn enumerate(
    t: DiffeoType,
    s: SignConvention,
    count: usize,
    range: ParameterRange,
) -> Result<ModuliTable, ModuliError> {
    let kernel = SeriesKernel::STANDARD;
    let rows = table_descriptors(t, s, count, range)?
        .iter()
        .map(|d| moduli_row(&kernel, d, t, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModuliTable::from_rows(t, s, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    #[test]
    fn x4_magnitudes() {
        let t = enumerate("X4".parse().unwrap(), SignConvention::Plus, 3, ParameterRange::Natural).unwrap();
        let mags: Vec<_> = t.rows.iter().map(|r| r.eta.magnitude().clone()).collect();
        assert_eq!(mags, vec![int(1), int(5), int(9)]);
        assert_eq!(t.distinct_count, 3);
    }

    #[test]
    fn q0_values() {
        let t = enumerate("Q0".parse().unwrap(), SignConvention::Minus, 3, ParameterRange::Natural).unwrap();
        let vals: Vec<_> = t.rows.iter().map(|r| r.eta.value().unwrap()).collect();
        assert_eq!(vals, vec![int(0), int(-4), int(-8)]);
    }

    #[test]
    fn singleton() {
        let t = enumerate("X4".parse().unwrap(), SignConvention::Plus, 1, ParameterRange::Natural).unwrap();
        assert_eq!((t.rows.len(), t.distinct_count), (1, 1));
    }

    #[test]
    fn negative_parameters_can_repeat_magnitudes() {
        // X(0) has |η| = |4r|, so r = 1 and r = -1 collide.
        let t = enumerate("X0".parse().unwrap(), SignConvention::Plus, 3, ParameterRange::Integers).unwrap();
        assert_eq!(t.distinct_count, 2);
        assert!(!t.all_distinct());
    }

    #[test]
    fn records_carry_fractions() {
        let t = enumerate("X6".parse().unwrap(), SignConvention::Minus, 1, ParameterRange::Natural).unwrap();
        let rec = &t.records().unwrap()[0];
        // X̄_{-3,4}: (2 + 16 - 24 + 18)/8 = 3/2
        assert_eq!((rec.eta_num, rec.eta_den, rec.eta_sign_known), (3, 2, false));
        assert_eq!((rec.family, rec.k, rec.l, rec.d), ("caseII", Some(-3), Some(4), None));
        assert_eq!(rec.diffeo_type, "X6");
    }
}
