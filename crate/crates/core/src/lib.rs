//! Exact invariants of the ℤ₂-quotients of S²×S³ arising as circle-bundle
//! quotients over ℂP²#±ℂP² and as Brieskorn quotients.
//!
//! The crate computes cohomology pairings, Pin⁺ bordism classes of
//! characteristic submanifolds, diffeomorphism types, and relative η
//! invariants. Each closed-form η value is recomputed through an independent
//! fixed-point pipeline built on [`char_series`] and [`graded_ring`].

pub mod char_series;
pub mod classification;
pub mod field;
pub mod graded_ring;
pub mod invariants;
pub mod moduli;
pub mod verify;

pub use field::Rational;
