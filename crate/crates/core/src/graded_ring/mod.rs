//! Exact arithmetic in graded quotient rings presenting the cohomology of
//! closed oriented 4-manifolds, plus fundamental-class pairing, intersection
//! signature and mod-2 reduction.

mod builtin;
mod element;
mod error;
mod mod2;
mod monomial;
mod parse;
mod presentation;
mod rewrite;
mod signature;

pub use builtin::{builtin, case_one, case_two, BUILTIN_NAMES, CASE_II_SOURCE, CASE_I_SOURCE};
pub use element::RingElement;
pub use error::RingError;
pub use mod2::{is_total_space_spin, Mod2Element};
pub use monomial::{monomials_up_to, Monomial, MonomialOrder};
pub use parse::{parse_expr, parse_presentation, Expr};
pub use presentation::{Generator, RingPresentation};
pub use rewrite::Terms;
pub use signature::{inertia, intersection_matrix, intersection_signature, Signature};
