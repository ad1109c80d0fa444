use std::sync::{Arc, OnceLock};

use super::parse::parse_presentation;
use super::presentation::RingPresentation;

/// H*(B⁴) for the first torus action: Z[u,v]/(u²+uv, v²), oriented by ⟨uv,[B]⟩ = 1.
pub const CASE_I_SOURCE: &str = "\
generators: u:2, v:2
relations: u^2+u*v, v^2
orientation: u*v
";

/// H*(B̄⁴) for the second torus action: Z[ū,v̄]/(ū²+ūv̄, v̄²+2ūv̄), oriented by ⟨ū²,[B̄]⟩ = 1.
/// Generators are spelled `u`, `v`.
pub const CASE_II_SOURCE: &str = "\
generators: u:2, v:2
relations: u^2+u*v, v^2+2*u*v
orientation: u^2
";

pub const BUILTIN_NAMES: [&str; 2] = ["caseI", "caseII"];

pub fn case_one() -> Arc<RingPresentation> {
    static CELL: OnceLock<Arc<RingPresentation>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        Arc::new(parse_presentation(CASE_I_SOURCE).expect("case I presentation is valid"))
    }))
}

pub fn case_two() -> Arc<RingPresentation> {
    static CELL: OnceLock<Arc<RingPresentation>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| {
        Arc::new(parse_presentation(CASE_II_SOURCE).expect("case II presentation is valid"))
    }))
}

pub fn builtin(name: &str) -> Option<Arc<RingPresentation>> {
    match name {
        "caseI" => Some(case_one()),
        "caseII" => Some(case_two()),
        _ => None,
    }
}
