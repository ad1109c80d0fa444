use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("generator `{name}` has odd degree {degree}; odd-degree generators are unsupported")]
    OddDegree { name: String, degree: u32 },

    #[error("generator `{name}` has degree 0; degrees must be positive")]
    ZeroDegree { name: String },

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("presentation has no generators")]
    NoGenerators,

    #[error("top degree must be a positive even integer, got {0}")]
    InvalidTopDegree(u32),

    #[error("relation {index} ({relation}) is not homogeneous")]
    NonHomogeneous { index: usize, relation: String },

    #[error("relation {index} ({relation}) has non-integer coefficients")]
    NonIntegralRelation { index: usize, relation: String },

    #[error("relation {index} ({relation}) has degree {degree}, above the top degree {top}")]
    RelationAboveTop { index: usize, relation: String, degree: u32, top: u32 },

    #[error("rewrite system is not confluent{}: rewrite paths of {monomial} disagree", if *.mod2 { " mod 2" } else { "" })]
    NonConfluent { monomial: String, mod2: bool },

    #[error("top-degree component has rank {rank}, expected 1")]
    TopRank { rank: usize },

    #[error("orientation monomial has degree {degree}, expected the top degree {top}")]
    OrientationDegree { degree: u32, top: u32 },

    #[error("orientation monomial is zero in the quotient ring")]
    DegenerateOrientation,

    #[error("elements belong to different presentations")]
    PresentationMismatch,

    #[error("expected a homogeneous class of degree {expected}, got {found}")]
    WrongDegree { expected: u32, found: String },

    #[error("coefficient {0} has an even denominator and no reduction mod 2")]
    NotReducibleMod2(String),
}
