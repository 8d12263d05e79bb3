use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element not invertible")]
    ZeroNotInvertible,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("operator mixes D and del")]
    MixedOperator,

    #[error("zero leading coefficient")]
    ZeroLeading,

    #[error("irregular singular point at {point}")]
    Irregular { point: String },

    #[error("irrational exponents at {point}: cofactor {cofactor}")]
    IrrationalExponents { point: String, cofactor: String },

    #[error("not a candidate apparent singularity: {0}")]
    NotCandidateApparent(String),

    #[error("not an elliptic degeneration type: weights ({0})")]
    NotElliptic(String),

    #[error("unmatched K3 local data: weights ({0})")]
    UnmatchedK3(String),

    #[error("partition sum {sum} ≠ degree {degree} over {point}")]
    PartitionSum {
        point: String,
        sum: i64,
        degree: i64,
    },

    #[error("Riemann–Hurwitz violated by Δ = {0}")]
    RiemannHurwitz(i64),

    #[error("branch point {0} is singular but absent from the profile")]
    MissingBranchPoint(String),

    #[error("exponents not admissible at {0}")]
    NotAdmissible(String),

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("profile not of VHS origin as annotated: {0}")]
    NotVhsOrigin(String),

    #[error("missing monodromy annotation at: {}", .0.join(", "))]
    MissingAnnotation(Vec<String>),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
