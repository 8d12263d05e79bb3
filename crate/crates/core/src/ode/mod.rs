//! Fuchsian operators: parsing, δ-form rewriting, singular points,
//! indicial data, Riemann schemes, twisting, pullbacks and the Frobenius
//! apparent-singularity check.

mod frobenius;
mod indicial;
mod operator;
mod parse;
mod points;

pub use frobenius::{frobenius_apparent_check, default_truncation, FrobeniusOutcome};
pub use indicial::{
    characteristic_exponents, classify_point, indicial_polynomial, riemann_scheme,
    riemann_scheme_uncoalesced, singular_points, Classification, IndicialPolynomial,
    RiemannScheme, SchemeRow,
};
pub use operator::{DifferentialOperator, Form};
pub use parse::{parse_operator, parse_polynomial, parse_ratfunc};
pub use points::{closed_point, PointId};
