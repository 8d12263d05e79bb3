//! Hodge numbers of parabolic cohomology for (1,…,1)-type variations of
//! Hodge structure given by Picard–Fuchs operators on the projective line.
//!
//! The pipeline runs from an operator to its Riemann scheme, through an
//! annotated [`local::VHSProfile`], optionally along a cover
//! ([`cover::pullback_profile`]), to bundle degrees and Hodge numbers
//! ([`hodge::analyze`]).

pub mod arith;
pub mod cover;
pub mod datasets;
pub mod enumerate;
pub mod error;
pub mod hodge;
pub mod json;
pub mod local;
pub mod ode;

pub use cover::{pullback_profile, validate_cover, CoverSpec};
pub use error::{Error, Result};
pub use hodge::{analyze, hodge_numbers, solve_degrees, HodgeReport};
pub use local::{JordanType, Kind, LocalData, VHSProfile};
pub use ode::{parse_operator, riemann_scheme, DifferentialOperator, PointId, RiemannScheme};
