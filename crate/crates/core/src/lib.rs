//! Exact arithmetic for the congruent number problem.
//!
//! - [`series`]: truncated integer power series and Tunnell's coefficients
//!   `c_j(n)`.
//! - [`congruent`]: squarefree targets, triangle certificates, the
//!   triangle / point / arithmetic-progression dictionaries.
//! - [`curve`]: long Weierstrass curves over Q, the group law and the
//!   twisted model `alpha y^2 = x^3 - x`.
//! - [`modp`]: reduction at primes `p >= 5`, point counts and the trace
//!   statistics built on them.
//! - [`cli`]: the `congruum` command-line front end.

pub mod arith;
pub mod cli;
pub mod congruent;
pub mod curve;
pub mod modp;
pub mod series;

pub use congruent::{
    certificate_search, classify, congruum_ap, enumerate_congruent, enumerate_congruent_up_to, no_unit_area_search,
    point_to_triangle, squarefree_decompose, triangle_to_point, verify_square_ap,
    CongruenceVerdict, RationalTriangle,
};
pub use curve::{tangent_next, valuation, CAlphaPoint, CurvePoint, Valuation, WeierstrassCurve};
pub use series::{tunnell_coefficients, TruncatedIntegerSeries};
