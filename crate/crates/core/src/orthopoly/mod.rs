//! Gegenbauer polynomials, their identities, and certified extrema.

pub mod cosine;
pub mod extremum;
pub mod gegenbauer;
pub mod hypergeom;
pub mod polynomial;
pub mod zeros;

pub use cosine::CosineSeries;
pub use extremum::{certified_max_abs_difference, certified_min, CertifiedExtremum, ExtremumKind};
pub use gegenbauer::{
    check_derivative_identity, check_ode_identity, f_tilde_prime, lambda, normalized_gegenbauer,
    weighted_inner_product,
};
pub use polynomial::{eval_polynomial, Polynomial};
