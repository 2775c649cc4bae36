//! Exact arithmetic: integer and rational polynomials, matrix rank,
//! factorization over Q, and number fields `Q[x]/(f)`.

mod factor;
mod field;
mod matrix;
mod modp;
mod poly;

pub use factor::{distinct_irreducible_factors, irreducible_factors, MAX_FACTOR_DEGREE};
pub use field::{
    int_mat_vec, null_space, null_space_over_field, verify_eigenpair, FieldElement, NumberField,
    Scalar,
};
pub use matrix::{char_poly, integer_rank, rational_rank};
pub use poly::{poly_gcd, IntPoly, RatPoly};

/// Arbitrary-precision reduced fraction.
pub type Rational = num_rational::BigRational;
