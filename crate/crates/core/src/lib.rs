//! Zeta functions of finite quotients of the 1-skeleton of the `Ã_{n−1}`
//! building: the positive-geodesic zeta `Z₊` (by determinant, generator
//! orders and character L-functions), the Ihara zeta via the Bass
//! determinant, and a several-variable Selberg-type zeta as a truncated
//! series and as an exact rational function.

// matrix code indexes several arrays by the same loop variable
#![allow(clippy::needless_range_loop)]

pub mod cayley;
pub mod cone;
pub mod error;
pub mod fixed;
pub mod lambda;
pub mod linalg;
pub mod multi;
pub mod poly;
pub mod quotient;
pub mod selberg;
pub mod zeta;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use error::{Error, Result};
pub use lambda::{
    canonicalize, is_face, length_vector, translation_lengths, type_of, AffineElement,
    LambdaElement, LengthScale, LengthVector, Permutation,
};
pub use multi::{MultiPoly, MultiRational, MultiSeries};
pub use poly::Poly;

/// Exact rationals for length values.
pub type Rational = Ratio<i64>;

/// Exact univariate integer polynomial, lowest degree first.
pub type IntPolynomial = Poly<BigInt>;
