//! Exact computation of Igusa local zeta functions `Z(s, f)` for univariate
//! polynomials whose roots are all rational, together with the Poincaré
//! series, the solution counts `N_m(f, p)` and an LFSR keystream layer.
//!
//! Polynomial arithmetic is generic over the coefficient ring through
//! [`num_traits::Num`]; the pipeline itself runs on the exact aliases
//! [`QPoly`] and [`ZPoly`] defined here.

pub mod arith;
mod decimal;
pub mod error;
pub mod lfsr;
pub mod poly;
pub mod polyio;
pub mod series;
pub mod tree;
pub mod zeta;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision fraction in lowest terms with positive denominator.
pub type Rational = BigRational;
/// Dense polynomial with rational coefficients.
pub type QPoly = poly::Poly<Rational>;
/// Dense polynomial with integer coefficients.
pub type ZPoly = poly::Poly<Integer>;

pub use arith::{PAdicContext, PAdicExpansion, Valuation};
pub use lfsr::{Keystream, Lfsr};
pub use polyio::{FactoredPoly, ParsedPoly, ReducedInput};
pub use series::CountSequence;
pub use tree::{Vertex, WeightedTree};
pub use zeta::{RationalFunction, ZetaFunction, ZetaTerm};
