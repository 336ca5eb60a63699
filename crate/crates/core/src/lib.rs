//! Symbolic computation for the Virasoro algebra.
//!
//! * [`lie`]: generators, structure constants, the canonical involution.
//! * [`pbw`]: the universal enveloping algebra in PBW normal form, products,
//!   reduction modulo left ideals `U(V) e_g`, Cartan polynomials.
//! * [`modules`]: truncated Verma and intermediate-series modules with exact
//!   actions, joint kernels and highest/lowest weight detection.
//! * [`dsl`]: a small expression language, pretty printer and JSON form.
//! * [`suite`]: the named battery of identity checks behind `virasoro verify`.
//!
//! The algebraic core is generic over an exact [`Scalar`] field. The aliases
//! below fix arbitrary-precision rationals, which is what the CLI and the
//! verification suite use.

pub mod cli;
pub mod dsl;
pub mod lie;
pub mod linalg;
pub mod modules;
pub mod pbw;
pub mod scalar;
pub mod suite;

pub use lie::Generator;
pub use scalar::Scalar;

/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;

pub type LieElement = lie::LieElement<Rational>;
pub type Virasoro = lie::Virasoro<Rational>;
pub type UEAElement = pbw::UEAElement<Rational>;
pub type CartanPolynomial = pbw::CartanPolynomial<Rational>;
pub type TruncatedWeightModule = modules::TruncatedWeightModule<Rational>;
pub type WeightVector = modules::WeightVector<Rational>;
pub type ExtremalPair = modules::ExtremalPair<Rational>;

pub use pbw::{OrderSpec, PBWMonomial};
