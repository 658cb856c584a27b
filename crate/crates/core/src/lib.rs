//! Exact-arithmetic toolkit for border bases of zero-dimensional polynomial
//! ideals: border basis schemes and base changes between them, the principal
//! component via determinantal elimination, and explicit flat families from
//! linear coordinate changes, shape-lemma local parameters, and distractions.
//!
//! All computation is over the rationals with arbitrary precision; results
//! are exact and deterministic.

pub mod border;
pub mod context;
pub mod error;
pub mod families;
pub mod fraction;
pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod order_ideal;
pub mod ordering;
pub mod parse;
pub mod poly;
pub mod principal;
pub mod rational;
pub mod term;

pub use context::{BlockId, VarContext};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use matrix::{Matrix, Scalar};
pub use ordering::TermOrdering;
pub use poly::Polynomial;
pub use rational::Rational;
pub use term::Term;
