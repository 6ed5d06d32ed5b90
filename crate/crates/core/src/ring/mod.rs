//! Exact coefficient arithmetic and the modular specialization backend.

mod gcd;
mod modp;
mod poly;
mod rational;
mod scalar;
mod var;

pub use gcd::gcd;
pub use modp::{Fp, ModularContext, PRIME};
pub use poly::{Monomial, Polynomial, Q};
pub use rational::RationalFn;
pub use scalar::{Coordinates, Scalar, Symbolic};
pub use var::{Kind, VariableId};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the chosen specialization")]
    DenominatorVanishes,
    #[error("parse error: {0}")]
    Parse(String),
}
