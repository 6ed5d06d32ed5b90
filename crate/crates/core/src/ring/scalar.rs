use std::fmt::{Debug, Display};

use super::modp::{Fp, ModularContext};
use super::rational::RationalFn;
use super::var::VariableId;
use super::RingError;

/// Field operations shared by the exact and the modular backend.
///
/// Every construction downstream (extensors, flags, propagation, mutation) is
/// generic over this trait, so the same code runs symbolically over rational
/// functions and numerically modulo a prime.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(c: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, RingError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Scalar for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn from_i64(c: i64) -> Self {
        RationalFn::from_i64(c)
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RationalFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFn::mul(self, o)
    }
    fn neg(&self) -> Self {
        RationalFn::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self, RingError> {
        RationalFn::div(self, o)
    }
    fn is_one(&self) -> bool {
        RationalFn::is_one(self)
    }
    fn pow(&self, e: u32) -> Self {
        RationalFn::pow(self, e)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(c: i64) -> Self {
        Fp::from_i64(c)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
    fn div(&self, o: &Self) -> Result<Self, RingError> {
        Fp::div(*self, *o)
    }
}

/// A source of coordinate values: the symbolic variables themselves, or their
/// residues at a random point.
pub trait Coordinates<S: Scalar> {
    fn coordinate(&mut self, v: VariableId) -> S;
}

/// Coordinates as formal variables.
pub struct Symbolic;

impl Coordinates<RationalFn> for Symbolic {
    fn coordinate(&mut self, v: VariableId) -> RationalFn {
        RationalFn::var(v)
    }
}

impl Coordinates<Fp> for ModularContext {
    fn coordinate(&mut self, v: VariableId) -> Fp {
        self.value(v)
    }
}
