use std::collections::HashMap;
use std::fmt;

use num::{BigInt, Integer, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::poly::{Polynomial, Q};
use super::var::{Kind, VariableId};
use super::RingError;

/// The modulus for the specialization backend: 2^62 - 57, a prime.
pub const PRIME: u64 = (1u64 << 62) - 57;

/// An element of the prime field of order [`PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Fp(pub u64);

impl Fp {
    pub fn new(v: u64) -> Fp {
        Fp(v % PRIME)
    }

    pub fn from_i64(v: i64) -> Fp {
        let r = v.rem_euclid(PRIME as i64);
        Fp(r as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let p = BigInt::from(PRIME);
        let r = v.mod_floor(&p);
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    pub fn from_rational(q: &Q) -> Result<Fp, RingError> {
        let d = Fp::from_bigint(q.denom());
        if d.0 == 0 {
            return Err(RingError::DenominatorVanishes);
        }
        Ok(Fp::from_bigint(q.numer()).mul(d.inv()?))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }

    pub fn sub(self, o: Fp) -> Fp {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + PRIME - o.0)
        }
    }

    pub fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(PRIME - self.0)
        }
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Fp, RingError> {
        if self.0 == 0 {
            return Err(RingError::DivisionByZero);
        }
        Ok(self.pow(PRIME - 2))
    }

    pub fn div(self, o: Fp) -> Result<Fp, RingError> {
        Ok(self.mul(o.inv()?))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A random point at which symbolic coordinates are specialized modulo [`PRIME`].
///
/// Values are drawn lazily but deterministically: the residue of a variable
/// depends only on the seed and the variable itself.
#[derive(Clone, Debug)]
pub struct ModularContext {
    pub prime: u64,
    pub seed: u64,
    assignment: HashMap<VariableId, Fp>,
}

impl ModularContext {
    pub fn new(seed: u64) -> Self {
        ModularContext {
            prime: PRIME,
            seed,
            assignment: HashMap::new(),
        }
    }

    /// Pre-populate the assignment for `n` points in dimension `d` and return the context.
    pub fn for_points(seed: u64, n: usize, d: usize) -> Self {
        let mut ctx = ModularContext::new(seed);
        for j in 1..=n {
            for i in 1..=d {
                ctx.value(VariableId::vector(j, i));
                ctx.value(VariableId::covector(j, i));
            }
        }
        ctx
    }

    fn draw(seed: u64, v: VariableId) -> Fp {
        let kind = match v.kind {
            Kind::Vector => 0u64,
            Kind::Covector => 1u64,
        };
        let tag = ((v.point as u64) << 24) | (kind << 20) | v.coord as u64;
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        Fp(rng.gen_range(0..PRIME))
    }

    pub fn value(&mut self, v: VariableId) -> Fp {
        let seed = self.seed;
        *self
            .assignment
            .entry(v)
            .or_insert_with(|| Self::draw(seed, v))
    }

    pub fn get(&self, v: VariableId) -> Fp {
        match self.assignment.get(&v) {
            Some(x) => *x,
            None => Self::draw(self.seed, v),
        }
    }

    /// A fresh context; used when a denominator vanishes at the current point.
    pub fn redraw(&self) -> Self {
        ModularContext::new(self.seed.wrapping_add(0x5851_F42D_4C95_7F2D))
    }

    pub fn eval_poly(&self, p: &Polynomial) -> Result<Fp, RingError> {
        let mut acc = Fp(0);
        for (m, c) in p.terms() {
            let mut t = Fp::from_rational(c)?;
            for &(v, e) in m.pairs() {
                t = t.mul(self.get(v).pow(e as u64));
            }
            acc = acc.add(t);
        }
        Ok(acc)
    }
}
