use std::fmt;

use num::{BigInt, One, Zero};

use super::gcd::gcd;
use super::modp::{Fp, ModularContext};
use super::poly::{Polynomial, Q};
use super::var::VariableId;
use super::RingError;

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFn {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFn {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(Polynomial::from_i64(c))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn var(v: VariableId) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// Reduce `num / den` to lowest terms.
    pub fn normalize(num: Polynomial, den: Polynomial) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let inv = den.leading_coeff().recip();
            return Ok(RationalFn {
                num: num.scale(&inv),
                den: Polynomial::one(),
            });
        }
        if let Some(q) = num.div_exact(&den) {
            return Ok(Self::from_poly(q));
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Self::with_monic_den(n, d))
    }

    fn with_monic_den(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalFn { num, den }
        } else {
            let inv = lc.recip();
            RationalFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let on = if negate { o.num.neg() } else { o.num.clone() };
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.add(&on));
        }
        if self.den == o.den {
            let n = self.num.add(&on);
            return Self::normalize(n, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: with g = gcd(b, d), only g can share factors with the new numerator.
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&d1).add(&on.mul(&b1));
        if n.is_zero() {
            return Self::zero();
        }
        let den = b1.mul(&o.den);
        if g.is_one() {
            return Self::with_monic_den(n, den);
        }
        let h = gcd(&n, &g);
        if h.is_one() {
            Self::with_monic_den(n, den)
        } else {
            Self::with_monic_den(
                n.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let (a, b) = cancel(&self.num, &o.den);
        let (c, d) = cancel(&o.num, &self.den);
        Self::with_monic_den(a.mul(&c), d.mul(&b))
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, RingError> {
        if o.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if o.den.is_one() && self.den.is_one() {
            if let Some(q) = self.num.div_exact(&o.num) {
                return Ok(Self::from_poly(q));
            }
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mod_eval(&self, ctx: &ModularContext) -> Result<Fp, RingError> {
        let d = ctx.eval_poly(&self.den)?;
        if d.is_zero() {
            return Err(RingError::DenominatorVanishes);
        }
        ctx.eval_poly(&self.num)?.div(d)
    }

    /// Parse the text form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let mut p = Parser {
            toks: tokenize(s)?,
            pos: 0,
        };
        let r = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(RingError::Parse(format!(
                "unexpected trailing input in {:?}",
                s
            )));
        }
        Ok(r)
    }
}

/// Remove the common factor of `a` and `b`.
fn cancel(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    if b.is_one() || a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    if let Some(q) = a.div_exact(b) {
        return (q, Polynomial::one());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (
            a.div_exact(&g).expect("gcd divides"),
            b.div_exact(&g).expect("gcd divides"),
        )
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Polynomial {
    /// Parse a polynomial in the canonical text form.
    pub fn parse(s: &str) -> Result<Polynomial, RingError> {
        let r = RationalFn::parse(s)?;
        match r.as_polynomial() {
            Some(p) => Ok(p.clone()),
            None => Err(RingError::Parse(format!("not a polynomial: {:?}", s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(VariableId),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, RingError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |m: &str| RingError::Parse(m.to_string());
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' => i += 1,
            b'+' => {
                out.push(Tok::Plus);
                i += 1
            }
            b'-' => {
                out.push(Tok::Minus);
                i += 1
            }
            b'*' => {
                out.push(Tok::Star);
                i += 1
            }
            b'/' => {
                out.push(Tok::Slash);
                i += 1
            }
            b'^' => {
                out.push(Tok::Caret);
                i += 1
            }
            b'(' => {
                out.push(Tok::LParen);
                i += 1
            }
            b')' => {
                out.push(Tok::RParen);
                i += 1
            }
            b'0'..=b'9' => {
                let st = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = s[st..i].parse().map_err(|_| err("bad integer"))?;
                out.push(Tok::Num(v));
            }
            b'u' => {
                let covector = b.get(i + 1) == Some(&b'd');
                i += if covector { 2 } else { 1 };
                let mut idx = [0usize; 2];
                for slot in idx.iter_mut() {
                    if b.get(i) != Some(&b'[') {
                        return Err(err("expected '[' in variable"));
                    }
                    i += 1;
                    let st = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    *slot = s[st..i].parse().map_err(|_| err("bad variable index"))?;
                    if b.get(i) != Some(&b']') {
                        return Err(err("expected ']' in variable"));
                    }
                    i += 1;
                }
                let v = if covector {
                    VariableId::covector(idx[0], idx[1])
                } else {
                    VariableId::vector(idx[0], idx[1])
                };
                out.push(Tok::Var(v));
            }
            _ => {
                return Err(RingError::Parse(format!(
                    "unexpected character {:?}",
                    c as char
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RationalFn, RingError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFn, RingError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFn, RingError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| RingError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(RingError::Parse("expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RationalFn, RingError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(RationalFn::constant(Q::from_integer(v)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(RationalFn::var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(RingError::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            other => Err(RingError::Parse(format!("unexpected token {:?}", other))),
        }
    }
}
