//! The exterior algebra of a `d`-dimensional space and its dual.
//!
//! Everything lives in `⋀V`: a covector `u*` is stored as `ψ(u*)`, a grade
//! `d-1` extensor, and the dual wedge becomes the intersection product `∩`.
//! Basis `k`-subsets of `[d]` are bit masks (bit `i-1` for `e_i`).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg;
use crate::ring::{Coordinates, Scalar, VariableId};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("grades {0} and {1} are incompatible with d = {2}")]
    Incompatible(usize, usize, usize),
    #[error("expected a homogeneous extensor of grade {0}, found grade {1}")]
    Expected(usize, usize),
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}` (zero handled by the caller).
pub fn shuffle_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let low = rest.trailing_zeros();
        inversions += (a >> (low + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn full(d: usize) -> u32 {
    (1u32 << d) - 1
}

/// All `k`-subsets of `[d]` in increasing numeric order of masks.
pub fn subsets(d: usize, k: usize) -> Vec<u32> {
    (0..1u32 << d)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

fn mask_string(m: u32) -> String {
    (0..32)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| char::from_digit(i + 1, 10).unwrap_or('?'))
        .collect()
}

/// A homogeneous element of `⋀^k V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extensor<S> {
    d: usize,
    k: usize,
    c: BTreeMap<u32, S>,
}

impl<S: Scalar> Extensor<S> {
    pub fn zero(d: usize, k: usize) -> Self {
        assert!(k <= d);
        Extensor {
            d,
            k,
            c: BTreeMap::new(),
        }
    }

    pub fn scalar(d: usize, s: S) -> Self {
        Self::zero(d, 0).with(0, s)
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, S::one())
    }

    /// The volume form `e = e_1 ∧ ... ∧ e_d`.
    pub fn volume(d: usize) -> Self {
        Self::basis(d, full(d))
    }

    pub fn basis(d: usize, mask: u32) -> Self {
        Self::zero(d, mask.count_ones() as usize).with(mask, S::one())
    }

    pub fn vector(coords: Vec<S>) -> Self {
        let d = coords.len();
        let mut e = Self::zero(d, 1);
        for (i, x) in coords.into_iter().enumerate() {
            e = e.with(1 << i, x);
        }
        e
    }

    /// `ψ(u*)` for the covector with the given coordinates.
    pub fn covector(coords: Vec<S>) -> Self {
        let d = coords.len();
        DualExtensor::covector(coords).psi_of(d)
    }

    pub fn from_terms(d: usize, k: usize, terms: impl IntoIterator<Item = (u32, S)>) -> Self {
        let mut e = Self::zero(d, k);
        for (m, s) in terms {
            assert_eq!(m.count_ones() as usize, k, "basis subset of wrong size");
            e.add_term(m, s);
        }
        e
    }

    fn with(mut self, mask: u32, s: S) -> Self {
        self.add_term(mask, s);
        self
    }

    fn add_term(&mut self, mask: u32, s: S) {
        if s.is_zero() {
            return;
        }
        match self.c.get_mut(&mask) {
            Some(v) => {
                *v = v.add(&s);
                if v.is_zero() {
                    self.c.remove(&mask);
                }
            }
            None => {
                self.c.insert(mask, s);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> S {
        self.c.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &S)> {
        self.c.iter()
    }

    /// Coefficients in the order of [`subsets`]`(d, k)`.
    pub fn coeff_vector(&self) -> Vec<S> {
        subsets(self.d, self.k)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// The value of a grade-0 or grade-`d` extensor, identifying `e` with 1.
    pub fn scalar_value(&self) -> Option<S> {
        if self.k == 0 {
            Some(self.coeff(0))
        } else if self.k == self.d {
            Some(self.coeff(full(self.d)))
        } else {
            None
        }
    }

    pub fn det(&self) -> S {
        self.scalar_value()
            .expect("determinant of a scalar-grade extensor")
    }

    fn same_space(&self, o: &Self) {
        assert_eq!(self.d, o.d, "extensors over different spaces");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_space(o);
        if self.k != o.k {
            let (a, b) = (self.scalar_value(), o.scalar_value());
            if let (Some(a), Some(b)) = (a, b) {
                return Self::scalar(self.d, a.add(&b));
            }
            panic!("adding extensors of grades {} and {}", self.k, o.k);
        }
        let mut r = self.clone();
        for (&m, s) in &o.c {
            r.add_term(m, s.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Extensor {
            d: self.d,
            k: self.k,
            c: self.c.iter().map(|(&m, s)| (m, s.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.d, self.k);
        }
        Extensor {
            d: self.d,
            k: self.k,
            c: self.c.iter().map(|(&m, x)| (m, x.mul(s))).collect(),
        }
    }

    pub fn sign(&self, positive: bool) -> Self {
        if positive {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// `u ∧ v`; requires `p + q ≤ d`.
    pub fn wedge(&self, o: &Self) -> Result<Self, GradeError> {
        self.same_space(o);
        if self.k + o.k > self.d {
            return Err(GradeError::Incompatible(self.k, o.k, self.d));
        }
        let mut r = Self::zero(self.d, self.k + o.k);
        for (&a, x) in &self.c {
            for (&b, y) in &o.c {
                if a & b == 0 {
                    let s = x.mul(y);
                    r.add_term(a | b, if shuffle_sign(a, b) > 0 { s } else { s.neg() });
                }
            }
        }
        Ok(r)
    }

    pub fn psi_inv(&self) -> DualExtensor<S> {
        let f = full(self.d);
        let mut r = Extensor::zero(self.d, self.d - self.k);
        for (&m, s) in &self.c {
            let c = f & !m;
            r.add_term(
                c,
                if shuffle_sign(c, m) > 0 {
                    s.clone()
                } else {
                    s.neg()
                },
            );
        }
        DualExtensor(r)
    }

    /// `u ∩ v = ψ(ψ⁻¹u ∧* ψ⁻¹v)`; requires `p + q ≥ d`.
    pub fn cap(&self, o: &Self) -> Result<Self, GradeError> {
        self.same_space(o);
        if self.k + o.k < self.d {
            return Err(GradeError::Incompatible(self.k, o.k, self.d));
        }
        let w = self.psi_inv().dual_wedge(&o.psi_inv())?;
        Ok(w.psi())
    }

    /// `u ⋏ v`: wedge if `p + q ≤ d`, cap otherwise. At `p + q = d` the
    /// result is the scalar `det(u ∧ v)`, stored in grade 0.
    pub fn mixed_wedge(&self, o: &Self) -> Self {
        let total = self.k + o.k;
        if total < self.d {
            self.wedge(o).expect("grade checked")
        } else if total > self.d {
            self.cap(o).expect("grade checked")
        } else {
            Self::scalar(self.d, self.wedge(o).expect("grade checked").det())
        }
    }

    /// `⟨u, w*⟩` where `w*` is given through its image `ψ(w*)` of grade `d - k`.
    /// Mismatched grades pair to zero.
    pub fn pairing(&self, psi_w: &Self) -> S {
        if self.k + psi_w.k != self.d {
            return S::zero();
        }
        self.wedge(psi_w).expect("grade checked").det()
    }

    /// Whether `u` is a product of `k` vectors.
    pub fn is_decomposable(&self) -> bool {
        let (d, k) = (self.d, self.k);
        if k <= 1 || k + 1 >= d || self.is_zero() {
            return true;
        }
        let rows = subsets(d, k + 1);
        let mut m: Vec<Vec<S>> = vec![vec![S::zero(); d]; rows.len()];
        for i in 0..d {
            let p = Self::basis(d, 1 << i).wedge(self).expect("k + 1 ≤ d");
            for (r, &mask) in rows.iter().enumerate() {
                m[r][i] = p.coeff(mask);
            }
        }
        d - linalg::rank(&m) >= k
    }

    /// `v ⋏ (a ⋏ b)` through the derivation rule.
    pub fn derivation_expand(v: &Self, a: &Self, b: &Self) -> Result<Self, GradeError> {
        let d = v.d;
        if v.k != 1 {
            return Err(GradeError::Expected(1, v.k));
        }
        let (p, q) = (d - a.k, d - b.k);
        if p < 1 || q < 1 || p + q > d {
            return Err(GradeError::Incompatible(a.k, b.k, d));
        }
        let left = v.mixed_wedge(a).mixed_wedge(b);
        let right = a.mixed_wedge(&v.mixed_wedge(b));
        Ok(left.sign(q % 2 == 0).add(&right))
    }
}

/// Fold `x_1 ⋏ (x_2 ⋏ (... ⋏ x_n))`.
pub fn mixed_wedge_chain<S: Scalar>(xs: &[Extensor<S>]) -> Extensor<S> {
    let (last, rest) = xs.split_last().expect("nonempty chain");
    rest.iter()
        .rev()
        .fold(last.clone(), |acc, x| x.mixed_wedge(&acc))
}

pub fn det_of<S: Scalar>(vs: &[Extensor<S>]) -> S {
    let d = vs[0].d;
    let mut acc = Extensor::one(d);
    for v in vs {
        acc = acc.wedge(v).expect("at most d vectors");
    }
    acc.det()
}

impl<S: Scalar> fmt::Display for Extensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, s)) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) * e{{{}}}", s, mask_string(*m))?;
        }
        Ok(())
    }
}

/// An element of `⋀V*` in the dual basis `e*_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualExtensor<S>(pub Extensor<S>);

impl<S: Scalar> DualExtensor<S> {
    pub fn covector(coords: Vec<S>) -> Self {
        DualExtensor(Extensor::vector(coords))
    }

    pub fn dual_wedge(&self, o: &Self) -> Result<Self, GradeError> {
        Ok(DualExtensor(self.0.wedge(&o.0)?))
    }

    /// `ψ(e*_S) = sgn(S, Sᶜ) e_{Sᶜ}`.
    pub fn psi(&self) -> Extensor<S> {
        let d = self.0.d;
        let f = full(d);
        let mut r = Extensor::zero(d, d - self.0.k);
        for (&m, s) in &self.0.c {
            let c = f & !m;
            r.add_term(
                c,
                if shuffle_sign(m, c) > 0 {
                    s.clone()
                } else {
                    s.neg()
                },
            );
        }
        r
    }

    fn psi_of(&self, d: usize) -> Extensor<S> {
        debug_assert_eq!(self.0.d, d);
        self.psi()
    }

    /// `⟨u, w*⟩ = Σ_S u_S w*_S`.
    pub fn pair(&self, u: &Extensor<S>) -> S {
        if u.k != self.0.k {
            return S::zero();
        }
        self.0
            .c
            .iter()
            .fold(S::zero(), |acc, (m, w)| acc.add(&w.mul(&u.coeff(*m))))
    }
}

/// One vector or covector per position of a signature, with coordinates
/// `u[j][i]` or `ud[j][i]`. Covectors are stored as `ψ(u*_j)`.
#[derive(Clone, Debug)]
pub struct Point<S> {
    pub sig: Signature,
    pub d: usize,
    pub elements: Vec<Extensor<S>>,
}

impl<S: Scalar> Point<S> {
    pub fn generic<C: Coordinates<S>>(sig: &Signature, d: usize, coords: &mut C) -> Self {
        let elements = (1..=sig.n())
            .map(|j| {
                if sig.is_black(j as i64) {
                    Extensor::vector(
                        (1..=d)
                            .map(|i| coords.coordinate(VariableId::vector(j, i)))
                            .collect(),
                    )
                } else {
                    Extensor::covector(
                        (1..=d)
                            .map(|i| coords.coordinate(VariableId::covector(j, i)))
                            .collect(),
                    )
                }
            })
            .collect();
        Point {
            sig: sig.clone(),
            d,
            elements,
        }
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    /// The element at 1-based cyclic position `j`.
    pub fn at(&self, j: i64) -> &Extensor<S> {
        let n = self.n() as i64;
        &self.elements[(j - 1).rem_euclid(n) as usize]
    }

    pub fn is_black(&self, j: i64) -> bool {
        self.sig.is_black(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Polynomial, RationalFn, Symbolic};

    type E = Extensor<RationalFn>;

    fn v(j: usize, d: usize) -> E {
        E::vector(
            (1..=d)
                .map(|i| RationalFn::var(VariableId::vector(j, i)))
                .collect(),
        )
    }

    fn cov(j: usize, d: usize) -> E {
        E::covector(
            (1..=d)
                .map(|i| RationalFn::var(VariableId::covector(j, i)))
                .collect(),
        )
    }

    #[test]
    fn basis_signs() {
        let e1 = E::basis(3, 0b001);
        let e2 = E::basis(3, 0b010);
        assert_eq!(e1.wedge(&e2).unwrap(), E::basis(3, 0b011));
        assert_eq!(e2.wedge(&e1).unwrap(), E::basis(3, 0b011).neg());
        let psi1 = DualExtensor(E::basis(3, 0b001)).psi();
        assert_eq!(psi1, E::basis(3, 0b110));
        let psi2 = DualExtensor(E::basis(3, 0b010)).psi();
        assert_eq!(psi2, E::basis(3, 0b101).neg());
        assert_eq!(DualExtensor(E::volume(3)).psi(), E::one(3));
    }

    #[test]
    fn psi_round_trip() {
        for d in 2..6 {
            for k in 0..=d {
                for m in subsets(d, k) {
                    let e = E::basis(d, m);
                    assert_eq!(e.psi_inv().psi(), e);
                }
            }
        }
    }

    #[test]
    fn covector_pairing() {
        let p = v(1, 3).pairing(&cov(2, 3));
        let mut expect = RationalFn::zero();
        for i in 1..=3 {
            expect = expect.add(
                &RationalFn::var(VariableId::vector(1, i))
                    .mul(&RationalFn::var(VariableId::covector(2, i))),
            );
        }
        assert_eq!(p, expect);
        assert_eq!(v(1, 3).pairing(&v(2, 3)), RationalFn::zero());
    }

    #[test]
    fn cap_with_covector_contracts() {
        let d = 3;
        let a = v(1, d);
        let b = v(2, d);
        let u = cov(3, d);
        let got = u.cap(&a.wedge(&b).unwrap()).unwrap();
        let ua = a.pairing(&u);
        let ub = b.pairing(&u);
        assert_eq!(got, a.scale(&ub).sub(&b.scale(&ua)));
        assert_eq!(a.cap(&E::volume(d)).unwrap(), a);
    }

    #[test]
    fn decomposability() {
        let d = 4;
        let q = |m| E::basis(d, m);
        assert!(!q(0b0011).add(&q(0b1100)).is_decomposable());
        assert!(q(0b0011).add(&q(0b0101)).is_decomposable());
        assert!(v(1, d).is_decomposable());
        assert!(cov(2, d).is_decomposable());
    }

    #[test]
    fn chain_examples() {
        let d = 3;
        let u = cov(4, d);
        let c = mixed_wedge_chain(&[v(1, d), v(2, d), u.clone(), v(1, d), v(2, d)]);
        assert!(c.is_zero());
        let c = mixed_wedge_chain(&[v(3, d), v(2, d), u.clone(), v(1, d), v(2, d)]);
        let expect = v(2, d)
            .pairing(&u)
            .mul(&det_of(&[v(3, d), v(2, d), v(1, d)]));
        assert_eq!(c.scalar_value().unwrap(), expect);
    }

    #[test]
    fn symbolic_point_layout() {
        let sig: Signature = "bwb".parse().unwrap();
        let p: Point<RationalFn> = Point::generic(&sig, 3, &mut Symbolic);
        assert_eq!(p.at(1).grade(), 1);
        assert_eq!(p.at(2).grade(), 2);
        assert_eq!(p.at(4).grade(), 1);
        let pair = p.at(1).mixed_wedge(p.at(2)).scalar_value().unwrap();
        assert_eq!(pair.numer().total_degree(), 2);
        assert!(pair.denom() == &Polynomial::one());
    }
}
