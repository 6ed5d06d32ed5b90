//! Decorated flags, quotient wedges and crossing values.
//!
//! A flag is stored with its trivial ends: slot `0` holds the scalar `1` and
//! slot `d` the volume form, so every formula can index `G^{k-1}` and
//! `G^{k+1}` without special cases.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{mixed_wedge_chain, subsets, Extensor, GradeError, Point};
use crate::linalg;
use crate::ring::{Polynomial, Scalar};
use crate::words::{BetaSigma, IntervalWord, MarkedWord, NestedWordShape};

pub mod closed;
pub mod propagate;

pub use closed::{initial_seed_closed_forms, ClosedForm, Factor};
pub use propagate::{propagate_decoration, Propagation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlagError {
    #[error("the quotient system has no solution")]
    NotDivisible,
    #[error("the two extensors are not proportional")]
    NotProportional,
    #[error("flags are not in relative position s_{0}")]
    NotInRelativePosition(usize),
    #[error("the signature is not d-admissible")]
    NotAdmissible,
    #[error("f_{0} vanishes: the point is not generic")]
    NotGeneric(i64),
    #[error("degenerate decoration: {0}")]
    DegenerateDecoration(String),
    #[error("polynomial is not multi-homogeneous")]
    NotMultiHomogeneous,
    #[error(transparent)]
    Grade(#[from] GradeError),
}

/// `(F^0 = 1, F^1, ..., F^{d-1}, F^d = e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoratedFlag<S> {
    comps: Vec<Extensor<S>>,
}

impl<S: Scalar> DecoratedFlag<S> {
    /// From the interior components `F^1..F^{d-1}`.
    pub fn new(d: usize, interior: Vec<Extensor<S>>) -> Result<Self, FlagError> {
        if interior.len() + 1 != d {
            return Err(FlagError::DegenerateDecoration(format!(
                "{} components for d = {}",
                interior.len(),
                d
            )));
        }
        for (i, c) in interior.iter().enumerate() {
            if c.grade() != i + 1 || c.dim() != d {
                return Err(GradeError::Expected(i + 1, c.grade()).into());
            }
        }
        let mut comps = vec![Extensor::one(d)];
        comps.extend(interior);
        comps.push(Extensor::volume(d));
        Ok(DecoratedFlag { comps })
    }

    pub fn dim(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn get(&self, k: usize) -> &Extensor<S> {
        &self.comps[k]
    }

    pub fn interior(&self) -> &[Extensor<S>] {
        &self.comps[1..self.dim()]
    }

    /// Replace slot `k` (`1 ≤ k ≤ d-1`).
    pub fn with(&self, k: usize, e: Extensor<S>) -> Self {
        assert!(k >= 1 && k < self.dim() && e.grade() == k);
        let mut f = self.clone();
        f.comps[k] = e;
        f
    }

    /// `H/λ`: every interior component divided by `λ`.
    pub fn divided(&self, lambda: &S) -> Result<Self, FlagError> {
        let inv = S::one()
            .div(lambda)
            .map_err(|_| FlagError::DegenerateDecoration("division by zero".into()))?;
        let mut f = self.clone();
        let d = self.dim();
        for c in &mut f.comps[1..d] {
            *c = c.scale(&inv);
        }
        Ok(f)
    }

    /// Nonzero decomposable components with `F^{k+1} = F^k ∧ v`.
    pub fn is_flag(&self) -> bool {
        let d = self.dim();
        (1..d).all(|k| !self.comps[k].is_zero() && self.comps[k].is_decomposable())
            && (1..d - 1).all(|k| quotient(&self.comps[k + 1], &self.comps[k]).is_ok())
    }
}

/// Some `x` with `w ∧ x = v`.
pub fn quotient<S: Scalar>(v: &Extensor<S>, w: &Extensor<S>) -> Result<Extensor<S>, FlagError> {
    let d = v.dim();
    if w.grade() > v.grade() {
        return Err(FlagError::NotDivisible);
    }
    let g = v.grade() - w.grade();
    if w.grade() == 0 {
        let s = w.coeff(0);
        if s.is_zero() {
            return Err(FlagError::NotDivisible);
        }
        let inv = S::one().div(&s).map_err(|_| FlagError::NotDivisible)?;
        return Ok(v.scale(&inv));
    }
    let cols = subsets(d, g);
    let rows = subsets(d, v.grade());
    let images: Vec<Extensor<S>> = cols
        .iter()
        .map(|&m| w.wedge(&Extensor::basis(d, m)))
        .collect::<Result<_, _>>()?;
    let a: Vec<Vec<S>> = rows
        .iter()
        .map(|&r| images.iter().map(|im| im.coeff(r)).collect())
        .collect();
    let b: Vec<S> = rows.iter().map(|&r| v.coeff(r)).collect();
    let x = linalg::solve(&a, &b).ok_or(FlagError::NotDivisible)?;
    Ok(Extensor::from_terms(d, g, cols.into_iter().zip(x)))
}

/// The wedge of `u` and `v` over `w`: `u ∧ v₁` where `w ∧ v₁ = v`.
pub fn qwed<S: Scalar>(
    u: &Extensor<S>,
    v: &Extensor<S>,
    w: &Extensor<S>,
) -> Result<Extensor<S>, FlagError> {
    let v1 = quotient(v, w)?;
    Ok(u.wedge(&v1)?)
}

/// The same construction carried out in `⋀V*` and mapped back through `ψ`.
pub fn qwed_dual<S: Scalar>(
    u: &Extensor<S>,
    v: &Extensor<S>,
    w: &Extensor<S>,
) -> Result<Extensor<S>, FlagError> {
    let r = qwed(&u.psi_inv().0, &v.psi_inv().0, &w.psi_inv().0)?;
    Ok(crate::exterior::DualExtensor(r).psi())
}

/// The scalar `μ` with `a = μ b`.
pub fn ratio<S: Scalar>(a: &Extensor<S>, b: &Extensor<S>) -> Result<S, FlagError> {
    if a.grade() != b.grade() {
        return Err(FlagError::NotProportional);
    }
    let (&m, bm) = b.terms().next().ok_or(FlagError::NotProportional)?;
    let mu = a.coeff(m).div(bm).map_err(|_| FlagError::NotProportional)?;
    if a.sub(&b.scale(&mu)).is_zero() {
        Ok(mu)
    } else {
        Err(FlagError::NotProportional)
    }
}

fn check_position<S: Scalar>(
    g: &DecoratedFlag<S>,
    h: &DecoratedFlag<S>,
    k: usize,
) -> Result<(), FlagError> {
    let d = g.dim();
    if k == 0 || k >= d || h.dim() != d {
        return Err(FlagError::NotInRelativePosition(k));
    }
    if (1..d).any(|i| i != k && g.get(i) != h.get(i)) || ratio(h.get(k), g.get(k)).is_ok() {
        return Err(FlagError::NotInRelativePosition(k));
    }
    Ok(())
}

/// `qwed(G^k, H^k, G^{k-1}) / G^{k+1}`.
pub fn crossing_value<S: Scalar>(
    g: &DecoratedFlag<S>,
    h: &DecoratedFlag<S>,
    k: usize,
) -> Result<S, FlagError> {
    check_position(g, h, k)?;
    ratio(&qwed(g.get(k), h.get(k), g.get(k - 1))?, g.get(k + 1))
}

/// `qwed*(G^k, H^k, G^{k+1}) / G^{k-1}`, computed in the dual algebra.
pub fn dual_crossing_value<S: Scalar>(
    g: &DecoratedFlag<S>,
    h: &DecoratedFlag<S>,
    k: usize,
) -> Result<S, FlagError> {
    check_position(g, h, k)?;
    let top = qwed(
        &g.get(k).psi_inv().0,
        &h.get(k).psi_inv().0,
        &g.get(k + 1).psi_inv().0,
    )?;
    ratio(&top, &g.get(k - 1).psi_inv().0)
}

/// `lrpush(G, i, H/scale, j)`: slots `i+1..j-1` become `G^j ⋏ G^i ⋏ H^{d-j+s-i} / scale`.
pub fn push<S: Scalar>(
    g: &DecoratedFlag<S>,
    i: usize,
    h: &DecoratedFlag<S>,
    j: usize,
    scale: &S,
) -> Result<DecoratedFlag<S>, FlagError> {
    let d = g.dim();
    if !(i < j && j <= d) {
        return Err(FlagError::DegenerateDecoration(format!(
            "push with i = {}, j = {}",
            i, j
        )));
    }
    let inv = S::one()
        .div(scale)
        .map_err(|_| FlagError::DegenerateDecoration("zero push scale".into()))?;
    let mut out = g.clone();
    for s in i + 1..j {
        let e = g
            .get(j)
            .mixed_wedge(&g.get(i).mixed_wedge(h.get(d - j + s - i)));
        if e.grade() != s {
            return Err(GradeError::Expected(s, e.grade()).into());
        }
        out.comps[s] = e.scale(&inv);
    }
    Ok(out)
}

pub fn lpush<S: Scalar>(
    g: &DecoratedFlag<S>,
    i: usize,
    h: &DecoratedFlag<S>,
) -> Result<DecoratedFlag<S>, FlagError> {
    push(g, i, h, g.dim(), &S::one())
}

pub fn rpush<S: Scalar>(
    h: &DecoratedFlag<S>,
    g: &DecoratedFlag<S>,
    j: usize,
) -> Result<DecoratedFlag<S>, FlagError> {
    push(g, 0, h, j, &S::one())
}

/// A marked word with one flag per gap, `flags.len() == word.len() + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoration<S> {
    pub word: MarkedWord,
    pub flags: Vec<DecoratedFlag<S>>,
}

impl<S: Scalar> Decoration<S> {
    /// Crossing value of every letter.
    pub fn crossing_values(&self) -> Result<Vec<S>, FlagError> {
        self.word
            .letters
            .iter()
            .enumerate()
            .map(|(i, &c)| crossing_value(&self.flags[i], &self.flags[i + 1], c as usize))
            .collect()
    }

    /// Whether every unmarked crossing value is `1`.
    pub fn is_normalized(&self) -> Result<bool, FlagError> {
        let cv = self.crossing_values()?;
        Ok(cv
            .iter()
            .zip(&self.word.marks)
            .all(|(c, &m)| m || c.is_one()))
    }
}

/// The flags `F_1..F_n` and the frozen scalars `f_1..f_n` of a point.
#[derive(Clone, Debug)]
pub struct SignatureFlags<S> {
    pub d: usize,
    pub flags: Vec<DecoratedFlag<S>>,
    pub f: Vec<S>,
}

impl<S: Scalar> SignatureFlags<S> {
    pub fn n(&self) -> usize {
        self.flags.len()
    }

    /// `F_j` at a 1-based cyclic index.
    pub fn flag(&self, j: i64) -> &DecoratedFlag<S> {
        &self.flags[(j - 1).rem_euclid(self.n() as i64) as usize]
    }

    /// `F_j^k`, with `F_j^0 = 1` and `F_j^d = e`.
    pub fn comp(&self, j: i64, k: usize) -> &Extensor<S> {
        self.flag(j).get(k)
    }

    pub fn f_at(&self, j: i64) -> &S {
        &self.f[(j - 1).rem_euclid(self.n() as i64) as usize]
    }
}

/// `u_j ⋏ ... ⋏ u_{j'}` for the smallest `j' ≥ j` with `σ(j) + ... + σ(j') ≡ k (mod d)`.
pub fn chain_to_residue<S: Scalar>(
    u: &Point<S>,
    j: i64,
    k: usize,
) -> Result<Extensor<S>, FlagError> {
    let d = u.d as i64;
    let mut sum = 0i64;
    let mut items = Vec::new();
    for t in 0..(u.n() as i64) * d + 1 {
        let pos = j + t;
        sum += u.sig.at(pos) as i64;
        items.push(u.at(pos).clone());
        if sum.rem_euclid(d) == k as i64 {
            return Ok(mixed_wedge_chain(&items));
        }
    }
    Err(FlagError::NotAdmissible)
}

pub fn flags_from_point<S: Scalar>(u: &Point<S>) -> Result<SignatureFlags<S>, FlagError> {
    let d = u.d;
    let mut flags = Vec::with_capacity(u.n());
    let mut f = Vec::with_capacity(u.n());
    for j in 1..=u.n() as i64 {
        let interior = (1..d)
            .map(|k| chain_to_residue(u, j, k))
            .collect::<Result<Vec<_>, _>>()?;
        flags.push(DecoratedFlag::new(d, interior)?);
        let fj = chain_to_residue(u, j, 0)?;
        let value = fj
            .scalar_value()
            .ok_or(FlagError::Grade(GradeError::Expected(0, fj.grade())))?;
        if value.is_zero() {
            return Err(FlagError::NotGeneric(j));
        }
        f.push(value);
    }
    Ok(SignatureFlags { d, flags, f })
}

/// The interpolating flag `F_{j,k}` between `F_j` and `F_{j+1}`.
pub fn interleaved<S: Scalar>(
    fl: &SignatureFlags<S>,
    black: bool,
    j: i64,
    k: usize,
) -> DecoratedFlag<S> {
    let d = fl.d;
    let (a, b) = (fl.flag(j), fl.flag(j + 1));
    let interior = (1..d)
        .map(|i| {
            let from_j = if black { i >= k } else { i <= d - k };
            if from_j {
                a.get(i).clone()
            } else {
                b.get(i).clone()
            }
        })
        .collect();
    DecoratedFlag::new(d, interior).expect("grades come from flags")
}

/// The normalized decoration of `β(p, q)`: `F_{j,1}, ..., F_{j,d-1}` for `p ≤ j < q`, then `F_q`.
pub fn decorate_beta<S: Scalar>(
    u: &Point<S>,
    fl: &SignatureFlags<S>,
    p: i64,
    q: i64,
) -> Decoration<S> {
    let word = BetaSigma::new(&u.sig, u.d).slice(p, q);
    let mut flags = Vec::with_capacity(word.len() + 1);
    for j in p..q {
        for k in 1..u.d {
            flags.push(interleaved(fl, u.is_black(j), j, k));
        }
    }
    flags.push(fl.flag(q).clone());
    Decoration { word, flags }
}

/// Walk an interval word from `from` to `to`: each letter takes its slot from `to`.
fn interval_flags<S: Scalar>(
    w: &IntervalWord,
    from: &DecoratedFlag<S>,
    to: &DecoratedFlag<S>,
) -> Vec<DecoratedFlag<S>> {
    let mut cur = from.clone();
    let mut out = Vec::new();
    for c in w.letters() {
        cur = cur.with(c as usize, to.get(c as usize).clone());
        out.push(cur.clone());
    }
    out
}

/// The unique normalized decoration of a complete nested word from `G` to `H`.
pub fn decorate_nested<S: Scalar>(
    t: &NestedWordShape,
    g: &DecoratedFlag<S>,
    h: &DecoratedFlag<S>,
) -> Result<Decoration<S>, FlagError> {
    let mut flags = vec![g.clone()];
    for w in &t.words {
        let (i, j) = (w.lo as usize, w.hi as usize);
        let next = push(g, i - 1, h, j + 1, &S::one())?;
        let inner = interval_flags(w, flags.last().expect("nonempty"), &next);
        flags.extend(inner);
    }
    Ok(Decoration {
        word: t.marked(),
        flags,
    })
}

/// Per-point degrees of a multi-homogeneous polynomial over the coordinates of `n` points.
pub fn multidegree(x: &Polynomial, n: usize) -> Result<Vec<u32>, FlagError> {
    let mut seen: Option<Vec<u32>> = None;
    for (m, _) in x.terms() {
        let deg = Polynomial::term_point_degrees(m, n);
        match &seen {
            None => seen = Some(deg),
            Some(s) if *s != deg => return Err(FlagError::NotMultiHomogeneous),
            _ => {}
        }
    }
    Ok(seen.unwrap_or_else(|| vec![0; n]))
}

/// Text form of a flag for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagText {
    pub components: Vec<String>,
}

impl<S: Scalar> From<&DecoratedFlag<S>> for FlagText {
    fn from(f: &DecoratedFlag<S>) -> Self {
        FlagText {
            components: f.interior().iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests;
