//! Predicted `Δ` values for the cycles of the initial weave.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::SignatureFlags;
use crate::exterior::{mixed_wedge_chain, Extensor, Point};
use crate::ring::Scalar;
use crate::signature::Signature;
use crate::weave::patch::{build_initial_weave, InitialWeave};
use crate::weave::{Origin, WeaveError};

/// One side of a closed form `A ∧ B` with `grade A + grade B = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// `F_j^k`.
    Flag { j: i64, k: usize },
    /// The wedge of the vectors at the black positions of `[from, to]`.
    Blacks { from: i64, to: i64 },
    /// The mixed-wedge chain of the covectors at the white positions of `[from, to]`.
    Whites { from: i64, to: i64 },
}

impl Factor {
    pub fn eval<S: Scalar>(&self, u: &Point<S>, fl: &SignatureFlags<S>) -> Extensor<S> {
        match *self {
            Factor::Flag { j, k } => fl.comp(j, k).clone(),
            Factor::Blacks { from, to } => {
                let vs: Vec<_> = (from..=to)
                    .filter(|&j| u.is_black(j))
                    .map(|j| u.at(j).clone())
                    .collect();
                if vs.is_empty() {
                    Extensor::one(u.d)
                } else {
                    mixed_wedge_chain(&vs)
                }
            }
            Factor::Whites { from, to } => {
                let ws: Vec<_> = (from..=to)
                    .filter(|&j| !u.is_black(j))
                    .map(|j| u.at(j).clone())
                    .collect();
                if ws.is_empty() {
                    Extensor::volume(u.d)
                } else {
                    mixed_wedge_chain(&ws)
                }
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Flag { j, k } => write!(f, "F_{}^{}", j, k),
            Factor::Blacks { from, to } => write!(f, "B[{}..{}]", from, to),
            Factor::Whites { from, to } => write!(f, "W[{}..{}]", from, to),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub origin: Origin,
    pub left: Factor,
    pub right: Factor,
}

impl ClosedForm {
    pub fn eval<S: Scalar>(&self, u: &Point<S>, fl: &SignatureFlags<S>) -> S {
        self.left
            .eval(u, fl)
            .wedge(&self.right.eval(u, fl))
            .expect("complementary grades")
            .det()
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ∧ {}", self.left, self.right)
    }
}

fn flag(j: i64, k: usize) -> Factor {
    Factor::Flag { j, k }
}

/// The closed form of the `i`-th patch cycle of strip `r` (both 1-based).
pub fn strip_cycle(sig: &Signature, d: usize, p: i64, r: usize, i: usize) -> (Factor, Factor) {
    let ri = r as i64;
    let t = p + ri + i as i64;
    let last = sig.at(p + ri);
    if (p..=p + ri).all(|j| sig.at(j) == last) {
        return if last == 1 {
            (flag(p, r), flag(t, d - r))
        } else {
            (flag(p, d - r), flag(t, r))
        };
    }
    let x = (p..p + ri).filter(|&j| sig.is_black(j)).count();
    let y = r - x;
    let type_x = sig.at(p + ri + 1) != last;
    if last == -1 {
        if i == 1 {
            (
                Factor::Blacks {
                    from: p,
                    to: p + ri - 1,
                },
                flag(p + ri + 1, d - x),
            )
        } else if type_x {
            (flag(p, x), flag(t, d - x))
        } else {
            (flag(p, d - (y + 1)), flag(t, y + 1))
        }
    } else if i == 1 {
        (
            Factor::Whites {
                from: p,
                to: p + ri - 1,
            },
            flag(p + ri + 1, y),
        )
    } else if type_x {
        (flag(p, d - y), flag(t, y))
    } else {
        (flag(p, x + 1), flag(t, d - (x + 1)))
    }
}

/// The closed form of the `i`-th marked top cycle (1-based).
pub fn mark_cycle(sig: &Signature, d: usize, p: i64, i: usize) -> (Factor, Factor) {
    let j = p + i as i64 - 1;
    if sig.is_black(j) {
        (flag(j, 1), flag(j + 1, d - 1))
    } else {
        (flag(j, d - 1), flag(j + 1, 1))
    }
}

/// Closed forms for every cycle of an initial weave, in cycle order.
pub fn closed_forms_for(sig: &Signature, d: usize, iw: &InitialWeave) -> Vec<ClosedForm> {
    let mut out = Vec::new();
    let mut mark = 0;
    for c in iw.weave.cycles() {
        let (left, right) = match c.origin {
            Origin::Mark(_) => {
                mark += 1;
                mark_cycle(sig, d, iw.p, mark)
            }
            Origin::Merge(t) => {
                let (r, i) = iw
                    .strips
                    .iter()
                    .enumerate()
                    .find_map(|(r, s)| {
                        s.patches
                            .iter()
                            .position(|&(_, l)| l == t)
                            .map(|i| (r + 1, i + 1))
                    })
                    .expect("every merge of the initial weave belongs to a patch");
                strip_cycle(sig, d, iw.p, r, i)
            }
        };
        out.push(ClosedForm {
            origin: c.origin,
            left,
            right,
        });
    }
    out
}

pub fn initial_seed_closed_forms(
    sig: &Signature,
    d: usize,
    p: i64,
    q: i64,
) -> Result<Vec<ClosedForm>, WeaveError> {
    Ok(closed_forms_for(
        sig,
        d,
        &build_initial_weave(sig, d, p, q)?,
    ))
}
