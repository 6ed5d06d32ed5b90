//! Pushing a top decoration through every layer of a weave.

use std::collections::HashMap;

use super::{crossing_value, qwed, qwed_dual, DecoratedFlag, Decoration, FlagError};
use crate::exterior::Extensor;
use crate::ring::Scalar;
use crate::weave::{Cycle, LayerKind, Origin, Weave};

/// Flags on every row and one `Δ_γ` per cycle, in the order of [`Weave::cycles`].
#[derive(Clone, Debug)]
pub struct Propagation<S> {
    pub rows: Vec<Vec<DecoratedFlag<S>>>,
    pub cycles: Vec<Cycle>,
    pub delta: Vec<S>,
}

fn degenerate(what: &str, t: usize, e: FlagError) -> FlagError {
    FlagError::DegenerateDecoration(format!("{} at layer {}: {}", what, t, e))
}

impl<S: Scalar> Propagation<S> {
    /// `Π Δ_γ^{γ(e)}` over cycles with a value, for strand `i` of row `t`.
    pub fn edge_product(&self, t: usize, i: usize) -> S {
        product(&self.cycles, &self.delta, t, i)
    }

    /// The decoration of the bottom row; its word is unmarked.
    pub fn bottom(&self, w: &Weave) -> Decoration<S> {
        Decoration {
            word: w.bottom(),
            flags: self.rows.last().expect("at least the top row").clone(),
        }
    }

    /// Every edge of every row satisfies `Δ_e = Π Δ_γ^{γ(e)}`; returns the first failure.
    pub fn check_edges(&self, w: &Weave) -> Result<(), String> {
        let rows = w.rows().map_err(|e| e.to_string())?;
        for (t, word) in rows.iter().enumerate() {
            for (i, &c) in word.iter().enumerate() {
                let cv = crossing_value(&self.rows[t][i], &self.rows[t][i + 1], c as usize)
                    .map_err(|e| format!("row {} strand {}: {}", t, i, e))?;
                if cv != self.edge_product(t, i) {
                    return Err(format!(
                        "row {} strand {}: crossing value {} differs from the cycle product",
                        t, i, cv
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn delta_of(&self, origin: Origin) -> Option<&S> {
        self.cycles
            .iter()
            .position(|c| c.origin == origin)
            .map(|k| &self.delta[k])
    }
}

fn product<S: Scalar>(cycles: &[Cycle], delta: &[S], t: usize, i: usize) -> S {
    let mut acc = S::one();
    for (g, d) in cycles.iter().zip(delta) {
        let w = g.weights[t][i];
        if w > 0 {
            acc = acc.mul(&d.pow(w));
        }
    }
    acc
}

/// Propagate `top` (a normalized decoration of `w.top`) through `w`.
pub fn propagate_decoration<S: Scalar>(
    w: &Weave,
    top: &Decoration<S>,
) -> Result<Propagation<S>, FlagError> {
    let rows = w
        .rows()
        .map_err(|e| FlagError::DegenerateDecoration(e.to_string()))?;
    if top.word.letters != rows[0] || top.flags.len() != rows[0].len() + 1 {
        return Err(FlagError::DegenerateDecoration(
            "top decoration does not fit the top word".into(),
        ));
    }
    let cycles = w.cycles();
    let index: HashMap<Origin, usize> = cycles
        .iter()
        .enumerate()
        .map(|(k, c)| (c.origin, k))
        .collect();
    let mut delta: Vec<S> = Vec::with_capacity(cycles.len());
    let cvs = top
        .crossing_values()
        .map_err(|e| degenerate("top row", 0, e))?;
    for (i, cv) in cvs.iter().enumerate() {
        if top.word.marks[i] {
            delta.push(cv.clone());
        } else if !cv.is_one() {
            return Err(FlagError::DegenerateDecoration(format!(
                "unmarked top letter {} has crossing value {}",
                i, cv
            )));
        }
    }
    let mut flags = top.flags.clone();
    let mut all = vec![flags.clone()];
    for (t, layer) in w.layers.iter().enumerate() {
        let word = &rows[t];
        let i = layer.pos - 1;
        match layer.kind {
            LayerKind::Swap => {
                let b = word[i + 1] as usize;
                let mid = flags[i].with(b, flags[i + 2].get(b).clone());
                flags[i + 1] = mid;
            }
            LayerKind::Merge => {
                let c = word[i] as usize;
                flags.remove(i + 1);
                let de = crossing_value(&flags[i], &flags[i + 1], c)
                    .map_err(|e| degenerate("merge", t, e))?;
                let before = product(&cycles[..delta.len()], &delta, t + 1, i);
                let k = index[&Origin::Merge(t)];
                debug_assert_eq!(k, delta.len());
                delta.push(de.div(&before).map_err(|e| {
                    degenerate("merge", t, FlagError::DegenerateDecoration(e.to_string()))
                })?);
            }
            LayerKind::Braid => {
                let (a, b) = (word[i] as usize, word[i + 1] as usize);
                let (u, v) = (flags[i].clone(), flags[i + 3].clone());
                let want = product(&cycles[..delta.len()], &delta, t + 1, i + 1);
                let (left, right) = if b == a + 1 {
                    braid_primal(&u, &v, a, &want)
                } else {
                    braid_dual(&u, &v, b, &want)
                }
                .map_err(|e| degenerate("braid", t, e))?;
                flags[i + 1] = left;
                flags[i + 2] = right;
            }
        }
        all.push(flags.clone());
    }
    Ok(Propagation {
        rows: all,
        cycles,
        delta,
    })
}

/// `c (c+1) c ⇉ (c+1) c (c+1)` between `U` and `V`; the middle edge must carry `want`.
fn braid_primal<S: Scalar>(
    u: &DecoratedFlag<S>,
    v: &DecoratedFlag<S>,
    c: usize,
    want: &S,
) -> Result<(DecoratedFlag<S>, DecoratedFlag<S>), FlagError> {
    let raw = qwed(u.get(c), v.get(c), u.get(c - 1))?;
    let x = scaled(&raw, want)?;
    let t = u.with(c + 1, x.clone());
    let s = t.with(c, v.get(c).clone());
    Ok((t, s))
}

/// `(c+1) c (c+1) ⇉ c (c+1) c`: the new grade-`c` component comes from the dual quotient wedge.
fn braid_dual<S: Scalar>(
    u: &DecoratedFlag<S>,
    v: &DecoratedFlag<S>,
    c: usize,
    want: &S,
) -> Result<(DecoratedFlag<S>, DecoratedFlag<S>), FlagError> {
    let raw = qwed_dual(u.get(c + 1), v.get(c + 1), u.get(c + 2))?;
    let t0 = u.with(c, raw.clone());
    let s0 = t0.with(c + 1, v.get(c + 1).clone());
    let mu = crossing_value(&t0, &s0, c + 1)?;
    // The crossing value scales inversely with the shared grade-c component.
    let x = raw.scale(
        &mu.div(want)
            .map_err(|e| FlagError::DegenerateDecoration(e.to_string()))?,
    );
    let t = u.with(c, x);
    let s = t.with(c + 1, v.get(c + 1).clone());
    Ok((t, s))
}

fn scaled<S: Scalar>(x: &Extensor<S>, by: &S) -> Result<Extensor<S>, FlagError> {
    let inv = S::one()
        .div(by)
        .map_err(|e| FlagError::DegenerateDecoration(e.to_string()))?;
    Ok(x.scale(&inv))
}
