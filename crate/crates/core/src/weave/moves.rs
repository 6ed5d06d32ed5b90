//! Local rewrites of consecutive layers.

use serde::{Deserialize, Serialize};

use super::{Layer, LayerKind, Weave, WeaveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquivalenceMove {
    /// Exchange two consecutive layers acting on disjoint strands.
    Commute,
    /// Remove `Swap, Swap` or `Braid, Braid` at the same position.
    Cancel,
    /// `ijij ⇉ jijj ⇉ jij` ↔ `ijij ⇉ iiji ⇉ iji ⇉ jij`, and the mirror image.
    PushthroughBelow,
    /// `ijii ⇉ iji ⇉ jij` ↔ `ijii ⇉ jiji ⇉ jjij ⇉ jij`, and the mirror image.
    PushthroughAbove,
    /// A distant strand through a merge.
    Passthrough,
}

type Template = &'static [(LayerKind, usize)];

const B: LayerKind = LayerKind::Braid;
const M: LayerKind = LayerKind::Merge;
const S: LayerKind = LayerKind::Swap;

fn templates(m: EquivalenceMove) -> &'static [(Template, Template)] {
    match m {
        EquivalenceMove::PushthroughBelow => &[
            (&[(B, 0), (M, 2)], &[(B, 1), (M, 0), (B, 0)]),
            (&[(B, 1), (M, 0)], &[(B, 0), (M, 2), (B, 0)]),
        ],
        EquivalenceMove::PushthroughAbove => &[
            (&[(M, 2), (B, 0)], &[(B, 0), (B, 1), (M, 0)]),
            (&[(M, 0), (B, 0)], &[(B, 1), (B, 0), (M, 2)]),
        ],
        EquivalenceMove::Passthrough => &[
            (&[(S, 1), (M, 0), (S, 0)], &[(S, 0), (M, 1)]),
            (&[(M, 0), (S, 0)], &[(S, 1), (S, 0), (M, 1)]),
        ],
        _ => &[],
    }
}

fn instantiate(t: Template, p: usize) -> Vec<Layer> {
    t.iter()
        .map(|&(kind, off)| Layer { kind, pos: p + off })
        .collect()
}

fn matches(layers: &[Layer], at: usize, t: Template) -> Option<usize> {
    let first = layers.get(at)?;
    let p = first.pos.checked_sub(t[0].1)?;
    if p == 0 {
        return None;
    }
    let want = instantiate(t, p);
    (layers.get(at..at + want.len())? == want.as_slice()).then_some(p)
}

fn footprint(l: &Layer) -> (usize, usize) {
    match l.kind {
        LayerKind::Braid => (3, 3),
        LayerKind::Swap => (2, 2),
        LayerKind::Merge => (2, 1),
    }
}

fn splice(w: &Weave, at: usize, len: usize, new: Vec<Layer>) -> Result<Weave, WeaveError> {
    let mut out = w.clone();
    out.layers.splice(at..at + len, new.iter().copied());
    let before = w.rows()?;
    let after = out.rows().map_err(|_| WeaveError::PatternMismatch(at))?;
    if before[at + len] != after[at + new.len()] {
        return Err(WeaveError::PatternMismatch(at));
    }
    Ok(out)
}

/// Apply an equivalence move whose left-hand side starts at layer `at`.
pub fn apply_equivalence_move(
    w: &Weave,
    at: usize,
    m: EquivalenceMove,
) -> Result<Weave, WeaveError> {
    match m {
        EquivalenceMove::Commute => {
            let (a, b) = (
                *w.layers.get(at).ok_or(WeaveError::PatternMismatch(at))?,
                *w.layers
                    .get(at + 1)
                    .ok_or(WeaveError::PatternMismatch(at))?,
            );
            let (ia, oa) = footprint(&a);
            let (ib, ob) = footprint(&b);
            let (i, j) = (a.pos, b.pos);
            let new = if j + ib <= i {
                // b acts to the left of a.
                vec![
                    b,
                    Layer {
                        kind: a.kind,
                        pos: i + ob - ib,
                    },
                ]
            } else if j >= i + oa {
                vec![
                    Layer {
                        kind: b.kind,
                        pos: j + ia - oa,
                    },
                    a,
                ]
            } else {
                return Err(WeaveError::PatternMismatch(at));
            };
            splice(w, at, 2, new)
        }
        EquivalenceMove::Cancel => {
            let (a, b) = (w.layers.get(at), w.layers.get(at + 1));
            match (a, b) {
                (Some(a), Some(b)) if a == b && a.kind != LayerKind::Merge => {
                    splice(w, at, 2, vec![])
                }
                _ => Err(WeaveError::PatternMismatch(at)),
            }
        }
        _ => {
            for &(lhs, rhs) in templates(m) {
                if let Some(p) = matches(&w.layers, at, lhs) {
                    return splice(w, at, lhs.len(), instantiate(rhs, p));
                }
                if let Some(p) = matches(&w.layers, at, rhs) {
                    return splice(w, at, rhs.len(), instantiate(lhs, p));
                }
            }
            Err(WeaveError::PatternMismatch(at))
        }
    }
}

/// `iii ⇉ ii ⇉ i` merging on the left, exchanged with merging on the right.
pub fn apply_mutation_move(w: &Weave, at: usize) -> Result<Weave, WeaveError> {
    let (a, b) = match (w.layers.get(at), w.layers.get(at + 1)) {
        (Some(a), Some(b)) if a.kind == LayerKind::Merge && b.kind == LayerKind::Merge => (*a, *b),
        _ => return Err(WeaveError::PatternMismatch(at)),
    };
    let new = if a.pos == b.pos {
        vec![Layer::merge(a.pos + 1), Layer::merge(a.pos)]
    } else if a.pos == b.pos + 1 {
        vec![Layer::merge(b.pos), Layer::merge(b.pos)]
    } else {
        return Err(WeaveError::PatternMismatch(at));
    };
    splice(w, at, 2, new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::MarkedWord;

    fn marked(s: &str) -> MarkedWord {
        s.parse().unwrap()
    }

    #[test]
    fn pushthrough_keeps_bottom_weights() {
        let w = Weave::new(
            3,
            marked("1' 2' 1' 2'"),
            vec![Layer::braid(1), Layer::merge(3)],
        );
        let v = apply_equivalence_move(&w, 0, EquivalenceMove::PushthroughBelow).unwrap();
        assert_eq!(
            v.layers,
            vec![Layer::braid(2), Layer::merge(1), Layer::braid(1)]
        );
        assert_eq!(v.bottom(), w.bottom());
        let (a, b) = (w.cycles(), v.cycles());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.bottom(), y.bottom());
        }
        let back = apply_equivalence_move(&v, 0, EquivalenceMove::PushthroughBelow).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn passthrough_keeps_quiver() {
        let w = Weave::new(
            4,
            marked("1' 3' 1'"),
            vec![Layer::swap(2), Layer::merge(1), Layer::swap(1)],
        );
        let v = apply_equivalence_move(&w, 0, EquivalenceMove::Passthrough).unwrap();
        assert_eq!(v.layers, vec![Layer::swap(1), Layer::merge(2)]);
        assert_eq!(v.quiver(), w.quiver());
    }

    #[test]
    fn commute_disjoint_layers() {
        let w = Weave::unmarked(5, "11344", vec![Layer::merge(1), Layer::merge(3)]);
        let v = apply_equivalence_move(&w, 0, EquivalenceMove::Commute).unwrap();
        assert_eq!(v.layers, vec![Layer::merge(4), Layer::merge(1)]);
        assert_eq!(v.bottom(), w.bottom());
        assert!(apply_equivalence_move(&w, 1, EquivalenceMove::Commute).is_err());
    }

    #[test]
    fn mutation_move_round_trip() {
        let w = Weave::unmarked(3, "111", vec![Layer::merge(1), Layer::merge(1)]);
        let v = apply_mutation_move(&w, 0).unwrap();
        assert_eq!(v.layers, vec![Layer::merge(2), Layer::merge(1)]);
        assert_eq!(apply_mutation_move(&v, 0).unwrap(), w);
    }
}
