//! Patches, strips, the initial weave, and the small auxiliary weaves.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::reduce::braid_path;
use super::{Layer, LayerKind, Weave, WeaveError};
use crate::signature::Signature;
use crate::words::{
    beta_sigma, concat_intervals, concat_marked, is_nested, Direction, IntervalWord,
    NestedWordShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatchKind {
    X,
    H,
    Y,
    Degenerate,
}

/// Bottom pair of a patch applied to `left right`.
pub fn patch_output(
    kind: PatchKind,
    left: IntervalWord,
    right: IntervalWord,
) -> Result<Vec<IntervalWord>, WeaveError> {
    use Direction::*;
    let bad = || {
        WeaveError::InvalidIndices(format!(
            "{:?} patch does not apply to {} | {}",
            kind, left, right
        ))
    };
    if !left.same_interval(&right) {
        return Err(bad());
    }
    let (i, j) = (left.lo, left.hi);
    if kind == PatchKind::Degenerate {
        return if i == j { Ok(vec![left]) } else { Err(bad()) };
    }
    if i == j {
        return Err(bad());
    }
    let out = match (kind, left.dir, right.dir) {
        (PatchKind::X, Increasing, Decreasing) => vec![IntervalWord::dec(j, i + 1), left],
        (PatchKind::X, Decreasing, Increasing) => vec![IntervalWord::inc(i, j - 1), left],
        (PatchKind::H, Increasing, Increasing) => vec![IntervalWord::inc(i + 1, j), left],
        (PatchKind::H, Decreasing, Decreasing) => vec![IntervalWord::dec(j - 1, i), left],
        (PatchKind::Y, Increasing, Decreasing) => vec![IntervalWord::inc(i, j - 1), right],
        (PatchKind::Y, Decreasing, Increasing) => vec![IntervalWord::dec(j, i + 1), right],
        _ => return Err(bad()),
    };
    Ok(out)
}

type PatchKey = (PatchKind, IntervalWord, IntervalWord);

fn cache() -> &'static Mutex<HashMap<PatchKey, Vec<Layer>>> {
    static C: OnceLock<Mutex<HashMap<PatchKey, Vec<Layer>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Layers (positions relative to the first letter of `left`) realizing a patch.
///
/// Found by breadth-first search over move sequences, moves ordered by kind
/// then position. A normal patch has one merge; for `X` and `H` its braids
/// have bottom-middle colors exactly `lo..hi-1` (`lo+1..hi` when `left` is
/// decreasing), each once, and `Y` and
/// degenerate patches have no braids.
pub fn build_patch(
    kind: PatchKind,
    left: IntervalWord,
    right: IntervalWord,
    _d: usize,
) -> Result<Vec<Layer>, WeaveError> {
    let key = (kind, left, right);
    if let Some(l) = cache().lock().expect("patch cache").get(&key) {
        return Ok(l.clone());
    }
    let target = concat_intervals(&patch_output(kind, left, right)?);
    let start = concat_intervals(&[left, right]);
    let (lo, hi) = (left.lo, left.hi);
    let colors = match left.dir {
        Direction::Increasing => lo..hi,
        Direction::Decreasing => lo + 1..hi + 1,
    };
    let braids_needed: u32 = match kind {
        PatchKind::X | PatchKind::H => colors.fold(0, |m, c| m | 1 << c),
        _ => 0,
    };
    let budget = 4 * (hi - lo) as usize + 2;

    type State = (Vec<u8>, u8, u32);
    let mut parent: HashMap<State, (State, Layer)> = HashMap::new();
    let mut seen: HashSet<State> = HashSet::new();
    let s0: State = (start, 0, 0);
    seen.insert(s0.clone());
    let mut queue = VecDeque::from([(s0.clone(), 0usize)]);
    let mut found = None;
    while let Some((st, depth)) = queue.pop_front() {
        if st.0 == target && st.1 == 1 && st.2 == braids_needed {
            found = Some(st);
            break;
        }
        if depth == budget {
            continue;
        }
        let w = &st.0;
        let mut moves = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if st.1 == 0 && w[p] == w[p + 1] {
                moves.push(Layer::merge(p + 1));
            }
        }
        for p in 0..w.len().saturating_sub(1) {
            if w[p].abs_diff(w[p + 1]) > 1 {
                moves.push(Layer::swap(p + 1));
            }
        }
        for p in 0..w.len().saturating_sub(2) {
            if w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
                let c = w[p];
                if braids_needed >> c & 1 == 1 && st.2 >> c & 1 == 0 {
                    moves.push(Layer::braid(p + 1));
                }
            }
        }
        for l in moves {
            let next_w = l.apply(w).expect("move generated as applicable");
            let next: State = match l.kind {
                LayerKind::Merge => (next_w, st.1 + 1, st.2),
                LayerKind::Swap => (next_w, st.1, st.2),
                LayerKind::Braid => (next_w, st.1, st.2 | 1 << w[l.pos - 1]),
            };
            if seen.insert(next.clone()) {
                parent.insert(next.clone(), (st.clone(), l));
                queue.push_back((next, depth + 1));
            }
        }
    }
    let mut cur = found.ok_or(WeaveError::SearchFailed)?;
    let mut layers = Vec::new();
    while cur != s0 {
        let (prev, l) = parent.remove(&cur).expect("path back to start");
        layers.push(l);
        cur = prev;
    }
    layers.reverse();
    cache()
        .lock()
        .expect("patch cache")
        .insert(key, layers.clone());
    Ok(layers)
}

/// What a strip did: its type and, for each patch, its kind and the layer index of its merge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripInfo {
    pub kind: PatchKind,
    pub patches: Vec<(PatchKind, usize)>,
}

/// Apply the strip to a weakly nested word at `s`; `offset` is the global layer
/// index of the first produced layer. Returns the layers, the new interval words, and the strip data.
pub fn build_strip(
    words: &[IntervalWord],
    s: usize,
    d: usize,
    offset: usize,
) -> Result<(Vec<Layer>, Vec<IntervalWord>, StripInfo), WeaveError> {
    let mut layers = Vec::new();
    let mut patches = Vec::new();
    let w0 = words[0];
    if w0.lo == w0.hi {
        for _ in 1..s {
            patches.push((PatchKind::Degenerate, offset + layers.len()));
            layers.push(Layer::merge(1));
        }
        let mut out = vec![w0];
        out.extend_from_slice(&words[s..]);
        return Ok((
            layers,
            out,
            StripInfo {
                kind: PatchKind::Degenerate,
                patches,
            },
        ));
    }
    let mut outs: Vec<IntervalWord> = Vec::new();
    let run = |outs: &mut Vec<IntervalWord>,
               layers: &mut Vec<Layer>,
               patches: &mut Vec<(PatchKind, usize)>,
               kind: PatchKind,
               a: IntervalWord,
               b: IntervalWord|
     -> Result<IntervalWord, WeaveError> {
        let shift: usize = outs.iter().map(|w| w.len()).sum();
        let local = build_patch(kind, a, b, d)?;
        let merge_at = local
            .iter()
            .position(|l| l.kind == LayerKind::Merge)
            .expect("one merge per patch");
        patches.push((kind, offset + layers.len() + merge_at));
        layers.extend(local.iter().map(|l| l.shifted(shift)));
        let pair = patch_output(kind, a, b)?;
        outs.push(pair[0]);
        Ok(pair[1])
    };
    let kind_for = |a: &IntervalWord, b: &IntervalWord| {
        if a.same_word(b) {
            PatchKind::H
        } else {
            PatchKind::X
        }
    };
    let y_branch = s >= 3 && words[0].dir != words[1].dir && words[1].same_word(&words[2]);
    let (moving, first_kind) = if y_branch {
        let m = run(
            &mut outs,
            &mut layers,
            &mut patches,
            PatchKind::Y,
            words[0],
            words[1],
        )?;
        let mut m = m;
        for k in 2..s {
            m = run(
                &mut outs,
                &mut layers,
                &mut patches,
                kind_for(&m, &words[k]),
                m,
                words[k],
            )?;
        }
        (m, PatchKind::Y)
    } else {
        let mut m = words[0];
        let first = kind_for(&words[0], &words[1]);
        for k in 1..s {
            m = run(
                &mut outs,
                &mut layers,
                &mut patches,
                kind_for(&m, &words[k]),
                m,
                words[k],
            )?;
        }
        (m, first)
    };
    let mut out = outs;
    out.push(moving);
    out.extend_from_slice(&words[s..]);
    Ok((
        layers,
        out,
        StripInfo {
            kind: first_kind,
            patches,
        },
    ))
}

/// The initial weave `β(p, q) ⇉ (complete nested word)` as a concatenation of `d - 1` strips.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InitialWeave {
    pub weave: Weave,
    pub p: i64,
    pub q: i64,
    pub strips: Vec<StripInfo>,
    pub bottom_words: Vec<IntervalWord>,
}

impl InitialWeave {
    pub fn m(&self) -> usize {
        (self.q - self.p) as usize
    }
}

pub fn check_cut(sig: &Signature, d: usize, p: i64, q: i64) -> Result<(), WeaveError> {
    let n = sig.n() as i64;
    let m = q - p;
    if m <= 0 || m >= n || m.min(n - m) < d as i64 + 1 {
        return Err(WeaveError::InvalidCut(p, q));
    }
    Ok(())
}

/// The restriction of `sig` to `[i, j]` is two monochromatic runs (or one).
fn restriction_separated(sig: &Signature, i: i64, j: i64) -> bool {
    let changes = (i..j).filter(|&k| sig.at(k) != sig.at(k + 1)).count();
    changes <= 1
}

/// Valid cuts, plus the relaxed cuts allowed for separated signatures.
pub fn check_feasible_cut(sig: &Signature, d: usize, p: i64, q: i64) -> Result<(), WeaveError> {
    if check_cut(sig, d, p, q).is_ok() {
        return Ok(());
    }
    let (n, di) = (sig.n() as i64, d as i64);
    let m = q - p;
    let ok = sig.is_separated()
        && m > 0
        && m < n
        && if n == 2 * di {
            m == di
                && restriction_separated(sig, p, q - 1)
                && restriction_separated(sig, q, p + n - 1)
        } else if n > 2 * di {
            (m == di && restriction_separated(sig, p, q - 1))
                || (n - m == di && restriction_separated(sig, q, p + n - 1))
        } else {
            false
        };
    if ok {
        Ok(())
    } else {
        Err(WeaveError::InvalidCut(p, q))
    }
}

pub fn build_initial_weave(
    sig: &Signature,
    d: usize,
    p: i64,
    q: i64,
) -> Result<InitialWeave, WeaveError> {
    check_cut(sig, d, p, q)?;
    Ok(build_initial_weave_unchecked(sig, d, p, q))
}

/// The initial weave for a feasible cut of a separated signature.
pub fn build_feasible_initial_weave(
    sig: &Signature,
    d: usize,
    p: i64,
    q: i64,
) -> Result<InitialWeave, WeaveError> {
    check_feasible_cut(sig, d, p, q)?;
    Ok(build_initial_weave_unchecked(sig, d, p, q))
}

fn build_initial_weave_unchecked(sig: &Signature, d: usize, p: i64, q: i64) -> InitialWeave {
    build_strips_from(beta_sigma(sig, d).slice_factors(p, q), d, p, q)
}

/// Run the strip algorithm on `m ≥ d - 1` full-interval factors.
pub(crate) fn build_strips_from(
    factors: Vec<IntervalWord>,
    d: usize,
    p: i64,
    q: i64,
) -> InitialWeave {
    let top = concat_marked(&factors);
    let m1 = factors.len();
    let mut words = factors;
    let mut layers = Vec::new();
    let mut strips = Vec::new();
    for r in 1..d {
        let s = m1 - r + 1;
        let (ls, next, info) =
            build_strip(&words, s, d, layers.len()).expect("strip patches exist");
        layers.extend(ls);
        words = next;
        strips.push(info);
    }
    InitialWeave {
        weave: Weave::new(d, top, layers),
        p,
        q,
        strips,
        bottom_words: words,
    }
}

/// A braid-only weave from a complete nested word to `T⁺`.
pub fn build_nested_to_tplus(t: &NestedWordShape, d: usize) -> Weave {
    assert!(
        t.is_complete(d) && is_nested(&t.words, d),
        "complete nested word expected"
    );
    let top = t.marked();
    let target = crate::words::t_plus(d).letters;
    let layers = braid_path(&top.letters, &target)
        .expect("complete nested words are braid equivalent to T⁺");
    Weave::new(d, top, layers)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RhoSide {
    /// `T⁺ ρ ⇉ T⁺`.
    RightRho,
    /// `T⁻ ρ* ⇉ T⁻`.
    RightRhoStar,
    /// Mirror image of `RightRhoStar`: `ρ rev(T⁻) ⇉ rev(T⁻)`.
    LeftRho,
    /// Mirror image of `RightRho`: `ρ* rev(T⁺) ⇉ rev(T⁺)`.
    LeftRhoStar,
}

/// The chain of `d - 1` H-patches absorbing an extra `ρ` (or `ρ*`) into `w₀`.
pub fn build_w0rho_weave(d: usize, side: RhoSide) -> Weave {
    match side {
        RhoSide::RightRho | RhoSide::RightRhoStar => {
            let inc = side == RhoSide::RightRho;
            let top_d = (d - 1) as u8;
            // Interval words of T⁺ (or T⁻) followed by ρ (or ρ*).
            let mut words: Vec<IntervalWord> = if inc {
                (1..=top_d)
                    .rev()
                    .map(|i| IntervalWord::inc(i, top_d))
                    .collect()
            } else {
                (1..=top_d).map(|j| IntervalWord::dec(j, 1)).collect()
            };
            words.push(words[d - 2]);
            let top = concat_marked(&words);
            let mut layers = Vec::new();
            // The pair being patched sits at index k-1, k of `words` counted from the right.
            for k in (1..d).rev() {
                let a = words[k - 1];
                let b = words[k];
                let kind = if a.lo == a.hi {
                    PatchKind::Degenerate
                } else {
                    PatchKind::H
                };
                let shift: usize = words[..k - 1].iter().map(|w| w.len()).sum();
                let local = build_patch(kind, a, b, d).expect("H-patch exists");
                layers.extend(local.iter().map(|l| l.shifted(shift)));
                let out = patch_output(kind, a, b).expect("H-patch applies");
                words.splice(k - 1..=k, out);
            }
            Weave::new(d, top, layers)
        }
        RhoSide::LeftRho => build_w0rho_weave(d, RhoSide::RightRhoStar).mirror(),
        RhoSide::LeftRhoStar => build_w0rho_weave(d, RhoSide::RightRho).mirror(),
    }
}

impl Weave {
    /// Reflection in a vertical line; marks are carried positionally.
    pub fn mirror(&self) -> Weave {
        let rows = self.rows().expect("valid weave");
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(t, l)| {
                let width = match l.kind {
                    LayerKind::Braid => 3,
                    _ => 2,
                };
                Layer {
                    kind: l.kind,
                    pos: rows[t].len() - (l.pos - 1) - width + 1,
                }
            })
            .collect();
        Weave::new(self.d, self.top.reverse(), layers)
    }
}

/// Layers taking `start` to `target` with exactly one merge, shortest first.
fn one_merge_path(start: &[u8], target: &[u8], budget: usize) -> Option<Vec<Layer>> {
    type State = (Vec<u8>, bool);
    let s0: State = (start.to_vec(), false);
    let mut parent: HashMap<State, (State, Layer)> = HashMap::new();
    let mut seen: HashSet<State> = HashSet::from([s0.clone()]);
    let mut queue = VecDeque::from([(s0.clone(), 0usize)]);
    while let Some((st, depth)) = queue.pop_front() {
        if st.1 && st.0 == target {
            let mut cur = st;
            let mut layers = Vec::new();
            while cur != s0 {
                let (prev, l) = parent.remove(&cur).expect("path back to start");
                layers.push(l);
                cur = prev;
            }
            layers.reverse();
            return Some(layers);
        }
        if depth == budget {
            continue;
        }
        let w = &st.0;
        let mut moves = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            if !st.1 && w[p] == w[p + 1] {
                moves.push(Layer::merge(p + 1));
            }
            if w[p].abs_diff(w[p + 1]) > 1 {
                moves.push(Layer::swap(p + 1));
            }
        }
        for p in 0..w.len().saturating_sub(2) {
            if w[p] == w[p + 2] && w[p].abs_diff(w[p + 1]) == 1 {
                moves.push(Layer::braid(p + 1));
            }
        }
        for l in moves {
            let next: State = (
                l.apply(w).expect("move generated as applicable"),
                st.1 || l.kind == LayerKind::Merge,
            );
            if seen.insert(next.clone()) {
                parent.insert(next.clone(), (st.clone(), l));
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

/// A generalized patch `m W ⇉ X m` with one merge, where `X` is an interval
/// word one letter shorter than `W` (absent when `W` has one letter).
/// Returns `X` and the layers, positions relative to the first letter of `m`.
pub fn build_generalized_patch(
    m: IntervalWord,
    w: IntervalWord,
    d: usize,
) -> Result<(Option<IntervalWord>, Vec<Layer>), WeaveError> {
    let start = concat_intervals(&[m, w]);
    let product = crate::words::demazure_product(&start, d);
    let mut candidates: Vec<Option<IntervalWord>> = Vec::new();
    if w.len() == 1 {
        candidates.push(None);
    } else {
        let len = w.len() as u8 - 1;
        for lo in 1..=(d as u8).saturating_sub(len) {
            let hi = lo + len - 1;
            candidates.push(Some(IntervalWord::inc(lo, hi)));
            if len > 1 {
                candidates.push(Some(IntervalWord::dec(hi, lo)));
            }
        }
    }
    let target = |x: &Option<IntervalWord>| {
        let mut t = x.map(|x| x.letters()).unwrap_or_default();
        t.extend(m.letters());
        t
    };
    // reduced outputs first, then in candidate order
    let mut ok: Vec<(bool, Option<IntervalWord>)> = candidates
        .into_iter()
        .filter(|x| crate::words::demazure_product(&target(x), d) == product)
        .map(|x| (!crate::words::is_reduced(&target(&x), d), x))
        .collect();
    ok.sort_by_key(|e| e.0);
    let budget = 4 * (m.len() + w.len()) + 2;
    for (_, x) in ok {
        if let Some(l) = one_merge_path(&start, &target(&x), budget) {
            return Ok((x, l));
        }
    }
    Err(WeaveError::SearchFailed)
}

/// A reduced weave from `β(p, q)` on which one merge cycle carries the
/// determinant of the chosen same-colored factors after decoration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylWeave {
    pub weave: Weave,
    /// Layer index of the merge whose cycle should carry the determinant,
    /// when the construction produced one.
    pub carrier: Option<usize>,
}

/// The chosen factors are, one by one from the right, carried past the
/// factors in between by generalized strips until they become adjacent.
/// The rest is reduced greedily and braided to the initial weave's bottom.
pub fn build_weyl_determinant_weave(
    sig: &Signature,
    d: usize,
    p: i64,
    q: i64,
    indices: &[i64],
) -> Result<WeylWeave, WeaveError> {
    let bad = |why: &str| WeaveError::InvalidIndices(format!("{:?}: {}", indices, why));
    if indices.len() != d {
        return Err(bad("need exactly d indices"));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("indices must increase"));
    }
    if indices[0] < p || indices[d - 1] > q {
        return Err(bad("indices must lie in [p, q]"));
    }
    check_feasible_cut(sig, d, p, q)?;
    let black = sig.is_black(indices[0]);
    if indices.iter().any(|&i| sig.is_black(i) != black) {
        return Err(bad("indices must share a color"));
    }
    let factors = beta_sigma(sig, d).slice_factors(p, q);
    let top = concat_marked(&factors);
    let mut words = factors;
    // pos[k]: the index in `words` of the factor starting at indices[k]
    let mut pos: Vec<usize> = indices.iter().map(|&i| (i - p) as usize).collect();
    let mut layers = Vec::new();
    let mut carrier = None;
    for k in (0..d - 1).rev() {
        let (a, b) = (pos[k], pos[k + 1].min(words.len()));
        let moving = words[a];
        let mut outs: Vec<IntervalWord> = Vec::new();
        let before: usize = words[..a].iter().map(|w| w.len()).sum();
        for t in a + 1..b {
            let shift = before + outs.iter().map(|w| w.len()).sum::<usize>();
            let (x, local) = build_generalized_patch(moving, words[t], d)?;
            let merge_at = local
                .iter()
                .position(|l| l.kind == LayerKind::Merge)
                .expect("one merge per patch");
            if k == 0 {
                carrier = Some(layers.len() + merge_at);
            }
            layers.extend(local.iter().map(|l| l.shifted(shift)));
            outs.extend(x);
        }
        let removed = b - a;
        let added = outs.len() + 1;
        let mut next = words[..a].to_vec();
        next.extend(outs);
        next.push(moving);
        next.extend_from_slice(&words[b..]);
        words = next;
        pos[k] = a + added - 1;
        for p in pos.iter_mut().skip(k + 1) {
            *p = *p + added - removed;
        }
    }
    let partial = Weave::new(d, top.clone(), layers);
    let row = partial.bottom();
    let tail = super::reduce::greedy_reduction(&row, d);
    let mut weave = partial.then(&tail.layers);
    let bottom = build_initial_weave_unchecked(sig, d, p, q)
        .weave
        .bottom()
        .letters;
    let braids = braid_path(&weave.bottom().letters, &bottom).ok_or(WeaveError::SearchFailed)?;
    weave = weave.then(&braids);
    Ok(WeylWeave { weave, carrier })
}
