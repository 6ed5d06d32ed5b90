//! Demazure weaves stored as a top word plus a sequence of one-vertex layers.
//!
//! Row `t` is the word after `t` layers. An edge piece is a pair
//! (row, strand index); a cycle assigns a weight to every edge piece, and
//! weights are constant along a weave line.

mod moves;
pub mod patch;
mod reduce;

pub use moves::{apply_equivalence_move, apply_mutation_move, EquivalenceMove};
pub use patch::{
    build_generalized_patch, build_initial_weave, build_nested_to_tplus, build_patch, build_strip,
    build_w0rho_weave, build_weyl_determinant_weave, patch_output, InitialWeave, PatchKind,
    RhoSide, StripInfo, WeylWeave,
};
pub use reduce::{
    braid_path, greedy_reduction, greedy_reduction_from_right, reduced_weave_from,
    reduced_weave_to, Direction,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::Quiver;
use crate::words::{demazure_product, MarkedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeaveError {
    #[error("layer {depth} is invalid: {reason}")]
    InvalidLayer { depth: usize, reason: String },
    #[error("local pattern does not match at layer {0}")]
    PatternMismatch(usize),
    #[error("no patch found within the move budget")]
    SearchFailed,
    #[error("invalid cut ({0}, {1})")]
    InvalidCut(i64, i64),
    #[error("invalid determinant indices: {0}")]
    InvalidIndices(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerKind {
    Merge,
    Swap,
    Braid,
}

/// One vertex acting at 1-based position `pos` of the current row word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Layer {
    pub kind: LayerKind,
    pub pos: usize,
}

impl Layer {
    pub fn merge(pos: usize) -> Self {
        Layer {
            kind: LayerKind::Merge,
            pos,
        }
    }
    pub fn swap(pos: usize) -> Self {
        Layer {
            kind: LayerKind::Swap,
            pos,
        }
    }
    pub fn braid(pos: usize) -> Self {
        Layer {
            kind: LayerKind::Braid,
            pos,
        }
    }

    pub fn shifted(self, by: usize) -> Self {
        Layer {
            kind: self.kind,
            pos: self.pos + by,
        }
    }

    /// Apply to a row word, or explain why not.
    pub fn apply(&self, w: &[u8]) -> Result<Vec<u8>, String> {
        let p = self.pos;
        if p == 0 {
            return Err("positions are 1-based".into());
        }
        let i = p - 1;
        let need = match self.kind {
            LayerKind::Braid => 3,
            _ => 2,
        };
        if i + need > w.len() {
            return Err(format!(
                "position {} out of range for a word of length {}",
                p,
                w.len()
            ));
        }
        let mut out = w.to_vec();
        match self.kind {
            LayerKind::Merge => {
                if w[i] != w[i + 1] {
                    return Err(format!(
                        "merge needs equal letters, found {} {}",
                        w[i],
                        w[i + 1]
                    ));
                }
                out.remove(i + 1);
            }
            LayerKind::Swap => {
                if w[i].abs_diff(w[i + 1]) <= 1 {
                    return Err(format!(
                        "swap needs distant letters, found {} {}",
                        w[i],
                        w[i + 1]
                    ));
                }
                out.swap(i, i + 1);
            }
            LayerKind::Braid => {
                if w[i] != w[i + 2] || w[i].abs_diff(w[i + 1]) != 1 {
                    return Err(format!(
                        "braid needs i j i with |i-j| = 1, found {} {} {}",
                        w[i],
                        w[i + 1],
                        w[i + 2]
                    ));
                }
                out[i] = w[i + 1];
                out[i + 1] = w[i];
                out[i + 2] = w[i + 1];
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weave {
    pub d: usize,
    pub top: MarkedWord,
    pub layers: Vec<Layer>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Origin {
    /// A marked top character (0-based position in the top word).
    Mark(usize),
    /// The merge performed by this layer (0-based layer index).
    Merge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub origin: Origin,
    /// `weights[t][i]`: weight on strand `i` of row `t`.
    pub weights: Vec<Vec<u32>>,
}

impl Cycle {
    pub fn on_top(&self) -> bool {
        self.weights
            .first()
            .map(|r| r.iter().any(|&w| w > 0))
            .unwrap_or(false)
    }

    pub fn on_bottom(&self) -> bool {
        self.weights
            .last()
            .map(|r| r.iter().any(|&w| w > 0))
            .unwrap_or(false)
    }

    pub fn is_frozen(&self) -> bool {
        self.on_top() || self.on_bottom()
    }

    /// Born at a merge and reaching the bottom boundary.
    pub fn is_bottom_frozen(&self) -> bool {
        self.on_bottom() && !self.on_top()
    }

    pub fn bottom(&self) -> &[u32] {
        self.weights.last().expect("at least one row")
    }
}

/// Flat exchange form: `{d, top, marks, layers}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeaveJson {
    pub d: usize,
    pub top: Vec<u8>,
    pub marks: Vec<bool>,
    pub layers: Vec<Layer>,
}

impl WeaveJson {
    /// The weave, checked layer by layer.
    pub fn to_weave(&self) -> Result<Weave, WeaveError> {
        if self.top.len() != self.marks.len() {
            return Err(WeaveError::InvalidLayer {
                depth: 0,
                reason: format!("{} letters but {} marks", self.top.len(), self.marks.len()),
            });
        }
        let w = Weave::new(
            self.d,
            MarkedWord::new(self.top.clone(), self.marks.clone()),
            self.layers.clone(),
        );
        w.validate()?;
        Ok(w)
    }
}

impl Weave {
    pub fn to_json(&self) -> WeaveJson {
        WeaveJson {
            d: self.d,
            top: self.top.letters.clone(),
            marks: self.top.marks.clone(),
            layers: self.layers.clone(),
        }
    }

    pub fn new(d: usize, top: MarkedWord, layers: Vec<Layer>) -> Self {
        Weave { d, top, layers }
    }

    pub fn unmarked(d: usize, top: &str, layers: Vec<Layer>) -> Self {
        Weave {
            d,
            top: MarkedWord::from_digits(top),
            layers,
        }
    }

    /// Every row word, top first.
    pub fn rows(&self) -> Result<Vec<Vec<u8>>, WeaveError> {
        let mut rows = vec![self.top.letters.clone()];
        for (depth, l) in self.layers.iter().enumerate() {
            let next = l
                .apply(rows.last().expect("nonempty"))
                .map_err(|reason| WeaveError::InvalidLayer { depth, reason })?;
            rows.push(next);
        }
        Ok(rows)
    }

    pub fn validate(&self) -> Result<MarkedWord, WeaveError> {
        self.top
            .check(self.d)
            .map_err(|e| WeaveError::InvalidLayer {
                depth: 0,
                reason: e.to_string(),
            })?;
        let rows = self.rows()?;
        Ok(MarkedWord::unmarked(rows.last().expect("nonempty").clone()))
    }

    pub fn bottom(&self) -> MarkedWord {
        self.validate().expect("valid weave")
    }

    /// Concatenate vertically; `other.top` must equal this weave's bottom.
    pub fn then(&self, other: &[Layer]) -> Weave {
        let mut w = self.clone();
        w.layers.extend_from_slice(other);
        w
    }

    pub fn row_products_agree(&self) -> bool {
        let Ok(rows) = self.rows() else { return false };
        let top = demazure_product(&rows[0], self.d);
        rows.iter().all(|r| demazure_product(r, self.d) == top)
    }

    /// One cycle per marked top character (left to right), then one per merge (top to bottom).
    pub fn cycles(&self) -> Vec<Cycle> {
        let rows = self.rows().expect("valid weave");
        let mut origins: Vec<Origin> = (0..self.top.len())
            .filter(|&i| self.top.marks[i])
            .map(Origin::Mark)
            .collect();
        origins.extend(
            self.layers
                .iter()
                .enumerate()
                .filter(|(_, l)| l.kind == LayerKind::Merge)
                .map(|(t, _)| Origin::Merge(t)),
        );
        origins.into_iter().map(|o| self.trace(o, &rows)).collect()
    }

    fn trace(&self, origin: Origin, rows: &[Vec<u8>]) -> Cycle {
        let mut weights = Vec::with_capacity(rows.len());
        let mut cur = vec![0u32; rows[0].len()];
        if let Origin::Mark(i) = origin {
            cur[i] = 1;
        }
        weights.push(cur.clone());
        for (t, l) in self.layers.iter().enumerate() {
            let i = l.pos - 1;
            let mut next = cur.clone();
            match l.kind {
                LayerKind::Merge => {
                    let seed = u32::from(origin == Origin::Merge(t));
                    next[i] = cur[i].min(cur[i + 1]) + seed;
                    next.remove(i + 1);
                }
                LayerKind::Swap => next.swap(i, i + 1),
                LayerKind::Braid => {
                    let (tl, tm, tr) = (cur[i], cur[i + 1], cur[i + 2]);
                    let m = tl.min(tr);
                    next[i] = tm + tr - m;
                    next[i + 1] = m;
                    next[i + 2] = tl + tm - m;
                }
            }
            weights.push(next.clone());
            cur = next;
        }
        Cycle { origin, weights }
    }

    /// `⟨γ, γ'⟩` summed over the trivalent and 6-valent vertices.
    pub fn pairing(&self, g: &Cycle, h: &Cycle) -> i64 {
        self.pairing_twice(g, h) / 2
    }

    fn pairing_twice(&self, g: &Cycle, h: &Cycle) -> i64 {
        let det = |x: [u32; 3], y: [u32; 3]| -> i64 {
            let (x, y) = (x.map(i64::from), y.map(i64::from));
            (x[1] * y[2] - x[2] * y[1]) - (x[0] * y[2] - x[2] * y[0]) + (x[0] * y[1] - x[1] * y[0])
        };
        let mut total = 0i64;
        for (t, l) in self.layers.iter().enumerate() {
            let i = l.pos - 1;
            let (ga, gb, ha, hb) = (
                &g.weights[t],
                &g.weights[t + 1],
                &h.weights[t],
                &h.weights[t + 1],
            );
            match l.kind {
                LayerKind::Merge => {
                    total += 2 * det([ga[i], gb[i], ga[i + 1]], [ha[i], hb[i], ha[i + 1]]);
                }
                LayerKind::Braid => {
                    total += det([ga[i], gb[i + 1], ga[i + 2]], [ha[i], hb[i + 1], ha[i + 2]]);
                    total += det([gb[i], gb[i + 2], ga[i + 1]], [hb[i], hb[i + 2], ha[i + 1]]);
                }
                LayerKind::Swap => {}
            }
        }
        debug_assert!(total % 2 == 0, "intersection pairing is an integer");
        PAIRING_ORIENTATION * total
    }

    /// `Q(𝔴)`: vertices are cycles; pairings between two bottom-frozen cycles are dropped.
    pub fn quiver(&self) -> Quiver {
        let cs = self.cycles();
        quiver_of(self, &cs)
    }
}

/// Overall orientation of the local determinant formulas, fixed so the
/// four-cycle fixture in dimension 4 reproduces its pairing table.
const PAIRING_ORIENTATION: i64 = 1;

pub fn quiver_of(w: &Weave, cs: &[Cycle]) -> Quiver {
    let mut q = Quiver::new(cs.iter().map(|c| c.is_frozen()).collect());
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i].is_bottom_frozen() && cs[j].is_bottom_frozen() {
                continue;
            }
            let p = w.pairing(&cs[i], &cs[j]);
            if p != 0 {
                q.add_arrows(i, j, p);
            }
        }
    }
    q
}

/// Graphviz rendering: one node per vertex, strands labeled by color.
pub fn to_dot(w: &Weave, highlight: Option<&Cycle>) -> String {
    let rows = w.rows().expect("valid weave");
    let mut s = String::from("digraph weave {\n  rankdir=TB;\n  node [shape=point];\n");
    // Node (t, i): the top end of strand i in row t.
    let mut start: Vec<Vec<String>> = Vec::new();
    for (t, r) in rows.iter().enumerate() {
        start.push((0..r.len()).map(|i| format!("r{}_{}", t, i)).collect());
    }
    for i in 0..rows[0].len() {
        s.push_str(&format!(
            "  top{} [shape=plaintext, label=\"{}{}\"];\n",
            i,
            rows[0][i],
            if w.top.marks[i] { "'" } else { "" }
        ));
    }
    let mut ends: Vec<String> = (0..rows[0].len()).map(|i| format!("top{}", i)).collect();
    for (t, l) in w.layers.iter().enumerate() {
        let v = format!("v{}", t);
        let (a, b) = match l.kind {
            LayerKind::Braid => (3, 3),
            LayerKind::Swap => (2, 2),
            LayerKind::Merge => (2, 1),
        };
        s.push_str(&format!("  {} [xlabel=\"{:?}\"];\n", v, l.kind));
        let i = l.pos - 1;
        let mut next = Vec::new();
        next.extend_from_slice(&ends[..i]);
        for k in 0..a {
            let bold = highlight.map(|c| c.weights[t][i + k] > 0).unwrap_or(false);
            s.push_str(&format!(
                "  {} -> {} [label=\"{}\"{}];\n",
                ends[i + k],
                v,
                rows[t][i + k],
                if bold { ", style=bold" } else { "" }
            ));
        }
        for _ in 0..b {
            next.push(v.clone());
        }
        next.extend_from_slice(&ends[i + a..]);
        ends = next;
    }
    let last = rows.len() - 1;
    for (i, e) in ends.iter().enumerate() {
        let bold = highlight.map(|c| c.weights[last][i] > 0).unwrap_or(false);
        s.push_str(&format!(
            "  bot{} [shape=plaintext, label=\"{}\"];\n",
            i, rows[last][i]
        ));
        s.push_str(&format!(
            "  {} -> bot{} [label=\"{}\"{}];\n",
            e,
            i,
            rows[last][i],
            if bold { ", style=bold" } else { "" }
        ));
    }
    s.push_str("}\n");
    s
}
