//! Reduced Demazure weaves built by search rather than by patches.

use std::collections::{HashMap, VecDeque};

use super::{Layer, Weave};
use crate::words::{braid_neighbors, is_reduced, MarkedWord};

/// Braid and commutation layers taking `from` to `to`, shortest first.
pub fn braid_path(from: &[u8], to: &[u8]) -> Option<Vec<Layer>> {
    braid_path_where(from, |w| w == to)
}

fn braid_path_where(from: &[u8], goal: impl Fn(&[u8]) -> bool) -> Option<Vec<Layer>> {
    let mut parent: HashMap<Vec<u8>, (Vec<u8>, Layer)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    parent.insert(from.to_vec(), (Vec::new(), Layer::swap(0)));
    while let Some(w) = queue.pop_front() {
        if goal(&w) {
            let mut layers = Vec::new();
            let mut cur = w;
            while cur != from {
                let (prev, l) = parent.remove(&cur).expect("path back to start");
                layers.push(l);
                cur = prev;
            }
            layers.reverse();
            return Some(layers);
        }
        for (p, n) in braid_neighbors(&w) {
            if parent.contains_key(&n) {
                continue;
            }
            let l = if w[p].abs_diff(w[p + 1]) > 1 {
                Layer::swap(p + 1)
            } else {
                Layer::braid(p + 1)
            };
            parent.insert(n.clone(), (w.clone(), l));
            queue.push_back(n);
        }
    }
    None
}

/// Left-to-right reduction: the prefix read so far is kept reduced; when the
/// next letter `s` would shorten it, the prefix is braided to end in `s` and the two merge.
pub fn greedy_reduction(top: &MarkedWord, d: usize) -> Weave {
    let mut row = top.letters.clone();
    let mut layers = Vec::new();
    let mut k = 0;
    while k < row.len() {
        let prefix = &row[..=k];
        if is_reduced(prefix, d) {
            k += 1;
            continue;
        }
        let s = row[k];
        let path = braid_path_where(&row[..k], |w| w.last() == Some(&s))
            .expect("a reduced word ending in s exists");
        for l in &path {
            let next = l.apply(&row).expect("braid move in the prefix");
            row = next;
        }
        layers.extend(path);
        layers.push(Layer::merge(k));
        row.remove(k);
    }
    Weave::new(d, top.clone(), layers)
}

/// Right-to-left reduction: the suffix read so far is kept reduced; when the
/// next letter `s` would shorten it, the suffix is braided to start with `s` and the two merge.
pub fn greedy_reduction_from_right(top: &MarkedWord, d: usize) -> Weave {
    let mut row = top.letters.clone();
    let mut layers = Vec::new();
    let mut k = row.len();
    while k > 0 {
        k -= 1;
        if is_reduced(&row[k..], d) {
            continue;
        }
        let s = row[k];
        let path = braid_path_where(&row[k + 1..], |w| w.first() == Some(&s))
            .expect("a reduced word starting with s exists");
        for l in &path {
            let l = l.shifted(k + 1);
            row = l.apply(&row).expect("braid move in the suffix");
            layers.push(l);
        }
        layers.push(Layer::merge(k + 1));
        row.remove(k + 1);
    }
    Weave::new(d, top.clone(), layers)
}

/// Which end a greedy reduction starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A reduced weave from `top` ending in the reduced word `bottom`.
pub fn reduced_weave_to(top: &MarkedWord, d: usize, bottom: &[u8]) -> Option<Weave> {
    reduced_weave_from(Direction::Left, top, d, bottom)
}

pub fn reduced_weave_from(
    dir: Direction,
    top: &MarkedWord,
    d: usize,
    bottom: &[u8],
) -> Option<Weave> {
    let w = match dir {
        Direction::Left => greedy_reduction(top, d),
        Direction::Right => greedy_reduction_from_right(top, d),
    };
    let tail = braid_path(&w.bottom().letters, bottom)?;
    Some(w.then(&tail))
}
