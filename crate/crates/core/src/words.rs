//! Words in the type-A generators `1..d-1`, with optional marks.
//!
//! Marked characters are written with a trailing apostrophe: `1 2' 2 1'`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::Signature;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse letter `{0}`")]
    BadLetter(String),
    #[error("letter {0} out of range for d = {1}")]
    OutOfRange(u8, usize),
}

/// A word over `1..d-1` with a mark flag per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct MarkedWord {
    pub letters: Vec<u8>,
    pub marks: Vec<bool>,
}

impl MarkedWord {
    pub fn new(letters: Vec<u8>, marks: Vec<bool>) -> Self {
        assert_eq!(letters.len(), marks.len(), "one mark flag per letter");
        MarkedWord { letters, marks }
    }

    pub fn unmarked(letters: Vec<u8>) -> Self {
        let marks = vec![false; letters.len()];
        MarkedWord { letters, marks }
    }

    /// Compact form: a string of decimal digits, e.g. `"321122"`.
    pub fn from_digits(s: &str) -> Self {
        MarkedWord::unmarked(s.bytes().map(|b| b - b'0').collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &MarkedWord) -> MarkedWord {
        let mut w = self.clone();
        w.letters.extend_from_slice(&other.letters);
        w.marks.extend_from_slice(&other.marks);
        w
    }

    pub fn reverse(&self) -> MarkedWord {
        let mut w = self.clone();
        w.letters.reverse();
        w.marks.reverse();
        w
    }

    pub fn check(&self, d: usize) -> Result<(), WordError> {
        for &c in &self.letters {
            if c == 0 || c as usize >= d {
                return Err(WordError::OutOfRange(c, d));
            }
        }
        Ok(())
    }

    pub fn digits(&self) -> String {
        self.letters.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_reduced(&self, d: usize) -> bool {
        is_reduced(&self.letters, d)
    }

    pub fn demazure(&self, d: usize) -> Vec<usize> {
        demazure_product(&self.letters, d)
    }

    /// Cut the word after every marked character. Trailing unmarked letters form a final piece.
    pub fn split_at_marks(&self) -> Vec<MarkedWord> {
        let mut out = Vec::new();
        let mut cur = MarkedWord::default();
        for (&c, &m) in self.letters.iter().zip(&self.marks) {
            cur.letters.push(c);
            cur.marks.push(m);
            if m {
                out.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }
}

impl fmt::Display for MarkedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&c, &m)) in self.letters.iter().zip(&self.marks).enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", c, if m { "'" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for MarkedWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = MarkedWord::default();
        for tok in s.split_whitespace() {
            let (body, mark) = match tok.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let c: u8 = body
                .parse()
                .map_err(|_| WordError::BadLetter(tok.to_string()))?;
            w.letters.push(c);
            w.marks.push(mark);
        }
        Ok(w)
    }
}

/// Right action of `s_i` in the 0-Hecke monoid on a permutation in one-line notation.
fn hecke_step(perm: &mut [usize], i: usize) {
    if perm[i - 1] < perm[i] {
        perm.swap(i - 1, i);
    }
}

/// The permutation (one-line, values `1..=d`) of the 0-Hecke product of the word.
pub fn demazure_product(letters: &[u8], d: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=d).collect();
    for &c in letters {
        hecke_step(&mut perm, c as usize);
    }
    perm
}

pub fn coxeter_length(perm: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv
}

pub fn longest_element(d: usize) -> Vec<usize> {
    (1..=d).rev().collect()
}

pub fn is_reduced(letters: &[u8], d: usize) -> bool {
    coxeter_length(&demazure_product(letters, d)) == letters.len()
}

/// Words reachable from an unmarked word by one commutation or braid move.
pub fn braid_neighbors(letters: &[u8]) -> Vec<(usize, Vec<u8>)> {
    let mut out = Vec::new();
    for p in 0..letters.len().saturating_sub(1) {
        let (a, b) = (letters[p], letters[p + 1]);
        if a.abs_diff(b) > 1 {
            let mut w = letters.to_vec();
            w.swap(p, p + 1);
            out.push((p, w));
        }
        if p + 2 < letters.len() && a == letters[p + 2] && a.abs_diff(b) == 1 {
            let mut w = letters.to_vec();
            w[p] = b;
            w[p + 1] = a;
            w[p + 2] = b;
            out.push((p, w));
        }
    }
    out
}

/// All reduced words braid equivalent to `start` (which must be reduced).
pub fn reduced_words(start: &[u8]) -> Vec<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for (_, n) in braid_neighbors(&w) {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
        out.push(w);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
        }
    }
}

/// `i (i+1) ... j` or `j (j-1) ... i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalWord {
    pub lo: u8,
    pub hi: u8,
    pub dir: Direction,
}

impl IntervalWord {
    pub fn inc(lo: u8, hi: u8) -> Self {
        assert!(lo <= hi);
        IntervalWord {
            lo,
            hi,
            dir: Direction::Increasing,
        }
    }

    pub fn dec(hi: u8, lo: u8) -> Self {
        assert!(lo <= hi);
        IntervalWord {
            lo,
            hi,
            dir: Direction::Decreasing,
        }
    }

    pub fn letters(&self) -> Vec<u8> {
        match self.dir {
            Direction::Increasing => (self.lo..=self.hi).collect(),
            Direction::Decreasing => (self.lo..=self.hi).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn same_interval(&self, o: &IntervalWord) -> bool {
        self.lo == o.lo && self.hi == o.hi
    }

    /// Equal as words: a one-letter interval has no meaningful direction.
    pub fn same_word(&self, o: &IntervalWord) -> bool {
        self.same_interval(o) && (self.lo == self.hi || self.dir == o.dir)
    }

    /// The word, with its last character marked.
    pub fn marked(&self) -> MarkedWord {
        let l = self.letters();
        let mut marks = vec![false; l.len()];
        *marks.last_mut().expect("interval words are nonempty") = true;
        MarkedWord::new(l, marks)
    }

    /// Read a word as an interval word, if it is one. A single letter reads as increasing.
    pub fn parse(letters: &[u8]) -> Option<IntervalWord> {
        let first = *letters.first()?;
        let last = *letters.last()?;
        let w = if first <= last {
            IntervalWord::inc(first, last)
        } else {
            IntervalWord::dec(first, last)
        };
        (w.letters() == letters).then_some(w)
    }
}

impl fmt::Display for IntervalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

pub fn concat_intervals(ws: &[IntervalWord]) -> Vec<u8> {
    ws.iter().flat_map(|w| w.letters()).collect()
}

pub fn concat_marked(ws: &[IntervalWord]) -> MarkedWord {
    ws.iter()
        .fold(MarkedWord::default(), |acc, w| acc.concat(&w.marked()))
}

/// `ρ = 1 2 ... (d-1)'`.
pub fn rho(d: usize) -> MarkedWord {
    IntervalWord::inc(1, (d - 1) as u8).marked()
}

/// `ρ* = (d-1) ... 2 1'`.
pub fn rho_star(d: usize) -> MarkedWord {
    IntervalWord::dec((d - 1) as u8, 1).marked()
}

/// `T⁺ = I_{d-1}^{d-1} I_{d-2}^{d-1} ... I_1^{d-1}`, marked at the end of each interval.
pub fn t_plus(d: usize) -> MarkedWord {
    concat_marked(&t_plus_intervals(d))
}

pub fn t_plus_intervals(d: usize) -> Vec<IntervalWord> {
    (1..d as u8)
        .rev()
        .map(|i| IntervalWord::inc(i, (d - 1) as u8))
        .collect()
}

/// `T⁻ = I_1^1 I_2^1 ... I_{d-1}^1`.
pub fn t_minus(d: usize) -> MarkedWord {
    concat_marked(
        &(1..d as u8)
            .map(|j| IntervalWord::dec(j, 1))
            .collect::<Vec<_>>(),
    )
}

/// The cyclic word `β_σ`: one copy of `ρ` or `ρ*` per position of the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSigma {
    pub d: usize,
    pub factors: Vec<IntervalWord>,
}

impl BetaSigma {
    pub fn new(sig: &Signature, d: usize) -> Self {
        let top = (d - 1) as u8;
        let factors = (1..=sig.n() as i64)
            .map(|j| {
                if sig.is_black(j) {
                    IntervalWord::inc(1, top)
                } else {
                    IntervalWord::dec(top, 1)
                }
            })
            .collect();
        BetaSigma { d, factors }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// One full turn starting at position 1.
    pub fn word(&self) -> MarkedWord {
        concat_marked(&self.factors)
    }

    /// Factors for positions `p, p+1, ..., q-1` (1-based, cyclic).
    pub fn slice_factors(&self, p: i64, q: i64) -> Vec<IntervalWord> {
        let n = self.n() as i64;
        (p..q)
            .map(|j| self.factors[((j - 1).rem_euclid(n)) as usize])
            .collect()
    }

    /// The marked word `β(p, q)`.
    pub fn slice(&self, p: i64, q: i64) -> MarkedWord {
        concat_marked(&self.slice_factors(p, q))
    }
}

pub fn beta_sigma(sig: &Signature, d: usize) -> BetaSigma {
    BetaSigma::new(sig, d)
}

/// A nested word `T_s ... T_{d-1}`; complete when it has `d - 1` interval words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedWordShape {
    pub words: Vec<IntervalWord>,
}

impl NestedWordShape {
    pub fn is_complete(&self, d: usize) -> bool {
        self.words.len() == d - 1
    }

    pub fn marked(&self) -> MarkedWord {
        concat_marked(&self.words)
    }
}

/// Checks the nesting rule on a list of interval words; the last must span `[1, d-1]`.
pub fn is_nested(ws: &[IntervalWord], d: usize) -> bool {
    let Some(last) = ws.last() else { return false };
    if ws.len() > d - 1 || last.lo != 1 || last.hi as usize != d - 1 {
        return false;
    }
    for k in (1..ws.len()).rev() {
        let t = ws[k];
        let (lo, hi) = match t.dir {
            Direction::Increasing => (t.lo + 1, t.hi),
            Direction::Decreasing => (t.lo, t.hi - 1),
        };
        if lo > hi || ws[k - 1].lo != lo || ws[k - 1].hi != hi {
            return false;
        }
    }
    true
}

/// A weakly nested word: the first `s` interval words share one interval and
/// `T_s ... T_m` is nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaklyNested {
    pub words: Vec<IntervalWord>,
    pub s: usize,
}

pub fn classify_weakly_nested_intervals(ws: &[IntervalWord], d: usize) -> Option<WeaklyNested> {
    let m = ws.len();
    if m == 0 {
        return None;
    }
    for s in 1..=m {
        if ws[..s].iter().all(|w| w.same_interval(&ws[0])) && is_nested(&ws[s - 1..], d) {
            return Some(WeaklyNested {
                words: ws.to_vec(),
                s,
            });
        }
    }
    None
}

fn intervals_from_marks(w: &MarkedWord) -> Option<Vec<IntervalWord>> {
    let pieces = w.split_at_marks();
    if pieces
        .last()
        .map(|p| !p.marks.last().copied().unwrap_or(false))
        .unwrap_or(true)
    {
        return None;
    }
    pieces
        .iter()
        .map(|p| IntervalWord::parse(&p.letters))
        .collect()
}

/// Classify a marked word whose interval words end at its marks.
pub fn classify_weakly_nested(w: &MarkedWord, d: usize) -> Option<WeaklyNested> {
    classify_weakly_nested_intervals(&intervals_from_marks(w)?, d)
}

/// Classify a marked word as a nested word, if its marks delimit one.
pub fn classify_nested(w: &MarkedWord, d: usize) -> Option<NestedWordShape> {
    let ws = intervals_from_marks(w)?;
    is_nested(&ws, d).then_some(NestedWordShape { words: ws })
}

/// Every complete nested word for `d`.
pub fn all_complete_nested(d: usize) -> Vec<NestedWordShape> {
    let top = (d - 1) as u8;
    let mut out = Vec::new();
    for bits in 0..(1u32 << (d - 2)) {
        // Directions of T_{d-1}, T_{d-2}, ..., T_2; T_1 has a single letter.
        let mut ws = Vec::with_capacity(d - 1);
        let (mut lo, mut hi) = (1u8, top);
        for k in 0..d - 1 {
            let dir = if k + 1 < d - 1 && bits >> k & 1 == 1 {
                Direction::Decreasing
            } else {
                Direction::Increasing
            };
            ws.push(IntervalWord { lo, hi, dir });
            match dir {
                Direction::Increasing => lo += 1,
                Direction::Decreasing => hi -= 1,
            }
        }
        ws.reverse();
        out.push(NestedWordShape { words: ws });
    }
    out
}
