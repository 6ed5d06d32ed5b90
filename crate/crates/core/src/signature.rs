//! Signatures, step lengths, admissibility and the associated affine permutation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("signature must have length at least 3, got {0}")]
    TooShort(usize),
    #[error("invalid signature character {0:?}; use b/w or ●/○")]
    BadChar(char),
}

/// A cyclic pattern of vectors (+1, black) and covectors (-1, white).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    pattern: Vec<i8>,
}

/// The value of a step length: finite or infinite.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Ell {
    Finite(u64),
    Infinite,
}

impl Ell {
    pub fn finite(self) -> Option<u64> {
        match self {
            Ell::Finite(v) => Some(v),
            Ell::Infinite => None,
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(v) => write!(f, "{}", v),
            Ell::Infinite => write!(f, "inf"),
        }
    }
}

impl Signature {
    pub fn new(pattern: Vec<i8>) -> Result<Self, SignatureError> {
        if pattern.len() < 3 {
            return Err(SignatureError::TooShort(pattern.len()));
        }
        assert!(
            pattern.iter().all(|&c| c == 1 || c == -1),
            "signature entries are ±1"
        );
        Ok(Signature { pattern })
    }

    pub fn monochromatic(n: usize) -> Self {
        Signature {
            pattern: vec![1; n],
        }
    }

    /// The signature with `a` blacks followed by `b` whites.
    pub fn separated(a: usize, b: usize) -> Self {
        let mut p = vec![1i8; a];
        p.extend(std::iter::repeat(-1).take(b));
        Signature { pattern: p }
    }

    /// Decode a bit pattern: bit `i` set means position `i + 1` is white.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        Signature {
            pattern: (0..n)
                .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.pattern.len()
    }

    pub fn pattern(&self) -> &[i8] {
        &self.pattern
    }

    /// `σ(j)` for any integer `j`, with period `n` and base index 1.
    pub fn at(&self, j: i64) -> i8 {
        let n = self.n() as i64;
        self.pattern[(j - 1).rem_euclid(n) as usize]
    }

    pub fn is_black(&self, j: i64) -> bool {
        self.at(j) == 1
    }

    /// Representative of `j` in `[1, n]`.
    pub fn residue(&self, j: i64) -> usize {
        ((j - 1).rem_euclid(self.n() as i64) + 1) as usize
    }

    /// `(a, b)`: the numbers of blacks and whites.
    pub fn kind(&self) -> (usize, usize) {
        let a = self.pattern.iter().filter(|&&c| c == 1).count();
        (a, self.n() - a)
    }

    pub fn is_monochromatic(&self) -> bool {
        let (a, b) = self.kind();
        a == 0 || b == 0
    }

    /// True if some rotation is a run of blacks followed by a run of whites.
    pub fn is_separated(&self) -> bool {
        let n = self.n();
        let changes = (0..n)
            .filter(|&i| self.pattern[i] != self.pattern[(i + 1) % n])
            .count();
        changes <= 2
    }

    /// Minimal length of a contiguous run starting at `j` whose sum is `k` mod `d`.
    ///
    /// The pair (partial sum mod d, position mod n) recurs within `n·d` steps, so
    /// the search stops there.
    pub fn ell(&self, j: i64, k: u64, d: u64) -> Ell {
        let n = self.n() as u64;
        let target = (k % d) as i64;
        let dd = d as i64;
        let mut s: i64 = 0;
        for len in 1..=n * d {
            s += self.at(j + len as i64 - 1) as i64;
            if s.rem_euclid(dd) == target {
                return Ell::Finite(len);
            }
        }
        Ell::Infinite
    }

    pub fn is_admissible(&self, d: u64) -> bool {
        (0..d).all(|k| self.ell(1, k, d) != Ell::Infinite)
    }

    /// Step lengths `ℓ(σ, j, 0, d)` for `j = 1..n`; always finite.
    pub fn zero_steps(&self, d: u64) -> Vec<u64> {
        (1..=self.n() as i64)
            .map(|j| {
                self.ell(j, 0, d)
                    .finite()
                    .expect("a full period returns to residue 0")
            })
            .collect()
    }

    /// The d-length: the average of the zero steps.
    pub fn d_length(&self, d: u64) -> u64 {
        let s: u64 = self.zero_steps(d).iter().sum();
        debug_assert_eq!(s % self.n() as u64, 0);
        s / self.n() as u64
    }

    pub fn pi(&self, d: u64) -> AffinePermutationWindow {
        let values = self
            .zero_steps(d)
            .iter()
            .enumerate()
            .map(|(i, &l)| i as i64 + 1 + l as i64)
            .collect();
        AffinePermutationWindow {
            n: self.n(),
            values,
        }
    }

    /// Residues `j ∈ [1, n]` with `π(j) ≡ j (mod n)`.
    pub fn fixed_points(&self, d: u64) -> BTreeSet<usize> {
        let n = self.n() as u64;
        self.zero_steps(d)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l % n == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_bounded(&self, d: u64) -> bool {
        let n = self.n() as u64;
        self.zero_steps(d).iter().all(|&l| l <= n)
    }

    pub fn is_abundant(&self, d: u64) -> bool {
        let n = self.n() as u64;
        (1..=self.n() as i64)
            .all(|j| (0..d).all(|k| matches!(self.ell(j, k, d), Ell::Finite(l) if l <= n)))
    }

    pub fn classify(&self, d: u64) -> Classification {
        let pi = self.pi(d);
        Classification {
            admissible: self.is_admissible(d),
            bounded: self.is_bounded(d),
            abundant: self.is_abundant(d),
            d_length: self.d_length(d),
            bias: pi.bias(),
        }
    }

    /// `τ_m(σ)(j) = σ(j + m)`.
    pub fn shift(&self, m: i64) -> Signature {
        Signature {
            pattern: (1..=self.n() as i64).map(|j| self.at(j + m)).collect(),
        }
    }

    /// `rev(σ)(j) = σ(-j)`.
    pub fn reverse(&self) -> Signature {
        Signature {
            pattern: (1..=self.n() as i64).map(|j| self.at(-j)).collect(),
        }
    }

    /// Exchange the colors at `i` and `i + 1`.
    pub fn switch(&self, i: i64) -> Signature {
        let mut p = self.pattern.clone();
        let a = self.residue(i) - 1;
        let b = self.residue(i + 1) - 1;
        p.swap(a, b);
        Signature { pattern: p }
    }

    /// All signatures of the same length with window `pi`, found by search.
    pub fn preimages_of_pi(pi: &AffinePermutationWindow, d: u64) -> Vec<Signature> {
        (0..(1u64 << pi.n))
            .map(|bits| Signature::from_bits(pi.n, bits))
            .filter(|s| &s.pi(d) == pi)
            .collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.pattern {
            write!(f, "{}", if c == 1 { 'b' } else { 'w' })?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Vec::new();
        for ch in s.chars() {
            match ch {
                'b' | 'B' | '●' | '+' => p.push(1),
                'w' | 'W' | '○' | '-' => p.push(-1),
                ' ' | ',' => {}
                c => return Err(SignatureError::BadChar(c)),
            }
        }
        Signature::new(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub admissible: bool,
    pub bounded: bool,
    pub abundant: bool,
    pub d_length: u64,
    pub bias: i64,
}

/// The window `π(1), ..., π(n)` of an affine permutation with `π(j+n) = π(j)+n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePermutationWindow {
    pub n: usize,
    pub values: Vec<i64>,
}

impl AffinePermutationWindow {
    pub fn steps(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| v - i as i64 - 1)
            .collect()
    }

    pub fn bias(&self) -> i64 {
        let s: i64 = self.steps().iter().sum();
        s / self.n as i64
    }

    /// Values mod n form a permutation and `π(j) ≥ j`.
    pub fn is_valid(&self) -> bool {
        let n = self.n as i64;
        let mut seen = vec![false; self.n];
        for (i, &v) in self.values.iter().enumerate() {
            if v < i as i64 + 1 {
                return false;
            }
            let r = v.rem_euclid(n) as usize;
            if seen[r] {
                return false;
            }
            seen[r] = true;
        }
        self.steps().iter().sum::<i64>() % n == 0
    }

    /// `j ≤ π(j) ≤ j + n` for all `j`.
    pub fn is_bounded(&self) -> bool {
        self.steps().iter().all(|&s| s >= 0 && s <= self.n as i64)
    }
}

/// Outcome of an exhaustive appendix sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AppendixReport {
    pub signatures_checked: u64,
    pub counterexamples: Vec<String>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Check the appendix statements on every signature of length `3..=max_n` for
/// each listed `d`.
pub fn appendix_sweep(max_n: usize, ds: &[u64]) -> AppendixReport {
    let mut rep = AppendixReport::default();
    for n in 3..=max_n {
        for bits in 0..(1u64 << n) {
            let sig = Signature::from_bits(n, bits);
            for &d in ds {
                rep.signatures_checked += 1;
                check_one(&sig, d, &mut rep.counterexamples);
            }
        }
    }
    rep
}

fn check_one(sig: &Signature, d: u64, bad: &mut Vec<String>) {
    let tag = |what: &str| format!("{} d={}: {}", sig, d, what);
    let adm = sig.is_admissible(d);
    let len = sig.d_length(d);
    if len > d {
        bad.push(tag("d-length exceeds d"));
    }
    if adm != (len == d) {
        bad.push(tag("admissible differs from d-length = d"));
    }
    let pi = sig.pi(d);
    if !pi.is_valid() {
        bad.push(tag("invalid affine permutation window"));
    }
    if pi.bias() != len as i64 {
        bad.push(tag("bias differs from d-length"));
    }
    let bounded = sig.is_bounded(d);
    let abundant = sig.is_abundant(d);
    if abundant != (bounded && adm) {
        bad.push(tag("abundant differs from bounded and admissible"));
    }
    if abundant != (pi.is_bounded() && pi.bias() == d as i64) {
        bad.push(tag("abundant differs from bounded window of bias d"));
    }
    let (a, b) = sig.kind();
    if a != b && !adm {
        bad.push(tag("type (a,b) with a != b is not admissible"));
    }
    if sig.is_separated() {
        let bound = ((a.min(b) + 1) as u64).max((a as i64 - b as i64).unsigned_abs());
        if abundant != (d <= bound) {
            bad.push(tag("separated abundance criterion"));
        }
    }
    if a == b {
        if !bounded {
            bad.push(tag("type (a,a) not bounded"));
        }
        let fix = sig.fixed_points(d);
        if fix.len() > 2 {
            bad.push(tag("more than two fixed points"));
        }
        let colors: BTreeSet<i8> = fix.iter().map(|&j| sig.at(j as i64)).collect();
        if colors.len() != fix.len() {
            bad.push(tag("two fixed points of the same color"));
        }
    }
    if adm && !sig.is_monochromatic() {
        let fix = sig.fixed_points(d);
        for i in 1..=sig.n() as i64 {
            if sig.at(i) * sig.at(i + 1) != -1 {
                continue;
            }
            let sw = sig.switch(i);
            let a1 = sw.is_admissible(d);
            let b1 = !fix.contains(&sig.residue(i + 1));
            let c1 = sw.d_length(d) == len;
            if a1 != b1 || b1 != c1 {
                bad.push(tag(&format!("switch trichotomy fails at i={}", i)));
            }
        }
    }
    let rev = sig.reverse();
    if rev.d_length(d) != len || rev.is_admissible(d) != adm || rev.is_abundant(d) != abundant {
        bad.push(tag("reversal changes invariants"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn step_lengths_of_small_examples() {
        let s1 = sig("bbwbwb");
        let got: Vec<Ell> = (0..3).map(|k| s1.ell(1, k, 3)).collect();
        assert_eq!(got, vec![Ell::Finite(7), Ell::Finite(1), Ell::Finite(2)]);
        assert!(s1.is_admissible(3));
        let s2 = sig("bwbwbw");
        let got: Vec<Ell> = (0..3).map(|k| s2.ell(1, k, 3)).collect();
        assert_eq!(got, vec![Ell::Finite(2), Ell::Finite(1), Ell::Infinite]);
        assert!(!s2.is_admissible(3));
    }

    #[test]
    fn d_lengths() {
        assert_eq!(sig("bbwbwb").zero_steps(3), vec![7, 2, 2, 2, 2, 3]);
        assert_eq!(sig("bbwbwb").d_length(3), 3);
        assert_eq!(sig("bwbwbw").d_length(3), 2);
    }

    #[test]
    fn window_and_fixed_points() {
        let s = sig("bbbbw");
        assert_eq!(s.pi(6).steps(), vec![8, 8, 10, 2, 2]);
        assert_eq!(s.fixed_points(6), BTreeSet::from([3]));
        assert_eq!(sig("bbwwbbww").fixed_points(3).len(), 0);
        assert_eq!(sig("bbwwbbww").fixed_points(4).len(), 0);
        assert_eq!(sig("bbwbwbww").fixed_points(3).len(), 1);
        assert_eq!(sig("bbwbwbww").fixed_points(4).len(), 1);
        assert_eq!(sig("bbww").fixed_points(3).len(), 2);
        assert_eq!(sig("bbww").fixed_points(4).len(), 2);
    }

    #[test]
    fn abundance_of_bbww() {
        assert!(sig("bbww").is_abundant(3));
        assert!(!sig("bbww").is_abundant(4));
    }

    #[test]
    fn monochromatic_steps() {
        let s = Signature::monochromatic(7);
        for k in 1..5 {
            assert_eq!(s.ell(3, k, 5), Ell::Finite(k));
        }
        assert_eq!(s.ell(3, 0, 5), Ell::Finite(5));
    }

    #[test]
    fn shift_and_reverse_round_trip() {
        let s = sig("bwbbbbwb");
        assert_eq!(s.shift(8), s);
        assert_eq!(s.reverse().reverse(), s);
    }

    #[test]
    fn small_sweep_is_clean() {
        let rep = appendix_sweep(7, &[3, 4, 5]);
        assert!(
            rep.passed(),
            "{:?}",
            &rep.counterexamples[..rep.counterexamples.len().min(5)]
        );
    }
}
