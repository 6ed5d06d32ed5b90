//! Test-side oracles built straight from coordinates, independent of the
//! extensor and flag code.

#![allow(dead_code)]

use mixgrass::ring::{Coordinates, Fp, ModularContext, RationalFn, Scalar, VariableId};
use rand::{Rng, SeedableRng};

pub type R = RationalFn;

/// Raw coordinates `u[j][i]` and `ud[j][i]` in one backend.
pub struct Oracle<S> {
    pub d: usize,
    get: Box<dyn Fn(VariableId) -> S>,
}

impl Oracle<R> {
    pub fn symbolic(d: usize) -> Self {
        Oracle {
            d,
            get: Box::new(R::var),
        }
    }
}

impl Oracle<Fp> {
    /// Matches the values drawn by `ModularContext::new(seed)`.
    pub fn modular(d: usize, seed: u64) -> Self {
        let ctx = ModularContext::new(seed);
        Oracle {
            d,
            get: Box::new(move |v| ctx.get(v)),
        }
    }
}

impl<S: Scalar> Oracle<S> {
    pub fn x(&self, j: usize, i: usize) -> S {
        (self.get)(VariableId::vector(j, i))
    }

    pub fn y(&self, j: usize, i: usize) -> S {
        (self.get)(VariableId::covector(j, i))
    }

    /// `u*_a(u_b)`.
    pub fn pair(&self, a: usize, b: usize) -> S {
        (1..=self.d).fold(S::zero(), |acc, i| {
            acc.add(&self.y(a, i).mul(&self.x(b, i)))
        })
    }

    /// Leibniz expansion of `det(u_{c_1}, ..., u_{c_d})`.
    pub fn det(&self, cols: &[usize]) -> S {
        assert_eq!(cols.len(), self.d);
        let mut acc = S::zero();
        for (perm, sign) in permutations(self.d) {
            let t = (0..self.d).fold(S::one(), |t, k| t.mul(&self.x(cols[k], perm[k] + 1)));
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    /// Leibniz expansion of the dual determinant `det(u*_{c_1}, ..., u*_{c_d})`.
    pub fn det_dual(&self, cols: &[usize]) -> S {
        let mut acc = S::zero();
        for (perm, sign) in permutations(self.d) {
            let t = (0..self.d).fold(S::one(), |t, k| t.mul(&self.y(cols[k], perm[k] + 1)));
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    /// `u*_2(u_4) det(u_1, u_3, u_k) − u*_2(u_3) det(u_1, u_4, u_k)`; in dimension 3
    /// this is the value of `u_k ⋏ u_1 ⋏ u*_2 ⋏ u_3 ⋏ u_4`.
    pub fn through_1234(&self, k: usize) -> S {
        self.pair(2, 4)
            .mul(&self.det(&[1, 3, k]))
            .sub(&self.pair(2, 3).mul(&self.det(&[1, 4, k])))
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // moving n-1 from the end to `pos` costs len - pos transpositions
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// The worked example: `d = 3`, `σ = bwbbbbwb`, cut `(1, 5)`.
pub struct WorkedExample<S> {
    /// `Δ_1, ..., Δ_18`, index 0 unused.
    pub delta: Vec<S>,
    pub delta5p: S,
    pub delta6p: S,
    pub delta8p: S,
    pub delta14p: S,
    pub delta15p: S,
    pub delta17p: S,
    pub delta7p: S,
    pub delta9p: S,
    /// The extra generator of the first half, `det(u_3, u_5, u_6)`.
    pub extra1: S,
    /// The extra generator of the second half, `u_6 ⋏ u_1 ⋏ u*_2 ⋏ u_3 ⋏ u_4`.
    pub extra2: S,
}

impl<S: Scalar> WorkedExample<S> {
    pub fn new(o: &Oracle<S>) -> Self {
        let p = |a, b| o.pair(a, b);
        let det = |a, b, c| o.det(&[a, b, c]);
        let mut delta = vec![S::zero()];
        delta.extend([
            p(2, 1),
            p(2, 3),
            det(3, 4, 5),
            det(4, 5, 6),
            det(1, 3, 4),
            det(1, 4, 5),
            det(1, 5, 6),
            p(2, 4),
            o.through_1234(5),
            // Δ10 = Δ14 Δ'14 − Δ11 Δ15 from the first half-2 relation
            p(7, 5).mul(&det(6, 8, 1)).sub(&p(7, 6).mul(&det(5, 8, 1))),
            p(7, 6),
            p(7, 8),
            o.through_1234(8),
            p(7, 5),
            det(5, 8, 1),
            o.through_1234(5),
            det(5, 6, 8),
            det(5, 6, 1),
        ]);
        let dl = |terms: &[&[usize]], den: usize| -> S {
            let sum = terms.iter().fold(S::zero(), |acc, t| {
                acc.add(&t.iter().fold(S::one(), |m, &k| m.mul(&delta[k])))
            });
            sum.div(&delta[den]).expect("nonzero")
        };
        let delta15p = dl(&[&[13, 14, 18], &[10, 16]], 15);
        WorkedExample {
            delta5p: p(2, 5),
            delta6p: p(2, 4).mul(&det(3, 5, 6)).sub(&p(2, 3).mul(&det(4, 5, 6))),
            delta8p: det(1, 3, 5),
            delta14p: det(6, 8, 1),
            delta15p,
            delta17p: p(7, 1),
            delta7p: det(4, 5, 8),
            delta9p: det(1, 4, 8),
            extra1: det(3, 5, 6),
            extra2: o.through_1234(6),
            delta,
        }
    }

    /// The first half's generator list.
    pub fn generators1(&self) -> Vec<S> {
        let d = &self.delta;
        vec![
            d[1].clone(),
            d[2].clone(),
            d[8].clone(),
            self.delta5p.clone(),
            d[5].clone(),
            self.delta8p.clone(),
            d[6].clone(),
            d[7].clone(),
            d[3].clone(),
            self.extra1.clone(),
            d[4].clone(),
        ]
    }

    /// The second half's generator list.
    pub fn generators2(&self) -> Vec<S> {
        let d = &self.delta;
        vec![
            d[14].clone(),
            d[11].clone(),
            d[12].clone(),
            self.delta17p.clone(),
            d[17].clone(),
            d[18].clone(),
            d[15].clone(),
            self.delta14p.clone(),
            d[16].clone(),
            self.extra2.clone(),
            d[13].clone(),
        ]
    }
}

/// Text forms, sorted, for set comparisons.
pub fn texts<S: Scalar>(xs: &[S]) -> Vec<String> {
    let mut t: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    t.sort();
    t.dedup();
    t
}

/// Exact coordinates: formal variables at the `free` points, small random
/// integers elsewhere. Keeps exact runs tractable when full expansion is not.
pub struct Specialized {
    pub free: Vec<usize>,
    rng: rand_chacha::ChaCha8Rng,
}

impl Specialized {
    pub fn new(free: Vec<usize>, seed: u64) -> Self {
        Specialized {
            free,
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Coordinates<R> for Specialized {
    fn coordinate(&mut self, v: VariableId) -> R {
        if self.free.contains(&(v.point as usize)) {
            R::var(v)
        } else {
            R::from_i64(self.rng.gen_range(-9..=9))
        }
    }
}
