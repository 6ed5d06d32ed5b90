//! Seeds, exchange relations, amalgamation and mutation-class exploration.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::Point;
use crate::flags::{decorate_beta, flags_from_point, multidegree, propagate_decoration, FlagError};
use crate::linalg;
use crate::quiver::Quiver;
use crate::ring::{Fp, ModularContext, Polynomial, RationalFn, RingError, Scalar, VariableId};
use crate::weave::patch::{build_feasible_initial_weave, check_feasible_cut, InitialWeave};
use crate::weave::{quiver_of, Origin, Weave, WeaveError};

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} is not a vertex of the seed")]
    NoSuchVertex(usize),
    #[error("the variable at vertex {0} is zero")]
    ZeroVariable(usize),
    #[error("vertex {0} is not frozen")]
    NotFrozen(usize),
    #[error("glued vertices {0} and {1} carry different variables")]
    VariableMismatch(usize, usize),
    #[error("{size} variables span a Jacobian of rank {rank}")]
    DependenceDetected { rank: usize, size: usize },
    #[error("({0}, {1}) is not a feasible cut")]
    InvalidCut(i64, i64),
    #[error("seeds are built only in odd dimension, got {0}")]
    EvenDimension(usize),
    #[error("{0} variables for {1} vertices")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Weave(#[from] WeaveError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub fn mutate_quiver(q: &Quiver, z: usize) -> Result<Quiver, ClusterError> {
    if z >= q.len() {
        return Err(ClusterError::NoSuchVertex(z));
    }
    if q.frozen[z] {
        return Err(ClusterError::FrozenVertex(z));
    }
    Ok(q.mutate(z))
}

/// A quiver with one variable per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed<S> {
    pub quiver: Quiver,
    pub variables: Vec<S>,
}

/// Vertex order fixed by the sorted variable text; used to compare unlabeled seeds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub variables: Vec<(String, bool)>,
    pub matrix: Vec<Vec<i64>>,
}

impl<S: Scalar> Seed<S> {
    pub fn new(quiver: Quiver, variables: Vec<S>) -> Result<Self, ClusterError> {
        if quiver.len() != variables.len() {
            return Err(ClusterError::SizeMismatch(variables.len(), quiver.len()));
        }
        Ok(Seed { quiver, variables })
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn mutable(&self) -> Vec<usize> {
        self.quiver.mutable()
    }

    pub fn frozen_variables(&self) -> Vec<&S> {
        (0..self.len())
            .filter(|&i| self.quiver.frozen[i])
            .map(|i| &self.variables[i])
            .collect()
    }

    /// `(Π_{y→z} y, Π_{z→y} y)`.
    pub fn exchange_terms(&self, z: usize) -> (S, S) {
        let mut incoming = S::one();
        let mut outgoing = S::one();
        for y in 0..self.len() {
            let b = self.quiver.b[y][z];
            if b > 0 {
                incoming = incoming.mul(&self.variables[y].pow(b as u32));
            } else if b < 0 {
                outgoing = outgoing.mul(&self.variables[y].pow((-b) as u32));
            }
        }
        (incoming, outgoing)
    }

    /// `z' = (Π in + Π out) / z`.
    pub fn exchanged(&self, z: usize) -> Result<S, ClusterError> {
        if z >= self.len() {
            return Err(ClusterError::NoSuchVertex(z));
        }
        if self.quiver.frozen[z] {
            return Err(ClusterError::FrozenVertex(z));
        }
        if self.variables[z].is_zero() {
            return Err(ClusterError::ZeroVariable(z));
        }
        let (a, b) = self.exchange_terms(z);
        Ok(a.add(&b).div(&self.variables[z])?)
    }

    pub fn mutate(&self, z: usize) -> Result<Seed<S>, ClusterError> {
        let next = self.exchanged(z)?;
        let mut variables = self.variables.clone();
        variables[z] = next;
        Ok(Seed {
            quiver: self.quiver.mutate(z),
            variables,
        })
    }

    /// Canonical form for deduplication. Arrows between two frozen vertices
    /// never enter an exchange relation, so they are dropped.
    pub fn key(&self) -> SeedKey {
        let text: Vec<String> = self.variables.iter().map(|v| v.to_string()).collect();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| {
            (&text[i], self.quiver.frozen[i], i).cmp(&(&text[j], self.quiver.frozen[j], j))
        });
        SeedKey {
            variables: order
                .iter()
                .map(|&i| (text[i].clone(), self.quiver.frozen[i]))
                .collect(),
            matrix: order
                .iter()
                .map(|&i| {
                    order
                        .iter()
                        .map(|&j| {
                            let both = self.quiver.frozen[i] && self.quiver.frozen[j];
                            if both {
                                0
                            } else {
                                self.quiver.b[i][j]
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            vertices: (0..self.len())
                .map(|i| VertexJson {
                    id: i + 1,
                    frozen: self.quiver.frozen[i],
                    variable: self.variables[i].to_string(),
                })
                .collect(),
            matrix: self.quiver.b.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.len())
            .map(|i| format!("{}: {}", i + 1, self.variables[i]))
            .collect();
        self.quiver.to_dot(&labels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub frozen: bool,
    pub variable: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub vertices: Vec<VertexJson>,
    pub matrix: Vec<Vec<i64>>,
}

impl SeedJson {
    pub fn to_seed(&self) -> Result<Seed<RationalFn>, ClusterError> {
        let quiver = Quiver {
            frozen: self.vertices.iter().map(|v| v.frozen).collect(),
            b: self.matrix.clone(),
        };
        let variables = self
            .vertices
            .iter()
            .map(|v| RationalFn::parse(&v.variable))
            .collect::<Result<Vec<_>, _>>()?;
        Seed::new(quiver, variables)
    }
}

/// Backends that can certify algebraic independence of a tuple.
pub trait Independence: Scalar {
    /// Rank of the Jacobian at a random point, or `None` when the backend has no derivatives.
    fn jacobian_rank(xs: &[Self]) -> Option<usize>;
}

impl Independence for RationalFn {
    fn jacobian_rank(xs: &[Self]) -> Option<usize> {
        let mut vars: Vec<VariableId> = Vec::new();
        for x in xs {
            vars.extend(x.numer().vars());
            vars.extend(x.denom().vars());
        }
        vars.sort();
        vars.dedup();
        let ctx = ModularContext::new(0x1AC0_B1A4);
        let rows = xs
            .iter()
            .map(|x| {
                let (n, d) = (x.numer(), x.denom());
                let (nv, dv) = (ctx.eval_poly(n).ok()?, ctx.eval_poly(d).ok()?);
                vars.iter()
                    .map(|&v| {
                        // (n/d)' = (n' d - n d') / d²
                        let dn = ctx.eval_poly(&n.derivative(v)).ok()?;
                        let dd = ctx.eval_poly(&d.derivative(v)).ok()?;
                        dn.mul(dv).sub(nv.mul(dd)).div(dv.mul(dv)).ok()
                    })
                    .collect::<Option<Vec<Fp>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(linalg::rank(&rows))
    }
}

impl Independence for Fp {
    fn jacobian_rank(_: &[Self]) -> Option<usize> {
        None
    }
}

pub fn check_independence<S: Independence>(xs: &[S]) -> Result<(), ClusterError> {
    match S::jacobian_rank(xs) {
        Some(rank) if rank < xs.len() => Err(ClusterError::DependenceDetected {
            rank,
            size: xs.len(),
        }),
        _ => Ok(()),
    }
}

/// Where each vertex of the second seed lands in an amalgamation.
#[derive(Clone, Debug, PartialEq)]
pub struct Amalgamation<S> {
    pub seed: Seed<S>,
    pub second: Vec<usize>,
}

/// Glue `s2` to `s1` along `pairs` of frozen vertices with equal variables.
///
/// Vertices of `s1` keep their indices; the unmatched vertices of `s2` follow
/// in order. Glued vertices are defrosted and arrow counts add.
pub fn amalgamate<S: Independence>(
    s1: &Seed<S>,
    s2: &Seed<S>,
    pairs: &[(usize, usize)],
) -> Result<Amalgamation<S>, ClusterError> {
    for &(a, b) in pairs {
        if a >= s1.len() {
            return Err(ClusterError::NoSuchVertex(a));
        }
        if b >= s2.len() {
            return Err(ClusterError::NoSuchVertex(b));
        }
        if !s1.quiver.frozen[a] {
            return Err(ClusterError::NotFrozen(a));
        }
        if !s2.quiver.frozen[b] {
            return Err(ClusterError::NotFrozen(b));
        }
        if s1.variables[a] != s2.variables[b] {
            return Err(ClusterError::VariableMismatch(a, b));
        }
    }
    let glued: HashMap<usize, usize> = pairs.iter().map(|&(a, b)| (b, a)).collect();
    let mut second = Vec::with_capacity(s2.len());
    let mut next = s1.len();
    for b in 0..s2.len() {
        match glued.get(&b) {
            Some(&a) => second.push(a),
            None => {
                second.push(next);
                next += 1;
            }
        }
    }
    let mut frozen = s1.quiver.frozen.clone();
    let mut variables = s1.variables.clone();
    for b in 0..s2.len() {
        if !glued.contains_key(&b) {
            frozen.push(s2.quiver.frozen[b]);
            variables.push(s2.variables[b].clone());
        }
    }
    for &(a, _) in pairs {
        frozen[a] = false;
    }
    let mut q = Quiver::new(frozen);
    for i in 0..s1.len() {
        for j in 0..s1.len() {
            q.b[i][j] = s1.quiver.b[i][j];
        }
    }
    for i in 0..s2.len() {
        for j in 0..s2.len() {
            q.b[second[i]][second[j]] += s2.quiver.b[i][j];
        }
    }
    check_independence(&variables)?;
    Ok(Amalgamation {
        seed: Seed::new(q, variables)?,
        second,
    })
}

/// The seed of a weave under a top decoration.
pub fn seed_from_weave<S: Scalar>(
    w: &Weave,
    top: &crate::flags::Decoration<S>,
) -> Result<(Seed<S>, Vec<Origin>), ClusterError> {
    let prop = propagate_decoration(w, top)?;
    let q = quiver_of(w, &prop.cycles);
    let origins = prop.cycles.iter().map(|c| c.origin).collect();
    Ok((Seed::new(q, prop.delta)?, origins))
}

/// One half of the construction: the initial weave of a cut and its seed.
#[derive(Clone, Debug)]
pub struct Half<S> {
    pub weave: InitialWeave,
    pub seed: Seed<S>,
    pub origins: Vec<Origin>,
    /// Vertices whose cycles reach the bottom boundary.
    pub bottom: Vec<usize>,
}

/// `Σ_σ(p, q)` together with the two halves it was glued from.
#[derive(Clone, Debug)]
pub struct SigmaSeed<S> {
    pub seed: Seed<S>,
    pub halves: [Half<S>; 2],
    /// `(vertex of half 1, vertex of half 2)` identified when gluing.
    pub glued: Vec<(usize, usize)>,
    /// Index in `seed` of every vertex of half 2.
    pub second: Vec<usize>,
}

fn half<S: Scalar>(
    u: &Point<S>,
    fl: &crate::flags::SignatureFlags<S>,
    p: i64,
    q: i64,
) -> Result<Half<S>, ClusterError> {
    let iw = build_feasible_initial_weave(&u.sig, u.d, p, q)?;
    let prop = propagate_decoration(&iw.weave, &decorate_beta(u, fl, p, q))?;
    let bottom = (0..prop.cycles.len())
        .filter(|&k| prop.cycles[k].is_bottom_frozen())
        .collect();
    let quiver = quiver_of(&iw.weave, &prop.cycles);
    let origins = prop.cycles.iter().map(|c| c.origin).collect();
    Ok(Half {
        weave: iw,
        seed: Seed::new(quiver, prop.delta)?,
        origins,
        bottom,
    })
}

/// Amalgamate the seeds of the initial weaves for `(p, q)` and `(q, p + n)`
/// along their bottom frozen variables.
pub fn build_sigma_seed<S: Independence>(
    u: &Point<S>,
    p: i64,
    q: i64,
) -> Result<SigmaSeed<S>, ClusterError> {
    let d = u.d;
    if d % 2 == 0 {
        return Err(ClusterError::EvenDimension(d));
    }
    let n = u.sig.n() as i64;
    check_feasible_cut(&u.sig, d, p, q).map_err(|_| ClusterError::InvalidCut(p, q))?;
    let fl = flags_from_point(u)?;
    let h1 = half(u, &fl, p, q)?;
    let h2 = half(u, &fl, q, p + n)?;
    let mut glued = Vec::new();
    for &a in &h1.bottom {
        let b = h2
            .bottom
            .iter()
            .copied()
            .find(|&b| h2.seed.variables[b] == h1.seed.variables[a])
            .ok_or(ClusterError::VariableMismatch(a, a))?;
        glued.push((a, b));
    }
    let am = amalgamate(&h1.seed, &h2.seed, &glued)?;
    Ok(SigmaSeed {
        seed: am.seed,
        halves: [h1, h2],
        glued,
        second: am.second,
    })
}

/// Result of a breadth-first walk through the mutation graph.
#[derive(Clone, Debug)]
pub struct Exploration<S> {
    pub seeds: Vec<Seed<S>>,
    /// Distinct variables seen at mutable vertices, sorted by text.
    pub cluster_variables: Vec<S>,
    /// Frozen variables, sorted by text.
    pub frozen_variables: Vec<S>,
    /// True when no unvisited seed lies beyond the last layer.
    pub complete: bool,
}

impl<S: Scalar> Exploration<S> {
    /// Cluster and frozen variables together, sorted by text.
    pub fn all_variables(&self) -> Vec<S> {
        let mut m: BTreeMap<String, S> = BTreeMap::new();
        for v in self.cluster_variables.iter().chain(&self.frozen_variables) {
            m.entry(v.to_string()).or_insert_with(|| v.clone());
        }
        m.into_values().collect()
    }
}

pub fn explore<S: Scalar>(s: &Seed<S>, radius: usize) -> Result<Exploration<S>, ClusterError> {
    let mut seen: HashSet<SeedKey> = HashSet::from([s.key()]);
    let mut seeds = vec![s.clone()];
    let mut frontier = vec![s.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for z in x.mutable() {
                let y = x.mutate(z)?;
                if seen.insert(y.key()) {
                    next.push(y);
                }
            }
        }
        seeds.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    // complete when nothing lies one step beyond the last layer
    let mut complete = true;
    'outer: for x in &frontier {
        for z in x.mutable() {
            if !seen.contains(&x.mutate(z)?.key()) {
                complete = false;
                break 'outer;
            }
        }
    }
    let mut cluster: BTreeMap<String, S> = BTreeMap::new();
    let mut frozen: BTreeMap<String, S> = BTreeMap::new();
    for x in &seeds {
        for (i, v) in x.variables.iter().enumerate() {
            let into = if x.quiver.frozen[i] {
                &mut frozen
            } else {
                &mut cluster
            };
            into.entry(v.to_string()).or_insert_with(|| v.clone());
        }
    }
    Ok(Exploration {
        seeds,
        cluster_variables: cluster.into_values().collect(),
        frozen_variables: frozen.into_values().collect(),
        complete,
    })
}

/// Outcome of searching for one seed from another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connection {
    Found(usize),
    NotWithin(usize),
}

/// The mutation distance from `a` to `b` as unlabeled seeds, if at most `radius`.
pub fn connect<S: Scalar>(
    a: &Seed<S>,
    b: &Seed<S>,
    radius: usize,
) -> Result<Connection, ClusterError> {
    let goal = b.key();
    let mut seen: HashSet<SeedKey> = HashSet::from([a.key()]);
    let mut queue = VecDeque::from([(a.clone(), 0usize)]);
    if a.key() == goal {
        return Ok(Connection::Found(0));
    }
    while let Some((x, dist)) = queue.pop_front() {
        if dist == radius {
            continue;
        }
        for z in x.mutable() {
            let y = x.mutate(z)?;
            let k = y.key();
            if k == goal {
                return Ok(Connection::Found(dist + 1));
            }
            if seen.insert(k) {
                queue.push_back((y, dist + 1));
            }
        }
    }
    Ok(Connection::NotWithin(radius))
}

/// Findings of the polynomiality, irreducibility and coprimality checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarfishReport {
    pub checked: usize,
    pub not_polynomial: Vec<String>,
    pub reducible: Vec<String>,
    pub proportional: Vec<(String, String)>,
    /// Variables of degree ≥ 2 in a point, where only the partial tests ran.
    pub heuristic: Vec<String>,
}

impl StarfishReport {
    pub fn passed(&self) -> bool {
        self.not_polynomial.is_empty() && self.reducible.is_empty() && self.proportional.is_empty()
    }
}

fn eval_at(p: &Polynomial, at: &impl Fn(VariableId) -> Fp) -> Fp {
    let mut acc = Fp(0);
    for (m, c) in p.terms() {
        let mut t = Fp::from_rational(c).expect("coefficients are units mod p");
        for &(v, e) in m.pairs() {
            t = t.mul(at(v).pow(e as u64));
        }
        acc = acc.add(t);
    }
    acc
}

/// Whether `p` factors into a part in the points of `a` times a part in the rest;
/// tested by `p(x, y) p(x', y') = p(x, y') p(x', y)` at random points.
fn splits(p: &Polynomial, a: &[u16], trials: u64) -> bool {
    (0..trials).all(|t| {
        let (c1, c2) = (
            ModularContext::new(0x5EED + 2 * t),
            ModularContext::new(0x5EED + 2 * t + 1),
        );
        let mix = |left: &ModularContext, right: &ModularContext| {
            eval_at(p, &|v: VariableId| {
                if a.contains(&v.point) {
                    left.get(v)
                } else {
                    right.get(v)
                }
            })
        };
        mix(&c1, &c1).mul(mix(&c2, &c2)) == mix(&c1, &c2).mul(mix(&c2, &c1))
    })
}

/// `None` if no factor was found; `Some(reason)` otherwise. The second value
/// records whether the verdict is only partial.
fn factor_evidence(p: &Polynomial, others: &[&Polynomial]) -> (Option<String>, bool) {
    if p.is_constant() {
        return (Some("constant".into()), false);
    }
    if p.is_monomial() {
        return if p.total_degree() == 1 {
            (None, false)
        } else {
            (Some("monomial of degree ≥ 2".into()), false)
        };
    }
    if !p.monomial_content().is_one() {
        return (Some("monomial factor".into()), false);
    }
    for o in others {
        if !o.is_constant() && o.total_degree() < p.total_degree() && p.div_exact(o).is_some() {
            return (Some(format!("divisible by {}", o)), false);
        }
    }
    let mut points: Vec<u16> = p.vars().iter().map(|v| v.point).collect();
    points.sort();
    points.dedup();
    let mut degrees: BTreeMap<u16, u32> = BTreeMap::new();
    for (m, _) in p.terms().iter().take(1) {
        for &(v, e) in m.pairs() {
            *degrees.entry(v.point).or_default() += e;
        }
    }
    let multilinear = degrees.values().all(|&e| e <= 1);
    let rest = &points[1..];
    for mask in 0..(1u64 << rest.len()) - 1 {
        let a: Vec<u16> = std::iter::once(points[0])
            .chain(
                rest.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x),
            )
            .collect();
        if splits(p, &a, 2) {
            return (Some(format!("splits along points {:?}", a)), false);
        }
    }
    if !multilinear {
        let v = *p.vars().iter().next().expect("nonconstant");
        let g = crate::ring::gcd(p, &p.derivative(v));
        if !g.is_constant() {
            return (Some(format!("shares {} with a derivative", g)), false);
        }
    }
    (None, !multilinear)
}

/// Starfish-style checks on `S` and its once-mutated variables.
pub fn starfish_check(s: &Seed<RationalFn>) -> StarfishReport {
    let mut all: Vec<RationalFn> = s.variables.clone();
    for z in s.mutable() {
        match s.exchanged(z) {
            Ok(v) => all.push(v),
            Err(e) => {
                return StarfishReport {
                    not_polynomial: vec![format!("vertex {}: {}", z + 1, e)],
                    ..Default::default()
                }
            }
        }
    }
    let mut r = StarfishReport {
        checked: all.len(),
        ..Default::default()
    };
    let polys: Vec<Option<&Polynomial>> = all.iter().map(|x| x.as_polynomial()).collect();
    for (x, p) in all.iter().zip(&polys) {
        if p.is_none() {
            r.not_polynomial.push(x.to_string());
        }
    }
    let ok: Vec<&Polynomial> = polys.iter().flatten().copied().collect();
    for (k, p) in ok.iter().enumerate() {
        let others: Vec<&Polynomial> = ok
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &o)| o)
            .collect();
        let (bad, partial) = factor_evidence(p, &others);
        if let Some(why) = bad {
            r.reducible.push(format!("{}: {}", p, why));
        } else if partial {
            r.heuristic.push(p.to_string());
        }
    }
    let monic: Vec<Polynomial> = ok.iter().map(|p| p.monic()).collect();
    for i in 0..ok.len() {
        for j in i + 1..ok.len() {
            if monic[i] == monic[j] {
                r.proportional.push((ok[i].to_string(), ok[j].to_string()));
            }
        }
    }
    r
}

/// Multidegree checks on every variable of an exploration and on every exchange relation.
pub fn check_multihomogeneous(seeds: &[Seed<RationalFn>], n: usize) -> Result<(), String> {
    let md = |x: &RationalFn| -> Result<Vec<u32>, String> {
        let p = x
            .as_polynomial()
            .ok_or_else(|| format!("{} is not a polynomial", x))?;
        multidegree(p, n).map_err(|e| format!("{}: {}", x, e))
    };
    for s in seeds {
        for v in &s.variables {
            md(v)?;
        }
        for z in s.mutable() {
            let (a, b) = s.exchange_terms(z);
            if md(&a)? != md(&b)? {
                return Err(format!(
                    "exchange terms at {} have different multidegrees: {} and {}",
                    z + 1,
                    a,
                    b
                ));
            }
        }
    }
    Ok(())
}

/// The seed with each variable replaced by a fresh symbol.
pub fn symbolic_copy<S: Scalar>(s: &Seed<S>) -> Seed<RationalFn> {
    Seed {
        quiver: s.quiver.clone(),
        variables: (0..s.len())
            .map(|i| RationalFn::var(fresh_symbol(i)))
            .collect(),
    }
}

/// Symbols for the initial extended cluster, far from any point index.
pub fn fresh_symbol(i: usize) -> VariableId {
    VariableId::vector(60000 + i, 0)
}

/// Checks that every seed within `radius` carries Laurent polynomials in the
/// initial extended cluster with only mutable variables in denominators.
pub fn laurent_check<S: Scalar>(s: &Seed<S>, radius: usize) -> Result<usize, String> {
    let x = symbolic_copy(s);
    let frozen: HashSet<VariableId> = (0..s.len())
        .filter(|&i| s.quiver.frozen[i])
        .map(fresh_symbol)
        .collect();
    let ex = explore(&x, radius).map_err(|e| e.to_string())?;
    for v in &ex.cluster_variables {
        let d = v.denom();
        if !d.is_monomial() {
            return Err(format!("{} is not a Laurent polynomial", v));
        }
        if d.vars().iter().any(|w| frozen.contains(w)) {
            return Err(format!("{} has a frozen variable in its denominator", v));
        }
    }
    Ok(ex.seeds.len())
}
