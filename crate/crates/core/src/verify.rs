//! Verification suites behind `mixgrass verify`.
//!
//! The worked-example suite is driven by the golden file in `fixtures/`,
//! which stores every expected value as canonical polynomial text.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cluster::{build_sigma_seed, explore, laurent_check, seed_from_weave, Independence};
use crate::exterior::{det_of, mixed_wedge_chain, Point};
use crate::flags::{decorate_beta, flags_from_point};
use crate::ring::{Coordinates, RationalFn, Scalar};
use crate::signature::{appendix_sweep, Ell, Signature};
use crate::weave::{
    build_weyl_determinant_weave, greedy_reduction, greedy_reduction_from_right, Layer, Weave,
};
use crate::words::{beta_sigma, MarkedWord};

/// The worked-example golden file.
pub const WORKED_EXAMPLE: &str = include_str!("../fixtures/worked_example.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// The d = 3, n = 8 worked example end to end.
    Example,
    /// Exchange relations, weave invariants and determinant realization.
    Identities,
    /// Signature fixtures and the exhaustive sweep over n ≤ 10.
    Appendix,
    /// Both cuts of Gr(3, 6) give the same cluster variables.
    CutIndependence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from(name: &str, r: Result<String, String>) -> Check {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub signature: String,
    pub d: usize,
    pub cut: [i64; 2],
    pub half1: Vec<String>,
    pub half2: Vec<String>,
    pub mutations: Vec<FixtureMutation>,
    pub sizes: FixtureSizes,
    pub defrosted: Vec<FixtureVertex>,
    pub generators1: Vec<String>,
    pub generators2: Vec<String>,
    pub extra1: Vec<String>,
    pub extra2: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureMutation {
    pub half: usize,
    pub vertex: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureSizes {
    pub vertices: usize,
    pub mutable: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureVertex {
    pub vertex: usize,
    pub value: String,
}

/// File name of the worked-example golden file inside a fixtures directory.
pub const WORKED_EXAMPLE_FILE: &str = "worked_example.json";

pub fn worked_example_fixture() -> Fixture {
    serde_json::from_str(WORKED_EXAMPLE).expect("fixture parses")
}

/// Canonical text of a fixture value carried into the backend by `lift`.
type Lift<'a, S> = &'a dyn Fn(&RationalFn) -> Result<S, String>;

fn lifted<S: Scalar>(texts: &[String], lift: Lift<S>) -> Result<Vec<S>, String> {
    texts
        .iter()
        .map(|t| {
            let r = RationalFn::parse(t).map_err(|e| format!("fixture text {:?}: {}", t, e))?;
            lift(&r)
        })
        .collect()
}

fn sorted_texts<S: Scalar>(xs: &[S]) -> BTreeSet<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Run one suite. `lift` maps exact fixture values into the backend.
pub fn run_suite<S: Independence, C: Coordinates<S>>(
    suite: Suite,
    coords: &mut C,
    lift: Lift<S>,
    fixture: &Fixture,
) -> Vec<Check> {
    match suite {
        Suite::Example => example(coords, lift, fixture),
        Suite::Identities => identities(coords),
        Suite::Appendix => appendix(),
        Suite::CutIndependence => cut_independence(coords),
    }
}

fn example<S: Independence, C: Coordinates<S>>(
    coords: &mut C,
    lift: Lift<S>,
    fx: &Fixture,
) -> Vec<Check> {
    let sig: Signature = match fx.signature.parse() {
        Ok(s) => s,
        Err(e) => return vec![Check::from("fixture", Err(err(e)))],
    };
    let u = Point::generic(&sig, fx.d, coords);
    let s = match build_sigma_seed(&u, fx.cut[0], fx.cut[1]) {
        Ok(s) => s,
        Err(e) => return vec![Check::from("seed construction", Err(err(e)))],
    };
    let mut out = Vec::new();
    out.push(Check::from(
        "half variables",
        (|| {
            check(
                s.halves[0].seed.variables == lifted(&fx.half1, lift)?,
                "first half differs",
            )?;
            check(
                s.halves[1].seed.variables == lifted(&fx.half2, lift)?,
                "second half differs",
            )?;
            Ok(format!("{} + {} variables", fx.half1.len(), fx.half2.len()))
        })(),
    ));
    out.push(Check::from(
        "half exchange relations",
        (|| {
            for m in &fx.mutations {
                let seed = &s
                    .halves
                    .get(m.half.wrapping_sub(1))
                    .ok_or("fixture half must be 1 or 2")?
                    .seed;
                let z = m.vertex.wrapping_sub(1);
                let got = seed.exchanged(z).map_err(err)?;
                let want = lifted(std::slice::from_ref(&m.value), lift)?.remove(0);
                check(got == want, format!("half {} vertex {}", m.half, m.vertex))?;
                let (a, b) = seed.exchange_terms(z);
                check(
                    seed.variables[z].mul(&got) == a.add(&b),
                    "exchange relation",
                )?;
            }
            Ok(format!("{} mutations", fx.mutations.len()))
        })(),
    ));
    out.push(Check::from(
        "amalgamated seed",
        (|| {
            check(
                s.seed.len() == fx.sizes.vertices && s.seed.mutable().len() == fx.sizes.mutable,
                format!(
                    "{} vertices, {} mutable",
                    s.seed.len(),
                    s.seed.mutable().len()
                ),
            )?;
            for v in &fx.defrosted {
                let got = s.seed.exchanged(v.vertex.wrapping_sub(1)).map_err(err)?;
                let want = lifted(std::slice::from_ref(&v.value), lift)?.remove(0);
                check(got == want, format!("defrosted vertex {}", v.vertex))?;
            }
            Ok(format!(
                "{} vertices, {} mutable, {} defrosted exchanges",
                fx.sizes.vertices,
                fx.sizes.mutable,
                fx.defrosted.len()
            ))
        })(),
    ));
    out.push(Check::from(
        "half generators",
        (|| {
            let mut sizes = Vec::new();
            for (k, gens, extra) in [
                (0, &fx.generators1, &fx.extra1),
                (1, &fx.generators2, &fx.extra2),
            ] {
                let ex = explore(&s.halves[k].seed, 10).map_err(err)?;
                check(
                    ex.complete,
                    format!("half {} exploration did not close", k + 1),
                )?;
                let mut want = lifted(gens, lift)?;
                want.extend(lifted(extra, lift)?);
                check(
                    sorted_texts(&ex.all_variables()) == sorted_texts(&want),
                    format!("half {} variables differ", k + 1),
                )?;
                sizes.push(gens.len());
            }
            Ok(format!("generator lists of sizes {:?}", sizes))
        })(),
    ));
    out
}

fn identities<S: Independence, C: Coordinates<S>>(coords: &mut C) -> Vec<Check> {
    let mut out = Vec::new();
    let sig: Signature = "bwbbbbwb".parse().expect("pattern");
    let u = Point::generic(&sig, 3, coords);
    let sigma = build_sigma_seed(&u, 1, 5);
    out.push(Check::from(
        "exchange relations near the seed",
        (|| {
            let s = sigma.as_ref().map_err(err)?;
            let ex = explore(&s.seed, 2).map_err(err)?;
            let mut n = 0;
            for t in &ex.seeds {
                for z in t.mutable() {
                    let m = t.mutate(z).map_err(err)?;
                    let (a, b) = t.exchange_terms(z);
                    check(
                        m.variables[z].mul(&t.variables[z]) == a.add(&b),
                        "exchange relation",
                    )?;
                    check(
                        m.mutate(z).map_err(err)? == *t,
                        "mutation is not an involution",
                    )?;
                    n += 1;
                }
            }
            Ok(format!("{} mutations over {} seeds", n, ex.seeds.len()))
        })(),
    ));
    out.push(Check::from(
        "Laurent phenomenon",
        (|| {
            let s = sigma.as_ref().map_err(err)?;
            let seen = laurent_check(&s.seed, 3)?;
            Ok(format!("{} variables within radius 3", seen))
        })(),
    ));
    out.push(Check::from(
        "Demazure products along weaves",
        (|| {
            let s = sigma.as_ref().map_err(err)?;
            let beta = beta_sigma(&sig, 3);
            let mut ws: Vec<Weave> = s.halves.iter().map(|h| h.weave.weave.clone()).collect();
            for (p, q) in [(1, 5), (5, 9)] {
                ws.push(greedy_reduction(&beta.slice(p, q), 3));
                ws.push(greedy_reduction_from_right(&beta.slice(p, q), 3));
            }
            for w in &ws {
                w.validate().map_err(err)?;
                check(w.row_products_agree(), "row products disagree")?;
                let cs = w.cycles();
                for a in &cs {
                    for b in &cs {
                        check(
                            w.pairing(a, b) == -w.pairing(b, a),
                            "pairing is not antisymmetric",
                        )?;
                    }
                }
            }
            Ok(format!("{} weaves", ws.len()))
        })(),
    ));
    out.push(Check::from("four-cycle weave", four_cycle_weave()));
    out.push(Check::from(
        "determinants on Weyl weaves",
        (|| {
            let sig = Signature::monochromatic(9);
            let u = Point::generic(&sig, 3, coords);
            let fl = flags_from_point(&u).map_err(err)?;
            let top = decorate_beta(&u, &fl, 1, 6);
            let mut n = 0;
            for a in 1..=6i64 {
                for b in a + 1..=6 {
                    for c in b + 1..=6 {
                        let ww =
                            build_weyl_determinant_weave(&sig, 3, 1, 6, &[a, b, c]).map_err(err)?;
                        let (seed, _) = seed_from_weave(&ww.weave, &top).map_err(err)?;
                        let v = [a, b, c].map(|j| u.at(j).clone());
                        let want = det_of(&v);
                        check(
                            mixed_wedge_chain(&v).scalar_value() == Some(want.clone()),
                            "chain differs from det",
                        )?;
                        check(
                            seed.variables.contains(&want),
                            format!("det({}, {}, {}) not realized", a, b, c),
                        )?;
                        n += 1;
                    }
                }
            }
            Ok(format!("{} determinants", n))
        })(),
    ));
    out
}

fn four_cycle_weave() -> Result<String, String> {
    let mut top = MarkedWord::from_digits("321122");
    top.marks[1] = true;
    top.marks[2] = true;
    let w = Weave::new(
        4,
        top,
        vec![
            Layer::merge(3),
            Layer::merge(4),
            Layer::braid(2),
            Layer::swap(1),
        ],
    );
    let bottom = w.validate().map_err(err)?;
    check(
        bottom.digits() == "1321",
        format!("bottom {}", bottom.digits()),
    )?;
    let cs = w.cycles();
    check(cs.len() == 4 && cs.iter().all(|c| c.is_frozen()), "cycles")?;
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate() {
            let want = match (i + 1, j + 1) {
                (2, 3) | (4, 1) => 1,
                (3, 2) | (1, 4) => -1,
                _ => 0,
            };
            check(
                w.pairing(a, b) == want,
                format!("pairing ({}, {})", i + 1, j + 1),
            )?;
        }
    }
    Ok("321122 ⇉ 1321 with four frozen cycles".into())
}

fn appendix() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(Check::from(
        "signature fixtures",
        (|| {
            let s1: Signature = "bbwbwb".parse().map_err(err)?;
            let s2: Signature = "bwbwbw".parse().map_err(err)?;
            let l1: Vec<Ell> = (0..3).map(|k| s1.ell(1, k, 3)).collect();
            let l2: Vec<Ell> = (0..3).map(|k| s2.ell(1, k, 3)).collect();
            check(
                l1 == [Ell::Finite(7), Ell::Finite(1), Ell::Finite(2)],
                "bbwbwb lengths",
            )?;
            check(
                l2 == [Ell::Finite(2), Ell::Finite(1), Ell::Infinite],
                "bwbwbw lengths",
            )?;
            check(s1.is_admissible(3) && !s2.is_admissible(3), "admissibility")?;
            let s3: Signature = "bbbbw".parse().map_err(err)?;
            check(s3.pi(6).steps() == [8, 8, 10, 2, 2], "bbbbw steps")?;
            check(
                s3.fixed_points(6) == BTreeSet::from([3]),
                "bbbbw fixed points",
            )?;
            Ok("ℓ values, admissibility, affine permutation".into())
        })(),
    ));
    let rep = appendix_sweep(10, &[3, 4, 5]);
    out.push(Check {
        name: "exhaustive sweep".into(),
        passed: rep.passed(),
        detail: match rep.counterexamples.first() {
            None => format!("{} (signature, d) pairs", rep.signatures_checked),
            Some(c) => format!("{} counterexamples, first {}", rep.counterexamples.len(), c),
        },
    });
    out
}

fn cut_independence<S: Independence, C: Coordinates<S>>(coords: &mut C) -> Vec<Check> {
    let sig = Signature::monochromatic(6);
    let u = Point::generic(&sig, 3, coords);
    vec![Check::from(
        "Gr(3, 6) cuts (1, 4) and (2, 5)",
        (|| {
            let mut sets = Vec::new();
            for (p, q) in [(1, 4), (2, 5)] {
                let s = build_sigma_seed(&u, p, q).map_err(err)?;
                let ex = explore(&s.seed, 20).map_err(err)?;
                check(ex.complete, "exploration did not close")?;
                sets.push((
                    sorted_texts(&ex.all_variables()),
                    sorted_texts(&ex.frozen_variables),
                ));
            }
            check(sets[0] == sets[1], "variable sets differ")?;
            Ok(format!(
                "{} variables, {} frozen",
                sets[0].0.len(),
                sets[0].1.len()
            ))
        })(),
    )]
}
