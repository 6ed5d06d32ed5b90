mod common;

use common::{texts, Oracle, WorkedExample, R};
use mixgrass::cluster::{
    build_sigma_seed, check_multihomogeneous, explore, laurent_check, starfish_check, SigmaSeed,
};
use mixgrass::exterior::Point;
use mixgrass::ring::Symbolic;
use mixgrass::signature::Signature;

fn sigma() -> (SigmaSeed<R>, WorkedExample<R>) {
    let sig: Signature = "bwbbbbwb".parse().unwrap();
    let u = Point::generic(&sig, 3, &mut Symbolic);
    (
        build_sigma_seed(&u, 1, 5).unwrap(),
        WorkedExample::new(&Oracle::symbolic(3)),
    )
}

#[test]
fn halves_carry_the_listed_variables() {
    let (s, w) = sigma();
    assert_eq!(s.halves[0].seed.variables, w.delta[1..10].to_vec());
    assert_eq!(s.halves[1].seed.variables, w.delta[10..19].to_vec());
    // bottom frozen: Δ7, Δ9 and Δ16, Δ18
    assert_eq!(s.halves[0].bottom, vec![6, 8]);
    assert_eq!(s.halves[1].bottom, vec![6, 8]);
    assert_eq!(s.glued, vec![(6, 8), (8, 6)]);
}

#[test]
fn second_half_quiver_matches_the_figure() {
    let (s, _) = sigma();
    let q = &s.halves[1].seed.quiver;
    let frozen: Vec<usize> = (0..9).filter(|&i| q.frozen[i]).map(|i| i + 10).collect();
    assert_eq!(frozen, vec![10, 11, 12, 13, 16, 18]);
    let mut arrows: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .map(|&(i, j, c)| {
            assert_eq!(c, 1);
            (i + 10, j + 10)
        })
        .collect();
    arrows.sort();
    let mut want = vec![
        (10, 14),
        (10, 17),
        (11, 10),
        (12, 10),
        (13, 15),
        (14, 15),
        (14, 11),
        (15, 10),
        (15, 16),
        (16, 13),
        (17, 18),
        (17, 12),
        (18, 15),
    ];
    want.sort();
    assert_eq!(arrows, want);
}

#[test]
fn exchange_relations_of_both_halves() {
    let (s, w) = sigma();
    let h1 = &s.halves[0].seed;
    let h2 = &s.halves[1].seed;
    for (seed, z, want) in [
        (h1, 4, &w.delta5p),
        (h1, 5, &w.delta6p),
        (h1, 7, &w.delta8p),
        (h2, 4, &w.delta14p),
        (h2, 5, &w.delta15p),
        (h2, 7, &w.delta17p),
    ] {
        let got = seed.exchanged(z).unwrap();
        assert_eq!(&got, want, "vertex {}", z);
        let (a, b) = seed.exchange_terms(z);
        assert!(seed.variables[z].mul(&got).sub(&a).sub(&b).is_zero());
        assert!(got.is_polynomial());
    }
    // Δ5 Δ'5 = Δ1 Δ3 + Δ9, straight from the oracle
    let d = &w.delta;
    assert_eq!(d[5].mul(&w.delta5p), d[1].mul(&d[3]).add(&d[9]));
    assert_eq!(
        d[6].mul(&w.delta6p),
        d[4].mul(&d[9]).add(&d[3].mul(&d[7]).mul(&d[8]))
    );
    assert_eq!(d[8].mul(&w.delta8p), d[2].mul(&d[6]).add(&d[9]));
    assert_eq!(d[14].mul(&w.delta14p), d[10].add(&d[11].mul(&d[15])));
    assert_eq!(d[17].mul(&w.delta17p), d[10].add(&d[12].mul(&d[18])));
    assert!(w.delta15p.is_polynomial());
}

#[test]
fn amalgamated_seed() {
    let (s, w) = sigma();
    assert_eq!(s.seed.len(), 16);
    assert_eq!(s.seed.mutable().len(), 8);
    let d = &w.delta;
    for (z, want, terms) in [
        (6, &w.delta7p, [d[6].mul(&d[17]), d[4].mul(&d[15])]),
        (
            8,
            &w.delta9p,
            [d[5].mul(&d[8]).mul(&d[15]), d[6].mul(&d[13])],
        ),
    ] {
        assert_eq!(&s.seed.exchanged(z).unwrap(), want);
        let (a, b) = s.seed.exchange_terms(z);
        assert_eq!(texts(&[a, b]), texts(&terms));
    }
    // ε(glued) = ε₁ + ε₂ on the identified vertices
    for &(a, b) in &s.glued {
        for j in 0..9 {
            let mut e = 0;
            if s.second[j] < 9 {
                e += s.halves[0].seed.quiver.b[a][s.second[j]];
            }
            e += s.halves[1].seed.quiver.b[b][j];
            assert_eq!(s.seed.quiver.b[a][s.second[j]], e);
        }
    }
}

#[test]
fn each_half_generates_the_listed_invariants() {
    let (s, w) = sigma();
    for (k, list, extra) in [
        (0, w.generators1(), [w.delta[9].clone(), w.delta6p.clone()]),
        (
            1,
            w.generators2(),
            [w.delta[10].clone(), w.delta15p.clone()],
        ),
    ] {
        let ex = explore(&s.halves[k].seed, 10).unwrap();
        assert!(ex.complete);
        let got = texts(&ex.all_variables());
        let mut want = list.clone();
        want.extend(extra);
        assert_eq!(got, texts(&want), "half {}", k + 1);
        assert_eq!(texts(&list).len(), 11);
    }
}

#[test]
fn starfish_and_multidegrees() {
    let (s, _) = sigma();
    let r = starfish_check(&s.seed);
    assert!(r.passed(), "{:?}", r);
    assert!(r.heuristic.is_empty());
    assert_eq!(r.checked, 24);
    let ex = explore(&s.seed, 2).unwrap();
    check_multihomogeneous(&ex.seeds, 8).unwrap();
}

#[test]
fn laurent_phenomenon_near_the_initial_seed() {
    let (s, _) = sigma();
    let seen = laurent_check(&s.seed, 5).unwrap();
    assert!(seen > 100);
}
