use super::*;
use crate::exterior::det_of;
use crate::ring::{Fp, ModularContext, RationalFn, Symbolic, VariableId};
use crate::signature::Signature;
use crate::weave::patch::build_initial_weave;
use crate::words::{all_complete_nested, t_plus_intervals};

type R = RationalFn;
type E = Extensor<R>;

fn x(j: usize, i: usize) -> R {
    R::var(VariableId::vector(j, i))
}

fn y(j: usize, i: usize) -> R {
    R::var(VariableId::covector(j, i))
}

fn v(j: usize, d: usize) -> E {
    E::vector((1..=d).map(|i| x(j, i)).collect())
}

/// `u*_a(u_b)` straight from coordinates.
fn pair(a: usize, b: usize, d: usize) -> R {
    (1..=d).fold(R::zero(), |acc, i| acc.add(&y(a, i).mul(&x(b, i))))
}

/// Leibniz expansion of `det(u_a, u_b, u_c)`.
fn det3(a: usize, b: usize, c: usize) -> R {
    let perms = [
        ([1, 2, 3], 1),
        ([2, 3, 1], 1),
        ([3, 1, 2], 1),
        ([2, 1, 3], -1),
        ([1, 3, 2], -1),
        ([3, 2, 1], -1),
    ];
    perms.iter().fold(R::zero(), |acc, (p, s)| {
        let t = x(a, p[0]).mul(&x(b, p[1])).mul(&x(c, p[2]));
        if *s > 0 {
            acc.add(&t)
        } else {
            acc.sub(&t)
        }
    })
}

fn flag(d: usize, comps: Vec<E>) -> DecoratedFlag<R> {
    DecoratedFlag::new(d, comps).unwrap()
}

fn point_mod(s: &str, d: usize, seed: u64) -> (Point<Fp>, SignatureFlags<Fp>) {
    let sig: Signature = s.parse().unwrap();
    let u = Point::generic(&sig, d, &mut ModularContext::new(seed));
    let fl = flags_from_point(&u).unwrap();
    (u, fl)
}

fn point(s: &str, d: usize) -> (Point<R>, SignatureFlags<R>) {
    let sig: Signature = s.parse().unwrap();
    let u = Point::generic(&sig, d, &mut Symbolic);
    let fl = flags_from_point(&u).unwrap();
    (u, fl)
}

#[test]
fn crossing_value_example() {
    let d = 3;
    let g = flag(d, vec![v(2, d), v(1, d).wedge(&v(2, d)).unwrap()]);
    let h = flag(d, vec![v(2, d), v(2, d).wedge(&v(3, d)).unwrap()]);
    assert_eq!(crossing_value(&g, &h, 2).unwrap(), det3(1, 2, 3));
    assert_eq!(crossing_value(&h, &g, 2).unwrap(), det3(1, 2, 3).neg());
    assert_eq!(dual_crossing_value(&g, &h, 2).unwrap(), det3(1, 2, 3));
    assert_eq!(
        crossing_value(&g, &g, 2),
        Err(FlagError::NotInRelativePosition(2))
    );
    assert_eq!(
        crossing_value(&g, &h, 1),
        Err(FlagError::NotInRelativePosition(1))
    );
}

#[test]
fn qwed_examples() {
    let d = 3;
    let (u1, u2, u3) = (v(1, d), v(2, d), v(3, d));
    let a = u1.wedge(&u2).unwrap();
    let b = u2.wedge(&u3).unwrap();
    assert_eq!(qwed(&a, &b, &u2).unwrap().det(), det3(1, 2, 3));
    assert_eq!(qwed(&u2, &b, &u2).unwrap(), b);
    assert_eq!(quotient(&u1, &u2), Err(FlagError::NotDivisible));
}

#[test]
fn cv_matches_dual_route_d4() {
    let mut ctx = ModularContext::new(7);
    let d = 4;
    for trial in 0..30 {
        let vs: Vec<Extensor<crate::ring::Fp>> = (0..d + 1)
            .map(|j| {
                Extensor::vector(
                    (1..=d)
                        .map(|i| ctx.value(VariableId::vector(100 * trial + j + 1, i)))
                        .collect(),
                )
            })
            .collect();
        let k = 1 + trial % (d - 1);
        // G = span(v_0..v_{d-2}); H replaces the k-th step by a generic vector of G^{k+1}.
        let mut gi = Vec::new();
        let mut acc = Extensor::one(d);
        for v in vs.iter().take(d - 1) {
            acc = acc.wedge(v).unwrap();
            gi.push(acc.clone());
        }
        let g = DecoratedFlag::new(d, gi).unwrap();
        let r = ctx.value(VariableId::covector(100 * trial + 1, 1));
        let step = if k + 1 < d {
            vs[k - 1].add(&vs[k].scale(&r))
        } else {
            vs[d].clone()
        };
        let h = g.with(k, g.get(k - 1).wedge(&step).unwrap());
        let a = crossing_value(&g, &h, k).unwrap();
        assert_eq!(a, dual_crossing_value(&g, &h, k).unwrap());
        assert!(Scalar::add(&a, &crossing_value(&h, &g, k).unwrap()).is_zero());
    }
}

#[test]
fn four_dimensional_signature_flags() {
    let (u, fl) = point("bbbbw", 4);
    let starred = u.at(5).clone();
    let f5 = &fl.flags[4];
    assert_eq!(
        f5.get(1),
        &mixed_wedge_chain(&[starred.clone(), u.at(1).clone(), u.at(2).clone()])
    );
    assert_eq!(
        f5.get(2),
        &mixed_wedge_chain(&[
            starred.clone(),
            u.at(1).clone(),
            u.at(2).clone(),
            u.at(3).clone()
        ])
    );
    assert_eq!(f5.get(3), &starred);
    assert_eq!(fl.f[3], pair(5, 4, 4));
    assert_eq!(fl.f[4], pair(5, 1, 4).neg());
}

#[test]
fn monochromatic_flags_are_plucker() {
    let d = 3;
    let (_, fl) = point("bbbbb", d);
    assert_eq!(fl.comp(2, 2), &v(2, d).wedge(&v(3, d)).unwrap());
    assert_eq!(fl.f[0], det3(1, 2, 3));
    assert_eq!(fl.f[4], det3(5, 1, 2));
}

#[test]
fn signature_flags_are_flags_and_recursive() {
    for (s, d) in [("bwbbbbwb", 3), ("bbwbbbbb", 4), ("bwbbbbwbbb", 5)] {
        let (u, fl) = point_mod(s, d, 17);
        for j in 1..=u.n() as i64 {
            let f = fl.flag(j);
            assert!(f.is_flag(), "{} F_{}", s, j);
            for k in 2..d {
                let rec = if u.is_black(j) {
                    fl.comp(j, 1).mixed_wedge(fl.comp(j + 1, k - 1))
                } else {
                    fl.comp(j, d - 1).mixed_wedge(fl.comp(j + 1, (k + 1) % d))
                };
                if u.is_black(j) || k + 1 < d {
                    assert_eq!(&rec, fl.comp(j, k), "{} F_{}^{}", s, j, k);
                }
            }
            for a in 1..d {
                for b in 1..d {
                    if a + b != d {
                        assert!(fl.comp(j, a).mixed_wedge(fl.comp(j, b)).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn beta_decoration_is_normalized() {
    let (u, fl) = point("bwbbbbwb", 3);
    let dec = decorate_beta(&u, &fl, 1, 5);
    assert!(dec.is_normalized().unwrap());
    let cv = dec.crossing_values().unwrap();
    let marked: Vec<R> = cv
        .iter()
        .zip(&dec.word.marks)
        .filter(|(_, &m)| m)
        .map(|(c, _)| c.clone())
        .collect();
    assert_eq!(marked, fl.f[0..4].to_vec());
    assert_eq!(marked[0], pair(2, 1, 3));
    assert_eq!(marked[1], pair(2, 3, 3));
    assert_eq!(marked[2], det3(3, 4, 5));
}

#[test]
fn push_conventions() {
    let (_, fl) = point("bwbbbbwb", 3);
    let (g, h) = (fl.flag(1), fl.flag(4));
    assert_eq!(&push(g, 0, h, 3, &R::one()).unwrap(), h);
    assert_eq!(&lpush(g, 2, h).unwrap(), g);
    assert_eq!(&rpush(h, g, 1).unwrap(), g);
}

#[test]
fn factorization_through_lrpush() {
    for (s, d) in [("bbwwbbbb", 4), ("wbwbbbbb", 4), ("bwwbbbbwbb", 5)] {
        let (u, fl) = point_mod(s, d, 5);
        let p = 1;
        for r in 1..d {
            let ri = r as i64;
            let xs = (p..p + ri).filter(|&j| u.is_black(j)).count();
            let ys = r - xs;
            let mcb = closed::Factor::Blacks {
                from: p,
                to: p + ri - 1,
            }
            .eval(&u, &fl);
            let mcw = closed::Factor::Whites {
                from: p,
                to: p + ri - 1,
            }
            .eval(&u, &fl);
            let det = |a: &Extensor<Fp>, b: &Extensor<Fp>| a.wedge(b).unwrap().det();
            let top = det(fl.comp(p, xs), fl.comp(p + ri, d - xs))
                .mul(det(fl.comp(p, d - ys), fl.comp(p + ri, ys)));
            let bottom = det(&mcb, fl.comp(p + ri, d - xs)).mul(det(&mcw, fl.comp(p + ri, ys)));
            let mu = top.div(bottom).unwrap();
            let pushed = push(fl.flag(p), xs, fl.flag(p + ri), d - ys, &mu).unwrap();
            assert_eq!(&pushed, fl.flag(p), "{} r = {}", s, r);
        }
    }
}

#[test]
fn nested_decorations_are_normalized() {
    let d = 4;
    let (_, fl) = point_mod("bbwbbbbw", d, 3);
    let (g, h) = (fl.flag(1), fl.flag(5));
    for t in all_complete_nested(d) {
        let dec = decorate_nested(&t, g, h).unwrap();
        assert_eq!(dec.flags.first(), Some(g));
        assert_eq!(dec.flags.last(), Some(h));
        assert!(dec.is_normalized().unwrap(), "{}", t.marked());
        let marked: Vec<Fp> = dec
            .crossing_values()
            .unwrap()
            .into_iter()
            .zip(&dec.word.marks)
            .filter(|(_, &m)| m)
            .map(|(c, _)| c)
            .collect();
        let expect: Vec<Fp> = t
            .words
            .iter()
            .map(|w| w.letters()[0] as usize)
            .map(|i| g.get(i).wedge(h.get(d - i)).unwrap().det())
            .collect();
        assert_eq!(marked, expect);
    }
    let plus = NestedWordShape {
        words: t_plus_intervals(d),
    };
    assert!(decorate_nested(&plus, g, g)
        .unwrap()
        .crossing_values()
        .is_err());
}

#[test]
fn worked_example_first_half() {
    let d = 3;
    let (u, fl) = point("bwbbbbwb", d);
    let iw = build_initial_weave(&u.sig, d, 1, 5).unwrap();
    let top = decorate_beta(&u, &fl, 1, 5);
    let prop = propagate_decoration(&iw.weave, &top).unwrap();
    prop.check_edges(&iw.weave).unwrap();
    let dets = |a, b, c| det3(a, b, c);
    let delta9 = pair(2, 4, d)
        .mul(&dets(1, 3, 5))
        .sub(&pair(2, 3, d).mul(&dets(1, 4, 5)));
    let expect = vec![
        pair(2, 1, d),
        pair(2, 3, d),
        dets(3, 4, 5),
        dets(4, 5, 6),
        dets(1, 3, 4),
        dets(1, 4, 5),
        dets(1, 5, 6),
        pair(2, 4, d),
        delta9,
    ];
    assert_eq!(prop.delta, expect);
    let forms = closed::closed_forms_for(&u.sig, d, &iw);
    let predicted: Vec<R> = forms.iter().map(|c| c.eval(&u, &fl)).collect();
    assert_eq!(predicted, expect);
}

#[test]
fn worked_example_second_half() {
    let d = 3;
    let (u, fl) = point("bwbbbbwb", d);
    let iw = build_initial_weave(&u.sig, d, 5, 9).unwrap();
    let prop = propagate_decoration(&iw.weave, &decorate_beta(&u, &fl, 5, 9)).unwrap();
    prop.check_edges(&iw.weave).unwrap();
    let chain = |ix: &[usize]| {
        mixed_wedge_chain(
            &ix.iter()
                .map(|&j| u.at(j as i64).clone())
                .collect::<Vec<_>>(),
        )
        .det()
    };
    let expect = vec![
        chain(&[5, 6, 7, 8, 1]),
        pair(7, 6, d),
        pair(7, 8, d),
        chain(&[8, 1, 2, 3, 4]),
        pair(7, 5, d),
        det3(5, 8, 1),
        chain(&[5, 1, 2, 3, 4]),
        det3(5, 6, 8),
        det3(5, 6, 1),
    ];
    assert_eq!(prop.delta, expect);
    let d10 = det3(5, 6, 8)
        .mul(&pair(7, 1, d))
        .sub(&pair(7, 8, d).mul(&det3(5, 6, 1)));
    assert_eq!(prop.delta[0], d10);
    let d13 = pair(2, 4, d)
        .mul(&det3(1, 3, 8))
        .sub(&pair(2, 3, d).mul(&det3(1, 4, 8)));
    assert_eq!(prop.delta[3], d13);
}

#[test]
fn closed_forms_match_propagation() {
    for (s, d, p, q) in [
        ("bbbbbbbbbb", 3, 1, 6),
        ("bwwbbwbbwb", 3, 2, 7),
        ("bbwbbbbwbbbb", 5, 1, 7),
        ("wbbbbbwbbbbb", 5, 3, 9),
    ] {
        let sig: Signature = s.parse().unwrap();
        let mut ctx = ModularContext::for_points(11, sig.n(), d);
        let u = Point::generic(&sig, d, &mut ctx);
        let fl = flags_from_point(&u).unwrap();
        let iw = build_initial_weave(&sig, d, p, q).unwrap();
        let prop = propagate_decoration(&iw.weave, &decorate_beta(&u, &fl, p, q)).unwrap();
        prop.check_edges(&iw.weave).unwrap();
        for (k, c) in closed::closed_forms_for(&sig, d, &iw).iter().enumerate() {
            assert_eq!(
                prop.delta[k],
                c.eval(&u, &fl),
                "{} cut ({}, {}) cycle {} = {}",
                s,
                p,
                q,
                k,
                c
            );
        }
    }
}

#[test]
fn trivial_weave_keeps_decoration() {
    let (u, fl) = point("bwbbbbwb", 3);
    let top = decorate_beta(&u, &fl, 1, 5);
    let w = crate::weave::Weave::new(3, top.word.clone(), vec![]);
    let prop = propagate_decoration(&w, &top).unwrap();
    assert_eq!(prop.delta, fl.f[0..4].to_vec());
    assert_eq!(prop.rows.last().unwrap(), &top.flags);
}

#[test]
fn multidegree_of_invariants() {
    let d9 = pair(2, 4, 3)
        .mul(&det3(1, 3, 5))
        .sub(&pair(2, 3, 3).mul(&det3(1, 4, 5)));
    assert_eq!(
        multidegree(d9.numer(), 8).unwrap(),
        vec![1, 1, 1, 1, 1, 0, 0, 0]
    );
    assert_eq!(
        multidegree(det_of(&[v(1, 3), v(2, 3), v(3, 3)]).numer(), 8).unwrap(),
        vec![1, 1, 1, 0, 0, 0, 0, 0]
    );
    assert_eq!(
        multidegree(pair(2, 1, 3).numer(), 3).unwrap(),
        vec![1, 1, 0]
    );
    let mixed = pair(2, 1, 3).add(&x(1, 1));
    assert_eq!(
        multidegree(mixed.numer(), 3),
        Err(FlagError::NotMultiHomogeneous)
    );
}
