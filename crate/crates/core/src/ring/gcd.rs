//! Multivariate gcd over the rationals.
//!
//! The main algorithm is the content / primitive-part recursion with a
//! primitive pseudo-remainder sequence. Several cheap exits run first: exact
//! divisibility, monomial factors, variables present in only one argument,
//! and a modular certificate of coprimality.

use std::collections::BTreeSet;

use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PRIME};
use super::poly::{Monomial, Polynomial, Q};
use super::var::VariableId;

/// Monic gcd of `a` and `b` (the zero polynomial only if both are zero).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).expect("monomial content divides");
    let b1 = b.div_monomial(&mb).expect("monomial content divides");
    let g = gcd_core(&a1, &b1);
    g.mul_monomial(&m, &Q::one()).monic()
}

fn gcd_core(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    if b.len() <= a.len() {
        if a.div_exact(b).is_some() {
            return bm;
        }
    } else if b.div_exact(a).is_some() {
        return am;
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&y) = va.difference(&vb).next() {
        return gcd_with_coeffs(a, y, b);
    }
    if let Some(&y) = vb.difference(&va).next() {
        return gcd_with_coeffs(b, y, a);
    }
    if modular_coprime(a, b, &va) {
        return Polynomial::one();
    }
    let x = *va
        .iter()
        .min_by_key(|&&v| {
            (
                a.degree_in(v).max(b.degree_in(v)),
                a.degree_in(v).min(b.degree_in(v)),
            )
        })
        .expect("nonconstant polynomial has a variable");
    gcd_prs(a, b, x)
}

/// `y` occurs in `a` but not in `other`: the gcd divides every `y`-coefficient of `a`.
fn gcd_with_coeffs(a: &Polynomial, y: VariableId, other: &Polynomial) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = a
        .to_univariate(y)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = other.clone();
    for c in coeffs {
        g = gcd(&c, &g);
        if g.is_constant() {
            return Polynomial::one();
        }
    }
    g.monic()
}

fn content(a: &Polynomial, x: VariableId) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = a
        .to_univariate(x)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut it = coeffs.into_iter();
    let mut g = match it.next() {
        Some(c) => c.monic(),
        None => return Polynomial::zero(),
    };
    for c in it {
        if g.is_constant() {
            return Polynomial::one();
        }
        g = gcd(&g, &c);
    }
    g
}

fn primitive_part(a: &Polynomial, x: VariableId) -> Polynomial {
    let c = content(a, x);
    if c.is_constant() {
        return a.monic();
    }
    a.div_exact(&c).expect("content divides").monic()
}

fn lead_in(a: &Polynomial, x: VariableId) -> (u32, Polynomial) {
    let mut u = a.to_univariate(x);
    let d = u.len() - 1;
    (d as u32, u.swap_remove(d))
}

fn prem(a: &Polynomial, b: &Polynomial, x: VariableId) -> Polynomial {
    let (db, lb) = lead_in(b, x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let (dr, lr) = lead_in(&r, x);
        let shift = Monomial::from_pairs(vec![(x, dr - db)]);
        let t = b.mul(&lr).mul_monomial(&shift, &Q::one());
        r = r.mul(&lb).sub(&t);
    }
    r
}

fn gcd_prs(a: &Polynomial, b: &Polynomial, x: VariableId) -> Polynomial {
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides").monic();
    let pb = b.div_exact(&cb).expect("content divides").monic();
    let (mut r0, mut r1) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        if r1.degree_in(x) == 0 {
            break Polynomial::one();
        }
        let r = prem(&r0, &r1, x);
        if r.is_zero() {
            break r1;
        }
        let r = primitive_part(&r, x);
        r0 = r1;
        r1 = r;
    };
    c.mul(&g).monic()
}

/// True only if `a` and `b` are certainly coprime.
///
/// For each shared variable `x`, all other variables are specialized at random
/// residues. If the leading `x`-coefficients survive and the univariate images
/// are coprime, the true gcd has degree zero in `x`.
fn modular_coprime(a: &Polynomial, b: &Polynomial, vars: &BTreeSet<VariableId>) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_FFEE ^ (a.len() as u64) << 32 ^ b.len() as u64);
    let all: Vec<VariableId> = vars.iter().copied().collect();
    for &x in &all {
        let vals: Vec<(VariableId, Fp)> = all
            .iter()
            .map(|&v| (v, Fp(rng.gen_range(1..PRIME))))
            .collect();
        let ua = match image(a, x, &vals) {
            Some(u) => u,
            None => return false,
        };
        let ub = match image(b, x, &vals) {
            Some(u) => u,
            None => return false,
        };
        if ua.len() != a.degree_in(x) as usize + 1 || ub.len() != b.degree_in(x) as usize + 1 {
            return false;
        }
        if univariate_gcd_degree(ua, ub) > 0 {
            return false;
        }
    }
    true
}

fn image(a: &Polynomial, x: VariableId, vals: &[(VariableId, Fp)]) -> Option<Vec<Fp>> {
    let deg = a.degree_in(x) as usize;
    let mut out = vec![Fp(0); deg + 1];
    for (m, c) in a.terms() {
        let mut t = Fp::from_rational(c).ok()?;
        let mut e = 0usize;
        for &(v, k) in m.pairs() {
            if v == x {
                e = k as usize;
            } else {
                let val = vals.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(Fp(1));
                t = t.mul(val.pow(k as u64));
            }
        }
        out[e] = out[e].add(t);
    }
    while out.len() > 1 && out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    Some(out)
}

fn univariate_gcd_degree(mut a: Vec<Fp>, mut b: Vec<Fp>) -> usize {
    fn trim(v: &mut Vec<Fp>) {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.is_empty() {
            return a.len().saturating_sub(1);
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = b
            .last()
            .unwrap()
            .inv()
            .expect("trimmed leading coefficient");
        while a.len() >= b.len() && !a.is_empty() {
            let f = a.last().unwrap().mul(inv);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = a[i + shift].sub(f.mul(*c));
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}
