#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use skewfree::autom::{elementary_autom, henon_autom, monomial_autom, Automorphism, IntMat2};
use skewfree::exactnum::{rat, rat_int, Rat};
use skewfree::ring::{parse_poly, ExpVec, Mode, Poly};
use skewfree::skew::SkewPoly;

pub const SEED: u64 = 0x5eed_f4ee;

/// Every 2×2 integer matrix with entries in `[-r, r]` and determinant ±1.
pub fn unimodular_box(r: i64) -> Vec<IntMat2> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    let m = IntMat2::new(a, b, c, d);
                    if m.det().abs() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

pub fn random_unimodular(rng: &mut impl Rng, r: i64) -> IntMat2 {
    loop {
        let m = IntMat2::new(
            rng.gen_range(-r..=r),
            rng.gen_range(-r..=r),
            rng.gen_range(-r..=r),
            rng.gen_range(-r..=r),
        );
        if m.det().abs() == 1 {
            return m;
        }
    }
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let q = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        if q != rat_int(0) {
            return q;
        }
    }
}

pub fn random_poly(rng: &mut impl Rng, mode: Mode, terms: usize, span: i64) -> Poly {
    let lo = if mode == Mode::Laurent { -span } else { 0 };
    let n = rng.gen_range(1..=terms);
    let t = (0..n).map(|_| {
        (
            ExpVec::new(rng.gen_range(lo..=span), rng.gen_range(lo..=span)),
            random_rat(rng),
        )
    });
    Poly::from_terms(mode, t.collect::<Vec<_>>()).expect("admissible exponents")
}

pub fn random_unit(rng: &mut impl Rng) -> Poly {
    Poly::monomial(
        Mode::Laurent,
        rng.gen_range(-2..=2),
        rng.gen_range(-2..=2),
        random_rat(rng),
    )
    .unwrap()
}

pub fn random_skew(rng: &mut impl Rng, sigma: &Arc<Automorphism>, terms: usize) -> SkewPoly {
    let lo = if sigma.mode() == Mode::Laurent { -2 } else { 0 };
    let n = rng.gen_range(1..=terms);
    let span = if sigma.mode() == Mode::Laurent { 2 } else { 1 };
    let t: Vec<(i64, Poly)> = (0..n)
        .map(|_| {
            (
                rng.gen_range(lo..=2),
                random_poly(rng, sigma.mode(), 2, span),
            )
        })
        .collect();
    SkewPoly::from_terms(sigma.clone(), t).unwrap()
}

/// Random automorphism of k[x,y]: an elementary map or a Hénon map of degree 2.
pub fn random_poly_autom(rng: &mut impl Rng) -> Automorphism {
    if rng.gen_bool(0.5) {
        let p = Poly::monomial(Mode::Poly, 0, rng.gen_range(0..=2), random_rat(rng)).unwrap();
        elementary_autom(
            random_rat(rng),
            random_rat(rng),
            rat_int(rng.gen_range(-1..=1)),
            p,
        )
        .unwrap()
    } else {
        let p = &parse_poly("x^2", Mode::Poly)
            .unwrap()
            .scale(&random_rat(rng))
            + &Poly::constant(Mode::Poly, rat_int(rng.gen_range(-1..=1)));
        henon_autom(p, random_rat(rng)).unwrap()
    }
}

pub fn random_monomial_autom(rng: &mut impl Rng, r: i64) -> Automorphism {
    monomial_autom(random_unimodular(rng, r)).unwrap()
}

/// Number of lattice points `(a, b, c) ∈ ℕ³` with `a + c + ⌈b/2⌉ ≤ n`.
pub fn elementary_lattice_count(n: usize) -> usize {
    let mut count = 0;
    for a in 0..=n {
        for c in 0..=n - a {
            for b in 0..=2 * n {
                if a + c + b.div_ceil(2) <= n {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Degree-n dimension of k{t, xt, yt} under σ(x) = x, σ(y) = xy, by enumerating exponent
/// sums: position k contributes (0,0), (1,0) or (k,1) since σᵏ(x) = x, σᵏ(y) = xᵏy.
pub fn heisenberg_graded_count(n: usize) -> usize {
    let mut set = std::collections::HashSet::from([(0usize, 0usize)]);
    for k in 0..n {
        set = set
            .iter()
            .flat_map(|&(a, b)| [(a, b), (a + 1, b), (a + k, b + 1)])
            .collect();
    }
    set.len()
}
