//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero on failure.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewfree::autom::{elementary_autom, henon_paper, monomial_autom, IntMat2};
use skewfree::exactnum::{rat, rat_int, QuadExt};
use skewfree::freeness::{
    check_free, component_dimension, component_dimensions, degree_doubling_certificate,
    find_relation, rank_dimensions, verify_relation, Verdict,
};
use skewfree::growth::{filtration_dims, gk_estimate, GrowthClass};
use skewfree::monomial::{
    catalog_relations, classify, eigen_data, exp_set_dimensions, parity_obstruction,
    valuation_certificate, Branch, Parity, ValuationCertificate,
};
use skewfree::ring::{parse_poly, weighted_degree, Mode, Poly, WeightedDegree};
use skewfree::skew::{conjugate_map, gauge_map, skew_mul, SkewPoly};

use common::*;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn powers_of_two(n: usize) -> Vec<usize> {
    (1..=n).map(|k| 1usize << k).collect()
}

fn laurent_xy() -> (Poly, Poly) {
    (Poly::x(Mode::Laurent), Poly::y(Mode::Laurent))
}

fn rogalski() -> Check {
    let m = IntMat2::new(1, 1, 1, 2);
    let fast = exp_set_dimensions(m, 12).map_err(e)?;
    ensure(fast == powers_of_two(12), || format!("fast path {fast:?}"))?;
    let (x, y) = laurent_xy();
    let rank = rank_dimensions(&monomial_autom(m).map_err(e)?, &x, &y, 7).map_err(e)?;
    ensure(rank == powers_of_two(7), || format!("rank {rank:?}"))?;
    let beta = QuadExt::new(rat(3, 2), rat(1, 2), 5).map_err(e)?;
    match valuation_certificate(m, 1) {
        ValuationCertificate::Certified { beta: b, .. } if b == beta => Ok(()),
        other => Err(format!("certificate {other:?}")),
    }
}

fn bergman() -> Check {
    let m = IntMat2::new(0, 1, 1, 1);
    let cat = catalog_relations(m).map_err(e)?;
    let rel = cat
        .iter()
        .find(|c| c.clause == "trace 1, det -1")
        .ok_or("missing catalog relation")?;
    ensure(
        rel.relation.to_string() == "(xt)^2(yt) - (yt)^2(xt)",
        || format!("relation {}", rel.relation),
    )?;
    ensure(verify_relation(&rel.relation), || {
        "relation does not vanish".into()
    })?;
    let s = Arc::new(monomial_autom(m).map_err(e)?);
    let (x, y) = laurent_xy();
    let d3 = component_dimension(&s, &x, &y, 3).map_err(e)?;
    ensure(d3 == 7, || format!("dim V_3 = {d3}"))?;
    let rep = check_free(&s, &x, &y, 2, 8).map_err(e)?;
    ensure(rep.dims == powers_of_two(8), || {
        format!("t^2 dims {:?}", rep.dims)
    })?;
    ensure(valuation_certificate(m.pow(2), 1).is_certified(), || {
        "M'^2 not certified".into()
    })
}

fn catalog() -> Check {
    let cases = [
        IntMat2::new(0, -1, 1, 0),
        IntMat2::new(0, 1, 1, 1),
        IntMat2::new(0, 1, 1, -1),
        IntMat2::new(1, 1, 0, 1),
        IntMat2::new(-1, 1, 0, -1),
        IntMat2::new(0, -1, 1, 1),
        IntMat2::new(0, -1, 1, -1),
    ];
    let (x, y) = laurent_xy();
    for m in cases {
        let cat = catalog_relations(m).map_err(e)?;
        ensure(!cat.is_empty(), || format!("{m}: no relations"))?;
        if m == IntMat2::new(0, -1, 1, 1) {
            ensure(cat.iter().any(|c| c.clause.contains("M^6")), || {
                "missing M^6 = I relation".into()
            })?;
        }
        let s = Arc::new(monomial_autom(m).map_err(e)?);
        for c in &cat {
            ensure(c.verified && verify_relation(&c.relation), || {
                format!("{m}: {} fails", c.relation)
            })?;
            let deg = c.relation.t_degree() as usize;
            let rep = check_free(&s, &x, &y, 1, deg).map_err(e)?;
            match rep.verdict {
                Verdict::NotFree { degree, .. } if degree <= deg => {}
                other => {
                    return Err(format!(
                        "{m}: {} at depth {deg} gave {}",
                        c.relation,
                        other.name()
                    ))
                }
            }
        }
    }
    Ok(())
}

/// Branch from the characteristic polynomial λ² − tλ + d, computed independently.
fn oracle_branch(m: IntMat2) -> Branch {
    let (t, d) = (m.trace() as f64, m.det() as f64);
    let disc = t * t - 4.0 * d;
    let rho = if disc < 0.0 {
        d.sqrt()
    } else {
        (t.abs() + disc.sqrt()) / 2.0
    };
    let finite = (1..=12).any(|k| m.pow(k) == IntMat2::IDENTITY);
    if (rho - 1.0).abs() < 1e-12 {
        if finite {
            Branch::FiniteOrder
        } else {
            Branch::Parabolic
        }
    } else if (rho - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12 {
        Branch::Golden
    } else {
        assert!(rho > 2.0);
        Branch::Large
    }
}

fn trichotomy() -> Check {
    let mats = unimodular_box(3);
    for &m in &mats {
        let rep = classify(m).map_err(e)?;
        let want = oracle_branch(m);
        ensure(rep.branch == want, || {
            format!("{m}: {} vs {}", rep.branch.name(), want.name())
        })?;
        let finite = (1..=12).any(|k| m.pow(k) == IntMat2::IDENTITY);
        ensure((rep.branch == Branch::FiniteOrder) == finite, || {
            format!("{m}: finite order mismatch")
        })?;
    }
    ensure(mats.len() > 100, || format!("only {} matrices", mats.len()))
}

fn henon() -> Check {
    let s = Arc::new(henon_paper(rat_int(1), rat_int(1)).map_err(e)?);
    let w = WeightedDegree::new(2, 1).map_err(e)?;
    let mut f = Poly::x(Mode::Poly);
    for n in 0..=8u32 {
        let d = weighted_degree(&f, w).map_err(e)?;
        ensure(d == 1 << (n + 1), || format!("deg_w σ^{n}(x) = {d}"))?;
        if n < 8 {
            f = s.apply(&f).map_err(e)?;
        }
    }
    let y = Poly::y(Mode::Poly);
    let cert = degree_doubling_certificate(&s, &y, w, 8).map_err(e)?;
    ensure(cert.is_certified(), || format!("doubling {cert:?}"))?;
    let rank = rank_dimensions(&s, &Poly::x(Mode::Poly), &y, 6).map_err(e)?;
    ensure(rank == powers_of_two(6), || format!("rank {rank:?}"))
}

fn henon_shifted() -> Check {
    let s = Arc::new(henon_paper(rat_int(1), rat_int(1)).map_err(e)?);
    let s1 = s.apply(&Poly::x(Mode::Poly)).map_err(e)?;
    let s2 = s.apply(&s1).map_err(e)?;
    let rank = rank_dimensions(&s, &s1, &s2, 4).map_err(e)?;
    ensure(rank == powers_of_two(4), || format!("rank {rank:?}"))
}

fn elementary() -> Check {
    let y2 = parse_poly("y^2", Mode::Poly).map_err(e)?;
    let s = Arc::new(elementary_autom(rat_int(1), rat_int(1), rat_int(0), y2.clone()).map_err(e)?);
    let gens = vec![
        SkewPoly::term(s.clone(), Poly::x(Mode::Poly), 0).map_err(e)?,
        SkewPoly::term(s.clone(), Poly::y(Mode::Poly), 0).map_err(e)?,
        SkewPoly::term(s.clone(), y2, 0).map_err(e)?,
        SkewPoly::t(s),
    ];
    let series = filtration_dims(&gens, 40).map_err(e)?;
    for (n, &d) in series.dims.iter().enumerate() {
        let want = elementary_lattice_count(n);
        ensure(d == want, || format!("n = {n}: {d} vs lattice {want}"))?;
    }
    let est = gk_estimate(&series).map_err(e)?;
    ensure(matches!(est.class, GrowthClass::Polynomial { .. }), || {
        format!("class {:?}", est.class)
    })?;
    ensure((2.7..=3.3).contains(&est.raw_slope), || {
        format!("slope {:.3}", est.raw_slope)
    })
}

fn parity() -> Check {
    let m = IntMat2::new(3, 2, 4, 3);
    ensure(parity_obstruction(m) == Parity::Obstructed, || {
        "not obstructed".into()
    })?;
    // Exponents of x σ(x|y) ⋯ enumerated directly from row vectors e·M^k.
    let mut set = HashSet::from([(0i128, 0i128)]);
    let mut rows = [(1i128, 0i128), (0, 1)];
    for n in 1..=10 {
        set = set
            .iter()
            .flat_map(|&(i, j)| rows.map(|(a, b)| (i + a, j + b)))
            .collect();
        let parities: HashSet<i128> = set.iter().map(|&(i, j)| (i + j).rem_euclid(2)).collect();
        ensure(parities.len() == 1, || format!("mixed parity at n = {n}"))?;
        let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
        rows = rows.map(|(i, j)| (i * a + j * c, i * b + j * d));
    }
    ensure(valuation_certificate(m, 1).is_certified(), || {
        "valuation not certified".into()
    })
}

fn heisenberg() -> Check {
    let s = Arc::new(monomial_autom(IntMat2::new(1, 0, 1, 1)).map_err(e)?);
    let gens = vec![
        SkewPoly::t(s.clone()),
        SkewPoly::term(s.clone(), Poly::x(Mode::Laurent), 1).map_err(e)?,
        SkewPoly::term(s, Poly::y(Mode::Laurent), 1).map_err(e)?,
    ];
    let series = filtration_dims(&gens, 30).map_err(e)?;
    let graded = series
        .top_degree
        .clone()
        .ok_or("generators not homogeneous")?;
    for (n, &d) in graded.iter().enumerate() {
        let want = heisenberg_graded_count(n);
        ensure(d == want, || format!("n = {n}: {d} vs lattice {want}"))?;
    }
    let est = gk_estimate(&series).map_err(e)?;
    ensure(matches!(est.class, GrowthClass::Polynomial { .. }), || {
        format!("class {:?}", est.class)
    })
}

fn property_suites() -> Check {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..200 {
        let s = Arc::new(if case % 2 == 0 {
            random_monomial_autom(&mut r, 2)
        } else {
            random_poly_autom(&mut r)
        });
        let (u, v, w) = (
            random_skew(&mut r, &s, 2),
            random_skew(&mut r, &s, 2),
            random_skew(&mut r, &s, 2),
        );
        let l = skew_mul(&skew_mul(&u, &v).map_err(e)?, &w).map_err(e)?;
        let rr = skew_mul(&u, &skew_mul(&v, &w).map_err(e)?).map_err(e)?;
        ensure(l == rr, || format!("associativity case {case}"))?;
    }
    for case in 0..200 {
        let s = Arc::new(random_monomial_autom(&mut r, 2));
        let tau = random_monomial_autom(&mut r, 2);
        let a = random_unit(&mut r);
        let (u, v) = (random_skew(&mut r, &s, 2), random_skew(&mut r, &s, 2));
        let uv = skew_mul(&u, &v).map_err(e)?;
        let phi = skew_mul(
            &conjugate_map(&u, &tau).map_err(e)?,
            &conjugate_map(&v, &tau).map_err(e)?,
        )
        .map_err(e)?;
        ensure(conjugate_map(&uv, &tau).map_err(e)? == phi, || {
            format!("Φ case {case}")
        })?;
        let psi = skew_mul(
            &gauge_map(&u, &a).map_err(e)?,
            &gauge_map(&v, &a).map_err(e)?,
        )
        .map_err(e)?;
        ensure(gauge_map(&uv, &a).map_err(e)? == psi, || {
            format!("Ψ case {case}")
        })?;
    }
    for case in 0..50 {
        let s = Arc::new(if case % 2 == 0 {
            random_monomial_autom(&mut r, 2)
        } else {
            random_poly_autom(&mut r)
        });
        let a = random_poly(&mut r, s.mode(), 2, 1);
        let b = random_poly(&mut r, s.mode(), 2, 1);
        let Ok(dims) = component_dimensions(&s, &a, &b, 4) else {
            continue;
        };
        for n in 1..=4 {
            let rel = find_relation(&s, &a, &b, n).map_err(e)?;
            let coherent = match &rel {
                Some(rel) => verify_relation(rel) && dims[n - 1] < 1 << n,
                None => dims[n - 1] == 1 << n,
            };
            ensure(coherent, || format!("coherence case {case}, n = {n}"))?;
        }
    }
    let (x, y) = laurent_xy();
    for case in 0..50 {
        let m = random_unimodular(&mut r, 3);
        let fast = exp_set_dimensions(m, 6).map_err(e)?;
        let rank = rank_dimensions(&monomial_autom(m).map_err(e)?, &x, &y, 6).map_err(e)?;
        ensure(fast == rank, || {
            format!("fast path case {case}, {m}: {fast:?} vs {rank:?}")
        })?;
    }
    let v = eigen_data(IntMat2::new(1, 1, 1, 2)).map_err(e)?;
    for case in 0..200 {
        let f = random_poly(&mut r, Mode::Laurent, 4, 3);
        let g = random_poly(&mut r, Mode::Laurent, 4, 3);
        let (vf, vg) = (v.value(&f).ok_or("ν(0)")?, v.value(&g).ok_or("ν(0)")?);
        let vfg = v.value(&f.try_mul(&g).map_err(e)?).ok_or("ν(fg)")?;
        ensure(vfg == &vf + &vg, || format!("ν(fg) case {case}"))?;
        if let Some(vs) = v.value(&f.try_add(&g).map_err(e)?) {
            let min = if vf.try_cmp(&vg).map_err(e)?.is_le() {
                vf
            } else {
                vg
            };
            ensure(vs.try_cmp(&min).map_err(e)?.is_ge(), || {
                format!("ν(f+g) case {case}")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Rogalski matrix (1,1;1,2) free, beta = (3+sqrt5)/2",
            rogalski,
            30,
        ),
        ("Bergman matrix (0,1;1,1) relation, t^2 free", bergman, 30),
        ("catalog relations vanish and refute freeness", catalog, 60),
        ("spectral trichotomy over [-3,3]", trichotomy, 60),
        ("Henon degree doubling and rank dims", henon, 120),
        (
            "Henon k{sigma(x)t, sigma^2(x)t} rank dims",
            henon_shifted,
            120,
        ),
        (
            "elementary growth vs lattice oracle, cubic slope",
            elementary,
            60,
        ),
        ("parity obstruction for (3,2;4,3)", parity, 30),
        ("Heisenberg graded dims vs lattice oracle", heisenberg, 60),
        ("property suites", property_suites, 180),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed < Duration::from_secs(limit), || {
                format!("took {elapsed:.2?}, limit {limit} s")
            })
        });
        match result {
            Ok(()) => println!("[PASS] {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
