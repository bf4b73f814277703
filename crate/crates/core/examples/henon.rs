//! The Hénon automorphism σ(x) = 1 + y − ax², σ(y) = bx with a = b = 1.
//!
//! Weighted degrees (w_x = 2, w_y = 1) double under σ, which certifies k{yt, σ(y)t}
//! free and, by conjugation, k{xt, yt}. The rank computation confirms dim Vₙ = 2ⁿ.

use std::sync::Arc;
use std::time::Instant;

use skewfree::autom::henon_paper;
use skewfree::exactnum::rat_int;
use skewfree::freeness::{check_free, degree_doubling_certificate};
use skewfree::ring::{weighted_degree, Mode, Poly, WeightedDegree};

fn main() -> skewfree::Result<()> {
    let depth: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let sigma = Arc::new(henon_paper(rat_int(1), rat_int(1))?);
    let w = WeightedDegree::new(2, 1)?;
    println!("σ: {sigma}");

    let start = Instant::now();
    let mut f = Poly::x(Mode::Poly);
    for n in 0..=8 {
        println!(
            "deg_w σ^{n}(x) = {:>4}  ({} terms)",
            weighted_degree(&f, w)?,
            f.len()
        );
        f = sigma.apply(&f)?;
    }
    println!("iterates: {:.2?}", start.elapsed());

    let y = Poly::y(Mode::Poly);
    let cert = degree_doubling_certificate(&sigma, &y, w, 8)?;
    println!("degree doubling for g = y: {cert:?}");

    let start = Instant::now();
    let report = check_free(&sigma, &Poly::x(Mode::Poly), &y, 1, depth)?;
    println!(
        "k{{xt, yt}}: dims {:?}  {}  ({:.2?})",
        report.dims,
        report.verdict.name(),
        start.elapsed()
    );

    let s1 = sigma.apply(&Poly::x(Mode::Poly))?;
    let s2 = sigma.apply(&s1)?;
    let start = Instant::now();
    let report = check_free(&sigma, &s1, &s2, 1, 4)?;
    println!(
        "k{{σ(x)t, σ²(x)t}}: dims {:?}  {}  certificate {:?}  ({:.2?})",
        report.dims,
        report.verdict.name(),
        report.certificate.as_ref().map(|c| c.name()),
        start.elapsed()
    );
    Ok(())
}
