//! Growth of k[x,y][t;σ] for the elementary automorphism x ↦ x + y², y ↦ y.
//!
//! With W = span{1, x, y, y², t} the filtration dimensions agree with the number of
//! lattice points (a, b, c) satisfying a + c + ⌈b/2⌉ ≤ n, which grows cubically.

use std::sync::Arc;
use std::time::Instant;

use skewfree::autom::elementary_autom;
use skewfree::exactnum::rat_int;
use skewfree::growth::{filtration_dims, gk_estimate};
use skewfree::ring::{parse_poly, Mode, Poly};
use skewfree::skew::SkewPoly;

fn lattice_points(n: usize) -> usize {
    let mut count = 0;
    for b in 0..=2 * n {
        let half = b.div_ceil(2);
        if half <= n {
            count += (n - half + 1) * (n - half + 2) / 2;
        }
    }
    count
}

fn main() -> skewfree::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(40);
    let y2 = parse_poly("y^2", Mode::Poly)?;
    let sigma = Arc::new(elementary_autom(
        rat_int(1),
        rat_int(1),
        rat_int(0),
        y2.clone(),
    )?);
    println!("σ: {sigma}");
    let gens = vec![
        SkewPoly::term(sigma.clone(), Poly::x(Mode::Poly), 0)?,
        SkewPoly::term(sigma.clone(), Poly::y(Mode::Poly), 0)?,
        SkewPoly::term(sigma.clone(), y2, 0)?,
        SkewPoly::t(sigma),
    ];
    let start = Instant::now();
    let series = filtration_dims(&gens, n_max)?;
    println!("{}  ({:.2?})", series.basis_spec, start.elapsed());
    for (n, d) in series.dims.iter().enumerate() {
        println!(
            "n = {n:>2}  dim W^n = {d:>6}  lattice count = {:>6}",
            lattice_points(n)
        );
    }
    let est = gk_estimate(&series)?;
    println!("estimate: {:?}, raw slope {:.3}", est.class, est.raw_slope);
    Ok(())
}
