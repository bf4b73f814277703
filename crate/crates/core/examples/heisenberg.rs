//! The Heisenberg-type skew Laurent ring: σ(x) = x, σ(y) = xy, generated by t, xt, yt.
//!
//! The degree-n component is spanned by monomials x^a y^b tⁿ with 0 ≤ b ≤ n and a
//! ranging over an interval of length (b+1)(n−b), so growth is polynomial.

use std::sync::Arc;
use std::time::Instant;

use skewfree::autom::{monomial_autom, IntMat2};
use skewfree::growth::{filtration_dims, gk_estimate};
use skewfree::ring::{Mode, Poly};
use skewfree::skew::SkewPoly;

fn lattice_count(n: usize) -> usize {
    (0..=n).map(|b| (b + 1) * (n - b) + 1).sum()
}

fn main() -> skewfree::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    let sigma = Arc::new(monomial_autom(IntMat2::new(1, 0, 1, 1))?);
    println!("σ: {sigma}");
    let gens = vec![
        SkewPoly::t(sigma.clone()),
        SkewPoly::term(sigma.clone(), Poly::x(Mode::Laurent), 1)?,
        SkewPoly::term(sigma, Poly::y(Mode::Laurent), 1)?,
    ];
    let start = Instant::now();
    let series = filtration_dims(&gens, n_max)?;
    println!("{}  ({:.2?})", series.basis_spec, start.elapsed());
    let graded = series
        .top_degree
        .clone()
        .expect("generators are homogeneous");
    for n in 0..=n_max {
        println!(
            "n = {n:>2}  dim A_n = {:>5}  lattice = {:>5}  dim W^n = {:>6}",
            graded[n],
            lattice_count(n),
            series.dims[n]
        );
    }
    let est = gk_estimate(&series)?;
    println!(
        "estimate for W^n: {:?}, raw slope {:.3}",
        est.class, est.raw_slope
    );
    Ok(())
}
