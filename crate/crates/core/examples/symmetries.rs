//! Conjugation by τ and the gauge map by a unit a, checked on random-looking elements.
//!
//! Φ carries k{xt, yt} over σ to k{τ(x)s, τ(y)s} over τστ⁻¹; Ψ turns k{at, bt} into
//! k{t, a⁻¹bt} up to the unit a.

use std::sync::Arc;

use skewfree::autom::{compose, monomial_autom, IntMat2};
use skewfree::freeness::rank_dimensions;
use skewfree::ring::{parse_poly, Mode, Poly};
use skewfree::skew::{conjugate_map, gauge_map, skew_mul, SkewPoly};

fn main() -> skewfree::Result<()> {
    let sigma = Arc::new(monomial_autom(IntMat2::new(2, 1, 1, 1))?);
    let tau = monomial_autom(IntMat2::new(1, 1, 0, 1))?;
    let u = SkewPoly::from_terms(
        sigma.clone(),
        [
            (1, parse_poly("x + 2*y^-1", Mode::Laurent)?),
            (0, parse_poly("x*y", Mode::Laurent)?),
        ],
    )?;
    let v = SkewPoly::from_terms(
        sigma.clone(),
        [(2, parse_poly("3 - x^-1*y", Mode::Laurent)?)],
    )?;
    let uv = skew_mul(&u, &v)?;
    println!("u = {u}\nv = {v}\nuv = {uv}");

    let phi = |w: &SkewPoly| conjugate_map(w, &tau);
    println!(
        "Φ(uv) = Φ(u)Φ(v): {}",
        phi(&uv)? == skew_mul(&phi(&u)?, &phi(&v)?)?
    );

    let a = parse_poly("-2*x^3*y^-1", Mode::Laurent)?;
    let psi = |w: &SkewPoly| gauge_map(w, &a);
    println!(
        "Ψ(uv) = Ψ(u)Ψ(v): {}",
        psi(&uv)? == skew_mul(&psi(&u)?, &psi(&v)?)?
    );
    println!(
        "Ψ_(1/a) Ψ_a (u) = u: {}",
        gauge_map(&psi(&u)?, &a.unit_inverse()?)? == u
    );

    let (x, y) = (Poly::x(Mode::Laurent), Poly::y(Mode::Laurent));
    let conj = Arc::new(compose(&tau, &compose(&sigma, &tau.inverse())?)?);
    println!(
        "dims over σ:       {:?}",
        rank_dimensions(&sigma, &x, &y, 6)?
    );
    println!(
        "dims over τστ⁻¹:   {:?}",
        rank_dimensions(&conj, &tau.apply(&x)?, &tau.apply(&y)?, 6)?
    );
    let b = a.try_mul(&y)?;
    println!(
        "dims of k{{at, bt}}: {:?}",
        rank_dimensions(&sigma, &a, &b, 6)?
    );
    println!(
        "dims of k{{t, yt}}:  {:?}",
        rank_dimensions(&sigma, &Poly::one(Mode::Laurent), &y, 6)?
    );
    Ok(())
}
