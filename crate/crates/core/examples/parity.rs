//! A free subalgebra that is not big: for M = (3,2;4,3) every monomial of Vₙ has total
//! degree ≡ n (mod 2), while the valuation certificate still applies.

use std::sync::Arc;

use skewfree::autom::{monomial_autom, IntMat2};
use skewfree::freeness::check_free;
use skewfree::monomial::{parity_obstruction, valuation_certificate, ValuationCertificate};
use skewfree::ring::{Mode, Poly};

fn describe(c: ValuationCertificate) -> String {
    match c {
        ValuationCertificate::Certified { power, beta, alpha } => {
            format!("valuation certificate for t^{power}: beta = {beta}, alpha = {alpha}")
        }
        ValuationCertificate::NotApplicable(why) => format!("no valuation certificate: {why}"),
    }
}

fn main() -> skewfree::Result<()> {
    let m = IntMat2::new(3, 2, 4, 3);
    let sigma = Arc::new(monomial_autom(m)?);
    println!(
        "{m}: {:?}, {}",
        parity_obstruction(m),
        describe(valuation_certificate(m, 1))
    );

    let (x, y) = (Poly::x(Mode::Laurent), Poly::y(Mode::Laurent));
    let mut orbit = [x.clone(), y.clone()];
    let mut degrees = vec![0i64];
    for n in 1..=8 {
        let steps: Vec<i64> = orbit
            .iter()
            .map(|g| g.as_monomial().map(|(e, _)| e.i + e.j).unwrap_or(0))
            .collect();
        degrees = degrees
            .iter()
            .flat_map(|d| steps.iter().map(move |s| d + s))
            .collect();
        let parities: std::collections::BTreeSet<i64> =
            degrees.iter().map(|d| d.rem_euclid(2)).collect();
        println!("n = {n}: total degrees mod 2 in V_n: {parities:?}");
        orbit = [sigma.apply(&orbit[0])?, sigma.apply(&orbit[1])?];
    }
    let report = check_free(&sigma, &x, &y, 1, 10)?;
    println!(
        "{}: {}",
        report.verdict.name(),
        serde_json::to_string(&report.to_json()).unwrap_or_default()
    );
    Ok(())
}
