//! The matrices (1,1;1,2) and (0,1;1,1) side by side.
//!
//! The first has ρ = (3+√5)/2 and k{xt, yt} is free. The second has ρ = (1+√5)/2:
//! (xt)²(yt) = (yt)²(xt) holds, yet k{xt², yt²} is free.

use std::sync::Arc;

use skewfree::autom::{monomial_autom, IntMat2};
use skewfree::freeness::{check_free, find_relation};
use skewfree::monomial::{
    catalog_relations, exp_set_dimensions, valuation_certificate, ValuationCertificate,
};
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
    let (x, y) = (Poly::x(Mode::Laurent), Poly::y(Mode::Laurent));

    let m = IntMat2::new(1, 1, 1, 2);
    println!("{m}: sumset dims {:?}", exp_set_dimensions(m, 12)?);
    println!("{m}: {}", describe(valuation_certificate(m, 1)));
    let report = check_free(&Arc::new(monomial_autom(m)?), &x, &y, 1, 8)?;
    println!(
        "{m}: {} via {:?}",
        report.verdict.name(),
        report.certificate.map(|c| c.name())
    );

    let m = IntMat2::new(0, 1, 1, 1);
    let sigma = Arc::new(monomial_autom(m)?);
    println!("{m}: sumset dims {:?}", exp_set_dimensions(m, 8)?);
    for c in catalog_relations(m)? {
        println!(
            "{m}: {} = 0 [{}], verified {}",
            c.relation, c.clause, c.verified
        );
    }
    if let Some(rel) = find_relation(&sigma, &x, &y, 3)? {
        println!("{m}: first relation in degree 3 from the rank engine: {rel} = 0");
    }
    println!("{m}^2: {}", describe(valuation_certificate(m, 2)));
    let report = check_free(&sigma, &x, &y, 2, 8)?;
    println!(
        "k{{xt^2, yt^2}}: dims {:?}, {}",
        report.dims,
        report.verdict.name()
    );
    Ok(())
}
