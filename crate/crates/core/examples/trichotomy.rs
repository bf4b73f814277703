//! Classifies every monomial automorphism with entries in [-r, r] and tallies the branches.
//!
//! Usage: `cargo run --example trichotomy -- [r]`

use std::collections::BTreeMap;

use skewfree::autom::IntMat2;
use skewfree::monomial::classify;

fn main() -> skewfree::Result<()> {
    let r: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    let m = IntMat2::new(a, b, c, d);
                    if !m.is_unimodular() {
                        continue;
                    }
                    let rep = classify(m)?;
                    *tally.entry(rep.branch.name()).or_default() += 1;
                    if rep.catalog_relations.is_empty() {
                        continue;
                    }
                    let rels: Vec<String> = rep
                        .catalog_relations
                        .iter()
                        .map(|c| format!("{} [{}]", c.relation, c.clause))
                        .collect();
                    println!(
                        "{:>14}  {:<12}  {}",
                        m.to_string(),
                        rep.branch.name(),
                        rels.join("; ")
                    );
                }
            }
        }
    }
    println!("{tally:?}");
    for m in [
        IntMat2::new(1, 1, 1, 2),
        IntMat2::new(0, 1, 1, 1),
        IntMat2::new(2, 1, 1, 1),
    ] {
        let rep = classify(m)?;
        println!(
            "{m}: rho = {} ≈ {:.4}, {}, least free power {:?}",
            rep.rho,
            rep.rho.approx(),
            rep.branch.name(),
            rep.free_generators_hint
        );
    }
    Ok(())
}
