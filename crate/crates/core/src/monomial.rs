//! Exact analysis of monomial automorphisms `σ_M` of the torus `k[x^±1, y^±1]`.
//!
//! Everything spectral is decided in ℚ(√D), `D = Tr² − 4·det`. The branch of `M`
//! (finite order, parabolic, golden, large) follows from `ρ(M)` alone, and in the
//! large case an eigenvector `(1, α)` of `β` gives a valuation with
//! `ν(σ(m)) = β·ν(m)` on monomials.

use std::collections::HashSet;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::autom::{monomial_autom, IntMat2};
use crate::error::{Error, Result};
use crate::exactnum::{quad_abs_geq, quad_sign, rat, rat_int, squarefree_part, QuadExt};
use crate::freeness::{verify_relation, Relation};
use crate::ring::{ExpVec, Mode, Poly};
use crate::skew::Alphabet;

/// Largest `k` tried when looking for `M^k = I`; torsion orders in GL(2,ℤ) divide 12.
pub const ORDER_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `ρ = 1` and `M^k = I`.
    FiniteOrder,
    /// `ρ = 1` but `M` has infinite order (unipotent up to sign, `M ≠ ±I`).
    Parabolic,
    /// `ρ = (1+√5)/2`.
    Golden,
    /// `ρ > 2`.
    Large,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::FiniteOrder => "FINITE_ORDER",
            Branch::Parabolic => "PARABOLIC",
            Branch::Golden => "GOLDEN",
            Branch::Large => "LARGE",
        }
    }
}

/// The valuation `ν(x^i y^j) = i·w_x + j·w_y` with `w_x = 1`, `w_y = α`.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation {
    pub w_x: QuadExt,
    pub w_y: QuadExt,
    pub beta: QuadExt,
}

impl Valuation {
    pub fn value_exp(&self, e: ExpVec) -> QuadExt {
        let i = QuadExt::from_int(e.i);
        let j = QuadExt::from_int(e.j);
        &(&i * &self.w_x) + &(&j * &self.w_y)
    }

    /// `min` of [`Self::value_exp`] over the support; `None` for the zero polynomial.
    pub fn value(&self, f: &Poly) -> Option<QuadExt> {
        f.support()
            .map(|e| self.value_exp(e))
            .min_by(|p, q| p.try_cmp(q).expect("one field"))
    }
}

/// `ρ(M)`, exact.
pub fn spectral_radius(m: IntMat2) -> Result<QuadExt> {
    let det = m.det();
    if det.abs() != 1 {
        return Err(Error::NotAutomorphism(format!("det({m}) = {det}")));
    }
    let tr = m.trace();
    let disc = tr * tr - 4 * det;
    if disc <= 0 {
        // Complex or repeated eigenvalues; |λ|² = det forces ρ = 1.
        return Ok(QuadExt::from_int(1));
    }
    let root = QuadExt::sqrt_of(disc as u64);
    Ok(&(&QuadExt::from_int(tr.abs()) + &root) * &QuadExt::from_rat(rat(1, 2)))
}

/// `(1+√5)/2`.
pub fn golden_ratio() -> QuadExt {
    QuadExt::new(rat(1, 2), rat(1, 2), 5).expect("5 is squarefree")
}

/// β of maximal modulus and the eigenvector `(1, α)` with `a + bα = β`.
pub fn eigen_data(m: IntMat2) -> Result<Valuation> {
    let det = m.det();
    if det.abs() != 1 {
        return Err(Error::NotAutomorphism(format!("det({m}) = {det}")));
    }
    let tr = m.trace();
    let disc = tr * tr - 4 * det;
    if disc <= 0 {
        return Err(Error::Invalid(format!(
            "{m} has no real eigenvalue of modulus > 1"
        )));
    }
    if squarefree_part(disc as u64).1 == 1 {
        return Err(Error::Invalid(format!("{m} has eigenvalues ±1")));
    }
    if m.b == 0 {
        return Err(Error::Invalid(format!(
            "{m} has b = 0, so (1, α) is not an eigenvector"
        )));
    }
    let root = QuadExt::sqrt_of(disc as u64);
    let half = QuadExt::from_rat(rat(1, 2));
    let t = QuadExt::from_int(tr);
    let beta = if tr >= 0 {
        &(&t + &root) * &half
    } else {
        &(&t - &root) * &half
    };
    let alpha = (&beta - &QuadExt::from_int(m.a)).try_div(&QuadExt::from_int(m.b))?;
    Ok(Valuation {
        w_x: QuadExt::from_int(1),
        w_y: alpha,
        beta,
    })
}

/// `|β| ≥ 2` and `α ≠ 1`: the valuation separates `x` from `y` and scales by at least 2.
pub fn beta_is_large(v: &Valuation) -> bool {
    quad_abs_geq(&v.beta, &rat_int(2)) && v.w_y != QuadExt::from_int(1)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ValuationCertificate {
    Certified {
        power: u32,
        beta: QuadExt,
        alpha: QuadExt,
    },
    NotApplicable(String),
}

impl ValuationCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, ValuationCertificate::Certified { .. })
    }
}

/// Certifies `k{x tᵖ, y tᵖ}` free in every degree when `M^p` has an eigenvalue `|β| ≥ 2`
/// with eigenvector `(1, α)`, `α ≠ 1`.
pub fn valuation_certificate(m: IntMat2, t_power: u32) -> ValuationCertificate {
    let na = ValuationCertificate::NotApplicable;
    if t_power == 0 {
        return na("t_power must be positive".into());
    }
    let Some(mp) = m.checked_pow(t_power) else {
        return na(format!("{m}^{t_power} overflows"));
    };
    let v = match eigen_data(mp) {
        Ok(v) => v,
        Err(e) => return na(e.to_string()),
    };
    if !quad_abs_geq(&v.beta, &rat_int(2)) {
        return na(format!("|β| = {} < 2", v.beta.abs()));
    }
    if v.w_y == QuadExt::from_int(1) {
        return na("ν(x) = ν(y)".into());
    }
    ValuationCertificate::Certified {
        power: t_power,
        beta: v.beta,
        alpha: v.w_y,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Obstructed,
    NotObstructed,
}

/// `a+b ≡ c+d (mod 2)`: every element of `Vₙ` then has total degree of one parity, so
/// `k{xt, yt}` is not big.
pub fn parity_obstruction(m: IntMat2) -> Parity {
    if (m.a + m.b - m.c - m.d).rem_euclid(2) == 0 {
        Parity::Obstructed
    } else {
        Parity::NotObstructed
    }
}

fn mat_pow_i128(m: IntMat2, k: usize) -> Result<[[i128; 2]; 2]> {
    let base = [[m.a as i128, m.b as i128], [m.c as i128, m.d as i128]];
    let mut acc = [[1i128, 0], [0, 1]];
    for _ in 0..k {
        let mut next = [[0i128; 2]; 2];
        for (r, row) in next.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = acc[r][0]
                    .checked_mul(base[0][c])
                    .and_then(|u| {
                        acc[r][1]
                            .checked_mul(base[1][c])
                            .and_then(|v| u.checked_add(v))
                    })
                    .ok_or_else(|| Error::ResourceCap(format!("{m}^{k} overflows")))?;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `|Δ + ΔM + ⋯ + ΔM^(k−1)|` for `k = 1..=n`, `Δ = {(1,0), (0,1)}`.
pub fn exp_set_dimensions(m: IntMat2, n: usize) -> Result<Vec<usize>> {
    if m.det().abs() != 1 {
        return Err(Error::NotAutomorphism(format!("det({m}) = {}", m.det())));
    }
    if n == 0 || n > 20 {
        return Err(Error::ResourceCap(format!(
            "sumset depth {n} outside 1..=20"
        )));
    }
    let mut set: HashSet<(i128, i128)> = HashSet::from([(0, 0)]);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // Rows of M^k are e_x·M^k and e_y·M^k.
        let p = mat_pow_i128(m, k)?;
        let mut next = HashSet::with_capacity(set.len() * 2);
        for &(i, j) in &set {
            for row in &p {
                next.insert((i + row[0], j + row[1]));
            }
        }
        set = next;
        out.push(set.len());
    }
    Ok(out)
}

pub fn exp_set_dimension(m: IntMat2, n: usize) -> Result<usize> {
    exp_set_dimensions(m, n).map(|v| v[n - 1])
}

/// An identity known to hold for `k{xt, yt}`, labelled by the trace/det condition that gives it.
#[derive(Clone, Debug)]
pub struct CatalogRelation {
    pub clause: String,
    pub relation: Relation,
    pub verified: bool,
}

fn commuting_powers(k: u32) -> String {
    format!("(xt)^{k}(yt)^{k} - (yt)^{k}(xt)^{k}")
}

/// Relations that the trace and determinant of `M` force, each checked by expansion.
pub fn catalog_relations(m: IntMat2) -> Result<Vec<CatalogRelation>> {
    let sigma = Arc::new(monomial_autom(m)?);
    let alphabet = Alphabet::pair(sigma, Poly::x(Mode::Laurent), Poly::y(Mode::Laurent), 1)?;
    let (tr, det) = (m.trace(), m.det());
    let mut specs: Vec<(String, String)> = Vec::new();
    match (tr, det) {
        (0, _) => specs.push(("trace 0".into(), commuting_powers(4))),
        (1, -1) => specs.push(("trace 1, det -1".into(), "(xt)^2(yt) - (yt)^2(xt)".into())),
        (-1, -1) => specs.push(("trace -1, det -1".into(), "(xt)(yt)^2 - (yt)(xt)^2".into())),
        (2, 1) => specs.push((
            "trace 2, det 1".into(),
            "(xt)(yt)^2(xt) - (yt)(xt)^2(yt)".into(),
        )),
        (-2, 1) => specs.push((
            "trace -2, det 1".into(),
            "(xt)^2(yt)^2 - (yt)^2(xt)^2".into(),
        )),
        (1, 1) => {
            specs.push((
                "trace 1, det 1".into(),
                "(xt)(yt)(xt) - (yt)(xt)(yt)".into(),
            ));
            specs.push(("trace 1, det 1: M^6 = I".into(), commuting_powers(6)));
        }
        (-1, 1) => specs.push(("trace -1, det 1".into(), "(xt)^3 - (yt)^3".into())),
        _ => {}
    }
    if let Some(k) = m.order(ORDER_CAP) {
        if !specs.iter().any(|(_, r)| *r == commuting_powers(k)) {
            specs.push((format!("M^{k} = I"), commuting_powers(k)));
        }
    }
    let mut out = Vec::with_capacity(specs.len());
    for (clause, text) in specs {
        let relation = Relation::parse(alphabet.clone(), &text)?;
        let verified = verify_relation(&relation);
        out.push(CatalogRelation {
            clause,
            relation,
            verified,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub matrix: IntMat2,
    pub trace: i64,
    pub det: i64,
    pub rho: QuadExt,
    pub branch: Branch,
    pub order: Option<u32>,
    pub catalog_relations: Vec<CatalogRelation>,
    /// Least `p ≤ 12` with `ρ(M^p) ≥ 2`; `k{xtᵖ, ytᵖ}` is then free.
    pub free_generators_hint: Option<u32>,
    /// Least even `p` with `ρ(M^p) ≥ 2`, the form stated for the free-generator theorem.
    pub even_power_hint: Option<u32>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.matrix,
            "trace": self.trace,
            "det": self.det,
            "rho": self.rho,
            "rho_approx": self.rho.approx(),
            "branch": self.branch.name(),
            "order": self.order,
            "catalog_relations": self.catalog_relations.iter().map(|c| json!({
                "clause": c.clause,
                "relation": c.relation.to_string(),
                "verified": c.verified,
            })).collect::<Vec<_>>(),
            "free_generators_hint": self.free_generators_hint,
            "even_power_hint": self.even_power_hint,
        })
    }
}

/// Spectral branch, order, catalog relations and power hints for `M`.
pub fn classify(m: IntMat2) -> Result<ClassificationReport> {
    let rho = spectral_radius(m)?;
    let one = QuadExt::from_int(1);
    let order = m.order(ORDER_CAP);
    let branch = if rho == one {
        if order.is_some() {
            Branch::FiniteOrder
        } else {
            Branch::Parabolic
        }
    } else if rho == golden_ratio() {
        Branch::Golden
    } else if quad_sign(&(&rho - &QuadExt::from_int(2))) > 0 {
        Branch::Large
    } else {
        return Err(Error::Invalid(format!(
            "ρ({m}) = {rho} lies outside the spectral trichotomy"
        )));
    };
    let hint = |step: u32| -> Option<u32> {
        if rho == one {
            return None;
        }
        (1..=ORDER_CAP)
            .filter(|p| p % step == 0)
            .find(|&p| quad_abs_geq(&rho.pow(p), &rat_int(2)))
    };
    Ok(ClassificationReport {
        matrix: m,
        trace: m.trace(),
        det: m.det(),
        free_generators_hint: hint(1),
        even_power_hint: hint(2),
        rho,
        branch,
        order,
        catalog_relations: catalog_relations(m)?,
    })
}
