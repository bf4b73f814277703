//! Growth of subalgebras of the skew ring: `dim Wⁿ` for `W = span(1, gens)` and a
//! window-fit estimate of the growth type.
//!
//! `Wⁿ = Wⁿ⁻¹ + Fₙ·G` where `Fₙ` spans a complement of `Wⁿ⁻¹` in `Wⁿ`, so each level
//! only multiplies the newly found basis vectors by the generators. Vectors are
//! kept in a semi-echelon form over ℚ keyed by `(t-degree, monomial)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::autom::Automorphism;
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::ring::{ExpVec, Poly};
use crate::skew::SkewPoly;

type Key = (i64, ExpVec);
type Vector = BTreeMap<Key, Rat>;

/// `dims[n] = dim Wⁿ` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSeries {
    pub dims: Vec<usize>,
    /// `dim (Wⁿ) ∩ (t-degree n)` when every generator is homogeneous.
    pub top_degree: Option<Vec<usize>>,
    pub basis_spec: String,
}

impl GrowthSeries {
    /// The series of top-degree components, e.g. the graded dimensions of `k{xt, yt}`.
    pub fn graded(&self) -> Option<GrowthSeries> {
        self.top_degree.as_ref().map(|d| GrowthSeries {
            dims: d.clone(),
            top_degree: None,
            basis_spec: format!("top-degree components of {}", self.basis_spec),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis_spec": self.basis_spec,
            "dims": self.dims,
            "top_degree": self.top_degree,
        })
    }
}

#[derive(Default)]
struct Echelon {
    pivots: HashMap<Key, Vector>,
}

impl Echelon {
    /// Reduces `v`; if it is new, stores it (made monic) and returns it.
    fn insert(&mut self, mut v: Vector) -> Option<Vector> {
        loop {
            let (lead, c) = match v.iter().next_back() {
                None => return None,
                Some((k, c)) => (*k, c.clone()),
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = c.recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(lead, v.clone());
                    return Some(v);
                }
                Some(p) => {
                    for (k, pc) in p {
                        let e = v.entry(*k).or_insert_with(Rat::zero);
                        *e -= &c * pc;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
            }
        }
    }

    fn count_degree(&self, d: i64) -> usize {
        self.pivots.keys().filter(|k| k.0 == d).count()
    }
}

struct Multiplier<'s> {
    sigma: &'s Automorphism,
    gens: Vec<Vec<(i64, Poly)>>,
    cache: HashMap<(usize, usize, i64), Poly>,
}

impl Multiplier<'_> {
    /// `σᶜ` of the `k`-th term of generator `g`.
    fn twisted(&mut self, g: usize, k: usize, c: i64) -> Result<&Poly> {
        if !self.cache.contains_key(&(g, k, c)) {
            let base = if c == 0 {
                self.gens[g][k].1.clone()
            } else if c > 0 {
                let prev = self.twisted(g, k, c - 1)?.clone();
                self.sigma.apply(&prev)?
            } else {
                let prev = self.twisted(g, k, c + 1)?.clone();
                self.sigma.apply_inverse(&prev)?
            };
            self.cache.insert((g, k, c), base);
        }
        Ok(&self.cache[&(g, k, c)])
    }

    /// `v · gens[g]`.
    fn mul(&mut self, v: &Vector, g: usize) -> Result<Vector> {
        let mut out = Vector::new();
        for ((c, e), r) in v {
            for k in 0..self.gens[g].len() {
                let d = self.gens[g][k].0;
                let tw = self.twisted(g, k, *c)?;
                for (f, q) in tw.terms() {
                    let key = (c + d, *e + *f);
                    let slot = out.entry(key).or_insert_with(Rat::zero);
                    *slot += r * q;
                    if slot.is_zero() {
                        out.remove(&key);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Exact `dim Wⁿ`, `n = 0..=N`, for `W = span(1, gens)`.
pub fn filtration_dims(gens: &[SkewPoly], n_max: usize) -> Result<GrowthSeries> {
    filtration_dims_capped(gens, n_max, 1 << 20)
}

/// As [`filtration_dims`], refusing once the basis exceeds `max_basis` vectors.
pub fn filtration_dims_capped(
    gens: &[SkewPoly],
    n_max: usize,
    max_basis: usize,
) -> Result<GrowthSeries> {
    let sigma: Arc<Automorphism> = match gens.first() {
        Some(g) => g.sigma().clone(),
        None => return Err(Error::Invalid("need at least one generator".into())),
    };
    if gens.iter().any(|g| **g.sigma() != *sigma) {
        return Err(Error::SigmaMismatch(
            "generators live over different automorphisms".into(),
        ));
    }
    let homogeneous = gens.iter().all(|g| g.homogeneous_degree().is_some());
    let mut mult = Multiplier {
        sigma: &sigma,
        gens: gens
            .iter()
            .map(|g| g.terms().map(|(d, f)| (d, f.clone())).collect())
            .collect(),
        cache: HashMap::new(),
    };
    let mut ech = Echelon::default();
    let one: Vector = BTreeMap::from([((0, ExpVec::new(0, 0)), Rat::one())]);
    let mut frontier = vec![ech.insert(one).expect("1 is nonzero")];
    let mut dims = vec![1usize];
    let mut top = vec![1usize];
    for n in 1..=n_max {
        let mut next = Vec::new();
        for v in &frontier {
            for g in 0..gens.len() {
                let p = mult.mul(v, g)?;
                if let Some(r) = ech.insert(p) {
                    next.push(r);
                }
            }
            if ech.pivots.len() > max_basis {
                return Err(Error::ResourceCap(format!(
                    "basis of W^{n} exceeds {max_basis} vectors"
                )));
            }
        }
        dims.push(ech.pivots.len());
        top.push(ech.count_degree(n as i64));
        frontier = next;
    }
    let spec = std::iter::once("1".to_string())
        .chain(gens.iter().map(|g| g.to_string()))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(GrowthSeries {
        dims,
        top_degree: homogeneous.then_some(top),
        basis_spec: format!("W = span{{{spec}}} over {sigma}"),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum GrowthClass {
    Polynomial { degree: i64 },
    Exponential { rate: f64 },
}

/// Window-fit estimate of the growth type. A heuristic on finitely many terms, not a theorem.
#[derive(Clone, Debug, PartialEq)]
pub struct GkEstimate {
    pub class: GrowthClass,
    /// Least-squares slope of `ln dims[n]` against `ln n` over the window.
    pub raw_slope: f64,
    /// `exp` of the slope of `ln dims[n]` against `n` over the window.
    pub rate: f64,
    pub window: (usize, usize),
}

impl GkEstimate {
    pub fn to_json(&self) -> Value {
        let (class, degree, rate) = match self.class {
            GrowthClass::Polynomial { degree } => ("POLYNOMIAL", Some(degree), None),
            GrowthClass::Exponential { rate } => ("EXPONENTIAL", None, Some(rate)),
        };
        json!({
            "class": class,
            "degree": degree,
            "exponential_rate": rate,
            "raw_slope": self.raw_slope,
            "fitted_rate": self.rate,
            "window": [self.window.0, self.window.1],
            "note": "desk-scale window fit, not a proof",
        })
    }
}

/// Least-squares line through `(x, y)`; returns slope and residual sum of squares.
fn fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let rss = points
        .iter()
        .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
        .sum();
    (slope, rss)
}

pub const MIN_SERIES_LEN: usize = 8;
const EXP_THRESHOLD: f64 = 1.2;

/// Classifies the series over the window `n ∈ [⌈N/2⌉, N]`.
///
/// EXPONENTIAL needs a fitted rate `r ≥ 1.2`, `dims[n] ≥ 1.2ⁿ` on the top quartile of the
/// window, and a better log-linear than log-log fit. Otherwise POLYNOMIAL with the log-log
/// slope rounded.
pub fn gk_estimate(s: &GrowthSeries) -> Result<GkEstimate> {
    if s.dims.len() < MIN_SERIES_LEN {
        return Err(Error::Invalid(format!(
            "series has {} terms, need at least {MIN_SERIES_LEN}",
            s.dims.len()
        )));
    }
    let n_max = s.dims.len() - 1;
    let lo = n_max.div_ceil(2).max(1);
    let window: Vec<usize> = (lo..=n_max).filter(|&n| s.dims[n] > 0).collect();
    if window.len() < 2 {
        return Err(Error::Invalid(
            "series is zero on the fitting window".into(),
        ));
    }
    let ln = |n: usize| (s.dims[n] as f64).ln();
    let (slope, rss_poly) = fit(&window
        .iter()
        .map(|&n| ((n as f64).ln(), ln(n)))
        .collect::<Vec<_>>());
    let (lin, rss_exp) = fit(&window
        .iter()
        .map(|&n| (n as f64, ln(n)))
        .collect::<Vec<_>>());
    let rate = lin.exp();
    let quartile = &window[window.len() * 3 / 4..];
    let above = quartile
        .iter()
        .all(|&n| ln(n) >= n as f64 * EXP_THRESHOLD.ln());
    let class = if rate >= EXP_THRESHOLD && above && rss_exp < rss_poly {
        GrowthClass::Exponential { rate }
    } else {
        GrowthClass::Polynomial {
            degree: slope.round() as i64,
        }
    };
    Ok(GkEstimate {
        class,
        raw_slope: slope,
        rate,
        window: (lo, n_max),
    })
}
