//! Freeness of `k{a tᵖ, b tᵖ}` decided degree by degree.
//!
//! The degree-`n` component is `Vₙ tⁿᵖ` with `Vₙ` spanned by the `2ⁿ` products
//! `x₀ σᵖ(x₁) ⋯ σ⁽ⁿ⁻¹⁾ᵖ(xₙ₋₁)`, `xᵢ ∈ {a, b}`, and the subalgebra is free iff
//! `dim Vₙ = 2ⁿ` for every `n`. Ranks are exact; a deficient degree yields a
//! kernel vector that is re-expanded in the skew ring before it is reported.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::autom::{power, Automorphism};
use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rat};
use crate::linalg::{eliminate, integer_row, normalize_primitive, SparseRow};
use crate::monomial;
use crate::ring::{weighted_degree, ExpVec, Mode, Poly, WeightedDegree};
use crate::skew::{expand_word, Alphabet, SkewPoly, Word};

/// Environment variable overriding [`Caps::max_entries`].
pub const MAX_ENTRIES_ENV: &str = "SKEWFREE_MAX_ENTRIES";

/// Bounds on the `2ⁿ` word expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub generic_depth: usize,
    pub monomial_depth: usize,
    pub max_entries: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            generic_depth: 12,
            monomial_depth: 20,
            max_entries: 1 << 20,
        }
    }
}

impl Caps {
    /// Defaults, with `max_entries` taken from `SKEWFREE_MAX_ENTRIES` when set.
    pub fn current() -> Self {
        let mut caps = Self::default();
        if let Some(n) = std::env::var(MAX_ENTRIES_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            caps.max_entries = n;
        }
        caps
    }
}

/// A linear relation `Σ c_w · w = 0` among words over an alphabet.
#[derive(Clone, Debug)]
pub struct Relation {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rat>,
}

impl Relation {
    /// Requires at least two nonzero terms, all of one t-degree.
    pub fn new(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<Word, Rat> = BTreeMap::new();
        for (w, c) in terms {
            if let Some(&k) = w.letters().iter().find(|&&k| k >= alphabet.letters().len()) {
                return Err(Error::Invalid(format!("letter index {k} outside alphabet")));
            }
            *map.entry(w).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.len() < 2 {
            return Err(Error::Invalid(
                "a relation needs at least two nonzero terms".into(),
            ));
        }
        let r = Self {
            alphabet,
            terms: map,
        };
        let degrees: HashSet<i64> = r.terms.keys().map(|w| r.word_degree(w)).collect();
        if degrees.len() != 1 {
            return Err(Error::Invalid(
                "relation mixes words of different t-degree".into(),
            ));
        }
        Ok(r)
    }

    /// Parses `(xt)^2(yt) - (yt)^2(xt)`, `2*(xt)(yt) - ...` or `lhs = rhs`. Letters not yet
    /// in `alphabet` are added to it.
    pub fn parse(mut alphabet: Alphabet, s: &str) -> Result<Self> {
        let (lhs, rhs) = match split_top_level(s, '=') {
            Some((l, r)) => (l, Some(r)),
            None => (s.to_string(), None),
        };
        let mut terms = parse_side(&mut alphabet, &lhs, 1)?;
        if let Some(r) = rhs {
            terms.extend(parse_side(&mut alphabet, &r, -1)?);
        }
        Self::new(alphabet, terms)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn t_degree(&self) -> i64 {
        self.word_degree(self.terms.keys().next().expect("nonempty"))
    }

    fn word_degree(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&k| self.alphabet.letter(k).t_power)
            .sum()
    }

    /// `Σ c_w · expand_word(w)`.
    pub fn evaluate(&self) -> Result<SkewPoly> {
        let mut acc = SkewPoly::zero(self.alphabet.sigma().clone());
        for (w, c) in &self.terms {
            acc = acc.try_add(&expand_word(&self.alphabet, w)?.scale(c))?;
        }
        Ok(acc)
    }
}

/// True iff the relation expands to exactly zero in the skew ring.
pub fn verify_relation(r: &Relation) -> bool {
    r.evaluate().is_ok_and(|u| u.is_zero())
}

fn split_top_level(s: &str, sep: char) -> Option<(String, String)> {
    let mut depth = 0i32;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                return Some((s[..k].to_string(), s[k + 1..].to_string()))
            }
            _ => {}
        }
    }
    None
}

fn parse_side(alphabet: &mut Alphabet, s: &str, sign: i64) -> Result<Vec<(Word, Rat)>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty side of relation".into()));
    }
    // Split on '+'/'-' at depth 0 that are not part of an exponent.
    let mut pieces: Vec<(i64, String)> = Vec::new();
    let mut cur = String::new();
    let mut cur_sign = 1i64;
    let mut depth = 0i32;
    for (k, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && (k == 0 || chars[k - 1] != '^') => {
                if !cur.is_empty() {
                    pieces.push((cur_sign, std::mem::take(&mut cur)));
                } else if k != 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                cur_sign = if c == '-' { -1 } else { 1 };
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in {s:?}")));
    }
    pieces.push((cur_sign, cur));
    let mut out = Vec::new();
    for (sg, piece) in pieces {
        let split = piece
            .find('(')
            .ok_or_else(|| Error::Parse(format!("term {piece:?} has no word")))?;
        let coeff_str = piece[..split].trim_end_matches('*');
        let coeff = if coeff_str.is_empty() {
            Rat::one()
        } else {
            parse_rat(coeff_str)?
        };
        let word = alphabet.parse_word(&piece[split..])?;
        out.push((word, coeff * BigInt::from(sg * sign)));
    }
    Ok(out)
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n.parse().map_err(|_| bad())?, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&self.alphabet.render(w))?;
        }
        Ok(())
    }
}

impl serde::Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which argument backs a freeness claim.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A valuation scaled by `beta` under σᵖ separates the two generators; valid in every degree.
    Valuation { beta: QuadExt, alpha: QuadExt },
    /// Weighted degrees of `σᵐᵖ(g)` at least double for every `m` below the horizon.
    DegreeDoubling {
        weights: WeightedDegree,
        horizon: usize,
        degrees: Vec<i64>,
    },
    /// Only the ranks up to the depth support the claim.
    RankOnly,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::Valuation { .. } => "VALUATION",
            Certificate::DegreeDoubling { .. } => "DEGREE_DOUBLING",
            Certificate::RankOnly => "RANK_ONLY",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    FreeUpToDepth,
    NotFree { degree: usize, witness: Relation },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::FreeUpToDepth => "FREE_UP_TO_DEPTH",
            Verdict::NotFree { .. } => "NOT_FREE",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub sigma: Arc<Automorphism>,
    pub generators: (Poly, Poly),
    pub t_power: usize,
    pub depth: usize,
    /// `dims[k]` is the dimension of the degree-`k+1` component.
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl FreenessReport {
    pub fn is_free_up_to_depth(&self) -> bool {
        matches!(self.verdict, Verdict::FreeUpToDepth)
    }

    pub fn witness(&self) -> Option<&Relation> {
        match &self.verdict {
            Verdict::NotFree { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Whether the claim holds in every degree rather than only up to `depth`.
    pub fn is_unbounded_claim(&self) -> bool {
        matches!(self.certificate, Some(Certificate::Valuation { .. }))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "sigma": self.sigma.to_string(),
            "generators": [self.generators.0.to_string(), self.generators.1.to_string()],
            "t_power": self.t_power,
            "depth": self.depth,
            "dims": self.dims,
            "expected": self.expected,
            "verdict": self.verdict.name(),
            "witness": Value::Null,
            "witness_degree": Value::Null,
            "certificate": self.certificate.as_ref().map(|c| c.name()),
        });
        match &self.verdict {
            Verdict::NotFree { degree, witness } => {
                v["witness"] = json!(witness.to_string());
                v["witness_degree"] = json!(degree);
            }
            Verdict::Inconclusive { reason } => v["reason"] = json!(reason),
            Verdict::FreeUpToDepth => {}
        }
        let scope = match &self.certificate {
            Some(Certificate::Valuation { beta, alpha }) => {
                v["certificate_data"] = json!({ "beta": beta, "alpha": alpha });
                "all degrees".to_string()
            }
            Some(Certificate::DegreeDoubling {
                weights,
                horizon,
                degrees,
            }) => {
                v["certificate_data"] = json!({
                    "weights": [weights.w_x, weights.w_y],
                    "horizon": horizon,
                    "degrees": degrees,
                });
                format!("bounded evidence: ranks to depth {}, degree doubling checked to horizon {horizon}", self.depth)
            }
            _ => format!("bounded evidence: ranks to depth {}", self.depth),
        };
        if self.is_free_up_to_depth() {
            v["scope"] = json!(scope);
        }
        v
    }
}

/// Incrementally builds `Vₙ` for `n = 1, 2, …` from the orbits of `a` and `b` under `σᵖ`.
struct WordProducts<'s> {
    sigma: &'s Automorphism,
    step: i64,
    orbit: [Poly; 2],
    /// Products for the current level, indexed like [`Word::from_bits`].
    rows: Vec<Poly>,
    level: usize,
}

impl<'s> WordProducts<'s> {
    fn new(sigma: &'s Automorphism, a: &Poly, b: &Poly, step: i64) -> Result<Self> {
        for g in [a, b] {
            if g.mode() != sigma.mode() {
                return Err(Error::ModeMismatch(format!(
                    "generator {g} not in the ring of σ"
                )));
            }
        }
        Ok(Self {
            sigma,
            step,
            orbit: [a.clone(), b.clone()],
            rows: vec![Poly::one(sigma.mode())],
            level: 0,
        })
    }

    fn advance(&mut self, max_entries: usize) -> Result<()> {
        if self.level > 0 {
            for g in self.orbit.iter_mut() {
                *g = self.sigma.apply_power(self.step, g)?;
            }
        }
        let mut next = Vec::with_capacity(self.rows.len() * 2);
        let mut entries = 0usize;
        for p in &self.rows {
            for g in &self.orbit {
                let q = p.try_mul(g)?;
                entries += q.len();
                if entries > max_entries {
                    return Err(Error::ResourceCap(format!(
                        "degree {} expansion exceeds {max_entries} matrix entries (set {MAX_ENTRIES_ENV} to raise)",
                        self.level + 1
                    )));
                }
                next.push(q);
            }
        }
        self.rows = next;
        self.level += 1;
        Ok(())
    }

    fn matrix(&self) -> (Vec<SparseRow>, Vec<BigInt>) {
        let mut cols: BTreeMap<ExpVec, usize> = BTreeMap::new();
        for p in &self.rows {
            for e in p.support() {
                let n = cols.len();
                cols.entry(e).or_insert(n);
            }
        }
        // Renumber in canonical monomial order.
        for (k, v) in cols.values_mut().enumerate() {
            *v = k;
        }
        self.rows
            .iter()
            .map(|p| integer_row(p.terms().map(|(e, c)| (cols[e], c.clone()))))
            .unzip()
    }
}

/// Orbit entries `σ^{kp}(a)`, `σ^{kp}(b)` for `k < n`, if all are monomials.
fn monomial_orbits(
    sigma: &Automorphism,
    a: &Poly,
    b: &Poly,
    step: i64,
    n: usize,
) -> Result<Option<Vec<[ExpVec; 2]>>> {
    let mut cur = [a.clone(), b.clone()];
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            for g in cur.iter_mut() {
                *g = sigma.apply_power(step, g)?;
            }
        }
        match (cur[0].as_monomial(), cur[1].as_monomial()) {
            (Some((ea, _)), Some((eb, _))) => out.push([ea, eb]),
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Dimensions for degrees `1..=n` as distinct exponent sums; valid when every orbit entry is a monomial.
fn monomial_dims(orbits: &[[ExpVec; 2]]) -> Vec<usize> {
    let mut set: HashSet<(i64, i64)> = HashSet::from([(0, 0)]);
    let mut dims = Vec::with_capacity(orbits.len());
    for pair in orbits {
        let mut next = HashSet::with_capacity(set.len() * 2);
        for &(i, j) in &set {
            for e in pair {
                next.insert((i + e.i, j + e.j));
            }
        }
        set = next;
        dims.push(set.len());
    }
    dims
}

fn check_pair(sigma: &Automorphism, a: &Poly, b: &Poly) -> Result<()> {
    let mut wp = WordProducts::new(sigma, a, b, 1)?;
    wp.advance(usize::MAX)?;
    let (rows, _) = wp.matrix();
    if eliminate(&rows, false).rank < 2 {
        return Err(Error::Invalid(format!(
            "generators {a} and {b} are linearly dependent"
        )));
    }
    Ok(())
}

fn dims_with_caps(
    sigma: &Automorphism,
    a: &Poly,
    b: &Poly,
    step: i64,
    n: usize,
    caps: Caps,
) -> Result<Vec<usize>> {
    check_pair(sigma, a, b)?;
    if n <= caps.monomial_depth {
        if let Some(orbits) = monomial_orbits(sigma, a, b, step, n)? {
            return Ok(monomial_dims(&orbits));
        }
    }
    if n > caps.generic_depth {
        return Err(Error::ResourceCap(format!(
            "depth {n} exceeds the generic cap {}",
            caps.generic_depth
        )));
    }
    let mut wp = WordProducts::new(sigma, a, b, step)?;
    let mut dims = Vec::with_capacity(n);
    for _ in 0..n {
        wp.advance(caps.max_entries)?;
        dims.push(eliminate(&wp.matrix().0, false).rank);
    }
    Ok(dims)
}

/// `dim Vₙ` for `k{at, bt}` over σ.
pub fn component_dimension(sigma: &Automorphism, a: &Poly, b: &Poly, n: usize) -> Result<usize> {
    component_dimensions(sigma, a, b, n).map(|d| d[n - 1])
}

/// `dim V₁, …, dim Vₙ` for `k{at, bt}` over σ.
pub fn component_dimensions(
    sigma: &Automorphism,
    a: &Poly,
    b: &Poly,
    n: usize,
) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    dims_with_caps(sigma, a, b, 1, n, Caps::current())
}

/// Same as [`component_dimensions`] but always by exact elimination, never the monomial shortcut.
pub fn rank_dimensions(sigma: &Automorphism, a: &Poly, b: &Poly, n: usize) -> Result<Vec<usize>> {
    let caps = Caps {
        monomial_depth: 0,
        ..Caps::current()
    };
    dims_with_caps(sigma, a, b, 1, n, caps)
}

fn relation_from_rows(wp: &WordProducts<'_>, alphabet: Alphabet) -> Result<Option<Relation>> {
    let (rows, scales) = wp.matrix();
    let Some(dep) = eliminate(&rows, true).first_dependency else {
        return Ok(None);
    };
    // Σ c_k · row_k = 0 with row_k = s_k · p_k, so Σ (c_k s_k) p_k = 0.
    let mut coeffs: BTreeMap<usize, BigInt> =
        dep.into_iter().map(|(k, c)| (k, c * &scales[k])).collect();
    normalize_primitive(&mut coeffs);
    let n = wp.level;
    let rel = Relation::new(
        alphabet,
        coeffs
            .into_iter()
            .map(|(k, c)| (Word::from_bits(k, n), Rat::from_integer(c))),
    )?;
    if !verify_relation(&rel) {
        return Err(Error::Invalid(format!(
            "kernel vector {rel} failed re-verification"
        )));
    }
    Ok(Some(rel))
}

fn find_relation_step(
    sigma: &Arc<Automorphism>,
    a: &Poly,
    b: &Poly,
    step: usize,
    n: usize,
) -> Result<Option<Relation>> {
    let caps = Caps::current();
    if n == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    if n > caps.generic_depth {
        return Err(Error::ResourceCap(format!(
            "depth {n} exceeds the generic cap {}",
            caps.generic_depth
        )));
    }
    check_pair(sigma, a, b)?;
    let mut wp = WordProducts::new(sigma, a, b, step as i64)?;
    for _ in 0..n {
        wp.advance(caps.max_entries)?;
    }
    let alphabet = Alphabet::pair(sigma.clone(), a.clone(), b.clone(), step as i64)?;
    relation_from_rows(&wp, alphabet)
}

/// A relation of length `n` among `at`, `bt`, or `None` when `dim Vₙ = 2ⁿ`.
///
/// The returned vector involves the lexicographically earliest word that depends on
/// its predecessors, with primitive integer coefficients and a positive leading one.
pub fn find_relation(
    sigma: &Arc<Automorphism>,
    a: &Poly,
    b: &Poly,
    n: usize,
) -> Result<Option<Relation>> {
    find_relation_step(sigma, a, b, 1, n)
}

/// Ranks of `k{a tᵖ, b tᵖ}` up to `depth`, with a witness at the first deficient degree
/// and a certificate when the data supports one.
pub fn check_free(
    sigma: &Arc<Automorphism>,
    a: &Poly,
    b: &Poly,
    t_power: usize,
    depth: usize,
) -> Result<FreenessReport> {
    if t_power == 0 || depth == 0 {
        return Err(Error::Invalid("t_power and depth must be positive".into()));
    }
    let caps = Caps::current();
    let step = t_power as i64;
    check_pair(sigma, a, b)?;
    let mut dims = Vec::with_capacity(depth);
    let mut stop: Option<String> = None;
    if depth <= caps.monomial_depth {
        if let Some(orbits) = monomial_orbits(sigma, a, b, step, depth)? {
            dims = monomial_dims(&orbits);
        }
    }
    if dims.is_empty() {
        let mut wp = WordProducts::new(sigma, a, b, step)?;
        for n in 1..=depth {
            if n > caps.generic_depth {
                stop = Some(format!(
                    "depth {n} exceeds the generic cap {}",
                    caps.generic_depth
                ));
                break;
            }
            match wp.advance(caps.max_entries) {
                Ok(()) => {}
                Err(Error::ResourceCap(msg)) => {
                    stop = Some(msg);
                    break;
                }
                Err(e) => return Err(e),
            }
            dims.push(eliminate(&wp.matrix().0, false).rank);
        }
    }
    let expected: Vec<usize> = (1..=depth).map(|n| 1usize << n.min(63)).collect();
    let deficient = dims.iter().zip(&expected).position(|(d, e)| d < e);
    let verdict = match (deficient, stop) {
        (Some(k), _) => {
            let witness = find_relation_step(sigma, a, b, t_power, k + 1)?.ok_or_else(|| {
                Error::Invalid(format!(
                    "rank deficit at degree {} but no kernel vector",
                    k + 1
                ))
            })?;
            Verdict::NotFree {
                degree: k + 1,
                witness,
            }
        }
        (None, Some(reason)) => Verdict::Inconclusive { reason },
        (None, None) => Verdict::FreeUpToDepth,
    };
    let certificate = match verdict {
        Verdict::FreeUpToDepth => Some(certify(sigma, a, b, t_power, depth)?),
        _ => None,
    };
    Ok(FreenessReport {
        sigma: sigma.clone(),
        generators: (a.clone(), b.clone()),
        t_power,
        depth,
        dims,
        expected,
        verdict,
        certificate,
    })
}

fn certify(
    sigma: &Automorphism,
    a: &Poly,
    b: &Poly,
    t_power: usize,
    depth: usize,
) -> Result<Certificate> {
    if let (Some(m), Some((ea, _)), Some((eb, _))) =
        (sigma.matrix(), a.as_monomial(), b.as_monomial())
    {
        if let Some(mp) = m.checked_pow(t_power as u32) {
            if let Ok(val) = monomial::eigen_data(mp) {
                if monomial::beta_is_large(&val) && val.value_exp(ea) != val.value_exp(eb) {
                    return Ok(Certificate::Valuation {
                        beta: val.beta,
                        alpha: val.w_y,
                    });
                }
            }
        }
    }
    if sigma.mode() == Mode::Poly {
        let tau = power(sigma, t_power as i64);
        let candidate = if tau.apply(a)? == *b {
            Some(a)
        } else if tau.apply(b)? == *a {
            Some(b)
        } else {
            None
        };
        if let Some(g) = candidate {
            if g.as_constant().is_none() {
                for (wx, wy) in [(1, 1), (2, 1), (1, 2)] {
                    let w = WeightedDegree::new(wx, wy)?;
                    if let Doubling::Certified { horizon, degrees } =
                        degree_doubling_certificate(&tau, g, w, depth)?
                    {
                        return Ok(Certificate::DegreeDoubling {
                            weights: w,
                            horizon,
                            degrees,
                        });
                    }
                }
            }
        }
    }
    Ok(Certificate::RankOnly)
}

/// Outcome of the degree-doubling test. `degrees[m]` is `deg_w(σᵐ(g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Doubling {
    Certified { horizon: usize, degrees: Vec<i64> },
    Failed { m: usize, degrees: Vec<i64> },
}

impl Doubling {
    pub fn is_certified(&self) -> bool {
        matches!(self, Doubling::Certified { .. })
    }

    pub fn degrees(&self) -> &[i64] {
        match self {
            Doubling::Certified { degrees, .. } | Doubling::Failed { degrees, .. } => degrees,
        }
    }
}

/// Checks `deg_w(σᵐ⁺¹(g)) ≥ 2·deg_w(σᵐ(g)) > 0` for `m < horizon`. Evidence only up to the horizon.
pub fn degree_doubling_certificate(
    sigma: &Automorphism,
    g: &Poly,
    w: WeightedDegree,
    horizon: usize,
) -> Result<Doubling> {
    if sigma.mode() != Mode::Poly {
        return Err(Error::ModeMismatch(
            "degree doubling needs the polynomial ring".into(),
        ));
    }
    if g.is_zero() || g.as_constant().is_some() {
        return Err(Error::Invalid(format!("{g} is constant")));
    }
    let mut cur = g.clone();
    let mut degrees = vec![weighted_degree(&cur, w)?];
    for m in 0..horizon {
        cur = sigma.apply(&cur)?;
        let d = weighted_degree(&cur, w)?;
        degrees.push(d);
        if !(degrees[m] > 0 && d >= 2 * degrees[m]) {
            return Ok(Doubling::Failed { m, degrees });
        }
    }
    Ok(Doubling::Certified { horizon, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::{elementary_autom, henon_paper, monomial_autom, IntMat2};
    use crate::exactnum::rat_int;
    use crate::ring::parse_poly;

    fn mono(a: i64, b: i64, c: i64, d: i64) -> Arc<Automorphism> {
        Arc::new(monomial_autom(IntMat2 { a, b, c, d }).unwrap())
    }

    fn xy(mode: Mode) -> (Poly, Poly) {
        (Poly::x(mode), Poly::y(mode))
    }

    #[test]
    fn golden_matrix_has_one_collision_in_degree_three() {
        let tau = mono(0, 1, 1, 1);
        let (x, y) = xy(Mode::Laurent);
        assert_eq!(component_dimension(&tau, &x, &y, 3).unwrap(), 7);
        assert_eq!(rank_dimensions(&tau, &x, &y, 3).unwrap(), vec![2, 4, 7]);
        let r = find_relation(&tau, &x, &y, 3).unwrap().unwrap();
        assert!(verify_relation(&r));
        assert_eq!(r.to_string(), "(xt)^2(yt) - (yt)^2(xt)");
    }

    #[test]
    fn identity_gives_commutative_words() {
        let id = Arc::new(Automorphism::identity(Mode::Poly));
        let (x, y) = xy(Mode::Poly);
        for n in 1..=5 {
            assert_eq!(component_dimension(&id, &x, &y, n).unwrap(), n + 1);
        }
        let r = find_relation(&id, &x, &y, 2).unwrap().unwrap();
        assert_eq!(r.to_string(), "(xt)(yt) - (yt)(xt)");
        let rep = check_free(&id, &x, &y, 1, 4).unwrap();
        assert_eq!(rep.witness().unwrap().to_string(), "(xt)(yt) - (yt)(xt)");
    }

    #[test]
    fn rogalski_matrix_is_free() {
        let s = mono(1, 1, 1, 2);
        let (x, y) = xy(Mode::Laurent);
        assert_eq!(
            rank_dimensions(&s, &x, &y, 5).unwrap(),
            vec![2, 4, 8, 16, 32]
        );
        assert!(find_relation(&s, &x, &y, 4).unwrap().is_none());
        let rep = check_free(&s, &x, &y, 1, 8).unwrap();
        assert!(rep.is_free_up_to_depth());
        assert_eq!(rep.certificate.as_ref().unwrap().name(), "VALUATION");
        assert!(rep.is_unbounded_claim());
    }

    #[test]
    fn golden_matrix_squared_is_free() {
        let tau = mono(0, 1, 1, 1);
        let (x, y) = xy(Mode::Laurent);
        let rep = check_free(&tau, &x, &y, 1, 3).unwrap();
        assert_eq!(
            rep.witness().unwrap().to_string(),
            "(xt)^2(yt) - (yt)^2(xt)"
        );
        let rep = check_free(&tau, &x, &y, 2, 8).unwrap();
        assert!(rep.is_free_up_to_depth());
        assert_eq!(rep.dims, (1..=8).map(|n| 1 << n).collect::<Vec<_>>());
        assert_eq!(rep.certificate.as_ref().unwrap().name(), "VALUATION");
    }

    #[test]
    fn relations_verify_or_not() {
        let rot = mono(0, -1, 1, 0);
        let al = Alphabet::pair(rot, Poly::x(Mode::Laurent), Poly::y(Mode::Laurent), 1).unwrap();
        assert!(verify_relation(
            &Relation::parse(al, "(xt)^4(yt)^4 - (yt)^4(xt)^4").unwrap()
        ));
        let s = mono(0, -1, 1, 1);
        let al = Alphabet::pair(s, Poly::x(Mode::Laurent), Poly::y(Mode::Laurent), 1).unwrap();
        assert!(verify_relation(
            &Relation::parse(al.clone(), "(xt)(yt)(xt) = (yt)(xt)(yt)").unwrap()
        ));
        let free = mono(1, 1, 1, 2);
        let al = Alphabet::pair(free, Poly::x(Mode::Laurent), Poly::y(Mode::Laurent), 1).unwrap();
        assert!(!verify_relation(
            &Relation::parse(al, "(xt)(yt) - (yt)(xt)").unwrap()
        ));
    }

    #[test]
    fn relation_parse_render_round_trip() {
        let s = mono(1, 1, 1, 2);
        let al = Alphabet::pair(s, Poly::x(Mode::Laurent), Poly::y(Mode::Laurent), 1).unwrap();
        let r = Relation::parse(al.clone(), "3/2*(xt)^2(yt) - 2(yt)(xt)(yt) + (yt)^3").unwrap();
        assert_eq!(r.to_string(), "3/2*(xt)^2(yt) - 2*(yt)(xt)(yt) + (yt)^3");
        let again = Relation::parse(al.clone(), &r.to_string()).unwrap();
        assert_eq!(again.to_string(), r.to_string());
        assert!(Relation::parse(al.clone(), "(xt)").is_err());
        assert!(Relation::parse(al.clone(), "(xt) - (xt)").is_err());
        assert!(Relation::parse(al, "(xt)(yt) - (yt)").is_err());
    }

    #[test]
    fn degree_doubling_examples() {
        let h = henon_paper(rat_int(1), rat_int(1)).unwrap();
        let y = Poly::y(Mode::Poly);
        let out =
            degree_doubling_certificate(&h, &y, WeightedDegree::new(2, 1).unwrap(), 8).unwrap();
        assert!(out.is_certified());
        assert_eq!(
            out.degrees(),
            (0..=8).map(|m| 1i64 << m).collect::<Vec<_>>()
        );

        let e = elementary_autom(
            rat_int(1),
            rat_int(1),
            rat_int(0),
            parse_poly("y^2", Mode::Poly).unwrap(),
        )
        .unwrap();
        let x = Poly::x(Mode::Poly);
        let out = degree_doubling_certificate(&e, &x, WeightedDegree::total(), 4).unwrap();
        assert!(!out.is_certified());

        let id = Automorphism::identity(Mode::Poly);
        assert_eq!(
            degree_doubling_certificate(&id, &x, WeightedDegree::total(), 3).unwrap(),
            Doubling::Failed {
                m: 0,
                degrees: vec![1, 1]
            }
        );
        assert!(degree_doubling_certificate(
            &id,
            &Poly::one(Mode::Poly),
            WeightedDegree::total(),
            3
        )
        .is_err());
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let id = Arc::new(Automorphism::identity(Mode::Poly));
        let x = Poly::x(Mode::Poly);
        assert!(component_dimension(&id, &x, &x.scale(&rat_int(3)), 2).is_err());
    }

    #[test]
    fn generic_depth_cap_is_enforced() {
        let h = Arc::new(henon_paper(rat_int(1), rat_int(1)).unwrap());
        let (x, y) = xy(Mode::Poly);
        assert!(matches!(
            component_dimension(&h, &x, &y, 13),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn report_json_shape() {
        let tau = mono(0, 1, 1, 1);
        let (x, y) = xy(Mode::Laurent);
        let rep = check_free(&tau, &x, &y, 1, 3).unwrap();
        let v = rep.to_json();
        assert_eq!(v["verdict"], "NOT_FREE");
        assert_eq!(v["witness"], "(xt)^2(yt) - (yt)^2(xt)");
        assert_eq!(v["dims"], json!([2, 4, 7]));
    }
}
