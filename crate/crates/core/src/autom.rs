//! Automorphisms σ of k[x,y] and k[x^±1,y^±1], stored as images of `x`, `y` together with
//! the images under σ⁻¹.
//!
//! Convention for monomial automorphisms: the matrix `(a b; c d)` sends `x ↦ x^a y^b` and
//! `y ↦ x^c y^d`, hence `x^i y^j ↦ x^(ai+cj) y^(bi+dj)`. Exponent vectors are row vectors
//! acted on from the right: `e ↦ e·M`. Under this convention `σ_M ∘ σ_N = σ_(N·M)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::ring::{parse_poly, substitute, ExpVec, Mode, Poly};

/// Integer 2×2 matrix `(a b; c d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn checked_mul(&self, o: &IntMat2) -> Option<IntMat2> {
        let f = |p: i64, q: i64, r: i64, s: i64| p.checked_mul(q)?.checked_add(r.checked_mul(s)?);
        Some(IntMat2 {
            a: f(self.a, o.a, self.b, o.c)?,
            b: f(self.a, o.b, self.b, o.d)?,
            c: f(self.c, o.a, self.d, o.c)?,
            d: f(self.c, o.b, self.d, o.d)?,
        })
    }

    /// Panics on `i64` overflow.
    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        self.checked_mul(o).expect("matrix entries overflow i64")
    }

    pub fn checked_pow(&self, n: u32) -> Option<IntMat2> {
        let mut acc = Self::IDENTITY;
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    pub fn pow(&self, n: u32) -> IntMat2 {
        self.checked_pow(n).expect("matrix entries overflow i64")
    }

    /// Inverse in GL(2,ℤ); `None` unless `det = ±1`.
    pub fn inverse(&self) -> Option<IntMat2> {
        let det = self.det();
        if det.abs() != 1 {
            return None;
        }
        Some(IntMat2 {
            a: self.d * det,
            b: -self.b * det,
            c: -self.c * det,
            d: self.a * det,
        })
    }

    /// Row-vector action `e ↦ e·M`, i.e. the exponent of σ(x^i y^j).
    pub fn act(&self, e: ExpVec) -> ExpVec {
        ExpVec::new(self.a * e.i + self.c * e.j, self.b * e.i + self.d * e.j)
    }

    /// Smallest `k ≤ cap` with `M^k = I`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut acc = *self;
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.checked_mul(self)?;
        }
        None
    }

    /// Parses `"a,b;c,d"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected matrix \"a,b;c,d\", got {s:?}"));
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut v = Vec::with_capacity(4);
        for r in rows {
            for e in r.split(',') {
                v.push(e.trim().parse::<i64>().map_err(|_| bad())?);
            }
        }
        if v.len() != 4 {
            return Err(bad());
        }
        Ok(Self::new(v[0], v[1], v[2], v[3]))
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for IntMat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}

/// Syntactic form an automorphism was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Monomial(IntMat2),
    /// `x ↦ a x + p(y)`, `y ↦ b y + c`
    Elementary {
        a: Rat,
        b: Rat,
        c: Rat,
        p: Poly,
    },
    /// `x ↦ p(x) − a y`, `y ↦ x`
    Henon {
        p: Poly,
        a: Rat,
    },
    Custom,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Monomial(_) => "MONOMIAL",
            Kind::Elementary { .. } => "ELEMENTARY",
            Kind::Henon { .. } => "HENON",
            Kind::Custom => "CUSTOM",
        }
    }
}

/// A k-algebra automorphism of k[x,y] or k[x^±1,y^±1].
#[derive(Clone, Debug)]
pub struct Automorphism {
    mode: Mode,
    img_x: Poly,
    img_y: Poly,
    inv_x: Poly,
    inv_y: Poly,
    kind: Kind,
}

impl PartialEq for Automorphism {
    /// Two automorphisms are equal when they send `x` and `y` to the same images.
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.img_x == other.img_x && self.img_y == other.img_y
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    /// Builds an automorphism from explicit images and inverse images, checking both round trips.
    pub fn new(img_x: Poly, img_y: Poly, inv_x: Poly, inv_y: Poly, kind: Kind) -> Result<Self> {
        let mode = img_x.mode();
        for p in [&img_y, &inv_x, &inv_y] {
            if p.mode() != mode {
                return Err(Error::ModeMismatch(
                    "automorphism images must share one ring".into(),
                ));
            }
        }
        let sigma = Self {
            mode,
            img_x,
            img_y,
            inv_x,
            inv_y,
            kind,
        };
        sigma.verify_inverse()?;
        Ok(sigma)
    }

    pub fn custom(img_x: Poly, img_y: Poly, inv_x: Poly, inv_y: Poly) -> Result<Self> {
        Self::new(img_x, img_y, inv_x, inv_y, Kind::Custom)
    }

    fn verify_inverse(&self) -> Result<()> {
        let x = Poly::x(self.mode);
        let y = Poly::y(self.mode);
        let fwd_x = substitute(&self.img_x, &self.inv_x, &self.inv_y)?;
        let fwd_y = substitute(&self.img_y, &self.inv_x, &self.inv_y)?;
        let back_x = substitute(&self.inv_x, &self.img_x, &self.img_y)?;
        let back_y = substitute(&self.inv_y, &self.img_x, &self.img_y)?;
        if fwd_x != x || fwd_y != y || back_x != x || back_y != y {
            return Err(Error::NotAutomorphism(format!(
                "({}, {}) and ({}, {}) are not mutually inverse",
                self.img_x, self.img_y, self.inv_x, self.inv_y
            )));
        }
        Ok(())
    }

    pub fn identity(mode: Mode) -> Self {
        let x = Poly::x(mode);
        let y = Poly::y(mode);
        let kind = match mode {
            Mode::Laurent => Kind::Monomial(IntMat2::IDENTITY),
            Mode::Poly => Kind::Custom,
        };
        Self {
            mode,
            img_x: x.clone(),
            img_y: y.clone(),
            inv_x: x,
            inv_y: y,
            kind,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn image_x(&self) -> &Poly {
        &self.img_x
    }

    pub fn image_y(&self) -> &Poly {
        &self.img_y
    }

    pub fn inverse_x(&self) -> &Poly {
        &self.inv_x
    }

    pub fn inverse_y(&self) -> &Poly {
        &self.inv_y
    }

    pub fn matrix(&self) -> Option<IntMat2> {
        match self.kind {
            Kind::Monomial(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.img_x == Poly::x(self.mode) && self.img_y == Poly::y(self.mode)
    }

    pub fn inverse(&self) -> Self {
        let kind = match &self.kind {
            Kind::Monomial(m) => Kind::Monomial(m.inverse().expect("unimodular")),
            _ => Kind::Custom,
        };
        Self {
            mode: self.mode,
            img_x: self.inv_x.clone(),
            img_y: self.inv_y.clone(),
            inv_x: self.img_x.clone(),
            inv_y: self.img_y.clone(),
            kind,
        }
    }

    fn check_mode(&self, f: &Poly) -> Result<()> {
        if f.mode() != self.mode {
            return Err(Error::ModeMismatch(format!(
                "automorphism of {:?} ring applied to {:?} element",
                self.mode,
                f.mode()
            )));
        }
        Ok(())
    }

    /// σ(f).
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.check_mode(f)?;
        substitute(f, &self.img_x, &self.img_y)
    }

    /// σ⁻¹(f).
    pub fn apply_inverse(&self, f: &Poly) -> Result<Poly> {
        self.check_mode(f)?;
        substitute(f, &self.inv_x, &self.inv_y)
    }

    /// σⁿ(f) by iterated application, for any integer `n`.
    pub fn apply_power(&self, n: i64, f: &Poly) -> Result<Poly> {
        let mut out = f.clone();
        for _ in 0..n.unsigned_abs() {
            out = if n > 0 {
                self.apply(&out)?
            } else {
                self.apply_inverse(&out)?
            };
        }
        Ok(out)
    }

    /// `f, σ(f), …, σ^(len−1)(f)`.
    pub fn orbit(&self, f: &Poly, len: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::with_capacity(len);
        if len == 0 {
            return Ok(out);
        }
        out.push(f.clone());
        for k in 1..len {
            let next = self.apply(&out[k - 1])?;
            out.push(next);
        }
        Ok(out)
    }
}

/// The monomial automorphism `x ↦ x^a y^b`, `y ↦ x^c y^d` of the Laurent ring.
pub fn monomial_autom(m: IntMat2) -> Result<Automorphism> {
    let inv = m
        .inverse()
        .ok_or_else(|| Error::NotAutomorphism(format!("det({m}) = {} is not ±1", m.det())))?;
    let mono = |i, j| Poly::mono(Mode::Laurent, i, j);
    Ok(Automorphism {
        mode: Mode::Laurent,
        img_x: mono(m.a, m.b),
        img_y: mono(m.c, m.d),
        inv_x: mono(inv.a, inv.b),
        inv_y: mono(inv.c, inv.d),
        kind: Kind::Monomial(m),
    })
}

/// `x ↦ a x + p(y)`, `y ↦ b y + c` on k[x,y].
pub fn elementary_autom(a: Rat, b: Rat, c: Rat, p: Poly) -> Result<Automorphism> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotAutomorphism(
            "elementary map needs a ≠ 0 and b ≠ 0".into(),
        ));
    }
    if p.mode() != Mode::Poly || !p.is_univariate_y() {
        return Err(Error::Invalid(format!(
            "p = {p} must be a polynomial in y alone"
        )));
    }
    let m = Mode::Poly;
    let x = Poly::x(m);
    let y = Poly::y(m);
    let img_x = &x.scale(&a) + &p;
    let img_y = &y.scale(&b) + &Poly::constant(m, c.clone());
    let inv_y = (&y - &Poly::constant(m, c.clone())).scale(&b.recip());
    let p_at = substitute(&p, &x, &inv_y)?;
    let inv_x = (&x - &p_at).scale(&a.recip());
    Automorphism::new(img_x, img_y, inv_x, inv_y, Kind::Elementary { a, b, c, p })
}

/// `x ↦ p(x) − a y`, `y ↦ x` on k[x,y].
pub fn henon_autom(p: Poly, a: Rat) -> Result<Automorphism> {
    if a.is_zero() {
        return Err(Error::NotAutomorphism("Hénon map needs a ≠ 0".into()));
    }
    if p.mode() != Mode::Poly || !p.is_univariate_x() {
        return Err(Error::Invalid(format!(
            "p = {p} must be a polynomial in x alone"
        )));
    }
    if p.is_zero() || p.total_degree()? < 2 {
        return Err(Error::NotAutomorphism(format!(
            "deg p = deg({p}) must be ≥ 2"
        )));
    }
    let m = Mode::Poly;
    let x = Poly::x(m);
    let y = Poly::y(m);
    let img_x = &p - &y.scale(&a);
    let p_of_y = substitute(&p, &y, &x)?;
    let inv_y = (&p_of_y - &x).scale(&a.recip());
    Automorphism::new(img_x, x, y, inv_y, Kind::Henon { p, a })
}

/// The map `x ↦ 1 + y − a x²`, `y ↦ b x`, with inverse `x ↦ y/b`, `y ↦ x − 1 + (a/b²) y²`.
///
/// For `b = 1` this is literally the Hénon automorphism with `p = 1 − a x²` and
/// coefficient `−1`; otherwise it is that map composed with the scaling `y ↦ b y`.
pub fn henon_paper(a: Rat, b: Rat) -> Result<Automorphism> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotAutomorphism("need a·b ≠ 0".into()));
    }
    let m = Mode::Poly;
    let x = Poly::x(m);
    let y = Poly::y(m);
    let one = Poly::one(m);
    let p = &one - &(&x * &x).scale(&a);
    if b.is_one() {
        return henon_autom(p, -Rat::one());
    }
    let img_x = &(&one + &y) - &(&x * &x).scale(&a);
    let img_y = x.scale(&b);
    let inv_x = y.scale(&b.recip());
    let inv_y = &(&x - &one) + &(&y * &y).scale(&(&a / (&b * &b)));
    Automorphism::custom(img_x, img_y, inv_x, inv_y)
}

/// `σ ∘ τ`, i.e. `f ↦ σ(τ(f))`.
pub fn compose(sigma: &Automorphism, tau: &Automorphism) -> Result<Automorphism> {
    if sigma.mode != tau.mode {
        return Err(Error::ModeMismatch(
            "cannot compose automorphisms of different rings".into(),
        ));
    }
    let img_x = sigma.apply(&tau.img_x)?;
    let img_y = sigma.apply(&tau.img_y)?;
    let inv_x = tau.apply_inverse(&sigma.inv_x)?;
    let inv_y = tau.apply_inverse(&sigma.inv_y)?;
    let kind = match (&sigma.kind, &tau.kind) {
        (Kind::Monomial(m), Kind::Monomial(n)) => {
            n.checked_mul(m).map_or(Kind::Custom, Kind::Monomial)
        }
        _ => Kind::Custom,
    };
    Ok(Automorphism {
        mode: sigma.mode,
        img_x,
        img_y,
        inv_x,
        inv_y,
        kind,
    })
}

/// `σⁿ` for any integer `n`; negative powers use the inverse.
pub fn power(sigma: &Automorphism, n: i64) -> Automorphism {
    let base = if n < 0 {
        sigma.inverse()
    } else {
        sigma.clone()
    };
    let mut result = Automorphism::identity(sigma.mode);
    let mut sq = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            result = compose(&result, &sq).expect("same mode");
        }
        k >>= 1;
        if k > 0 {
            sq = compose(&sq, &sq).expect("same mode");
        }
    }
    result
}

/// σ(f).
pub fn apply(sigma: &Automorphism, f: &Poly) -> Result<Poly> {
    sigma.apply(f)
}

/// Parses the command-line automorphism syntax:
/// `monomial:a,b;c,d`, `elementary:a,b,c,p(y)`, `henon:a,b`, `custom:img_x|img_y|inv_x|inv_y`.
///
/// Custom maps live in the Laurent ring when any component has a negative exponent,
/// or when `laurent` is set.
pub fn parse_automorphism(spec: &str, laurent: bool) -> Result<Automorphism> {
    let (tag, body) = spec.split_once(':').ok_or_else(|| {
        Error::Parse(format!("automorphism spec {spec:?} lacks a 'kind:' prefix"))
    })?;
    let rat = |s: &str| -> Result<Rat> {
        let p = parse_poly(s, Mode::Poly)?;
        p.as_constant()
            .ok_or_else(|| Error::Parse(format!("{s:?} is not a scalar")))
    };
    match tag.trim() {
        "monomial" => monomial_autom(IntMat2::parse(body)?),
        "elementary" => {
            let parts: Vec<&str> = body.splitn(4, ',').collect();
            if parts.len() != 4 {
                return Err(Error::Parse("expected elementary:a,b,c,p(y)".into()));
            }
            elementary_autom(
                rat(parts[0])?,
                rat(parts[1])?,
                rat(parts[2])?,
                parse_poly(parts[3], Mode::Poly)?,
            )
        }
        "henon" => {
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse("expected henon:a,b".into()));
            }
            henon_paper(rat(parts[0])?, rat(parts[1])?)
        }
        "custom" => {
            let parts: Vec<&str> = body.split('|').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(
                    "expected custom:img_x|img_y|inv_x|inv_y".into(),
                ));
            }
            let mode = if laurent || body.contains("^-") {
                Mode::Laurent
            } else {
                Mode::Poly
            };
            let p = |s: &str| parse_poly(s, mode);
            let sigma =
                Automorphism::custom(p(parts[0])?, p(parts[1])?, p(parts[2])?, p(parts[3])?)?;
            Ok(recognize_monomial(sigma))
        }
        other => Err(Error::Parse(format!("unknown automorphism kind {other:?}"))),
    }
}

// Custom Laurent maps whose images are monic monomials get the MONOMIAL tag.
fn recognize_monomial(sigma: Automorphism) -> Automorphism {
    if sigma.mode != Mode::Laurent {
        return sigma;
    }
    let monic = |p: &Poly| p.as_monomial().filter(|(_, c)| c.is_one()).map(|(e, _)| e);
    match (monic(&sigma.img_x), monic(&sigma.img_y)) {
        (Some(ex), Some(ey)) => {
            let m = IntMat2::new(ex.i, ex.j, ey.i, ey.j);
            Automorphism {
                kind: Kind::Monomial(m),
                ..sigma
            }
        }
        _ => sigma,
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ(x) = {}, σ(y) = {}", self.img_x, self.img_y)
    }
}

impl Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Automorphism", 6)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("matrix", &self.matrix())?;
        st.serialize_field("sigma_x", &self.img_x)?;
        st.serialize_field("sigma_y", &self.img_y)?;
        st.serialize_field("inverse_x", &self.inv_x)?;
        st.serialize_field("inverse_y", &self.inv_y)?;
        st.end()
    }
}
