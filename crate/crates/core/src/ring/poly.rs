use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rat;

/// Which of the two coordinate rings a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// k[x, y]
    Poly,
    /// k[x^±1, y^±1]
    Laurent,
}

/// Exponent vector of `x^i y^j`.
///
/// Ordered degree-lexicographically: total degree first, then larger `i` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExpVec {
    pub i: i64,
    pub j: i64,
}

impl ExpVec {
    pub const fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }

    pub fn degree(&self) -> i64 {
        self.i + self.j
    }

    pub fn is_polynomial(&self) -> bool {
        self.i >= 0 && self.j >= 0
    }
}

impl Add for ExpVec {
    type Output = ExpVec;
    fn add(self, o: ExpVec) -> ExpVec {
        ExpVec::new(self.i + o.i, self.j + o.j)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.i.cmp(&self.i))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positive integer weights `(deg x, deg y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedDegree {
    pub w_x: i64,
    pub w_y: i64,
}

impl WeightedDegree {
    pub fn new(w_x: i64, w_y: i64) -> Result<Self> {
        if w_x < 1 || w_y < 1 {
            return Err(Error::Invalid(format!(
                "weights must be ≥ 1, got ({w_x}, {w_y})"
            )));
        }
        Ok(Self { w_x, w_y })
    }

    pub fn total() -> Self {
        Self { w_x: 1, w_y: 1 }
    }

    pub fn of(&self, e: ExpVec) -> i64 {
        self.w_x * e.i + self.w_y * e.j
    }
}

/// Sparse polynomial with exact rational coefficients; no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    mode: Mode,
    terms: BTreeMap<ExpVec, Rat>,
}

impl Poly {
    pub fn zero(mode: Mode) -> Self {
        Self {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(mode: Mode, c: Rat) -> Self {
        let mut p = Self::zero(mode);
        if !c.is_zero() {
            p.terms.insert(ExpVec::new(0, 0), c);
        }
        p
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(mode, Rat::one())
    }

    pub fn monomial(mode: Mode, i: i64, j: i64, c: Rat) -> Result<Self> {
        let e = ExpVec::new(i, j);
        if mode == Mode::Poly && !e.is_polynomial() {
            return Err(Error::ModeMismatch(format!(
                "negative exponent x^{i} y^{j} in k[x,y]"
            )));
        }
        let mut p = Self::zero(mode);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        Ok(p)
    }

    /// Monic monomial `x^i y^j`; panics on a negative exponent in [`Mode::Poly`].
    pub fn mono(mode: Mode, i: i64, j: i64) -> Self {
        Self::monomial(mode, i, j, Rat::one()).expect("exponents valid for mode")
    }

    pub fn x(mode: Mode) -> Self {
        Self::mono(mode, 1, 0)
    }

    pub fn y(mode: Mode) -> Self {
        Self::mono(mode, 0, 1)
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(mode: Mode, terms: impl IntoIterator<Item = (ExpVec, Rat)>) -> Result<Self> {
        let mut p = Self::zero(mode);
        for (e, c) in terms {
            if mode == Mode::Poly && !e.is_polynomial() {
                return Err(Error::ModeMismatch(format!(
                    "negative exponent x^{} y^{} in k[x,y]",
                    e.i, e.j
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: ExpVec, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Reinterprets the polynomial in another ring; k[x,y] embeds in the Laurent ring.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::from_terms(mode, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending degree-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64) -> Rat {
        self.terms
            .get(&ExpVec::new(i, j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = ExpVec> + '_ {
        self.terms.keys().copied()
    }

    pub fn as_monomial(&self) -> Option<(ExpVec, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        match self.as_monomial() {
            Some((e, c)) if e == ExpVec::new(0, 0) => Some(c.clone()),
            _ => None,
        }
    }

    /// Units are nonzero scalars times a monomial (Laurent) or nonzero scalars (polynomial).
    pub fn is_unit(&self) -> bool {
        match (self.mode, self.as_monomial()) {
            (Mode::Laurent, Some(_)) => true,
            (Mode::Poly, Some((e, _))) => e == ExpVec::new(0, 0),
            _ => false,
        }
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::Invalid(format!("{self} is not a unit")));
        }
        let (e, c) = self.as_monomial().expect("unit is a monomial");
        Self::monomial(self.mode, -e.i, -e.j, c.recip())
    }

    /// Polynomial in `y` alone.
    pub fn is_univariate_y(&self) -> bool {
        self.terms.keys().all(|e| e.i == 0 && e.j >= 0)
    }

    /// Polynomial in `x` alone.
    pub fn is_univariate_x(&self) -> bool {
        self.terms.keys().all(|e| e.j == 0 && e.i >= 0)
    }

    pub fn total_degree(&self) -> Result<i64> {
        weighted_degree(self, WeightedDegree::total())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode);
        }
        Self {
            mode: self.mode,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `c · x^i y^j`.
    pub fn shift(&self, e: ExpVec, c: &Rat) -> Result<Self> {
        Self::from_terms(self.mode, self.terms.iter().map(|(f, v)| (*f + e, v * c)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_mode(self, other)?;
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(*e, c.clone());
        }
        Ok(big)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_mode(self, other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.mode);
        }
        if self.is_integral() && other.is_integral() {
            return self.mul_integral(other);
        }
        let mut acc: HashMap<ExpVec, Rat> = HashMap::with_capacity(self.len() * other.len());
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                *acc.entry(*e + *f).or_insert_with(Rat::zero) += c * d;
            }
        }
        Self {
            mode: self.mode,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    // Integer coefficients are the common case (monomial and Hénon data); skip gcd work.
    fn mul_integral(&self, other: &Self) -> Self {
        let mut acc: HashMap<ExpVec, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (e, c) in &self.terms {
            let c = c.numer();
            for (f, d) in &other.terms {
                let slot = acc.entry(*e + *f).or_insert_with(BigInt::zero);
                *slot += c * d.numer();
            }
        }
        Self {
            mode: self.mode,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e, Rat::from_integer(c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.mode);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Integer power; negative exponents need a unit.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.unit_inverse()?.pow((-n) as u32))
        }
    }

    /// Largest term in the canonical order.
    pub fn leading(&self) -> Option<(ExpVec, &Rat)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }
}

fn check_mode(f: &Poly, g: &Poly) -> Result<()> {
    if f.mode != g.mode {
        return Err(Error::ModeMismatch(format!("{:?} vs {:?}", f.mode, g.mode)));
    }
    Ok(())
}

pub fn poly_add(f: &Poly, g: &Poly) -> Result<Poly> {
    f.try_add(g)
}

pub fn poly_mul(f: &Poly, g: &Poly) -> Result<Poly> {
    f.try_mul(g)
}

/// Maximum of `w_x·i + w_y·j` over the support.
pub fn weighted_degree(f: &Poly, w: WeightedDegree) -> Result<i64> {
    f.terms
        .keys()
        .map(|e| w.of(*e))
        .max()
        .ok_or(Error::ZeroPolynomial)
}

/// `f(img_x, img_y)`, evaluated exactly.
///
/// Negative exponents of `f` are only admissible when the corresponding image is a
/// unit. The result lives in the images' ring.
pub fn substitute(f: &Poly, img_x: &Poly, img_y: &Poly) -> Result<Poly> {
    check_mode(img_x, img_y)?;
    let mode = img_x.mode;
    if f.is_zero() {
        return Ok(Poly::zero(mode));
    }
    if let (Some((ex, cx)), Some((ey, cy))) = (img_x.as_monomial(), img_y.as_monomial()) {
        return substitute_monomial(f, mode, (ex, cx), (ey, cy));
    }
    let i0 = f.terms.keys().map(|e| e.i).min().expect("nonzero");
    let j0 = f.terms.keys().map(|e| e.j).min().expect("nonzero");
    let unit_part = |img: &Poly, k: i64, var: &str| -> Result<Poly> {
        if k < 0 && !img.is_unit() {
            return Err(Error::Substitution(format!(
                "{var}^{k} applied to non-unit image {img}"
            )));
        }
        img.powi(k.min(0))
    };
    let prefix = unit_part(img_x, i0, "x")?.mul_unchecked(&unit_part(img_y, j0, "y")?);

    // Horner in whichever variable has the larger image; powers of the other are cached.
    let horner_in_x = img_x.len() >= img_y.len();
    let (outer_img, inner_img) = if horner_in_x {
        (img_x, img_y)
    } else {
        (img_y, img_x)
    };
    let mut rows: BTreeMap<i64, Vec<(i64, &Rat)>> = BTreeMap::new();
    for (e, c) in &f.terms {
        let (i, j) = (e.i - i0.min(0), e.j - j0.min(0));
        let (outer, inner) = if horner_in_x { (i, j) } else { (j, i) };
        rows.entry(outer).or_default().push((inner, c));
    }
    let max_inner = rows.values().flatten().map(|(k, _)| *k).max().unwrap_or(0);
    let mut inner_pows = Vec::with_capacity(max_inner as usize + 1);
    inner_pows.push(Poly::one(mode));
    for k in 1..=max_inner as usize {
        let next = inner_pows[k - 1].mul_unchecked(inner_img);
        inner_pows.push(next);
    }
    let max_outer = *rows.keys().next_back().expect("nonzero");
    let mut acc = Poly::zero(mode);
    for k in (0..=max_outer).rev() {
        if !acc.is_zero() {
            acc = acc.mul_unchecked(outer_img);
        }
        if let Some(row) = rows.get(&k) {
            for (inner, c) in row {
                for (e, d) in &inner_pows[*inner as usize].terms {
                    acc.add_term(*e, d * *c);
                }
            }
        }
    }
    let out = acc.mul_unchecked(&prefix);
    if mode == Mode::Poly && !out.terms.keys().all(ExpVec::is_polynomial) {
        return Err(Error::Substitution("result left k[x,y]".into()));
    }
    Ok(out)
}

fn substitute_monomial(
    f: &Poly,
    mode: Mode,
    (ex, cx): (ExpVec, &Rat),
    (ey, cy): (ExpVec, &Rat),
) -> Result<Poly> {
    let rat_pow = |c: &Rat, k: i64| -> Rat {
        if k >= 0 {
            num_traits::pow(c.clone(), k as usize)
        } else {
            num_traits::pow(c.recip(), (-k) as usize)
        }
    };
    let mut out = Poly::zero(mode);
    for (e, c) in &f.terms {
        if mode == Mode::Poly
            && ((e.i < 0 && ex != ExpVec::new(0, 0)) || (e.j < 0 && ey != ExpVec::new(0, 0)))
        {
            return Err(Error::Substitution(format!(
                "negative exponent x^{} y^{} applied to non-unit image",
                e.i, e.j
            )));
        }
        let img = ExpVec::new(ex.i * e.i + ey.i * e.j, ex.j * e.i + ey.j * e.j);
        if mode == Mode::Poly && !img.is_polynomial() {
            return Err(Error::Substitution("result left k[x,y]".into()));
        }
        let coeff = c * rat_pow(cx, e.i) * rat_pow(cy, e.j);
        out.add_term(img, coeff);
    }
    Ok(out)
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            mode: self.mode,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// Operator forms panic on a mode mismatch; the `try_` methods report it instead.
macro_rules! poly_binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                self.$via(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

fn write_var(out: &mut String, name: char, k: i64) {
    match k {
        0 => {}
        1 => out.push(name),
        _ => {
            out.push(name);
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

impl fmt::Display for Poly {
    /// Ascending degree, e.g. `1 + y - 2x^2` or `x^-1*y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut mono = String::new();
            write_var(&mut mono, 'x', e.i);
            if e.i != 0 && e.j != 0 {
                mono.push('*');
            }
            write_var(&mut mono, 'y', e.j);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.is_integer() {
                out.push_str(&a.to_string());
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}]({})", self.mode, self)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
