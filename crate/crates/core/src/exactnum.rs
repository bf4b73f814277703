//! Exact scalars: rationals and elements of a real quadratic field ℚ(√d).
//!
//! Every comparison in this module is decided by integer arithmetic; there is
//! no floating point anywhere on the decision path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0 or +1.
pub fn rat_sign(q: &Rat) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// Squarefree decomposition `n = f² · d` with `d` squarefree, for `n ≥ 0`.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut f = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    (f, d)
}

fn is_squarefree(d: u64) -> bool {
    d == 0 || squarefree_part(d).0 == 1
}

/// An element `p + q·√d` of ℚ(√d), `d ≥ 0` squarefree.
///
/// `d = 0` encodes plain rationals (the radical part is then always zero).
/// `d = 1` is rejected at construction since ℚ(√1) = ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rat,
    radical: Rat,
    d: u64,
}

impl QuadExt {
    pub fn new(rational: Rat, radical: Rat, d: u64) -> Result<Self> {
        if d == 1 || !is_squarefree(d) {
            return Err(Error::Field(format!(
                "discriminant {d} is not a squarefree integer > 1"
            )));
        }
        if d == 0 && !radical.is_zero() {
            return Err(Error::Field("d = 0 carries no radical part".into()));
        }
        Ok(Self::normalize(rational, radical, d))
    }

    pub fn from_rat(q: Rat) -> Self {
        Self {
            rational: q,
            radical: Rat::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `√n` for a non-negative integer `n`, in whichever field it lives.
    pub fn sqrt_of(n: u64) -> Self {
        let (f, d) = squarefree_part(n);
        if d <= 1 {
            Self::from_rat(rat_int((f * d) as i64))
        } else {
            Self {
                rational: Rat::zero(),
                radical: rat_int(f as i64),
                d,
            }
        }
    }

    // A zero radical part always collapses to d = 0 so that equality is structural.
    fn normalize(rational: Rat, radical: Rat, d: u64) -> Self {
        if radical.is_zero() {
            Self {
                rational,
                radical,
                d: 0,
            }
        } else {
            Self {
                rational,
                radical,
                d,
            }
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rat {
        &self.radical
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::Field(format!("cannot mix ℚ(√{a}) with ℚ(√{b})"))),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(Self::normalize(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let dd = Rat::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * dd;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::normalize(rational, radical, d))
    }

    /// Field norm `p² − q²d`.
    pub fn norm(&self) -> Rat {
        &self.rational * &self.rational
            - &self.radical * &self.radical * Rat::from_integer(BigInt::from(self.d))
    }

    pub fn conjugate(&self) -> Self {
        Self::normalize(self.rational.clone(), -self.radical.clone(), self.d)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Field("division by zero in ℚ(√d)".into()));
        }
        let c = self.conjugate();
        Ok(Self::normalize(c.rational / &n, c.radical / &n, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }

    pub fn abs(&self) -> Self {
        if quad_sign(self) < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails only when the two operands live in different fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let diff = self.try_sub(other)?;
        Ok(quad_sign(&diff).cmp(&0))
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let p = self.rational.to_f64().unwrap_or(f64::NAN);
        let q = self.radical.to_f64().unwrap_or(f64::NAN);
        p + q * (self.d as f64).sqrt()
    }
}

/// Exact sign of `p + q√d`.
pub fn quad_sign(q: &QuadExt) -> i32 {
    let sp = rat_sign(&q.rational);
    let sq = rat_sign(&q.radical);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²d
    let p2 = &q.rational * &q.rational;
    let q2d = &q.radical * &q.radical * Rat::from_integer(BigInt::from(q.d));
    match p2.cmp(&q2d) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

/// `|q| ≥ bound`, decided exactly.
pub fn quad_abs_geq(q: &QuadExt, bound: &Rat) -> bool {
    let b = QuadExt::from_rat(bound.clone());
    quad_sign(&q.abs().try_sub(&b).expect("rationals embed in every field")) >= 0
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::normalize(-self.rational, -self.radical, self.d)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl<'a> $tr<&'a QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            /// Panics when mixing two different nonzero discriminants.
            fn $m(self, rhs: &'a QuadExt) -> QuadExt {
                self.$via(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl fmt::Display for QuadExt {
    /// Renders as `p + q*sqrt(d)`; pure rationals render as `p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.radical, self.d)
        }
    }
}

impl serde::Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
