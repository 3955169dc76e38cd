//! Exact coefficient fields.
//!
//! Two modes are supported: arbitrary-precision rationals ([`Rational`]), which
//! model characteristic zero and are authoritative, and residues modulo a
//! runtime prime ([`Zp`]), the fast mode.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conventional computer-algebra prime used for the fast mode.
pub const DEFAULT_PRIME: u32 = 32003;
/// Fallback prime used when [`DEFAULT_PRIME`] is flagged unlucky.
pub const SECOND_PRIME: u32 = 32009;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldMode {
    Rational,
    Prime(u32),
}

impl FieldMode {
    /// Builds a prime mode, rejecting non-primes.
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldMode::Prime(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not a prime")))
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "Q"),
            FieldMode::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldMode {
    type Err = Error;

    /// Accepts `q`, `Q`, `p` (default prime) or `p:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(FieldMode::Rational),
            "p" | "P" => Ok(FieldMode::Prime(DEFAULT_PRIME)),
            other => {
                let digits = other
                    .strip_prefix("p:")
                    .or_else(|| other.strip_prefix("P:"))
                    .ok_or_else(|| Error::Parse(format!("unknown field mode `{other}`")))?;
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime `{digits}`")))?;
                FieldMode::prime(p)
            }
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
///
/// Elements carry enough information to do arithmetic on their own; the
/// [`FieldMode`] is needed only to create constants.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_i64(v: i64, mode: FieldMode) -> Self;
    fn from_bigint(v: &BigInt, mode: FieldMode) -> Self;
    fn mode(&self) -> FieldMode;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Result<Self>;

    fn zero(mode: FieldMode) -> Self {
        Self::from_i64(0, mode)
    }

    fn one(mode: FieldMode) -> Self {
        Self::from_i64(1, mode)
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// Rescales a nonzero row vector (given by its nonzero entries, leading
    /// entry first) to a canonical representative of its line. Rationals
    /// become primitive integer vectors with positive lead; residues become
    /// monic.
    fn canonical_scale(entries: &mut [Self]);

    /// Integer view of the element, if it has one (used when printing
    /// polynomials in the integer ideal format).
    fn to_integer(&self) -> Option<BigInt>;
}

/// A rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Field for Rational {
    fn from_i64(v: i64, _mode: FieldMode) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    fn from_bigint(v: &BigInt, _mode: FieldMode) -> Self {
        Rational(BigRational::from_integer(v.clone()))
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Rational
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn canonical_scale(entries: &mut [Self]) {
        if entries.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for e in entries.iter() {
            den_lcm = den_lcm.lcm(e.0.denom());
        }
        let mut num_gcd = BigInt::zero();
        for e in entries.iter() {
            let scaled = e.0.numer() * (&den_lcm / e.0.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            return;
        }
        if entries[0].0.is_negative() {
            num_gcd = -num_gcd;
        }
        let factor = BigRational::new(den_lcm, num_gcd);
        if factor.is_one() {
            return;
        }
        for e in entries.iter_mut() {
            e.0 = &e.0 * &factor;
        }
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.numer().clone())
    }
}

/// A residue modulo a prime `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Zp {
    value: u32,
    modulus: u32,
}

impl Zp {
    pub fn new(v: i64, p: u32) -> Self {
        Zp {
            value: v.rem_euclid(p as i64) as u32,
            modulus: p,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between different prime fields"
        );
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Zp {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let s = self.value as u64 + rhs.value as u64;
        let m = self.modulus as u64;
        Zp {
            value: if s >= m { (s - m) as u32 } else { s as u32 },
            modulus: self.modulus,
        }
    }
}

impl Sub for Zp {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            (self.value as u64 + self.modulus as u64 - rhs.value as u64) as u32
        };
        Zp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Zp {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        Zp {
            value: ((self.value as u64 * rhs.value as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Zp {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Zp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Field for Zp {
    fn from_i64(v: i64, mode: FieldMode) -> Self {
        match mode {
            FieldMode::Prime(p) => Zp::new(v, p),
            FieldMode::Rational => panic!("Zp constructed in rational mode"),
        }
    }

    fn from_bigint(v: &BigInt, mode: FieldMode) -> Self {
        match mode {
            FieldMode::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Zp::new(r.to_i64().expect("residue fits"), p)
            }
            FieldMode::Rational => panic!("Zp constructed in rational mode"),
        }
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Prime(self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(Zp::new(t0, self.modulus))
    }

    fn canonical_scale(entries: &mut [Self]) {
        let Some(lead) = entries.first().copied() else {
            return;
        };
        if lead.is_one() {
            return;
        }
        let inv = lead.inv().expect("leading entry is nonzero");
        for e in entries.iter_mut() {
            *e = *e * inv;
        }
    }

    fn to_integer(&self) -> Option<BigInt> {
        // symmetric representative
        let v = self.value as i64;
        let p = self.modulus as i64;
        Some(BigInt::from(if v > p / 2 { v - p } else { v }))
    }
}
