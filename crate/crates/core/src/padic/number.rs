use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::is_prime;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::int_valuation;
use crate::Rational;

/// Prime and working precision for p-adic computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    m: u32,
}

impl PadicContext {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Usage(format!("p must be an odd prime, got {p}")));
        }
        if m == 0 {
            return Err(Error::Usage("precision M must be at least 1".into()));
        }
        Ok(Self { p, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    /// The same prime with `extra` more digits.
    pub fn widened(&self, extra: u32) -> Self {
        Self { p: self.p, m: self.m + extra }
    }

    pub fn from_rational(&self, r: &Rational) -> PadicNumber {
        PadicNumber::from_rational(self.p, r, self.m)
    }

    pub fn from_int(&self, n: i64) -> PadicNumber {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber::zero(self.p, self.m as i64, self.m)
    }

    pub fn one(&self) -> PadicNumber {
        self.from_int(1)
    }
}

/// `p^valuation · unit`, with `unit` known modulo `p^rel`.
///
/// A value with `rel == 0` is indistinguishable from zero; its `valuation`
/// then records the absolute precision `O(p^valuation)`. `cap` is the
/// relative precision used for constants derived from this value
/// (`one_like`, `from_rational_like`).
#[derive(Clone)]
pub struct PadicNumber {
    p: u64,
    valuation: i64,
    unit: BigInt,
    rel: u32,
    cap: u32,
}

/// Equality of the represented residue classes; `cap` is not compared.
impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.valuation == other.valuation && self.rel == other.rel && self.unit == other.unit
    }
}

impl Eq for PadicNumber {}

fn p_pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

impl PadicNumber {
    pub fn zero(p: u64, absolute: i64, cap: u32) -> Self {
        Self { p, valuation: absolute, unit: BigInt::zero(), rel: 0, cap }
    }

    /// `r` to relative precision `rel`.
    pub fn from_rational(p: u64, r: &Rational, rel: u32) -> Self {
        if num_traits::Zero::is_zero(r) {
            return Self::zero(p, rel as i64, rel);
        }
        let vn = int_valuation(r.numer(), p);
        let vd = int_valuation(r.denom(), p);
        let pb = BigInt::from(p);
        let num = r.numer() / num_traits::pow(pb.clone(), vn as usize);
        let den = r.denom() / num_traits::pow(pb, vd as usize);
        let modulus = p_pow(p, rel);
        let den_inv = mod_inverse(&den, &modulus).expect("p-free denominator is invertible");
        let unit = (num * den_inv).mod_floor(&modulus);
        Self { p, valuation: vn as i64 - vd as i64, unit, rel, cap: rel }
    }

    /// The integer `n` known modulo `p^absolute`.
    pub fn from_residue(p: u64, n: &BigInt, absolute: i64, cap: u32) -> Self {
        Self::normalize(p, 0, n.clone(), absolute.max(0) as u32, cap)
    }

    fn normalize(p: u64, valuation: i64, unit: BigInt, rel: u32, cap: u32) -> Self {
        let modulus = p_pow(p, rel);
        let unit = unit.mod_floor(&modulus);
        if unit.is_zero() {
            return Self::zero(p, valuation + rel as i64, cap);
        }
        let k = int_valuation(&unit, p) as u32;
        let unit = unit / p_pow(p, k);
        Self { p, valuation: valuation + k as i64, unit, rel: rel - k, cap }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Valuation, or the absolute precision for a value indistinguishable from zero.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Number of known p-adic digits after the leading one.
    pub fn relative_precision(&self) -> u32 {
        self.rel
    }

    /// The value is known modulo `p^absolute_precision()`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.rel as i64
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn unit_part(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_indistinguishable_from_zero(&self) -> bool {
        self.rel == 0
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let pb = BigInt::from(self.p);
        let mut u = self.unit.clone();
        (0..self.rel)
            .map(|_| {
                let (q, r) = u.div_mod_floor(&pb);
                u = q;
                r.to_u64().unwrap()
            })
            .collect()
    }

    /// The value reduced to an integer in `[0, p^absolute)`; requires nonnegative valuation.
    pub fn residue(&self) -> Option<BigInt> {
        if self.valuation < 0 {
            return None;
        }
        Some(&self.unit * p_pow(self.p, self.valuation as u32))
    }

    /// Drops digits so that the value is known only modulo `p^absolute`.
    pub fn truncate(&self, absolute: i64) -> Self {
        if absolute >= self.absolute_precision() {
            return self.clone();
        }
        if absolute <= self.valuation {
            return Self::zero(self.p, absolute, self.cap);
        }
        let rel = (absolute - self.valuation) as u32;
        Self::normalize(self.p, self.valuation, self.unit.clone(), rel, self.cap)
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    /// Largest `k` with `self ≡ other (mod p^k)` that the known digits can certify.
    pub fn agreement(&self, other: &Self) -> i64 {
        (self.clone() - other.clone()).valuation()
    }

    pub fn is_unit(&self) -> bool {
        self.rel > 0 && self.valuation == 0
    }

    pub fn is_integral(&self) -> bool {
        self.valuation >= 0
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in p-adic arithmetic");
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rel == 0 {
            return None;
        }
        let modulus = p_pow(self.p, self.rel);
        let inv = mod_inverse(&self.unit, &modulus)?;
        Some(Self { p: self.p, valuation: -self.valuation, unit: inv, rel: self.rel, cap: self.cap })
    }

    pub fn pow_i(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow_u(k as u64))
        } else {
            self.inverse().map(|x| x.pow_u(k.unsigned_abs()))
        }
    }

    /// The rational `u / p^{-v}` (or `u · p^v`) with the known digits, for display and tests.
    pub fn to_rational(&self) -> Rational {
        let u = Rational::from_integer(self.unit.clone());
        let pv = Rational::from_integer(BigInt::from(self.p));
        u * crate::rational::rational_pow(&pv, self.valuation)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PadicJson::from(self)).expect("plain struct serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: PadicJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Serialized form: the value is `p^valuation · Σ digits[i] p^i`, known to
/// `precision` digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub valuation: i64,
    pub digits: Vec<u64>,
    pub precision: u32,
}

impl From<&PadicNumber> for PadicJson {
    fn from(x: &PadicNumber) -> Self {
        Self { p: x.p, valuation: x.valuation, digits: x.digits(), precision: x.rel }
    }
}

impl TryFrom<PadicJson> for PadicNumber {
    type Error = Error;

    fn try_from(j: PadicJson) -> Result<Self> {
        if j.p == 2 || !is_prime(j.p) {
            return Err(Error::Parse(format!("p must be an odd prime, got {}", j.p)));
        }
        if j.digits.len() != j.precision as usize || j.digits.iter().any(|&d| d >= j.p) {
            return Err(Error::Parse("digits must be base-p and match the precision".into()));
        }
        if j.precision > 0 && j.digits[0] == 0 {
            return Err(Error::Parse("leading digit of a nonzero value must be nonzero".into()));
        }
        let pb = BigInt::from(j.p);
        let unit = j.digits.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &pb + BigInt::from(d));
        Ok(Self { p: j.p, valuation: j.valuation, unit, rel: j.precision, cap: j.precision.max(1) })
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Padic({self})")
    }
}

impl fmt::Display for PadicNumber {
    /// `digits...` most significant first, e.g. `...1112 (p=3, v=0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rel == 0 {
            return write!(f, "O({}^{})", self.p, self.valuation);
        }
        let d: Vec<String> = self.digits().iter().rev().map(u64::to_string).collect();
        let sep = if self.p > 10 { "," } else { "" };
        write!(f, "{} * {}^{} + O({}^{})", d.join(sep), self.p, self.valuation, self.p, self.absolute_precision())
    }
}

impl Add for PadicNumber {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.check_prime(&rhs);
        let cap = self.cap.max(rhs.cap);
        let abs = self.absolute_precision().min(rhs.absolute_precision());
        let v = self.valuation.min(rhs.valuation);
        if v >= abs {
            return Self::zero(self.p, abs, cap);
        }
        let lift = |x: &Self| &x.unit * p_pow(x.p, (x.valuation - v) as u32);
        Self::normalize(self.p, v, lift(&self) + lift(&rhs), (abs - v) as u32, cap)
    }
}

impl Neg for PadicNumber {
    type Output = Self;

    fn neg(self) -> Self {
        Self::normalize(self.p, self.valuation, -self.unit, self.rel, self.cap)
    }
}

impl Sub for PadicNumber {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for PadicNumber {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.check_prime(&rhs);
        let rel = self.rel.min(rhs.rel);
        Self::normalize(self.p, self.valuation + rhs.valuation, self.unit * rhs.unit, rel, self.cap.max(rhs.cap))
    }
}

impl Div for PadicNumber {
    type Output = Self;

    /// Panics when the divisor is indistinguishable from zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by a p-adic zero")
    }
}

impl Field for PadicNumber {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.cap as i64, self.cap)
    }

    fn one_like(&self) -> Self {
        Self::from_rational(self.p, &Rational::one(), self.cap)
    }

    fn from_rational_like(&self, r: &Rational) -> Self {
        Self::from_rational(self.p, r, self.cap)
    }

    fn is_zero(&self) -> bool {
        self.rel == 0
    }

    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }
}

/// Raises `PrecisionExhausted` when no digit of the value is known.
pub(crate) fn require_digits(x: &PadicNumber) -> Result<()> {
    if x.rel == 0 && x.absolute_precision() <= 0 {
        return Err(Error::PrecisionExhausted { surviving: x.absolute_precision() });
    }
    Ok(())
}
