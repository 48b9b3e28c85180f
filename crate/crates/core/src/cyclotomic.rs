//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is stored in the power basis `1, ζ, ..., ζ^{φ(m)-1}` reduced
//! modulo the m-th cyclotomic polynomial. Elements of different fields are
//! combined in `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{rational_to_float, Field};
use crate::rational::format_rational;
use crate::Rational;

type Poly = Vec<Rational>;

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 = Π_{d | m} Φ_d(x)
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    let out = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, out.clone());
    out
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn reduce(mut poly: Poly, m: u64) -> Poly {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if Zero::is_zero(&c) {
            continue;
        }
        for (j, pj) in phi.iter().enumerate().take(deg) {
            poly[i - deg + j] -= &c * Rational::from_integer(pj.clone());
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (quot, rem)
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    m: u64,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(m: u64, r: &Rational) -> Self {
        let deg = euler_phi(m) as usize;
        let mut coords = vec![Rational::zero(); deg];
        coords[0] = r.clone();
        Self { m, coords }
    }

    /// `ζ_m^k`, with `ζ_m = e^{2πi/m}` under the complex embedding.
    pub fn zeta_pow(m: u64, k: u64) -> Self {
        let k = (k % m) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Self { m, coords: reduce(poly, m) }
    }

    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Builds an element from power-basis coordinates, reducing if needed.
    pub fn from_coords(m: u64, coords: Vec<Rational>) -> Self {
        Self { m, coords: reduce(coords, m) }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The same element viewed in `Q(ζ_n)`; `n` must be a multiple of `m`.
    pub fn lift(&self, n: u64) -> Self {
        assert!(n.is_multiple_of(self.m), "cannot lift Q(ζ_{}) into Q(ζ_{n})", self.m);
        if n == self.m {
            return self.clone();
        }
        let step = (n / self.m) as usize;
        let mut poly = vec![Rational::zero(); n as usize];
        for (i, c) in self.coords.iter().enumerate() {
            poly[(i * step) % n as usize] += c;
        }
        Self { m: n, coords: reduce(poly, n) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let n = self.m.lcm(&other.m);
        (self.lift(n), other.lift(n))
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// True when some power of `self` is 1. Roots of unity in `Q(ζ_m)` are `±ζ_m^j`,
    /// so it suffices to test the exponent `2m`.
    pub fn is_root_of_unity(&self) -> bool {
        !Field::is_zero(self) && self.pow_u(2 * self.m).is_one()
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let theta = std::f64::consts::TAU / self.m as f64;
        self.coords.iter().enumerate().fold(Complex::new(0.0, 0.0), |acc, (i, c)| {
            acc + Complex::from_polar(1.0, theta * i as f64) * rational_to_float::<f64>(c)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(|c| serde_json::Value::String(format_rational(c))).collect())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coords == other.coords;
        }
        let (a, b) = self.common(other);
        a.coords == b.coords
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let text = format_rational(&c.abs());
            match (first, c.is_negative()) {
                (true, false) => {}
                (true, true) => write!(f, "-")?,
                (false, false) => write!(f, " + ")?,
                (false, true) => write!(f, " - ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*ζ{}", self.m)?,
                _ => write!(f, "{text}*ζ{}^{i}", self.m)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for Cyclotomic {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b) = if self.m == rhs.m { (self, rhs) } else { self.common(&rhs) };
        let coords = a.coords.into_iter().zip(b.coords).map(|(x, y)| x + y).collect();
        Self { m: a.m, coords }
    }
}

impl Neg for Cyclotomic {
    type Output = Self;

    fn neg(self) -> Self {
        Self { m: self.m, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for Cyclotomic {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = if self.m == rhs.m { (self, rhs) } else { self.common(&rhs) };
        if let Some(r) = b.as_rational() {
            return Self { m: a.m, coords: a.coords.into_iter().map(|c| c * &r).collect() };
        }
        if let Some(r) = a.as_rational() {
            return Self { m: b.m, coords: b.coords.into_iter().map(|c| c * &r).collect() };
        }
        Self { m: a.m, coords: reduce(poly_mul(&a.coords, &b.coords), a.m) }
    }
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Self::from_rational(self.m, &Rational::zero())
    }

    fn one_like(&self) -> Self {
        Self::from_rational(self.m, &Rational::one())
    }

    fn from_rational_like(&self, r: &Rational) -> Self {
        Self::from_rational(self.m, r)
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn try_inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.m, &r.recip()));
        }
        // Extended Euclid in Q[x] against the irreducible Φ_m.
        let modulus: Poly = cyclotomic_polynomial(self.m).iter().map(|c| Rational::from_integer(c.clone())).collect();
        let (mut r0, mut r1) = (modulus, trim(self.coords.clone()));
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut inv: Poly = s0.into_iter().map(|x| x * &c).collect();
        inv.resize(inv.len().max(1), Rational::zero());
        Some(Self { m: self.m, coords: reduce(inv, self.m) })
    }
}
