//! Dirichlet characters of odd modulus and the generalized λ-Euler numbers
//! `E_{n,χ}(λ)` attached to them.
//!
//! A character is stored as a table of exponents: `χ(a) = ζ_L^{k(a)}` with
//! `L` the order of χ, or `None` when `gcd(a, d) > 1`. Values in a concrete
//! field (cyclotomic, complex, p-adic) are produced on demand through
//! [`CharacterValues`].

use num_complex::Complex;
use num_integer::Integer;
use serde_json::json;

use crate::apostol::euler_numbers;
use crate::cyclotomic::{euler_phi, Cyclotomic};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::binomial_coefficient;
use crate::series::TruncatedSeries;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
}

/// `(p, k)` pairs with `n = Π p^k`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Smallest primitive root modulo an odd prime power.
pub fn primitive_root(q: u64) -> u64 {
    let phi = euler_phi(q);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..q).find(|&g| g.gcd(&q) == 1 && prime_factors.iter().all(|r| pow_mod(g, phi / r, q) != 1)).unwrap_or(1)
}

impl DirichletCharacter {
    fn normalized(modulus: u64, root: u64, exps: Vec<Option<u64>>) -> Self {
        let order = exps.iter().flatten().fold(1u64, |acc, &k| acc.lcm(&(root / root.gcd(&(k % root)))));
        let exps = exps.into_iter().map(|e| e.map(|k| (k % root) * order / root)).collect();
        Self { modulus, order, exps }
    }

    /// The trivial character modulo `d`.
    pub fn trivial(d: u64) -> Result<Self> {
        check_modulus(d)?;
        let exps = (0..d).map(|a| (a.gcd(&d) == 1 || d == 1).then_some(0)).collect();
        Ok(Self { modulus: d, order: 1, exps })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `Some(k)` with `χ(a) = ζ_L^k`, `L = order()`, or `None` when `χ(a) = 0`.
    pub fn exponent(&self, a: i64) -> Option<u64> {
        self.exps[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, a: i64) -> Cyclotomic {
        match self.exponent(a) {
            Some(k) => Cyclotomic::zeta_pow(self.order, k),
            None => Cyclotomic::from_rational(self.order, &Rational::from_integer(0.into())),
        }
    }

    pub fn complex_value(&self, a: i64) -> Complex<f64> {
        match self.exponent(a) {
            Some(k) => Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / self.order as f64),
            None => Complex::new(0.0, 0.0),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `χ(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.exponent(-1) == Some(0)
    }

    /// Smallest `f | d` such that χ is constant on units congruent mod `f`.
    pub fn conductor(&self) -> u64 {
        let d = self.modulus;
        (1..=d)
            .filter(|f| d.is_multiple_of(*f))
            .find(|&f| (0..d).filter(|a| a % f == 1 % f).all(|a| self.exps[a as usize].is_none_or(|k| k == 0)))
            .unwrap_or(d)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character modulo the conductor inducing χ.
    pub fn primitive(&self) -> Self {
        let f = self.conductor();
        if f == self.modulus {
            return self.clone();
        }
        let exps = (0..f)
            .map(|b| {
                if b.gcd(&f) != 1 && f != 1 {
                    return None;
                }
                let a = (0..self.modulus / f).map(|t| b + t * f).find(|a| a.gcd(&self.modulus) == 1)?;
                self.exps[a as usize]
            })
            .collect::<Vec<_>>();
        let exps = if f == 1 { vec![Some(0)] } else { exps };
        Self::normalized(f, self.order, exps)
    }

    /// The character modulo `m` (an odd multiple of the modulus) induced by χ.
    pub fn induce(&self, m: u64) -> Result<Self> {
        check_modulus(m)?;
        if !m.is_multiple_of(self.modulus) {
            return Err(Error::Usage(format!("{m} is not a multiple of the modulus {}", self.modulus)));
        }
        if m == self.modulus {
            return Ok(self.clone());
        }
        let exps = (0..m).map(|a| if a.gcd(&m) == 1 { self.exps[(a % self.modulus) as usize] } else { None }).collect();
        Ok(Self { modulus: m, order: self.order, exps })
    }

    /// Pointwise product, taken modulo the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let a = self.induce(m).expect("lcm of odd moduli is odd");
        let b = other.induce(m).expect("lcm of odd moduli is odd");
        let root = a.order.lcm(&b.order);
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .map(|(x, y)| Some(x.as_ref()? * (root / a.order) + y.as_ref()? * (root / b.order)))
            .collect();
        Self::normalized(m, root, exps)
    }

    /// `χ^k` for any integer `k`; negative powers conjugate.
    pub fn pow(&self, k: i64) -> Self {
        let e = k.rem_euclid(self.order.max(1) as i64) as u64;
        let exps = self.exps.iter().map(|x| x.map(|v| v * e)).collect();
        Self::normalized(self.modulus, self.order, exps)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<_> = (0..self.modulus as i64).map(|a| self.value(a).to_json()).collect();
        json!({ "modulus": self.modulus, "order": self.order, "values": values })
    }
}

fn check_modulus(d: u64) -> Result<()> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(Error::Usage(format!("character modulus must be odd and positive, got {d}")));
    }
    Ok(())
}

/// All characters modulo an odd `d`.
///
/// `(Z/d)*` is the product of cyclic groups `(Z/p^k)*` with generators the
/// smallest primitive roots `g_i`; the character with index tuple `(j_1, ..)`
/// sends `g_i` to `ζ_{φ(p_i^{k_i})}^{j_i}`. Tuples are enumerated
/// lexicographically, so index 0 is the trivial character.
pub fn characters_mod(d: u64) -> Result<Vec<DirichletCharacter>> {
    check_modulus(d)?;
    if d == 1 {
        return Ok(vec![DirichletCharacter::trivial(1)?]);
    }
    let comps: Vec<(u64, u64, u64)> = factorize(d)
        .into_iter()
        .map(|(p, k)| {
            let q = p.pow(k);
            (q, euler_phi(q), primitive_root(q))
        })
        .collect();
    let exponent = comps.iter().fold(1u64, |acc, c| acc.lcm(&c.1));

    // discrete logs in each component, for every residue mod d
    let logs: Vec<Vec<Option<u64>>> = comps
        .iter()
        .map(|&(q, n, g)| {
            let mut table = vec![None; q as usize];
            let mut x = 1u64;
            for l in 0..n {
                table[x as usize] = Some(l);
                x = x * g % q;
            }
            table
        })
        .collect();

    let mut index = vec![0u64; comps.len()];
    let mut out = Vec::with_capacity(euler_phi(d) as usize);
    loop {
        let exps = (0..d)
            .map(|a| {
                comps.iter().zip(&logs).zip(&index).try_fold(0u64, |acc, ((c, log), j)| {
                    let l = log[(a % c.0) as usize]?;
                    Some((acc + j * l * (exponent / c.1)) % exponent)
                })
            })
            .collect();
        out.push(DirichletCharacter::normalized(d, exponent, exps));

        let mut pos = comps.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < comps[pos].1 {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// The character `a ↦ ζ_{p-1}^{log_g a}` mod `p`, `g` the smallest primitive root;
/// its p-adic image is the Teichmüller character ω.
pub fn teichmuller_character(p: u64) -> Result<DirichletCharacter> {
    if !is_prime(p) || p == 2 {
        return Err(Error::Usage(format!("p must be an odd prime, got {p}")));
    }
    let chars = characters_mod(p)?;
    Ok(chars.into_iter().nth(1).expect("p ≥ 3 has a nontrivial character"))
}

/// The quadratic (Legendre) character modulo an odd prime.
pub fn quadratic_character(p: u64) -> Result<DirichletCharacter> {
    if !is_prime(p) || p == 2 {
        return Err(Error::Usage(format!("p must be an odd prime, got {p}")));
    }
    Ok(teichmuller_character(p)?.pow(((p - 1) / 2) as i64))
}

/// A field in which character values can be realized.
pub trait CharacterValues: Field {
    fn character_value(&self, chi: &DirichletCharacter, a: i64) -> Result<Self>;
}

impl CharacterValues for Cyclotomic {
    fn character_value(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        Ok(chi.value(a))
    }
}

impl CharacterValues for Complex<f64> {
    fn character_value(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        Ok(chi.complex_value(a))
    }
}

impl CharacterValues for Rational {
    fn character_value(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        match (chi.exponent(a), chi.order()) {
            (None, _) => Ok(Rational::from_integer(0.into())),
            (Some(0), _) => Ok(Rational::from_integer(1.into())),
            (Some(_), 2) => Ok(Rational::from_integer((-1).into())),
            _ => Err(Error::Unsupported(format!("character of order {} is not rational", chi.order()))),
        }
    }
}

/// `E_{0,χ}(λ) .. E_{n,χ}(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEulerTable<F> {
    pub chi: DirichletCharacter,
    pub lambda: F,
    pub values: Vec<F>,
}

/// `E_{n,χ}(λ) = d^n Σ_{a<d} (-1)^a λ^a χ(a) E_n(λ^d : a/d)` in any field
/// realizing the character values.
pub fn generalized_euler_numbers_in<F: CharacterValues>(
    chi: &DirichletCharacter,
    lambda: &F,
    n: usize,
) -> Result<GeneralizedEulerTable<F>> {
    let d = chi.modulus();
    let lambda_d = lambda.pow_u(d);
    let table = euler_numbers(&lambda_d, n)?;
    let d_inv = lambda.from_rational_like(&Rational::new(1.into(), (d as i64).into()));
    let mut weights = Vec::with_capacity(d as usize);
    let mut sign_pow = lambda.one_like();
    for a in 0..d {
        weights.push(sign_pow.clone() * lambda.character_value(chi, a as i64)?);
        sign_pow = -(sign_pow * lambda.clone());
    }
    let values = (0..=n)
        .map(|k| {
            let sum = (0..d).fold(lambda.zero_like(), |acc, a| {
                if Field::is_zero(&weights[a as usize]) {
                    return acc;
                }
                let x = lambda.from_i64_like(a as i64) * d_inv.clone();
                acc + weights[a as usize].clone() * table.polynomial(k, &x)
            });
            lambda.from_i64_like(d as i64).pow_u(k as u64) * sum
        })
        .collect();
    Ok(GeneralizedEulerTable { chi: chi.clone(), lambda: lambda.clone(), values })
}

/// Coefficients of `2 Σ_a e^{at} (-1)^a χ(a) λ^a / (λ^d e^{dt} + 1)` by exact series division.
pub fn generalized_oracle_in<F: CharacterValues>(
    chi: &DirichletCharacter,
    lambda: &F,
    n: usize,
) -> Result<GeneralizedEulerTable<F>> {
    let d = chi.modulus();
    let lambda_d = lambda.pow_u(d);
    if (lambda_d.clone() + lambda.one_like()).try_inv().is_none() {
        return Err(Error::Pole(format!("λ^{d} + 1 is not invertible")));
    }
    let mut numerator = TruncatedSeries::constant(lambda.zero_like(), n);
    let mut sign_pow = lambda.one_like();
    for a in 0..d {
        let w = sign_pow.clone() * lambda.character_value(chi, a as i64)? * lambda.from_i64_like(2);
        if !Field::is_zero(&w) {
            numerator = numerator + TruncatedSeries::exp_series(&lambda.from_i64_like(a as i64), n).scale(&w);
        }
        sign_pow = -(sign_pow * lambda.clone());
    }
    let denom = TruncatedSeries::exp_series(&lambda.from_i64_like(d as i64), n).scale(&lambda_d)
        + TruncatedSeries::constant(lambda.one_like(), n);
    let values = numerator.mul(&denom.inverse()?)?.egf_values();
    Ok(GeneralizedEulerTable { chi: chi.clone(), lambda: lambda.clone(), values })
}

/// Exact `E_{n,χ}(λ)` for rational λ, valued in `Q(ζ_L)`.
pub fn generalized_euler_numbers(
    chi: &DirichletCharacter,
    lambda: &Rational,
    n: usize,
) -> Result<GeneralizedEulerTable<Cyclotomic>> {
    generalized_euler_numbers_in(chi, &Cyclotomic::from_rational(chi.order(), lambda), n)
}

pub fn generalized_oracle(
    chi: &DirichletCharacter,
    lambda: &Rational,
    n: usize,
) -> Result<GeneralizedEulerTable<Cyclotomic>> {
    generalized_oracle_in(chi, &Cyclotomic::from_rational(chi.order(), lambda), n)
}

/// `E_{n,χ}(λ : x) = Σ_l C(n,l) E_{l,χ}(λ) x^{n-l}`.
pub fn generalized_euler_polynomial<F: Field>(table: &GeneralizedEulerTable<F>, n: usize, x: &F) -> F {
    let mut acc = x.zero_like();
    let mut x_pow = x.one_like();
    for l in (0..=n).rev() {
        let c = x.from_rational_like(&Rational::from_integer(binomial_coefficient(n as u64, l as u64)));
        acc = acc + c * table.values[l].clone() * x_pow.clone();
        x_pow = x_pow * x.clone();
    }
    acc
}
