//! Truncated formal power series `c_0 + c_1 t + ... + c_T t^T` over a [`Field`].

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::factorial;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<F> {
    coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    /// Series whose order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<F>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a truncated series needs at least the constant term".into()));
        }
        Ok(Self { coeffs })
    }

    /// The constant series `c` truncated at `order`.
    pub fn constant(c: F, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// `e^{c t}` truncated at `order`: coefficient of `t^k` is `c^k / k!`.
    pub fn exp_series(c: &F, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = c.one_like();
        coeffs.push(term.clone());
        for k in 1..=order {
            let inv_k = c.from_rational_like(&Rational::new(1.into(), (k as i64).into()));
            term = term * c.clone() * inv_k;
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    /// `k! c_k` for every k, i.e. the exponential-generating-function values.
    pub fn egf_values(&self) -> Vec<F> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * c.from_rational_like(&Rational::from_integer(factorial(k as u64))))
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Usage(format!("series orders differ ({} vs {})", self.order(), other.order())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let coeffs = (0..=order)
            .map(|k| {
                (1..=k).fold(self.coeffs[0].clone() * other.coeffs[k].clone(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// The series `b` with `self * b = 1` to the truncation order.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inv().ok_or(Error::NonInvertibleSeries)?;
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let acc =
                (1..=k).fold(self.coeffs[0].zero_like(), |acc, i| acc + self.coeffs[i].clone() * out[k - i].clone());
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// Horner evaluation at a point of the same field.
    pub fn evaluate(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(x.zero_like(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl TruncatedSeries<Rational> {
    /// Evaluates a rational series at a point of any field containing Q.
    pub fn evaluate_in<G: Field>(&self, x: &G) -> G {
        self.coeffs.iter().rev().fold(x.zero_like(), |acc, c| acc * x.clone() + x.from_rational_like(c))
    }
}

pub fn series_mul<F: Field>(a: &TruncatedSeries<F>, b: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    a.mul(b)
}

pub fn series_inverse<F: Field>(a: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    a.inverse()
}

pub fn exp_series<F: Field>(c: &F, order: usize) -> TruncatedSeries<F> {
    TruncatedSeries::exp_series(c, order)
}

impl<F: Field> Add for TruncatedSeries<F> {
    type Output = Self;

    /// Panics on mismatched orders; use [`TruncatedSeries::try_add`] to get an error instead.
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("series orders must match")
    }
}

impl<F: Field> Neg for TruncatedSeries<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<F: Field> Sub for TruncatedSeries<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}
