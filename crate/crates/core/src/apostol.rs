//! λ-Euler (Apostol–Euler) numbers and polynomials, Bernoulli and
//! λ-Bernoulli numbers, and the exact identities relating them.
//!
//! The λ-Euler numbers are the coefficients of
//!
//! ```text
//! 2 / (λ e^t + 1) = Σ E_n(λ) t^n / n!
//! ```
//!
//! and the polynomials those of `2 e^{xt} / (λ e^t + 1)`. Multiplying through
//! by `λ e^t + 1` gives the recurrence used here:
//! `E_0 = 2/(λ+1)`, `E_m = -λ/(λ+1) Σ_{k<m} C(m,k) E_k`.

use serde_json::json;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rational::{binomial_coefficient, format_rational};
use crate::series::TruncatedSeries;
use crate::Rational;

/// `E_0(λ) .. E_n(λ)` for a fixed λ.
#[derive(Debug, Clone, PartialEq)]
pub struct ApostolEulerTable<F> {
    pub lambda: F,
    pub values: Vec<F>,
}

impl<F: Field> ApostolEulerTable<F> {
    pub fn get(&self, k: usize) -> &F {
        &self.values[k]
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `E_n(λ : x) = Σ_l C(n,l) E_l(λ) x^{n-l}`; requires `n <= max_index()`.
    pub fn polynomial(&self, n: usize, x: &F) -> F {
        let mut x_pow = x.one_like();
        let mut acc = x.zero_like();
        for l in (0..=n).rev() {
            acc = acc + binom_in(x, n, l) * self.values[l].clone() * x_pow.clone();
            x_pow = x_pow * x.clone();
        }
        acc
    }
}

impl ApostolEulerTable<Rational> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda": format_rational(&self.lambda),
            "n": self.max_index(),
            "values": self.values.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

fn binom_in<F: Field>(proto: &F, n: usize, k: usize) -> F {
    proto.from_rational_like(&Rational::from_integer(binomial_coefficient(n as u64, k as u64)))
}

fn pole_check<F: Field>(lambda: &F) -> Result<F> {
    let shifted = lambda.clone() + lambda.one_like();
    shifted.try_inv().ok_or_else(|| Error::Pole("λ = -1 (λ + 1 is not invertible)".into()))
}

/// λ-Euler numbers by the recurrence.
pub fn euler_numbers<F: Field>(lambda: &F, n: usize) -> Result<ApostolEulerTable<F>> {
    let inv = pole_check(lambda)?;
    let two = lambda.from_i64_like(2);
    let factor = -(lambda.clone() * inv.clone());
    let mut values = Vec::with_capacity(n + 1);
    values.push(two * inv);
    for m in 1..=n {
        let sum = (0..m).fold(lambda.zero_like(), |acc, k| acc + binom_in(lambda, m, k) * values[k].clone());
        values.push(factor.clone() * sum);
    }
    Ok(ApostolEulerTable { lambda: lambda.clone(), values })
}

/// λ-Euler numbers by exact inversion of `(λ e^t + 1)/2` as a power series.
pub fn euler_numbers_series_oracle<F: Field>(lambda: &F, n: usize) -> Result<ApostolEulerTable<F>> {
    pole_check(lambda)?;
    let half = lambda.from_rational_like(&Rational::new(1.into(), 2.into()));
    let denom = (TruncatedSeries::exp_series(&lambda.one_like(), n).scale(lambda)
        + TruncatedSeries::constant(lambda.one_like(), n))
    .scale(&half);
    let values = denom.inverse()?.egf_values();
    Ok(ApostolEulerTable { lambda: lambda.clone(), values })
}

/// `E_n(λ : x)`.
pub fn euler_polynomial<F: Field>(lambda: &F, n: usize, x: &F) -> Result<F> {
    Ok(euler_numbers(lambda, n)?.polynomial(n, x))
}

/// Right-hand side of the distribution relation
/// `d^n Σ_{a<d} (-1)^a λ^a E_n(λ^d : (a+x)/d)` for odd `d`.
pub fn distribution_rhs<F: Field>(lambda: &F, n: usize, d: u64, x: &F) -> Result<F> {
    if d == 0 || d.is_multiple_of(2) {
        return Err(Error::Usage(format!("distribution relation requires odd d, got {d}")));
    }
    pole_check(lambda)?;
    let lambda_d = lambda.pow_u(d);
    let table = euler_numbers(&lambda_d, n)?;
    let d_f = lambda.from_i64_like(d as i64);
    let d_inv = d_f.try_inv().expect("d is a nonzero integer");
    let mut sign_pow = lambda.one_like();
    let mut acc = lambda.zero_like();
    for a in 0..d {
        let point = (lambda.from_i64_like(a as i64) + x.clone()) * d_inv.clone();
        acc = acc + sign_pow.clone() * table.polynomial(n, &point);
        sign_pow = -(sign_pow * lambda.clone());
    }
    Ok(d_f.pow_u(n as u64) * acc)
}

/// Integer power with the `0^0 = 1` convention.
fn int_pow<F: Field>(proto: &F, base: u64, exp: usize) -> F {
    proto.from_i64_like(base as i64).pow_u(exp as u64)
}

/// Both sides of the alternating power-sum identity, `n` even:
///
/// ```text
/// 2 Σ_{l<n} (-1)^{l-1} λ^l l^m  =  λ^n Σ_{l<m} C(m,l) E_l(λ) n^{m-l} + (λ^n - 1) E_m(λ)
/// ```
pub fn theorem5_sides<F: Field>(lambda: &F, n: u64, m: usize) -> Result<(F, F)> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Usage(format!("n must be a positive even integer, got {n}")));
    }
    let table = euler_numbers(lambda, m)?;
    let mut lhs = lambda.zero_like();
    let mut lambda_pow = lambda.one_like();
    for l in 0..n {
        let term = lambda_pow.clone() * int_pow(lambda, l, m);
        // (-1)^{l-1}
        lhs = if l % 2 == 1 { lhs + term } else { lhs - term };
        lambda_pow = lambda_pow * lambda.clone();
    }
    let lhs = lhs * lambda.from_i64_like(2);

    let lambda_n = lambda_pow;
    let inner = (0..m).fold(lambda.zero_like(), |acc, l| {
        acc + binom_in(lambda, m, l) * table.values[l].clone() * int_pow(lambda, n, m - l)
    });
    let rhs = lambda_n.clone() * inner + (lambda_n - lambda.one_like()) * table.values[m].clone();
    Ok((lhs, rhs))
}

/// Both sides of `E_m(λ) - λ^n E_m(λ : n) = 2 Σ_{l<n} (-1)^l λ^l l^m`, `n` even.
pub fn telescoping_sides<F: Field>(lambda: &F, n: u64, m: usize) -> Result<(F, F)> {
    if !n.is_multiple_of(2) {
        return Err(Error::Usage(format!("n must be even, got {n}")));
    }
    let table = euler_numbers(lambda, m)?;
    let lhs = table.values[m].clone() - lambda.pow_u(n) * table.polynomial(m, &lambda.from_i64_like(n as i64));
    let mut rhs = lambda.zero_like();
    let mut lambda_pow = lambda.one_like();
    for l in 0..n {
        let term = lambda_pow.clone() * int_pow(lambda, l, m);
        rhs = if l % 2 == 0 { rhs + term } else { rhs - term };
        lambda_pow = lambda_pow * lambda.clone();
    }
    Ok((lhs, rhs * lambda.from_i64_like(2)))
}

/// `B_0 .. B_n` with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    pub values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.values.len() - 1,
            "values": self.values.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

pub fn bernoulli_numbers(n: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
    values.push(Rational::from_integer(1.into()));
    for m in 1..=n {
        let sum: Rational =
            (0..m).map(|k| Rational::from_integer(binomial_coefficient(m as u64 + 1, k as u64)) * &values[k]).sum();
        values.push(-sum / Rational::from_integer((m as i64 + 1).into()));
    }
    BernoulliTable { values }
}

/// `B_0(λ) .. B_n(λ)` for λ a root of unity other than 1, from
/// `t / (λ e^t - 1) = Σ B_n(λ) t^n / n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaBernoulliTable {
    pub lambda: Cyclotomic,
    pub values: Vec<Cyclotomic>,
}

impl LambdaBernoulliTable {
    pub fn polynomial(&self, n: usize, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = x.zero_like();
        let mut x_pow = x.one_like();
        for k in (0..=n).rev() {
            acc = acc + binom_in(x, n, k) * self.values[k].clone() * x_pow.clone();
            x_pow = x_pow * x.clone();
        }
        acc
    }
}

pub fn lambda_bernoulli_numbers(lambda: &Cyclotomic, n: usize) -> Result<LambdaBernoulliTable> {
    if lambda.is_one() {
        return Err(Error::Domain("λ-Bernoulli requires λ ≠ 1 in T_p; use bernoulli_numbers".into()));
    }
    if !lambda.is_root_of_unity() {
        return Err(Error::Domain(format!("λ = {lambda} is not a root of unity")));
    }
    let inv = (lambda.clone() - lambda.one_like()).try_inv().expect("λ - 1 is nonzero for a root of unity λ ≠ 1");
    // (λ-1) B_0 = 0, and (λ-1) B_m + λ Σ_{k<m} C(m,k) B_k = [m = 1].
    let mut values = vec![lambda.zero_like()];
    for m in 1..=n {
        let sum = (0..m).fold(lambda.zero_like(), |acc, k| acc + binom_in(lambda, m, k) * values[k].clone());
        let delta = if m == 1 { lambda.one_like() } else { lambda.zero_like() };
        values.push((delta - lambda.clone() * sum) * inv.clone());
    }
    Ok(LambdaBernoulliTable { lambda: lambda.clone(), values })
}

/// `B_n(λ ; x) = Σ_k C(n,k) B_k(λ) x^{n-k}`.
pub fn lambda_bernoulli(lambda: &Cyclotomic, n: usize, x: &Cyclotomic) -> Result<Cyclotomic> {
    Ok(lambda_bernoulli_numbers(lambda, n)?.polynomial(n, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn closed_forms_for_first_two_numbers() {
        for lambda in [int(1), int(2), rat(1, 2), rat(-1, 3), rat(3, 5), int(7)] {
            let t = euler_numbers(&lambda, 2).unwrap();
            let l1 = &lambda + int(1);
            assert_eq!(t.values[0], int(2) / &l1);
            assert_eq!(t.values[1], int(-2) * &lambda / (&l1 * &l1));
            // Consistent with the generating function; see the known-typo test below.
            assert_eq!(t.values[2], (int(2) * &lambda * &lambda - int(2) * &lambda) / (&l1 * &l1 * &l1));
        }
    }

    #[test]
    fn alternative_second_number_formula_fails_at_one() {
        // (4λ² - 2λ + 2)/(λ+1)³ gives 1/2 at λ = 1, but 2/(e^t+1) has no t² term.
        let lambda = int(1);
        let alternative = (int(4) - int(2) + int(2)) / int(8);
        let computed = euler_numbers(&lambda, 2).unwrap().values[2].clone();
        assert_eq!(computed, int(0));
        assert_ne!(alternative, computed);
    }

    #[test]
    fn classical_values_at_lambda_one() {
        let t = euler_numbers(&int(1), 3).unwrap();
        assert_eq!(t.values, vec![int(1), rat(-1, 2), int(0), rat(1, 4)]);
        assert_eq!(euler_numbers(&int(2), 2).unwrap().values[2], rat(4, 27));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(euler_numbers_series_oracle(&int(1), 6).unwrap(), euler_numbers(&int(1), 6).unwrap());
        assert_eq!(euler_numbers_series_oracle(&rat(1, 2), 0).unwrap().values[0], rat(4, 3));
        assert_eq!(euler_numbers_series_oracle(&rat(-1, 3), 1).unwrap().values[1], rat(3, 2));
    }

    #[test]
    fn pole_at_minus_one() {
        assert!(matches!(euler_numbers(&int(-1), 3), Err(Error::Pole(_))));
        assert!(matches!(euler_numbers_series_oracle(&int(-1), 3), Err(Error::Pole(_))));
        assert!(matches!(euler_polynomial(&int(-1), 2, &int(0)), Err(Error::Pole(_))));
    }

    #[test]
    fn polynomial_examples() {
        for lambda in [int(1), rat(1, 2), int(5)] {
            for x in [int(0), rat(3, 7)] {
                assert_eq!(euler_polynomial(&lambda, 0, &x).unwrap(), int(2) / (&lambda + int(1)));
            }
        }
        assert_eq!(euler_polynomial(&rat(1, 2), 1, &int(1)).unwrap(), rat(8, 9));
        for k in 0..6 {
            let x = rat(5, 3);
            assert_eq!(euler_polynomial(&int(0), k, &x).unwrap(), int(2) * num_traits::pow(x, k));
        }
    }

    #[test]
    fn distribution_examples() {
        let x = rat(2, 7);
        assert_eq!(distribution_rhs(&int(3), 4, 1, &x).unwrap(), euler_polynomial(&int(3), 4, &x).unwrap());
        assert_eq!(distribution_rhs(&int(1), 0, 3, &int(0)).unwrap(), int(1));
        let half = rat(1, 2);
        assert_eq!(distribution_rhs(&int(2), 3, 5, &half).unwrap(), euler_polynomial(&int(2), 3, &half).unwrap());
        assert!(matches!(distribution_rhs(&int(2), 3, 4, &half), Err(Error::Usage(_))));
    }

    #[test]
    fn theorem5_examples() {
        assert_eq!(theorem5_sides(&int(1), 2, 1).unwrap(), (int(2), int(2)));
        assert_eq!(theorem5_sides(&int(1), 2, 0).unwrap(), (int(0), int(0)));
        let (l, r) = theorem5_sides(&int(2), 4, 3).unwrap();
        assert_eq!(l, r);
        assert!(matches!(theorem5_sides(&int(2), 3, 3), Err(Error::Usage(_))));
    }

    #[test]
    fn telescoping_identity() {
        for lambda in [int(1), int(2), rat(-1, 3)] {
            for n in [2, 4, 6] {
                for m in 0..8 {
                    let (l, r) = telescoping_sides(&lambda, n, m).unwrap();
                    assert_eq!(l, r, "λ={lambda} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        let b = bernoulli_numbers(12).values;
        assert_eq!(&b[..3], &[int(1), rat(-1, 2), rat(1, 6)]);
        assert_eq!(b[4], rat(-1, 30));
        for k in (3..=11).step_by(2) {
            assert_eq!(b[k], int(0));
        }
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_invariant() {
        let b = bernoulli_numbers(20).values;
        for m in 1..20u64 {
            let s: Rational =
                (0..=m).map(|k| Rational::from_integer(binomial_coefficient(m + 1, k)) * &b[k as usize]).sum();
            assert_eq!(s, int(0));
        }
    }

    #[test]
    fn lambda_bernoulli_examples() {
        let minus_one = Cyclotomic::from_rational(2, &int(-1));
        let zero = Cyclotomic::from_rational(2, &int(0));
        assert_eq!(lambda_bernoulli(&minus_one, 0, &zero).unwrap(), zero);
        assert_eq!(lambda_bernoulli(&minus_one, 1, &zero).unwrap(), Cyclotomic::from_rational(2, &rat(-1, 2)));

        let z3 = Cyclotomic::zeta(3);
        let zero3 = z3.zero_like();
        let expect = (z3.clone() - z3.one_like()).try_inv().unwrap();
        assert_eq!(lambda_bernoulli(&z3, 1, &zero3).unwrap(), expect);

        assert!(matches!(lambda_bernoulli(&z3.one_like(), 1, &zero3), Err(Error::Domain(_))));
        let two = Cyclotomic::from_rational(3, &int(2));
        assert!(matches!(lambda_bernoulli(&two, 1, &zero3), Err(Error::Domain(_))));
    }

    #[test]
    fn lambda_bernoulli_table_satisfies_recurrence() {
        let z5 = Cyclotomic::zeta(5);
        let t = lambda_bernoulli_numbers(&z5, 8).unwrap();
        assert!(Field::is_zero(&((z5.clone() - z5.one_like()) * t.values[0].clone())));
        for m in 1..=8 {
            let s = (0..=m).fold(z5.zero_like(), |acc, k| acc + binom_in(&z5, m, k) * t.values[k].clone());
            let lhs = z5.clone() * s - t.values[m].clone();
            let expect = if m == 1 { z5.one_like() } else { z5.zero_like() };
            assert_eq!(lhs, expect, "m={m}");
        }
    }

    #[test]
    fn table_json_shape() {
        let j = euler_numbers(&int(2), 2).unwrap().to_json();
        assert_eq!(j["lambda"], "2");
        assert_eq!(j["n"], 2);
        assert_eq!(j["values"], json!(["2/3", "-4/9", "4/27"]));
    }
}
