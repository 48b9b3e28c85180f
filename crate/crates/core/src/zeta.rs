//! Archimedean λ-zeta, λ-l and partial λ-zeta functions on the region where
//! their defining series converge (`|λ| < 1`).
//!
//! ```text
//! ζ_λ(s, x) = 2 Σ_{n≥0} (-1)^n λ^n / (n+x)^s
//! l_λ(s, χ) = 2 Σ_{n≥1} (-1)^n χ(n) λ^n / n^s
//! H_λ(s, a | F) = ((-1)^a λ^a / 2) F^{-s} ζ_{λ^F}(s, a/F)
//! ```

// `!(a < b)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceleration {
    Direct,
    /// Repeated averaging of partial sums (Euler transform); used only when λ > 0.
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvalConfig<T> {
    max_terms: usize,
    acceleration: Acceleration,
    target_tolerance: T,
}

impl<T: Float> SeriesEvalConfig<T> {
    pub fn new(max_terms: usize, acceleration: Acceleration, target_tolerance: T) -> Result<Self> {
        if max_terms < 8 {
            return Err(Error::Usage(format!("max_terms must be at least 8, got {max_terms}")));
        }
        if !(target_tolerance > T::zero()) {
            return Err(Error::Usage("target tolerance must be positive".into()));
        }
        Ok(Self { max_terms, acceleration, target_tolerance })
    }

    /// Direct summation for `λ <= 0.8`, alternating acceleration above.
    pub fn auto(lambda: T) -> Self {
        let acceleration =
            if lambda > T::from(0.8).unwrap() { Acceleration::Alternating } else { Acceleration::Direct };
        Self { max_terms: 100_000, acceleration, target_tolerance: T::from(1e-12).unwrap() }
    }

    pub fn with_tolerance(mut self, tol: T) -> Self {
        self.target_tolerance = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms.max(8);
        self
    }

    pub fn with_acceleration(mut self, acceleration: Acceleration) -> Self {
        self.acceleration = acceleration;
        self
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn acceleration(&self) -> Acceleration {
        self.acceleration
    }

    pub fn target_tolerance(&self) -> T {
        self.target_tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Complex<T>,
    pub terms_used: usize,
}

fn not_met<T: Float>(partial: Complex<T>, terms: usize) -> Error {
    Error::ToleranceNotMet {
        re: partial.re.to_f64().unwrap_or(f64::NAN),
        im: partial.im.to_f64().unwrap_or(f64::NAN),
        terms,
    }
}

fn check_lambda<T: Float>(lambda: T) -> Result<()> {
    if !(lambda.abs() < T::one()) {
        return Err(Error::Domain(format!("series requires |λ| < 1, got λ = {}", lambda.to_f64().unwrap_or(f64::NAN))));
    }
    Ok(())
}

/// `(n + x)^{-s}` for real `n + x > 0`; integer `s` avoids the `exp(-s ln b)`
/// round trip, whose relative error grows like `|s ln b|` ulps.
fn pow_neg<T: Float>(base: T, s: Complex<T>) -> Complex<T> {
    if s.im == T::zero() && s.re == s.re.round() && s.re.abs() <= T::from(1024).unwrap() {
        let k = s.re.to_i32().expect("bounded integer");
        return Complex::new(base.powi(-k), T::zero());
    }
    (-s * base.ln()).exp()
}

/// Sums `2 Σ_{n≥0} (-1)^n λ^n c_n (n+x)^{-s}` where `c_n` is a bounded weight
/// (`|c_n| <= 1`), stopping once a geometric tail bound drops below the tolerance.
fn direct_sum<T: Float>(
    s: Complex<T>,
    x: T,
    lambda: T,
    weight: impl Fn(usize) -> Complex<T>,
    cfg: &SeriesEvalConfig<T>,
) -> Result<SeriesValue<T>> {
    let two = T::from(2).unwrap();
    let abs_lambda = lambda.abs();
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut lambda_pow = T::one();
    for n in 0..cfg.max_terms {
        let nx = T::from(n).unwrap() + x;
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        sum = sum + weight(n) * pow_neg(nx, s) * (sign * lambda_pow * two);
        lambda_pow = lambda_pow * lambda;

        if abs_lambda == T::zero() {
            return Ok(SeriesValue { value: sum, terms_used: n + 1 });
        }
        // |t_{k+1}/t_k| <= |λ| ((k+1+x)/(k+x))^{-Re s} is largest at k = n+1 when Re s < 0.
        let next_base = nx + T::one();
        let next_mag = two * lambda_pow.abs() * next_base.powf(-s.re);
        let ratio =
            if s.re < T::zero() { abs_lambda * ((next_base + T::one()) / next_base).powf(-s.re) } else { abs_lambda };
        if ratio < T::one() && next_mag / (T::one() - ratio) < cfg.target_tolerance {
            return Ok(SeriesValue { value: sum, terms_used: n + 1 });
        }
    }
    Err(not_met(sum, cfg.max_terms))
}

/// Euler transform of an alternating series with smooth positive-direction terms:
/// the partial sums are averaged pairwise until one value remains. The number
/// of terms doubles until two consecutive estimates agree to the tolerance.
fn averaged_sum<T: Float>(term: impl Fn(usize) -> Complex<T>, cfg: &SeriesEvalConfig<T>) -> Result<SeriesValue<T>> {
    let half = T::from(0.5).unwrap();
    let mut terms: Vec<Complex<T>> = Vec::new();
    let mut previous: Option<Complex<T>> = None;
    let mut n = 16usize.min(cfg.max_terms);
    loop {
        while terms.len() < n {
            terms.push(term(terms.len()));
        }
        let mut partial: Vec<Complex<T>> = terms
            .iter()
            .scan(Complex::new(T::zero(), T::zero()), |acc, t| {
                *acc = *acc + *t;
                Some(*acc)
            })
            .collect();
        while partial.len() > 1 {
            partial = partial.windows(2).map(|w| (w[0] + w[1]) * half).collect();
        }
        let estimate = partial[0];
        if let Some(prev) = previous {
            if (estimate - prev).norm() < cfg.target_tolerance {
                return Ok(SeriesValue { value: estimate, terms_used: n });
            }
        }
        if n >= cfg.max_terms {
            return Err(not_met(estimate, n));
        }
        previous = Some(estimate);
        n = (2 * n).min(cfg.max_terms);
    }
}

/// `ζ_λ(s, x)` for real `x > 0` and real `|λ| < 1`.
///
/// For `Re s` very negative and λ close to 1 the terms grow to
/// `max_n n^{-Re s} λ^n` before decaying, and the alternating cancellation
/// costs that many units of `T::epsilon()` in absolute accuracy.
pub fn zeta_lambda<T: Float>(s: Complex<T>, x: T, lambda: T, cfg: &SeriesEvalConfig<T>) -> Result<SeriesValue<T>> {
    check_lambda(lambda)?;
    if !(x > T::zero()) {
        return Err(Error::Domain("x must be positive".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    match cfg.acceleration {
        Acceleration::Alternating if lambda > T::zero() => {
            let two = T::from(2).unwrap();
            averaged_sum(
                |n| {
                    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
                    pow_neg(T::from(n).unwrap() + x, s) * (sign * two * lambda.powi(n as i32))
                },
                cfg,
            )
        }
        _ => direct_sum(s, x, lambda, |_| one, cfg),
    }
}

/// `χ(n)` under the complex embedding `ζ_L ↦ e^{2πi/L}`, in precision `T`.
fn character_value<T: Float + FloatConst>(chi: &DirichletCharacter, n: i64) -> Complex<T> {
    match chi.exponent(n) {
        Some(k) => {
            let angle = T::TAU() * T::from(k).unwrap() / T::from(chi.order()).unwrap();
            Complex::from_polar(T::one(), angle)
        }
        None => Complex::new(T::zero(), T::zero()),
    }
}

/// `l_λ(s, χ)`. With alternating acceleration the sum is split into residue
/// classes mod the modulus of χ, each of which is a smooth λ-zeta series.
pub fn l_lambda<T: Float + FloatConst>(
    s: Complex<T>,
    chi: &DirichletCharacter,
    lambda: T,
    cfg: &SeriesEvalConfig<T>,
) -> Result<SeriesValue<T>> {
    check_lambda(lambda)?;
    if cfg.acceleration == Acceleration::Alternating && lambda > T::zero() {
        return decomposed_l_lambda(s, chi, chi.modulus(), lambda, cfg);
    }
    // 2 Σ_{n≥1} (-1)^n χ(n) λ^n n^{-s} = -2λ Σ_{m≥0} (-1)^m χ(m+1) λ^m (m+1)^{-s}
    let inner = direct_sum(s, T::one(), lambda, |m| character_value(chi, m as i64 + 1), cfg)?;
    Ok(SeriesValue { value: inner.value * (-lambda), terms_used: inner.terms_used })
}

/// `H_λ(s, a | F)` for `0 < a <= F`, `F` odd.
pub fn partial_zeta<T: Float>(
    s: Complex<T>,
    a: u64,
    f: u64,
    lambda: T,
    cfg: &SeriesEvalConfig<T>,
) -> Result<SeriesValue<T>> {
    if f.is_multiple_of(2) {
        return Err(Error::Usage(format!("F must be odd, got {f}")));
    }
    if a == 0 || a > f {
        return Err(Error::Usage(format!("a must satisfy 0 < a <= F, got a = {a}, F = {f}")));
    }
    check_lambda(lambda)?;
    let lambda_f = lambda.powi(f as i32);
    let ft = T::from(f).unwrap();
    let z =
        zeta_lambda(s, T::from(a).unwrap() / ft, lambda_f, &cfg.with_acceleration(acceleration_for(cfg, lambda_f)))?;
    let sign = if a.is_multiple_of(2) { T::one() } else { -T::one() };
    let prefactor = sign * lambda.powi(a as i32) / T::from(2).unwrap();
    Ok(SeriesValue { value: z.value * pow_neg(ft, s) * prefactor, terms_used: z.terms_used })
}

fn acceleration_for<T: Float>(cfg: &SeriesEvalConfig<T>, lambda: T) -> Acceleration {
    match cfg.acceleration {
        Acceleration::Alternating if lambda > T::zero() => Acceleration::Alternating,
        _ => Acceleration::Direct,
    }
}

/// `2 Σ_{a=1}^{F} χ(a) H_λ(s, a | F)` for `F` an odd multiple of the modulus of χ.
pub fn decomposed_l_lambda<T: Float + FloatConst>(
    s: Complex<T>,
    chi: &DirichletCharacter,
    f: u64,
    lambda: T,
    cfg: &SeriesEvalConfig<T>,
) -> Result<SeriesValue<T>> {
    if !f.is_multiple_of(chi.modulus()) {
        return Err(Error::Usage(format!("F = {f} is not a multiple of the modulus {}", chi.modulus())));
    }
    let two = T::from(2).unwrap();
    let mut total = Complex::new(T::zero(), T::zero());
    let mut terms = 0;
    for a in 1..=f {
        let c = character_value::<T>(chi, a as i64);
        if c.norm_sqr() == T::zero() {
            continue;
        }
        let h = partial_zeta(s, a, f, lambda, cfg)?;
        total = total + c * h.value * two;
        terms += h.terms_used;
    }
    Ok(SeriesValue { value: total, terms_used: terms })
}
