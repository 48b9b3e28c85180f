//! Closed-form integrals of trigonometric, q-binomial and twisted
//! exponential integrands, compared against their Riemann sums.

use serde_json::json;

use super::integrand::Integrand;
use super::sums::{
    alternating_sum, fermionic_sum, fermionic_sum_levels, q_sum, residual_valuation, volkenborn_sum, QValue,
};
use crate::apostol::{bernoulli_numbers, euler_numbers, euler_polynomial};
use crate::characters::{generalized_euler_numbers_in, DirichletCharacter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::padic::{check_lambda, padic_elementary, teichmuller, ElementaryFunction, PadicContext, PadicNumber};
use crate::rational::{binomial_coefficient, factorial, format_rational, int, rat, rational_pow, rational_valuation};
use crate::Rational;

/// One side-by-side comparison; `level` is the Riemann-sum level N when one is involved.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub lhs: PadicNumber,
    pub rhs: PadicNumber,
    pub agreement_precision: i64,
    pub level: Option<u32>,
    pub p: u64,
    pub precision: u32,
}

impl CheckReport {
    pub fn new(name: &str, lhs: PadicNumber, rhs: PadicNumber, level: Option<u32>, ctx: &PadicContext) -> Self {
        let m = ctx.precision();
        let lhs = lhs.truncate(m as i64);
        let rhs = rhs.truncate(m as i64);
        let agreement_precision = lhs.agreement(&rhs).min(m as i64);
        Self { name: name.to_string(), lhs, rhs, agreement_precision, level, p: ctx.p(), precision: m }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "agreement_precision": self.agreement_precision,
            "N": self.level,
            "p": self.p,
            "M": self.precision,
        })
    }
}

fn trig_arg(a: &Rational, p: u64) -> Result<u32> {
    match rational_valuation(a, p) {
        None => Ok(0),
        Some(v) if v >= 1 => Ok(v as u32),
        Some(v) => Err(Error::Domain(format!("need v_p(a) >= 1, got v_p({a}) = {v}"))),
    }
}

fn elem(kind: ElementaryFunction, a: &Rational, ctx: &PadicContext) -> Result<PadicNumber> {
    padic_elementary(kind, &ctx.from_rational(a), ctx)
}

/// Fermionic integrals of `cos(ax)` and `sin(ax)` against `1` and `-tan(a/2)`,
/// plus the two translation relations
/// `(cos a + 1) I(cos) - sin a · I(sin) = 2` and `(cos a + 1) I(sin) + sin a · I(cos) = 0`.
pub fn prop12_check(a: &Rational, level: u32, ctx: &PadicContext) -> Result<Vec<CheckReport>> {
    let p = ctx.p();
    let va = trig_arg(a, p)?;
    let wctx = ctx.widened(va + 2);
    let s_cos = fermionic_sum(&Integrand::Cos(a.clone()), level, &wctx)?;
    let s_sin = fermionic_sum(&Integrand::Sin(a.clone()), level, &wctx)?;
    let half = a.clone() / int(2);
    let tan_half = elem(ElementaryFunction::Tan, &half, &wctx)?;
    let cos_a = elem(ElementaryFunction::Cos, a, &wctx)?;
    let sin_a = elem(ElementaryFunction::Sin, a, &wctx)?;
    let one = wctx.one();
    let rel_cos = (cos_a.clone() + one.clone()) * s_cos.clone() - sin_a.clone() * s_sin.clone();
    let rel_sin = (cos_a + one) * s_sin.clone() + sin_a * s_cos.clone();
    Ok(vec![
        CheckReport::new("cos", s_cos, wctx.one(), Some(level), ctx),
        CheckReport::new("sin", s_sin, -tan_half, Some(level), ctx),
        CheckReport::new("cos-relation", rel_cos, wctx.from_int(2), Some(level), ctx),
        CheckReport::new("sin-relation", rel_sin, wctx.zero(), Some(level), ctx),
    ])
}

/// `tan(a/2)` against `Σ_{n ≤ n_max} (-1)^{n+1} a^{2n+1} E_{2n+1} / (2n+1)!`.
pub fn theorem13_check(a: &Rational, n_max: usize, ctx: &PadicContext) -> Result<CheckReport> {
    trig_arg(a, ctx.p())?;
    let wctx = ctx.widened(2);
    let lhs = elem(ElementaryFunction::Tan, &(a.clone() / int(2)), &wctx)?;
    let e = euler_numbers(&int(1), 2 * n_max + 1)?;
    let mut rhs = int(0);
    for n in 0..=n_max {
        let k = 2 * n + 1;
        let sign = if n % 2 == 0 { -1 } else { 1 };
        rhs += int(sign) * rational_pow(a, k as i64) * e.get(k).clone() / Rational::from_integer(factorial(k as u64));
    }
    Ok(CheckReport::new("tan-euler-series", lhs, wctx.from_rational(&rhs), None, ctx))
}

/// Smallest `n_max` for which the tail of a series with terms `a^{2n}/(2n)!`
/// (times a factor of valuation at least `-1`) has valuation above `target`.
fn even_series_length(va: u32, p: u64, target: i64) -> usize {
    let mut n = 1usize;
    loop {
        let k = 2 * n as u64;
        let vf = crate::rational::int_valuation(&factorial(k), p) as i64;
        if (k as i64) * va as i64 - vf - 1 > target {
            return n;
        }
        n += 1;
    }
}

/// Volkenborn integrals of `sin(ax)` and `cos(ax)` against `-a/2` and
/// `a sin a / (2 - 2 cos a)`, and `(a/2) cot(a/2)` against
/// `Σ (-1)^n B_{2n} a^{2n} / (2n)!`.
pub fn bosonic_trig_check(a: &Rational, level: u32, ctx: &PadicContext) -> Result<Vec<CheckReport>> {
    let p = ctx.p();
    let va = trig_arg(a, p)?;
    let m = ctx.precision() as i64;
    let wctx = ctx.widened(2 * va + 2);
    let v_sin = volkenborn_sum(&Integrand::Sin(a.clone()), level, &wctx)?;
    let v_cos = volkenborn_sum(&Integrand::Cos(a.clone()), level, &wctx)?;
    let half = a.clone() / int(2);

    let (cos_series, cot) = if Zero::is_zero(a) {
        (wctx.one(), wctx.one())
    } else {
        let sin_a = elem(ElementaryFunction::Sin, a, &wctx)?;
        let cos_a = elem(ElementaryFunction::Cos, a, &wctx)?;
        let cos_series = wctx.from_rational(a) * sin_a / (wctx.from_int(2) - wctx.from_int(2) * cos_a);
        let sh = elem(ElementaryFunction::Sin, &half, &wctx)?;
        let ch = elem(ElementaryFunction::Cos, &half, &wctx)?;
        (cos_series, wctx.from_rational(&half) * ch / sh)
    };

    let n_max = if va == 0 { 0 } else { even_series_length(va, p, m + 2) };
    let b = bernoulli_numbers(2 * n_max);
    let mut series = int(0);
    for n in 0..=n_max {
        let k = 2 * n;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        series +=
            int(sign) * b.values[k].clone() * rational_pow(a, k as i64) / Rational::from_integer(factorial(k as u64));
    }
    Ok(vec![
        CheckReport::new("sin", v_sin, -wctx.from_rational(&half), Some(level), ctx),
        CheckReport::new("cos", v_cos, cos_series, Some(level), ctx),
        CheckReport::new("cot-bernoulli-series", cot, wctx.from_rational(&series), None, ctx),
    ])
}

use num_traits::Zero;

/// Empirical `∫ [x choose n]_q dμ_q` against `(-1)^n [n+1]_q^{-1} q^{e}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBinomialReport {
    pub n: u32,
    pub q: Rational,
    pub level: u32,
    pub empirical: PadicNumber,
    /// Agreement between the two largest levels.
    pub stability: i64,
    pub literal_exponent: i64,
    pub closed_form: PadicNumber,
    pub literal_agreement: i64,
    pub agree: bool,
    pub fitted_exponent: i64,
    pub fitted_agreement: i64,
}

impl QBinomialReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "q": format_rational(&self.q),
            "N": self.level,
            "empirical": self.empirical.to_json(),
            "stability": self.stability,
            "literal_exponent": self.literal_exponent,
            "closed_form": self.closed_form.to_json(),
            "literal_agreement": self.literal_agreement,
            "agree": self.agree,
            "fitted_exponent": self.fitted_exponent,
            "fitted_agreement": self.fitted_agreement,
        })
    }
}

fn q_moment_formula(n: u32, q: &PadicNumber, e: i64, ctx: &PadicContext) -> PadicNumber {
    let q_int = (ctx.one() - q.pow_u(n as u64 + 1)) / (ctx.one() - q.clone());
    let sign = if n.is_multiple_of(2) { ctx.one() } else { -ctx.one() };
    sign / q_int * q.pow_i(e).expect("q is a unit")
}

/// Exponents are fitted over a window of width `p` around the closed-form one,
/// inside which distinct exponents differ already mod `p^2`.
pub fn qbinom_moment(n: u32, q: &Rational, ctx: &PadicContext, max_level: u32) -> Result<QBinomialReport> {
    let p = ctx.p();
    let qv = QValue::bosonic(q.clone(), p)?;
    if max_level < 2 {
        return Err(Error::Usage("qbinom_moment needs N_max >= 2".into()));
    }
    let m = ctx.precision() as i64;
    let f = Integrand::QBinomial { n, q: q.clone() };
    let prev = q_sum(&f, &qv, max_level - 1, ctx)?;
    let empirical = q_sum(&f, &qv, max_level, ctx)?;
    let stability = prev.agreement(&empirical).min(m);
    let qp = ctx.from_rational(q);
    let n1 = n as u64 + 1;
    let literal_exponent = n1 as i64 - binomial_coefficient(n1, 2).try_into().unwrap_or(i64::MAX);
    let closed_form = q_moment_formula(n, &qp, literal_exponent, ctx).truncate(m);
    let literal_agreement = empirical.agreement(&closed_form).min(m);
    let half = (p as i64 - 1) / 2;
    let (fitted_exponent, fitted_agreement) = (literal_exponent - half..=literal_exponent + half)
        .map(|e| (e, empirical.agreement(&q_moment_formula(n, &qp, e, ctx)).min(m)))
        .max_by_key(|&(e, agr)| (agr, -(e - literal_exponent).abs()))
        .expect("nonempty window");
    Ok(QBinomialReport {
        n,
        q: q.clone(),
        level: max_level,
        empirical,
        stability,
        literal_exponent,
        closed_form,
        agree: literal_agreement >= stability,
        literal_agreement,
        fitted_exponent,
        fitted_agreement,
    })
}

/// Level-N fermionic sum of a twisted exponential moment against its
/// Apostol–Euler value, and against the limit the sums actually approach.
#[derive(Debug, Clone, PartialEq)]
pub struct WittReport {
    pub check: CheckReport,
    /// `(1 + ω(λ)^d) / 2`, the factor by which the sums' limit differs from
    /// `E_n(λ:x)` when `λ ≢ 1 (mod p)`.
    pub limit_factor: PadicNumber,
    pub corrected_rhs: PadicNumber,
    pub corrected_agreement: i64,
}

impl WittReport {
    fn new(check: CheckReport, limit_factor: PadicNumber, ctx: &PadicContext) -> Self {
        let m = ctx.precision() as i64;
        let corrected_rhs = (limit_factor.clone() * check.rhs.clone()).truncate(m);
        let corrected_agreement = check.lhs.agreement(&corrected_rhs).min(m);
        Self { check, limit_factor, corrected_rhs, corrected_agreement }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.check.to_json();
        v["limit_factor"] = self.limit_factor.to_json();
        v["corrected_rhs"] = self.corrected_rhs.to_json();
        v["corrected_agreement"] = json!(self.corrected_agreement);
        v
    }
}

fn limit_factor(lambda: &Rational, d: u64, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.p() as i64;
    let residue = |z: &num_bigint::BigInt| -> i64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        z.mod_floor(&p.into()).to_i64().expect("small")
    };
    let num = residue(lambda.numer());
    let den = residue(lambda.denom());
    let den_inv = (1..p).find(|i| (i * den) % p == 1).ok_or_else(|| Error::Domain("λ must be a p-adic unit".into()))?;
    let w = teichmuller(num * den_inv % p, ctx)?;
    Ok((ctx.one() + w.pow_u(d)) * ctx.from_rational(&rat(1, 2)))
}

/// `Σ_{y < p^N} (-1)^y λ^y (x + y)^n` against `E_n(λ : x)`.
pub fn witt_check(lambda: &Rational, n: u32, x: i64, level: u32, ctx: &PadicContext) -> Result<WittReport> {
    check_lambda(lambda, 1, ctx.p())?;
    let f = Integrand::Product(vec![
        Integrand::Exponential(lambda.clone()),
        Integrand::Power(Box::new(Integrand::Shift(Box::new(Integrand::X), x)), n),
    ]);
    let lhs = fermionic_sum(&f, level, ctx)?;
    let rhs = ctx.from_rational(&euler_polynomial(lambda, n as usize, &int(x))?);
    let factor = limit_factor(lambda, 1, ctx)?;
    Ok(WittReport::new(CheckReport::new("witt", lhs, rhs, Some(level), ctx), factor, ctx))
}

/// [`witt_check`] at every level `1..=max_level`, sharing one pass over the points.
pub fn witt_levels(lambda: &Rational, n: u32, x: i64, max_level: u32, ctx: &PadicContext) -> Result<Vec<WittReport>> {
    check_lambda(lambda, 1, ctx.p())?;
    let f = Integrand::Product(vec![
        Integrand::Exponential(lambda.clone()),
        Integrand::Power(Box::new(Integrand::Shift(Box::new(Integrand::X), x)), n),
    ]);
    let rhs = ctx.from_rational(&euler_polynomial(lambda, n as usize, &int(x))?);
    let factor = limit_factor(lambda, 1, ctx)?;
    Ok(fermionic_sum_levels(&f, max_level, ctx)?
        .into_iter()
        .zip(1..)
        .map(|(lhs, level)| {
            WittReport::new(CheckReport::new("witt", lhs, rhs.clone(), Some(level), ctx), factor.clone(), ctx)
        })
        .collect())
}

/// `Σ_{x < d p^N} (-1)^x χ(x) λ^x x^n` against `E_{n,χ}(λ)`.
pub fn generalized_witt_check(
    chi: &DirichletCharacter,
    lambda: &Rational,
    n: u32,
    level: u32,
    ctx: &PadicContext,
) -> Result<WittReport> {
    let p = ctx.p();
    let d = chi.modulus();
    if d.is_multiple_of(2) {
        return Err(Error::Usage(format!("character modulus must be odd, got {d}")));
    }
    if !(p - 1).is_multiple_of(chi.order()) {
        return Err(Error::Unsupported(format!("character of order {} does not embed in Z_{p}", chi.order())));
    }
    check_lambda(lambda, d, p)?;
    let count = (d as i64)
        .checked_mul(p.checked_pow(level).and_then(|v| i64::try_from(v).ok()).unwrap_or(i64::MAX))
        .ok_or_else(|| Error::Usage("d p^N overflows".into()))?;
    let f = Integrand::Product(vec![
        Integrand::Character(chi.clone()),
        Integrand::Exponential(lambda.clone()),
        Integrand::x_pow(n),
    ]);
    let lhs = alternating_sum(&f, count, ctx)?;
    let lam = ctx.from_rational(lambda);
    let rhs = generalized_euler_numbers_in(chi, &lam, n as usize)?.values[n as usize].clone();
    let factor = limit_factor(lambda, d, ctx)?;
    Ok(WittReport::new(CheckReport::new("generalized-witt", lhs, rhs, Some(level), ctx), factor, ctx))
}

/// Sampled form of `|∫ f dμ_q|_p ≤ p ||f||_1`, all in valuations.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSample {
    pub integral_valuation: i64,
    /// Valuation of the sampled lower bound for `||f||_1`.
    pub norm_valuation: i64,
    pub pairs: usize,
    pub holds: bool,
}

impl NormSample {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "integral_valuation": self.integral_valuation,
            "norm_valuation": self.norm_valuation,
            "pairs": self.pairs,
            "holds": self.holds,
        })
    }
}

pub fn c1_norm_inequality_sample(f: &Integrand, q: &QValue, level: u32, ctx: &PadicContext) -> Result<NormSample> {
    let p = ctx.p();
    let integral = q_sum(f, q, level, ctx)?;
    let integral_valuation = residual_valuation(&integral, ctx);
    let grid = p.saturating_pow(level).min(40) as i64;
    let values: Vec<PadicNumber> = (0..grid).map(|x| f.eval(x, ctx)).collect::<Result<_>>()?;
    let mut norm_valuation = residual_valuation(&values[0], ctx);
    let mut pairs = 0;
    for x in 0..grid {
        for y in 0..x {
            let diff = residual_valuation(&(values[x as usize].clone() - values[y as usize].clone()), ctx);
            let gap = crate::rational::int_valuation(&(x - y).into(), p) as i64;
            norm_valuation = norm_valuation.min(diff - gap);
            pairs += 1;
        }
    }
    Ok(NormSample { integral_valuation, norm_valuation, pairs, holds: integral_valuation >= norm_valuation - 1 })
}
