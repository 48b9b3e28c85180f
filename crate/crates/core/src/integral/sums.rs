//! Riemann sums for μ_q at q = -1, q = 1 and q ≡ 1 (mod p), and the
//! translation identities measured on them.

use rayon::prelude::*;

use super::integrand::Integrand;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::padic::{PadicContext, PadicNumber};
use crate::rational::{int, rational_valuation};
use crate::Rational;

/// The measure parameter: the fermionic point q = -1 or a bosonic q ≡ 1 (mod p).
#[derive(Debug, Clone, PartialEq)]
pub enum QValue {
    Fermionic,
    Bosonic(Rational),
}

impl QValue {
    pub fn bosonic(q: Rational, p: u64) -> Result<Self> {
        if q == int(1) {
            return Err(Error::Usage("q = 1 is the Volkenborn limit; use volkenborn_sum".into()));
        }
        match rational_valuation(&(q.clone() - int(1)), p) {
            Some(v) if v >= 1 => Ok(Self::Bosonic(q)),
            _ => Err(Error::Domain(format!("q must satisfy v_p(q - 1) >= 1, got q = {q} (p = {p})"))),
        }
    }
}

fn level_size(p: u64, level: u32) -> Result<i64> {
    if level == 0 {
        return Err(Error::Usage("level N must be at least 1".into()));
    }
    p.checked_pow(level)
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| Error::Usage(format!("p^N overflows for p = {p}, N = {level}")))
}

fn weighted_sum<W>(f: &Integrand, count: i64, ctx: &PadicContext, weight: W) -> Result<PadicNumber>
where
    W: Fn(i64) -> PadicNumber + Sync,
{
    (0..count).into_par_iter().map(|x| Ok(weight(x) * f.eval(x, ctx)?)).try_reduce(|| ctx.zero(), |a, b| Ok(a + b))
}

/// `Σ_{x < count} (-1)^x f(x)`.
pub fn alternating_sum(f: &Integrand, count: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    (0..count)
        .into_par_iter()
        .map(|x| {
            let v = f.eval(x, ctx)?;
            Ok(if x % 2 == 0 { v } else { -v })
        })
        .try_reduce(|| ctx.zero(), |a, b| Ok(a + b))
}

/// `Σ_{x < p^N} (-1)^x f(x)`, the level-N approximation of `∫ f dμ_{-1}`.
pub fn fermionic_sum(f: &Integrand, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    alternating_sum(f, level_size(ctx.p(), level)?, ctx)
}

/// `S_1, ..., S_{max_level}` in one pass: block `[p^{k-1}, p^k)` is summed
/// once and added to the running total.
pub fn fermionic_sum_levels(f: &Integrand, max_level: u32, ctx: &PadicContext) -> Result<Vec<PadicNumber>> {
    let end = level_size(ctx.p(), max_level)?;
    let mut out = Vec::with_capacity(max_level as usize);
    let mut total = f.eval(0, ctx)?;
    let mut start = 1i64;
    while start < end {
        let stop = start * ctx.p() as i64;
        let block = (start..stop)
            .into_par_iter()
            .map(|x| {
                let v = f.eval(x, ctx)?;
                Ok(if x % 2 == 0 { v } else { -v })
            })
            .try_reduce(|| ctx.zero(), |a, b| Ok(a + b))?;
        total = total + block;
        out.push(total.clone());
        start = stop;
    }
    Ok(out)
}

/// `p^{-N} Σ_{x < p^N} f(x)`.
pub fn volkenborn_sum(f: &Integrand, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    let count = level_size(ctx.p(), level)?;
    let wctx = ctx.widened(level);
    let s = weighted_sum(f, count, &wctx, |_| wctx.one())?;
    let scale = wctx.from_rational(&Rational::new(1.into(), count.into()));
    Ok((s * scale).truncate(ctx.precision() as i64))
}

/// `[p^N]_q^{-1} Σ_{x < p^N} q^x f(x)` with `[m]_q = (1 - q^m)/(1 - q)`.
pub fn q_sum(f: &Integrand, q: &QValue, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    let q = match q {
        QValue::Fermionic => return fermionic_sum(f, level, ctx),
        QValue::Bosonic(q) => q,
    };
    let count = level_size(ctx.p(), level)?;
    let wctx = ctx.widened(level + 2);
    let qp = wctx.from_rational(q);
    let s = weighted_sum(f, count, &wctx, |x| qp.pow_u(x as u64))?;
    let q_int = (wctx.one() - qp.pow_u(count as u64)) / (wctx.one() - qp.clone());
    Ok((s / q_int).truncate(ctx.precision() as i64))
}

/// `I(f_1) + I(f) - 2 f(0)` on level-N sums.
pub fn lemma1_residual(f: &Integrand, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    theorem2_residual(f, 1, level, ctx)
}

/// `I(f_n) + (-1)^{n-1} I(f) - 2 Σ_{x<n} (-1)^{n-1-x} f(x)` on level-N sums.
pub fn theorem2_residual(f: &Integrand, n: u64, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    if n == 0 {
        return Err(Error::Usage("shift n must be positive".into()));
    }
    let shifted = fermionic_sum(&f.shifted(n as i64), level, ctx)?;
    let plain = fermionic_sum(f, level, ctx)?;
    let mut finite = ctx.zero();
    for x in 0..n {
        let v = f.eval(x as i64, ctx)?;
        finite = finite + if (n - 1 - x).is_multiple_of(2) { v } else { -v };
    }
    let plain = if (n - 1).is_multiple_of(2) { plain } else { -plain };
    Ok(shifted + plain - ctx.from_int(2) * finite)
}

/// `I_1(f_1) - I_1(f) - f'(0)` on level-N Volkenborn sums.
pub fn volkenborn_derivative_residual(f: &Integrand, level: u32, ctx: &PadicContext) -> Result<PadicNumber> {
    let d0 = f.derivative()?.eval(0, ctx)?;
    let a = volkenborn_sum(&f.shifted(1), level, ctx)?;
    let b = volkenborn_sum(f, level, ctx)?;
    Ok(a - b - d0)
}

/// Valuation of a residual, capped at the working precision.
pub fn residual_valuation(r: &PadicNumber, ctx: &PadicContext) -> i64 {
    if Field::is_zero(r) {
        ctx.precision() as i64
    } else {
        r.valuation().min(ctx.precision() as i64)
    }
}
