//! Teichmüller lifts, `<a>`, binomial series and the elementary functions on
//! their p-adic discs of convergence.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use super::number::{require_digits, PadicContext, PadicNumber};
use crate::characters::{primitive_root, DirichletCharacter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::Rational;

/// `ω(a)`: the (p-1)-st root of unity congruent to `a` mod p.
pub fn teichmuller(a: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.p();
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::Domain(format!("Teichmüller lift needs p ∤ a (a = {a}, p = {p})")));
    }
    let m = ctx.precision();
    let modulus = num_traits::pow(BigInt::from(p), m as usize);
    let pb = BigInt::from(p);
    let mut x = BigInt::from(a).mod_floor(&modulus);
    // x ↦ x^p gains one correct digit per step
    loop {
        let next = x.modpow(&pb, &modulus);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(PadicNumber::from_residue(p, &x, m as i64, m))
}

/// `<a> = a / ω(a)`, a principal unit.
pub fn angle_bracket(a: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let w = teichmuller(a, ctx)?;
    Ok(ctx.from_int(a) / w)
}

/// `C(s, j) = s (s-1) ... (s-j+1) / j!`.
pub fn padic_binom(s: &PadicNumber, j: u64, ctx: &PadicContext) -> Result<PadicNumber> {
    let mut num = s.one_like();
    let mut den = BigInt::from(1);
    for i in 0..j {
        num = num * (s.clone() - s.from_i64_like(i as i64));
        den *= i + 1;
    }
    let out = num * s.from_rational_like(&Rational::from_integer(den)).inverse().expect("j! is nonzero");
    require_digits(&out)?;
    Ok(out.truncate(ctx.precision() as i64))
}

/// `base^s = Σ_j C(s, j) (base - 1)^j` for `base ≡ 1 (mod p)` and `s ∈ Z_p`.
pub fn padic_exponent(base: &PadicNumber, s: &PadicNumber, ctx: &PadicContext) -> Result<PadicNumber> {
    let u = base.clone() - base.one_like();
    let v = u.valuation();
    if !base.is_unit() || v < 1 {
        return Err(Error::Domain("binomial power series needs base ≡ 1 (mod p)".into()));
    }
    if s.valuation() < 0 {
        return Err(Error::Domain("exponent must be a p-adic integer".into()));
    }
    let target = ctx.precision() as i64;
    let mut acc = base.one_like();
    let mut u_pow = base.one_like();
    let mut coeff = s.one_like();
    // term j has valuation ≥ j·v since C(s, j) ∈ Z_p
    for j in 1.. {
        if j * v > target {
            break;
        }
        coeff = coeff * (s.clone() - s.from_i64_like(j - 1)) * s.from_rational_like(&Rational::new(1.into(), j.into()));
        u_pow = u_pow * u.clone();
        acc = acc + coeff.clone() * u_pow.clone();
    }
    require_digits(&acc)?;
    Ok(acc.truncate(target))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryFunction {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
}

impl FromStr for ElementaryFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exp" => Self::Exp,
            "log" => Self::Log,
            "sin" => Self::Sin,
            "cos" => Self::Cos,
            "tan" => Self::Tan,
            _ => return Err(Error::Parse(format!("unknown function {s:?}"))),
        })
    }
}

/// Smallest `k` beyond which `k·v - v_p(k!)` stays at least `target`.
fn exp_terms(v: i64, p: u64, target: i64) -> i64 {
    // v_p(k!) <= (k-1)/(p-1)
    let mut k = 0;
    while k * v - (k - 1).max(0) / (p as i64 - 1) < target {
        k += 1;
    }
    k
}

/// Partial sums `Σ_{k<K} a^k/k!` split by `k mod 4`, from which exp, sin and cos are assembled.
fn exp_parts(a: &PadicNumber, ctx: &PadicContext) -> [PadicNumber; 4] {
    let target = ctx.precision() as i64 + 1;
    let k_max = exp_terms(a.valuation(), ctx.p(), target);
    let mut parts = [a.zero_like(), a.zero_like(), a.zero_like(), a.zero_like()];
    let mut term = a.one_like();
    for k in 0..=k_max {
        if k > 0 {
            term = term * a.clone() * a.from_rational_like(&Rational::new(1.into(), k.into()));
        }
        let slot = (k % 4) as usize;
        parts[slot] = parts[slot].clone() + term.clone();
    }
    parts
}

fn check_small(a: &PadicNumber, kind: ElementaryFunction) -> Result<()> {
    if !Field::is_zero(a) && a.valuation() < 1 {
        return Err(Error::Domain(format!("{kind:?} series converges only for v_p(a) >= 1")));
    }
    Ok(())
}

/// exp, log, sin, cos, tan by truncated Maclaurin series.
pub fn padic_elementary(kind: ElementaryFunction, a: &PadicNumber, ctx: &PadicContext) -> Result<PadicNumber> {
    let target = ctx.precision() as i64;
    let out = match kind {
        ElementaryFunction::Log => {
            let u = a.clone() - a.one_like();
            if !a.is_unit() || u.valuation() < 1 {
                return Err(Error::Domain("log series converges only for a ≡ 1 (mod p)".into()));
            }
            let v = u.valuation();
            let mut acc = a.zero_like();
            let mut u_pow = a.one_like();
            let mut k: i64 = 1;
            // term k has valuation k·v - v_p(k) >= k·v - log_p k
            loop {
                let log_k = (k as f64).log(ctx.p() as f64).floor() as i64;
                if k * v - log_k > target && k > 1 {
                    break;
                }
                u_pow = u_pow * u.clone();
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc = acc + u_pow.clone() * a.from_rational_like(&Rational::new(sign.into(), k.into()));
                k += 1;
                if Field::is_zero(&u) {
                    break;
                }
            }
            acc
        }
        _ => {
            check_small(a, kind)?;
            if Field::is_zero(a) {
                let zero = a.zero_like();
                return Ok(match kind {
                    ElementaryFunction::Cos | ElementaryFunction::Exp => a.one_like(),
                    _ => zero,
                }
                .truncate(target));
            }
            let [c0, c1, c2, c3] = exp_parts(a, ctx);
            match kind {
                ElementaryFunction::Exp => c0 + c1 + c2 + c3,
                ElementaryFunction::Sin => c1 - c3,
                ElementaryFunction::Cos => c0 - c2,
                ElementaryFunction::Tan => (c1 - c3) / (c0 - c2),
                ElementaryFunction::Log => unreachable!(),
            }
        }
    };
    require_digits(&out)?;
    Ok(out.truncate(target))
}

/// `ι(χ(a))` under the embedding `ζ_L ↦ ω(g)^{(p-1)/L}`, `g` the smallest
/// primitive root mod p; requires `L | p - 1`.
pub fn padic_character_value(chi: &DirichletCharacter, a: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.p();
    let order = chi.order();
    if !(p - 1).is_multiple_of(order) {
        return Err(Error::Unsupported(format!("character of order {order} has values outside Z_{p}")));
    }
    match chi.exponent(a) {
        None => Ok(ctx.zero()),
        Some(0) => Ok(ctx.one()),
        Some(k) => {
            let w = teichmuller(primitive_root(p) as i64, ctx)?;
            Ok(w.pow_u(k * ((p - 1) / order)))
        }
    }
}

impl crate::characters::CharacterValues for PadicNumber {
    fn character_value(&self, chi: &DirichletCharacter, a: i64) -> Result<Self> {
        let ctx = PadicContext::new(self.p(), self.cap())?;
        padic_character_value(chi, a, &ctx)
    }
}
