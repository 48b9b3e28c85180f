//! Fixed-precision p-adic arithmetic and the p-adic λ-l-function.

mod functions;
mod lfunction;
mod number;

pub use functions::{
    angle_bracket, padic_binom, padic_character_value, padic_elementary, padic_exponent, teichmuller,
    ElementaryFunction,
};
pub use lfunction::{
    b_r, binomial_identity_check, check_lambda, congruence_check, h_lambda_p, h_special_value, harmonic_lhs,
    harmonic_lhs_exact, interpolation_rhs, l_lambda_p, theorem10_rhs, theorem10_verify, HarmonicSumReport, Verdict,
};
pub use number::{PadicContext, PadicJson, PadicNumber};

/// `r` as a p-adic number to relative precision `ctx.precision()`.
pub fn padic_from_rational(r: &crate::Rational, ctx: &PadicContext) -> PadicNumber {
    ctx.from_rational(r)
}
