//! Riemann-sum simulation of the p-adic q-integral at q = -1, q = 1 and
//! q ≡ 1 (mod p).

mod checks;
mod integrand;
mod sums;

pub use checks::{
    bosonic_trig_check, c1_norm_inequality_sample, generalized_witt_check, prop12_check, qbinom_moment,
    theorem13_check, witt_check, witt_levels, CheckReport, NormSample, QBinomialReport, WittReport,
};
pub use integrand::{parse_character, parse_integrand, Integrand};
pub use sums::{
    alternating_sum, fermionic_sum, fermionic_sum_levels, lemma1_residual, q_sum, residual_valuation,
    theorem2_residual, volkenborn_derivative_residual, volkenborn_sum, QValue,
};
