//! Double-precision special functions: gamma, Kummer M, Hermite functions
//! of real order, Airy functions and their zeros.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod gamma;
mod hermite;
mod kummer;

pub use airy::{
    airy_ai, airy_ai_pair, airy_ai_prime, airy_zero, AiryKind, AiryZero, AIRY_DOMAIN,
    AIRY_ZERO_MAX_INDEX,
};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use hermite::{
    hermite_airy_asymptotic, hermite_airy_asymptotic_scaled, hermite_h, hermite_h_deriv,
    hermite_h_kummer, hermite_h_scaled, hermite_pair_scaled, HermiteOrder, HermitePair,
    KummerHermite, KUMMER_LOST_DIGIT_BUDGET, NU_SUPPORTED_MAX, XI_SUPPORTED_MAX,
};
pub use kummer::{kummer_m, KUMMER_CROSSOVER};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("gamma function pole at x = {x}")]
    Pole { x: f64 },
    #[error("{what}: argument {value} outside the supported domain")]
    Domain { what: &'static str, value: f64 },
    #[error("{what} did not converge")]
    NonConvergence { what: &'static str },
    #[error("cancellation lost an estimated {lost_digits:.1} digits")]
    AccuracyLoss { lost_digits: f64 },
    #[error("{what} overflows double precision")]
    Overflow { what: &'static str },
}
