//! High-precision special functions: Bernoulli numbers, `log Γ`, Riemann and
//! Hurwitz zeta.

mod bernoulli;
mod gamma;
mod zeta;

pub use bernoulli::{bernoulli, BernoulliCache};
pub(crate) use bernoulli::bernoulli_number;
pub(crate) use zeta::zeta_nonpositive_integer;
pub use gamma::{gamma, gamma_real, ln_gamma_real, log_gamma};
pub use zeta::{
    hurwitz_deriv0, hurwitz_deriv0_shifted, hurwitz_zeta, hurwitz_zeta_shifted, riemann_zeta, zeta_deriv0,
};
