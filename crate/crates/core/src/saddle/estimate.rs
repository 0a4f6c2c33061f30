//! Truncated saddle-point series for `log p(n)`.

use super::{solve_saddle, SaddleContext};
use crate::error::{Error, Result};
use crate::models::LambdaSpec;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `Σ_{m₁+…+m_h = target, m_j ≥ 3} ∏ Φ^{(m_j)}(ϱ)/m_j!`, with `scaled[m] = Φ^{(m)}(ϱ)/m!`.
fn compositions(target: u32, h: u32, scaled: &[f64]) -> f64 {
    if h == 0 {
        return if target == 0 { 1.0 } else { 0.0 };
    }
    (3..scaled.len() as u32)
        .filter(|&m| m + 3 * (h - 1) <= target)
        .map(|m| scaled[m as usize] * compositions(target - m, h - 1, scaled))
        .sum()
}

/// Part of `(2k)! λ_{2k}/(2^k k! Φ″^{k+1/2})` coming from products of `h`
/// derivatives. It is of relative size `ϱ^{α(k−h)}`.
fn series_term(k: u32, h: u32, scaled: &[f64], phi2: f64) -> f64 {
    let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
    let gauss = factorial(2 * k) / (2f64.powi(k as i32) * factorial(k));
    sign * gauss * compositions(2 * k, h, scaled) / factorial(h) / phi2.powf(f64::from(k) + 0.5)
}

/// `log p̂(n)` from a solved context, keeping the `K` leading even terms.
pub fn saddle_estimate_ctx(ctx: &SaddleContext, big_k: u32) -> Result<f64> {
    if big_k > 2 {
        return Err(Error::Argument(format!("saddle_estimate supports K ≤ 2, got {big_k}")));
    }
    let phi2 = ctx.phi2;
    let mut bracket = phi2.powf(-0.5);
    if big_k > 0 {
        // Order r needs derivatives up to 2r + 2.
        let mut scaled = vec![0.0; (2 * big_k + 3) as usize];
        for m in 3..=2 * big_k + 2 {
            scaled[m as usize] = ctx.deriv(m)? / factorial(m);
        }
        for r in 1..=big_k {
            for h in 1..=2 * r {
                bracket += series_term(r + h, h, &scaled, phi2);
            }
        }
    }
    if !(bracket > 0.0) {
        return Err(Error::Numeric(format!("saddle series is not positive at n = {}", ctx.n)));
    }
    let half_log_two_pi = 0.5 * std::f64::consts::TAU.ln();
    Ok(ctx.rho * ctx.n as f64 + ctx.f_log - half_log_two_pi + bracket.ln())
}

/// `log` of `e^{ϱn} F(ϱ)/√(2π) · {Φ″^{−1/2} + Σ_k (2k)! λ_{2k}/(2^k k! Φ″^{k+1/2})}`,
/// keeping the parts of relative order `ϱ^{α}, …, ϱ^{Kα}`. `K = 1` uses `Φ‴, Φ⁗`.
pub fn saddle_estimate(spec: &LambdaSpec, n: u64, big_k: u32) -> Result<f64> {
    saddle_estimate_ctx(&solve_saddle(spec, n)?, big_k)
}
