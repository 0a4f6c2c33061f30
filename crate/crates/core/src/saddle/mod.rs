//! Direct numerics on the generating function: the saddle point, Cauchy's
//! integral, the truncated saddle series and checks of the `Φ` expansions.

mod cauchy;
mod estimate;
mod phi;
mod verify;

pub use cauchy::{cauchy_count, cauchy_log_count, cauchy_log_count_ctx, default_quad_points, ALIAS_RESOLUTION, MIN_QUAD_POINTS};
pub use estimate::{saddle_estimate, saddle_estimate_ctx};
pub use phi::{deriv_truncation, phi, phi_deriv, tail_bound, truncation, F64_DIGITS, MAX_DERIV};
pub use verify::{
    phi_high, verify_arc_bound, verify_phi_expansion, ArcBoundReport, PhiExpansionReport, PhiExpansionRow,
    ARC_BETA_DIVISOR, STRONG_TERMS, WEAK_EPSILON,
};

use num_complex::Complex64;

use crate::asymptotic::rho_expansion;
use crate::error::{Error, Result};
use crate::models::{l_data, LambdaSpec};
use crate::Precision;
use phi::{parts_f64, phi_deriv_parts, phi_parts, phi_real_parts};

/// Relative residual `|Φ′(ϱ) + n|/n` every solved context satisfies.
pub const SADDLE_TOLERANCE: f64 = 1e-9;

const MAX_ITERATIONS: usize = 200;

/// Solution of `−Φ′(ϱ) = n` together with the data evaluated there.
#[derive(Debug, Clone)]
pub struct SaddleContext {
    pub spec: LambdaSpec,
    pub n: u64,
    pub rho: f64,
    /// Part cutoff, `e^{−ϱ M} ≤ 10^{−F64_DIGITS}`.
    pub m_trunc: u64,
    /// `Φ″(ϱ)`.
    pub phi2: f64,
    /// `Φ(ϱ) = log F(ϱ)`.
    pub f_log: f64,
    /// `|Φ′(ϱ) + n|`.
    pub residual: f64,
    parts: Vec<f64>,
}

impl SaddleContext {
    /// Parts `≤ m_trunc`.
    pub fn parts(&self) -> &[f64] {
        &self.parts
    }

    /// `Φ(ϱ + it)`.
    pub fn phi_at(&self, t: f64) -> Complex64 {
        phi_parts(&self.parts, Complex64::new(self.rho, t))
    }

    /// `Re Φ(ϱ + it) − Φ(ϱ)`, the log of `|F(ϱ+it)|/F(ϱ)`.
    pub fn log_ratio(&self, t: f64) -> f64 {
        phi::phi_re_parts(&self.parts, Complex64::new(self.rho, t)) - self.f_log
    }

    /// `Φ^{(k)}(ϱ)` for `1 ≤ k ≤ 6`.
    pub fn deriv(&self, k: u32) -> Result<f64> {
        if !(1..=MAX_DERIV).contains(&k) {
            return Err(Error::Argument(format!("derivative order must be 1 to {MAX_DERIV}, got {k}")));
        }
        let limit = deriv_truncation(self.rho, F64_DIGITS, k);
        if limit <= self.m_trunc {
            let end = self.parts.partition_point(|&m| m <= limit as f64);
            return Ok(phi_deriv_parts(&self.parts[..end], self.rho, k));
        }
        Ok(phi_deriv_parts(&parts_f64(&self.spec, limit), self.rho, k))
    }
}

/// Two-term saddle seed, falling back to the leading term when it is not positive.
fn seed(spec: &LambdaSpec, n: u64) -> Result<f64> {
    let ld = l_data(spec, Precision::new(30))?;
    let two = rho_expansion(&ld, n, 2)?.to_f64();
    if two > 0.0 && two.is_finite() {
        return Ok(two);
    }
    let alpha = ld.alpha_f64();
    let lead = crate::asymptotic::constants(&ld)?.frak_a.to_f64() * (n as f64).powf(-1.0 / (1.0 + alpha));
    Ok(lead)
}

/// Solves `−Φ′(σ) = n` by safeguarded Newton iteration.
pub fn solve_saddle(spec: &LambdaSpec, n: u64) -> Result<SaddleContext> {
    if n < 1 {
        return Err(Error::Argument("solve_saddle needs n ≥ 1".into()));
    }
    let guess = seed(spec, n)?;
    let nf = n as f64;
    let (mut lo, mut hi) = (guess / 10.0, guess * 10.0);
    let mut parts = parts_f64(spec, deriv_truncation(lo, F64_DIGITS, 2));
    let g = |parts: &[f64], s: f64| -> (f64, f64) {
        let end = parts.partition_point(|&m| m <= deriv_truncation(s, F64_DIGITS, 2) as f64);
        let p = &parts[..end];
        (-phi_deriv_parts(p, s, 1) - nf, -phi_deriv_parts(p, s, 2))
    };
    // g decreases from +∞ to −n, so widening always brackets the root.
    let mut widen = 0;
    while g(&parts, lo).0 <= 0.0 {
        lo /= 10.0;
        parts = parts_f64(spec, deriv_truncation(lo, F64_DIGITS, 2));
        widen += 1;
        if widen > 6 {
            return Err(Error::Numeric(format!("no saddle bracket found for n = {n}")));
        }
    }
    while g(&parts, hi).0 >= 0.0 {
        hi *= 10.0;
        widen += 1;
        if widen > 12 {
            return Err(Error::Numeric(format!("no saddle bracket found for n = {n}")));
        }
    }

    let mut s = guess.clamp(lo, hi);
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let (val, slope) = g(&parts, s);
        if val.abs() <= 1e-3 * SADDLE_TOLERANCE * nf {
            converged = true;
            break;
        }
        if val > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let newton = s - val / slope;
        s = if newton > lo && newton < hi { newton } else { (lo * hi).sqrt() };
        if (hi - lo) <= 4.0 * f64::EPSILON * s {
            converged = true;
            break;
        }
    }
    let residual = g(&parts, s).0.abs();
    if !converged || residual > SADDLE_TOLERANCE * nf {
        return Err(Error::Numeric(format!("saddle iteration did not converge for n = {n} (residual {residual:e})")));
    }

    let m_trunc = truncation(s, F64_DIGITS);
    parts.truncate(parts.partition_point(|&m| m <= m_trunc as f64));
    let end2 = deriv_truncation(s, F64_DIGITS, 2);
    let phi2 = if end2 <= m_trunc {
        phi_deriv_parts(&parts, s, 2)
    } else {
        phi_deriv_parts(&parts_f64(spec, end2), s, 2)
    };
    let f_log = phi_real_parts(&parts, s);
    Ok(SaddleContext { spec: spec.clone(), n, rho: s, m_trunc, phi2, f_log, residual, parts })
}
