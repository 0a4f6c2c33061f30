//! `p(n) = (1/2π) ∫_{−π}^{π} e^{(ϱ+it)n} F(ϱ+it) dt` by the trapezoidal rule.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{solve_saddle, SaddleContext};
use crate::error::{Error, Result};
use crate::models::LambdaSpec;

pub const MIN_QUAD_POINTS: usize = 64;

/// Largest tolerated `|Im|/Re` of the quadrature sum.
const IMAG_TOLERANCE: f64 = 1e-3;

/// Nodes required per standard deviation `√Φ″(ϱ)` of the coefficient profile.
///
/// Aliased coefficients then enter with relative weight about `e^{−32}`.
pub const ALIAS_RESOLUTION: f64 = 8.0;

/// Sums below this fraction of `Σ|terms|` are read as a zero count.
const ZERO_LEVEL: f64 = 1e-12;

/// `max(256, 16⌈n^{(α+2)/(2(α+1))}⌉, 8n)`.
///
/// The last term keeps the aliased coefficients `p(n + kN) e^{−kNϱ}` far below one.
pub fn default_quad_points(spec: &LambdaSpec, n: u64) -> usize {
    let alpha = spec.alpha_f64();
    let width = (n as f64).powf((alpha + 2.0) / (2.0 * (alpha + 1.0))).ceil() as usize;
    256.max(16 * width).max(8 * n as usize)
}

/// `log p(n)` from an already solved saddle point, `−∞` when the count is zero.
pub fn cauchy_log_count_ctx(ctx: &SaddleContext, quad_points: usize) -> Result<f64> {
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::Argument(format!("quad_points must be at least {MIN_QUAD_POINTS}, got {quad_points}")));
    }
    let n = ctx.n;
    let needed = ALIAS_RESOLUTION * ctx.phi2.sqrt();
    if (quad_points as f64) < needed {
        return Err(Error::Quadrature(format!(
            "{quad_points} points cannot resolve n = {n}: aliasing needs at least {} nodes",
            needed.ceil()
        )));
    }
    let big_n = quad_points as u64;
    let two_pi = std::f64::consts::TAU;
    // t_j = −π + 2πj/N; the phase t_j·n is reduced exactly before scaling.
    let base_phase = if n % 2 == 1 { std::f64::consts::PI } else { 0.0 };
    let terms: Vec<Complex64> = (0..big_n)
        .into_par_iter()
        .map(|j| {
            let t = -std::f64::consts::PI + two_pi * j as f64 / big_n as f64;
            let phase = base_phase + two_pi * (((u128::from(j) * u128::from(n)) % u128::from(big_n)) as f64) / big_n as f64;
            let expo = ctx.phi_at(t) - ctx.f_log + Complex64::new(0.0, phase);
            expo.exp()
        })
        .collect();
    let mut re = super::phi::Kahan::default();
    let mut im = super::phi::Kahan::default();
    let mut mass = 0.0;
    for z in &terms {
        re.add(z.re);
        im.add(z.im);
        mass += z.norm();
    }
    let (re, im) = (re.value() / big_n as f64, im.value() / big_n as f64);
    // Cancellation leaves about 1e-13 of the absolute mass as noise.
    let noise = ZERO_LEVEL * mass / big_n as f64;
    if re.abs() <= noise && im.abs() <= noise {
        return Ok(f64::NEG_INFINITY);
    }
    if !(re > 0.0) || (im.abs() > IMAG_TOLERANCE * re && im.abs() > noise) {
        return Err(Error::Quadrature(format!(
            "quadrature with {quad_points} points is unresolved at n = {n} (sum {re:e} + {im:e}i); increase quad_points"
        )));
    }
    Ok(ctx.rho * n as f64 + ctx.f_log + re.ln())
}

/// `log p(n)` by Cauchy's formula on the circle of radius `e^{−ϱ}`.
pub fn cauchy_log_count(spec: &LambdaSpec, n: u64, quad_points: usize) -> Result<f64> {
    cauchy_log_count_ctx(&solve_saddle(spec, n)?, quad_points)
}

/// `p(n)` by Cauchy's formula; overflows to `inf` once `p(n)` exceeds the `f64` range.
pub fn cauchy_count(spec: &LambdaSpec, n: u64, quad_points: usize) -> Result<f64> {
    Ok(cauchy_log_count(spec, n, quad_points)?.exp())
}
