//! Numerical checks of the small-`σ` expansion of `Φ` and of the minor-arc decay of `F`.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::solve_saddle;
use crate::error::{Error, Result};
use crate::models::{l_data, LambdaSpec};
use crate::special::{gamma_real, riemann_zeta, zeta_nonpositive_integer};
use crate::Precision;

/// Order `ε` required of the weak remainder.
pub const WEAK_EPSILON: f64 = 0.5;

/// Number of `σ^j` terms the strong expansion includes.
pub const STRONG_TERMS: u32 = 2;

/// `β = 1 + α/ARC_BETA_DIVISOR` for the arc scan.
pub const ARC_BETA_DIVISOR: f64 = 2.4;

/// Residuals below this many ulps of `Φ` are indistinguishable from rounding.
const NOISE_ULPS: f64 = 1e6;

/// `Φ(σ)` at working precision, summing `−log(−expm1(−σm))` over `m ≤ ⌈(digits+5)·ln 10/σ⌉`.
pub fn phi_high(spec: &LambdaSpec, sigma: &Float, prec: Precision) -> Result<Float> {
    if !(*sigma > 0) {
        return Err(Error::Domain("Φ needs σ > 0".into()));
    }
    let bits = prec.bits() + 16;
    let limit = super::truncation(sigma.to_f64(), prec.digits() + 5);
    let mut total = Float::with_val(bits, 0);
    for m in spec.parts_up_to(limit) {
        let x = -Float::with_val(bits, sigma * m);
        total -= (-x.exp_m1()).ln();
    }
    Ok(Float::with_val(prec.bits(), total))
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiExpansionRow {
    pub sigma: f64,
    pub direct: f64,
    pub expansion: f64,
    /// `direct − expansion`.
    pub residual: f64,
    /// `|residual|/σ^{ε}` in weak mode, `|residual|/σ^{J+1}` in strong mode.
    pub scaled: f64,
    /// Residual below the rounding level of the direct sum.
    pub at_noise_floor: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiExpansionReport {
    pub spec: String,
    pub strong: bool,
    /// Correction terms `σ^j` included, `0` in weak mode.
    pub terms: u32,
    pub rows: Vec<PhiExpansionRow>,
    /// Least-squares slope of `log|residual|` against `log σ` over rows above the noise floor.
    /// `None` when fewer than two rows remain.
    pub slope: Option<f64>,
    /// Order the slope must reach.
    pub required_order: f64,
    pub passed: bool,
}

fn slope_fit(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Compares the direct `Φ(σ)` with `AΓ(α)ζ(1+α)σ^{−α} − L(0) log σ + L′(0)`,
/// extended in strong mode by `Σ_{1≤j≤J} (−1)^j ζ(1−j) L(−j) σ^j/j!`.
pub fn verify_phi_expansion(spec: &LambdaSpec, sigmas: &[f64], strong: bool) -> Result<PhiExpansionReport> {
    if sigmas.is_empty() || sigmas.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
        return Err(Error::Argument("sigma list must be non-empty and positive".into()));
    }
    let prec = Precision::default();
    let bits = prec.bits();
    let ld = l_data(spec, prec)?;
    let terms = if strong { STRONG_TERMS } else { 0 };
    let mut coeffs = Vec::new();
    if strong {
        if !ld.extra_poles.is_empty() {
            return Err(Error::Capability(format!("{spec} has poles of L left of 0; no strong expansion")));
        }
        for j in 1..=terms {
            let lv = ld
                .neg_value(j)
                .ok_or_else(|| Error::Capability(format!("L(−{j}) is unavailable for {spec}")))?;
            let z = Float::with_val(bits, &zeta_nonpositive_integer(j - 1));
            let fact: u64 = (1..=u64::from(j)).product();
            let sign = if j % 2 == 1 { -1 } else { 1 };
            coeffs.push(Float::with_val(bits, &z * lv) * sign / fact);
        }
    }
    let alpha = ld.alpha.clone();
    let main = Float::with_val(bits, &ld.residue * gamma_real(&alpha, prec)?)
        * riemann_zeta(&Float::with_val(bits, &alpha + 1u32), prec)?;

    let rows: Vec<Result<PhiExpansionRow>> = sigmas
        .par_iter()
        .map(|&s| {
            let sigma = Float::with_val(bits, s);
            let direct = phi_high(spec, &sigma, prec)?;
            let log_s = Float::with_val(bits, sigma.ln_ref());
            let mut exp = Float::with_val(bits, &main / Float::with_val(bits, (&sigma).pow(&alpha)));
            exp -= Float::with_val(bits, &ld.l0 * &log_s);
            exp += &ld.l0_prime;
            let mut sp = sigma.clone();
            for c in &coeffs {
                exp += Float::with_val(bits, c * &sp);
                sp *= &sigma;
            }
            let residual = Float::with_val(bits, &direct - &exp).to_f64();
            let floor = direct.to_f64().abs() * NOISE_ULPS * 2f64.powi(-(prec.bits() as i32));
            let order = if strong { f64::from(terms + 1) } else { WEAK_EPSILON };
            Ok(PhiExpansionRow {
                sigma: s,
                direct: direct.to_f64(),
                expansion: exp.to_f64(),
                residual,
                scaled: residual.abs() / s.powf(order),
                at_noise_floor: residual.abs() <= floor,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| !r.at_noise_floor).map(|r| (r.sigma.ln(), r.residual.abs().ln())).collect();
    let slope = slope_fit(&pts);
    let required_order = if strong { f64::from(terms + 1) } else { WEAK_EPSILON };
    let passed = if strong {
        slope.is_none_or(|m| m >= required_order)
    } else {
        // The scaled remainder must stay bounded as σ decreases.
        let first = rows.iter().map(|r| r.scaled).fold(0.0, f64::max);
        let tail = rows.last().map_or(0.0, |r| r.scaled);
        slope.is_none_or(|m| m >= required_order) && tail <= first
    };
    Ok(PhiExpansionReport { spec: spec.to_string(), strong, terms, rows, slope, required_order, passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct ArcBoundReport {
    pub spec: String,
    pub n: u64,
    pub rho: f64,
    pub beta: f64,
    /// Left end `ϱ^β` of the scanned range `[ϱ^β, π]`.
    pub t_min: f64,
    pub grid: usize,
    /// `max |F(ϱ+it)|/F(ϱ)` over the grid.
    pub max_ratio: f64,
    pub t_at_max: f64,
    /// `∫_{ϱ^β≤|t|≤π} |F(ϱ+it)| dt / F(ϱ)` by the trapezoidal rule.
    pub integral: f64,
    /// `integral/ϱ²`, the constant in the bound `≪ ϱ² F(ϱ)`.
    pub scaled_integral: f64,
}

/// Scans `|F(ϱ+it)|/F(ϱ)` on `ϱ^β ≤ t ≤ π` with `β = 1 + α/2.4`.
pub fn verify_arc_bound(spec: &LambdaSpec, n: u64, grid: usize) -> Result<ArcBoundReport> {
    if grid < 1000 {
        return Err(Error::Argument(format!("arc grid needs at least 1000 points, got {grid}")));
    }
    let ctx = solve_saddle(spec, n)?;
    let beta = 1.0 + spec.alpha_f64() / ARC_BETA_DIVISOR;
    let t_min = ctx.rho.powf(beta);
    let pi = std::f64::consts::PI;
    if t_min >= pi {
        return Err(Error::Domain(format!("ϱ^β = {t_min} leaves no arc for n = {n}")));
    }
    let h = (pi - t_min) / (grid - 1) as f64;
    let ratios: Vec<f64> = (0..grid).into_par_iter().map(|i| ctx.log_ratio(t_min + h * i as f64).exp()).collect();
    let (mut max_ratio, mut t_at_max) = (0.0, t_min);
    for (i, &r) in ratios.iter().enumerate() {
        if r > max_ratio {
            max_ratio = r;
            t_at_max = t_min + h * i as f64;
        }
    }
    let inner: f64 = ratios[1..grid - 1].iter().sum();
    let one_side = h * (inner + 0.5 * (ratios[0] + ratios[grid - 1]));
    let integral = 2.0 * one_side;
    Ok(ArcBoundReport {
        spec: spec.to_string(),
        n,
        rho: ctx.rho,
        beta,
        t_min,
        grid,
        max_ratio,
        t_at_max,
        integral,
        scaled_integral: integral / (ctx.rho * ctx.rho),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyadic() -> Vec<f64> {
        (3..=10).map(|j| 2f64.powi(-j)).collect()
    }

    #[test]
    fn phi_high_matches_double() {
        let spec = LambdaSpec::powers(2).unwrap();
        let hi = phi_high(&spec, &Precision::default().float(0.1), Precision::default()).unwrap().to_f64();
        let lo = super::super::phi(&spec, num_complex::Complex64::new(0.1, 0.0)).unwrap().re;
        assert!((hi - lo).abs() < 1e-12 * hi);
    }

    #[test]
    fn classical_weak() {
        let r = verify_phi_expansion(&LambdaSpec::Classical, &dyadic(), false).unwrap();
        assert!(r.passed, "{r:?}");
        // Remainder is −σ/24 up to exponentially small terms.
        let s = r.slope.unwrap();
        assert!((s - 1.0).abs() < 1e-6, "{s}");
    }

    #[test]
    fn classical_strong_reaches_noise() {
        let r = verify_phi_expansion(&LambdaSpec::Classical, &dyadic(), true).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().skip(2).all(|row| row.at_noise_floor), "{r:?}");
    }

    #[test]
    fn ap_strong_slope() {
        let spec = LambdaSpec::power_ap(3, 4, 1).unwrap();
        let r = verify_phi_expansion(&spec, &dyadic(), true).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.slope.unwrap() >= 3.0);
    }

    #[test]
    fn strong_needs_continuation_data() {
        let spec = crate::parse_spec("poly(1,0,1)").unwrap();
        assert!(matches!(verify_phi_expansion(&spec, &dyadic(), true), Err(Error::Capability(_))));
        assert!(verify_phi_expansion(&spec, &dyadic(), false).is_ok());
    }

    #[test]
    fn arc_scan_shape() {
        let r = verify_arc_bound(&LambdaSpec::Classical, 500, 2000).unwrap();
        assert!(r.max_ratio < 1.0);
        assert!((r.t_at_max - r.t_min).abs() < 1e-12);
        assert!(r.integral > 0.0);
        assert!(verify_arc_bound(&LambdaSpec::Classical, 500, 10).is_err());
    }
}
