//! `Φ(s) = log F(s) = −Σ_{m∈Λ} log(1 − e^{−sm})` and its real derivatives, in double precision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::LambdaSpec;

/// Decimal digits targeted by the part-sum truncation of the double-precision paths.
pub const F64_DIGITS: u32 = 20;

/// Highest derivative order supported by [`phi_deriv`].
pub const MAX_DERIV: u32 = 6;

/// Part cutoff `M(σ) = ⌈digits·ln 10/σ⌉`, so that `e^{−σM} ≤ 10^{−digits}`.
pub fn truncation(sigma: f64, digits: u32) -> u64 {
    (f64::from(digits) * std::f64::consts::LN_10 / sigma).ceil() as u64
}

/// Cutoff for `Φ^{(k)}`, whose terms carry an extra factor `m^k`.
pub fn deriv_truncation(sigma: f64, digits: u32, k: u32) -> u64 {
    let base = f64::from(digits) * std::f64::consts::LN_10;
    ((base + f64::from(k) * (base / sigma).ln().max(0.0)) / sigma).ceil() as u64
}

/// Bound on the omitted tail `Σ_{m>M} −log(1 − e^{−σm})`.
pub fn tail_bound(sigma: f64, m: u64) -> f64 {
    let x = (-sigma * m as f64).exp();
    x / (-(-sigma).exp_m1()) / (1.0 - x)
}

pub(crate) fn parts_f64(spec: &LambdaSpec, limit: u64) -> Vec<f64> {
    spec.parts_up_to(limit).into_iter().map(|m| m as f64).collect()
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// `log(1 − w)` on the principal branch, accurate for small `|w|`.
fn log_one_minus(w: Complex64) -> Complex64 {
    let re = 0.5 * (w.re * (w.re - 2.0) + w.im * w.im).ln_1p();
    let im = (-w.im).atan2(1.0 - w.re);
    Complex64::new(re, im)
}

/// `Φ(s)` summed over the given parts.
pub(crate) fn phi_parts(parts: &[f64], s: Complex64) -> Complex64 {
    let (mut re, mut im) = (Kahan::default(), Kahan::default());
    for &m in parts {
        let mag = (-s.re * m).exp();
        let (sin, cos) = (s.im * m).sin_cos();
        let term = log_one_minus(Complex64::new(mag * cos, -mag * sin));
        re.add(-term.re);
        im.add(-term.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `Re Φ(s)` summed over the given parts.
pub(crate) fn phi_re_parts(parts: &[f64], s: Complex64) -> f64 {
    let mut re = Kahan::default();
    for &m in parts {
        let mag = (-s.re * m).exp();
        let cos = (s.im * m).cos();
        re.add(-0.5 * (mag * (mag - 2.0 * cos)).ln_1p());
    }
    re.value()
}

/// `Φ(σ)` for real `σ`, with `−log(1 − e^{−σm}) = −log(−expm1(−σm))`.
pub(crate) fn phi_real_parts(parts: &[f64], sigma: f64) -> f64 {
    let mut acc = Kahan::default();
    for &m in parts {
        acc.add(-(-(-sigma * m).exp_m1()).ln());
    }
    acc.value()
}

/// Eulerian polynomial `A_n(x)` for `n ≤ 5`.
fn eulerian(n: u32, x: f64) -> f64 {
    const ROWS: [&[f64]; 6] = [
        &[1.0],
        &[1.0],
        &[1.0, 1.0],
        &[1.0, 4.0, 1.0],
        &[1.0, 11.0, 11.0, 1.0],
        &[1.0, 26.0, 66.0, 26.0, 1.0],
    ];
    ROWS[n as usize].iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `Φ^{(k)}(σ) = (−1)^k Σ_m m^k Li_{1−k}(e^{−σm})`, `Li_{1−k}(x) = x A_{k−1}(x)/(1−x)^k`.
pub(crate) fn phi_deriv_parts(parts: &[f64], sigma: f64, k: u32) -> f64 {
    let mut acc = Kahan::default();
    for &m in parts {
        let x = (-sigma * m).exp();
        let one_minus = -(-sigma * m).exp_m1();
        let li = x * eulerian(k - 1, x) / one_minus.powi(k as i32);
        acc.add(m.powi(k as i32) * li);
    }
    if k % 2 == 1 {
        -acc.value()
    } else {
        acc.value()
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("Φ needs Re s > 0, got {sigma}")));
    }
    Ok(())
}

/// `Φ(s)` for `Re s > 0`, principal log per factor.
pub fn phi(spec: &LambdaSpec, s: Complex64) -> Result<Complex64> {
    check_sigma(s.re)?;
    if !s.im.is_finite() {
        return Err(Error::Domain("Φ needs a finite imaginary part".into()));
    }
    let parts = parts_f64(spec, truncation(s.re, F64_DIGITS));
    Ok(phi_parts(&parts, s))
}

/// `Φ^{(k)}(σ)` for `1 ≤ k ≤ 6`.
pub fn phi_deriv(spec: &LambdaSpec, sigma: f64, k: u32) -> Result<f64> {
    check_sigma(sigma)?;
    if !(1..=MAX_DERIV).contains(&k) {
        return Err(Error::Argument(format!("phi_deriv supports orders 1 to {MAX_DERIV}, got {k}")));
    }
    let parts = parts_f64(spec, deriv_truncation(sigma, F64_DIGITS, k));
    Ok(phi_deriv_parts(&parts, sigma, k))
}
