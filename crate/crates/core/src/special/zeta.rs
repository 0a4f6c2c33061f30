use rug::ops::Pow;
use rug::{Float, Rational};

use super::bernoulli::bernoulli_number;
use super::gamma::ln_gamma_real;
use crate::error::{Error, Result};
use crate::Precision;

/// `Some(m)` when `s = −m` for an integer `m ≥ 0`.
fn nonpositive_integer(s: &Float) -> Option<u32> {
    if s.is_integer() && *s <= 0 && *s > -1.0e6 {
        Some((-s.to_f64()) as u32)
    } else {
        None
    }
}

/// `ζ(−m) = −B_{m+1}/(m+1)`, with `ζ(0) = −1/2` and exact zeros at `−2, −4, …`.
pub(crate) fn zeta_nonpositive_integer(m: u32) -> Rational {
    if m == 0 {
        return Rational::from((-1, 2));
    }
    -bernoulli_number(m as usize + 1) / (m + 1)
}

/// Riemann `ζ(s)` for real `s ≠ 1`.
///
/// Non-positive integers are evaluated exactly through Bernoulli numbers,
/// every other point through MPFR.
pub fn riemann_zeta(s: &Float, prec: Precision) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole("riemann_zeta at s = 1".into()));
    }
    if !s.is_finite() {
        return Err(Error::Argument("riemann_zeta of a non-finite argument".into()));
    }
    if let Some(m) = nonpositive_integer(s) {
        return Ok(Float::with_val(prec.bits(), &zeta_nonpositive_integer(m)));
    }
    Ok(Float::with_val(prec.bits(), s).zeta())
}

/// `ζ′(0) = −½ log 2π`.
pub fn zeta_deriv0(prec: Precision) -> Float {
    -prec.half_log_two_pi()
}

/// Hurwitz `ζ(s, a) = Σ_{n ≥ 0} (n + a)^{−s}` for real `s ≠ 1`, `0 < a ≤ 1`.
pub fn hurwitz_zeta(s: &Float, a: &Float, prec: Precision) -> Result<Float> {
    if !(*a > 0 && *a <= 1) {
        return Err(Error::Argument(format!("hurwitz_zeta needs 0 < a ≤ 1, got {}", a.to_f64())));
    }
    hurwitz_zeta_shifted(s, a, prec)
}

/// Hurwitz zeta for any shift `a > 0` by Euler–Maclaurin summation.
///
/// ```text
/// ζ(s,a) = Σ_{n<N} (n+a)^{−s} + (N+a)^{1−s}/(s−1) + ½(N+a)^{−s}
///        + Σ_{j≥1} B_{2j}/(2j)! · s(s+1)…(s+2j−2) · (N+a)^{1−s−2j}
/// ```
///
/// For `s = −m` the correction series terminates and `N = 0` gives the
/// Bernoulli-polynomial value exactly.
pub fn hurwitz_zeta_shifted(s: &Float, a: &Float, prec: Precision) -> Result<Float> {
    if *s == 1 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    if !(*a > 0) || !a.is_finite() || !s.is_finite() {
        return Err(Error::Argument(format!("hurwitz_zeta needs finite s and a > 0, got a = {}", a.to_f64())));
    }
    let s_f = s.to_f64();
    let a_f = a.to_f64();
    let exact = nonpositive_integer(s).is_some();

    // The smallest correction term is about e^{−2π(N+a)}.
    let target = f64::from(prec.digits() + 12) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI);
    let n_direct = if exact { 0 } else { (target + s_f.abs() - a_f).ceil().max(0.0) as u64 };
    let base_f = n_direct as f64 + a_f;
    // Terms of size base^{−s} cancel down to O(1) results when s < 0.
    let guard = ((-s_f).max(0.0) + 1.0) * (base_f + 1.0).log2() + 16.0;
    let work = prec.widened(guard.ceil() as u32);
    let bits = work.bits();

    let s = Float::with_val(bits, s);
    let a = Float::with_val(bits, a);
    let neg_s = Float::with_val(bits, -&s);

    let mut total = Float::with_val(bits, 0);
    for n in 0..n_direct {
        let x = Float::with_val(bits, &a + n);
        total += x.pow(&neg_s);
    }

    let base = Float::with_val(bits, &a + n_direct);
    let base_pow = Float::with_val(bits, (&base).pow(&neg_s));
    let sm1 = Float::with_val(bits, &s - 1u32);
    total += Float::with_val(bits, &base_pow * &base) / &sm1;
    total += Float::with_val(bits, &base_pow / 2u32);

    let eps = Float::with_val(bits, prec.epsilon() / 1000u32);
    let inv_base_sq = Float::with_val(bits, base.clone().square().recip());
    let mut pw = Float::with_val(bits, &base_pow / &base);
    let mut poch = s.clone();
    let mut fact = Float::with_val(bits, 2u32);
    let max_terms = 4 * bits as usize + 4 * s_f.abs() as usize + 16;
    let mut converged = false;
    for j in 1..=max_terms {
        if poch.is_zero() {
            converged = true;
            break;
        }
        let b = Float::with_val(bits, &bernoulli_number(2 * j));
        let term = Float::with_val(bits, &b * &poch) * &pw / &fact;
        total += &term;
        let scale = Float::with_val(bits, total.abs_ref()).max(&Float::with_val(bits, base_pow.abs_ref()));
        if !exact && Float::with_val(bits, term.abs_ref()) < Float::with_val(bits, &eps * &scale) {
            converged = true;
            break;
        }
        let k = 2 * j as u64;
        poch *= Float::with_val(bits, &s + (k - 1));
        poch *= Float::with_val(bits, &s + k);
        fact *= (k + 1) * (k + 2);
        pw *= &inv_base_sq;
    }
    if !converged {
        return Err(Error::Numeric(format!("Euler–Maclaurin tail did not converge for s = {s_f}, a = {a_f}")));
    }
    Ok(Float::with_val(prec.bits(), total))
}

/// `ζ′(0, a) = log Γ(a) − ½ log 2π` for `0 < a ≤ 1`.
pub fn hurwitz_deriv0(a: &Float, prec: Precision) -> Result<Float> {
    if !(*a > 0 && *a <= 1) {
        return Err(Error::Argument(format!("hurwitz_deriv0 needs 0 < a ≤ 1, got {}", a.to_f64())));
    }
    hurwitz_deriv0_shifted(a, prec)
}

/// Same formula for any `a > 0`.
pub fn hurwitz_deriv0_shifted(a: &Float, prec: Precision) -> Result<Float> {
    Ok(ln_gamma_real(a, prec)? - prec.half_log_two_pi())
}
