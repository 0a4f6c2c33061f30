use rug::{Complex, Float};

use super::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::Precision;

/// Argument size above which the Stirling series is summed directly.
///
/// The smallest term of the series behaves like `e^{−2π|z|}`, so the
/// threshold grows with the requested number of digits.
fn stirling_threshold(prec: Precision) -> f64 {
    let need = f64::from(prec.digits() + 5) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI);
    (need + 4.0).max(15.0)
}

fn is_nonpositive_integer(z: &Complex) -> bool {
    z.imag().is_zero() && z.real().is_integer() && *z.real() <= 0
}

/// `log Γ(z)` for complex `z`, off the poles at `0, −1, −2, …`.
///
/// The value is the sum of principal logarithms produced by the upward
/// recursion `Γ(z) = Γ(z+N)/∏(z+j)`. It agrees with the principal branch of
/// the analytic continuation from the positive axis up to a multiple of `2πi`,
/// and `exp` of it is always `Γ(z)`.
pub fn log_gamma(z: &Complex, prec: Precision) -> Result<Complex> {
    if !z.real().is_finite() || !z.imag().is_finite() {
        return Err(Error::Argument("log_gamma of a non-finite argument".into()));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma at {}", z.real().to_f64())));
    }
    let work = prec.widened(16);
    let bits = work.bits();
    let mut w = Complex::with_val(bits, z);

    let threshold = stirling_threshold(prec);
    let mut shift_log = Complex::with_val(bits, 0);
    let re = w.real().to_f64();
    if re < threshold {
        let steps = (threshold - re).ceil() as u32;
        for _ in 0..steps {
            shift_log += Complex::with_val(bits, w.ln_ref());
            w += 1u32;
        }
    }

    let mut acc: Complex = (w.clone() - Float::with_val(bits, 0.5)) * w.clone().ln() - &w;
    acc += work.half_log_two_pi();

    let eps = work.epsilon();
    let inv = Complex::with_val(bits, w.clone().recip());
    let inv_sq = Complex::with_val(bits, inv.clone().square());
    let mut pw = inv;
    for j in 1usize.. {
        let b = bernoulli_number(2 * j);
        let coeff = Float::with_val(bits, &b) / ((2 * j * (2 * j - 1)) as u64);
        let term = Complex::with_val(bits, &pw * &coeff);
        let size = Float::with_val(bits, term.abs_ref());
        acc += &term;
        if size < eps || j > 4 * bits as usize {
            break;
        }
        pw *= &inv_sq;
    }

    let mut out = acc - shift_log;
    // On the negative axis each shifted factor contributes iπ; keep only the
    // sign of Γ(x), which is negative exactly when ⌈−x⌉ is odd.
    if z.imag().is_zero() && *z.real() < 0 {
        let neg_ceil = (-z.real().clone()).ceil().to_f64() as i64;
        *out.mut_imag() = if neg_ceil % 2 == 1 { work.pi() } else { Float::with_val(bits, 0) };
    }
    Ok(Complex::with_val(prec.bits(), out))
}

/// `Γ(z) = exp(log Γ(z))`.
pub fn gamma(z: &Complex, prec: Precision) -> Result<Complex> {
    Ok(log_gamma(z, prec)?.exp())
}

/// `log |Γ(x)|` for real `x` off the poles.
pub fn ln_gamma_real(x: &Float, prec: Precision) -> Result<Float> {
    let z = Complex::with_val(prec.bits(), (x, 0));
    Ok(log_gamma(&z, prec)?.real().clone())
}

/// `Γ(x)` for real `x` off the poles.
pub fn gamma_real(x: &Float, prec: Precision) -> Result<Float> {
    let z = Complex::with_val(prec.bits(), (x, 0));
    Ok(gamma(&z, prec)?.real().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: &Float, b: &Float) -> f64 {
        let d = Float::with_val(a.prec(), a - b).abs();
        (d / Float::with_val(a.prec(), b.abs_ref())).to_f64()
    }

    fn c(prec: Precision, re: f64, im: f64) -> Complex {
        Complex::with_val(prec.bits(), (re, im))
    }

    #[test]
    fn half_and_five() {
        let p = Precision::default();
        let half = log_gamma(&c(p, 0.5, 0.0), p).unwrap();
        let want = p.pi().sqrt().ln();
        assert!(rel_err(half.real(), &want) < 1e-48);
        assert!(half.imag().is_zero());
        let five = log_gamma(&c(p, 5.0, 0.0), p).unwrap();
        assert!(rel_err(five.real(), &p.float(24).ln()) < 1e-48);
    }

    #[test]
    fn negative_half_branch() {
        let p = Precision::default();
        let lg = log_gamma(&c(p, -0.5, 0.0), p).unwrap();
        let g = lg.clone().exp();
        let want = -(p.pi().sqrt() * 2u32);
        assert!(rel_err(g.real(), &want) < 1e-45);
        assert!(Float::with_val(p.bits(), g.imag().abs_ref()).to_f64() < 1e-45);
        assert!(rel_err(lg.imag(), &p.pi()) < 1e-48);
    }

    #[test]
    fn poles_rejected() {
        let p = Precision::default();
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(&c(p, x, 0.0), p), Err(Error::Pole(_))));
        }
        assert!(log_gamma(&c(p, -1.0, 1e-3), p).is_ok());
    }

    #[test]
    fn matches_mpfr_on_positive_axis() {
        let p = Precision::default();
        for x in [0.001, 0.25, 1.0 / 3.0, 1.5, 2.0, 7.25, 19.5, 40.0, 123.456] {
            let mine = ln_gamma_real(&p.float(x), p).unwrap();
            let mpfr = p.float(x).ln_gamma();
            let d = Float::with_val(p.bits(), &mine - &mpfr).abs().to_f64();
            assert!(d < 1e-47 * mpfr.to_f64().abs().max(1.0), "x={x} diff={d}");
        }
    }

    #[test]
    fn reflection_formula() {
        let p = Precision::default();
        let pi = p.pi();
        for (re, im) in [(0.3, 0.0), (-2.7, 0.0), (0.25, 1.5), (-3.1, -0.8), (4.5, 10.0)] {
            let z = c(p, re, im);
            let one_minus = Complex::with_val(p.bits(), 1 - z.clone());
            let lhs = gamma(&z, p).unwrap() * gamma(&one_minus, p).unwrap();
            let rhs = Complex::with_val(p.bits(), &pi) / (z.clone() * &pi).sin();
            let diff = Float::with_val(p.bits(), Complex::with_val(p.bits(), &lhs - &rhs).abs_ref());
            let scale = Float::with_val(p.bits(), rhs.abs_ref());
            assert!((diff / scale).to_f64() < 1e-45, "z=({re},{im})");
        }
    }

    #[test]
    fn recurrence_off_axis() {
        let p = Precision::default();
        let z = c(p, -0.4, 2.2);
        let zp1 = Complex::with_val(p.bits(), &z + 1u32);
        let lhs = gamma(&zp1, p).unwrap();
        let rhs = gamma(&z, p).unwrap() * &z;
        let diff = Float::with_val(p.bits(), Complex::with_val(p.bits(), &lhs - &rhs).abs_ref());
        assert!(diff.to_f64() / Float::with_val(p.bits(), lhs.abs_ref()).to_f64() < 1e-46);
    }
}
