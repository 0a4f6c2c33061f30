use rug::ops::Pow;
use rug::Float;

use super::ldata::pieces;
use super::spec::{IntPolynomial, LambdaSpec};
use crate::error::{Error, Result};
use crate::special::hurwitz_zeta_shifted;
use crate::Precision;

/// `L_Λ(z)` for real `z` away from the poles, by analytic continuation.
pub fn l_eval(spec: &LambdaSpec, z: &Float, prec: Precision) -> Result<Float> {
    if !z.is_finite() {
        return Err(Error::Argument("l_eval needs a finite z".into()));
    }
    match pieces(spec)? {
        Some(pieces) => {
            let mut total = Float::with_val(prec.bits(), 0);
            for p in pieces {
                total += p.eval(z, prec)?;
            }
            Ok(total)
        }
        None => {
            let LambdaSpec::Polynomial(poly) = spec else { unreachable!("only polynomials lack pieces") };
            let (m, j) = polynomial_truncation(poly, z, prec);
            l_eval_polynomial(poly, z, m, j, prec)
        }
    }
}

/// Cauchy bound `1 + max |a_j/a_0|` on the roots of `f`.
fn root_radius(poly: &IntPolynomial) -> f64 {
    let a0 = poly.leading() as f64;
    1.0 + poly.coeffs()[1..].iter().map(|&c| (c as f64 / a0).abs()).fold(0.0, f64::max)
}

/// Head cutoff `M` and tail depth `J` for [`l_eval_polynomial`].
pub fn polynomial_truncation(poly: &IntPolynomial, z: &Float, prec: Precision) -> (u64, usize) {
    let k = poly.degree() as f64;
    let kz = k * z.to_f64().abs();
    let radius = root_radius(poly);
    let m = (50.0f64).max(10.0 * (1.0 + kz)).max((20.0 * radius).ceil());
    let digits_per_term = (m / radius).log10();
    let depth = (f64::from(prec.digits() + 5) / digits_per_term).ceil().max(30.0);
    (m as u64, (1.0 + kz).ceil() as usize + depth as usize)
}

/// Coefficients `e_i(z)` of `(1 + G(n))^{−z} = Σ e_i n^{−i}` for `i ≤ count`,
/// with `G(n) = Σ_{j≥1} (a_j/a_0) n^{−j}`, together with `de_i/dz`.
pub(crate) fn tail_coefficients(poly: &IntPolynomial, z: &Float, count: usize, bits: u32) -> (Vec<Float>, Vec<Float>) {
    let a0 = poly.leading();
    let b: Vec<Float> = poly.coeffs().iter().map(|&c| Float::with_val(bits, c) / a0).collect();
    let k = poly.degree();
    let w = Float::with_val(bits, -z);
    let mut q = vec![Float::with_val(bits, 1)];
    let mut dq = vec![Float::with_val(bits, 0)];
    // n q_n = Σ_{j=1}^{min(n,k)} (w j − (n − j)) b_j q_{n−j}, and its w-derivative.
    for n in 1..=count {
        let mut acc = Float::with_val(bits, 0);
        let mut dacc = Float::with_val(bits, 0);
        for j in 1..=n.min(k) {
            let coef = Float::with_val(bits, &w * j as u64) - (n - j) as u64;
            let bq = Float::with_val(bits, &b[j] * &q[n - j]);
            dacc += Float::with_val(bits, &bq * j as u64);
            dacc += Float::with_val(bits, &b[j] * &dq[n - j]) * &coef;
            acc += bq * coef;
        }
        q.push(acc / n as u64);
        dq.push(dacc / n as u64);
    }
    // d/dz = −d/dw
    let de = dq.into_iter().map(|x| -x).collect();
    (q, de)
}

/// `L(z) = Σ_{n≤M} f(n)^{−z} + a_0^{−z} Σ_{i≤J} e_i(z) ζ(kz + i, M + 1)`.
///
/// Terms with `kz + i = 1` and vanishing `e_i(z)` contribute their limit
/// `a_0^{−z} e_i′(z)/k`; a non-vanishing `e_i` there is a pole.
pub fn l_eval_polynomial(poly: &IntPolynomial, z: &Float, m: u64, j_terms: usize, prec: Precision) -> Result<Float> {
    let k = poly.degree();
    let z_f = z.to_f64();
    let kz = k as f64 * z_f;
    // Head terms reach f(M)^{|z|} while the result can be O(1).
    let mag = (kz.abs() + 1.0) * ((m as f64 + 1.0) * root_radius(poly)).log2();
    let work = prec.widened(mag.ceil() as u32 + 16);
    let bits = work.bits();
    let z = Float::with_val(bits, z);
    let neg_z = Float::with_val(bits, -&z);

    let mut head = Float::with_val(bits, 0);
    for n in 0..=m {
        let v = Float::with_val(bits, &poly.eval_u64(n));
        head += v.pow(&neg_z);
    }

    let (e, de) = tail_coefficients(poly, &z, j_terms, bits);
    let half = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2));
    let scale_e = e.iter().fold(Float::with_val(bits, 1), |acc, x| acc.max(&Float::with_val(bits, x.abs_ref())));
    let start = Float::with_val(bits, m + 1);
    let mut tail = Float::with_val(bits, 0);
    for i in 0..=j_terms {
        let s = Float::with_val(bits, &z * k as u64) + i as u64;
        let gap = Float::with_val(bits, &s - 1u32).abs();
        if gap <= half {
            if Float::with_val(bits, e[i].abs_ref()) <= Float::with_val(bits, &half * &scale_e) {
                tail += Float::with_val(bits, &de[i] / k as u64);
                continue;
            }
            return Err(Error::Pole(format!("polynomial L has a pole at z = {z_f}")));
        }
        if e[i].is_zero() {
            continue;
        }
        let zeta = hurwitz_zeta_shifted(&s, &start, work)?;
        tail += zeta * &e[i];
    }
    let a0_pow = Float::with_val(bits, poly.leading()).pow(&neg_z);
    Ok(Float::with_val(prec.bits(), head + tail * a0_pow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::spec::parse_spec;
    use crate::special::riemann_zeta;
    use rug::Rational;

    fn p() -> Precision {
        Precision::default()
    }

    fn diff(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec(), a - b).abs().to_f64()
    }

    #[test]
    fn classical_at_two() {
        let two = p().float(2);
        let v = l_eval(&LambdaSpec::Classical, &two, p()).unwrap();
        assert!(diff(&v, &riemann_zeta(&two, p()).unwrap()) < 1e-48);
    }

    #[test]
    fn ap_at_zero() {
        let v = l_eval(&LambdaSpec::power_ap(1, 4, 1).unwrap(), &p().float(0), p()).unwrap();
        assert!(diff(&v, &p().float(0.25)) < 1e-48);
    }

    #[test]
    fn polynomial_self_consistent_at_minus_one() {
        let LambdaSpec::Polynomial(poly) = parse_spec("poly(1,0,1)").unwrap() else { unreachable!() };
        let z = p().float(-1);
        let (m, j) = polynomial_truncation(&poly, &z, p());
        let a = l_eval_polynomial(&poly, &z, m, j, p()).unwrap();
        let b = l_eval_polynomial(&poly, &z, 3 * m, j + 25, p()).unwrap();
        assert!(diff(&a, &b) < 1e-20);
        // 1 + ζ(−2) + ζ(0) with no removable correction since e₃ ≡ 0.
        assert!(diff(&a, &p().float(0.5)) < 1e-40);
    }

    /// `(n+1)²` must reproduce `ζ(2z)`, which needs the removable term at `z = −1`.
    #[test]
    fn polynomial_matches_riemann() {
        let spec = parse_spec("poly(1,2,1)").unwrap();
        for z in [-1.0, -0.25, 0.0, 0.3, 1.5] {
            let zf = p().float(z);
            let got = l_eval(&spec, &zf, p()).unwrap();
            let want = riemann_zeta(&Float::with_val(p().bits(), &zf * 2u32), p()).unwrap();
            assert!(diff(&got, &want) < 1e-40, "z={z}");
        }
    }

    #[test]
    fn poles_reported() {
        let spec = parse_spec("poly(1,0,1)").unwrap();
        assert!(matches!(l_eval(&spec, &p().float(0.5), p()), Err(Error::Pole(_))));
        assert!(matches!(l_eval(&spec, &p().float(-0.5), p()), Err(Error::Pole(_))));
        assert!(matches!(l_eval(&LambdaSpec::Classical, &p().float(1), p()), Err(Error::Pole(_))));
        let third = Float::with_val(p().bits(), &Rational::from((1, 3)));
        assert!(matches!(l_eval(&LambdaSpec::powers(3).unwrap(), &third, p()), Err(Error::Pole(_))));
    }

    #[test]
    fn right_of_abscissa_matches_direct_sum() {
        for text in ["poly(1,0,1)", "poly(2,1,3)", "ap(3,4,1)", "kpow1(3,2)", "unionap(1,2;2,3)", "poly(1,0,0,3)"] {
            let spec = parse_spec(text).unwrap();
            let z = 3.0f64;
            let got = l_eval(&spec, &p().float(z), p()).unwrap().to_f64();
            let limit = 2_000_000u64;
            let direct: f64 = spec.parts_up_to(limit).iter().rev().map(|&m| (m as f64).powf(-z)).sum();
            // The omitted tail is below ∫ x^{−z} dN(x) over x > limit.
            assert!((got - direct).abs() < 1e-10, "{text}: {got} vs {direct}");
        }
    }

    /// Polynomial L′(0) by a central difference of the continuation.
    #[test]
    fn polynomial_derivative_at_zero() {
        let spec = parse_spec("poly(1,0,1)").unwrap();
        let ld = crate::models::l_data(&spec, p()).unwrap();
        let h = p().float(1e-15);
        let up = l_eval(&spec, &h, p()).unwrap();
        let down = l_eval(&spec, &Float::with_val(p().bits(), -&h), p()).unwrap();
        let fd = (up - down) / (h * 2u32);
        assert!(diff(&fd, &ld.l0_prime) < 1e-25);
        let l0 = l_eval(&spec, &p().float(0), p()).unwrap();
        assert!(diff(&l0, &ld.l0) < 1e-40);
    }

    #[test]
    fn residue_at_abscissa() {
        for text in ["classical", "powers(2)", "poly(1,0,1)", "ap(3,4,2)"] {
            let spec = parse_spec(text).unwrap();
            let ld = crate::models::l_data(&spec, p()).unwrap();
            let r = |h: f64| {
                let z = Float::with_val(p().bits(), &ld.alpha + h);
                l_eval(&spec, &z, p()).unwrap().to_f64() * h
            };
            // Richardson on the linear error term.
            let (r3, r4) = (r(1e-3), r(1e-4));
            let extrap = (10.0 * r4 - r3) / 9.0;
            let a = ld.residue.to_f64();
            assert!((extrap / a - 1.0).abs() < 0.01, "{text}: {extrap} vs {a}");
        }
    }
}
