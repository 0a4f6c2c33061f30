//! Family-specific closed forms of the main-term constants.
//!
//! Each function evaluates the constants directly from the family parameters,
//! without going through [`LData`](crate::models::LData), so the results serve
//! as an independent check of [`constants`](super::constants).

use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::Result;
use crate::models::{polynomial_roots, IntPolynomial};
use crate::special::{gamma_real, log_gamma, riemann_zeta};
use crate::Precision;

#[derive(Debug, Clone)]
pub struct FamilyDisplay {
    pub frak_b: Float,
    pub frak_c: Float,
    pub frak_h: Float,
    /// `γ₁₀` where the family has a closed form for it.
    pub gamma10: Option<Float>,
    /// `γ₁₀ + γ₀₁` where the family has a closed form for it.
    pub c1: Option<Float>,
}

fn rat(prec: Precision, n: i64, d: i64) -> Float {
    Float::with_val(prec.bits(), &Rational::from((n, d)))
}

/// `Γ(1 + 1/k) ζ(1 + 1/k)`.
fn gamma_zeta(k: u32, prec: Precision) -> Result<Float> {
    let s = Float::with_val(prec.bits(), 1u32 + rat(prec, 1, i64::from(k)));
    Ok(gamma_real(&s, prec)? * riemann_zeta(&s, prec)?)
}

pub fn classical(prec: Precision) -> FamilyDisplay {
    let bits = prec.bits();
    let pi = prec.pi();
    let sqrt3 = Float::with_val(bits, 3).sqrt();
    let root_two_thirds = rat(prec, 2, 3).sqrt();
    let inner = Float::with_val(bits, &pi / 48u32) + Float::with_val(bits, 3u32 / (Float::with_val(bits, &pi * 2u32)));
    FamilyDisplay {
        frak_b: (sqrt3 * 4u32).recip(),
        frak_c: Float::with_val(bits, &pi * &root_two_thirds),
        frak_h: Float::with_val(bits, 1),
        gamma10: None,
        c1: Some(-(root_two_thirds * inner)),
    }
}

/// Parts `n^k`.
pub fn powers(k: u32, prec: Precision) -> Result<FamilyDisplay> {
    let bits = prec.bits();
    let kf = Float::with_val(bits, k);
    let a = (gamma_zeta(k, prec)? / k).pow(rat(prec, i64::from(k), i64::from(k) + 1));
    let two_pi = prec.pi() * 2u32;
    let denom = (two_pi.pow(k + 1) * (1u32 + rat(prec, 1, i64::from(k)))).sqrt();
    let c = Float::with_val(bits, &a * (k + 1));
    let gamma10 = (k >= 2).then(|| {
        let num = Float::with_val(bits, (11 * k * k + 11 * k + 2) as u64);
        -(num / (Float::with_val(bits, &c * &kf) * 24u32))
    });
    Ok(FamilyDisplay {
        frak_b: Float::with_val(bits, &a / &denom),
        frak_c: c,
        frak_h: rat(prec, i64::from(3 * k + 1), i64::from(2 * k + 2)),
        gamma10,
        c1: None,
    })
}

/// Parts `(qn + a)^k`, any `k ≥ 1`.
pub fn power_ap(a: u64, q: u64, k: u32, prec: Precision) -> Result<FamilyDisplay> {
    let bits = prec.bits();
    let (ai, qi, ki) = (a as i64, q as i64, i64::from(k));
    let x = rat(prec, ai, qi);
    let frak_a = (gamma_zeta(k, prec)? / (q * u64::from(k))).pow(rat(prec, ki, ki + 1));
    let num = Float::with_val(bits, (&frak_a).pow(&x))
        * gamma_real(&x, prec)?.pow(k)
        * Float::with_val(bits, q).pow(rat(prec, ai * ki, qi));
    let two_pi = prec.pi() * 2u32;
    let denom = (two_pi.pow(k + 1) * Float::with_val(bits, q).pow(k) * (1u32 + rat(prec, 1, ki))).sqrt();
    let c = Float::with_val(bits, &frak_a * (k + 1));
    let gamma10 = (k >= 2).then(|| {
        let k2 = Float::with_val(bits, ki * ki);
        let t1 = (Float::with_val(bits, x.square_ref()) * 12u32 - 1u32) * k2;
        let t2 = (Float::with_val(bits, &x * 12u32) - 1u32) * ki;
        let brace = t1 + t2 + 2u32;
        -(brace / (Float::with_val(bits, &c * ki) * 24u32))
    });
    Ok(FamilyDisplay {
        frak_b: num / denom,
        frak_c: c,
        frak_h: rat(prec, qi * ki + 2 * ai * ki + qi, 2 * qi * (ki + 1)),
        gamma10,
        c1: None,
    })
}

/// Parts `qn + a`, using the dedicated linear-case display and its `c₁`.
pub fn power_ap_linear(a: u64, q: u64, prec: Precision) -> Result<FamilyDisplay> {
    let bits = prec.bits();
    let (ai, qi) = (a as i64, q as i64);
    let x = rat(prec, ai, qi);
    let half_x = rat(prec, ai, 2 * qi);
    let pi = prec.pi();
    let qf = Float::with_val(bits, q);
    let num = gamma_real(&x, prec)?
        * Float::with_val(bits, (&pi).pow(&Float::with_val(bits, &x - 1u32)))
        * Float::with_val(bits, (&qf).pow(&Float::with_val(bits, &half_x - 0.5f64)));
    let denom = Float::with_val(bits, 2).pow(Float::with_val(bits, &half_x + 1.5f64))
        * Float::with_val(bits, 3).pow(&half_x);
    let frak_c = Float::with_val(bits, &pi * rat(prec, 2, 3 * qi).sqrt());

    // −√(3q/2) { a/(2πq)(1 + a/q) + π/3 (1/24 − a/(4q) + a²/(4q²)) }
    let t1 = Float::with_val(bits, &x / (Float::with_val(bits, &pi * 2u32))) * (Float::with_val(bits, &x + 1u32));
    let x2 = Float::with_val(bits, x.square_ref());
    let bracket = rat(prec, 1, 24) - Float::with_val(bits, &x / 4u32) + x2 / 4u32;
    let t2 = Float::with_val(bits, &pi / 3u32) * bracket;
    let c1 = -(rat(prec, 3 * qi, 2).sqrt() * (t1 + t2));
    Ok(FamilyDisplay {
        frak_b: num / denom,
        frak_c,
        frak_h: Float::with_val(bits, &half_x + 0.5f64),
        gamma10: None,
        c1: Some(c1),
    })
}

/// Parts `f(n)`, with the root product `∏ Γ(−α_j)` taken as a complex product.
pub fn polynomial(poly: &IntPolynomial, prec: Precision) -> Result<FamilyDisplay> {
    let bits = prec.bits();
    let k = poly.degree() as i64;
    let a0 = Float::with_val(bits, poly.leading());
    let ratio = rat(prec, poly.subleading(), poly.leading() * k);
    let inv_k_a0 = Float::with_val(bits, (&a0).pow(&rat(prec, -1, k))) / k as u64;
    let frak_a = (inv_k_a0 * gamma_zeta(k as u32, prec)?).pow(rat(prec, k, k + 1));
    let mut log_prod = Complex::with_val(bits, 0);
    for root in polynomial_roots(poly.coeffs(), prec)? {
        log_prod += log_gamma(&Complex::with_val(bits, -root), prec)?;
    }
    let prod = Complex::with_val(bits, log_prod.exp_ref()).real().clone();
    let num = Float::with_val(bits, (&frak_a).pow(&ratio))
        * Float::with_val(bits, (&a0).pow(&Float::with_val(bits, &ratio - 0.5f64)))
        * prod;
    let denom = Float::with_val(bits, prec.pi() * 2u32).pow(rat(prec, k + 1, 2)) * (1u32 + rat(prec, 1, k)).sqrt();
    let two_a1_a0 = rat(prec, 2 * poly.subleading(), poly.leading());
    Ok(FamilyDisplay {
        frak_b: num / denom,
        frak_c: Float::with_val(bits, &frak_a * (k + 1)),
        frak_h: (two_a1_a0 + (k + 1)) / (2 * (k + 1)),
        gamma10: None,
        c1: None,
    })
}

/// Parts `kℕ* ∪ {a}`: `p(n) ∼ √k e^{π√(2n/3k)} / (2aπ√(2n))`.
pub fn singleton(k: u64, a: u64, prec: Precision) -> FamilyDisplay {
    let bits = prec.bits();
    let pi = prec.pi();
    let coeff = Float::with_val(bits, k).sqrt() / (Float::with_val(bits, &pi * (2 * a)) * Float::with_val(bits, 2).sqrt());
    FamilyDisplay {
        frak_b: coeff,
        frak_c: Float::with_val(bits, &pi * rat(prec, 2, 3 * k as i64).sqrt()),
        frak_h: rat(prec, 1, 2),
        gamma10: None,
        c1: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::constants;
    use crate::models::{l_data, parse_spec, LambdaSpec};

    fn p() -> Precision {
        Precision::default()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs().to_f64() <= tol * b.to_f64().abs().max(1.0)
    }

    fn generic(spec: &LambdaSpec) -> crate::asymptotic::AsymConstants {
        constants(&l_data(spec, p()).unwrap()).unwrap()
    }

    fn check(display: &FamilyDisplay, spec: &LambdaSpec) {
        let ac = generic(spec);
        assert!(close(&ac.frak_b, &display.frak_b, 1e-40), "{spec} b: {} vs {}", ac.frak_b, display.frak_b);
        assert!(close(&ac.frak_c, &display.frak_c, 1e-40), "{spec} c");
        assert!(close(&ac.frak_h, &display.frak_h, 1e-40), "{spec} h");
        if let Some(g) = &display.gamma10 {
            assert!(close(&ac.gamma10, g, 1e-40), "{spec} γ10: {} vs {}", ac.gamma10, g);
        }
    }

    #[test]
    fn classical_matches_generic() {
        let d = classical(p());
        check(&d, &LambdaSpec::Classical);
        assert!(close(&generic(&LambdaSpec::Classical).c1().unwrap(), d.c1.as_ref().unwrap(), 1e-40));
    }

    #[test]
    fn powers_match_generic() {
        for k in 1..=6 {
            check(&powers(k, p()).unwrap(), &LambdaSpec::powers(k).unwrap());
        }
    }

    #[test]
    fn ap_matches_generic() {
        for (a, q, k) in [(1, 1, 2), (3, 4, 2), (1, 2, 3), (2, 5, 4), (3, 4, 1), (1, 2, 1)] {
            check(&power_ap(a, q, k, p()).unwrap(), &LambdaSpec::power_ap(a, q, k).unwrap());
        }
    }

    #[test]
    fn linear_ap_prefactor_matches_generic() {
        for (a, q) in [(1, 1), (1, 2), (3, 4), (2, 7)] {
            let spec = LambdaSpec::power_ap(a, q, 1).unwrap();
            let d = power_ap_linear(a, q, p()).unwrap();
            check(&d, &spec);
            assert!(close(&generic(&spec).c1().unwrap(), d.c1.as_ref().unwrap(), 1e-40), "{spec} c1");
        }
    }

    #[test]
    fn polynomial_matches_generic() {
        for text in ["poly(1,0,1)", "poly(2,1,3)", "poly(1,3,3)", "poly(9,24,16)", "poly(1,0,0,3)"] {
            let spec = parse_spec(text).unwrap();
            let LambdaSpec::Polynomial(poly) = &spec else { unreachable!() };
            check(&polynomial(poly, p()).unwrap(), &spec);
        }
    }

    #[test]
    fn singleton_matches_generic() {
        for (k, a) in [(2, 1), (3, 2), (5, 3)] {
            check(&singleton(k, a, p()), &LambdaSpec::k_power_plus_singleton(k, a).unwrap());
        }
    }
}
