use partition_saddle::special::{gamma, hurwitz_zeta, riemann_zeta};
use partition_saddle::Precision;
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

fn p() -> Precision {
    Precision::default()
}

fn f(x: f64) -> Float {
    p().float(x)
}

fn rat(n: i64, d: i64) -> Float {
    Float::with_val(p().bits(), &Rational::from((n, d)))
}

fn rel(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(p().bits(), a - b).abs().to_f64();
    d / b.to_f64().abs().max(1e-300)
}

#[test]
fn hurwitz_at_one_is_riemann() {
    for s in [-3.0, -1.5, 0.5, 2.0, 7.0] {
        let h = hurwitz_zeta(&f(s), &f(1.0), p()).unwrap();
        let z = riemann_zeta(&f(s), p()).unwrap();
        assert!(rel(&h, &z) < 1e-44, "s = {s}");
    }
}

#[test]
fn multiplication_formula() {
    for q in [2i64, 3, 5] {
        for s in [-1.0, 2.0] {
            let mut total = p().float(0);
            for a in 1..=q {
                total += hurwitz_zeta(&f(s), &rat(a, q), p()).unwrap();
            }
            let qs = Float::with_val(p().bits(), q).pow(&f(s));
            let want = riemann_zeta(&f(s), p()).unwrap() * qs;
            assert!(rel(&total, &want) < 1e-44, "q = {q}, s = {s}");
        }
    }
}

#[test]
fn ap_values_at_zero_and_minus_one() {
    for (a, q) in [(1i64, 2i64), (1, 3), (3, 4), (2, 7)] {
        let x = rat(a, q);
        let z0 = hurwitz_zeta(&f(0.0), &x, p()).unwrap();
        assert!(Float::with_val(p().bits(), &z0 - (rat(1, 2) - &x)).abs().to_f64() < 1e-44);
        // ζ(−1, x) = −B₂(x)/2 = −(x² − x + 1/6)/2
        let b2 = Float::with_val(p().bits(), x.square_ref()) - &x + rat(1, 6);
        let want = -b2 / 2u32;
        let z1 = hurwitz_zeta(&f(-1.0), &x, p()).unwrap();
        assert!(Float::with_val(p().bits(), &z1 - &want).abs().to_f64() < 1e-44, "{a}/{q}");
    }
}

#[test]
fn trivial_zeros_are_exact() {
    for j in 1..=10 {
        assert!(riemann_zeta(&f(-2.0 * f64::from(j)), p()).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gamma_reflection(re in -4.5f64..4.5, im in -3.0f64..3.0) {
        prop_assume!(im.abs() > 0.05 || (re - re.round()).abs() > 0.05);
        let bits = p().bits();
        let z = Complex::with_val(bits, (re, im));
        let one_minus = Complex::with_val(bits, 1 - &z);
        let lhs = gamma(&z, p()).unwrap() * gamma(&one_minus, p()).unwrap();
        let pi = p().pi();
        let rhs = Complex::with_val(bits, &pi) / Complex::with_val(bits, &z * &pi).sin();
        let err = Complex::with_val(bits, &lhs - &rhs).abs().real().to_f64();
        let scale = Complex::with_val(bits, rhs.abs_ref()).real().to_f64();
        prop_assert!(err <= 1e-40 * scale.max(1.0), "z = {re}+{im}i: {err}");
    }

    #[test]
    fn hurwitz_duplication(s in -3.0f64..6.0, a in 0.05f64..0.95) {
        prop_assume!((s - 1.0).abs() > 1e-3);
        // ζ(s, x/2) + ζ(s, x/2 + 1/2) = 2^s ζ(s, x)
        let x = f(a);
        let half = Float::with_val(p().bits(), &x / 2u32);
        let half_shift = Float::with_val(p().bits(), &half + 0.5f64);
        let sum = hurwitz_zeta(&f(s), &half, p()).unwrap() + hurwitz_zeta(&f(s), &half_shift, p()).unwrap();
        let want = Float::with_val(p().bits(), 2).pow(&f(s)) * hurwitz_zeta(&f(s), &x, p()).unwrap();
        let scale = want.to_f64().abs().max(1.0);
        prop_assert!(Float::with_val(p().bits(), &sum - &want).abs().to_f64() < 1e-40 * scale);
    }
}
