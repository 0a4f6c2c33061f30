use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use super::admissible::check_admissible;
use super::leval::{l_eval_polynomial, polynomial_truncation, tail_coefficients};
use super::roots::polynomial_roots;
use super::spec::{IntPolynomial, LambdaSpec};
use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta_shifted, ln_gamma_real, log_gamma};
use crate::Precision;

/// Number of values `L(−1), …, L(−NEG_ORDER)` kept for the strong expansion.
pub const NEG_ORDER: u32 = 6;

/// Analytic data of `L_Λ(z) = Σ_{m∈Λ} m^{−z}`.
#[derive(Debug, Clone)]
pub struct LData {
    pub alpha: Float,
    pub residue: Float,
    pub l0: Float,
    pub l0_prime: Float,
    pub lm1: Option<Float>,
    /// Estimated absolute error of `lm1` when it comes from numerical continuation.
    pub lm1_error: Option<f64>,
    /// `L(−m)` for `m = 1..=NEG_ORDER`, when available in closed form.
    pub neg_values: Option<BTreeMap<u32, Float>>,
    /// Further real poles `−r/k` of the continuation (polynomial models).
    pub extra_poles: Vec<Float>,
    pub precision: Precision,
}

impl LData {
    pub fn neg_value(&self, m: u32) -> Option<&Float> {
        self.neg_values.as_ref()?.get(&m)
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }
}

/// One summand of `L`: either `sign · Σ_{n≥0} (dn + c)^{−kz}` or a single part `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Piece {
    Ap { c: u64, d: u64, k: u32, sign: i32 },
    Point { c: u64 },
}

impl Piece {
    fn shift(c: u64, d: u64, bits: u32) -> Float {
        Float::with_val(bits, &Rational::from((c, d)))
    }

    pub(crate) fn eval(&self, z: &Float, prec: Precision) -> Result<Float> {
        let bits = prec.bits();
        match *self {
            Piece::Ap { c, d, k, sign } => {
                let s = Float::with_val(bits, z * k);
                let gap = Float::with_val(bits, &s - 1u32).abs();
                if gap <= Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2)) {
                    return Err(Error::Pole(format!("L has a pole at z = 1/{k}")));
                }
                let zeta = hurwitz_zeta_shifted(&s, &Self::shift(c, d, bits), prec)?;
                let scale = Float::with_val(bits, d).pow(Float::with_val(bits, -&s));
                Ok(zeta * scale * sign)
            }
            Piece::Point { c } => Ok(Float::with_val(bits, c).pow(Float::with_val(bits, -z))),
        }
    }

    fn l0(&self, bits: u32) -> Float {
        match *self {
            // ζ(0, x) = ½ − x
            Piece::Ap { c, d, sign, .. } => Float::with_val(bits, &(Rational::from((1, 2)) - Rational::from((c, d)))) * sign,
            Piece::Point { .. } => Float::with_val(bits, 1),
        }
    }

    fn l0_prime(&self, prec: Precision) -> Result<Float> {
        let bits = prec.bits();
        match *self {
            Piece::Ap { c, d, k, sign } => {
                // k ζ′(0, x) − k log d · ζ(0, x)
                let x = Self::shift(c, d, bits);
                let zeta_prime = ln_gamma_real(&x, prec)? - prec.half_log_two_pi();
                let zeta0 = Float::with_val(bits, &(Rational::from((1, 2)) - Rational::from((c, d))));
                let log_d = Float::with_val(bits, d).ln();
                Ok((zeta_prime - log_d * zeta0) * k * sign)
            }
            Piece::Point { c } => Ok(-Float::with_val(bits, c).ln()),
        }
    }

    /// `L(−m)` of the piece, exactly.
    fn neg(&self, m: u32) -> Rational {
        match *self {
            Piece::Ap { c, d, k, sign } => {
                // d^{km} ζ(−km, c/d) = −d^{km} B_{km+1}(c/d)/(km+1)
                let km = m * k;
                let b = bernoulli_polynomial(km as usize + 1, &Rational::from((c, d)));
                let scale = rug::Integer::from(d).pow(km);
                -b * scale / (km + 1) * sign
            }
            Piece::Point { c } => Rational::from(rug::Integer::from(c).pow(m)),
        }
    }

    fn residue(&self, bits: u32) -> Float {
        match *self {
            Piece::Ap { d, k, sign, .. } => Float::with_val(bits, &Rational::from((sign, d * u64::from(k)))),
            Piece::Point { .. } => Float::with_val(bits, 0),
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x ≡ r1 (m1)`, `x ≡ r2 (m2)` → `(r, lcm)` with `0 ≤ r < lcm`.
fn crt(r1: u128, m1: u128, r2: u128, m2: u128) -> Option<(u128, u128)> {
    let g = gcd(m1, m2);
    let (r1i, r2i) = (r1 as i128, r2 as i128);
    if (r2i - r1i).rem_euclid(g as i128) != 0 {
        return None;
    }
    let m2g = (m2 / g) as i128;
    let m1g = (m1 / g) as i128;
    // Inverse of m1/g modulo m2/g by extended Euclid.
    let (mut old_r, mut r) = (m1g.rem_euclid(m2g.max(1)), m2g);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let inv = if m2g == 1 { 0 } else { old_s.rem_euclid(m2g) };
    let t = ((r2i - r1i) / g as i128).rem_euclid(m2g.max(1)) * inv % m2g.max(1);
    let lcm = m1 / g * m2;
    let x = (r1i + m1 as i128 * t).rem_euclid(lcm as i128);
    Some((x as u128, lcm))
}

const MAX_UNION: usize = 16;

/// Decomposition of `L` into Hurwitz-type pieces, `None` for polynomial part sets.
pub(crate) fn pieces(spec: &LambdaSpec) -> Result<Option<Vec<Piece>>> {
    Ok(Some(match spec {
        LambdaSpec::Classical => vec![Piece::Ap { c: 1, d: 1, k: 1, sign: 1 }],
        LambdaSpec::PowerAp { a, q, k } => vec![Piece::Ap { c: *a, d: *q, k: *k, sign: 1 }],
        LambdaSpec::KPowerPlusSingleton { k, a } => {
            if a % k == 0 {
                vec![Piece::Ap { c: *k, d: *k, k: 1, sign: 1 }]
            } else {
                vec![Piece::Ap { c: *k, d: *k, k: 1, sign: 1 }, Piece::Point { c: *a }]
            }
        }
        LambdaSpec::UnionAp(progs) => {
            if progs.len() > MAX_UNION {
                return Err(Error::Capability(format!("unions of more than {MAX_UNION} progressions")));
            }
            let mut out = Vec::new();
            for mask in 1u32..(1 << progs.len()) {
                let mut acc: Option<(u128, u128)> = Some((0, 1));
                let mut floor = 0u64;
                for (i, p) in progs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        floor = floor.max(p.a);
                        acc = acc.and_then(|(r, m)| crt(r, m, u128::from(p.a % p.q), u128::from(p.q)));
                    }
                }
                let Some((r, m)) = acc else { continue };
                // Smallest member ≥ every start point.
                let floor = u128::from(floor);
                let c = if r >= floor { r } else { r + (floor - r).div_ceil(m) * m };
                let (c, d) = match (u64::try_from(c), u64::try_from(m)) {
                    (Ok(c), Ok(d)) => (c, d),
                    _ => return Err(Error::Capability("progression intersection exceeds 64 bits".into())),
                };
                let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
                out.push(Piece::Ap { c, d, k: 1, sign });
            }
            out
        }
        LambdaSpec::Polynomial(_) => return Ok(None),
    }))
}

fn from_pieces(pieces: &[Piece], alpha: Float, prec: Precision) -> Result<LData> {
    let bits = prec.bits();
    let mut residue = Float::with_val(bits, 0);
    let mut l0 = Float::with_val(bits, 0);
    let mut l0_prime = Float::with_val(bits, 0);
    let mut neg = BTreeMap::new();
    for p in pieces {
        residue += p.residue(bits);
        l0 += p.l0(bits);
        l0_prime += p.l0_prime(prec)?;
    }
    for m in 1..=NEG_ORDER {
        let exact: Rational = pieces.iter().map(|p| p.neg(m)).sum();
        neg.insert(m, Float::with_val(bits, &exact));
    }
    if !(residue > 0) {
        return Err(Error::Numeric("non-positive residue from inclusion–exclusion".into()));
    }
    Ok(LData {
        alpha,
        residue,
        l0,
        l0_prime,
        lm1: neg.get(&1).cloned(),
        lm1_error: None,
        neg_values: Some(neg),
        extra_poles: Vec::new(),
        precision: prec,
    })
}

/// `L(0) = ½ − a₁/(a₀k)`.
pub(crate) fn polynomial_l0(poly: &IntPolynomial, bits: u32) -> Float {
    let k = poly.degree() as i64;
    let r = Rational::from((1, 2)) - Rational::from((poly.subleading(), poly.leading() * k));
    Float::with_val(bits, &r)
}

fn polynomial_ldata(poly: &IntPolynomial, prec: Precision) -> Result<LData> {
    let bits = prec.bits();
    let k = poly.degree();
    let a0 = Float::with_val(bits, poly.leading());
    let alpha = Float::with_val(bits, &Rational::from((1, k as u64)));
    let residue = Float::with_val(bits, a0.clone().pow(Float::with_val(bits, -&alpha))) / k as u64;
    let l0 = polynomial_l0(poly, bits);

    let roots = polynomial_roots(poly.coeffs(), prec)?;
    let mut log_gamma_sum = Float::with_val(bits, 0);
    for alpha_j in &roots {
        let arg = Complex::with_val(bits, -alpha_j);
        log_gamma_sum += log_gamma(&arg, prec)?.real();
    }
    let l0_prime = -(Float::with_val(bits, &l0 * Float::with_val(bits, a0.ln_ref()))) - prec.half_log_two_pi() * k as u64 + log_gamma_sum;

    let minus_one = Float::with_val(bits, -1);
    let (m, j) = polynomial_truncation(poly, &minus_one, prec);
    let lm1 = l_eval_polynomial(poly, &minus_one, m, j, prec)?;
    let check = l_eval_polynomial(poly, &minus_one, 2 * m, j + 20, prec)?;
    let lm1_error = Float::with_val(bits, &lm1 - &check).abs().to_f64();

    Ok(LData {
        alpha,
        residue,
        l0,
        l0_prime,
        lm1: Some(lm1),
        lm1_error: Some(lm1_error),
        neg_values: None,
        extra_poles: polynomial_poles(poly, prec),
        precision: prec,
    })
}

/// Real poles `−r/k`, `1 ≤ r ≤ 2k`, with a non-vanishing tail coefficient.
pub fn polynomial_poles(poly: &IntPolynomial, prec: Precision) -> Vec<Float> {
    let k = poly.degree() as u64;
    let bits = prec.bits();
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2));
    let mut out = Vec::new();
    for r in 1..=2 * k {
        if r % k == 0 {
            continue;
        }
        let z = Float::with_val(bits, &Rational::from((-(r as i64), k)));
        let (e, _) = tail_coefficients(poly, &z, r as usize + 1, bits);
        if Float::with_val(bits, e[r as usize + 1].abs_ref()) > tiny {
            out.push(z);
        }
    }
    out
}

/// Analytic data of `L_Λ` at working precision `prec`.
pub fn l_data(spec: &LambdaSpec, prec: Precision) -> Result<LData> {
    check_admissible(spec).require_gcd_one(spec)?;
    let bits = prec.bits();
    match spec {
        LambdaSpec::Polynomial(poly) => polynomial_ldata(poly, prec),
        LambdaSpec::PowerAp { k, .. } => {
            let pieces = pieces(spec)?.expect("AP family");
            from_pieces(&pieces, Float::with_val(bits, &Rational::from((1, *k))), prec)
        }
        _ => {
            let pieces = pieces(spec)?.expect("AP family");
            from_pieces(&pieces, Float::with_val(bits, 1), prec)
        }
    }
}

/// Exact `L(−m)` for non-polynomial part sets, as a rational.
pub fn exact_neg_value(spec: &LambdaSpec, m: u32) -> Result<Option<Rational>> {
    let Some(pieces) = pieces(spec)? else { return Ok(None) };
    Ok(Some(pieces.iter().map(|p| p.neg(m)).sum()))
}

fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let mut total = Rational::new();
    for j in 0..=n {
        let binom = rug::Integer::from(rug::Integer::binomial_u(n as u32, j as u32));
        let xp = x.clone().pow((n - j) as u32);
        total += crate::special::bernoulli_number(j) * binom * xp;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::spec::parse_spec;

    fn p() -> Precision {
        Precision::default()
    }

    fn diff(a: &Float, b: &Float) -> f64 {
        Float::with_val(a.prec(), a - b).abs().to_f64()
    }

    #[test]
    fn classical_values() {
        let ld = l_data(&LambdaSpec::Classical, p()).unwrap();
        assert_eq!(ld.alpha, 1);
        assert_eq!(ld.residue, 1);
        assert_eq!(ld.l0, -0.5);
        assert!(diff(&ld.l0_prime, &-p().half_log_two_pi()) < 1e-48);
        assert!(diff(ld.lm1.as_ref().unwrap(), &Float::with_val(p().bits(), &Rational::from((-1, 12)))) < 1e-48);
        assert_eq!(*ld.neg_value(2).unwrap(), 0);
    }

    #[test]
    fn powers_alpha_and_residue() {
        for k in 1..=5 {
            let ld = l_data(&LambdaSpec::powers(k).unwrap(), p()).unwrap();
            let want = Float::with_val(p().bits(), &Rational::from((1, k)));
            assert_eq!(ld.alpha, want);
            assert_eq!(ld.residue, want);
        }
    }

    #[test]
    fn ap_l0_closed_form() {
        let ld = l_data(&LambdaSpec::power_ap(1, 4, 1).unwrap(), p()).unwrap();
        assert_eq!(ld.l0, 0.25);
        let ld = l_data(&LambdaSpec::power_ap(3, 4, 2).unwrap(), p()).unwrap();
        assert_eq!(ld.l0, -0.25);
        assert_eq!(ld.residue, 0.125);
    }

    #[test]
    fn inadmissible_rejected() {
        for text in ["ap(2,4,1)", "poly(1,1,2)", "unionap(2,4;4,6)"] {
            let spec = parse_spec(text).unwrap();
            assert!(matches!(l_data(&spec, p()), Err(Error::Admissibility(_))), "{text}");
        }
    }

    /// Bernoulli-polynomial values against the Euler–Maclaurin continuation.
    #[test]
    fn neg_values_match_continuation() {
        for text in ["classical", "ap(3,4,2)", "ap(2,3,1)", "unionap(1,2;2,3)", "kpow1(3,2)", "powers(3)"] {
            let spec = parse_spec(text).unwrap();
            let ld = l_data(&spec, p()).unwrap();
            for m in 1..=NEG_ORDER {
                let want = crate::models::l_eval(&spec, &p().float(-f64::from(m)), p()).unwrap();
                let scale = want.to_f64().abs().max(1.0);
                assert!(diff(ld.neg_value(m).unwrap(), &want) < 1e-44 * scale, "{text} m={m}");
            }
        }
    }

    #[test]
    fn union_inclusion_exclusion() {
        // (1+2ℕ) ∪ (2+3ℕ): intersection 5 + 6ℕ.
        let spec = parse_spec("unionap(1,2;2,3)").unwrap();
        let pcs = pieces(&spec).unwrap().unwrap();
        assert!(pcs.contains(&Piece::Ap { c: 5, d: 6, k: 1, sign: -1 }));
        let ld = l_data(&spec, p()).unwrap();
        let want = Rational::from((1, 2)) + Rational::from((1, 3)) - Rational::from((1, 6));
        assert!(diff(&ld.residue, &Float::with_val(p().bits(), &want)) < 1e-48);
        // L(0) counts ζ(0,x) = ½ − x per piece.
        let l0 = Rational::from((1, 2)) - Rational::from((1, 2)) + Rational::from((1, 2)) - Rational::from((2, 3))
            - (Rational::from((1, 2)) - Rational::from((5, 6)));
        assert!(diff(&ld.l0, &Float::with_val(p().bits(), &l0)) < 1e-48);
    }

    #[test]
    fn crt_small_cases() {
        assert_eq!(crt(1, 2, 2, 3), Some((5, 6)));
        assert_eq!(crt(0, 4, 2, 6), Some((8, 12)));
        assert_eq!(crt(1, 4, 2, 6), None);
        assert_eq!(crt(3, 7, 3, 7), Some((3, 7)));
    }

    #[test]
    fn singleton_family() {
        let ld = l_data(&LambdaSpec::k_power_plus_singleton(3, 2).unwrap(), p()).unwrap();
        assert_eq!(ld.l0, 0.5);
        let want = -p().half_log_two_pi() + p().float(3).ln() / 2u32 - p().float(2).ln();
        assert!(diff(&ld.l0_prime, &want) < 1e-48);
        let third = Float::with_val(p().bits(), &Rational::from((1, 3)));
        assert!(diff(&ld.residue, &third) < 1e-48);
    }

    /// `(qn+a)^k` as a polynomial must reproduce the AP data.
    #[test]
    fn polynomial_matches_ap() {
        for (a, q, k) in [(1u64, 1u64, 2u32), (3, 4, 2), (1, 2, 3), (2, 3, 1)] {
            let mut coeffs = Vec::new();
            for j in 0..=k {
                let binom = rug::Integer::from(rug::Integer::binomial_u(k, j));
                let c = binom * rug::Integer::from(q).pow(k - j) * rug::Integer::from(a).pow(j);
                coeffs.push(c.to_i64().unwrap());
            }
            let poly = LambdaSpec::polynomial(coeffs).unwrap();
            let ap = LambdaSpec::power_ap(a, q, k).unwrap();
            let lp = l_data(&poly, p()).unwrap();
            let la = l_data(&ap, p()).unwrap();
            assert!(diff(&lp.alpha, &la.alpha) < 1e-20);
            assert!(diff(&lp.residue, &la.residue) < 1e-20);
            assert!(diff(&lp.l0, &la.l0) < 1e-20);
            assert!(diff(&lp.l0_prime, &la.l0_prime) < 1e-20, "({a},{q},{k})");
            assert!(diff(lp.lm1.as_ref().unwrap(), la.lm1.as_ref().unwrap()) < 1e-20, "({a},{q},{k})");
        }
    }

    #[test]
    fn polynomial_extra_poles() {
        // (n+1)² is ζ(2z): no poles besides 1/2.
        let ld = l_data(&parse_spec("poly(1,2,1)").unwrap(), p()).unwrap();
        assert!(ld.extra_poles.is_empty());
        // √(n²+1) = n + 1/(2n) + …, so −1/2 is a pole.
        let ld = l_data(&parse_spec("poly(1,0,1)").unwrap(), p()).unwrap();
        let got: Vec<f64> = ld.extra_poles.iter().map(|x| x.to_f64()).collect();
        assert_eq!(got, [-0.5, -1.5]);
    }
}
