use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::Precision;

const MAX_ITER: usize = 200;

/// Dense polynomial over ℚ, leading coefficient first, no leading zeros.
type RatPoly = Vec<Rational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p[0] == 0 {
        p.remove(0);
    }
    if p.is_empty() {
        p.push(Rational::new());
    }
    p
}

fn is_zero(p: &RatPoly) -> bool {
    p.iter().all(|c| *c == 0)
}

fn degree(p: &RatPoly) -> usize {
    p.len() - 1
}

fn derivative(p: &RatPoly) -> RatPoly {
    let d = degree(p);
    if d == 0 {
        return vec![Rational::new()];
    }
    trim(p[..d].iter().enumerate().map(|(i, c)| Rational::from(c * (d - i) as u64)).collect())
}

fn monic(p: RatPoly) -> RatPoly {
    let lead = p[0].clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::new(); n];
    for (i, c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[n - b.len() + i] -= c;
    }
    trim(out)
}

fn div_rem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let db = degree(b);
    if degree(a) < db {
        return (vec![Rational::new()], a.clone());
    }
    let mut rem = a.clone();
    let mut quot = vec![Rational::new(); degree(a) - db + 1];
    for i in 0..quot.len() {
        let factor = Rational::from(&rem[i] / &b[0]);
        if factor != 0 {
            for (j, c) in b.iter().enumerate() {
                rem[i + j] -= Rational::from(&factor * c);
            }
        }
        quot[i] = factor;
    }
    let rem = trim(rem[quot.len()..].to_vec());
    (trim(quot), rem)
}

fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !is_zero(&y) {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Yun's algorithm: `f = ∏ g_i^i` with each `g_i` squarefree and coprime.
fn squarefree_factors(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let fp = derivative(f);
    let c = gcd(f, &fp);
    let mut w = div_rem(f, &c).0;
    let mut y = div_rem(&fp, &c).0;
    let mut z = sub(&y, &derivative(&w));
    let mut mult = 1;
    while degree(&w) > 0 {
        let g = gcd(&w, &z);
        w = div_rem(&w, &g).0;
        y = div_rem(&z, &g).0;
        z = sub(&y, &derivative(&w));
        if degree(&g) > 0 {
            out.push((g, mult));
        }
        mult += 1;
    }
    out
}

fn horner(coeffs: &[Complex], z: &Complex, bits: u32) -> (Complex, Complex) {
    let mut p = Complex::with_val(bits, 0);
    let mut dp = Complex::with_val(bits, 0);
    for c in coeffs {
        dp = Complex::with_val(bits, &dp * z) + &p;
        p = Complex::with_val(bits, &p * z) + c;
    }
    (p, dp)
}

fn cabs(z: &Complex, bits: u32) -> Float {
    Float::with_val(bits, z.abs_ref())
}

/// Simultaneous Aberth–Ehrlich iteration for a squarefree polynomial.
fn aberth(poly: &RatPoly, bits: u32) -> Result<Vec<Complex>> {
    let d = degree(poly);
    let coeffs: Vec<Complex> = poly.iter().map(|c| Complex::with_val(bits, (Float::with_val(bits, c), 0))).collect();
    if d == 1 {
        let root = -Complex::with_val(bits, &coeffs[1] / &coeffs[0]);
        return Ok(vec![root]);
    }

    // Initial guesses on a circle of radius |a_d/a_0|^{1/d}, rotated off the real axis.
    let tail = Float::with_val(bits, &Rational::from(&poly[d] / &poly[0])).abs();
    let radius = if tail.is_zero() { Float::with_val(bits, 1) } else { tail.pow(1.0 / d as f64) };
    let two_pi = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
    let mut z: Vec<Complex> = (0..d)
        .map(|j| {
            let theta = Float::with_val(bits, &two_pi * j as u64) / d as u64 + 0.4f64;
            let (s, c) = theta.sin_cos(Float::new(bits));
            Complex::with_val(bits, (Float::with_val(bits, &radius * &c), Float::with_val(bits, &radius * &s)))
        })
        .collect();

    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 8));
    for _ in 0..MAX_ITER {
        let mut worst = Float::with_val(bits, 0);
        for i in 0..d {
            let (p, dp) = horner(&coeffs, &z[i], bits);
            if p.is_zero() {
                continue;
            }
            let newton = Complex::with_val(bits, &p / &dp);
            let mut repulsion = Complex::with_val(bits, 0);
            for j in 0..d {
                if j != i {
                    let diff = Complex::with_val(bits, &z[i] - &z[j]);
                    repulsion += diff.recip();
                }
            }
            let denom = Complex::with_val(bits, 1) - Complex::with_val(bits, &newton * &repulsion);
            let step = Complex::with_val(bits, &newton / &denom);
            let scale = cabs(&z[i], bits).max(&Float::with_val(bits, 1));
            let rel = cabs(&step, bits) / scale;
            if rel > worst {
                worst = rel;
            }
            z[i] -= step;
        }
        if worst <= eps {
            return Ok(z);
        }
    }
    Err(Error::Numeric(format!("Aberth iteration did not converge in {MAX_ITER} steps (degree {d})")))
}

/// Snap near-real roots onto the axis and average conjugate partners.
fn pair_conjugates(roots: Vec<Complex>, bits: u32) -> Result<Vec<Complex>> {
    let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2));
    let mut out = Vec::with_capacity(roots.len());
    let mut pending: Vec<Complex> = Vec::new();
    for z in roots {
        let scale = cabs(&z, bits).max(&Float::with_val(bits, 1));
        if Float::with_val(bits, z.imag().abs_ref()) <= Float::with_val(bits, &tol * &scale) {
            out.push(Complex::with_val(bits, (z.real(), 0)));
        } else {
            pending.push(z);
        }
    }
    while let Some(z) = pending.pop() {
        let target = Complex::with_val(bits, z.conj_ref());
        let (idx, dist) = pending
            .iter()
            .enumerate()
            .map(|(i, w)| (i, cabs(&Complex::with_val(bits, w - &target), bits)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
            .ok_or_else(|| Error::Numeric("complex root without a conjugate partner".into()))?;
        let scale = cabs(&z, bits).max(&Float::with_val(bits, 1));
        if dist > Float::with_val(bits, &tol * &scale) {
            return Err(Error::Numeric("complex root without a conjugate partner".into()));
        }
        let w = pending.swap_remove(idx);
        let re = Float::with_val(bits, z.real() + w.real()) / 2u32;
        let im = Float::with_val(bits, z.imag() - w.imag()).abs() / 2u32;
        out.push(Complex::with_val(bits, (&re, &im)));
        out.push(Complex::with_val(bits, (&re, -im)));
    }
    Ok(out)
}

/// All `k` complex roots of `a_0 n^k + … + a_k`, repeated by multiplicity,
/// sorted by real then imaginary part.
pub fn polynomial_roots(coeffs: &[i64], prec: Precision) -> Result<Vec<Complex>> {
    if coeffs.len() < 2 || coeffs[0] == 0 {
        return Err(Error::Argument("polynomial_roots needs degree ≥ 1 and a nonzero leading coefficient".into()));
    }
    let bits = prec.widened(32).bits();
    let poly: RatPoly = coeffs.iter().map(|&c| Rational::from(c)).collect();
    let mut roots = Vec::new();
    for (factor, mult) in squarefree_factors(&poly) {
        let found = aberth(&factor, bits)?;
        for z in found {
            for _ in 0..mult {
                roots.push(z.clone());
            }
        }
    }
    let mut roots = pair_conjugates(roots, bits)?;

    let orig: Vec<Complex> = coeffs.iter().map(|&c| Complex::with_val(bits, (c, 0))).collect();
    for z in &roots {
        let (value, _) = horner(&orig, z, bits);
        let r = cabs(z, bits);
        let mut scale = Float::with_val(bits, 0);
        for &c in coeffs {
            scale = scale * &r + Float::with_val(bits, c).abs();
        }
        let rel = (cabs(&value, bits) / scale).to_f64();
        if rel > 1e-25 {
            return Err(Error::Numeric(format!("root residual {rel:e} above tolerance")));
        }
    }
    roots.sort_by(|a, b| {
        a.real()
            .partial_cmp(b.real())
            .expect("finite")
            .then(a.imag().partial_cmp(b.imag()).expect("finite"))
    });
    Ok(roots.into_iter().map(|z| Complex::with_val(prec.bits(), z)).collect())
}
