use rug::ops::Pow;
use rug::Integer;

use super::spec::{IntPolynomial, LambdaSpec};
use crate::error::{Error, Result};

/// Conditions (a) and (g) for a part set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    /// gcd of all parts.
    pub gcd: Integer,
    pub gcd_one: bool,
    /// `Λ ∖ qℕ` is infinite for every `q ≥ 2`.
    pub cond_g: bool,
    /// A modulus `q` for which (g) fails.
    pub witness: Option<u64>,
}

impl Admissibility {
    /// Human-readable account of the failed conditions.
    pub fn describe_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.gcd_one {
            out.push(format!("condition (a) fails: the parts have gcd {}", self.gcd));
        }
        if !self.cond_g {
            match self.witness {
                Some(q) => out.push(format!("condition (g) fails: only finitely many parts lie outside {q}ℕ (witness modulus {q})")),
                None => out.push("condition (g) fails".into()),
            }
        }
        out
    }

    /// Condition (a) is required for the main-term asymptotics.
    pub fn require_gcd_one(&self, spec: &LambdaSpec) -> Result<()> {
        if self.gcd_one {
            return Ok(());
        }
        Err(Error::Admissibility(format!("{spec} is not admissible: {}", self.describe_failures().join("; "))))
    }

    /// Both (a) and (g), as needed for the full expansion.
    pub fn require_all(&self, spec: &LambdaSpec) -> Result<()> {
        if self.gcd_one && self.cond_g {
            return Ok(());
        }
        Err(Error::Admissibility(format!("{spec} is not admissible: {}", self.describe_failures().join("; "))))
    }
}

fn smallest_prime_factor(n: &Integer) -> Option<u64> {
    if *n <= 1 {
        return None;
    }
    let mut p = 2u64;
    while Integer::from(p) * p <= *n {
        if n.is_divisible_u(p as u32) {
            return Some(p);
        }
        p += if p == 2 { 1 } else { 2 };
        if p > u64::from(u32::MAX) {
            break;
        }
    }
    n.to_u64()
}

fn prime_factors(n: &Integer) -> Vec<Integer> {
    let mut m = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    let mut p = 2u32;
    while m > 1 && Integer::from(p) * p <= m {
        if m.is_divisible_u(p) {
            out.push(Integer::from(p));
            while m.is_divisible_u(p) {
                m /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
        if p > 10_000_000 {
            break;
        }
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn polynomial_gcd(poly: &IntPolynomial) -> Integer {
    // The values f(0..=k) generate the same ideal as all of f(ℕ).
    let mut g = Integer::new();
    for n in 0..=poly.degree() as u64 {
        g.gcd_mut(&poly.eval_u64(n));
    }
    g
}

/// `f ≡ 0` on `𝔽_p`.
fn vanishes_mod_p(poly: &IntPolynomial, p: &Integer) -> bool {
    if *p > poly.degree() as u64 {
        // A nonzero polynomial of degree < p cannot vanish on all of 𝔽_p.
        return poly.coeffs().iter().all(|&c| Integer::from(c).is_divisible(p));
    }
    let p = p.to_u64().expect("small prime");
    (0..p).all(|n| poly.eval_u64(n).is_divisible_u(p as u32))
}

pub fn check_admissible(spec: &LambdaSpec) -> Admissibility {
    let (gcd, cond_g, witness) = match spec {
        LambdaSpec::Classical => (Integer::from(1), true, None),
        LambdaSpec::PowerAp { a, q, k } => {
            let g = Integer::from(*a).gcd(&Integer::from(*q));
            if g == 1 {
                (g, true, None)
            } else {
                let witness = smallest_prime_factor(&g);
                (g.pow(*k), false, witness)
            }
        }
        LambdaSpec::Polynomial(poly) => {
            let g = polynomial_gcd(poly);
            let mut witness = None;
            for p in prime_factors(&Integer::from(poly.constant())) {
                if vanishes_mod_p(poly, &p) {
                    witness = p.to_u64();
                    break;
                }
            }
            (g, witness.is_none(), witness)
        }
        LambdaSpec::UnionAp(progs) => {
            let mut g = Integer::new();
            for p in progs {
                g.gcd_mut(&Integer::from(p.a));
                g.gcd_mut(&Integer::from(p.q));
            }
            if g == 1 {
                (g, true, None)
            } else {
                let w = smallest_prime_factor(&g);
                (g, false, w)
            }
        }
        LambdaSpec::KPowerPlusSingleton { k, a } => {
            let g = Integer::from(*k).gcd(&Integer::from(*a));
            (g, false, Some(*k))
        }
    };
    Admissibility { gcd_one: gcd == 1, gcd, cond_g, witness }
}
