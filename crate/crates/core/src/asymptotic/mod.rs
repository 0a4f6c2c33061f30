//! Main-term constants, first-order corrections and the saddle-point location.

pub mod closed_forms;

use rug::Float;

use crate::error::{Error, Result};
use crate::models::LData;
use crate::special::{gamma_real, riemann_zeta};
use crate::Precision;

/// `p(n) ∼ 𝔟 e^{𝔠 n^{α/(α+1)}} n^{−𝔥} (1 + γ₁₀ n^{−α/(α+1)} + γ₀₁ n^{−1/(α+1)} + …)`.
#[derive(Debug, Clone)]
pub struct AsymConstants {
    pub alpha: Float,
    pub frak_a: Float,
    pub frak_b: Float,
    pub frak_c: Float,
    pub frak_h: Float,
    pub gamma10: Float,
    pub gamma01: Option<Float>,
    pub precision: Precision,
}

impl AsymConstants {
    /// `γ₁₀ + γ₀₁` when both exist.
    pub fn c1(&self) -> Option<Float> {
        self.gamma01.as_ref().map(|g| Float::with_val(self.precision.bits(), &self.gamma10 + g))
    }
}

pub fn constants(ld: &LData) -> Result<AsymConstants> {
    if !(ld.alpha > 0) || !(ld.residue > 0) {
        return Err(Error::Argument("constants need alpha > 0 and a positive residue".into()));
    }
    let prec = ld.precision;
    let bits = prec.bits();
    let alpha = ld.alpha.clone();
    let ap1 = Float::with_val(bits, &alpha + 1u32);
    let l0 = &ld.l0;

    // 𝔞 = {A Γ(1+α) ζ(1+α)}^{1/(α+1)}
    let base = Float::with_val(bits, &ld.residue * gamma_real(&ap1, prec)?) * riemann_zeta(&ap1, prec)?;
    let frak_a = (base.ln() / &ap1).exp();

    // 𝔟 = e^{L′(0)} 𝔞^{½ − L(0)} / √(2π(1+α))
    let expo = Float::with_val(bits, 0.5) - l0;
    let log_b = Float::with_val(bits, &ld.l0_prime + Float::with_val(bits, frak_a.ln_ref()) * &expo)
        - Float::with_val(bits, prec.pi() * 2u32 * &ap1).ln() / 2u32;
    let frak_b = log_b.exp();

    let frak_c = Float::with_val(bits, &frak_a * Float::with_val(bits, 1u32 + Float::with_val(bits, alpha.recip_ref())));
    let frak_h = (Float::with_val(bits, 1u32 - l0) + Float::with_val(bits, &alpha / 2u32)) / &ap1;

    // γ₁₀ = {−L0² + L0(α+1) + ¼(α+3)(α+2) − 5/12 (α+2)²} / (2(1+α)𝔞)
    let ap2 = Float::with_val(bits, &alpha + 2u32);
    let ap3 = Float::with_val(bits, &alpha + 3u32);
    let mut num = -Float::with_val(bits, l0.square_ref());
    num += Float::with_val(bits, l0 * &ap1);
    num += Float::with_val(bits, &ap3 * &ap2) / 4u32;
    num -= Float::with_val(bits, ap2.square_ref()) * 5u32 / 12u32;
    let gamma10 = num / (Float::with_val(bits, &ap1 * &frak_a) * 2u32);

    let gamma01 = ld.lm1.as_ref().map(|lm1| Float::with_val(bits, &frak_a * lm1) / 2u32);

    Ok(AsymConstants { alpha, frak_a, frak_b, frak_c, frak_h, gamma10, gamma01, precision: prec })
}

/// Asymptotic value of `p(n)`.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub log_value: Float,
    pub value: Float,
    /// Correction order actually applied.
    pub order: u8,
    /// Order 1 was requested but `γ₀₁` is unavailable; only `γ₁₀` was used.
    pub degraded: bool,
}

pub fn estimate(ac: &AsymConstants, n: u64, order: u8) -> Result<Estimate> {
    if n < 1 {
        return Err(Error::Argument("estimate needs n ≥ 1".into()));
    }
    if order > 1 {
        return Err(Error::Argument(format!("estimate supports order 0 or 1, got {order}")));
    }
    let bits = ac.precision.bits();
    let nf = Float::with_val(bits, n);
    let log_n = Float::with_val(bits, nf.ln_ref());
    let ap1 = Float::with_val(bits, &ac.alpha + 1u32);
    let e_main = Float::with_val(bits, &ac.alpha / &ap1);
    let n_main = Float::with_val(bits, &log_n * &e_main).exp();

    let mut log_value = Float::with_val(bits, &ac.frak_c * &n_main);
    log_value -= Float::with_val(bits, &ac.frak_h * &log_n);
    log_value += Float::with_val(bits, ac.frak_b.ln_ref());

    let mut degraded = false;
    if order == 1 {
        let mut corr = Float::with_val(bits, &ac.gamma10 / &n_main);
        match &ac.gamma01 {
            Some(g01) => {
                let n_second = Float::with_val(bits, &log_n / &ap1).exp();
                corr += Float::with_val(bits, g01 / &n_second);
            }
            None => degraded = true,
        }
        let factor = Float::with_val(bits, 1u32 + corr);
        if !(factor > 0) {
            return Err(Error::Domain(format!("first-order correction factor is not positive at n = {n}")));
        }
        log_value += factor.ln();
    }
    let value = Float::with_val(bits, log_value.exp_ref());
    Ok(Estimate { log_value, value, order, degraded })
}

/// Expansion of the saddle point in powers of `n`, with `terms ∈ 2..=4`.
///
/// ```text
/// ϱ ≈ 𝔞 n^{−1/(1+α)} + L(0)/((1+α)n) + c₂₁ n^{−(2α+1)/(1+α)} + c₁₂ n^{−(α+2)/(1+α)}
/// c₂₁ = α L(0)² / (2(1+α)² 𝔞),   c₁₂ = ζ(0) L(−1) 𝔞 / (1+α)
/// ```
pub fn rho_expansion(ld: &LData, n: u64, terms: usize) -> Result<Float> {
    if n < 1 {
        return Err(Error::Argument("rho_expansion needs n ≥ 1".into()));
    }
    if !(2..=4).contains(&terms) {
        return Err(Error::Argument(format!("rho_expansion supports 2 to 4 terms, got {terms}")));
    }
    let ac = constants(ld)?;
    let bits = ld.precision.bits();
    let alpha = &ld.alpha;
    let ap1 = Float::with_val(bits, alpha + 1u32);
    let log_n = Float::with_val(bits, n).ln();
    let pow = |e: Float| Float::with_val(bits, -(e * &log_n) / &ap1).exp();

    let mut rho = Float::with_val(bits, &ac.frak_a * pow(Float::with_val(bits, 1)));
    rho += Float::with_val(bits, &ld.l0 / &ap1) / n;
    if terms >= 3 {
        let c21 = Float::with_val(bits, alpha * Float::with_val(bits, ld.l0.square_ref())) / (Float::with_val(bits, ap1.square_ref()) * &ac.frak_a * 2u32);
        rho += c21 * pow(Float::with_val(bits, alpha * 2u32) + 1u32);
    }
    if terms >= 4 {
        let lm1 = ld
            .lm1
            .as_ref()
            .ok_or_else(|| Error::Capability("the fourth saddle term needs L(−1)".into()))?;
        let c12 = Float::with_val(bits, lm1 * &ac.frak_a) * -0.5f64 / &ap1;
        rho += c12 * pow(Float::with_val(bits, alpha + 2u32));
    }
    Ok(rho)
}
