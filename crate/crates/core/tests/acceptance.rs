//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use partition_saddle::asymptotic::{closed_forms, constants, estimate, rho_expansion};
use partition_saddle::cli::fit_c1;
use partition_saddle::models::check_admissible;
use partition_saddle::saddle::{cauchy_count, default_quad_points, solve_saddle, verify_arc_bound, verify_phi_expansion};
use partition_saddle::special::{hurwitz_zeta, riemann_zeta};
use partition_saddle::{exact_counts, l_data, pentagonal_counts, LambdaSpec, Precision};
use rug::ops::Pow;
use rug::{Float, Rational};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn p() -> Precision {
    Precision::default()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec(), a - b).abs().to_f64()
}

fn rat(n: i64, d: i64) -> Float {
    Float::with_val(p().bits(), &Rational::from((n, d)))
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let parts: Vec<u64> = (1..=2000).collect();
    let dp = exact_counts(&parts, 2000).unwrap();
    let pent = pentagonal_counts(2000).unwrap();
    let elapsed = start.elapsed();
    let same = dp.counts() == pent.counts();
    outcome(same && elapsed < Duration::from_secs(30), format!("identical = {same}, {:.2} s", secs(elapsed)))
}

fn cauchy_exactness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for spec in [LambdaSpec::Classical, LambdaSpec::powers(2).unwrap(), LambdaSpec::power_ap(3, 4, 1).unwrap()] {
        let table = exact_counts(&spec.parts_up_to(200), 200).unwrap();
        for n in 1..=200u64 {
            let got = cauchy_count(&spec, n, default_quad_points(&spec, n));
            let want = table.get(n as usize).unwrap();
            match got {
                Ok(v) => {
                    let dev = (v - want.to_f64()).abs();
                    worst = worst.max(dev);
                    if dev.is_nan() || dev >= 0.25 {
                        bad.push(format!("{spec}@{n}"));
                    }
                }
                Err(e) => bad.push(format!("{spec}@{n}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(120),
        format!("worst deviation {worst:.3e}, failures {bad:?}, {:.2} s", secs(elapsed)),
    )
}

fn first_order_convergence() -> Outcome {
    let start = Instant::now();
    let parts: Vec<u64> = (1..=10_000).collect();
    let table = exact_counts(&parts, 10_000).unwrap();
    let dp_time = start.elapsed();
    let bits = p().bits();
    let exact = table.ln(10_000, bits).unwrap();
    let ac = constants(&l_data(&LambdaSpec::Classical, p()).unwrap()).unwrap();
    let rel = |order| Float::with_val(bits, &exact - estimate(&ac, 10_000, order).unwrap().log_value).to_f64().exp_m1();
    let (r0, r1) = (rel(0), rel(1));
    let passed = r1.abs() < 1e-3 && (r0.abs() - 0.0044).abs() <= 0.0015 && dp_time < Duration::from_secs(120);
    outcome(
        passed,
        format!("order-1 error {r1:.3e}, order-0 error {:.4}%, DP {:.2} s", 100.0 * r0.abs(), secs(dp_time)),
    )
}

fn coefficient_fit() -> Outcome {
    let classical = fit_c1(&LambdaSpec::Classical, 5000, p()).unwrap();
    let squares = fit_c1(&LambdaSpec::powers(2).unwrap(), 5000, p()).unwrap();
    let rel = |f: &partition_saddle::cli::FitResult| {
        let c = f.c1_closed.unwrap();
        ((f.c1_hat - c) / c).abs()
    };
    let (a, b) = (rel(&classical), rel(&squares));
    outcome(
        a < 0.05 && b < 0.10,
        format!(
            "classical {:.6} vs {:.6} (rel {a:.2e}), powers(2) {:.6} vs {:.6} (rel {b:.2e})",
            classical.c1_hat,
            classical.c1_closed.unwrap(),
            squares.c1_hat,
            squares.c1_closed.unwrap()
        ),
    )
}

fn constants_identities() -> Outcome {
    let bits = p().bits();
    let ac = constants(&l_data(&LambdaSpec::Classical, p()).unwrap()).unwrap();
    let b = (Float::with_val(bits, 3).sqrt() * 4u32).recip();
    let c = p().pi() * rat(2, 3).sqrt();
    let mut worst = diff(&ac.frak_b, &b).max(diff(&ac.frak_c, &c)).max(diff(&ac.frak_h, &p().float(1)));
    for k in 1..=6 {
        let ap = constants(&l_data(&LambdaSpec::power_ap(1, 1, k).unwrap(), p()).unwrap()).unwrap();
        let pw = constants(&l_data(&LambdaSpec::powers(k).unwrap(), p()).unwrap()).unwrap();
        let d_ap = closed_forms::power_ap(1, 1, k, p()).unwrap();
        let d_pw = closed_forms::powers(k, p()).unwrap();
        for (x, y) in [
            (&ap.frak_b, &pw.frak_b),
            (&ap.frak_c, &pw.frak_c),
            (&ap.frak_h, &pw.frak_h),
            (&ap.gamma10, &pw.gamma10),
            (&d_ap.frak_b, &d_pw.frak_b),
            (&d_ap.frak_c, &d_pw.frak_c),
            (&d_ap.frak_h, &d_pw.frak_h),
            (&d_ap.frak_b, &pw.frak_b),
        ] {
            worst = worst.max(diff(x, y));
        }
    }
    outcome(worst < 1e-30, format!("largest discrepancy {worst:.2e}"))
}

fn phi_expansion() -> Outcome {
    let sigmas: Vec<f64> = (3..=10).map(|j| 2f64.powi(-j)).collect();
    let weak = verify_phi_expansion(&LambdaSpec::Classical, &sigmas, false).unwrap();
    let mut detail = format!("weak classical passed = {}, scaled residuals", weak.passed);
    for row in &weak.rows {
        detail.push_str(&format!(" {:.3e}", row.scaled));
    }
    let mut passed = weak.passed;
    for spec in [LambdaSpec::Classical, LambdaSpec::powers(2).unwrap(), LambdaSpec::power_ap(3, 4, 1).unwrap()] {
        let strong = verify_phi_expansion(&spec, &sigmas, true).unwrap();
        passed &= strong.passed && strong.slope.is_none_or(|s| s >= 3.0);
        let slope = strong.slope.map_or("below noise".to_string(), |s| format!("{s:.2}"));
        detail.push_str(&format!("; strong {spec} slope {slope}"));
    }
    outcome(passed, detail)
}

fn saddle_inversion() -> Outcome {
    let ld = l_data(&LambdaSpec::Classical, p()).unwrap();
    let mut passed = true;
    let mut detail = Vec::new();
    for n in [1_000u64, 10_000, 100_000] {
        let solved = solve_saddle(&LambdaSpec::Classical, n).unwrap().rho;
        let gap = (solved - rho_expansion(&ld, n, 2).unwrap().to_f64()).abs();
        let bound = (n as f64).powf(-1.05);
        passed &= gap < bound;
        detail.push(format!("n = {n}: {gap:.2e} < {bound:.2e}"));
    }
    outcome(passed, detail.join(", "))
}

fn arc_bound() -> Outcome {
    let a = verify_arc_bound(&LambdaSpec::Classical, 500, 4000).unwrap();
    let b = verify_arc_bound(&LambdaSpec::Classical, 2000, 4000).unwrap();
    let pointwise = a.max_ratio < a.rho && b.max_ratio < b.rho;
    let integral = b.scaled_integral <= a.scaled_integral;
    let describe = |r: &partition_saddle::saddle::ArcBoundReport| {
        format!(
            "n = {}: max {:.4} at t = {:.4} vs rho {:.4}, scaled integral {:.4}",
            r.n, r.max_ratio, r.t_at_max, r.rho, r.scaled_integral
        )
    };
    outcome(
        pointwise && integral,
        format!("pointwise {pointwise}, integral non-increasing {integral}; {}; {}", describe(&a), describe(&b)),
    )
}

fn special_functions() -> Outcome {
    let prec = Precision::new(50);
    let bits = prec.bits();
    let f = |x: f64| prec.float(x);
    let mut worst = 0.0f64;
    for s in [-3.0, -1.5, 0.5, 2.0, 7.0] {
        let h = hurwitz_zeta(&f(s), &f(1.0), prec).unwrap();
        let z = riemann_zeta(&f(s), prec).unwrap();
        worst = worst.max(diff(&h, &z) / z.to_f64().abs().max(1.0));
    }
    for q in [2i64, 3, 5] {
        for s in [-1.0, 2.0, 3.5] {
            let mut total = prec.float(0);
            for a in 1..=q {
                total += hurwitz_zeta(&f(s), &rat(a, q), prec).unwrap();
            }
            let want = riemann_zeta(&f(s), prec).unwrap() * Float::with_val(bits, q).pow(&f(s));
            worst = worst.max(diff(&total, &want) / want.to_f64().abs().max(1.0));
        }
    }
    for (a, q) in [(1i64, 2i64), (1, 3), (3, 4), (2, 7)] {
        let x = rat(a, q);
        let z0 = hurwitz_zeta(&f(0.0), &x, prec).unwrap();
        worst = worst.max(diff(&z0, &(rat(1, 2) - &x)));
        let b2 = Float::with_val(bits, x.square_ref()) - &x + rat(1, 6);
        let z1 = hurwitz_zeta(&f(-1.0), &x, prec).unwrap();
        worst = worst.max(diff(&z1, &(-b2 / 2u32)));
    }
    outcome(worst < 1e-44, format!("largest discrepancy {worst:.2e} at 50 digits"))
}

fn singleton_family() -> Outcome {
    let mut passed = true;
    let mut detail = Vec::new();
    for (k, a) in [(2u64, 1u64), (3, 2)] {
        let spec = LambdaSpec::k_power_plus_singleton(k, a).unwrap();
        if !check_admissible(&spec).gcd_one {
            passed = false;
            detail.push(format!("({k},{a}) gcd check failed"));
            continue;
        }
        let ac = constants(&l_data(&spec, p()).unwrap()).unwrap();
        let d = closed_forms::singleton(k, a, p());
        let worst = diff(&ac.frak_b, &d.frak_b).max(diff(&ac.frak_c, &d.frak_c)).max(diff(&ac.frak_h, &d.frak_h));
        passed &= worst < 1e-20;
        detail.push(format!("({k},{a}) {worst:.2e}"));
    }
    outcome(passed, detail.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle agreement", oracle_agreement),
        ("Cauchy exactness", cauchy_exactness),
        ("first-order convergence", first_order_convergence),
        ("coefficient fit", coefficient_fit),
        ("constant identities", constants_identities),
        ("Phi expansion decay", phi_expansion),
        ("saddle inversion", saddle_inversion),
        ("arc bound", arc_bound),
        ("special functions", special_functions),
        ("singleton family", singleton_family),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = check();
        failures += usize::from(!r.passed);
        println!("criterion {:>2} {}: {name}: {}", i + 1, if r.passed { "PASS" } else { "FAIL" }, r.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
