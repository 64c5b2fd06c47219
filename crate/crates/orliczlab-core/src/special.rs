//! Special functions used by the measure normalizations and the Monte Carlo
//! confidence machinery: log-gamma (Lanczos), beta, and the inverse normal CDF.

use crate::scalar::Real;

// Lanczos g = 7, n = 9 coefficients (double accuracy).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    assert!(x > T::zero(), "ln_gamma requires a positive argument, got {x}");
    let half = T::of(0.5);
    if x < half {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx).
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let xm1 = x - T::one();
    let mut acc = T::of(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::of(c) / (xm1 + T::of_usize(i));
    }
    let g = T::of(7.0);
    let t = xm1 + g + half;
    let ln_sqrt_2pi = T::of(0.918_938_533_204_672_74);
    ln_sqrt_2pi + (xm1 + half) * t.ln() - t + acc.ln()
}

/// Euler beta function `B(a, b)` for positive arguments.
pub fn beta<T: Real>(a: T, b: T) -> T {
    ln_beta(a, b).exp()
}

/// `ln B(a, b)` for positive arguments.
pub fn ln_beta<T: Real>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

// Acklam's rational approximation for the standard normal quantile,
// relative error below 1.2e-9 over (0, 1).
const ICDF_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ICDF_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ICDF_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ICDF_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

/// Inverse of the standard normal CDF.
pub fn inverse_normal_cdf<T: Real>(p: T) -> T {
    let p = p.as_f64();
    assert!(p > 0.0 && p < 1.0, "quantile argument must lie in (0,1)");
    let p_low = 0.02425;
    let x = if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((ICDF_C[0] * q + ICDF_C[1]) * q + ICDF_C[2]) * q + ICDF_C[3]) * q + ICDF_C[4]) * q
            + ICDF_C[5])
            / ((((ICDF_D[0] * q + ICDF_D[1]) * q + ICDF_D[2]) * q + ICDF_D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((ICDF_A[0] * r + ICDF_A[1]) * r + ICDF_A[2]) * r + ICDF_A[3]) * r + ICDF_A[4]) * r
            + ICDF_A[5])
            * q
            / (((((ICDF_B[0] * r + ICDF_B[1]) * r + ICDF_B[2]) * r + ICDF_B[3]) * r + ICDF_B[4])
                * r
                + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((ICDF_C[0] * q + ICDF_C[1]) * q + ICDF_C[2]) * q + ICDF_C[3]) * q + ICDF_C[4]) * q
            + ICDF_C[5])
            / ((((ICDF_D[0] * q + ICDF_D[1]) * q + ICDF_D[2]) * q + ICDF_D[3]) * q + 1.0)
    };
    T::of(x)
}

/// Two-sided z-score for a confidence level in (0, 1).
pub fn z_score<T: Real>(confidence: T) -> T {
    inverse_normal_cdf((T::one() + confidence) / T::of(2.0))
}

/// Wilson score interval for `hits` successes out of `n` Bernoulli trials.
/// Returns `(center, half_width)`; the interval is clipped to `[0, 1]`.
pub fn wilson_interval<T: Real>(hits: usize, n: usize, confidence: T) -> (T, T) {
    assert!(n > 0);
    let z = z_score(confidence);
    let z2 = z * z;
    let nf = T::of_usize(n);
    let p = T::of_usize(hits) / nf;
    let denom = T::one() + z2 / nf;
    let center = (p + z2 / (T::of(2.0) * nf)) / denom;
    let spread = z * (p * (T::one() - p) / nf + z2 / (T::of(4.0) * nf * nf)).sqrt() / denom;
    (center, spread)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..15u32 {
            let exact: f64 = (1..n).map(|k| (k as f64).ln()).sum();
            let got = ln_gamma(n as f64);
            assert!(
                (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                "ln_gamma({n}) = {got}, want {exact}"
            );
        }
    }

    #[test]
    fn ln_gamma_half_integer() {
        // Γ(1/2) = √π.
        let want = std::f64::consts::PI.sqrt().ln();
        assert!((ln_gamma(0.5f64) - want).abs() < 1e-13);
    }

    #[test]
    fn beta_identities() {
        // B(1, x) = 1/x and B(2, 1/2) = 4/3.
        assert!((beta(1.0f64, 7.0) - 1.0 / 7.0).abs() < 1e-14);
        assert!((beta(2.0f64, 0.5) - 4.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn normal_quantile_round_values() {
        let q = inverse_normal_cdf(0.975f64);
        assert!((q - 1.959_963_984_540_054).abs() < 1e-7);
        assert!((inverse_normal_cdf(0.5f64)).abs() < 1e-9);
        assert!((z_score(0.95f64) - 1.959_963_984_540_054).abs() < 1e-7);
    }

    #[test]
    fn wilson_zero_hits_has_positive_upper_bound() {
        let (c, w) = wilson_interval::<f64>(0, 1000, 0.95);
        assert!(c > 0.0 && c - w <= 1e-12 && c + w < 0.01);
    }
}
