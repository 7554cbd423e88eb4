//! Standard normal quantile and small float helpers.
//!
//! Everything here is `no_std`; float intrinsics come from `libm`.

pub(crate) use libm::{fabs, floor, sqrt};

use libm::exp;

/// Domain error for the quantile functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainError;

impl core::fmt::Display for DomainError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "probability argument outside the valid domain")
    }
}

impl core::error::Error for DomainError {}

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * exp(-0.5 * x * x)
}

/// Standard normal CDF, evaluated by adaptive Simpson quadrature of the
/// density over `[0, x]`.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x <= -9.0 {
        return 0.0;
    }
    if x >= 9.0 {
        return 1.0;
    }
    0.5 + adaptive_simpson(0.0, x, 1e-14, 40)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (std_normal_pdf(a), std_normal_pdf(m), std_normal_pdf(b));
    simpson_step(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (std_normal_pdf(lm), std_normal_pdf(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    if depth == 0 || fabs(left + right - whole) <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson_step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Inverse standard normal CDF.
///
/// A rational initial approximation (Acklam) refined by one Newton step
/// against the quadrature CDF; absolute error well below 1e-9.
///
/// Errors with [`DomainError`] unless `0 < rho < 1`.
pub fn normal_quantile(rho: f64) -> Result<f64, DomainError> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(DomainError);
    }
    let x0 = acklam(rho);
    // Newton: x <- x + (rho - Phi(x)) / phi(x)
    let x = x0 + (rho - std_normal_cdf(x0)) / std_normal_pdf(x0);
    Ok(x)
}

/// Worst-case safety coefficient when only the first two moments of the
/// weights are known: `sqrt(rho / (1 - rho))`.
///
/// Errors with [`DomainError`] unless `0.5 < rho < 1`.
pub fn worst_case_kappa(rho: f64) -> Result<f64, DomainError> {
    if !(rho > 0.5 && rho < 1.0) {
        return Err(DomainError);
    }
    Ok(sqrt(rho / (1.0 - rho)))
}

// Rational approximation by P. Acklam; relative error below 1.2e-9.
fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -39.696_830_286_653_76,
        220.946_098_424_520_9,
        -275.928_510_446_969_3,
        138.357_751_867_269,
        -30.664_798_066_147_16,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -54.476_098_798_224_06,
        161.585_836_858_040_9,
        -155.698_979_859_886_6,
        66.801_311_887_719_72,
        -13.280_681_552_885_72,
    ];
    const C: [f64; 6] = [
        -0.007_784_894_002_430_293,
        -0.322_396_458_041_136_4,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        0.007_784_695_709_041_462,
        0.322_467_129_070_039_8,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = sqrt(-2.0 * libm::log(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -acklam_upper(1.0 - p)
    }
}

fn acklam_upper(p: f64) -> f64 {
    // mirror of the lower tail
    acklam(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: bisection on a trapezoid-rule CDF with Richardson
    // extrapolation, kept separate from the adaptive-Simpson path above.
    fn oracle_cdf(x: f64) -> f64 {
        let trap = |n: usize| {
            let h = x / n as f64;
            let mut s = 0.5 * (std_normal_pdf(0.0) + std_normal_pdf(x));
            for i in 1..n {
                s += std_normal_pdf(h * i as f64);
            }
            s * h
        };
        let t1 = trap(40_000);
        let t2 = trap(80_000);
        0.5 + (4.0 * t2 - t1) / 3.0
    }

    fn oracle_quantile(rho: f64) -> f64 {
        let (mut lo, mut hi) = (-9.0, 9.0);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if oracle_cdf(mid) < rho {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn quantile_matches_bisection_oracle() {
        // frozen from the bisection oracle
        assert!(fabs(oracle_quantile(0.9) - 1.2815515655) < 1e-9);
        assert!(fabs(oracle_quantile(0.95) - 1.6448536270) < 1e-9);
        assert!(fabs(normal_quantile(0.9).unwrap() - 1.2815515655) < 1e-9);
        assert!(fabs(normal_quantile(0.95).unwrap() - 1.6448536270) < 1e-9);
    }

    #[test]
    fn quantile_symmetry_and_domain() {
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
        assert!(normal_quantile(-0.3).is_err());
    }

    #[test]
    fn quantile_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..200 {
            let q = normal_quantile(i as f64 / 200.0).unwrap();
            assert!(q >= prev);
            prev = q;
        }
    }

    #[test]
    fn quantile_roundtrip() {
        for &rho in &[0.5, 0.75, 0.9, 0.95, 0.99, 0.001, 0.9999] {
            let x = normal_quantile(rho).unwrap();
            assert!(fabs(std_normal_cdf(x) - rho) <= 1e-10, "rho = {rho}");
        }
    }

    #[test]
    fn worst_case_values() {
        assert!(fabs(worst_case_kappa(0.9).unwrap() - 3.0) < 1e-12);
        assert!(fabs(worst_case_kappa(0.8).unwrap() - 2.0) < 1e-12);
        assert!(fabs(worst_case_kappa(0.5 + 1e-12).unwrap() - 1.0) < 1e-6);
        assert!(worst_case_kappa(0.5).is_err());
        assert!(worst_case_kappa(1.0).is_err());
    }
}
