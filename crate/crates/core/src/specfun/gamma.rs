use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 (Godfrey)
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
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

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Distance to a non-positive integer below which `z` is treated as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Returns the non-positive integer `z` sits on (within [`POLE_TOLERANCE`]), if any.
pub fn nearest_pole(z: Complex64) -> Option<f64> {
    if z.re > POLE_TOLERANCE {
        return None;
    }
    let n = z.re.round();
    if n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < POLE_TOLERANCE {
        Some(n)
    } else {
        None
    }
}

/// Complex log-Gamma via the Lanczos approximation, with reflection for `Re z < 1/2`.
///
/// For `Re z >= 1/2` the result is the continuous branch obtained from the
/// Lanczos sum; the imaginary part may differ from other libraries by a
/// multiple of `2π`, which leaves `exp(log_gamma(z))` unchanged.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nearest_pole(z) {
        return Err(Error::Pole(format!("Gamma has a pole at {n}")));
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let sin_piz = (z * PI).sin();
        let reflected = log_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - sin_piz.ln() - reflected);
    }
    let zm1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + series.ln())
}

/// `Γ(z)` for complex `z`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, which is entire: zero at the poles of Γ.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Real log-Gamma for positive arguments.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ln_gamma_real requires x > 0, got {x}"
        )));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_one_is_one() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn gamma_of_i_modulus() {
        // |Γ(i)|² = π / sinh π
        let v = gamma(c(0.0, 1.0)).unwrap();
        let expected = (PI / PI.sinh()).sqrt();
        assert!((v.norm() - expected).abs() < 1e-13);
        assert!((v.norm() - 0.521_564).abs() < 1e-6);
    }

    #[test]
    fn poles_are_rejected() {
        for z in [0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(log_gamma(c(z, 0.0)), Err(Error::Pole(_))));
        }
        assert!(matches!(log_gamma(c(-3.0 + 5e-13, 0.0)), Err(Error::Pole(_))));
        assert!(log_gamma(c(-3.0 + 1e-9, 0.0)).is_ok());
        assert_eq!(reciprocal_gamma(c(-4.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            fact *= n as f64;
            let v = gamma(c(n as f64 + 1.0, 0.0)).unwrap();
            assert!((v.re / fact - 1.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn reflection_across_imaginary_axis() {
        // |Γ(iλ)|² = π / (λ sinh πλ)
        for k in 0..=99 {
            let lambda = 0.1 + 0.1 * k as f64;
            let v = gamma(c(0.0, lambda)).unwrap().norm_sqr();
            let expected = PI / (lambda * (PI * lambda).sinh());
            assert!((v / expected - 1.0).abs() < 1e-10, "λ = {lambda}");
        }
    }

    #[test]
    fn negative_real_arguments() {
        // Γ(−1/2) = −2√π
        let v = gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn reference_values_on_the_accuracy_strip() {
        // mpmath.gamma at 30 digits
        let table = [
            (c(3.5, 40.0), c(4.885_998_245_835_507_9e-23, -6.705_935_785_350_833_6e-23)),
            (c(-7.25, 1.5), c(-5.822_534_257_386_866e-6, -5.163_964_518_134_736e-6)),
            (c(20.0, -30.0), c(-1.453_876_687_553_480_9e9, -1.163_777_777_803_157_3e9)),
            (c(0.5, 50.0), c(9.033_204_352_600_619e-35, 1.726_362_252_269_093_8e-34)),
            (c(45.0, 10.0), c(8.226_994_800_869_216e53, 2.900_008_851_360_302_5e53)),
        ];
        for (z, expected) in table {
            let v = gamma(z).unwrap();
            let rel = (v - expected).norm() / expected.norm();
            assert!(rel < 1e-12, "z = {z}: {v} vs {expected} (rel {rel:e})");
        }
    }
}
