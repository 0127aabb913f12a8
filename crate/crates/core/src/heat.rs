//! The heat kernel `E_t = H⁻¹(e^{−tλ²})` and its Gaussian two-sided bounds.
//!
//! `E_t` is even and real, and only the even part of the inverse transform
//! survives:
//!
//! `E_t(x) = 2^{2ρ}/(8π) ∫ e^{−tλ²} φ_λ(x) |C(λ)|^{−2} dλ`.
//!
//! For `|x| < 1` this integral is evaluated directly. Further out the
//! integrand is a tiny remainder of a highly oscillatory sum, so instead
//! `φ_λ = C(λ)Φ_λ + C(−λ)Φ_{−λ}` is inserted, with
//! `Φ_λ(x) = (2cosh x)^{iλ−ρ} ₂F₁((ρ−iλ)/2, (α−β+1−iλ)/2; 1−iλ; cosh^{−2}x)`,
//! giving `E_t(x) = 2^{2ρ}/(4π) ∫ e^{−tλ²} Φ_λ(x)/C(−λ) dλ`. That integrand
//! is analytic in the upper half plane, and on the line
//! `Im λ = log(2cosh x)/(2t)` its phase is stationary, which leaves the
//! factor `e^{−log²(2cosh x)/(4t)}` outside the integral. The kernel is
//! returned in log form so values like `e^{−80}` stay representable.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{ln_cosh, ln_weight_a, ln_weight_b, phi, Domain, JCParams, SampledFunction};
use crate::specfun::hypergeometric::maclaurin;
use crate::specfun::quadrature::composite_interval;
use crate::specfun::{ln_gamma_real, QuadGrid};
use crate::transform::{density_normalization, ln_c_function};

/// Spectral tail tolerance: `e^{−tΛ²}Λ^{2α+1}` at the cutoff `Λ`.
pub const SPECTRAL_TAIL: f64 = 1e-14;

const NODES_PER_PANEL: usize = 16;

/// Which representation of the spectral integral to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatRoute {
    /// Real-line integral against `φ_λ`.
    Direct,
    /// Shifted-contour integral against `Φ_λ`.
    Contour,
    /// `Direct` for `|x| < 1`, `Contour` otherwise.
    Auto,
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// Smallest `Λ ≥ 1` with `e^{−tΛ²}Λ^{2α+1} < SPECTRAL_TAIL`.
pub fn spectral_cutoff(p: &JCParams, t: f64) -> f64 {
    let k = 2.0 * p.alpha() + 1.0;
    let target = SPECTRAL_TAIL.ln();
    let mut lambda = (-target / t).sqrt().max(1.0);
    // fixed point of tΛ² = k·log Λ − log(tail)
    for _ in 0..50 {
        let next = ((k * lambda.ln() - target) / t).sqrt();
        if (next - lambda).abs() < 1e-12 {
            break;
        }
        lambda = next.max(1.0);
    }
    lambda
}

fn half_line_rule(cutoff: f64, width: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let panels = ((cutoff / width).ceil() as usize).max(4);
    composite_interval(0.0, cutoff, panels, NODES_PER_PANEL)
}

/// `log E_t(x)` by the chosen route.
pub fn log_heat_kernel_with(p: &JCParams, t: f64, x: f64, route: HeatRoute) -> Result<f64> {
    check_t(t)?;
    let route = match route {
        HeatRoute::Auto if x.abs() < 1.0 => HeatRoute::Direct,
        HeatRoute::Auto => HeatRoute::Contour,
        r => r,
    };
    match route {
        HeatRoute::Direct => direct(p, t, x),
        _ => contour(p, t, x),
    }
}

fn direct(p: &JCParams, t: f64, x: f64) -> Result<f64> {
    let cutoff = spectral_cutoff(p, t);
    let (nodes, weights) = half_line_rule(cutoff, 0.5)?;
    let mut sum = 0.0;
    for (&l, &w) in nodes.iter().zip(&weights) {
        let ln_c = ln_c_function(p, Complex64::new(l, 0.0))?;
        let v = phi(p, Complex64::new(l, 0.0), x)?;
        sum += w * (-t * l * l - 2.0 * ln_c.re).exp() * v.re;
    }
    let value = 2.0 * density_normalization(p) / (8.0 * PI) * sum;
    if value <= 0.0 {
        return Err(Error::Positivity { x, value });
    }
    Ok(value.ln())
}

fn contour(p: &JCParams, t: f64, x: f64) -> Result<f64> {
    let (alpha, beta, rho) = (p.alpha(), p.beta(), p.rho());
    let log_two_cosh = std::f64::consts::LN_2 + ln_cosh(x);
    let eta = log_two_cosh / (2.0 * t);
    let z = (-2.0 * ln_cosh(x)).exp();
    let cutoff = spectral_cutoff(p, t);
    let (nodes, weights) = half_line_rule(cutoff, 1.0)?;
    let i = Complex64::new(0.0, 1.0);
    let logs = nodes
        .iter()
        .map(|&s| {
            let lambda = Complex64::new(s, eta);
            let il = i * lambda;
            let f = maclaurin(
                (-il + rho) / 2.0,
                (-il + (alpha - beta + 1.0)) / 2.0,
                -il + 1.0,
                z,
            )?;
            Ok(-t * s * s + f.ln() - ln_c_function(p, -lambda)?)
        })
        .collect::<Result<Vec<Complex64>>>()?;
    let peak = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs
        .iter()
        .zip(&weights)
        .map(|(l, &w)| w * (l - peak).exp().re)
        .sum();
    // the integrand over s < 0 is the conjugate of that over s > 0
    let integral = 2.0 * sum;
    if integral <= 0.0 {
        return Err(Error::Positivity { x, value: integral });
    }
    Ok((density_normalization(p) / (4.0 * PI)).ln() - log_two_cosh * log_two_cosh / (4.0 * t)
        - rho * log_two_cosh
        + peak
        + integral.ln())
}

/// `log E_t(x)`.
pub fn log_heat_kernel(p: &JCParams, t: f64, x: f64) -> Result<f64> {
    log_heat_kernel_with(p, t, x, HeatRoute::Auto)
}

/// `E_t(x)` at each point of `xs`.
pub fn heat_kernel_at(p: &JCParams, t: f64, xs: &[f64]) -> Result<Vec<f64>> {
    check_t(t)?;
    xs.par_iter()
        .map(|&x| log_heat_kernel(p, t, x).map(f64::exp))
        .collect()
}

/// Samples of `E_t` on a spatial grid.
pub fn heat_kernel(p: &JCParams, t: f64, grid: &QuadGrid) -> Result<SampledFunction> {
    check_t(t)?;
    let values = grid
        .nodes()
        .par_iter()
        .map(|&x| log_heat_kernel(p, t, x).map(|l| Complex64::new(l.exp(), 0.0)))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(grid.clone(), values, Domain::Spatial)
}

/// Half-width `X` (a multiple of `1/2`) beyond which `E_t·A < tol`.
pub fn spatial_cutoff(p: &JCParams, t: f64, tol: f64) -> Result<f64> {
    check_t(t)?;
    let mut x = 2.0;
    while x < 200.0 {
        if log_heat_kernel(p, t, x)? + ln_weight_a(p, x) < tol.ln() {
            return Ok(x);
        }
        x += 0.5;
    }
    Err(Error::InvalidArgument(format!(
        "no spatial cutoff below 200 for t = {t}"
    )))
}

/// Constant-free Gaussian envelope check of `E_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichReport {
    pub t: f64,
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub log_ratio_min: f64,
    pub log_ratio_max: f64,
    pub grid_half_width: f64,
}

/// `r(x) = log[E_t(x) · 2^{2α+1} Γ(α+1) t^{α+1} · √B(x) · e^{x²/(4t)}]`.
pub fn log_ratio(p: &JCParams, t: f64, x: f64) -> Result<f64> {
    let alpha = p.alpha();
    Ok(log_heat_kernel(p, t, x)?
        + (2.0 * alpha + 1.0) * std::f64::consts::LN_2
        + ln_gamma_real(alpha + 1.0)?
        + (alpha + 1.0) * t.ln()
        + 0.5 * ln_weight_b(p, x)
        + x * x / (4.0 * t))
}

/// Range of `r(x)` over the grid nodes, and `μ = r/t` bounds.
pub fn sandwich_diagnose(p: &JCParams, t: f64, grid: &QuadGrid) -> Result<SandwichReport> {
    check_t(t)?;
    let r = grid
        .nodes()
        .par_iter()
        .map(|&x| log_ratio(p, t, x))
        .collect::<Result<Vec<f64>>>()?;
    let lo = r.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(SandwichReport {
        t,
        mu_lo: lo / t,
        mu_hi: hi / t,
        log_ratio_min: lo,
        log_ratio_max: hi,
        grid_half_width: grid.half_width(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::finite_difference;
    use crate::specfun::make_grid;
    use crate::transform::{forward_transform, inverse_transform};

    fn p() -> JCParams {
        JCParams::new(0.75, 0.25).unwrap()
    }

    #[test]
    fn cutoff_meets_tail_criterion() {
        for t in [0.05, 0.15, 0.5, 2.0] {
            let l = spectral_cutoff(&p(), t);
            let tail = (-t * l * l).exp() * l.powf(2.5);
            assert!(tail <= 1.0001e-14 && tail > 1e-16, "t = {t}: {tail:e}");
        }
    }

    #[test]
    fn routes_agree_on_overlap() {
        for p in [p(), JCParams::new(2.0, 0.5).unwrap()] {
            for t in [0.05, 0.15, 0.5] {
                let peak = log_heat_kernel(&p, t, 0.0).unwrap().exp();
                for x in [0.5, 1.0, 1.5, 2.0] {
                    let a = log_heat_kernel_with(&p, t, x, HeatRoute::Direct).unwrap().exp();
                    let b = log_heat_kernel_with(&p, t, x, HeatRoute::Contour).unwrap().exp();
                    // the real-line sum only resolves E_t down to ~1e-13 of its peak
                    assert!((a - b).abs() < 1e-8 * b + 1e-13 * peak, "t={t} x={x}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn matches_inverse_transform() {
        let p = p();
        let t = 0.15;
        let spectral = make_grid(spectral_cutoff(&p, t), 40, 16).unwrap();
        let g = SampledFunction::from_fn(spectral, Domain::Spectral, |l| {
            Complex64::new((-t * l * l).exp(), 0.0)
        });
        let xs = [-2.0, -0.3, 0.0, 0.7, 1.9];
        let inv = inverse_transform(&p, &g, &xs).unwrap();
        let direct = heat_kernel_at(&p, t, &xs).unwrap();
        for (v, e) in inv.values.iter().zip(&direct) {
            assert!(v.im.abs() < 1e-10 * e);
            assert!((v.re / e - 1.0).abs() < 1e-8, "{v} {e}");
        }
    }

    #[test]
    fn positive_and_even() {
        let p = p();
        for t in [0.05, 0.15, 0.5] {
            for k in 0..=16 {
                let x = 0.25 * k as f64;
                let a = log_heat_kernel(&p, t, x).unwrap();
                let b = log_heat_kernel(&p, t, -x).unwrap();
                assert!(a.is_finite());
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_identity() {
        let p = p();
        for t in [0.05, 0.15, 0.5] {
            let x_max = spatial_cutoff(&p, t, 1e-14).unwrap();
            let grid = make_grid(x_max, (4.0 * x_max) as usize, 16).unwrap();
            let e = heat_kernel(&p, t, &grid).unwrap();
            let lambdas: Vec<Complex64> =
                (0..=20).map(|k| Complex64::new(-5.0 + 0.5 * k as f64, 0.0)).collect();
            let h = forward_transform(&p, &e, &lambdas).unwrap();
            assert!(h.warnings.is_empty());
            for (l, v) in lambdas.iter().zip(&h.values) {
                let expected = (-t * l.re * l.re).exp();
                assert!((v - expected).norm() < 1e-6, "t={t} λ={l}: {v} vs {expected}");
            }
        }
    }

    #[test]
    fn semigroup() {
        let p = p();
        let grid = make_grid(12.0, 48, 16).unwrap();
        let lambdas = [Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0), Complex64::new(3.5, 0.0)];
        let hat = |t: f64| {
            let e = heat_kernel(&p, t, &grid).unwrap();
            forward_transform(&p, &e, &lambdas).unwrap().values
        };
        let (a, b, ab) = (hat(0.2), hat(0.3), hat(0.5));
        for k in 0..lambdas.len() {
            assert!((a[k] * b[k] - ab[k]).norm() < 1e-8);
        }
    }

    #[test]
    fn sandwich_is_bounded_and_stable() {
        let p = p();
        for t in [0.05, 0.15, 0.5] {
            let coarse = sandwich_diagnose(&p, t, &make_grid(4.0, 8, 16).unwrap()).unwrap();
            let fine = sandwich_diagnose(&p, t, &make_grid(4.0, 16, 16).unwrap()).unwrap();
            assert!(coarse.log_ratio_min <= coarse.log_ratio_max);
            assert!(coarse.mu_lo <= coarse.mu_hi);
            let s1 = coarse.log_ratio_max - coarse.log_ratio_min;
            let s2 = fine.log_ratio_max - fine.log_ratio_min;
            assert!(s1.is_finite() && s2.is_finite());
            assert!((s2 - s1).abs() / s2 < 0.05, "t={t}: {s1} {s2}");
        }
    }

    #[test]
    fn log_ratio_is_even() {
        let p = p();
        for x in [0.1, 1.3, 3.9] {
            let a = log_ratio(&p, 0.15, x).unwrap();
            let b = log_ratio(&p, 0.15, -x).unwrap();
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn two_t_envelopes_overlap() {
        let p = p();
        let grid = make_grid(4.0, 8, 16).unwrap();
        let a = sandwich_diagnose(&p, 0.1, &grid).unwrap();
        let b = sandwich_diagnose(&p, 0.2, &grid).unwrap();
        for r in [a, b] {
            assert!(r.mu_lo.is_finite() && r.mu_hi.is_finite());
        }
        // μ = r/t scales like 1/t, so compare the r-intervals
        assert!(a.log_ratio_min.max(b.log_ratio_min) <= a.log_ratio_max.min(b.log_ratio_max));
    }

    #[test]
    fn unit_mass_in_the_small_t_limit() {
        // ∫ E_t A dx = H(E_t)(iρ) = e^{tρ²}, so r(0) → log(1/2) as t → 0
        let p = p();
        let r = log_ratio(&p, 0.01, 0.0).unwrap();
        assert!((r + std::f64::consts::LN_2).abs() < 0.02, "{r}");
    }

    #[test]
    fn modulated_envelope_bounds() {
        // e^{ax²}E_t against e^{−(1/4t−a)x²}/√B
        let p = p();
        let (t, a) = (0.15, 1.0);
        let ratios: Vec<f64> = (0..=40)
            .map(|k| {
                let x = -4.0 + 0.2 * k as f64;
                let lhs = log_heat_kernel(&p, t, x).unwrap() + a * x * x;
                let env = -(1.0 / (4.0 * t) - a) * x * x - 0.5 * ln_weight_b(&p, x);
                lhs - env
            })
            .collect();
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(hi - lo < 5.0, "{lo} {hi}");
    }

    #[test]
    fn second_derivative_is_bounded() {
        let p = p();
        let grid = make_grid(3.0, 12, 8).unwrap();
        let e = heat_kernel(&p, 0.15, &grid).unwrap();
        let d1 = finite_difference(grid.nodes(), e.values()).unwrap();
        let d2 = finite_difference(grid.nodes(), &d1).unwrap();
        let peak = e.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let bound = d2.iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(bound.is_finite() && bound < 100.0 * peak / 0.15);
    }

    #[test]
    fn rejects_bad_t() {
        assert!(log_heat_kernel(&p(), 0.0, 1.0).is_err());
        assert!(heat_kernel_at(&p(), -1.0, &[0.0]).is_err());
    }
}
