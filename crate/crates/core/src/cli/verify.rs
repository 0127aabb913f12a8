//! The `verify` suites. Each check records the measured residual and the
//! tolerance it is held to.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{Grids, Suite};
use super::output::Check;
use crate::error::Result;
use crate::heat::{heat_kernel, sandwich_diagnose};
use crate::jacobi::{
    eigen_residual, eigenfunction_g, eigenfunction_g_first_form, Domain, EigenDerivative, JCParams,
    SampledFunction,
};
use crate::modulation::{mixed_norm, stft, Exponent, LatticeAxis, Measure, MixedNormSpec, Window};
use crate::specfun::make_grid;
use crate::transform::{
    forward_on_grid, gaussian_envelope, inverse_transform, plancherel_check, plancherel_density,
};

pub const DEFAULT_LAMBDAS: [Complex64; 5] = [
    Complex64::new(0.5, 0.0),
    Complex64::new(1.0, 0.0),
    Complex64::new(2.0, 0.0),
    Complex64::new(5.0, 0.0),
    Complex64::new(1.0, 0.5),
];

fn check(suite: &str, name: String, measured: f64, tolerance: f64) -> Check {
    Check {
        suite: suite.to_string(),
        name,
        passed: measured.is_finite() && measured < tolerance,
        measured,
        tolerance,
    }
}

pub fn run_suite(
    p: &JCParams,
    grids: &Grids,
    suite: Suite,
    lambdas: &[Complex64],
    random_lambdas: usize,
    seed: u64,
) -> Result<Vec<Check>> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Eigen,
            Suite::Plancherel,
            Suite::Roundtrip,
            Suite::Sandwich,
            Suite::Stft,
            Suite::DensityGrowth,
        ],
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in suites {
        out.extend(match s {
            Suite::Eigen => eigen(p, lambdas, random_lambdas, seed)?,
            Suite::Plancherel => plancherel(p, grids)?,
            Suite::Roundtrip => roundtrip(p, grids)?,
            Suite::Sandwich => sandwich(p)?,
            Suite::Stft => stft_checks()?,
            Suite::DensityGrowth => density_growth(p)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(out)
}

fn eigen(p: &JCParams, lambdas: &[Complex64], random: usize, seed: u64) -> Result<Vec<Check>> {
    let mut all: Vec<Complex64> = if lambdas.is_empty() { DEFAULT_LAMBDAS.to_vec() } else { lambdas.to_vec() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        all.push(Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-1.0..1.0)));
    }
    let grid = make_grid(3.0, 24, 12)?;
    let xs: Vec<f64> = (0..=12).map(|k| -3.0 + 0.5 * k as f64).collect();
    let per_lambda = all
        .par_iter()
        .map(|&l| {
            let mut checks = Vec::new();
            let g0 = eigenfunction_g(p, l, 0.0)?;
            checks.push(check("eigen", format!("normalization lambda={l}"), (g0 - 1.0).norm(), 1e-10));
            let r = eigen_residual(p, l, &grid, 3.0, EigenDerivative::Analytic)?;
            checks.push(check("eigen", format!("eigen_residual lambda={l}"), r, 1e-6));
            if (Complex64::new(0.0, p.rho()) - l).norm() > 1e-6 {
                let mut worst = 0.0f64;
                for &x in &xs {
                    let a = eigenfunction_g(p, l, x)?;
                    let b = eigenfunction_g_first_form(p, l, x)?;
                    worst = worst.max((a - b).norm() / a.norm().max(1e-300));
                }
                checks.push(check("eigen", format!("two_forms lambda={l}"), worst, 1e-9));
            }
            Ok(checks)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_lambda.into_iter().flatten().collect())
}

fn envelope_samples(p: &JCParams, grids: &Grids) -> Result<SampledFunction> {
    Ok(SampledFunction::from_fn(grids.spatial.build()?, Domain::Spatial, |x| {
        Complex64::new(gaussian_envelope(p, x), 0.0)
    }))
}

fn plancherel(p: &JCParams, grids: &Grids) -> Result<Vec<Check>> {
    let f = envelope_samples(p, grids)?;
    let r = plancherel_check(p, &f, &grids.spectral.build()?)?;
    Ok(vec![
        check("plancherel", "relative_error".into(), r.rel_err, 1e-4),
        check("plancherel", "imaginary_part".into(), r.rhs.im.abs() / r.lhs, 1e-8),
    ])
}

fn roundtrip(p: &JCParams, grids: &Grids) -> Result<Vec<Check>> {
    let f = envelope_samples(p, grids)?;
    let (hf, _) = forward_on_grid(p, &f, &grids.spectral.build()?)?;
    let xs: Vec<f64> = (0..=24).map(|k| -3.0 + 0.25 * k as f64).collect();
    let back = inverse_transform(p, &hf, &xs)?;
    let err = xs
        .iter()
        .zip(&back.values)
        .map(|(&x, v)| (v - gaussian_envelope(p, x)).norm())
        .fold(0.0, f64::max);
    Ok(vec![check("roundtrip", "sup_error".into(), err, 1e-4)])
}

fn sandwich(p: &JCParams) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for t in [0.05, 0.15, 0.5] {
        let coarse_grid = make_grid(4.0, 8, 16)?;
        let coarse = sandwich_diagnose(p, t, &coarse_grid)?;
        let fine = sandwich_diagnose(p, t, &make_grid(4.0, 16, 16)?)?;
        let s1 = coarse.log_ratio_max - coarse.log_ratio_min;
        let s2 = fine.log_ratio_max - fine.log_ratio_min;
        out.push(check("sandwich", format!("spread_stability t={t}"), (s2 - s1).abs() / s2, 0.05));
        let e = heat_kernel(p, t, &coarse_grid)?;
        let non_positive = e.values().iter().filter(|v| !(v.re > 0.0)).count();
        out.push(check("sandwich", format!("non_positive_nodes t={t}"), non_positive as f64, 0.5));
    }
    Ok(out)
}

fn stft_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lebesgue = |p: f64| MixedNormSpec {
        p: Exponent::Finite(p),
        q: Exponent::Finite(p),
        measure: Measure::Lebesgue,
        params: JCParams::new(0.5, 0.5).expect("valid parameters"),
    };
    let sample = |half: f64, f: fn(f64) -> f64| -> Result<SampledFunction> {
        let grid = make_grid(half, (8.0 * half).round() as usize, 16)?;
        Ok(SampledFunction::from_fn(grid, Domain::Spatial, |x| Complex64::new(f(x), 0.0)))
    };
    let window = Window::default();

    let one = sample(12.0, |_| 1.0)?;
    let x_axis = LatticeAxis::symmetric_gauss(4.0, 0.5, 8);
    let w_axis = LatticeAxis::symmetric_uniform(4.0, 0.125);
    let (lat, _) = stft(&one, window, &x_axis, &w_axis)?;
    let mut err = 0.0f64;
    for (i, &x) in lat.x_nodes.iter().enumerate() {
        for (j, &w) in lat.w_nodes.iter().enumerate() {
            let exact = Complex64::from_polar((-PI * w * w).exp(), -2.0 * PI * w * x);
            err = err.max((lat.value(i, j) - exact).norm());
        }
    }
    out.push(check("stft", "closed_form_sup_error".into(), err, 1e-8));

    for rho in [1.0, 2.0] {
        for sigma in [0.0, 1.0] {
            let (lo, hi) = (rho * sigma, rho * (sigma + 1.0));
            let f = sample(hi + 7.0, |_| 1.0)?;
            let axis = LatticeAxis::Gauss { lo, hi, panels: 4, nodes_per_panel: 8 };
            let (lat, _) = stft(&f, window, &axis, &axis)?;
            for p in [1.0, 2.0, 4.0] {
                let n = mixed_norm(&lat, &lebesgue(p))?;
                // measured: how far the norm sits above the bound, relative to it
                let bound = rho.powf(2.0 / p);
                out.push(Check {
                    suite: "stft".into(),
                    name: format!("interval_bound rho={rho} sigma={sigma} p={p}"),
                    passed: n <= bound,
                    measured: n / bound,
                    tolerance: 1.0,
                });
            }
        }
    }

    let gauss = sample(14.0, |x| (-PI * x * x).exp())?;
    let (lat, _) = stft(
        &gauss,
        window,
        &LatticeAxis::symmetric_gauss(6.0, 0.5, 8),
        &LatticeAxis::symmetric_uniform(6.0, 0.125),
    )?;
    let n = mixed_norm(&lat, &lebesgue(2.0))?;
    out.push(check("stft", "moyal".into(), (n - 0.5f64.sqrt()).abs(), 1e-4));
    Ok(out)
}

fn density_growth(p: &JCParams) -> Result<Vec<Check>> {
    let ratios = (0..=450)
        .map(|k| {
            let l = 5.0 + 0.1 * k as f64;
            Ok(plancherel_density(p, l)?.abs_density / l.powf(2.0 * p.alpha() + 1.0))
        })
        .collect::<Result<Vec<f64>>>()?;
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(vec![check("density_growth", "band_ratio".into(), hi / lo, 10.0)])
}
