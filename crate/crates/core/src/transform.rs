//! The Opdam–Cherednik transform, its inverse and the Plancherel density.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{eigenfunction_pair, ln_weight_a, Domain, JCParams, SampledFunction};
use crate::specfun::gamma::{log_gamma, nearest_pole};
use crate::specfun::QuadGrid;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Boundary mass above which a transform reports a truncation warning.
pub const TRUNCATION_TOLERANCE: f64 = 1e-12;

/// `log C(λ)`, where
/// `C(λ) = 2^{ρ−iλ} Γ(α+1) Γ(iλ) / (Γ((ρ+iλ)/2) Γ((α−β+1+iλ)/2))`.
///
/// Fails at the poles `λ ∈ i·{0, 1, 2, …}` and at the zeros of `C`.
pub fn ln_c_function(p: &JCParams, lambda: Complex64) -> Result<Complex64> {
    let il = I * lambda;
    if nearest_pole(il).is_some() || lambda.norm() <= 1e-10 {
        return Err(Error::Pole(format!("c-function has a pole at lambda = {lambda}")));
    }
    let (alpha, beta, rho) = (p.alpha(), p.beta(), p.rho());
    let num = (Complex64::new(rho, 0.0) - il) * LN_2
        + log_gamma(Complex64::new(alpha + 1.0, 0.0))?
        + log_gamma(il)?;
    let den = log_gamma((il + rho) / 2.0)? + log_gamma((il + (alpha - beta + 1.0)) / 2.0)?;
    Ok(num - den)
}

/// `C(λ)`; zero where a denominator Gamma factor has a pole.
pub fn c_function(p: &JCParams, lambda: Complex64) -> Result<Complex64> {
    match ln_c_function(p, lambda) {
        Ok(v) => Ok(v.exp()),
        Err(Error::Pole(msg)) => {
            let il = I * lambda;
            let zero = nearest_pole((il + p.rho()) / 2.0).is_some()
                || nearest_pole((il + (p.alpha() - p.beta() + 1.0)) / 2.0).is_some();
            if zero && nearest_pole(il).is_none() {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Err(Error::Pole(msg))
            }
        }
        Err(e) => Err(e),
    }
}

/// Constant factor `2^{2ρ}` multiplying `(1 − ρ/(iλ)) / (8π|C(λ)|²)`.
///
/// With `A` and `C` as defined here, the inversion and Plancherel identities
/// only hold once the measure carries this factor.
pub fn density_normalization(p: &JCParams) -> f64 {
    (2.0 * p.rho() * LN_2).exp()
}

/// One value of the Plancherel density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlancherelDensityValue {
    pub lambda: f64,
    pub density: Complex64,
    pub abs_density: f64,
}

/// `dσ/dλ = 2^{2ρ} (1 − ρ/(iλ)) / (8π |C(λ)|²)` at real `λ ≠ 0`.
pub fn plancherel_density(p: &JCParams, lambda: f64) -> Result<PlancherelDensityValue> {
    if lambda == 0.0 {
        return Err(Error::Origin);
    }
    let ln_c = ln_c_function(p, Complex64::new(lambda, 0.0))?;
    let inv_abs_c2 = (-2.0 * ln_c.re).exp();
    let factor = Complex64::new(1.0, p.rho() / lambda);
    let density = factor * (density_normalization(p) * inv_abs_c2 / (8.0 * PI));
    Ok(PlancherelDensityValue {
        lambda,
        density,
        abs_density: density.norm(),
    })
}

/// Density values at every node of a spectral grid.
pub fn density_table(p: &JCParams, grid: &QuadGrid) -> Result<Vec<PlancherelDensityValue>> {
    grid.nodes()
        .par_iter()
        .map(|&l| plancherel_density(p, l))
        .collect()
}

/// Transform values at a list of points, with truncation warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Transformed<P> {
    pub points: Vec<P>,
    pub values: Vec<Complex64>,
    pub warnings: Vec<String>,
}

fn boundary_warning(what: &str, mass: f64) -> Option<String> {
    (mass >= TRUNCATION_TOLERANCE).then(|| {
        format!("{what}: boundary mass {mass:.3e} exceeds {TRUNCATION_TOLERANCE:.0e}; increase the truncation")
    })
}

/// `Hf(λ) = ∫ f(x) G_λ(−x) A(x) dx` by quadrature on the grid of `f`.
pub fn forward_transform(
    p: &JCParams,
    f: &SampledFunction,
    lambdas: &[Complex64],
) -> Result<Transformed<Complex64>> {
    let grid = f.grid();
    let nodes = grid.nodes();
    let weighted: Vec<Complex64> = nodes
        .iter()
        .zip(grid.weights())
        .zip(f.values())
        .map(|((&x, &w), &v)| v * w * ln_weight_a(p, x).exp())
        .collect();
    let n = nodes.len();
    let mass = [0, n - 1]
        .iter()
        .map(|&i| f.values()[i].norm() * ln_weight_a(p, nodes[i]).exp())
        .fold(0.0, f64::max);
    let values = lambdas
        .par_iter()
        .map(|&lambda| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &x) in nodes.iter().enumerate() {
                if weighted[i] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (_, g_minus) = eigenfunction_pair(p, lambda, x)?;
                acc += weighted[i] * g_minus;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Transformed {
        points: lambdas.to_vec(),
        values,
        warnings: boundary_warning("forward transform", mass).into_iter().collect(),
    })
}

/// [`forward_transform`] at the nodes of a real spectral grid.
pub fn forward_on_grid(
    p: &JCParams,
    f: &SampledFunction,
    spectral: &QuadGrid,
) -> Result<(SampledFunction, Vec<String>)> {
    let lambdas: Vec<Complex64> = spectral
        .nodes()
        .iter()
        .map(|&l| Complex64::new(l, 0.0))
        .collect();
    let t = forward_transform(p, f, &lambdas)?;
    Ok((
        SampledFunction::new(spectral.clone(), t.values, Domain::Spectral)?,
        t.warnings,
    ))
}

/// `H⁻¹g(x) = ∫ g(λ) G_λ(x) dσ(λ)` over the real spectral grid of `g`.
pub fn inverse_transform(
    p: &JCParams,
    g: &SampledFunction,
    xs: &[f64],
) -> Result<Transformed<f64>> {
    let grid = g.grid();
    let density = density_table(p, grid)?;
    let weighted: Vec<Complex64> = grid
        .weights()
        .iter()
        .zip(g.values())
        .zip(&density)
        .map(|((&w, &v), d)| v * w * d.density)
        .collect();
    let n = grid.len();
    let mass = [0, n - 1]
        .iter()
        .map(|&i| g.values()[i].norm() * density[i].abs_density)
        .fold(0.0, f64::max);
    let values = xs
        .par_iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &l) in grid.nodes().iter().enumerate() {
                if weighted[i] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (g_plus, _) = eigenfunction_pair(p, Complex64::new(l, 0.0), x)?;
                acc += weighted[i] * g_plus;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Transformed {
        points: xs.to_vec(),
        values,
        warnings: boundary_warning("inverse transform", mass).into_iter().collect(),
    })
}

/// Both sides of the Plancherel identity
/// `∫|f|² A dx = ∫ Hf(λ) conj(H f̌(−λ)) dσ(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlancherelReport {
    pub lhs: f64,
    pub rhs: Complex64,
    /// `|lhs − rhs| / lhs`, or the absolute error when `lhs < 1e-300`.
    pub rel_err: f64,
}

pub fn plancherel_check(
    p: &JCParams,
    f: &SampledFunction,
    spectral: &QuadGrid,
) -> Result<PlancherelReport> {
    let grid = f.grid();
    if !grid.is_symmetric() || !spectral.is_symmetric() {
        return Err(Error::GridAsymmetry);
    }
    let lhs: f64 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .zip(f.values())
        .map(|((&x, &w), v)| w * v.norm_sqr() * ln_weight_a(p, x).exp())
        .sum();
    let (hf, _) = forward_on_grid(p, f, spectral)?;
    let reflected = f.reflected();
    let hf_check = if reflected.values() == f.values() {
        hf.clone()
    } else {
        forward_on_grid(p, &reflected, spectral)?.0
    };
    let density = density_table(p, spectral)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for i in 0..spectral.len() {
        let j = spectral.mirror_index(i);
        rhs += spectral.weights()[i]
            * hf.values()[i]
            * hf_check.values()[j].conj()
            * density[i].density;
    }
    let err = (rhs - lhs).norm();
    let rel_err = if lhs.abs() < 1e-300 { err } else { err / lhs.abs() };
    Ok(PlancherelReport { lhs, rhs, rel_err })
}

/// The test family `f(x) = e^{−x²} cosh(x)^{−ρ}`.
pub fn gaussian_envelope(p: &JCParams, x: f64) -> f64 {
    (-x * x - p.rho() * crate::jacobi::ln_cosh(x)).exp()
}
