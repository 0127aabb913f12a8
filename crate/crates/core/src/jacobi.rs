//! Parameters, weights, Jacobi functions, the eigenfunctions `G_λ` and the
//! Jacobi–Cherednik operator `T`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::hypergeometric::{complement_form_with_derivative, gauss_2f1};
use crate::specfun::QuadGrid;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The pair `(α, β)` with `ρ = α + β + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JCParams {
    alpha: f64,
    beta: f64,
    rho: f64,
}

impl JCParams {
    /// Requires `α ≥ β ≥ −1/2` and `α > −1/2`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidArgument("alpha and beta must be finite".into()));
        }
        if !(alpha >= beta && beta >= -0.5 && alpha > -0.5) {
            return Err(Error::InvalidArgument(format!(
                "need alpha >= beta >= -1/2 and alpha > -1/2, got ({alpha}, {beta})"
            )));
        }
        let rho = alpha + beta + 1.0;
        debug_assert!(rho > 0.0);
        Ok(Self { alpha, beta, rho })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `(α+1, β+1)`, the parameters of the Jacobi function inside `G` and `φ'`.
    pub fn shifted(&self) -> Self {
        Self {
            alpha: self.alpha + 1.0,
            beta: self.beta + 1.0,
            rho: self.rho + 2.0,
        }
    }
}

/// Whether samples live in `x`-space or `λ`-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Spatial,
    Spectral,
}

/// Complex samples of a function on the nodes of a [`QuadGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: QuadGrid,
    values: Vec<Complex64>,
    domain: Domain,
}

impl SampledFunction {
    pub fn new(grid: QuadGrid, values: Vec<Complex64>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            domain,
        })
    }

    /// Samples `f` at every node, in parallel.
    pub fn from_fn<F>(grid: QuadGrid, domain: Domain, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        let values = grid.nodes().par_iter().map(|&x| f(x)).collect();
        Self {
            grid,
            values,
            domain,
        }
    }

    /// Like [`from_fn`](Self::from_fn) for fallible samplers.
    pub fn try_from_fn<F>(grid: QuadGrid, domain: Domain, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<Complex64> + Sync,
    {
        let values = grid
            .nodes()
            .par_iter()
            .map(|&x| f(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            values,
            domain,
        })
    }

    pub fn grid(&self) -> &QuadGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nodes(&self) -> &[f64] {
        self.grid.nodes()
    }

    /// `x ↦ f(−x)` via index reflection.
    pub fn reflected(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            grid: self.grid.clone(),
            values,
            domain: self.domain,
        }
    }

    pub fn map<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> Self {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| f(x, v))
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            domain: self.domain,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, v| c * v)
    }

    /// `a·self + b·other`; both must share the grid.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidArgument("grids differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| a * u + b * v)
            .collect();
        Ok(Self {
            grid: self.grid.clone(),
            values,
            domain: self.domain,
        })
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }
}

/// `log cosh x` without overflow.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `log sinh |x|` without overflow; `−∞` at the origin.
pub fn ln_sinh_abs(x: f64) -> f64 {
    let a = x.abs();
    if a < 1.0 {
        a.sinh().ln()
    } else {
        a + (-(-2.0 * a).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// `log A(x)`; `−∞` at the origin.
pub fn ln_weight_a(p: &JCParams, x: f64) -> f64 {
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    (2.0 * p.alpha + 1.0) * ln_sinh_abs(x) + (2.0 * p.beta + 1.0) * ln_cosh(x)
}

/// `A(x) = sinh|x|^{2α+1} cosh|x|^{2β+1}`.
pub fn weight_a(p: &JCParams, x: f64) -> f64 {
    if x == 0.0 {
        return if 2.0 * p.alpha + 1.0 > 0.0 { 0.0 } else { 1.0 };
    }
    ln_weight_a(p, x).exp()
}

/// `log B(x)`, continuous at the origin where it is `0`.
pub fn ln_weight_b(p: &JCParams, x: f64) -> f64 {
    let a = x.abs();
    let sinhc = if a < 1e-4 {
        // log(sinh a / a) = a²/6 − a⁴/180 + …
        a * a / 6.0 - a.powi(4) / 180.0
    } else {
        ln_sinh_abs(a) - a.ln()
    };
    (2.0 * p.alpha + 1.0) * sinhc + (2.0 * p.beta + 1.0) * ln_cosh(a)
}

/// `B(x) = A(x)/|x|^{2α+1}`, with `B(0) = 1`.
pub fn weight_b(p: &JCParams, x: f64) -> f64 {
    ln_weight_b(p, x).exp()
}

fn jacobi_args(p: &JCParams, lambda: Complex64) -> (Complex64, Complex64, Complex64) {
    let a = (I * lambda + p.rho) / 2.0;
    let b = (-I * lambda + p.rho) / 2.0;
    (a, b, Complex64::new(p.alpha + 1.0, 0.0))
}

/// The Jacobi function `φ_λ(x) = ₂F₁((ρ+iλ)/2, (ρ−iλ)/2; α+1; −sinh²x)`.
pub fn phi(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    let (a, b, c) = jacobi_args(p, lambda);
    gauss_2f1(a, b, c, -x.sinh().powi(2))
}

/// `dφ_λ/dx = −(ρ²+λ²)/(4(α+1)) · sinh 2x · φ^{(α+1,β+1)}_λ(x)`.
pub fn phi_derivative(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    let k = -(lambda * lambda + p.rho * p.rho) / (4.0 * (p.alpha + 1.0));
    if k == Complex64::new(0.0, 0.0) {
        return Ok(k);
    }
    Ok(k * (2.0 * x).sinh() * phi(&p.shifted(), lambda, x)?)
}

/// `dφ_λ/dx` from the Pfaff form `φ = cosh^{−2a}x · ₂F₁(a, c−b; c; tanh²x)`,
/// without going through the shifted-parameter function.
pub fn phi_derivative_pfaff(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    let (a, b, c) = jacobi_args(p, lambda);
    let u = x.cosh().powi(-2);
    let (f, df) = complement_form_with_derivative(a, c - b, c, u)?;
    let prefactor = (-2.0 * a * ln_cosh(x)).exp();
    let t = x.tanh();
    Ok(prefactor * t * (-2.0 * a * f + 2.0 * u * df))
}

/// `G_λ(x)` and `G_λ(−x)`, sharing the two Jacobi-function evaluations.
pub fn eigenfunction_pair(
    p: &JCParams,
    lambda: Complex64,
    x: f64,
) -> Result<(Complex64, Complex64)> {
    let base = phi(p, lambda, x)?;
    let k = (I * lambda + p.rho) / (4.0 * (p.alpha + 1.0));
    if k == Complex64::new(0.0, 0.0) {
        return Ok((base, base));
    }
    let odd = k * (2.0 * x).sinh() * phi(&p.shifted(), lambda, x)?;
    Ok((base + odd, base - odd))
}

/// The eigenfunction `G_λ(x) = φ_λ(x) + (ρ+iλ)/(4(α+1)) · sinh 2x · φ^{(α+1,β+1)}_λ(x)`.
pub fn eigenfunction_g(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    eigenfunction_pair(p, lambda, x).map(|(g, _)| g)
}

/// `G_λ(x) = φ_λ(x) − φ_λ'(x)/(ρ − iλ)`, the form with a removable
/// singularity at `λ = −iρ`. Used as an independent cross-check.
pub fn eigenfunction_g_first_form(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    let denom = -I * lambda + p.rho;
    if denom.norm() < 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "first form of G is singular at lambda = {lambda}"
        )));
    }
    Ok(phi(p, lambda, x)? - phi_derivative_pfaff(p, lambda, x)? / denom)
}

/// `dG_λ/dx`, fully analytic.
pub fn eigenfunction_g_derivative(p: &JCParams, lambda: Complex64, x: f64) -> Result<Complex64> {
    let q = p.shifted();
    let k = (I * lambda + p.rho) / (4.0 * (p.alpha + 1.0));
    let s2 = (2.0 * x).sinh();
    let c2 = (2.0 * x).cosh();
    let phi1 = phi(&q, lambda, x)?;
    let dphi = -(lambda * lambda + p.rho * p.rho) / (4.0 * (p.alpha + 1.0)) * s2 * phi1;
    let dphi1 = phi_derivative(&q, lambda, x)?;
    Ok(dphi + k * (2.0 * c2 * phi1 + s2 * dphi1))
}

/// How `f'` is obtained in [`apply_t`].
#[derive(Debug, Clone, Copy)]
pub enum Derivative<'a> {
    /// Exact derivative samples on the same grid.
    Analytic(&'a [Complex64]),
    /// Five-point Lagrange stencil on the (possibly non-uniform) nodes,
    /// one-sided at the two outermost nodes on each side.
    FiniteDifference,
}

/// Derivative weights at `x0` of the Lagrange interpolant through `xs`.
fn lagrange_derivative_weights(xs: &[f64], x0: f64) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|j| {
            let mut total = 0.0;
            for k in (0..n).filter(|&k| k != j) {
                let mut term = 1.0 / (xs[j] - xs[k]);
                for m in (0..n).filter(|&m| m != j && m != k) {
                    term *= (x0 - xs[m]) / (xs[j] - xs[m]);
                }
                total += term;
            }
            total
        })
        .collect()
}

/// Five-point finite-difference derivative of samples on `nodes`.
pub fn finite_difference(nodes: &[f64], values: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = nodes.len();
    if values.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: values.len(),
        });
    }
    if n < 5 {
        return Err(Error::InvalidArgument(
            "finite differences need at least 5 nodes".into(),
        ));
    }
    Ok((0..n)
        .map(|i| {
            let start = i.saturating_sub(2).min(n - 5);
            let stencil = &nodes[start..start + 5];
            lagrange_derivative_weights(stencil, nodes[i])
                .iter()
                .zip(&values[start..start + 5])
                .map(|(w, v)| v * w)
                .sum()
        })
        .collect())
}

/// Samples of `T f` on the grid of `f`.
///
/// Near the origin (`|x| < 1e-8`) the `coth` term is replaced by its limit
/// `(2α+1)·(f'(x) + f'(−x))/2`.
pub fn apply_t(p: &JCParams, f: &SampledFunction, derivative: Derivative) -> Result<SampledFunction> {
    let grid = f.grid();
    if !grid.is_symmetric() {
        return Err(Error::GridAsymmetry);
    }
    let df = match derivative {
        Derivative::Analytic(d) => {
            if d.len() != grid.len() {
                return Err(Error::LengthMismatch {
                    expected: grid.len(),
                    actual: d.len(),
                });
            }
            d.to_vec()
        }
        Derivative::FiniteDifference => finite_difference(grid.nodes(), f.values())?,
    };
    let a1 = 2.0 * p.alpha + 1.0;
    let b1 = 2.0 * p.beta + 1.0;
    let vals = f.values();
    let out = grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let j = grid.mirror_index(i);
            let odd = (vals[i] - vals[j]) / 2.0;
            let coth_term = if x.abs() < 1e-8 {
                a1 * (df[i] + df[j]) / 2.0
            } else {
                a1 / x.tanh() * odd
            };
            df[i] + coth_term + b1 * x.tanh() * odd - p.rho * vals[j]
        })
        .collect();
    SampledFunction::new(grid.clone(), out, f.domain())
}

/// `sup |T G_λ − iλ G_λ| / (1 + |G_λ|)` over the grid nodes with `|x| ≤ x_max`.
///
/// With [`EigenDerivative::FiniteDifference`] the two outermost nodes on each
/// side are excluded.
pub fn eigen_residual(
    p: &JCParams,
    lambda: Complex64,
    grid: &QuadGrid,
    x_max: f64,
    mode: EigenDerivative,
) -> Result<f64> {
    let g = SampledFunction::try_from_fn(grid.clone(), Domain::Spatial, |x| {
        eigenfunction_g(p, lambda, x)
    })?;
    let tg = match mode {
        EigenDerivative::Analytic => {
            let dg = grid
                .nodes()
                .par_iter()
                .map(|&x| eigenfunction_g_derivative(p, lambda, x))
                .collect::<Result<Vec<_>>>()?;
            apply_t(p, &g, Derivative::Analytic(&dg))?
        }
        EigenDerivative::FiniteDifference => apply_t(p, &g, Derivative::FiniteDifference)?,
    };
    let n = grid.len();
    let trim = match mode {
        EigenDerivative::Analytic => 0,
        EigenDerivative::FiniteDifference => 2,
    };
    Ok((trim..n - trim)
        .filter(|&i| grid.nodes()[i].abs() <= x_max)
        .map(|i| {
            let gi = g.values()[i];
            (tg.values()[i] - I * lambda * gi).norm() / (1.0 + gi.norm())
        })
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenDerivative {
    Analytic,
    FiniteDifference,
}

/// `max |G_λ(x)|·e^{(ρ − |Im λ|)|x|}` over `xs`, an empirical value for the
/// constant in the exponential growth bound of `G_λ`.
pub fn growth_constant(p: &JCParams, lambdas: &[Complex64], xs: &[f64]) -> Result<f64> {
    let per_lambda = lambdas
        .par_iter()
        .map(|&lambda| {
            xs.iter().try_fold(0.0f64, |acc, &x| {
                let g = eigenfunction_g(p, lambda, x)?;
                Ok(acc.max(g.norm() * ((p.rho - lambda.im.abs()) * x.abs()).exp()))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(per_lambda.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::make_grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params() -> [JCParams; 2] {
        [JCParams::new(0.75, 0.25).unwrap(), JCParams::new(2.0, 0.5).unwrap()]
    }

    #[test]
    fn params_validation() {
        assert!(JCParams::new(0.75, 0.25).is_ok());
        assert!(JCParams::new(-0.5, -0.5).is_err());
        assert!(JCParams::new(0.0, 0.5).is_err());
        assert!(JCParams::new(0.0, -0.6).is_err());
        let p = JCParams::new(0.0, -0.5).unwrap();
        assert_eq!(p.rho(), 0.5);
    }

    #[test]
    fn weights() {
        let p = JCParams::new(0.75, 0.25).unwrap();
        assert_eq!(weight_a(&p, 0.0), 0.0);
        assert_eq!(weight_b(&p, 0.0), 1.0);
        let expected = 1f64.sinh().powf(2.5) * 1f64.cosh().powf(1.5);
        assert!((weight_a(&p, 1.0) - expected).abs() < 1e-13);
        assert!((weight_a(&p, 1.0) - 2.869_878_371_635_800_3).abs() < 1e-14);
        assert!((weight_b(&p, 1.0) - expected).abs() < 1e-13);
        for x in [1e-9, 1e-5, 0.3, 2.0, 7.5, 40.0] {
            assert_eq!(weight_a(&p, -x), weight_a(&p, x));
            assert!(weight_b(&p, x) >= 1.0);
            let lhs = weight_a(&p, x);
            let rhs = x.powf(2.5) * weight_b(&p, x);
            assert!((lhs / rhs - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn phi_special_values() {
        for p in params() {
            let lambda = c(1.3, 0.2);
            assert_eq!(phi(&p, lambda, 0.0).unwrap(), c(1.0, 0.0));
            for x in [0.2, 1.0, 3.5, 6.0] {
                let v = phi(&p, c(0.0, p.rho()), x).unwrap();
                assert!((v - c(1.0, 0.0)).norm() < 1e-13);
                let a = phi(&p, lambda, x).unwrap();
                let b = phi(&p, -lambda, x).unwrap();
                assert!((a - b).norm() <= 1e-12 * a.norm());
                assert_eq!(phi_derivative(&p, c(0.0, p.rho()), x).unwrap(), c(0.0, 0.0));
            }
            assert_eq!(phi_derivative(&p, lambda, 0.0).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn phi_derivative_matches_finite_difference() {
        let p = JCParams::new(0.75, 0.25).unwrap();
        let h = 1e-5;
        let lambda = c(1.0, 0.0);
        let fd = (phi(&p, lambda, 0.5 + h).unwrap() - phi(&p, lambda, 0.5 - h).unwrap()) / (2.0 * h);
        let d = phi_derivative(&p, lambda, 0.5).unwrap();
        assert!((d - fd).norm() / d.norm() < 1e-7);
    }

    #[test]
    fn derivative_routes_agree() {
        for p in params() {
            for lambda in [c(0.5, 0.0), c(5.0, 0.0), c(1.0, 0.5), c(12.0, -1.0)] {
                for x in [-2.5, -0.01, 0.4, 1.7, 5.0] {
                    let a = phi_derivative(&p, lambda, x).unwrap();
                    let b = phi_derivative_pfaff(&p, lambda, x).unwrap();
                    assert!((a - b).norm() <= 1e-10 * a.norm(), "λ={lambda} x={x}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn g_normalization_and_trivial_lambda() {
        for p in params() {
            for lambda in [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(1.0, 0.5)] {
                let v = eigenfunction_g(&p, lambda, 0.0).unwrap();
                assert!((v - c(1.0, 0.0)).norm() < 1e-10);
            }
            for x in [-3.0, 0.5, 2.0] {
                let v = eigenfunction_g(&p, c(0.0, p.rho()), x).unwrap();
                assert!((v - c(1.0, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn two_forms_agree() {
        for p in params() {
            for lambda in [c(0.5, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(1.0, 0.5), c(0.3, -1.0)] {
                for k in 0..=30 {
                    let x = -3.0 + 0.2 * k as f64;
                    let a = eigenfunction_g(&p, lambda, x).unwrap();
                    let b = eigenfunction_g_first_form(&p, lambda, x).unwrap();
                    assert!((a - b).norm() <= 1e-9 * a.norm(), "λ={lambda} x={x}");
                }
            }
        }
        let p = JCParams::new(0.75, 0.25).unwrap();
        assert!(eigenfunction_g_first_form(&p, c(0.0, -p.rho()), 1.0).is_err());
    }

    #[test]
    fn apply_t_on_constants_and_identity() {
        let p = JCParams::new(0.75, 0.25).unwrap();
        let grid = make_grid(3.0, 6, 8).unwrap();
        let f = SampledFunction::from_fn(grid.clone(), Domain::Spatial, |_| c(2.0, -1.0));
        let zeros = vec![c(0.0, 0.0); grid.len()];
        let tf = apply_t(&p, &f, Derivative::Analytic(&zeros)).unwrap();
        for v in tf.values() {
            assert!((v - c(-2.0, 1.0) * p.rho()).norm() < 1e-14);
        }
        // f(x) = x
        let f = SampledFunction::from_fn(grid.clone(), Domain::Spatial, |x| c(x, 0.0));
        let ones = vec![c(1.0, 0.0); grid.len()];
        let tf = apply_t(&p, &f, Derivative::Analytic(&ones)).unwrap();
        for (&x, v) in grid.nodes().iter().zip(tf.values()) {
            let expected = 1.0 + (2.5 / x.tanh() + 1.5 * x.tanh()) * x + p.rho() * x;
            assert!((v.re - expected).abs() < 1e-12 && v.im == 0.0);
        }
        // nodes at ±1: T f(1) = 1 + 2.5 coth 1 + 1.5 tanh 1 + ρ
        let unit = make_grid(3f64.sqrt(), 1, 2).unwrap();
        assert!((unit.nodes()[1] - 1.0).abs() < 1e-15);
        let f = SampledFunction::from_fn(unit, Domain::Spatial, |x| c(x, 0.0));
        let tf = apply_t(&p, &f, Derivative::Analytic(&[c(1.0, 0.0); 2])).unwrap();
        let expected = 1.0 + 2.5 / 1f64.tanh() + 1.5 * 1f64.tanh() + p.rho();
        assert!((tf.values()[1].re - expected).abs() < 1e-13);
        assert!((expected - 7.424_98).abs() < 1e-5);
    }

    #[test]
    fn apply_t_rejects_asymmetric_grids() {
        let p = JCParams::new(0.75, 0.25).unwrap();
        let grid = make_grid(3.0, 6, 8).unwrap();
        let f = SampledFunction::from_fn(grid.clone(), Domain::Spatial, |x| c(x, 0.0));
        let skewed: QuadGrid = serde_json::from_value({
            let mut v = serde_json::to_value(&grid).unwrap();
            v["nodes"][0] = serde_json::json!(-2.9);
            v
        })
        .unwrap();
        let f = SampledFunction::new(skewed, f.into_values(), Domain::Spatial).unwrap();
        assert!(matches!(
            apply_t(&p, &f, Derivative::FiniteDifference),
            Err(Error::GridAsymmetry)
        ));
    }

    #[test]
    fn eigen_equation_holds() {
        let grid = make_grid(3.0, 24, 12).unwrap();
        for p in params() {
            for lambda in [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0), c(1.0, 0.5)] {
                let r = eigen_residual(&p, lambda, &grid, 3.0, EigenDerivative::Analytic).unwrap();
                assert!(r < 1e-10, "λ={lambda}: {r:e}");
            }
        }
    }

    #[test]
    fn eigen_equation_with_finite_differences() {
        let grid = make_grid(3.0, 60, 8).unwrap();
        let p = JCParams::new(0.75, 0.25).unwrap();
        let r = eigen_residual(&p, c(1.0, 0.0), &grid, 3.0, EigenDerivative::FiniteDifference)
            .unwrap();
        assert!(r < 1e-5, "{r:e}");
    }

    #[test]
    fn finite_difference_is_exact_on_quartics() {
        let grid = make_grid(2.0, 4, 6).unwrap();
        let vals: Vec<Complex64> = grid.nodes().iter().map(|x| c(x.powi(4) - x, 0.0)).collect();
        let d = finite_difference(grid.nodes(), &vals).unwrap();
        for (x, v) in grid.nodes().iter().zip(d) {
            assert!((v.re - (4.0 * x.powi(3) - 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn growth_constant_is_stable_under_refinement() {
        let p = JCParams::new(0.75, 0.25).unwrap();
        let lambdas: Vec<Complex64> = [0.5, 1.0, 2.0, 5.0].iter().map(|&l| c(l, 0.0)).collect();
        let coarse: Vec<f64> = (0..=80).map(|k| -4.0 + 0.1 * k as f64).collect();
        let fine: Vec<f64> = (0..=800).map(|k| -4.0 + 0.01 * k as f64).collect();
        let c1 = growth_constant(&p, &lambdas, &coarse).unwrap();
        let c2 = growth_constant(&p, &lambdas, &fine).unwrap();
        assert!(c1.is_finite() && c2 >= c1);
        assert!((c2 - c1) / c2 < 0.05);
    }
}
