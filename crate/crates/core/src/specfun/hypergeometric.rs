//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for complex parameters
//! and real arguments.
//!
//! For small arguments (`|ab|·|z|` of order one and `|z| <= 1/2`) the
//! Maclaurin series is summed directly. Otherwise the Pfaff transformation
//! maps `z <= 0` to `w = z/(z−1) ∈ [0, 1)`, and the transformed function is
//! obtained by Taylor-stepping its ODE from a small seed argument, first
//! forward in `w` up to `1/2` and then towards `w = 1` in geometrically
//! shrinking steps. Step lengths shrink with the parameter size so that
//! oscillatory solutions do not cancel catastrophically. The complement
//! `u = 1 − w = 1/(1−z)` is carried exactly, so arguments with `u` of order
//! `1e-10` keep full relative precision.
//!
//! Close to `w = 1` the connection formula in powers of `u` replaces the
//! stepping whenever `c − a − b` is safely away from an integer; the
//! stepping remains the path for the degenerate and near-degenerate cases.
//!
//! The continuation needs no Gamma-function connection coefficients, so the
//! degenerate cases `c − a − b ∈ ℤ` need no special treatment.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::gamma::{log_gamma, nearest_pole};

/// Maximum number of series terms before reporting non-convergence.
pub const MAX_TERMS: usize = 10_000;

/// Relative size of a term below which a partial sum counts as converged.
pub const SERIES_TOLERANCE: f64 = 1e-16;

const DIRECT_RADIUS: f64 = 0.5;

// Maclaurin terms peak near exp(2√(|ab|w)); keeping |ab|w below this bounds
// the cancellation to a few digits.
const SEED_SCALE: f64 = 4.0;

const PHASE_STEP: f64 = 4.0;

fn check_c(c: Complex64) -> Result<()> {
    if let Some(n) = nearest_pole(c) {
        return Err(Error::InvalidArgument(format!(
            "c = {n} is a non-positive integer"
        )));
    }
    Ok(())
}

/// `₂F₁(a, b; c; z)` for real `z <= 0`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_c(c)?;
    if !z.is_finite() || z > 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gauss_2f1 supports real z <= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if -z <= seed_point(a, b) {
        return maclaurin(a, b, c, z);
    }
    let one_minus_z = 1.0 - z;
    let prefactor = (-a * one_minus_z.ln()).exp();
    let transformed = complement_form(a, c - b, c, 1.0 / one_minus_z)?;
    Ok(prefactor * transformed)
}

/// `₂F₁(a, b; c; 1 − u)` for `0 < u <= 1`, given the complement `u` exactly.
pub fn complement_form(a: Complex64, b: Complex64, c: Complex64, u: f64) -> Result<Complex64> {
    complement_form_with_derivative(a, b, c, u).map(|(v, _)| v)
}

/// `₂F₁(a, b; c; w)` and its `w`-derivative at `w = 1 − u`, for `0 < u <= 1`.
pub fn complement_form_with_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u: f64,
) -> Result<(Complex64, Complex64)> {
    check_c(c)?;
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "complement u must lie in (0, 1], got {u}"
        )));
    }
    let w = 1.0 - u;
    if w <= seed_point(a, b) {
        return maclaurin_with_derivative(a, b, c, w);
    }
    if let Some(v) = connection(a, b, c, u) {
        return v;
    }
    continue_to(a, b, c, u)
}

// The connection formula is used when u is below this and c − a − b stays
// this far from an integer.
const CONNECTION_RADIUS: f64 = 0.25;
const CONNECTION_GAP: f64 = 0.05;

/// `exp(Σ log Γ(num) − Σ log Γ(den))`, zero when a denominator argument is a pole.
fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    if den.iter().any(|&z| nearest_pole(z).is_some()) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for &z in num {
        total += log_gamma(z)?;
    }
    for &z in den {
        total -= log_gamma(z)?;
    }
    Ok(total.exp())
}

/// The `w → 1` connection formula
/// `F(a,b;c;w) = Γ(c)Γ(s)/(Γ(c−a)Γ(c−b)) F(a,b;1−s;u)
///             + u^s Γ(c)Γ(−s)/(Γ(a)Γ(b)) F(c−a,c−b;1+s;u)`, `s = c−a−b`,
/// or `None` where it would lose accuracy.
fn connection(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u: f64,
) -> Option<Result<(Complex64, Complex64)>> {
    let s = c - a - b;
    let gap = (s - Complex64::new(s.re.round(), 0.0)).norm();
    if u > CONNECTION_RADIUS || gap < CONNECTION_GAP {
        return None;
    }
    let one = Complex64::new(1.0, 0.0);
    let (ca, cb) = (c - a, c - b);
    let spread1 = u * a.norm() * b.norm() / (one - s).norm().max(1.0);
    let spread2 = u * ca.norm() * cb.norm() / (one + s).norm().max(1.0);
    if spread1.max(spread2) > SEED_SCALE / 2.0 {
        return None;
    }
    Some((|| {
        let k1 = gamma_ratio(&[c, s], &[ca, cb])?;
        let k2 = gamma_ratio(&[c, -s], &[a, b])?;
        let (f1, d1) = maclaurin_with_derivative(a, b, one - s, u)?;
        let (f2, d2) = maclaurin_with_derivative(ca, cb, one + s, u)?;
        let us = (s * u.ln()).exp();
        let value = k1 * f1 + k2 * us * f2;
        let du = k1 * d1 + k2 * us * (s / u * f2 + d2);
        Ok((value, -du))
    })())
}

/// Direct Maclaurin summation, valid for `|z| < 1`.
pub fn maclaurin(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_c(c)?;
    if !(z.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Maclaurin series requires |z| < 1, got {z}"
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= SERIES_TOLERANCE * sum.norm() || term.norm() == 0.0 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        context: format!("2F1({a}, {b}; {c}; {z}) Maclaurin series"),
        iterations: MAX_TERMS,
    })
}

/// Argument at which the Maclaurin series seeds the continuation.
fn seed_point(a: Complex64, b: Complex64) -> f64 {
    (SEED_SCALE / (a * b).norm().max(1e-300)).min(DIRECT_RADIUS)
}

/// Relative step length, shortened so each step advances the local
/// oscillation phase by a bounded amount.
fn step_fraction(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (PHASE_STEP / (1.0 + a.norm() + b.norm() + c.norm())).min(0.5)
}

/// Maclaurin series for `F` and `dF/dz` in one pass, valid for `|z| < 1`.
pub fn maclaurin_with_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
) -> Result<(Complex64, Complex64)> {
    if z == 0.0 {
        check_c(c)?;
        return Ok((Complex64::new(1.0, 0.0), a * b / c));
    }
    check_c(c)?;
    if !(z.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "Maclaurin series requires |z| < 1, got {z}"
        )));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        dsum += term * (nf + 1.0);
        let tn = term.norm();
        if tn == 0.0
            || (tn <= SERIES_TOLERANCE * sum.norm()
                && tn * (nf + 1.0) <= SERIES_TOLERANCE * dsum.norm())
        {
            quiet += 1;
            if quiet >= 2 {
                return Ok((sum, dsum / z));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        context: format!("2F1({a}, {b}; {c}; {z}) Maclaurin series"),
        iterations: MAX_TERMS,
    })
}

/// Continues `(F, dF/dw)` to `w = 1 − u_target`.
fn continue_to(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u_target: f64,
) -> Result<(Complex64, Complex64)> {
    let mut w = seed_point(a, b);
    let (mut y, mut dy) = maclaurin_with_derivative(a, b, c, w)?;
    let fraction = step_fraction(a, b, c);
    let w_stop = DIRECT_RADIUS.min(1.0 - u_target);
    // forward in w up to the midpoint
    while w < w_stop {
        let w_next = ((1.0 + fraction) * w).min(w_stop);
        (y, dy) = taylor_step(a, b, c, w, 1.0 - w, w_next - w, y, dy)?;
        w = w_next;
    }
    if u_target >= 1.0 - DIRECT_RADIUS {
        return Ok((y, dy));
    }
    // then towards w = 1 with the complement carried exactly
    let mut u = 1.0 - DIRECT_RADIUS;
    while u > u_target {
        let u_next = ((1.0 - fraction) * u).max(u_target);
        (y, dy) = taylor_step(a, b, c, 1.0 - u, u, u - u_next, y, dy)?;
        u = u_next;
    }
    Ok((y, dy))
}

/// One Taylor step of the hypergeometric ODE
/// `w(1−w)F'' + [c − (a+b+1)w]F' − abF = 0` from `w0` to `w0 + s`, where
/// `u0 = 1 − w0` is passed separately to keep its precision.
///
/// With `d_n = F^{(n)}(w0) s^n / n!` the ODE gives
/// `d_{n+2} = [(n+a)(n+b) s² d_n − (n+1)(n(1−2w0) + c − (a+b+1)w0) s d_{n+1}]
///            / ((n+1)(n+2) w0 u0)`.
#[allow(clippy::too_many_arguments)]
fn taylor_step(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w0: f64,
    u0: f64,
    s: f64,
    y0: Complex64,
    dy0: Complex64,
) -> Result<(Complex64, Complex64)> {
    let q0 = c - (a + b + 1.0) * w0;
    let slope = u0 - w0;
    let denom_base = w0 * u0;

    let mut d_prev = y0;
    let mut d_curr = dy0 * s;
    let mut value = d_prev + d_curr;
    // Σ n d_n, divided by s at the end
    let mut deriv = d_curr;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let d_next = ((a + nf) * (b + nf) * (s * s) * d_prev
            - (nf + 1.0) * (q0 + nf * slope) * s * d_curr)
            / ((nf + 1.0) * (nf + 2.0) * denom_base);
        value += d_next;
        deriv += d_next * (nf + 2.0);
        let small = |t: Complex64, total: Complex64| {
            t.norm() <= SERIES_TOLERANCE * total.norm() || t.norm() == 0.0
        };
        if small(d_next, value) && small(d_next * (nf + 2.0), deriv) {
            quiet += 1;
            if quiet >= 2 {
                return Ok((value, deriv / s));
            }
        } else {
            quiet = 0;
        }
        d_prev = d_curr;
        d_curr = d_next;
    }
    Err(Error::NonConvergence {
        context: format!("2F1({a}, {b}; {c}) Taylor continuation at w = {w0}"),
        iterations: MAX_TERMS,
    })
}
