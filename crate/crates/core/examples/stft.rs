//! STFT of the constant function against its closed form, and the Moyal
//! identity for a Gaussian.

use std::f64::consts::PI;

use cherednik::jacobi::{Domain, JCParams, SampledFunction};
use cherednik::modulation::{mixed_norm, stft, Exponent, LatticeAxis, Measure, MixedNormSpec, Window};
use cherednik::specfun::make_grid;
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let grid = make_grid(12.0, 96, 16)?;
    let one = SampledFunction::from_fn(grid.clone(), Domain::Spatial, |_| Complex64::new(1.0, 0.0));
    let axis = LatticeAxis::symmetric_uniform(2.0, 0.5);
    let (lat, warnings) = stft(&one, Window::default(), &axis, &axis)?;
    assert!(warnings.is_empty());
    for (i, &x) in lat.x_nodes.iter().enumerate().step_by(2) {
        for (j, &w) in lat.w_nodes.iter().enumerate().step_by(2) {
            let exact = Complex64::from_polar((-PI * w * w).exp(), -2.0 * PI * w * x);
            let v = lat.value(i, j);
            println!("V(1)({x:>4}, {w:>4}) = {:+.12} {:+.12}i   error {:.1e}", v.re, v.im, (v - exact).norm());
        }
    }

    let gauss = SampledFunction::from_fn(grid, Domain::Spatial, |x| Complex64::new((-PI * x * x).exp(), 0.0));
    let (lat, _) = stft(
        &gauss,
        Window::default(),
        &LatticeAxis::symmetric_gauss(6.0, 0.5, 8),
        &LatticeAxis::symmetric_uniform(6.0, 0.125),
    )?;
    let spec = MixedNormSpec {
        p: Exponent::Finite(2.0),
        q: Exponent::Finite(2.0),
        measure: Measure::Lebesgue,
        params: JCParams::new(0.75, 0.25)?,
    };
    println!("|V_g g|_2 = {:.12}, |g|_2^2 = {:.12}", mixed_norm(&lat, &spec)?, 0.5f64.sqrt());
    Ok(())
}
