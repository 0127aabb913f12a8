//! `g(λ) = e^{λ²/(4a)} Hf(λ)` for the Hardy boundary witness `E_{1/(4a)}`,
//! which is constant on the real line, and for a Gaussian envelope.

use cherednik::heat::{heat_kernel, spatial_cutoff};
use cherednik::jacobi::{Domain, JCParams, SampledFunction};
use cherednik::specfun::make_grid;
use cherednik::transform::gaussian_envelope;
use cherednik::uncertainty::{entire_extension_probe, sup_ratio_by_row};
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let p = JCParams::new(0.75, 0.25)?;
    let a = 1.0;
    let t = 1.0 / (4.0 * a);
    let x_max = spatial_cutoff(&p, t, 1e-14)?;
    let e = heat_kernel(&p, t, &make_grid(x_max, (4.0 * x_max) as usize, 16)?)?;
    let re: Vec<f64> = (0..=10).map(|k| k as f64 * 0.5).collect();
    for row in entire_extension_probe(&p, &e, a, &re, &[0.0])? {
        println!("lambda = {:>4}: g = {:.10} {:+.1e}i", row.lambda.re, row.g.re, row.g.im);
    }

    let f = SampledFunction::from_fn(make_grid(8.0, 32, 16)?, Domain::Spatial, |x| {
        Complex64::new(gaussian_envelope(&p, x), 0.0)
    });
    let rows = entire_extension_probe(&p, &f, 0.9, &re, &[0.0, 1.0, 2.0])?;
    for (im, sup) in sup_ratio_by_row(&rows) {
        println!("Im lambda = {im}: sup over Re of |g| e^(-(Re lambda)^2/4a) = {sup:.6e}");
    }
    Ok(())
}
