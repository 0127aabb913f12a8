//! Forward transform of `e^{−x²} cosh(x)^{−ρ}`, the Plancherel identity and
//! the inversion round trip.

use cherednik::jacobi::{Domain, JCParams, SampledFunction};
use cherednik::specfun::make_grid;
use cherednik::transform::{
    forward_on_grid, gaussian_envelope, inverse_transform, plancherel_check, plancherel_density,
};
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let spatial = make_grid(8.0, 32, 16)?;
    let spectral = make_grid(20.0, 40, 16)?;
    for (alpha, beta) in [(0.75, 0.25), (2.0, 0.5)] {
        let p = JCParams::new(alpha, beta)?;
        let f = SampledFunction::from_fn(spatial.clone(), Domain::Spatial, |x| {
            Complex64::new(gaussian_envelope(&p, x), 0.0)
        });
        let report = plancherel_check(&p, &f, &spectral)?;
        println!(
            "(alpha, beta) = ({alpha}, {beta}): |f|^2 = {:.12}, spectral side = {:.12} {:+.1e}i, rel err {:.2e}",
            report.lhs, report.rhs.re, report.rhs.im, report.rel_err
        );

        let (hf, _) = forward_on_grid(&p, &f, &spectral)?;
        let xs = [-2.0, -0.5, 0.0, 1.0, 2.5];
        let back = inverse_transform(&p, &hf, &xs)?;
        for (x, v) in xs.iter().zip(&back.values) {
            println!("  x = {x:>5}: f = {:.10}, inverse(Hf) = {:.10}", gaussian_envelope(&p, *x), v.re);
        }
        for l in [0.5, 5.0, 25.0] {
            let d = plancherel_density(&p, l)?;
            println!("  |density|({l}) = {:.6e}", d.abs_density);
        }
    }
    Ok(())
}
