//! Truncated weighted mixed norms of `e^{ax²} E_t` for a rate `a` below and
//! above `1/(4t)`.

use cherednik::heat::log_heat_kernel;
use cherednik::jacobi::{Domain, JCParams, SampledFunction};
use cherednik::modulation::{
    truncated_norm, verdict, Exponent, LatticeSpec, Measure, MixedNormSpec,
};
use cherednik::specfun::make_grid;
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let p = JCParams::new(0.75, 0.25)?;
    let spec = MixedNormSpec {
        p: Exponent::Finite(2.0),
        q: Exponent::Finite(2.0),
        measure: Measure::AWeighted,
        params: p,
    };
    let lattice = LatticeSpec::default();
    let grid = make_grid(23.0, 184, 16)?;
    for (a, t) in [(1.0, 0.15), (1.0, 0.3)] {
        let f = SampledFunction::try_from_fn(grid.clone(), Domain::Spatial, |x| {
            Ok(Complex64::new((a * x * x + log_heat_kernel(&p, t, x)?).min(690.0).exp(), 0.0))
        })?;
        let seq = [4.0, 8.0, 16.0]
            .iter()
            .map(|&tr| truncated_norm(&f, &spec, tr, &lattice))
            .collect::<cherednik::Result<Vec<_>>>()?;
        println!("a = {a}, t = {t}, a - 1/(4t) = {:+.4}", a - 1.0 / (4.0 * t));
        for r in &seq {
            println!("  T = {:>4}: norm {:.6e}, tail {:.2e}", r.truncation, r.norm, r.tail_fraction);
        }
        println!("  verdict: {:?}", verdict(&seq));
    }
    Ok(())
}
