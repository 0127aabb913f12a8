//! Heat kernel values, its spectral identity `H E_t = e^{−tλ²}` and the
//! Gaussian envelope of `E_t`.

use cherednik::heat::{heat_kernel, heat_kernel_at, sandwich_diagnose, spatial_cutoff};
use cherednik::jacobi::JCParams;
use cherednik::specfun::make_grid;
use cherednik::transform::forward_transform;
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let p = JCParams::new(0.75, 0.25)?;
    for t in [0.05, 0.15, 0.5] {
        let xs = [0.0, 0.5, 1.0, 2.0, 4.0];
        let values = heat_kernel_at(&p, t, &xs)?;
        let shown: Vec<String> = values.iter().map(|v| format!("{v:.6e}")).collect();
        println!("t = {t}: E_t at {xs:?} = [{}]", shown.join(", "));

        let x_max = spatial_cutoff(&p, t, 1e-14)?;
        let grid = make_grid(x_max, (4.0 * x_max) as usize, 16)?;
        let e = heat_kernel(&p, t, &grid)?;
        let lambdas: Vec<Complex64> = (0..=5).map(|k| Complex64::new(k as f64, 0.0)).collect();
        let h = forward_transform(&p, &e, &lambdas)?;
        let worst = lambdas
            .iter()
            .zip(&h.values)
            .map(|(l, v)| (v - (-t * l.re * l.re).exp()).norm())
            .fold(0.0, f64::max);
        println!("  max |H E_t - exp(-t lambda^2)| on 0..5: {worst:.2e}");

        let s = sandwich_diagnose(&p, t, &make_grid(4.0, 16, 16)?)?;
        println!(
            "  log-ratio range on |x| <= 4: [{:.6}, {:.6}]",
            s.log_ratio_min, s.log_ratio_max
        );
    }
    Ok(())
}
