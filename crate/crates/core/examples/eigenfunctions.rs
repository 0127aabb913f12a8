//! Tabulates the eigenfunction `G_λ`, checks `T G_λ = iλ G_λ` on a grid and
//! compares the two closed forms of `G_λ`.

use cherednik::jacobi::{
    eigen_residual, eigenfunction_g, eigenfunction_g_first_form, weight_a, EigenDerivative,
    JCParams,
};
use cherednik::specfun::make_grid;
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let p = JCParams::new(0.75, 0.25)?;
    let lambda = Complex64::new(2.0, 0.5);
    println!("{:>6} {:>24} {:>24} {:>12}", "x", "Re G", "Im G", "A(x)");
    for k in -4..=4 {
        let x = 0.75 * k as f64;
        let g = eigenfunction_g(&p, lambda, x)?;
        println!("{x:>6.2} {:>24.16e} {:>24.16e} {:>12.6}", g.re, g.im, weight_a(&p, x));
    }

    let grid = make_grid(3.0, 24, 12)?;
    for mode in [EigenDerivative::Analytic, EigenDerivative::FiniteDifference] {
        let r = eigen_residual(&p, lambda, &grid, 3.0, mode)?;
        println!("residual of T G - i lambda G ({mode:?}): {r:.3e}");
    }

    let x = 1.7;
    let a = eigenfunction_g(&p, lambda, x)?;
    let b = eigenfunction_g_first_form(&p, lambda, x)?;
    println!("two forms at x = {x}: relative difference {:.3e}", (a - b).norm() / a.norm());
    Ok(())
}
