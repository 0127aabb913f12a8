//! Gauss hypergeometric values along the negative real axis, including the
//! large-parameter region used by the Jacobi functions.

use cherednik::specfun::gauss_2f1;
use num_complex::Complex64;

fn main() -> cherednik::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // 2F1(1, 1; 2; z) = ln(1 − z)/(−z)
    for z in [-0.5, -3.0, -50.0] {
        let v = gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z)?;
        println!("2F1(1,1;2;{z:>6}) = {:.15}   closed form {:.15}", v.re, (1.0 - z).ln() / -z);
    }
    // the Jacobi function φ_λ(x) = 2F1((ρ+iλ)/2, (ρ−iλ)/2; α+1; −sinh²x)
    let (alpha, rho) = (0.75, 2.0);
    for lambda in [1.0, 10.0, 30.0] {
        let a = c(rho / 2.0, lambda / 2.0);
        let b = c(rho / 2.0, -lambda / 2.0);
        let z = -(3.0f64.sinh().powi(2));
        let v = gauss_2f1(a, b, c(alpha + 1.0, 0.0), z)?;
        println!("phi_{lambda:<4}(3) = {:+.15e} {:+.3e}i", v.re, v.im);
    }
    Ok(())
}
