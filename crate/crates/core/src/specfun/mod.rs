//! Special functions and quadrature.

pub mod gamma;
pub mod hypergeometric;
pub mod quadrature;

pub use gamma::{gamma, ln_gamma_real, log_gamma, reciprocal_gamma};
pub use hypergeometric::gauss_2f1;
pub use quadrature::{integrate, integrate_real, make_grid, QuadGrid};
