pub mod cli;
pub mod error;
pub mod heat;
pub mod jacobi;
pub mod modulation;
pub mod specfun;
pub mod transform;
pub mod uncertainty;

pub use error::{Error, Result};
