//! Scalar special functions used by the channel and metric layers.

mod bessel;
mod gamma;
pub mod meijer;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_k, laguerre_half};
pub use gamma::{
    gamma_upper, gaussian_q, ln_gamma, ln_gamma_complex, reg_inc_gamma_lower, reg_inc_gamma_upper,
};
pub use meijer::{meijer_g, meijer_g_contour, meijer_g_residue_series, GValue, MeijerGSpec};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error in {func}: {message}")]
    Domain { func: &'static str, message: String },
    #[error("unsupported Meijer-G parameters: {0}")]
    UnsupportedParameters(String),
    #[error("accuracy target not met in {func}: achieved {achieved:.3e}")]
    Accuracy { func: &'static str, achieved: f64 },
}
