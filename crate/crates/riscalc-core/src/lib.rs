//! Performance analysis of an RIS-assisted mmWave link over i.i.d. cascaded
//! Rician fading.
//!
//! The crate is organized in layers:
//!
//! - [`specfun`]: scalar special functions (log-gamma, incomplete gamma,
//!   modified Bessel, Gaussian Q) and a Meijer G-function evaluator based on
//!   Mellin-Barnes contour integration with a residue-series cross-check.
//! - [`channel`]: the cascaded Rician channel statistics, the two-moment
//!   Gamma fit of the element-sum amplitude, and the resulting SNR PDF/CDF,
//!   plus exact reference evaluators and a reproducible sampler.
//! - [`metrics`]: closed-form average symbol error probability and ergodic
//!   capacity (with and without CSI at the transmitter), each paired with an
//!   independent adaptive-quadrature implementation of its defining integral,
//!   and the water-filling cutoff solver.
//! - [`montecarlo`]: semi-analytic Monte Carlo estimators over the true
//!   (unapproximated) channel model, used as end-to-end oracles.
//! - [`sweep`]: configuration parsing, metric sweeps over (K, N, SNR) grids
//!   and CSV emission for the CLI front end.

pub mod channel;
pub mod metrics;
pub mod montecarlo;
pub mod quad;
pub mod specfun;
pub mod sweep;
