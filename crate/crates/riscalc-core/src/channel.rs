//! Statistics of the RIS-assisted link: per-hop Rician parameters, cascaded
//! product moments, the two-moment Gamma fit of the element-sum amplitude,
//! the end-to-end SNR PDF/CDF, a reproducible sampler of the true model and
//! exact reference evaluators used for validation.

use crate::quad::{self, QuadError};
use crate::specfun::{self, SpecFunError};
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("reference quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
}

/// One Rician fading hop: shape K >= 0 and scale Omega = E[amplitude^2] > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianHop {
    k: f64,
    omega: f64,
}

impl RicianHop {
    pub fn new(k: f64, omega: f64) -> Result<Self, ChannelError> {
        if !k.is_finite() || k < 0.0 {
            return Err(ChannelError::InvalidParameter(format!("K must be >= 0, got {k}")));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(ChannelError::InvalidParameter(format!(
                "Omega must be > 0, got {omega}"
            )));
        }
        Ok(Self { k, omega })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// LoS amplitude v with v^2 = K Omega / (K + 1).
    pub fn los_amplitude(&self) -> f64 {
        (self.k * self.omega / (self.k + 1.0)).sqrt()
    }

    /// Per-quadrature scatter deviation sigma with 2 sigma^2 = Omega / (K+1).
    pub fn scatter_sigma(&self) -> f64 {
        (self.omega / (2.0 * (self.k + 1.0))).sqrt()
    }

    /// Mean amplitude E[r] = (1/2) sqrt(pi Omega / (K+1)) L_{1/2}(-K).
    pub fn mean_amplitude(&self) -> f64 {
        let lag = specfun::laguerre_half(-self.k).expect("finite K");
        0.5 * (std::f64::consts::PI * self.omega / (self.k + 1.0)).sqrt() * lag
    }

    /// Density of the Rician amplitude at r >= 0.
    pub fn amplitude_pdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let v = self.los_amplitude();
        let s2 = self.scatter_sigma().powi(2);
        let arg = r * v / s2;
        let i0s = specfun::bessel_i_scaled(0, arg).expect("finite argument");
        (r / s2) * (-(r * r + v * v) / (2.0 * s2) + arg).exp() * i0s
    }

    /// One amplitude draw: |v + sigma (Z1 + i Z2)|.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v = self.los_amplitude();
        let s = self.scatter_sigma();
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        (v + s * z1).hypot(s * z2)
    }
}

/// The physical scenario: two Rician hops and the RIS element count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkModel {
    pub hop1: RicianHop,
    pub hop2: RicianHop,
    n_elements: u32,
}

impl LinkModel {
    pub fn new(hop1: RicianHop, hop2: RicianHop, n_elements: u32) -> Result<Self, ChannelError> {
        if n_elements < 1 {
            return Err(ChannelError::InvalidParameter("N must be >= 1".to_string()));
        }
        Ok(Self { hop1, hop2, n_elements })
    }

    /// Convenience constructor for the common symmetric scenario K1=K2=K.
    pub fn symmetric(k: f64, omega: f64, n_elements: u32) -> Result<Self, ChannelError> {
        let hop = RicianHop::new(k, omega)?;
        Self::new(hop, hop, n_elements)
    }

    pub fn n_elements(&self) -> u32 {
        self.n_elements
    }
}

/// Moments of the single-element cascaded amplitude xi_l = alpha_l beta_l:
/// mean E[alpha] E[beta] and variance Omega1 Omega2 - mean^2.
pub fn cascaded_moments(link: &LinkModel) -> (f64, f64) {
    let mean = link.hop1.mean_amplitude() * link.hop2.mean_amplitude();
    let var = link.hop1.omega * link.hop2.omega - mean * mean;
    (mean, var)
}

/// The Gamma(a+1, b) fit of the element-sum amplitude xi = sum xi_l,
/// moment-matched to E[xi] and Var(xi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFit {
    a: f64,
    b: f64,
    mean_xi: f64,
    var_xi: f64,
}

impl GammaFit {
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn mean_xi(&self) -> f64 {
        self.mean_xi
    }
    pub fn var_xi(&self) -> f64 {
        self.var_xi
    }

    /// Fitted density of xi at y > 0.
    pub fn xi_pdf(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let ln_gamma = specfun::ln_gamma(self.a + 1.0).expect("a > -1");
        (self.a * y.ln() - y / self.b - (self.a + 1.0) * self.b.ln() - ln_gamma).exp()
    }
}

/// Fit (a, b) so the Gamma(a+1, b) density matches the first two moments of
/// the N-element sum: a = E^2[xi]/Var(xi) - 1, b = Var(xi)/E[xi].
pub fn gamma_fit(link: &LinkModel) -> GammaFit {
    let (m1, v1) = cascaded_moments(link);
    let n = link.n_elements as f64;
    let mean_xi = n * m1;
    let var_xi = n * v1;
    let a = mean_xi * mean_xi / var_xi - 1.0;
    let b = var_xi / mean_xi;
    debug_assert!((b * (a + 1.0) - mean_xi).abs() <= 1e-12 * mean_xi);
    debug_assert!((b * b * (a + 1.0) - var_xi).abs() <= 1e-12 * var_xi);
    GammaFit { a, b, mean_xi, var_xi }
}

fn check_positive(name: &'static str, v: f64) -> Result<(), ChannelError> {
    if !v.is_finite() || v <= 0.0 {
        return Err(ChannelError::InvalidParameter(format!("{name} must be > 0, got {v}")));
    }
    Ok(())
}

/// PDF of the end-to-end SNR gamma = gamma_bar * xi^2 under the Gamma fit.
pub fn snr_pdf(fit: &GammaFit, gamma_bar: f64, g: f64) -> Result<f64, ChannelError> {
    check_positive("gamma_bar", gamma_bar)?;
    check_positive("g", g)?;
    let a = fit.a;
    let b = fit.b;
    let ln_gamma = specfun::ln_gamma(a + 1.0)?;
    let ln = 0.5 * (a - 1.0) * g.ln() - g.sqrt() / (b * gamma_bar.sqrt())
        - (2.0f64).ln()
        - (a + 1.0) * b.ln()
        - ln_gamma
        - 0.5 * (a + 1.0) * gamma_bar.ln();
    Ok(ln.exp())
}

/// CDF of the end-to-end SNR: regularized lower incomplete gamma at
/// (a+1, sqrt(g/gamma_bar)/b).
pub fn snr_cdf(fit: &GammaFit, gamma_bar: f64, g: f64) -> Result<f64, ChannelError> {
    check_positive("gamma_bar", gamma_bar)?;
    if !g.is_finite() || g < 0.0 {
        return Err(ChannelError::InvalidParameter(format!("g must be >= 0, got {g}")));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let x = (g / gamma_bar).sqrt() / fit.b;
    Ok(specfun::reg_inc_gamma_lower(fit.a + 1.0, x)?)
}

/// One draw of the element-sum amplitude xi = sum_{l=1..N} alpha_l beta_l
/// from the true cascaded-Rician model.
pub fn sample_cascaded_amplitude<R: Rng + ?Sized>(link: &LinkModel, rng: &mut R) -> f64 {
    let mut sum = 0.0;
    for _ in 0..link.n_elements {
        sum += link.hop1.sample(rng) * link.hop2.sample(rng);
    }
    sum
}

/// Trusted reference density of the single-element product xi_l = alpha*beta,
/// computed by numerical convolution f(y) = int f_alpha(x) f_beta(y/x) / x dx.
pub fn exact_product_pdf(link: &LinkModel, y: f64) -> Result<f64, ChannelError> {
    check_positive("y", y)?;
    // the hop amplitude tail beyond v + 14 sigma is below the 1e-9 targets
    let hi1 = link.hop1.los_amplitude() + 14.0 * link.hop1.scatter_sigma();
    let hi2 = link.hop2.los_amplitude() + 14.0 * link.hop2.scatter_sigma();
    let x_lo = y / hi2;
    let x_hi = hi1;
    if x_lo >= x_hi {
        return Ok(0.0);
    }
    let f = |x: f64| link.hop1.amplitude_pdf(x) * link.hop2.amplitude_pdf(y / x) / x;
    Ok(quad::integrate(f, x_lo, x_hi, 1e-305, 1e-10)?)
}

/// The printed infinite-series form of the product density, truncated.
///
/// Kept only for qualitative comparison: the transcription it follows could
/// not be reconciled with the convolution reference away from K = 0, which
/// is why [`exact_product_pdf`] is the trusted evaluator.
pub fn product_pdf_series(link: &LinkModel, y: f64, max_terms: usize) -> Result<f64, ChannelError> {
    check_positive("y", y)?;
    let k1 = link.hop1.k;
    let k2 = link.hop2.k;
    let om = link.hop1.omega * link.hop2.omega;
    let arg = 2.0 * y * om.sqrt();
    let cap = max_terms.min(60);
    let mut sum = 0.0f64;
    let mut ln_fact_i = 0.0f64; // ln i!
    for i in 0..=cap {
        if i > 0 {
            ln_fact_i += (i as f64).ln();
        }
        let mut ln_fact_j = 0.0f64;
        for j in 0..=cap {
            if j > 0 {
                ln_fact_j += (j as f64).ln();
            }
            let bessel = specfun::bessel_k((j as f64) - (i as f64), arg)?;
            let ln_mag = ((i + j + 1) as f64) * y.ln()
                + (4.0f64).ln()
                + if i > 0 { i as f64 * k2.max(f64::MIN_POSITIVE).ln() } else { 0.0 }
                + if j > 0 { j as f64 * k1.max(f64::MIN_POSITIVE).ln() } else { 0.0 }
                + 0.5 * ((i + j + 2) as f64) * om.ln()
                - 2.0 * ln_fact_i
                - 2.0 * ln_fact_j
                - k1 * k2;
            let term = ln_mag.exp() * bessel;
            sum += term;
            if term.abs() < sum.abs() * 1e-14 && j > 0 {
                break;
            }
        }
    }
    Ok(sum)
}
