//! Meijer G-function evaluation for real parameters and positive real
//! argument.
//!
//! Primary method: numerical Mellin-Barnes integration along a vertical line
//! Re(s) = c inside the strip separating the poles of the Gamma(b_j + s)
//! family (left) from those of the Gamma(1 - a_i - s) family (right). The
//! abscissa c is picked by minimizing the integrand magnitude, which keeps
//! cancellation under control across the wide argument ranges produced by
//! SNR sweeps.
//!
//! Secondary method: a residue series over the left poles (ascending powers
//! of z) or right poles (powers of 1/z). Residues are extracted by trapezoid
//! quadrature on a small circle around each pole cluster, which handles
//! merged/multiple poles and Gamma cancellations between numerator and
//! denominator without any derivative-of-Gamma machinery.
//!
//! The integrand along the contour decays like exp(-delta*pi*|t|) with
//! delta = m + n - (p+q)/2; specs with delta = 0 (e.g. the ln(x)*step
//! identity instance) are routed to the residue series automatically.

use super::gamma::ln_gamma_complex;
use super::SpecFunError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A fully parameterized G^{m,n}_{p,q} instance; the argument is per call.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// A G-function value carried as `mantissa * exp(ln_scale)` so extreme
/// magnitudes survive until they are combined with equally extreme
/// prefactors.
#[derive(Debug, Clone, Copy)]
pub struct GValue {
    pub ln_scale: f64,
    pub mantissa: f64,
}

impl GValue {
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    /// ln of the absolute value; -inf when the mantissa is zero.
    pub fn ln_abs(&self) -> f64 {
        self.ln_scale + self.mantissa.abs().ln()
    }
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, SpecFunError> {
        let p = a.len();
        let q = b.len();
        if m > q || n > p {
            return Err(SpecFunError::UnsupportedParameters(format!(
                "need m <= q and n <= p, got m={m}, n={n}, p={p}, q={q}"
            )));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(SpecFunError::UnsupportedParameters(
                "non-finite parameter".to_string(),
            ));
        }
        // pole collision: a_i - b_j equal to a positive integer places a
        // right pole of Gamma(1 - a_i - s) on a left pole of Gamma(b_j + s)
        for i in 0..n {
            for j in 0..m {
                let d = a[i] - b[j];
                if d >= 0.5 && (d - d.round()).abs() < 1e-9 {
                    return Err(SpecFunError::UnsupportedParameters(format!(
                        "pole collision: a[{i}] - b[{j}] = {d} is a positive integer"
                    )));
                }
            }
        }
        Ok(Self { m, n, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.a.len()
    }
    pub fn q(&self) -> usize {
        self.b.len()
    }
    pub fn a_params(&self) -> &[f64] {
        &self.a
    }
    pub fn b_params(&self) -> &[f64] {
        &self.b
    }

    /// Exponential decay rate of the Mellin-Barnes integrand, in units of
    /// pi per unit |Im s|.
    fn delta(&self) -> f64 {
        self.m as f64 + self.n as f64 - 0.5 * (self.p() + self.q()) as f64
    }

    /// log of the Mellin-Barnes integrand (without the 1/(2 pi i)).
    fn ln_integrand(&self, s: Complex64, ln_z: f64) -> Complex64 {
        let mut acc = -s * ln_z;
        for j in 0..self.m {
            acc += ln_gamma_complex(s + self.b[j]);
        }
        for i in 0..self.n {
            acc += ln_gamma_complex(-s + (1.0 - self.a[i]));
        }
        for j in self.m..self.q() {
            acc -= ln_gamma_complex(-s + (1.0 - self.b[j]));
        }
        for i in self.n..self.p() {
            acc -= ln_gamma_complex(s + self.a[i]);
        }
        acc
    }

    /// Strip (lo, hi) of admissible contour abscissae; either side may be
    /// unbounded (infinite).
    fn strip(&self) -> (f64, f64) {
        let lo = self.b[..self.m]
            .iter()
            .map(|b| -b)
            .fold(f64::NEG_INFINITY, f64::max);
        let hi = self.a[..self.n]
            .iter()
            .map(|a| 1.0 - a)
            .fold(f64::INFINITY, f64::min);
        (lo, hi)
    }
}

fn validate_argument(z: f64) -> Result<(), SpecFunError> {
    if !z.is_finite() || z <= 0.0 {
        return Err(SpecFunError::Domain {
            func: "meijer_g",
            message: format!("require z > 0, got {z}"),
        });
    }
    Ok(())
}

/// Evaluate G^{m,n}_{p,q}(z) choosing the method by integrand decay:
/// Mellin-Barnes contour when the integrand decays exponentially,
/// residue series otherwise.
pub fn meijer_g(spec: &MeijerGSpec, z: f64) -> Result<GValue, SpecFunError> {
    validate_argument(z)?;
    if spec.delta() > 1e-12 {
        meijer_g_contour(spec, z)
    } else {
        meijer_g_residue_series(spec, z)
    }
}

/// Mellin-Barnes contour integration (primary method; needs delta > 0).
pub fn meijer_g_contour(spec: &MeijerGSpec, z: f64) -> Result<GValue, SpecFunError> {
    validate_argument(z)?;
    let delta = spec.delta();
    if delta <= 1e-12 {
        return Err(SpecFunError::UnsupportedParameters(format!(
            "contour integrand does not decay (delta = {delta}); use the residue series"
        )));
    }
    let (lo, hi) = spec.strip();
    if lo >= hi {
        return Err(SpecFunError::UnsupportedParameters(format!(
            "empty contour strip [{lo}, {hi}]"
        )));
    }
    if lo.is_infinite() && hi.is_infinite() {
        return Err(SpecFunError::UnsupportedParameters(
            "m = 0 and n = 0 is not supported".to_string(),
        ));
    }
    let ln_z = z.ln();
    let c = choose_abscissa(spec, ln_z, lo, hi);

    // normalize by the integrand magnitude at the probe point
    let scale = spec.ln_integrand(Complex64::new(c, 0.5), ln_z).re;
    let g = |t: f64| {
        let lf = spec.ln_integrand(Complex64::new(c, t), ln_z) - scale;
        if lf.re > 300.0 {
            // should not happen with a sane abscissa; clamp rather than inf
            return 0.0;
        }
        lf.exp().re
    };

    let mut total = 0.0f64;
    let mut total_abs = 0.0f64;
    let mut quiet = 0usize;
    let seg_len = 2.0f64;
    let max_segments = 400usize;
    let mut converged = false;
    for k in 0..max_segments {
        let t0 = k as f64 * seg_len;
        let t1 = t0 + seg_len;
        let seg = crate::quad::integrate(&g, t0, t1, 1e-14, 1e-13).map_err(|_| {
            SpecFunError::Accuracy { func: "meijer_g_contour", achieved: f64::NAN }
        })?;
        total += seg;
        total_abs += seg.abs();
        if seg.abs() < 1e-16 * total_abs.max(1e-30) {
            quiet += 1;
            if quiet >= 2 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if !converged {
        return Err(SpecFunError::Accuracy {
            func: "meijer_g_contour",
            achieved: (total_abs * 1e-16) / total.abs().max(1e-300),
        });
    }
    // value = exp(scale)/pi * total (conjugate symmetry folds t < 0)
    Ok(GValue { ln_scale: scale, mantissa: total / PI })
}

/// Pick the contour abscissa minimizing the integrand magnitude at a probe
/// just off the real axis (a cheap saddle-point heuristic that controls
/// cancellation).
fn choose_abscissa(spec: &MeijerGSpec, ln_z: f64, lo: f64, hi: f64) -> f64 {
    let span_cap = 80.0;
    let (w_lo, w_hi) = if lo.is_infinite() {
        (hi - span_cap, hi - margin_for(hi - span_cap, hi))
    } else if hi.is_infinite() {
        (lo + margin_for(lo, lo + span_cap), lo + span_cap)
    } else {
        let mg = margin_for(lo, hi);
        (lo + mg, hi - mg)
    };
    let phi = |c: f64| spec.ln_integrand(Complex64::new(c, 0.5), ln_z).re;
    // coarse scan then golden-section refinement
    let samples = 48;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..=samples {
        let c = w_lo + (w_hi - w_lo) * i as f64 / samples as f64;
        let v = phi(c);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = (w_hi - w_lo) / samples as f64;
    let mut a = (w_lo + (best_i as f64 - 1.0) * step).max(w_lo);
    let mut b = (w_lo + (best_i as f64 + 1.0) * step).min(w_hi);
    let inv_phi_ratio = 0.381_966_011_250_105;
    for _ in 0..60 {
        let x1 = a + inv_phi_ratio * (b - a);
        let x2 = b - inv_phi_ratio * (b - a);
        if phi(x1) < phi(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    0.5 * (a + b)
}

fn margin_for(lo: f64, hi: f64) -> f64 {
    (0.05 * (hi - lo)).min(0.05)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Left,
    Right,
}

/// Residue-series evaluation (secondary method / delta = 0 fallback).
///
/// Sums residues of the Mellin-Barnes integrand over the left pole family
/// (valid for p < q, or p = q with z < 1) or the right family (p > q, or
/// p = q with z > 1).
pub fn meijer_g_residue_series(spec: &MeijerGSpec, z: f64) -> Result<GValue, SpecFunError> {
    validate_argument(z)?;
    let p = spec.p();
    let q = spec.q();
    let side = if p < q || (p == q && z < 1.0) {
        Side::Left
    } else if p > q || (p == q && z > 1.0) {
        Side::Right
    } else {
        return Err(SpecFunError::UnsupportedParameters(
            "residue series undefined at z = 1 with p = q".to_string(),
        ));
    };
    let ln_z = z.ln();

    // candidate pole positions, outermost families first
    let rounds = 420usize;
    let mut candidates: Vec<f64> = Vec::new();
    match side {
        Side::Left => {
            for j in 0..spec.m {
                for k in 0..rounds {
                    candidates.push(-spec.b[j] - k as f64);
                }
            }
            candidates.sort_by(|x, y| y.partial_cmp(x).unwrap()); // descending
        }
        Side::Right => {
            for i in 0..spec.n {
                for k in 0..rounds {
                    candidates.push(1.0 - spec.a[i] + k as f64);
                }
            }
            candidates.sort_by(|x, y| x.partial_cmp(y).unwrap()); // ascending
        }
    }
    if candidates.is_empty() {
        return Ok(GValue { ln_scale: 0.0, mantissa: 0.0 });
    }

    // cluster candidates closer than 1e-6 (multiple poles handled by the
    // circle quadrature as one unit)
    let mut clusters: Vec<(f64, f64)> = Vec::new(); // (center, min gap to neighbors)
    let mut idx = 0;
    while idx < candidates.len() {
        let start = candidates[idx];
        let mut end = idx;
        while end + 1 < candidates.len() && (candidates[end + 1] - start).abs() < 1e-6 {
            end += 1;
        }
        let center = (candidates[idx] + candidates[end]) * 0.5;
        clusters.push((center, f64::INFINITY));
        idx = end + 1;
    }
    for i in 0..clusters.len() {
        let mut gap = f64::INFINITY;
        if i > 0 {
            gap = gap.min((clusters[i].0 - clusters[i - 1].0).abs());
        }
        if i + 1 < clusters.len() {
            gap = gap.min((clusters[i].0 - clusters[i + 1].0).abs());
        }
        clusters[i].1 = gap;
    }

    let mut sum_scale = f64::NEG_INFINITY;
    let mut sum = 0.0f64;
    let mut max_term_ln = f64::NEG_INFINITY;
    let mut quiet = 0usize;
    let mut converged = false;
    let max_clusters = clusters.len().min(400);
    for (ci, &(center, gap)) in clusters.iter().take(max_clusters).enumerate() {
        let radius = (0.45 * gap).min(0.35).max(1e-7);
        let (term_scale, term) = circle_residue(spec, center, radius, ln_z)?;
        let term_ln = if term == 0.0 { f64::NEG_INFINITY } else { term_scale + term.abs().ln() };
        max_term_ln = max_term_ln.max(term_ln);

        // scaled accumulation
        if term != 0.0 {
            if sum == 0.0 {
                sum_scale = term_scale;
                sum = term;
            } else {
                let new_scale = sum_scale.max(term_scale);
                sum = sum * (sum_scale - new_scale).exp() + term * (term_scale - new_scale).exp();
                sum_scale = new_scale;
            }
        }

        let sum_ln = if sum == 0.0 { f64::NEG_INFINITY } else { sum_scale + sum.abs().ln() };
        let reference = sum_ln.max(max_term_ln);
        let negligible = term_ln == f64::NEG_INFINITY
            || (reference.is_finite() && term_ln < reference - 36.0 * std::f64::consts::LN_2);
        if negligible {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if ci >= 4 && quiet >= 3 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Accuracy {
            func: "meijer_g_residue_series",
            achieved: f64::NAN,
        });
    }
    let signed = match side {
        Side::Left => sum,
        Side::Right => -sum,
    };
    if signed == 0.0 {
        Ok(GValue { ln_scale: 0.0, mantissa: 0.0 })
    } else {
        Ok(GValue { ln_scale: sum_scale, mantissa: signed })
    }
}

/// Residue of the integrand at the pole (cluster) centered at `center`, via
/// trapezoid quadrature on a circle of radius `radius`. Returns
/// (ln_scale, mantissa). A cancelled pole yields ~0.
fn circle_residue(
    spec: &MeijerGSpec,
    center: f64,
    radius: f64,
    ln_z: f64,
) -> Result<(f64, f64), SpecFunError> {
    let scale = spec
        .ln_integrand(Complex64::new(center, radius), ln_z)
        .re;
    let eval = |nodes: usize| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..nodes {
            let theta = 2.0 * PI * k as f64 / nodes as f64;
            let dir = Complex64::new(theta.cos(), theta.sin());
            let s = Complex64::new(center, 0.0) + radius * dir;
            let lf = spec.ln_integrand(s, ln_z) - scale;
            if lf.re < -700.0 {
                continue;
            }
            acc += lf.exp() * dir;
        }
        acc * (radius / nodes as f64)
    };
    let mut nodes = 32;
    let mut prev = eval(nodes);
    loop {
        nodes *= 2;
        let cur = eval(nodes);
        if (cur - prev).norm() <= 1e-13 * cur.norm().max(1e-13) || nodes >= 512 {
            // the residue of a real-analytic integrand at a real pole is real
            return Ok((scale, cur.re));
        }
        prev = cur;
    }
}
