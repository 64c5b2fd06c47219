//! Quadrature and Monte Carlo machinery for the normalized weighted volume
//! measures on the unit ball and the rotation-invariant measure on the unit
//! sphere.
//!
//! Radial integrals use Gauss-Legendre after the substitution 1 - r = u^k
//! (default k = 3), which turns the algebraic boundary blow-ups produced by
//! the Orlicz calculus into quadrature-friendly integrands. Divergence is
//! detected by node-doubling instability and reported as a flag, never as an
//! error.
//!
//! Monte Carlo sampling is deterministic given the seed: samples are drawn in
//! fixed-size chunks, each chunk from its own counter-indexed ChaCha substream,
//! and chunk results are combined in chunk order. Thread count therefore has
//! no effect on any estimate.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ball::CPoint;
use crate::scalar::Real;
use crate::special::{ln_gamma, wilson_interval, z_score};

/// Samples per RNG substream; fixed so that estimates do not depend on the
/// parallel fan-out.
const CHUNK: usize = 8192;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("weight parameter must satisfy alpha >= -1, got {0}")]
    AlphaOutOfRange(f64),
    #[error("dimension must be >= 1, got {0}")]
    BadDimension(usize),
    #[error("the boundary measure (alpha = -1) has no volume normalizing constant")]
    BoundaryHasNoConstant,
    #[error("operation requires the volume measure (alpha > -1)")]
    NeedsVolumeMeasure,
    #[error("bad config entry `{0}`")]
    BadConfigEntry(String),
}

/// Dimension N and weight parameter alpha >= -1; alpha = -1 selects the
/// normalized sphere measure, alpha > -1 the normalized weighted volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSpec<T> {
    pub dim: usize,
    pub alpha: T,
}

impl<T: Real> MeasureSpec<T> {
    pub fn new(dim: usize, alpha: T) -> Result<Self, MeasureError> {
        if dim < 1 {
            return Err(MeasureError::BadDimension(dim));
        }
        if !(alpha >= T::of(-1.0)) {
            return Err(MeasureError::AlphaOutOfRange(alpha.as_f64()));
        }
        Ok(MeasureSpec { dim, alpha })
    }

    pub fn ball(dim: usize, alpha: T) -> Result<Self, MeasureError> {
        let spec = Self::new(dim, alpha)?;
        if spec.is_boundary() {
            return Err(MeasureError::NeedsVolumeMeasure);
        }
        Ok(spec)
    }

    pub fn sphere(dim: usize) -> Self {
        MeasureSpec { dim, alpha: T::of(-1.0) }
    }

    pub fn is_boundary(&self) -> bool {
        self.alpha == T::of(-1.0)
    }

    /// The exponent N + alpha + 1 that rules every pointwise estimate.
    pub fn gamma(&self) -> T {
        T::of_usize(self.dim) + self.alpha + T::one()
    }

    /// Normalizing constant of the weighted volume measure, via log-gamma.
    pub fn normalizing_constant(&self) -> Result<T, MeasureError> {
        if self.is_boundary() {
            return Err(MeasureError::BoundaryHasNoConstant);
        }
        let n = T::of_usize(self.dim);
        let ln = ln_gamma(n + self.alpha + T::one())
            - ln_gamma(n + T::one())
            - ln_gamma(self.alpha + T::one());
        Ok(ln.exp())
    }
}

/// Quadrature and sampling configuration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureConfig<T> {
    /// Gauss-Legendre node count after the boundary substitution.
    pub radial_nodes: usize,
    /// Exponent k of the substitution 1 - r = u^k.
    pub boundary_exponent: T,
    /// Monte Carlo sample count.
    pub mc_samples: usize,
    /// RNG seed; identical seeds reproduce every estimate bit-exactly.
    pub seed: u64,
    /// Confidence level for Monte Carlo half-intervals.
    pub confidence: T,
    /// Relative bracket width at which norm bisections stop.
    pub norm_tol: T,
    /// Relative change under node doubling that flags divergence.
    pub divergence_ratio: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        QuadratureConfig {
            radial_nodes: 64,
            boundary_exponent: T::of(3.0),
            mc_samples: 20_000,
            seed: 123_456_789,
            confidence: T::of(0.95),
            norm_tol: T::of(1e-9),
            divergence_ratio: T::of(0.10),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    /// Apply one `key=value` override (the plain config-file format).
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), MeasureError> {
        let bad = || MeasureError::BadConfigEntry(format!("{key}={value}"));
        match key {
            "radial_nodes" => self.radial_nodes = value.parse().map_err(|_| bad())?,
            "boundary_exponent" => {
                self.boundary_exponent = value.parse::<f64>().map(T::of).map_err(|_| bad())?
            }
            "samples" | "mc_samples" => self.mc_samples = value.parse().map_err(|_| bad())?,
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "confidence" => self.confidence = value.parse::<f64>().map(T::of).map_err(|_| bad())?,
            "tol" | "norm_tol" => self.norm_tol = value.parse::<f64>().map(T::of).map_err(|_| bad())?,
            "divergence_ratio" => {
                self.divergence_ratio = value.parse::<f64>().map(T::of).map_err(|_| bad())?
            }
            _ => return Err(bad()),
        }
        Ok(())
    }

    /// Parse a plain `key=value` config file; `#` starts a comment.
    pub fn apply_kv_text(&mut self, text: &str) -> Result<(), MeasureError> {
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| MeasureError::BadConfigEntry(line.to_string()))?;
            self.apply_kv(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn z(&self) -> T {
        z_score(self.confidence)
    }
}

/// A scalar estimate with an error bar; `diverged` means refinement failed to
/// stabilize and the value is only a lower bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralEstimate<T> {
    pub value: T,
    pub half_width: T,
    pub diverged: bool,
}

/// One node of the radial quadrature scheme. `one_minus_r` is carried
/// explicitly so boundary-singular integrands never difference r against 1.
#[derive(Debug, Clone, Copy)]
pub struct RadialNode<T> {
    pub r: T,
    pub one_minus_r: T,
    pub weight: T,
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 2);
    let mut xs = vec![T::zero(); n];
    let mut ws = vec![T::zero(); n];
    let nf = T::of_usize(n);
    let tol = T::epsilon() * T::of(4.0);
    for i in 0..n.div_ceil(2) {
        let mut x = (T::PI() * (T::of_usize(i) + T::of(0.75)) / (nf + T::of(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (T::one(), x);
            for k in 2..=n {
                let kf = T::of_usize(k);
                let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), derivative from the standard identity.
            dp = nf * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() <= tol * (T::one() + x.abs()) {
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Radial scheme for the weighted volume measure: nodes r_j with weights
/// summing to the total mass 1, after the boundary substitution.
pub fn radial_scheme<T: Real>(
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
    nodes: usize,
) -> Result<Vec<RadialNode<T>>, MeasureError> {
    if spec.is_boundary() {
        return Err(MeasureError::NeedsVolumeMeasure);
    }
    let k = cfg.boundary_exponent;
    let c_alpha = spec.normalizing_constant()?;
    let n_dim = T::of_usize(spec.dim);
    let two = T::of(2.0);
    let ln_front = (two * n_dim * c_alpha * k).ln();
    let (xs, ws) = gauss_legendre::<T>(nodes.max(16));
    let mut out = Vec::with_capacity(xs.len());
    for (x, w) in xs.into_iter().zip(ws) {
        let u = (x + T::one()) / two; // map to (0, 1)
        let gl_w = w / two;
        let omr = u.powf(k); // 1 - r
        let r = T::one() - omr;
        if r <= T::zero() {
            continue; // u = 1 endpoint never occurs for Gauss nodes, but stay safe
        }
        // density: 2 N c_alpha k u^{k-1} r^{2N-1} (1-r^2)^alpha, with
        // 1 - r^2 = u^k (2 - u^k) computed cancellation-free.
        let ln_w = ln_front
            + (k - T::one()) * u.ln()
            + (two * n_dim - T::one()) * r.ln()
            + spec.alpha * (k * u.ln() + (two - omr).ln());
        out.push(RadialNode { r, one_minus_r: omr, weight: gl_w * ln_w.exp() });
    }
    Ok(out)
}

/// Integral of `g(r)` against the radial density of the weighted volume
/// measure, with node-doubling divergence detection. The integrand receives
/// `(r, 1 - r)`.
pub fn integrate_radial<T: Real>(
    g: impl Fn(T, T) -> T,
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralEstimate<T>, MeasureError> {
    let coarse = radial_scheme(spec, cfg, cfg.radial_nodes)?;
    let fine = radial_scheme(spec, cfg, cfg.radial_nodes * 2)?;
    let apply = |scheme: &[RadialNode<T>]| {
        scheme
            .iter()
            .fold(T::zero(), |acc, node| acc + node.weight * g(node.r, node.one_minus_r))
    };
    let (i_coarse, i_fine) = (apply(&coarse), apply(&fine));
    Ok(refinement_estimate(i_coarse, i_fine, cfg.divergence_ratio))
}

fn refinement_estimate<T: Real>(coarse: T, fine: T, ratio: T) -> IntegralEstimate<T> {
    if !fine.is_finite() || !coarse.is_finite() {
        let lower = if coarse.is_finite() { coarse } else { T::zero() };
        return IntegralEstimate { value: lower, half_width: T::infinity(), diverged: true };
    }
    let diff = (fine - coarse).abs();
    let scale = fine.abs().max(T::of(1e-300));
    IntegralEstimate { value: fine, half_width: diff, diverged: diff > ratio * scale }
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64 + 1);
    rng
}

/// Deterministic parallel map over sample chunks; results are combined in
/// chunk order so the fan-out cannot perturb floating-point sums.
fn map_chunks<T, R, F>(count: usize, seed: u64, per_chunk: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, usize, &mut ChaCha8Rng) -> R + Sync,
    T: Real,
{
    let chunks = count.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(count - c * CHUNK);
            let mut rng = chunk_rng(seed, c);
            per_chunk(c, len, &mut rng)
        })
        .collect()
}

fn draw_direction<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> CPoint<T> {
    loop {
        let coords: Vec<Complex<T>> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex::new(T::of(re), T::of(im))
            })
            .collect();
        let p = CPoint(coords);
        if p.norm() > T::of(1e-8) {
            return p.scale(T::one() / p.norm());
        }
    }
}

/// i.i.d. samples of the normalized rotation-invariant sphere measure:
/// N standard complex Gaussians scaled to unit modulus. Deterministic given
/// the seed.
pub fn sample_sphere<T: Real>(dim: usize, count: usize, seed: u64) -> Vec<CPoint<T>> {
    let per: Vec<Vec<CPoint<T>>> = map_chunks::<T, _, _>(count, seed, |_, len, rng| {
        (0..len).map(|_| draw_direction(dim, rng)).collect()
    });
    per.into_iter().flatten().collect()
}

/// Inverse-CDF sampler for the radial density of the weighted volume measure,
/// backed by a precomputed monotone table in the substituted variable.
pub struct RadialSampler<T> {
    /// Uniform grid in u (descending r); us[i] = i / (len - 1).
    cdf: Vec<T>, // cdf[i] = measure of { radius >= r(u_i) } = tail above u_i... stored as mass below r
    k: T,
}

impl<T: Real> RadialSampler<T> {
    const TABLE: usize = 4096;

    pub fn new(spec: &MeasureSpec<T>, cfg: &QuadratureConfig<T>) -> Result<Self, MeasureError> {
        if spec.is_boundary() {
            return Err(MeasureError::NeedsVolumeMeasure);
        }
        let k = cfg.boundary_exponent;
        let c_alpha = spec.normalizing_constant()?;
        let n_dim = T::of_usize(spec.dim);
        let two = T::of(2.0);
        let m = Self::TABLE;
        let h = T::one() / T::of_usize(m);
        // Density in u of the radius law, u in (0, 1], r = 1 - u^k.
        let pdf_u = |u: T| {
            if u <= T::zero() || u >= T::one() {
                // At u = 1, r = 0: the r^{2N-1} factor kills the density for N >= 1.
                return if u >= T::one() { T::zero() } else { T::zero() };
            }
            let omr = u.powf(k);
            let r = T::one() - omr;
            if r <= T::zero() {
                return T::zero();
            }
            let ln = (two * n_dim * c_alpha * k).ln()
                + (k - T::one()) * u.ln()
                + (two * n_dim - T::one()) * r.ln()
                + spec.alpha * (k * u.ln() + (two - omr).ln());
            ln.exp()
        };
        // Composite Simpson per cell, accumulated from u = 1 (r = 0) down to
        // u = 0 (r = 1), so cdf[i] = P(radius <= r(u_i)) with u_i = 1 - i*h.
        let mut cdf = Vec::with_capacity(m + 1);
        cdf.push(T::zero());
        let mut acc = T::zero();
        for i in 0..m {
            let u_hi = T::one() - T::of_usize(i) * h;
            let u_lo = T::one() - T::of_usize(i + 1) * h;
            let mid = (u_hi + u_lo) / two;
            let cell = (pdf_u(u_lo) + T::of(4.0) * pdf_u(mid) + pdf_u(u_hi)) * h / T::of(6.0);
            acc = acc + cell;
            cdf.push(acc);
        }
        // Normalize the tiny quadrature defect so the table tops out at 1.
        let total = acc;
        for v in &mut cdf {
            *v = *v / total;
        }
        Ok(RadialSampler { cdf, k })
    }

    fn u_of_index(&self, i: T) -> T {
        // index i in [0, TABLE] maps to u = 1 - i/TABLE
        T::one() - i / T::of_usize(Self::TABLE)
    }

    /// CDF value at radius r (mass of {radius <= r}).
    pub fn cdf_at(&self, r: T) -> T {
        if r <= T::zero() {
            return T::zero();
        }
        if r >= T::one() {
            return T::one();
        }
        let u = (T::one() - r).powf(T::one() / self.k);
        let pos = (T::one() - u) * T::of_usize(Self::TABLE);
        let i = pos.floor().as_f64() as usize;
        if i + 1 >= self.cdf.len() {
            return T::one();
        }
        let frac = pos - pos.floor();
        self.cdf[i] * (T::one() - frac) + self.cdf[i + 1] * frac
    }

    /// Invert the CDF at v in [0, 1); returns (r, 1 - r).
    pub fn sample(&self, v: T) -> (T, T) {
        let v = v.min(T::one() - T::epsilon()).max(T::zero());
        // Binary search for the bracketing cell.
        let (mut lo, mut hi) = (0usize, self.cdf.len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.cdf[mid] <= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (c0, c1) = (self.cdf[lo], self.cdf[hi]);
        let frac = if c1 > c0 { (v - c0) / (c1 - c0) } else { T::zero() };
        let idx = T::of_usize(lo) + frac;
        let u = self.u_of_index(idx).max(T::of(1e-300));
        let omr = u.powf(self.k);
        (T::one() - omr, omr)
    }
}

/// Monte Carlo estimate of the measure of an event, under the weighted volume
/// measure (radius by inverse CDF, direction uniform on the sphere) or the
/// sphere measure when alpha = -1. The half-width is a Wilson score interval
/// at the configured confidence.
pub fn estimate_event_measure<T: Real>(
    event: impl Fn(&CPoint<T>) -> bool + Sync,
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralEstimate<T>, MeasureError> {
    estimate_event_with_floor(event, spec, cfg, None)
}

/// Same estimator restricted to the shell {radius > min_radius}, for events
/// known a priori to lie inside it. The shell mass comes from the sampler
/// table, so the restriction is exact up to quadrature error and buys the
/// conditional estimator a 1/mass variance reduction.
pub fn estimate_event_measure_shell<T: Real>(
    event: impl Fn(&CPoint<T>) -> bool + Sync,
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
    min_radius: T,
) -> Result<IntegralEstimate<T>, MeasureError> {
    estimate_event_with_floor(event, spec, cfg, Some(min_radius))
}

fn estimate_event_with_floor<T: Real>(
    event: impl Fn(&CPoint<T>) -> bool + Sync,
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
    min_radius: Option<T>,
) -> Result<IntegralEstimate<T>, MeasureError> {
    let n = cfg.mc_samples.max(1);
    if spec.is_boundary() {
        let hits: usize = map_chunks::<T, usize, _>(n, cfg.seed, |_, len, rng| {
            (0..len)
                .filter(|_| {
                    let zeta = draw_direction::<T>(spec.dim, rng);
                    event(&zeta)
                })
                .count()
        })
        .into_iter()
        .sum();
        let (p, w) = wilson_interval(hits, n, cfg.confidence);
        return Ok(IntegralEstimate { value: p, half_width: w, diverged: false });
    }

    let sampler = RadialSampler::new(spec, cfg)?;
    let (floor_mass, v_lo) = match min_radius {
        Some(rmin) if rmin > T::zero() => {
            let below = sampler.cdf_at(rmin);
            (T::one() - below, below)
        }
        _ => (T::one(), T::zero()),
    };
    if floor_mass <= T::zero() {
        return Ok(IntegralEstimate { value: T::zero(), half_width: T::zero(), diverged: false });
    }
    let hits: usize = map_chunks::<T, usize, _>(n, cfg.seed, |_, len, rng| {
        (0..len)
            .filter(|_| {
                let v: f64 = rng.random();
                let v = v_lo + (T::one() - v_lo) * T::of(v);
                let (r, _) = sampler.sample(v);
                let zeta = draw_direction::<T>(spec.dim, rng);
                event(&zeta.scale(r))
            })
            .count()
    })
    .into_iter()
    .sum();
    let (p, w) = wilson_interval(hits, n, cfg.confidence);
    Ok(IntegralEstimate {
        value: floor_mass * p,
        half_width: floor_mass * w,
        diverged: false,
    })
}

/// Integral of a real function over the ball or sphere.
///
/// For the volume measures this is a tensor scheme: the radial Gauss-Legendre
/// rule crossed with one shared Monte Carlo sphere sample reused at every
/// radial node (common random numbers across the refinement comparison). For
/// the sphere measure it is a plain Monte Carlo average.
pub fn integrate_space<T: Real>(
    f: impl Fn(&CPoint<T>) -> T + Sync,
    spec: &MeasureSpec<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralEstimate<T>, MeasureError> {
    let m = cfg.mc_samples.max(2);
    if spec.is_boundary() {
        let sums: Vec<(T, T, usize)> = map_chunks::<T, _, _>(m, cfg.seed, |_, len, rng| {
            let mut s = T::zero();
            let mut s2 = T::zero();
            for _ in 0..len {
                let zeta = draw_direction::<T>(spec.dim, rng);
                let v = f(&zeta);
                s = s + v;
                s2 = s2 + v * v;
            }
            (s, s2, len)
        });
        let (s, s2) = sums.iter().fold((T::zero(), T::zero()), |a, b| (a.0 + b.0, a.1 + b.1));
        let mf = T::of_usize(m);
        let mean = s / mf;
        if !mean.is_finite() {
            return Ok(IntegralEstimate { value: T::zero(), half_width: T::infinity(), diverged: true });
        }
        let var = (s2 / mf - mean * mean).max(T::zero());
        let half = cfg.z() * (var / mf).sqrt();
        return Ok(IntegralEstimate { value: mean, half_width: half, diverged: false });
    }

    let coarse = radial_scheme(spec, cfg, cfg.radial_nodes)?;
    let fine = radial_scheme(spec, cfg, cfg.radial_nodes * 2)?;
    let dirs = sample_sphere::<T>(spec.dim, m, cfg.seed);
    let per_chunk: Vec<(T, T, T)> = dirs
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut sum_fine = T::zero();
            let mut sum_sq = T::zero();
            let mut sum_coarse = T::zero();
            for zeta in chunk {
                let slice = |scheme: &[RadialNode<T>]| {
                    scheme.iter().fold(T::zero(), |acc, node| {
                        acc + node.weight * f(&zeta.scale(node.r))
                    })
                };
                let fi = slice(&fine);
                sum_fine = sum_fine + fi;
                sum_sq = sum_sq + fi * fi;
                sum_coarse = sum_coarse + slice(&coarse);
            }
            (sum_fine, sum_sq, sum_coarse)
        })
        .collect();
    let (sf, sq, sc) = per_chunk
        .iter()
        .fold((T::zero(), T::zero(), T::zero()), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let mf = T::of_usize(m);
    let (i_fine, i_coarse) = (sf / mf, sc / mf);
    let mut est = refinement_estimate(i_coarse, i_fine, cfg.divergence_ratio);
    if est.value.is_finite() && !est.diverged {
        let var = (sq / mf - i_fine * i_fine).max(T::zero());
        est.half_width = est.half_width.max(cfg.z() * (var / mf).sqrt());
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (xs, ws) = gauss_legendre::<f64>(16);
        // Degree-31 exactness covers x^8 with lots of slack.
        let got: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(8)).sum();
        assert!((got - 2.0 / 9.0).abs() < 1e-14);
        let mass: f64 = ws.iter().sum();
        assert!((mass - 2.0).abs() < 1e-14);
    }

    #[test]
    fn normalizing_constants() {
        let c = |n, a: f64| MeasureSpec::new(n, a).unwrap().normalizing_constant().unwrap();
        assert!((c(1, 0.0) - 1.0).abs() < 1e-12);
        assert!((c(2, 1.0) - 3.0).abs() < 1e-12);
        assert!((c(1, 1.0) - 2.0).abs() < 1e-12);
        assert!(MeasureSpec::new(1, -1.0).unwrap().normalizing_constant().is_err());
    }

    #[test]
    fn total_mass_is_one() {
        for n in [1usize, 2, 3] {
            for a in [-0.5f64, 0.0, 1.0, 2.0] {
                let spec = MeasureSpec::new(n, a).unwrap();
                let est = integrate_radial(|_, _| 1.0, &spec, &cfg()).unwrap();
                assert!(
                    (est.value - 1.0).abs() < 1e-10,
                    "mass for N={n}, alpha={a}: {}",
                    est.value
                );
                assert!(!est.diverged);
            }
        }
    }

    #[test]
    fn radial_integral_against_beta_oracle() {
        // N=1, alpha=0, g = (1-r)^(-1/2): 2 B(2, 1/2) = 8/3.
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let est = integrate_radial(|_, omr| omr.powf(-0.5), &spec, &cfg()).unwrap();
        let want: f64 = 2.0 * beta(2.0f64, 0.5);
        assert!((want - 8.0 / 3.0).abs() < 1e-12);
        assert!(!est.diverged);
        assert!((est.value - want).abs() < 1e-8 * want, "got {}", est.value);
    }

    #[test]
    fn radial_divergence_flagged() {
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let est = integrate_radial(|_, omr| 1.0 / omr, &spec, &cfg()).unwrap();
        assert!(est.diverged, "log-divergent integrand must be flagged, got {est:?}");
    }

    #[test]
    fn sphere_samples_are_unit_and_deterministic() {
        let a = sample_sphere::<f64>(2, 1000, 42);
        let b = sample_sphere::<f64>(2, 1000, 42);
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.0, q.0);
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
        let c = sample_sphere::<f64>(2, 1000, 43);
        assert!(a[0].0 != c[0].0);
    }

    #[test]
    fn sphere_moments() {
        // E[zeta_1] = 0 and E[|zeta_1|^2] = 1/2 for N = 2.
        let pts = sample_sphere::<f64>(2, 100_000, 7);
        let m = pts.len() as f64;
        let mean_re: f64 = pts.iter().map(|p| p.0[0].re).sum::<f64>() / m;
        let mean_sq: f64 = pts.iter().map(|p| p.0[0].norm_sqr()).sum::<f64>() / m;
        assert!(mean_re.abs() < 0.01, "mean {mean_re}");
        assert!((mean_sq - 0.5).abs() < 0.01, "second moment {mean_sq}");
    }

    #[test]
    fn event_measure_disc_of_half_radius() {
        // v_0(|z| < 1/2) on the disc = 1/4.
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let mut c = cfg();
        c.mc_samples = 200_000;
        let est = estimate_event_measure(|z| z.norm() < 0.5, &spec, &c).unwrap();
        assert!(
            (est.value - 0.25).abs() < est.half_width + 0.005,
            "got {} +/- {}",
            est.value,
            est.half_width
        );
        let sure = estimate_event_measure(|_| true, &spec, &c).unwrap();
        assert!((sure.value - 1.0).abs() < 1e-3);
    }

    #[test]
    fn corona_event_on_sphere_is_full() {
        let spec = MeasureSpec::<f64>::sphere(1);
        let est = estimate_event_measure(
            |z| crate::ball::in_corona(z, 0.01, -1.0),
            &spec,
            &cfg(),
        )
        .unwrap();
        assert!(est.value > 0.999);
    }

    #[test]
    fn shell_restriction_matches_plain_estimator() {
        // Corona mass under v_0 on the disc: 1 - (1-h)^2, h = 0.05.
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let mut c = cfg();
        c.mc_samples = 100_000;
        let h = 0.05f64;
        let want = 1.0 - (1.0 - h) * (1.0 - h);
        let plain = estimate_event_measure(|z| 1.0 - z.norm() < h, &spec, &c).unwrap();
        let shell =
            estimate_event_measure_shell(|z| 1.0 - z.norm() < h, &spec, &c, 1.0 - h).unwrap();
        assert!((plain.value - want).abs() < plain.half_width + 1e-3);
        assert!((shell.value - want).abs() < 1e-6, "shell {} vs {want}", shell.value);
        assert!(shell.half_width < plain.half_width / 2.0);
    }

    #[test]
    fn space_integral_radial_oracle() {
        // f = |z|^2 on the disc with alpha = 0: 2 * int r^3 dr = 1/2.
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let mut c = cfg();
        c.mc_samples = 2000;
        let est = integrate_space(|z| z.norm_sqr(), &spec, &c).unwrap();
        assert!((est.value - 0.5).abs() < 1e-8, "got {}", est.value);

        let konst = integrate_space(|_| 3.25, &spec, &c).unwrap();
        assert!((konst.value - 3.25).abs() < 1e-9);
    }

    #[test]
    fn radial_sampler_matches_closed_form_cdf() {
        // N=1, alpha=0: F(r) = r^2.
        let spec = MeasureSpec::new(1, 0.0f64).unwrap();
        let sampler = RadialSampler::new(&spec, &cfg()).unwrap();
        for &r in &[0.1f64, 0.5, 0.9, 0.99, 0.9999] {
            let got = sampler.cdf_at(r);
            assert!((got - r * r).abs() < 1e-6, "cdf({r}) = {got}");
        }
        for &v in &[0.0f64, 0.3, 0.8, 0.999] {
            let (r, omr) = sampler.sample(v);
            assert!((r * r - v).abs() < 1e-5, "sample({v}) = {r}");
            assert!((1.0 - r - omr).abs() < 1e-12);
        }
    }

    #[test]
    fn config_kv_round_trip() {
        let mut c = QuadratureConfig::<f64>::default();
        c.apply_kv_text("seed=9\nsamples=123\nradial_nodes=24 # comment\n\n# full line\ntol=1e-6\n")
            .unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.mc_samples, 123);
        assert_eq!(c.radial_nodes, 24);
        assert!((c.norm_tol - 1e-6).abs() < 1e-18);
        assert!(c.apply_kv("bogus", "1").is_err());
    }
}
