//! Scalar abstraction for the numeric kernels.
//!
//! Everything downstream is generic over [`Real`], which is any IEEE float
//! with the full `num_traits::Float` surface. The crate root exports `f64`
//! aliases; `f32` works too but the default tolerances assume `f64`.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, NumCast};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64` (exact for `f64`).
    fn of(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 -> Real conversion")
    }

    /// Conversion from an index/count.
    fn of_usize(n: usize) -> Self {
        Self::of(n as f64)
    }

    /// Widening conversion to `f64` (exact for `f32` and `f64`).
    fn as_f64(self) -> f64 {
        <f64 as NumCast>::from(self).expect("Real -> f64 conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Midpoint on the logarithmic scale; both arguments must be positive.
pub fn geometric_mid<T: Real>(lo: T, hi: T) -> T {
    ((lo.ln() + hi.ln()) / T::of(2.0)).exp()
}

/// Geometric grid with `points` entries covering `[lo, hi]`, endpoints included.
pub fn geometric_grid<T: Real>(lo: T, hi: T, points: usize) -> Vec<T> {
    assert!(points >= 2, "geometric grid needs at least two points");
    assert!(lo > T::zero() && hi > lo, "geometric grid needs 0 < lo < hi");
    let (llo, lhi) = (lo.ln(), hi.ln());
    let step = (lhi - llo) / T::of_usize(points - 1);
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                (llo + step * T::of_usize(i)).exp()
            }
        })
        .collect()
}

/// Uniform grid with `points` entries covering `[lo, hi]`, endpoints included.
pub fn linear_grid<T: Real>(lo: T, hi: T, points: usize) -> Vec<T> {
    assert!(points >= 2);
    let step = (hi - lo) / T::of_usize(points - 1);
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * T::of_usize(i) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_grid_hits_endpoints() {
        let g = geometric_grid(1.0f64, 1e6, 7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[6], 1e6);
        for w in g.windows(2) {
            assert!((w[1] / w[0] - 10.0).abs() < 1e-9);
        }
    }

    #[test]
    fn geometric_mid_is_logarithmic() {
        let m = geometric_mid(1.0f64, 100.0);
        assert!((m - 10.0).abs() < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        let g = geometric_grid(1.0f32, 100.0, 3);
        assert!((g[1] - 10.0).abs() < 1e-4);
    }
}
