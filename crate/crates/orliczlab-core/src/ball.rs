//! Geometry of the unit ball of C^N: points, the Hermitian inner product,
//! non-isotropic balls, coronas, approach regions, and ball automorphisms.

use num_complex::Complex;
use thiserror::Error;

use crate::scalar::Real;

/// Points with |z| closer to the sphere than this are treated as boundary
/// points; 1 - |z|^2 is dominated by cancellation below it.
pub const BOUNDARY_TOL: f64 = 1e-14;

#[derive(Debug, Error)]
pub enum BallError {
    #[error("expected a point of the open unit ball, got |z| = {0}")]
    NotInOpenBall(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("approach-region opening must exceed 1, got {0}")]
    BadOpening(f64),
    #[error("critical opening needs dimension N > 1, got {0}")]
    CriticalOpeningDimension(usize),
}

/// A point of C^N.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoint<T>(pub Vec<Complex<T>>);

impl<T: Real> CPoint<T> {
    pub fn new(coords: Vec<Complex<T>>) -> Self {
        CPoint(coords)
    }

    /// The origin of C^n.
    pub fn zero(n: usize) -> Self {
        CPoint(vec![Complex::new(T::zero(), T::zero()); n])
    }

    /// r * e_1 for a real scalar r.
    pub fn real_e1(n: usize, r: T) -> Self {
        let mut coords = vec![Complex::new(T::zero(), T::zero()); n];
        coords[0] = Complex::new(r, T::zero());
        CPoint(coords)
    }

    /// First coordinate unit vector.
    pub fn e1(n: usize) -> Self {
        Self::real_e1(n, T::one())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sqr(&self) -> T {
        self.0
            .iter()
            .fold(T::zero(), |acc, z| acc + z.re * z.re + z.im * z.im)
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        CPoint(self.0.iter().map(|z| Complex::new(z.re * s, z.im * s)).collect())
    }

    /// z / |z|; the origin is mapped to e_1.
    pub fn direction(&self) -> Self {
        let n = self.norm();
        if n < T::of(BOUNDARY_TOL) {
            Self::e1(self.dim())
        } else {
            self.scale(T::one() / n)
        }
    }

    pub fn in_open_ball(&self) -> bool {
        self.norm() < T::one()
    }

    pub fn in_closed_ball(&self) -> bool {
        self.norm() <= T::one() + T::of(BOUNDARY_TOL)
    }
}

/// Hermitian inner product <z, w> = sum z_i conj(w_i).
pub fn herm_inner<T: Real>(z: &CPoint<T>, w: &CPoint<T>) -> Complex<T> {
    debug_assert_eq!(z.dim(), w.dim());
    z.0.iter()
        .zip(&w.0)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj())
}

/// Membership in the non-isotropic ball {|1 - <z, zeta>| < h} anchored at a
/// unit-sphere point. The closed variant admits |z| = 1; the open one
/// requires z to lie in the open unit ball.
pub fn in_nonisotropic_ball<T: Real>(
    z: &CPoint<T>,
    zeta: &CPoint<T>,
    h: T,
    closed: bool,
) -> bool {
    debug_assert!((zeta.norm() - T::one()).abs() < T::of(1e-12), "anchor must be on the sphere");
    let near = (Complex::new(T::one(), T::zero()) - herm_inner(z, zeta)).norm() < h;
    if closed {
        near && z.in_closed_ball()
    } else {
        near && z.in_open_ball()
    }
}

/// Membership in the corona {1 - |z| < h}; the closed-ball variant (alpha = -1)
/// admits boundary points.
pub fn in_corona<T: Real>(z: &CPoint<T>, h: T, alpha: T) -> bool {
    let inside = if alpha == T::of(-1.0) { z.in_closed_ball() } else { z.in_open_ball() };
    inside && T::one() - z.norm() < h
}

/// Approach region at a boundary point: {|1 - <z, zeta>| < (a/2)(1 - |z|^2)}.
/// A Stolz domain when N = 1.
#[derive(Debug, Clone)]
pub struct KoranyiRegion<T> {
    pub vertex: CPoint<T>,
    pub opening: T,
}

impl<T: Real> KoranyiRegion<T> {
    pub fn new(vertex: CPoint<T>, opening: T) -> Result<Self, BallError> {
        if !(opening > T::one()) {
            return Err(BallError::BadOpening(opening.as_f64()));
        }
        Ok(KoranyiRegion { vertex: vertex.direction(), opening })
    }

    pub fn contains(&self, z: &CPoint<T>) -> bool {
        let lhs = (Complex::new(T::one(), T::zero()) - herm_inner(z, &self.vertex)).norm();
        let rhs = self.opening / T::of(2.0) * (T::one() - z.norm_sqr());
        lhs < rhs
    }
}

/// The opening below which approach-region containment forces the
/// order-boundedness integral through for every Orlicz function:
/// 1 / cos(pi/2 * (alpha+2)/(N+alpha+1)), defined for N > 1.
pub fn critical_opening<T: Real>(n: usize, alpha: T) -> Result<T, BallError> {
    if n <= 1 {
        return Err(BallError::CriticalOpeningDimension(n));
    }
    debug_assert!(alpha >= T::of(-1.0));
    let arg = T::FRAC_PI_2() * (alpha + T::of(2.0)) / (T::of_usize(n) + alpha + T::one());
    Ok(T::one() / arg.cos())
}

/// The involutive Moebius automorphism of the ball exchanging the origin and
/// `center`. Built from the orthogonal decomposition along `center`; a zero
/// center degenerates to the identity map.
#[derive(Debug, Clone)]
pub struct BallAutomorphism<T> {
    pub center: CPoint<T>,
}

impl<T: Real> BallAutomorphism<T> {
    pub fn new(center: CPoint<T>) -> Result<Self, BallError> {
        if center.norm() >= T::one() - T::of(BOUNDARY_TOL) {
            return Err(BallError::NotInOpenBall(center.norm().as_f64()));
        }
        Ok(BallAutomorphism { center })
    }

    pub fn eval(&self, z: &CPoint<T>) -> CPoint<T> {
        let a = &self.center;
        debug_assert_eq!(a.dim(), z.dim());
        let a_sqr = a.norm_sqr();
        if a_sqr < T::of(BOUNDARY_TOL) {
            return z.clone();
        }
        let one = Complex::new(T::one(), T::zero());
        let za = herm_inner(z, a);
        let s = (T::one() - a_sqr).sqrt();
        let proj = za / Complex::new(a_sqr, T::zero()); // <z,a>/|a|^2
        let denom = one - za;
        let coords = a
            .0
            .iter()
            .zip(&z.0)
            .map(|(ai, zi)| {
                let p = proj * ai; // projection of z onto the a-line
                let q = zi - p; // orthogonal complement
                (ai - p - q * s) / denom
            })
            .collect();
        CPoint(coords)
    }
}
