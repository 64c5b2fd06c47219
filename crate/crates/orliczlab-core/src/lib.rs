//! Numerical calculus for Orlicz functions, Luxemburg norms on weighted
//! Bergman-Orlicz and Hardy-Orlicz spaces of the unit ball of C^N, and
//! composition-operator diagnostics (boundedness, compactness,
//! order-boundedness, essential norms, Carleson-type measure criteria,
//! approach-region geometry).
//!
//! All numeric kernels are generic over the scalar type through
//! [`scalar::Real`]; the aliases below fix `f64`, which the default
//! tolerances are calibrated for.

pub mod ball;
pub mod growth;
pub mod integrate;
pub mod orlicz;
pub mod scalar;
pub mod special;

pub use ball::{BallAutomorphism, CPoint, KoranyiRegion};
pub use growth::{check_growth_class, equivalent_orlicz, ConditionVerdict, GridSpec};
pub use integrate::{IntegralEstimate, MeasureSpec, QuadratureConfig};
pub use orlicz::{InverseMode, OrliczFunction, OrliczKind, PsiValue};
pub use scalar::Real;

/// `f64` instantiations of the core types.
pub type Orlicz = OrliczFunction<f64>;
pub type Point = CPoint<f64>;
pub type Region = KoranyiRegion<f64>;
pub type Measure = MeasureSpec<f64>;
pub type QuadConfig = QuadratureConfig<f64>;
pub type Complex64 = num_complex::Complex<f64>;
