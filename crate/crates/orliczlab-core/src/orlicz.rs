//! The Orlicz-function catalog: forward evaluation (with saturating overflow),
//! log-domain evaluation, and inverses.
//!
//! Four families are supported, all strictly convex, vanishing at 0, and
//! super-linear at infinity:
//!
//! * `power:p`      — x^p, p > 1
//! * `exppow:a:b`   — exp(a x^b) - 1, a > 0, b >= 1
//! * `logpow:a:b`   — exp(a (log(1+x))^b) - 1, a > 0, b > 0
//! * `powlog:p:b`   — x^p (log(1+x))^b, p > 1, b > 0
//!
//! Fast-growing members overflow `f64` quickly, so every condition check in
//! this crate works with `log_eval` instead of raw values, and `eval` reports
//! overflow as a saturating value carrying the offending input rather than a
//! NaN.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum OrliczError {
    #[error("unknown Orlicz key `{0}` (expected power:p, exppow:a:b, logpow:a:b or powlog:p:b)")]
    UnknownKey(String),
    #[error("invalid Orlicz parameter: {0}")]
    BadParameter(String),
}

/// How `inverse` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InverseMode {
    ClosedForm,
    NumericBisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OrliczKind<T> {
    /// x^p
    Power { p: T },
    /// exp(a x^b) - 1
    ExpPower { a: T, b: T },
    /// exp(a (log(1+x))^b) - 1
    LogPower { a: T, b: T },
    /// x^p (log(1+x))^b
    PowerLog { p: T, b: T },
}

/// A catalog Orlicz function together with the cutoff `threshold` used by the
/// asymptotic ("x large enough") condition checks.
#[derive(Debug, Clone, Serialize)]
pub struct OrliczFunction<T> {
    pub kind: OrliczKind<T>,
    /// Lower end of the grid on which asymptotic conditions are certified.
    pub threshold: T,
    pub inverse_mode: InverseMode,
}

/// Result of a forward evaluation; overflow saturates instead of producing NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiValue<T> {
    Finite(T),
    Saturated { input: T },
}

impl<T: Real> PsiValue<T> {
    /// The value as a float, `+inf` when saturated. Monotone comparisons stay
    /// meaningful because saturation only happens past every finite value.
    pub fn as_float(&self) -> T {
        match self {
            PsiValue::Finite(v) => *v,
            PsiValue::Saturated { .. } => T::infinity(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PsiValue::Finite(_))
    }
}

/// ln(e^t - 1) without overflow, for t > 0.
fn ln_expm1<T: Real>(t: T) -> T {
    if t <= T::zero() {
        return T::neg_infinity();
    }
    if t < T::of(0.5) {
        t.exp_m1().ln()
    } else {
        t + (-(-t).exp()).ln_1p()
    }
}

/// ln(1 + e^t), stable for large positive t.
fn softplus<T: Real>(t: T) -> T {
    if t > T::of(40.0) {
        t
    } else {
        t.exp().ln_1p()
    }
}

impl<T: Real> OrliczFunction<T> {
    const DEFAULT_THRESHOLD: f64 = 10.0;

    pub fn power(p: T) -> Result<Self, OrliczError> {
        if !(p > T::one()) || !p.is_finite() {
            return Err(OrliczError::BadParameter(format!("power needs p > 1, got {p}")));
        }
        Ok(Self::with_kind(OrliczKind::Power { p }, InverseMode::ClosedForm))
    }

    pub fn exp_power(a: T, b: T) -> Result<Self, OrliczError> {
        if !(a > T::zero()) || !(b >= T::one()) {
            return Err(OrliczError::BadParameter(format!(
                "exppow needs a > 0 and b >= 1, got a={a}, b={b}"
            )));
        }
        Ok(Self::with_kind(OrliczKind::ExpPower { a, b }, InverseMode::ClosedForm))
    }

    pub fn log_power(a: T, b: T) -> Result<Self, OrliczError> {
        if !(a > T::zero()) || !(b > T::zero()) {
            return Err(OrliczError::BadParameter(format!(
                "logpow needs a > 0 and b > 0, got a={a}, b={b}"
            )));
        }
        Ok(Self::with_kind(OrliczKind::LogPower { a, b }, InverseMode::ClosedForm))
    }

    pub fn power_log(p: T, b: T) -> Result<Self, OrliczError> {
        if !(p > T::one()) || !(b > T::zero()) {
            return Err(OrliczError::BadParameter(format!(
                "powlog needs p > 1 and b > 0, got p={p}, b={b}"
            )));
        }
        Ok(Self::with_kind(OrliczKind::PowerLog { p, b }, InverseMode::NumericBisection))
    }

    fn with_kind(kind: OrliczKind<T>, inverse_mode: InverseMode) -> Self {
        OrliczFunction { kind, threshold: T::of(Self::DEFAULT_THRESHOLD), inverse_mode }
    }

    pub fn with_threshold(mut self, x0: T) -> Self {
        assert!(x0 > T::zero(), "threshold must be positive");
        self.threshold = x0;
        self
    }

    pub fn with_inverse_mode(mut self, mode: InverseMode) -> Self {
        self.inverse_mode = mode;
        self
    }

    /// ψ(x) with overflow reported as a saturating value.
    pub fn eval(&self, x: T) -> PsiValue<T> {
        debug_assert!(x >= T::zero() && x.is_finite(), "psi argument must be finite and >= 0");
        if x == T::zero() {
            return PsiValue::Finite(T::zero());
        }
        let v = match self.kind {
            OrliczKind::Power { p } => x.powf(p),
            OrliczKind::ExpPower { a, b } => {
                let t = a * x.powf(b);
                if t > T::of(700.0) {
                    T::infinity()
                } else {
                    t.exp_m1()
                }
            }
            OrliczKind::LogPower { a, b } => {
                let t = a * x.ln_1p().powf(b);
                if t > T::of(700.0) {
                    T::infinity()
                } else {
                    t.exp_m1()
                }
            }
            OrliczKind::PowerLog { p, b } => x.powf(p) * x.ln_1p().powf(b),
        };
        if v.is_finite() {
            PsiValue::Finite(v)
        } else {
            PsiValue::Saturated { input: x }
        }
    }

    /// ψ(x) as a plain float, `+inf` on overflow.
    pub fn eval_f(&self, x: T) -> T {
        self.eval(x).as_float()
    }

    /// ln ψ(x), finite for every x > 0 expressible in the scalar type.
    /// This is the workhorse of the growth-condition checks.
    pub fn log_eval(&self, x: T) -> T {
        if x <= T::zero() {
            return T::neg_infinity();
        }
        match self.kind {
            OrliczKind::Power { p } => p * x.ln(),
            OrliczKind::ExpPower { a, b } => ln_expm1(a * x.powf(b)),
            OrliczKind::LogPower { a, b } => ln_expm1(a * x.ln_1p().powf(b)),
            OrliczKind::PowerLog { p, b } => p * x.ln() + b * x.ln_1p().ln(),
        }
    }

    /// ψ⁻¹(y) for y ≥ 0, with relative error below 1e-10 on the bisection path.
    pub fn inverse(&self, y: T) -> T {
        debug_assert!(y >= T::zero(), "psi inverse argument must be >= 0");
        if y == T::zero() {
            return T::zero();
        }
        match self.inverse_mode {
            InverseMode::ClosedForm => self.inverse_closed(y.ln()),
            InverseMode::NumericBisection => self.inverse_bisect(y.ln()),
        }
    }

    /// ψ⁻¹(exp(ln_y)); lets callers form ψ⁻¹ of huge arguments like
    /// (1-|z|)^{-γ} without overflowing the argument itself.
    pub fn inverse_log_arg(&self, ln_y: T) -> T {
        if ln_y == T::neg_infinity() {
            return T::zero();
        }
        match self.inverse_mode {
            InverseMode::ClosedForm => self.inverse_closed(ln_y),
            InverseMode::NumericBisection => self.inverse_bisect(ln_y),
        }
    }

    fn inverse_closed(&self, ln_y: T) -> T {
        match self.kind {
            OrliczKind::Power { p } => (ln_y / p).exp(),
            OrliczKind::ExpPower { a, b } => (softplus(ln_y) / a).powf(T::one() / b),
            OrliczKind::LogPower { a, b } => {
                let t = (softplus(ln_y) / a).powf(T::one() / b);
                if t > T::of(700.0) {
                    T::infinity()
                } else {
                    t.exp_m1()
                }
            }
            OrliczKind::PowerLog { .. } => self.inverse_bisect(ln_y),
        }
    }

    fn inverse_bisect(&self, ln_y: T) -> T {
        // log_eval is strictly increasing; bracket then bisect in ln x.
        let mut lo = T::one();
        let mut hi = T::one();
        let four = T::of(4.0);
        if self.log_eval(T::one()) < ln_y {
            while self.log_eval(hi) < ln_y {
                hi = hi * four;
                if hi > T::of(1e300) {
                    return T::infinity();
                }
            }
            lo = hi / four;
        } else {
            while self.log_eval(lo) >= ln_y {
                lo = lo / four;
                if lo < T::of(1e-300) {
                    return T::zero();
                }
            }
            hi = lo * four;
        }
        let (mut llo, mut lhi) = (lo.ln(), hi.ln());
        let tol = T::of(1e-12);
        for _ in 0..200 {
            if lhi - llo <= tol {
                break;
            }
            let mid = (llo + lhi) / T::of(2.0);
            if self.log_eval(mid.exp()) < ln_y {
                llo = mid;
            } else {
                lhi = mid;
            }
        }
        ((llo + lhi) / T::of(2.0)).exp()
    }

    /// Canonical string key, e.g. `power:2` or `exppow:1:1`.
    pub fn key(&self) -> String {
        format!("{self}")
    }
}

impl<T: Real> fmt::Display for OrliczFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrliczKind::Power { p } => write!(f, "power:{p}"),
            OrliczKind::ExpPower { a, b } => write!(f, "exppow:{a}:{b}"),
            OrliczKind::LogPower { a, b } => write!(f, "logpow:{a}:{b}"),
            OrliczKind::PowerLog { p, b } => write!(f, "powlog:{p}:{b}"),
        }
    }
}

impl<T: Real> FromStr for OrliczFunction<T> {
    type Err = OrliczError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |tok: &str| -> Result<T, OrliczError> {
            tok.parse::<f64>()
                .map(T::of)
                .map_err(|_| OrliczError::BadParameter(format!("`{tok}` in `{s}` is not a number")))
        };
        match (parts.as_slice(), parts.len()) {
            ([kind, p], 2) if *kind == "power" => Self::power(num(p)?),
            ([kind, a, b], 3) if *kind == "exppow" => Self::exp_power(num(a)?, num(b)?),
            ([kind, a, b], 3) if *kind == "logpow" => Self::log_power(num(a)?, num(b)?),
            ([kind, p, b], 3) if *kind == "powlog" => Self::power_log(num(p)?, num(b)?),
            _ => Err(OrliczError::UnknownKey(s.to_string())),
        }
    }
}
