//! Rigorous interval numerics: outward-rounded arithmetic, sign certification
//! by bisection, certified quadrature and certified inversion of monotone
//! functions.

mod constants;
mod interval;
mod invert;
mod jet;
mod poly;
mod quadrature;
mod sign;

pub use constants::{sqrt_int, two_v3, v3, v8};
pub use interval::{to_plain_decimal, Interval, DESERIALIZE_PRECISION};
pub use invert::invert_monotone;
pub use jet::{horner, Jet, Real};
pub use poly::IntPoly;
pub use quadrature::{integrate_enclosure, Quadrature, TaylorAntiderivative};
pub use sign::{certify_sign, Sign, SignCertificate};

use serde::Serialize;

use crate::error::{Error, Result};

/// Tunable parameters shared by every certified computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Settings {
    /// Working precision in bits.
    pub precision_bits: u32,
    /// Target width of quadrature enclosures.
    pub quad_tol: f64,
    /// Target width of inverse-function enclosures.
    pub invert_tol: f64,
    /// Maximum bisection depth in sign certification.
    pub sign_depth: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            precision_bits: 60,
            quad_tol: 1e-9,
            invert_tol: 1e-9,
            sign_depth: 40,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 53 {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least 53 bits, got {}",
                self.precision_bits
            )));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol.is_finite()) {
            return Err(Error::InvalidArgument("quad_tol must be positive".into()));
        }
        if !(self.invert_tol > 0.0 && self.invert_tol.is_finite()) {
            return Err(Error::InvalidArgument("invert_tol must be positive".into()));
        }
        if self.sign_depth == 0 || self.sign_depth > 64 {
            return Err(Error::InvalidArgument(
                "sign_depth must lie in 1..=64".into(),
            ));
        }
        Ok(())
    }

    pub fn prec(&self) -> u32 {
        self.precision_bits
    }
}

/// A real function with an interval extension.
///
/// `eval` must return an enclosure of `{g(x) : x in X}`. Functions that can
/// also produce Taylor coefficients enclosing the derivatives over `X`
/// override `taylor`; the quadrature then uses high-order Taylor models
/// instead of first-order bounds.
pub trait EnclosureFunction {
    fn eval(&self, x: &Interval) -> Interval;

    fn taylor(&self, _x: &Interval, _order: usize) -> Option<Jet> {
        None
    }
}

impl<T: EnclosureFunction + ?Sized> EnclosureFunction for &T {
    fn eval(&self, x: &Interval) -> Interval {
        (**self).eval(x)
    }
    fn taylor(&self, x: &Interval, order: usize) -> Option<Jet> {
        (**self).taylor(x, order)
    }
}

/// A function written once over [`Real`], usable with intervals and jets.
pub trait RealFn {
    fn apply<T: Real>(&self, x: &T) -> T;
}

/// Adapts a [`RealFn`] into an [`EnclosureFunction`] with Taylor support.
#[derive(Clone, Debug)]
pub struct Analytic<R>(pub R);

impl<R: RealFn> EnclosureFunction for Analytic<R> {
    fn eval(&self, x: &Interval) -> Interval {
        self.0.apply(x)
    }
    fn taylor(&self, x: &Interval, order: usize) -> Option<Jet> {
        Some(self.0.apply(&Jet::variable(x, order)))
    }
}

/// Adapts a closure computing an interval extension.
pub struct Pointwise<F>(pub F);

impl<F: Fn(&Interval) -> Interval> EnclosureFunction for Pointwise<F> {
    fn eval(&self, x: &Interval) -> Interval {
        (self.0)(x)
    }
}
