//! The rational integrands and the closed-form derivative factors, written
//! once over [`Real`] so they serve both interval and Taylor evaluation.

use crate::numerics::{horner, IntPoly, Interval, Real, RealFn};

/// `z⁴ + 4z² − 1`, the common factor whose root is `z0`.
pub const P: [i64; 5] = [-1, 0, 4, 0, 1];
/// `z⁸ + 6z⁶ + 32z⁴ + 10z² − 1`, numerator of `f''`.
pub const G: [i64; 9] = [-1, 0, 10, 0, 32, 0, 6, 0, 1];
/// `z¹² − 4z¹⁰ + 17z⁸ − 248z⁶ + 203z⁴ − 36z² + 3`, numerator of `f̃''`.
pub const Q: [i64; 13] = [3, 0, -36, 0, 203, 0, -248, 0, 17, 0, -4, 0, 1];
/// `q(√z)`.
pub const R: [i64; 7] = [3, -36, 203, -248, 17, -4, 1];
/// `z⁴ − 6z² + 1 = (z² + 2z − 1)(z² − 2z − 1)`.
pub const QUARTIC: [i64; 5] = [1, 0, -6, 0, 1];

const F_NUM: [i64; 5] = [1, 4, 6, 0, 1];
const FT_NUM: [i64; 7] = [1, -4, -9, 12, 7, 0, 1];

pub fn p_poly() -> IntPoly {
    IntPoly::new(P.to_vec())
}

pub fn g_poly() -> IntPoly {
    IntPoly::new(G.to_vec())
}

pub fn r_poly() -> IntPoly {
    IntPoly::new(R.to_vec())
}

fn z_plus_one<T: Real>(z: &T) -> T {
    horner(z, &[1, 1])
}

fn z_sq_plus_one<T: Real>(z: &T) -> T {
    horner(z, &[1, 0, 1])
}

/// `F(z) = −(z⁴ + 6z² + 4z + 1) / ((z + 1)(z² + 1)²)`.
#[derive(Clone, Debug)]
pub struct InnerF;

impl RealFn for InnerF {
    fn apply<T: Real>(&self, z: &T) -> T {
        let s = z_sq_plus_one(z);
        -(horner(z, &F_NUM) / (z_plus_one(z) * s.clone() * s))
    }
}

/// `F̃(z) = −(z⁶ + 7z⁴ + 12z³ − 9z² − 4z + 1) / ((z + 1)(z² + 1)(z⁴ − 6z² + 1))`.
#[derive(Clone, Debug)]
pub struct InnerFtilde;

impl RealFn for InnerFtilde {
    fn apply<T: Real>(&self, z: &T) -> T {
        let den = z_plus_one(z) * z_sq_plus_one(z) * horner(z, &QUARTIC);
        -(horner(z, &FT_NUM) / den)
    }
}

/// `l(z) = c z²(z² − 3) p(z) / (2 (z⁴ − 6z² + 1)(z² + 1)²)`.
#[derive(Clone, Debug)]
pub struct LowerIntegrand {
    pub c: Interval,
}

impl RealFn for LowerIntegrand {
    fn apply<T: Real>(&self, z: &T) -> T {
        let s = z_sq_plus_one(z);
        let num = z.constant(&self.c) * horner(z, &[0, 0, -3, 0, 1]) * horner(z, &P);
        let den = z.int(2) * horner(z, &QUARTIC) * s.clone() * s;
        num / den
    }
}

/// `u(z) = c z² p(z) / (2 (z² + 1)³)`.
#[derive(Clone, Debug)]
pub struct UpperIntegrand {
    pub c: Interval,
}

impl RealFn for UpperIntegrand {
    fn apply<T: Real>(&self, z: &T) -> T {
        let s = z_sq_plus_one(z);
        let num = z.constant(&self.c) * z.clone() * z.clone() * horner(z, &P);
        let den = z.int(2) * s.clone() * s.clone() * s;
        num / den
    }
}

/// Rational factor of `f'`: `−2c z p / ((z + 1)(z² + 1)²)`.
pub fn f_prime_factor(c: &Interval, z: &Interval) -> Interval {
    let s = z_sq_plus_one(z);
    let num = Interval::from_int(-2, z.prec()) * c.clone() * z.clone() * horner(z, &P);
    num / (z_plus_one(z) * s.clone() * s)
}

/// Rational factor of `f̃'`: `−2c z (z² − 3) p / ((z + 1)(z² + 1)(z⁴ − 6z² + 1))`.
pub fn ftilde_prime_factor(c: &Interval, z: &Interval) -> Interval {
    let num = Interval::from_int(-2, z.prec())
        * c.clone()
        * z.clone()
        * horner(z, &[-3, 0, 1])
        * horner(z, &P);
    num / (z_plus_one(z) * z_sq_plus_one(z) * horner(z, &QUARTIC))
}

/// Rational factor of `f''`: `−2c g / ((z + 1)(z² + 1)⁴)`.
pub fn f_second_factor(c: &Interval, z: &Interval) -> Interval {
    let num = Interval::from_int(-2, z.prec()) * c.clone() * horner(z, &G);
    num / (z_plus_one(z) * z_sq_plus_one(z).powi(4))
}

/// Rational factor of `f̃''`: `−2c q / ((z + 1)(z² + 1)²(z⁴ − 6z² + 1)²)`.
pub fn ftilde_second_factor(c: &Interval, z: &Interval) -> Interval {
    let num = Interval::from_int(-2, z.prec()) * c.clone() * horner(z, &Q);
    num / (z_plus_one(z) * z_sq_plus_one(z).sqr() * horner(z, &QUARTIC).sqr())
}
