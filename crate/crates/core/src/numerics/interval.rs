use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::ops::AssignRound;
use rug::Float;

use crate::error::{Error, Result};

/// A closed real interval `[lo, hi]` with MPFR endpoints.
///
/// All arithmetic rounds the lower endpoint down and the upper endpoint up,
/// so the result of an operation always contains the exact result for every
/// choice of operands. Operations between intervals of different precision
/// run at the larger of the two precisions.
///
/// Division by an interval containing zero, and any other operation without a
/// finite enclosure, yields the unbounded interval `[-inf, +inf]`; callers
/// detect this with [`Interval::is_bounded`].
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn round_to<T>(prec: u32, val: T, round: Round) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, round).0
}

fn down<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    round_to(prec, val, Round::Down)
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    round_to(prec, val, Round::Up)
}

fn min_of(values: [Float; 4]) -> Float {
    let [a, b, c, d] = values;
    a.min(&b).min(&c).min(&d)
}

fn max_of(values: [Float; 4]) -> Float {
    let [a, b, c, d] = values;
    a.max(&b).max(&c).max(&d)
}

impl Interval {
    /// Builds `[lo, hi]`.
    ///
    /// Panics if either endpoint is NaN or `lo > hi`.
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(
            !lo.is_nan() && !hi.is_nan() && lo <= hi,
            "invalid interval endpoints [{lo}, {hi}]"
        );
        Self { lo, hi }
    }

    /// Like [`Interval::new`] but reports invalid endpoints instead of panicking.
    pub fn try_new(lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Validation(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Float) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::point(Float::with_val(prec.max(53), x))
    }

    pub fn from_int(k: i64, prec: u32) -> Self {
        Self {
            lo: down(prec, k),
            hi: up(prec, k),
        }
    }

    /// Enclosure of the rational `num / den`.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_int(num, prec) / Self::from_int(den, prec)
    }

    /// Parses a decimal (or `1e-5` style) literal into its tightest
    /// outward-rounded enclosure.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let text = text.trim();
        let lo = Float::parse(text)
            .map_err(|e| Error::InvalidArgument(format!("`{text}` is not a decimal: {e}")))?;
        let hi = Float::parse(text)
            .map_err(|e| Error::InvalidArgument(format!("`{text}` is not a decimal: {e}")))?;
        let lo = down(prec, lo);
        let hi = up(prec, hi);
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!("`{text}` is not finite")));
        }
        Ok(Self { lo, hi })
    }

    pub fn entire(prec: u32) -> Self {
        Self {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn pi(prec: u32) -> Self {
        Self {
            lo: down(prec, Constant::Pi),
            hi: up(prec, Constant::Pi),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Width `hi - lo`, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_round(Round::Up)
    }

    /// A representable point inside the interval, close to the centre.
    pub fn midpoint(&self) -> Float {
        let prec = self.prec();
        if !self.is_bounded() {
            if self.lo.is_finite() {
                return self.lo.clone();
            }
            if self.hi.is_finite() {
                return self.hi.clone();
            }
            return Float::with_val(prec, 0);
        }
        let mut m = round_to(prec, &self.lo + &self.hi, Round::Nearest);
        m /= 2;
        // clamp against rounding outside a very narrow interval
        m.max(&self.lo).min(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Outward conversion to a pair of `f64` bounds.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.to_f64_round(Round::Down),
            self.hi.to_f64_round(Round::Up),
        )
    }

    /// Largest absolute value in the interval, rounded up.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        a.max(&b)
    }

    pub fn contains(&self, x: &Float) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo <= x && self.hi >= x
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(&other.lo);
        let hi = self.hi.clone().min(&other.hi);
        (lo <= hi).then(|| Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(&other.lo),
            hi: self.hi.clone().max(&other.hi),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0
    }

    /// Every element of `self` is strictly below every element of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        other.certainly_lt(self)
    }

    /// Splits at the midpoint. Both halves share the midpoint endpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Interval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    /// Widens the interval by `eps` on both sides.
    pub fn inflate(&self, eps: &Interval) -> Interval {
        let prec = self.prec().max(eps.prec());
        let e = eps.mag();
        Interval {
            lo: down(prec, &self.lo - &e),
            hi: up(prec, &self.hi + &e),
        }
    }

    /// Returns the same enclosure carried at (at least) `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Interval {
        Interval {
            lo: down(prec, &self.lo),
            hi: up(prec, &self.hi),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self.clone()
        } else {
            Interval {
                lo: Float::with_val(self.prec(), 0),
                hi: self.mag(),
            }
        }
    }

    /// Interval square; never negative.
    pub fn sqr(&self) -> Interval {
        let prec = self.prec();
        if !self.is_bounded() {
            return Interval {
                lo: Float::with_val(prec, 0),
                hi: Float::with_val(prec, Special::Infinity),
            };
        }
        if self.lo >= 0 {
            Interval {
                lo: down(prec, self.lo.square_ref()),
                hi: up(prec, self.hi.square_ref()),
            }
        } else if self.hi <= 0 {
            Interval {
                lo: down(prec, self.hi.square_ref()),
                hi: up(prec, self.lo.square_ref()),
            }
        } else {
            let m = self.mag();
            Interval {
                lo: Float::with_val(prec, 0),
                hi: up(prec, m.square_ref()),
            }
        }
    }

    /// Integer power with the correct even-power behaviour.
    pub fn powi(&self, k: u32) -> Interval {
        match k {
            0 => Interval::one(self.prec()),
            1 => self.clone(),
            _ if k.is_multiple_of(2) => self.sqr().powi(k / 2),
            _ => {
                // odd powers are monotone; raise each endpoint separately
                let end = |x: &Float| {
                    let a = Interval::point(x.clone()).abs();
                    let p = a.clone() * a.sqr().powi(k / 2);
                    if x.is_sign_negative() {
                        -p
                    } else {
                        p
                    }
                };
                Interval {
                    lo: end(&self.lo).lo,
                    hi: end(&self.hi).hi,
                }
            }
        }
    }

    pub fn recip(&self) -> Interval {
        Interval::one(self.prec()) / self.clone()
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0 {
            return Err(Error::Domain(format!("sqrt of {self}")));
        }
        let prec = self.prec();
        Ok(Interval {
            lo: down(prec, self.lo.sqrt_ref()),
            hi: up(prec, self.hi.sqrt_ref()),
        })
    }

    pub fn cbrt(&self) -> Interval {
        let prec = self.prec();
        Interval {
            lo: down(prec, self.lo.cbrt_ref()),
            hi: up(prec, self.hi.cbrt_ref()),
        }
    }

    pub fn exp(&self) -> Interval {
        let prec = self.prec();
        Interval {
            lo: down(prec, self.lo.exp_ref()),
            hi: up(prec, self.hi.exp_ref()),
        }
    }

    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0 {
            return Err(Error::Domain(format!("ln of {self}")));
        }
        let prec = self.prec();
        Ok(Interval {
            lo: down(prec, self.lo.ln_ref()),
            hi: up(prec, self.hi.ln_ref()),
        })
    }

    pub fn acosh(&self) -> Result<Interval> {
        if self.lo < 1 {
            return Err(Error::Domain(format!("arccosh of {self}")));
        }
        let prec = self.prec();
        Ok(Interval {
            lo: down(prec, self.lo.acosh_ref()),
            hi: up(prec, self.hi.acosh_ref()),
        })
    }

    pub fn cosh(&self) -> Interval {
        let prec = self.prec();
        let a = self.abs();
        Interval {
            lo: down(prec, a.lo.cosh_ref()),
            hi: up(prec, a.hi.cosh_ref()),
        }
    }

    /// Interval sine, exact at the extrema `π/2 + kπ` contained in the input.
    pub fn sin(&self) -> Interval {
        let prec = self.prec();
        if !self.is_bounded() || self.width() >= 7 {
            return Interval::from_int(-1, prec).hull(&Interval::one(prec));
        }
        let s_lo = Interval {
            lo: down(prec, self.lo.sin_ref()),
            hi: up(prec, self.lo.sin_ref()),
        };
        let s_hi = Interval {
            lo: down(prec, self.hi.sin_ref()),
            hi: up(prec, self.hi.sin_ref()),
        };
        let mut out = s_lo.hull(&s_hi);
        // extrema at x = π/2 + kπ; k ranges over a conservative window
        let half_pi = Interval::pi(prec) / Interval::from_int(2, prec);
        let pi = Interval::pi(prec);
        let k_lo = ((self.lo.to_f64() - std::f64::consts::FRAC_PI_2) / std::f64::consts::PI).floor()
            as i64
            - 1;
        let k_hi = ((self.hi.to_f64() - std::f64::consts::FRAC_PI_2) / std::f64::consts::PI).ceil()
            as i64
            + 1;
        for k in k_lo..=k_hi {
            let crit = half_pi.clone() + Interval::from_int(k, prec) * pi.clone();
            if crit.intersects(self) {
                let v = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                out = out.hull(&Interval::from_int(v, prec));
            }
        }
        out
    }

    /// Decimal rendering of the lower endpoint, rounded down.
    pub fn lo_decimal(&self, digits: usize) -> String {
        to_plain_decimal(&self.lo, digits, Round::Down)
    }

    /// Decimal rendering of the upper endpoint, rounded up.
    pub fn hi_decimal(&self, digits: usize) -> String {
        to_plain_decimal(&self.hi, digits, Round::Up)
    }

    /// Number of significant decimal digits that faithfully represent the
    /// working precision.
    pub fn decimal_digits(&self) -> usize {
        (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

/// Formats `x` with `digits` significant digits in positional notation,
/// rounding in the requested direction.
pub fn to_plain_decimal(x: &Float, digits: usize, round: Round) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.to_string();
    }
    if x.is_zero() {
        return "0".to_string();
    }
    let raw = x.to_string_radix_round(10, Some(digits.max(1)), round);
    let (mantissa, exponent) = match raw.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (raw.clone(), 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa.as_str(), ""));
    let digits_all: String = format!("{int_part}{frac_part}");
    // position of the decimal point relative to the start of `digits_all`
    let point = int_part.len() as i64 + exponent;
    let mut out = String::new();
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits_all);
    } else if point as usize >= digits_all.len() {
        out.push_str(&digits_all);
        out.extend(std::iter::repeat_n('0', point as usize - digits_all.len()));
    } else {
        out.push_str(&digits_all[..point as usize]);
        out.push('.');
        out.push_str(&digits_all[point as usize..]);
    }
    let out = if out.contains('.') {
        let trimmed = out.trim_end_matches('0');
        trimmed.strip_suffix('.').unwrap_or(trimmed).to_string()
    } else {
        out
    };
    let out = out.trim_start_matches('0');
    let out = if out.is_empty() || out.starts_with('.') {
        format!("0{out}")
    } else {
        out.to_string()
    };
    if negative {
        format!("-{out}")
    } else {
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        write!(
            f,
            "[{}, {}]",
            self.lo_decimal(digits),
            self.hi_decimal(digits)
        )
    }
}

fn sanitize(lo: Float, hi: Float, prec: u32) -> Interval {
    if lo.is_nan() || hi.is_nan() {
        Interval::entire(prec)
    } else {
        Interval { lo, hi }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        &self + &rhs
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        sanitize(
            down(prec, &self.lo + &rhs.lo),
            up(prec, &self.hi + &rhs.hi),
            prec,
        )
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        &self - &rhs
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        sanitize(
            down(prec, &self.lo - &rhs.hi),
            up(prec, &self.hi - &rhs.lo),
            prec,
        )
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -self.clone()
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        &self * &rhs
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        let (a, b) = (self, rhs);
        if a.lo >= 0 && b.lo >= 0 {
            return sanitize(down(prec, &a.lo * &b.lo), up(prec, &a.hi * &b.hi), prec);
        }
        if a.hi <= 0 && b.hi <= 0 {
            return sanitize(down(prec, &a.hi * &b.hi), up(prec, &a.lo * &b.lo), prec);
        }
        let lo = min_of([
            down(prec, &a.lo * &b.lo),
            down(prec, &a.lo * &b.hi),
            down(prec, &a.hi * &b.lo),
            down(prec, &a.hi * &b.hi),
        ]);
        let hi = max_of([
            up(prec, &a.lo * &b.lo),
            up(prec, &a.lo * &b.hi),
            up(prec, &a.hi * &b.lo),
            up(prec, &a.hi * &b.hi),
        ]);
        sanitize(lo, hi, prec)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        &self / &rhs
    }
}

impl Div for &Interval {
    type Output = Interval;
    fn div(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        if rhs.contains_zero() || !rhs.is_bounded() || !self.is_bounded() {
            return Interval::entire(prec);
        }
        let (a, b) = (self, rhs);
        let lo = min_of([
            down(prec, &a.lo / &b.lo),
            down(prec, &a.lo / &b.hi),
            down(prec, &a.hi / &b.lo),
            down(prec, &a.hi / &b.hi),
        ]);
        let hi = max_of([
            up(prec, &a.lo / &b.lo),
            up(prec, &a.lo / &b.hi),
            up(prec, &a.hi / &b.lo),
            up(prec, &a.hi / &b.hi),
        ]);
        sanitize(lo, hi, prec)
    }
}

impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let digits = self.decimal_digits();
        let mut s = serializer.serialize_struct("Interval", 2)?;
        s.serialize_field("lo", &self.lo_decimal(digits))?;
        s.serialize_field("hi", &self.hi_decimal(digits))?;
        s.end()
    }
}

/// Precision used when reading enclosures back from decimal strings.
pub const DESERIALIZE_PRECISION: u32 = 128;

impl<'de> serde::Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            lo: String,
            hi: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let lo =
            Interval::parse(&raw.lo, DESERIALIZE_PRECISION).map_err(serde::de::Error::custom)?;
        let hi =
            Interval::parse(&raw.hi, DESERIALIZE_PRECISION).map_err(serde::de::Error::custom)?;
        Interval::try_new(lo.lo, hi.hi).map_err(serde::de::Error::custom)
    }
}
