//! Tube radii about the singular locus, the drilling volume ratio, and the
//! table of orbifold volume lower bounds built from them.

use std::fmt;
use std::ops::RangeInclusive;

use rug::float::Round;
use rug::Float;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{
    certify_sign, sqrt_int, two_v3, v8, Interval, Pointwise, Settings, SignCertificate,
};

/// Cusped-volume thresholds used as table multipliers.
pub const MULTIPLIER_2568: &str = "2.568";
pub const MULTIPLIER_2848: &str = "2.848";
/// Five-digit truncation of V8; kept as a diagnostic column.
pub const MULTIPLIER_36638: &str = "3.6638";
/// Multiplier that reproduces the reference first column for n ≥ 9.
pub const MULTIPLIER_256: &str = "2.56";

/// Reference volumes of the figure-8 orbifolds for n = 4..=11.
const VOL_PN_REFERENCE: [(u32, &str); 8] = [
    (4, "0.50747"),
    (5, "0.93720"),
    (6, "1.22128"),
    (7, "1.41175"),
    (8, "1.54386"),
    (9, "1.63860"),
    (10, "1.70857"),
    (11, "1.76158"),
];

fn check_n(n: u32) -> Result<()> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "torsion order must be at least 4, got {n}"
        )));
    }
    Ok(())
}

fn literal(text: &str, prec: u32) -> Interval {
    Interval::parse(text, prec).expect("literal decimal")
}

/// `-1 + 1 / (2 sin²(π/n))`.
fn sine_formula(n: u32, prec: u32) -> Interval {
    let angle = Interval::pi(prec) / Interval::from_int(n as i64, prec);
    let s2 = angle.sin().sqr();
    Interval::one(prec) / (Interval::from_int(2, prec) * s2) - Interval::one(prec)
}

/// Lower bound for `cosh 2δ` between singular axes of torsion order `n`.
pub fn x_value(n: u32, prec: u32) -> Result<Interval> {
    check_n(n)?;
    Ok(match n {
        4 => {
            let half = Interval::ratio(1, 2, prec);
            half.clone() + half * sqrt_int(3, prec)
        }
        5 => literal("1.84028", prec),
        6 => literal("2.41383", prec),
        7 => literal("2.65579", prec),
        _ => sine_formula(n, prec),
    })
}

/// `cosh b(n)`, the minimal axial distance bound.
pub fn cosh_axial_distance(n: u32, prec: u32) -> Result<Interval> {
    check_n(n)?;
    match n {
        5 => Ok(Interval::one(prec) + sqrt_int(5, prec) / Interval::from_int(5, prec)),
        6 => Ok(Interval::from_int(2, prec)),
        7 => Ok(sine_formula(7, prec)),
        _ => x_value(n, prec),
    }
}

pub fn tube_radius(n: u32, prec: u32) -> Result<Interval> {
    Ok(x_value(n, prec)?.acosh()? / Interval::from_int(2, prec))
}

/// `(x² − 1)^{3/2} / x³ · (1 + 0.91/x)^{-1}` evaluated at an enclosure of `x`.
pub fn drill_ratio_at(x: &Interval) -> Result<Interval> {
    let prec = x.prec();
    let s = x.sqr() - Interval::one(prec);
    let num = s.sqrt()? * s;
    let c = literal("0.91", prec);
    let den = x.sqr() * (x + &c);
    let r = num / den;
    if !r.is_bounded() {
        return Err(Error::Domain(format!("drilling ratio undefined at {x}")));
    }
    Ok(r)
}

pub fn drill_ratio(n: u32, prec: u32) -> Result<Interval> {
    drill_ratio_at(&x_value(n, prec)?)
}

pub fn orbifold_volume_lower_bound(n: u32, cusped_volume_lb: &Interval) -> Result<Interval> {
    if !cusped_volume_lb.is_positive() {
        return Err(Error::Domain(format!(
            "cusped volume bound must be positive, got {cusped_volume_lb}"
        )));
    }
    Ok(drill_ratio(n, cusped_volume_lb.prec())? * cusped_volume_lb.clone())
}

/// Logarithmic derivative of the drilling ratio in `x`.
fn drill_ratio_log_derivative(x: &Interval) -> Interval {
    let prec = x.prec();
    let one = Interval::one(prec);
    let three = Interval::from_int(3, prec);
    let two = Interval::from_int(2, prec);
    three * x.clone() / (x.sqr() - one.clone())
        - two / x.clone()
        - one / (x + &literal("0.91", prec))
}

/// Certifies that the drilling ratio increases in `x` on `[1.3, 6]`.
pub fn certify_drill_ratio_increasing(settings: &Settings) -> SignCertificate {
    let prec = settings.prec();
    let domain = literal("1.3", prec).hull(&Interval::from_int(6, prec));
    certify_sign(
        &Pointwise(drill_ratio_log_derivative),
        &domain,
        settings.sign_depth,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct TubeBoundRecord {
    pub n: u32,
    pub x_n: Interval,
    pub cosh_b: Interval,
    pub r_n: Interval,
    pub drill_ratio: Interval,
}

pub fn tube_record(n: u32, prec: u32) -> Result<TubeBoundRecord> {
    Ok(TubeBoundRecord {
        n,
        x_n: x_value(n, prec)?,
        cosh_b: cosh_axial_distance(n, prec)?,
        r_n: tube_radius(n, prec)?,
        drill_ratio: drill_ratio(n, prec)?,
    })
}

/// A nonnegative decimal truncated to five places, stored in units of 1e-5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decimal5(pub i64);

impl Decimal5 {
    /// Truncation of the lower endpoint, hence a certified lower bound.
    pub fn truncate(x: &Interval) -> Decimal5 {
        let scaled = Float::with_val_round(x.prec(), x.lo() * 100_000u32, Round::Down).0;
        Decimal5(scaled.floor().to_f64() as i64)
    }

    pub fn parse(text: &str) -> Option<Decimal5> {
        let (int, frac) = text.trim().split_once('.').unwrap_or((text.trim(), ""));
        if frac.len() > 5 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int: i64 = int.parse().ok()?;
        let frac: i64 = format!("{frac:0<5}").parse().ok()?;
        Some(Decimal5(int * 100_000 + frac))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 1e5
    }

    /// Difference in units of the fifth decimal.
    pub fn units_from(self, other: Decimal5) -> i64 {
        self.0 - other.0
    }
}

impl fmt::Display for Decimal5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:05}", self.0 / 100_000, self.0 % 100_000)
    }
}

impl Serialize for Decimal5 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeTableRow {
    pub n: u32,
    pub bound_2568: Decimal5,
    pub bound_2848: Decimal5,
    /// Uses the full octahedron volume.
    pub bound_v8: Decimal5,
    /// Same column with the truncated multiplier 3.6638.
    pub bound_36638: Decimal5,
    /// First column recomputed with multiplier 2.56.
    pub bound_256: Decimal5,
    pub vol_pn_reference: Option<Decimal5>,
}

pub fn vol_pn_reference(n: u32) -> Option<Decimal5> {
    VOL_PN_REFERENCE
        .iter()
        .find(|(m, _)| *m == n)
        .and_then(|(_, v)| Decimal5::parse(v))
}

pub fn table_row(n: u32, prec: u32) -> Result<VolumeTableRow> {
    let ratio = drill_ratio(n, prec)?;
    let column = |m: Interval| Decimal5::truncate(&(ratio.clone() * m));
    Ok(VolumeTableRow {
        n,
        bound_2568: column(literal(MULTIPLIER_2568, prec)),
        bound_2848: column(literal(MULTIPLIER_2848, prec)),
        bound_v8: column(v8(prec)),
        bound_36638: column(literal(MULTIPLIER_36638, prec)),
        bound_256: column(literal(MULTIPLIER_256, prec)),
        vol_pn_reference: vol_pn_reference(n),
    })
}

pub fn table1(range: RangeInclusive<u32>, prec: u32) -> Result<Vec<VolumeTableRow>> {
    range.map(|n| table_row(n, prec)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParentClassification {
    TenCensusManifolds,
    TwoCensusManifolds,
}

/// Decides which list of cusped parents a volume minimizer with torsion `n`
/// can come from, given an enclosure of the figure-8 orbifold volume.
pub fn parent_classification(n: u32, vol_pn: &Interval) -> Result<ParentClassification> {
    check_n(n)?;
    if !vol_pn.is_positive() {
        return Err(Error::Domain(format!(
            "volume must be positive, got {vol_pn}"
        )));
    }
    let prec = vol_pn.prec();
    let weak = orbifold_volume_lower_bound(n, &literal(MULTIPLIER_2568, prec))?;
    let strong = orbifold_volume_lower_bound(n, &literal(MULTIPLIER_2848, prec))?;
    let beats_figure8 = n < 11 || weak.certainly_gt(&two_v3(prec));
    if weak.certainly_gt(vol_pn) && beats_figure8 {
        Ok(ParentClassification::TwoCensusManifolds)
    } else if strong.certainly_gt(vol_pn) {
        Ok(ParentClassification::TenCensusManifolds)
    } else {
        Err(Error::Inconclusive(format!(
            "neither bound {weak} nor {strong} exceeds {vol_pn} for n = {n}"
        )))
    }
}
