//! Cusp lattices, slope lengths and inverse norms, the FKP filling bound and
//! the candidate-slope sieve.

mod census;
mod sieve;

pub use census::{census_manifold, embedded_census, load_census, CensusManifold, CENSUS_HEADER};
pub use sieve::{enumerate_candidates, search_box, SearchBox};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Interval;

/// Translation vectors of a cusp torus cross-section.
#[derive(Clone, Debug, Serialize)]
pub struct CuspLattice {
    pub mu: [Interval; 2],
    pub lambda: [Interval; 2],
}

impl CuspLattice {
    pub fn new(mu: [Interval; 2], lambda: [Interval; 2]) -> Result<Self> {
        let lattice = Self { mu, lambda };
        if !lattice.area().is_positive() {
            return Err(Error::Validation(format!(
                "cusp lattice area {} is not certified positive",
                lattice.area()
            )));
        }
        Ok(lattice)
    }

    pub fn prec(&self) -> u32 {
        self.mu[0].prec()
    }

    pub fn determinant(&self) -> Interval {
        &self.mu[0] * &self.lambda[1] - &self.mu[1] * &self.lambda[0]
    }

    pub fn area(&self) -> Interval {
        self.determinant().abs()
    }

    /// The translation `a·mu + b·lambda`.
    pub fn vector(&self, a: i64, b: i64) -> [Interval; 2] {
        let prec = self.prec();
        let (a, b) = (Interval::from_int(a, prec), Interval::from_int(b, prec));
        [
            &a * &self.mu[0] + &b * &self.lambda[0],
            &a * &self.mu[1] + &b * &self.lambda[1],
        ]
    }

    pub fn scaled(&self, t: &Interval) -> Result<CuspLattice> {
        let s = |v: &[Interval; 2]| [&v[0] * t, &v[1] * t];
        CuspLattice::new(s(&self.mu), s(&self.lambda))
    }
}

/// Canonical representative of an unoriented class `±(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slope {
    pub a: i64,
    pub b: i64,
}

pub fn canonicalize(a: i64, b: i64) -> Result<Slope> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroSlope);
    }
    if b > 0 || (b == 0 && a > 0) {
        Ok(Slope { a, b })
    } else {
        Ok(Slope { a: -a, b: -b })
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn slope_length(lattice: &CuspLattice, s: Slope) -> Interval {
    let [x, y] = lattice.vector(s.a, s.b);
    (x.sqr() + y.sqr())
        .sqrt()
        .expect("sum of squares is nonnegative")
}

fn two_pi(prec: u32) -> Interval {
    Interval::pi(prec) * Interval::from_int(2, prec)
}

/// `(2π)² · area / ℓ²`.
pub fn inverse_norm(lattice: &CuspLattice, s: Slope) -> Interval {
    let prec = lattice.prec();
    two_pi(prec).sqr() * lattice.area() / slope_length(lattice, s).sqr()
}

/// `(1 − (2π/ℓ)²)^{3/2} · vol` when `ℓ > 2π` is certified, `None` when
/// `ℓ ≤ 2π`; inconclusive when the enclosure of `ℓ` straddles `2π`.
pub fn fkp_volume_lower_bound(
    manifold_volume: &Interval,
    length: &Interval,
) -> Result<Option<Interval>> {
    let prec = manifold_volume.prec().max(length.prec());
    let tp = two_pi(prec);
    if length.lo() > tp.hi() {
        let s = Interval::one(prec) - (tp / length.clone()).sqr();
        let factor = s.sqrt()? * s;
        Ok(Some(factor * manifold_volume.clone()))
    } else if length.hi() <= tp.hi() {
        Ok(None)
    } else {
        Err(Error::Inconclusive(format!(
            "slope length {length} is not separated from 2π"
        )))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FillingCandidate {
    pub slope: Slope,
    pub length: Interval,
    pub inverse_norm: Interval,
    /// `2π / sqrt(A)`.
    pub normalized_length: Interval,
    pub fkp_lower_bound: Option<Interval>,
    /// Membership could not be decided at the working precision; the slope
    /// is kept so the set stays a superset.
    pub unresolved: bool,
}

pub fn filling_candidate(m: &CensusManifold, s: Slope, unresolved: bool) -> FillingCandidate {
    let prec = m.lattice.prec();
    let length = slope_length(&m.lattice, s);
    let a = inverse_norm(&m.lattice, s);
    let normalized_length = two_pi(prec) / a.sqrt().expect("inverse norm is positive");
    let fkp_lower_bound = fkp_volume_lower_bound(&m.volume, &length).ok().flatten();
    FillingCandidate {
        slope: s,
        length,
        inverse_norm: a,
        normalized_length,
        fkp_lower_bound,
        unresolved,
    }
}

/// `(B / vol)^{2/3}` as an enclosure.
fn volume_ratio_power(bound: &Interval, volume: &Interval) -> Interval {
    (bound.clone() / volume.clone()).sqr().cbrt()
}

/// `2π / sqrt(1 − (B/vol)^{2/3})`, the longest slope the sieve can admit.
pub fn max_sieve_length(bound: &Interval, volume: &Interval) -> Result<Interval> {
    let prec = volume.prec();
    let q = volume_ratio_power(bound, volume);
    let gap = Interval::one(prec) - q;
    if !gap.is_positive() {
        return Err(Error::UnboundedSieve(format!(
            "bound {bound} is not below the manifold volume {volume}"
        )));
    }
    Ok(two_pi(prec) / gap.sqrt()?)
}
