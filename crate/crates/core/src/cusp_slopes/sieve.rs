use rug::Float;
use serde::Serialize;

use super::{
    filling_candidate, gcd, max_sieve_length, slope_length, two_pi, volume_ratio_power,
    CensusManifold, CuspLattice, FillingCandidate, Slope,
};
use crate::error::{Error, Result};
use crate::numerics::Interval;

/// Lattice rows `b = 0..=b_max`, each with an integer range of `a`, that
/// together contain every canonical slope of length at most the radius.
#[derive(Clone, Debug, Serialize)]
pub struct SearchBox {
    pub rows: Vec<(i64, i64, i64)>,
}

fn floor_i64(x: &Float) -> i64 {
    x.clone().floor().to_f64() as i64
}

fn ceil_i64(x: &Float) -> i64 {
    x.clone().ceil().to_f64() as i64
}

/// Rows are bounded through the height of the lattice over the `mu` line;
/// within a row, `a` is bounded by projecting onto `mu`.
pub fn search_box(lattice: &CuspLattice, radius: &Interval) -> SearchBox {
    let prec = lattice.prec();
    let mu_sq = lattice.mu[0].sqr() + lattice.mu[1].sqr();
    let mu_len = mu_sq.sqrt().expect("nonnegative");
    let height = lattice.area() / mu_len.clone();
    let b_max = floor_i64((radius.clone() / height).hi()).max(0);
    let dot = &lattice.lambda[0] * &lattice.mu[0] + &lattice.lambda[1] * &lattice.mu[1];
    let shift = dot / mu_sq;
    let half = radius.clone() / mu_len;
    let mut rows = Vec::new();
    for b in 0..=b_max {
        let centre = -(Interval::from_int(b, prec) * shift.clone());
        let a_min = floor_i64((centre.clone() - half.clone()).lo());
        let a_max = ceil_i64((centre + half.clone()).hi());
        let a_min = if b == 0 { a_min.max(1) } else { a_min };
        if a_min <= a_max {
            rows.push((b, a_min, a_max));
        }
    }
    SearchBox { rows }
}

/// Outcome of testing `1 − (2π/ℓ)² ≤ q` in interval arithmetic.
enum Membership {
    In,
    Out,
    Unresolved,
}

fn membership(length: &Interval, q: &Interval) -> Membership {
    let lhs = Interval::one(length.prec()) - (two_pi(length.prec()) / length.clone()).sqr();
    if lhs.hi() <= q.lo() {
        Membership::In
    } else if lhs.lo() > q.hi() {
        Membership::Out
    } else {
        Membership::Unresolved
    }
}

/// All canonical slopes `(a, b)` with `gcd(a, b) = n` and
/// `1 − (2π/ℓ)² ≤ (B/vol)^{2/3}`, sorted by `(b, a)`.
///
/// Slopes whose membership is not decided by the enclosures are included
/// and flagged, so the result is always a superset of the exact set.
pub fn enumerate_candidates(
    m: &CensusManifold,
    n: u32,
    bound: &Interval,
) -> Result<Vec<FillingCandidate>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "torsion order must be positive".into(),
        ));
    }
    if !bound.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} must be positive"
        )));
    }
    let radius = max_sieve_length(bound, &m.volume)?;
    let radius = Interval::point(radius.hi().clone());
    let q = volume_ratio_power(bound, &m.volume);
    let n = n as i64;
    let mut out = Vec::new();
    for (b, a_min, a_max) in search_box(&m.lattice, &radius).rows {
        if b % n != 0 {
            continue;
        }
        let start = a_min.div_euclid(n) * n;
        let mut a = start;
        while a <= a_max {
            if a >= a_min && gcd(a, b) == n {
                let s = Slope { a, b };
                match membership(&slope_length(&m.lattice, s), &q) {
                    Membership::In => out.push(filling_candidate(m, s, false)),
                    Membership::Unresolved => out.push(filling_candidate(m, s, true)),
                    Membership::Out => {}
                }
            }
            a += n;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cusp_slopes::census_manifold;

    const P: u32 = 60;

    fn slopes(m: &str, n: u32, b: &str) -> Vec<(i64, i64)> {
        let m = census_manifold(m, P).unwrap();
        enumerate_candidates(&m, n, &Interval::parse(b, P).unwrap())
            .unwrap()
            .iter()
            .map(|c| (c.slope.a, c.slope.b))
            .collect()
    }

    #[test]
    fn figure_eight_at_eight() {
        let s = slopes("m004", 8, "1.55");
        assert!(s.contains(&(8, 0)));
        let expected = [(-16, 8), (-8, 8), (0, 8), (8, 0), (8, 8), (16, 8)];
        assert!(s.iter().all(|x| expected.contains(x)), "{s:?}");
    }

    #[test]
    fn tiny_bound_gives_nothing() {
        assert!(slopes("m004", 100, "0.1").is_empty());
    }

    #[test]
    fn bound_above_volume_is_unbounded() {
        let m = census_manifold("m004", P).unwrap();
        let r = enumerate_candidates(&m, 5, &Interval::parse("2.1", P).unwrap());
        assert!(matches!(r, Err(Error::UnboundedSieve(_))));
    }
}
