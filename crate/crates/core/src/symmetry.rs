//! Volume lower bounds for hyperbolic 3-manifolds with a group of
//! orientation-preserving symmetries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{two_v3, v3, v8, Interval};

/// What the index of a [`SymmetryQuery`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexKind {
    /// Smallest order of a nontrivial element with a fixed point, or 1 for a
    /// free action. Depends on the action, so it is always caller-supplied.
    Torsion,
    /// Smallest prime dividing the group order, or 1 for the trivial group.
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Setting {
    Closed,
    Cusped,
    SingleCusp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryQuery {
    pub group_order: u64,
    pub index: u64,
    pub kind: IndexKind,
    pub setting: Setting,
}

impl SymmetryQuery {
    pub fn new(group_order: u64, index: u64, kind: IndexKind, setting: Setting) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidArgument(
                "group order must be positive".into(),
            ));
        }
        if index == 0 {
            return Err(Error::InvalidArgument("index must be positive".into()));
        }
        if kind == IndexKind::Prime && index != 1 && smallest_prime_divisor(index) != index {
            return Err(Error::InvalidArgument(format!("{index} is not prime")));
        }
        Ok(Self {
            group_order,
            index,
            kind,
            setting,
        })
    }
}

/// Least prime factor of `m`, and 1 for `m = 1`.
pub fn smallest_prime_divisor(m: u64) -> u64 {
    if m <= 1 {
        return 1;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    m
}

fn literal(s: &str, prec: u32) -> Interval {
    Interval::parse(s, prec).expect("literal decimal")
}

/// Closed-manifold constant `w_i`. Index 1 (free action) and indices
/// above 5 share the last entry.
pub fn w(index: u64, prec: u32) -> Interval {
    let s = match index {
        2 => "0.03905",
        3 => "0.2371",
        4 => "0.5074",
        5 => "0.9372",
        _ => "0.9427",
    };
    literal(s, prec)
}

/// Cusped-manifold constant `u_i`. Index 1 and indices above 6 give `2V₃`.
pub fn u(index: u64, prec: u32) -> Interval {
    match index {
        2 => v3(prec) / Interval::from_int(12, prec),
        3 => v3(prec) / Interval::from_int(2, prec),
        4 => literal("0.69524", prec),
        5 => literal("1.45034", prec),
        6 => literal("2.00606", prec),
        _ => two_v3(prec),
    }
}

/// `V₈ / 12`, the per-element bound for one-cusped manifolds.
pub fn single_cusp_constant(prec: u32) -> Interval {
    v8(prec) / Interval::from_int(12, prec)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryBound {
    pub query: SymmetryQuery,
    pub table_value: Interval,
    pub table_bound: Interval,
    pub single_cusp_bound: Option<Interval>,
    /// The largest applicable bound.
    pub bound: Interval,
}

pub fn volume_bound(q: &SymmetryQuery, prec: u32) -> SymmetryBound {
    let table_value = match q.setting {
        Setting::Closed => w(q.index, prec),
        Setting::Cusped | Setting::SingleCusp => u(q.index, prec),
    };
    let order = Interval::from_int(q.group_order as i64, prec);
    let table_bound = order.clone() * table_value.clone();
    let single_cusp_bound =
        (q.setting == Setting::SingleCusp).then(|| order * single_cusp_constant(prec));
    let bound = match &single_cusp_bound {
        Some(s) if s.lo() > table_bound.lo() => s.clone(),
        _ => table_bound.clone(),
    };
    SymmetryBound {
        query: *q,
        table_value,
        table_bound,
        single_cusp_bound,
        bound,
    }
}

/// Certified lower bound on `vol(M)`: every point of the returned
/// enclosure's lower end is a valid bound.
pub fn volume_lower_bound(q: &SymmetryQuery, prec: u32) -> Interval {
    volume_bound(q, prec).bound
}
