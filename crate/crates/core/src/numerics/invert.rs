use rug::Float;

use super::interval::Interval;
use super::EnclosureFunction;
use crate::error::{Error, Result};

const MAX_STEPS: u32 = 400;

/// Bisects for the boundary of a predicate that holds at `good` and fails at
/// `bad`; returns the last point where it held.
fn boundary(mut good: Float, mut bad: Float, tol: f64, holds: impl Fn(&Float) -> bool) -> Float {
    for _ in 0..MAX_STEPS {
        let gap = Float::with_val(good.prec(), &bad - &good).abs().to_f64();
        if gap <= tol {
            break;
        }
        let span = Interval::new(good.clone().min(&bad), good.clone().max(&bad));
        let mid = span.midpoint();
        if mid == good || mid == bad {
            break;
        }
        if holds(&mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Encloses the solution of `f(z) = t` for every `t` in `target`, where `f`
/// is strictly monotone on `bracket`.
///
/// Monotonicity is the caller's responsibility; the direction is read off
/// the endpoint values. The result `[L, R]` satisfies `f(L) ≥ target ≥ f(R)`
/// (or the reverse for increasing `f`) in certified arithmetic, so the
/// intermediate value theorem places the root inside. Its width is at most
/// `tol` unless `target` itself is too wide.
pub fn invert_monotone<F: EnclosureFunction + ?Sized>(
    f: &F,
    target: &Interval,
    bracket: &Interval,
    tol: f64,
) -> Result<Interval> {
    let a = bracket.lo().clone();
    let b = bracket.hi().clone();
    let at = |x: &Float| f.eval(&Interval::point(x.clone()));
    let fa = at(&a);
    let fb = at(&b);
    let decreasing = if fa.certainly_gt(&fb) {
        true
    } else if fa.certainly_lt(&fb) {
        false
    } else {
        return Err(Error::Bracket(format!(
            "cannot order endpoint values {fa} and {fb} on {bracket}"
        )));
    };

    // left_side(x): f(x) lies on the same side of the target as f(a)
    let left_side = |x: &Float| {
        let y = at(x);
        if decreasing {
            y.lo() >= target.hi()
        } else {
            y.hi() <= target.lo()
        }
    };
    let right_side = |x: &Float| {
        let y = at(x);
        if decreasing {
            y.hi() <= target.lo()
        } else {
            y.lo() >= target.hi()
        }
    };

    if !left_side(&a) || !right_side(&b) {
        return Err(Error::Bracket(format!(
            "target {target} is not between the endpoint values {fa} and {fb}"
        )));
    }
    let half = tol / 2.0;
    let left = if left_side(&b) {
        b.clone()
    } else {
        boundary(a.clone(), b.clone(), half, left_side)
    };
    let right = if right_side(&a) {
        a.clone()
    } else {
        boundary(b.clone(), a.clone(), half, right_side)
    };
    let lo = left.clone().min(&right);
    let hi = left.max(&right);
    Ok(Interval::new(lo, hi))
}
