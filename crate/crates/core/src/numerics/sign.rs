use serde::Serialize;

use super::interval::Interval;
use super::EnclosureFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
    Indeterminate,
}

/// Outcome of a bisection sign proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    pub sign: Sign,
    /// Deepest bisection level reached.
    pub depth_used: u32,
    /// Number of subintervals whose enclosure was evaluated.
    pub subinterval_count: u64,
}

impl SignCertificate {
    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Negative
    }

    pub fn is_resolved(&self) -> bool {
        self.sign != Sign::Indeterminate
    }
}

/// Hard cap on evaluated subintervals, so functions vanishing on a whole
/// region cannot trigger an exponential search.
const MAX_SUBINTERVALS: u64 = 1 << 22;

fn strict_sign(y: &Interval) -> Option<Sign> {
    if y.is_positive() {
        Some(Sign::Positive)
    } else if y.is_negative() {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Proves that `f` has a constant strict sign on `domain`.
///
/// The domain is bisected depth first, left to right. A leaf is settled
/// when the enclosure of its image excludes zero. The search gives up with
/// [`Sign::Indeterminate`] when a leaf at `max_depth` still straddles zero,
/// or as soon as two points of opposite certified sign are found (a genuine
/// sign change). Point evaluations at bisection midpoints are used to detect
/// sign changes early.
pub fn certify_sign<F: EnclosureFunction + ?Sized>(
    f: &F,
    domain: &Interval,
    max_depth: u32,
) -> SignCertificate {
    let mut seen: Option<Sign> = None;
    let mut depth_used = 0;
    let mut count = 0u64;
    let mut stack = vec![(domain.clone(), 0u32)];
    let indeterminate = |depth_used, count| SignCertificate {
        sign: Sign::Indeterminate,
        depth_used,
        subinterval_count: count,
    };

    while let Some((x, depth)) = stack.pop() {
        count += 1;
        depth_used = depth_used.max(depth);
        let y = f.eval(&x);
        if let Some(s) = strict_sign(&y) {
            match seen {
                None => seen = Some(s),
                Some(prev) if prev != s => return indeterminate(depth_used, count),
                _ => {}
            }
            continue;
        }
        if depth >= max_depth || count >= MAX_SUBINTERVALS || x.is_point() {
            return indeterminate(depth_used, count);
        }
        let (left, right) = x.bisect();
        let mid = Interval::point(right.lo().clone());
        let y_mid = f.eval(&mid);
        match strict_sign(&y_mid) {
            Some(s) => match seen {
                None => seen = Some(s),
                Some(prev) if prev != s => return indeterminate(depth_used, count),
                _ => {}
            },
            // an exact zero at a point rules out a strict sign
            None if y_mid.is_point() => return indeterminate(depth_used, count),
            None => {}
        }
        stack.push((right, depth + 1));
        stack.push((left, depth + 1));
    }

    SignCertificate {
        sign: seen.unwrap_or(Sign::Indeterminate),
        depth_used,
        subinterval_count: count,
    }
}
