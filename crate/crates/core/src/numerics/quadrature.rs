use rug::Float;
use serde::Serialize;

use super::interval::Interval;
use super::EnclosureFunction;
use crate::error::{Error, Result};

/// Number of Taylor terms per piece. Even, so the remainder weight `t^N`
/// is nonnegative.
const TAYLOR_ORDER: usize = 12;
const MAX_DEPTH: u32 = 30;
/// Depth cap for the first-order fallback used by functions without jets.
const FALLBACK_MAX_DEPTH: u32 = 16;

/// An enclosure of a definite integral.
#[derive(Clone, Debug, Serialize)]
pub struct Quadrature {
    pub enclosure: Interval,
    /// False when the subdivision limit was hit before reaching the
    /// requested width. The enclosure is valid either way.
    pub tolerance_met: bool,
    pub pieces: usize,
}

/// One Taylor-model piece: on `[a, b]`,
/// `g(m + t) = sum_{k<N} coeffs[k] t^k + rem * t^N` with `rem` enclosing the
/// order-`N` Taylor coefficient over the whole piece.
#[derive(Clone, Debug)]
struct Piece {
    b: Float,
    m: Float,
    coeffs: Vec<Interval>,
    rem: Interval,
    integral: Interval,
}

fn thin(x: &Float) -> Interval {
    Interval::point(x.clone())
}

impl Piece {
    fn build<F: EnclosureFunction + ?Sized>(f: &F, a: &Float, b: &Float) -> Option<Piece> {
        let whole = Interval::new(a.clone(), b.clone());
        let m = whole.midpoint();
        let over = f.taylor(&whole, TAYLOR_ORDER + 1)?;
        let at_mid = f.taylor(&thin(&m), TAYLOR_ORDER)?;
        let mut piece = Piece {
            b: b.clone(),
            m,
            coeffs: at_mid.coeffs().to_vec(),
            rem: over.coeff(TAYLOR_ORDER).clone(),
            integral: Interval::zero(a.prec()),
        };
        piece.integral = piece.integral_from(&thin(a));
        Some(piece)
    }

    fn is_bounded(&self) -> bool {
        self.integral.is_bounded()
    }

    /// Enclosure of `{ ∫_x^b g : x in X }` for `X` inside the piece.
    fn integral_from(&self, x: &Interval) -> Interval {
        let prec = self.rem.prec();
        let m = thin(&self.m);
        let tb = &thin(&self.b) - &m;
        let tx = x - &m;
        let mut pb = tb.clone();
        let mut px = tx.clone();
        let mut sum = Interval::zero(prec);
        for (k, c) in self.coeffs.iter().enumerate() {
            let w = &(&pb - &px) / &Interval::from_int(k as i64 + 1, prec);
            sum = &sum + &(c * &w);
            pb = &pb * &tb;
            px = &px * &tx;
        }
        let n = self.coeffs.len() as i64;
        let w = &(&pb - &px) / &Interval::from_int(n + 1, prec);
        let zero = Float::with_val(prec, 0);
        let nonneg = Interval::new(zero.clone(), w.hi().clone().max(&zero));
        let w = w.intersect(&nonneg).unwrap_or(nonneg);
        &sum + &(&self.rem * &w)
    }
}

fn refine<F: EnclosureFunction + ?Sized>(
    f: &F,
    a: &Float,
    b: &Float,
    budget_per_unit: f64,
    depth: u32,
    out: &mut Vec<Piece>,
    tolerance_met: &mut bool,
) -> Result<()> {
    let piece = Piece::build(f, a, b)
        .ok_or_else(|| Error::Domain("integrand has no Taylor expansion".into()))?;
    let length = (b.clone() - a).to_f64();
    let fits = piece.is_bounded() && piece.integral.width_f64() <= budget_per_unit * length;
    if fits || depth >= MAX_DEPTH {
        if !piece.is_bounded() {
            return Err(Error::Domain(format!(
                "integrand unbounded on [{}, {}]",
                a.to_f64(),
                b.to_f64()
            )));
        }
        if !fits {
            *tolerance_met = false;
        }
        out.push(piece);
        return Ok(());
    }
    let m = Interval::new(a.clone(), b.clone()).midpoint();
    refine(f, a, &m, budget_per_unit, depth + 1, out, tolerance_met)?;
    refine(f, &m, b, budget_per_unit, depth + 1, out, tolerance_met)
}

fn build_pieces<F: EnclosureFunction + ?Sized>(
    f: &F,
    a: &Float,
    b: &Float,
    tol: f64,
) -> Result<(Vec<Piece>, bool)> {
    let length = (b.clone() - a).to_f64();
    let mut pieces = Vec::new();
    let mut met = true;
    if length > 0.0 {
        refine(f, a, b, tol / length, 0, &mut pieces, &mut met)?;
    }
    Ok((pieces, met))
}

/// First-order adaptive enclosure `image × width` for integrands that only
/// provide an interval extension.
fn first_order<F: EnclosureFunction + ?Sized>(
    f: &F,
    x: &Interval,
    budget_per_unit: f64,
    depth: u32,
    pieces: &mut usize,
    tolerance_met: &mut bool,
) -> Result<Interval> {
    let y = f.eval(x);
    let length = &thin(x.hi()) - &thin(x.lo());
    let est = &y * &length;
    let width = x.width().to_f64();
    if est.is_bounded() && est.width_f64() <= budget_per_unit * width {
        *pieces += 1;
        return Ok(est);
    }
    if depth >= FALLBACK_MAX_DEPTH {
        if !est.is_bounded() {
            return Err(Error::Domain(format!("integrand unbounded on {x}")));
        }
        *tolerance_met = false;
        *pieces += 1;
        return Ok(est);
    }
    let (l, r) = x.bisect();
    let a = first_order(f, &l, budget_per_unit, depth + 1, pieces, tolerance_met)?;
    let b = first_order(f, &r, budget_per_unit, depth + 1, pieces, tolerance_met)?;
    Ok(&a + &b)
}

/// Encloses `{ ∫_a^b f : a in A, b in B }`.
///
/// Integrands with Taylor support are handled by adaptive Taylor models;
/// other integrands fall back to first-order subdivision. Interval limits
/// contribute end caps `[0, width] × f(limit)`. Fails with a domain error if
/// the integrand stays unbounded after maximal subdivision.
pub fn integrate_enclosure<F: EnclosureFunction + ?Sized>(
    f: &F,
    a: &Interval,
    b: &Interval,
    tol: f64,
) -> Result<Quadrature> {
    let prec = a.prec().max(b.prec());
    if !a.is_bounded() || !b.is_bounded() {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if a.hi() > b.lo() {
        // overlapping limits: mean value form over the hull
        let hull = a.hull(b);
        let y = f.eval(&hull);
        let enclosure = &(b - a) * &y;
        if !enclosure.is_bounded() {
            return Err(Error::Domain(format!("integrand unbounded on {hull}")));
        }
        return Ok(Quadrature {
            enclosure,
            tolerance_met: false,
            pieces: 1,
        });
    }

    let mut caps = Interval::zero(prec);
    for limit in [a, b] {
        if !limit.is_point() {
            let w = Interval::new(Float::with_val(prec, 0), limit.width());
            let c = &w * &f.eval(limit);
            if !c.is_bounded() {
                return Err(Error::Domain(format!("integrand unbounded on {limit}")));
            }
            caps = &caps + &c;
        }
    }

    let lo = a.hi();
    let hi = b.lo();
    let mut tolerance_met = true;
    let (core, pieces) = if lo == hi {
        (Interval::zero(prec), 0)
    } else if f.taylor(&thin(lo), 2).is_some() {
        let (pieces, met) = build_pieces(f, lo, hi, tol)?;
        tolerance_met = met;
        let mut sum = Interval::zero(prec);
        for p in &pieces {
            sum = &sum + &p.integral;
        }
        (sum, pieces.len())
    } else {
        let core = Interval::new(lo.clone(), hi.clone());
        let per_unit = tol / core.width_f64();
        let mut count = 0;
        let e = first_order(f, &core, per_unit, 0, &mut count, &mut tolerance_met)?;
        (e, count)
    };
    let enclosure = &core + &caps;
    if !a.is_point() || !b.is_point() {
        tolerance_met = tolerance_met && enclosure.width_f64() <= tol;
    }
    Ok(Quadrature {
        enclosure,
        tolerance_met,
        pieces,
    })
}

/// A certified piecewise Taylor model of `x ↦ ∫_x^end g` on `[start, end]`.
///
/// Built once, then queried many times; each query costs one polynomial
/// evaluation plus a table lookup.
#[derive(Clone, Debug)]
pub struct TaylorAntiderivative {
    start: Float,
    end: Float,
    pieces: Vec<Piece>,
    /// `suffix[i]` encloses `∫_{b_i}^end g`.
    suffix: Vec<Interval>,
    tolerance_met: bool,
}

impl TaylorAntiderivative {
    pub fn build<F: EnclosureFunction + ?Sized>(
        g: &F,
        start: &Interval,
        end: &Interval,
        tol: f64,
    ) -> Result<Self> {
        if !start.is_point() || !end.is_point() || start.lo() >= end.lo() {
            return Err(Error::Domain(
                "model range must have exact endpoints with start < end".into(),
            ));
        }
        let (pieces, met) = build_pieces(g, start.lo(), end.lo(), tol)?;
        let prec = start.prec();
        let mut suffix = vec![Interval::zero(prec); pieces.len()];
        for i in (0..pieces.len().saturating_sub(1)).rev() {
            suffix[i] = &suffix[i + 1] + &pieces[i + 1].integral;
        }
        Ok(Self {
            start: start.lo().clone(),
            end: end.lo().clone(),
            pieces,
            suffix,
            tolerance_met: met,
        })
    }

    pub fn start(&self) -> &Float {
        &self.start
    }

    pub fn end(&self) -> &Float {
        &self.end
    }

    pub fn pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn tolerance_met(&self) -> bool {
        self.tolerance_met
    }

    pub fn covers(&self, x: &Interval) -> bool {
        x.lo() >= &self.start && x.hi() <= &self.end
    }

    /// Encloses `{ ∫_x^end g : x in X }`; `X` must lie inside the model range.
    ///
    /// Each piece meeting `X` is evaluated on its share of `X` and the
    /// results are joined, so the enclosure is inclusion-isotone in `X`.
    pub fn to_end(&self, x: &Interval) -> Result<Interval> {
        if !self.covers(x) {
            return Err(Error::Domain(format!(
                "{x} lies outside the model range [{}, {}]",
                self.start.to_f64(),
                self.end.to_f64()
            )));
        }
        let first = self.pieces.partition_point(|p| &p.b < x.lo());
        let mut out: Option<Interval> = None;
        let mut lo = self.start.clone();
        for (i, piece) in self.pieces.iter().enumerate() {
            let piece_lo = std::mem::replace(&mut lo, piece.b.clone());
            if i < first {
                continue;
            }
            if &piece_lo > x.hi() {
                break;
            }
            let part = Interval::new(piece_lo, piece.b.clone())
                .intersect(x)
                .expect("piece meets X");
            let value = &piece.integral_from(&part) + &self.suffix[i];
            out = Some(match out {
                Some(acc) => acc.hull(&value),
                None => value,
            });
        }
        Ok(out.expect("covered interval meets a piece"))
    }
}
