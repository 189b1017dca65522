//! Volume change under Dehn filling via cone deformation: the integrands
//! `l`, `u`, the inversion functions `f`, `f̃`, certified brackets for the
//! volume drop, and the comparison that singles out the `(n, 0)` filling of
//! the figure-8 knot complement.

pub mod functions;
mod lemmas;

pub use lemmas::{LemmaCheck, LemmaReport, LemmaValue, EPSILON};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{
    integrate_enclosure, invert_monotone, sqrt_int, two_v3, Analytic, Interval, Pointwise, RealFn,
    Settings, TaylorAntiderivative,
};
use functions::{
    f_prime_factor, f_second_factor, ftilde_prime_factor, ftilde_second_factor, InnerF,
    InnerFtilde, LowerIntegrand, UpperIntegrand,
};

/// Upper end of the range on which `f⁻¹` is used.
pub const F_INVERSE_MAX: &str = "0.699";
/// Upper end of the range on which `f̃⁻¹` is used.
pub const FTILDE_INVERSE_MAX: &str = "1.6368";
/// Left end (7/16) of the models for integrands with a pole at `√2 − 1`.
const POLE_SAFE_START: (i64, i64) = (7, 16);
/// Models are built this much tighter than `quad_tol` so that derived
/// quantities stay within it.
const MODEL_TOL_FACTOR: f64 = 1e-4;

#[derive(Clone, Debug, Serialize)]
pub struct HkConstants {
    /// Exactly 33957/10000.
    pub c: Interval,
    /// `√(√5 − 2)`.
    pub z0: Interval,
    /// `f(1/√3)`.
    pub a_max: Interval,
    pub two_v3: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaVBracket {
    pub inverse_norm: Interval,
    pub z_hat: Interval,
    pub z_tilde: Interval,
    /// Enclosure of `∫ l` from the upper end of `z_tilde` to 1; its lower
    /// end is the certified lower bound on the volume change.
    pub lower: Interval,
    /// Enclosure of `∫ u` from the lower end of `z_hat` to 1; its upper end
    /// is the certified upper bound on the volume change.
    pub upper: Interval,
}

impl DeltaVBracket {
    pub fn lower_bound(&self) -> Interval {
        Interval::point(self.lower.lo().clone())
    }

    pub fn upper_bound(&self) -> Interval {
        Interval::point(self.upper.hi().clone())
    }

    /// Compares the bracket with the small-`A` prediction `A/4`.
    pub fn neumann_zagier(&self) -> NzDiagnostic {
        let prec = self.inverse_norm.prec();
        let quarter = self.inverse_norm.clone() / Interval::from_int(4, prec);
        let ratio = |x: Interval| {
            if self.inverse_norm.is_positive() {
                Some(x / self.inverse_norm.clone())
            } else {
                None
            }
        };
        NzDiagnostic {
            lower_over_a: ratio(self.lower_bound()),
            upper_over_a: ratio(self.upper_bound()),
            brackets_quarter: self.lower.lo() <= quarter.lo() && quarter.hi() <= self.upper.hi(),
            quarter_a: quarter,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NzDiagnostic {
    pub lower_over_a: Option<Interval>,
    pub upper_over_a: Option<Interval>,
    pub quarter_a: Interval,
    pub brackets_quarter: bool,
}

/// Certificate that the `(n, 0)` filling on m004 loses strictly more volume
/// than any other filling with torsion `n` on m003 or m004.
#[derive(Clone, Debug, Serialize)]
pub struct MinimizerCertificate {
    pub n: u32,
    pub a_tilde: Interval,
    pub a_other_max: Interval,
    /// Certified upper bound on the volume change of any competitor.
    pub competitor_upper: Interval,
    /// Certified lower bound on the volume change of the `(n, 0)` filling.
    pub filling_lower: Interval,
    pub z_tilde: Interval,
    pub z_hat: Interval,
    /// `z̃ < ẑ`, so the lower-bound integral runs over a longer interval.
    pub ordered_limits: bool,
    /// Both limits lie in `[0.83, 1]`.
    pub limits_in_unit_tail: bool,
    pub verified: bool,
}

/// The cone-deformation toolkit at one precision setting. Building it
/// prepares certified antiderivative models of the four integrands.
pub struct HkCone {
    settings: Settings,
    constants: HkConstants,
    inner_f: TaylorAntiderivative,
    inner_ftilde: TaylorAntiderivative,
    lower_model: TaylorAntiderivative,
    upper_model: TaylorAntiderivative,
}

fn pos(s: &str, prec: u32) -> Interval {
    Interval::parse(s, prec).expect("literal decimal")
}

impl HkCone {
    pub fn new(settings: &Settings) -> Result<Self> {
        settings.validate()?;
        let prec = settings.prec();
        let c = Interval::ratio(33957, 10000, prec);
        let tol = settings.quad_tol * MODEL_TOL_FACTOR;
        let zero = Interval::zero(prec);
        let one = Interval::one(prec);
        let safe = Interval::ratio(POLE_SAFE_START.0, POLE_SAFE_START.1, prec);
        let inner_f = TaylorAntiderivative::build(&Analytic(InnerF), &zero, &one, tol)?;
        let inner_ftilde = TaylorAntiderivative::build(&Analytic(InnerFtilde), &safe, &one, tol)?;
        let lower_model = TaylorAntiderivative::build(
            &Analytic(LowerIntegrand { c: c.clone() }),
            &safe,
            &one,
            tol,
        )?;
        let upper_model = TaylorAntiderivative::build(
            &Analytic(UpperIntegrand { c: c.clone() }),
            &zero,
            &one,
            tol,
        )?;
        let z0 = (sqrt_int(5, prec) - Interval::from_int(2, prec)).sqrt()?;
        let mut cone = Self {
            settings: settings.clone(),
            constants: HkConstants {
                c,
                z0,
                a_max: Interval::zero(prec),
                two_v3: two_v3(prec),
            },
            inner_f,
            inner_ftilde,
            lower_model,
            upper_model,
        };
        let inv_root3 = sqrt_int(3, prec) / Interval::from_int(3, prec);
        cone.constants.a_max = cone.eval_f(&inv_root3)?;
        Ok(cone)
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn constants(&self) -> &HkConstants {
        &self.constants
    }

    fn prec(&self) -> u32 {
        self.settings.prec()
    }

    fn c(&self) -> &Interval {
        &self.constants.c
    }

    fn check_unit(&self, z: &Interval) -> Result<()> {
        if !(z.lo() > &0 && z.hi() <= &1) {
            return Err(Error::Domain(format!("{z} is not inside (0, 1]")));
        }
        Ok(())
    }

    fn bounded(value: Interval, what: &str, z: &Interval) -> Result<Interval> {
        if value.is_bounded() {
            Ok(value)
        } else {
            Err(Error::Domain(format!(
                "{what} has a vanishing denominator on {z}"
            )))
        }
    }

    /// `{ ∫_z^1 g : z in Z }`, using the model where it applies and direct
    /// quadrature below it.
    fn tail<R: RealFn>(
        &self,
        model: &TaylorAntiderivative,
        g: R,
        z: &Interval,
    ) -> Result<Interval> {
        if model.covers(z) {
            return model.to_end(z);
        }
        let start = Interval::point(model.start().clone());
        let from_start = model.to_end(&start)?;
        let below_hi = z.hi().clone().min(model.start());
        let below = Interval::new(z.lo().clone(), below_hi);
        let q = integrate_enclosure(&Analytic(g), &below, &start, self.settings.quad_tol)?;
        let left = &q.enclosure + &from_start;
        if z.hi() <= model.start() {
            Ok(left)
        } else {
            let right = Interval::new(model.start().clone(), z.hi().clone());
            Ok(left.hull(&model.to_end(&right)?))
        }
    }

    pub fn eval_l(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        Self::bounded(
            LowerIntegrand {
                c: self.c().clone(),
            }
            .apply(z),
            "l",
            z,
        )
    }

    pub fn eval_u(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        Self::bounded(
            UpperIntegrand {
                c: self.c().clone(),
            }
            .apply(z),
            "u",
            z,
        )
    }

    #[allow(non_snake_case)]
    pub fn eval_F(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        Self::bounded(InnerF.apply(z), "F", z)
    }

    #[allow(non_snake_case)]
    pub fn eval_Ftilde(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        Self::bounded(InnerFtilde.apply(z), "F̃", z)
    }

    /// `exp(∫_z^1 F)`.
    fn growth_f(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        Ok(self.tail(&self.inner_f, InnerF, z)?.exp())
    }

    /// `exp(∫_z^1 F̃)`; requires `z > √2 − 1`.
    fn growth_ftilde(&self, z: &Interval) -> Result<Interval> {
        self.check_unit(z)?;
        let prec = self.prec();
        let pole = sqrt_int(2, prec) - Interval::one(prec);
        if !z.certainly_gt(&pole) {
            return Err(Error::Domain(format!("{z} is not above √2 − 1")));
        }
        Ok(self.tail(&self.inner_ftilde, InnerFtilde, z)?.exp())
    }

    pub fn eval_f(&self, z: &Interval) -> Result<Interval> {
        let one_minus = Interval::one(self.prec()) - z.clone();
        Ok(self.c().clone() * one_minus * self.growth_f(z)?)
    }

    pub fn eval_ftilde(&self, z: &Interval) -> Result<Interval> {
        let one_minus = Interval::one(self.prec()) - z.clone();
        Ok(self.c().clone() * one_minus * self.growth_ftilde(z)?)
    }

    pub fn eval_f_prime(&self, z: &Interval) -> Result<Interval> {
        let e = self.growth_f(z)?;
        Self::bounded(f_prime_factor(self.c(), z) * e, "f'", z)
    }

    pub fn eval_ftilde_prime(&self, z: &Interval) -> Result<Interval> {
        let e = self.growth_ftilde(z)?;
        Self::bounded(ftilde_prime_factor(self.c(), z) * e, "f̃'", z)
    }

    pub fn eval_f_second(&self, z: &Interval) -> Result<Interval> {
        let e = self.growth_f(z)?;
        Self::bounded(f_second_factor(self.c(), z) * e, "f''", z)
    }

    pub fn eval_ftilde_second(&self, z: &Interval) -> Result<Interval> {
        let e = self.growth_ftilde(z)?;
        Self::bounded(ftilde_second_factor(self.c(), z) * e, "f̃''", z)
    }

    fn inversion_bracket(&self) -> Interval {
        Interval::new(
            self.constants.z0.hi().clone(),
            rug::Float::with_val(self.prec(), 1),
        )
    }

    fn check_range(a: &Interval, max: &str, what: &str) -> Result<()> {
        let max = pos(max, a.prec().max(53));
        if a.lo() < &0 || a.hi() > max.lo() {
            return Err(Error::Range(format!(
                "{what} is only inverted on [0, {max:.6}], got {a}"
            )));
        }
        Ok(())
    }

    /// `f⁻¹(A)` on `[z0, 1]`, for `0 ≤ A ≤ 0.699`.
    pub fn invert_f(&self, a: &Interval) -> Result<Interval> {
        Self::check_range(a, F_INVERSE_MAX, "f")?;
        let prec = self.prec();
        let f = Pointwise(|z: &Interval| self.eval_f(z).unwrap_or_else(|_| Interval::entire(prec)));
        invert_monotone(&f, a, &self.inversion_bracket(), self.settings.invert_tol)
    }

    /// `f̃⁻¹(A)` on `[z0, 1]`, for `0 ≤ A ≤ 1.6368`.
    pub fn invert_ftilde(&self, a: &Interval) -> Result<Interval> {
        Self::check_range(a, FTILDE_INVERSE_MAX, "f̃")?;
        let prec = self.prec();
        let f = Pointwise(|z: &Interval| {
            self.eval_ftilde(z)
                .unwrap_or_else(|_| Interval::entire(prec))
        });
        invert_monotone(&f, a, &self.inversion_bracket(), self.settings.invert_tol)
    }

    /// Certified bracket `∫_{z̃}^1 l ≤ ΔV ≤ ∫_{ẑ}^1 u` for a slope of inverse
    /// norm `A ≤ f(1/√3)`.
    pub fn delta_v_bracket(&self, a: &Interval) -> Result<DeltaVBracket> {
        if a.lo() < &0 {
            return Err(Error::Range(format!("inverse norm {a} is negative")));
        }
        if !a.certainly_le(&self.constants.a_max) {
            return Err(Error::Range(format!(
                "inverse norm {a} is not certified below f(1/√3) = {:.8}",
                self.constants.a_max
            )));
        }
        let z_hat = self.invert_f(a)?;
        let z_tilde = self.invert_ftilde(a)?;
        let zt = Interval::point(z_tilde.hi().clone());
        let zh = Interval::point(z_hat.lo().clone());
        let c = self.c().clone();
        let lower = self.tail(&self.lower_model, LowerIntegrand { c: c.clone() }, &zt)?;
        let upper = self.tail(&self.upper_model, UpperIntegrand { c }, &zh)?;
        Ok(DeltaVBracket {
            inverse_norm: a.clone(),
            z_hat,
            z_tilde,
            lower,
            upper,
        })
    }

    /// `(8√3π²/n², 2√3π²/n²)`: the inverse norm of `(n, 0)` on m004 and the
    /// largest inverse norm of any other torsion-`n` slope on m003 or m004.
    pub fn torsion_inverse_norms(&self, n: u32) -> Result<(Interval, Interval)> {
        torsion_inverse_norms(n, self.prec())
    }

    pub fn verify_minimizer(&self, n: u32) -> Result<MinimizerCertificate> {
        let (a_tilde, a_other) = self.torsion_inverse_norms(n)?;
        if !a_tilde.certainly_le(&self.constants.a_max) {
            return Err(Error::NotApplicable(format!(
                "A = 8√3π²/{n}² = {a_tilde:.6} is not below f(1/√3) = {:.6}",
                self.constants.a_max
            )));
        }
        let filling = self.delta_v_bracket(&a_tilde)?;
        let competitor = self.delta_v_bracket(&a_other)?;
        let prec = self.prec();
        let tail = pos("0.83", prec).hull(&Interval::one(prec));
        let ordered_limits = filling.z_tilde.certainly_lt(&competitor.z_hat);
        let limits_in_unit_tail =
            tail.encloses(&filling.z_tilde) && tail.encloses(&competitor.z_hat);
        let competitor_upper = competitor.upper_bound();
        let filling_lower = filling.lower_bound();
        let verified = competitor_upper.certainly_lt(&filling_lower);
        if !verified {
            return Err(Error::Inconclusive(format!(
                "n = {n}: competitor bound {competitor_upper} not below {filling_lower}"
            )));
        }
        Ok(MinimizerCertificate {
            n,
            a_tilde,
            a_other_max: a_other,
            competitor_upper,
            filling_lower,
            z_tilde: filling.z_tilde,
            z_hat: competitor.z_hat,
            ordered_limits,
            limits_in_unit_tail,
            verified,
        })
    }

    /// Enclosure of the volume of the `(n, 0)` filling of m004.
    pub fn pn_volume_bracket(&self, n: u32) -> Result<Interval> {
        let (a_tilde, _) = self.torsion_inverse_norms(n)?;
        if !a_tilde.certainly_le(&self.constants.a_max) {
            return Err(Error::NotApplicable(format!(
                "A = 8√3π²/{n}² = {a_tilde:.6} is not below f(1/√3)"
            )));
        }
        let b = self.delta_v_bracket(&a_tilde)?;
        let v = &self.constants.two_v3;
        let lo = v - &b.upper_bound();
        let hi = v - &b.lower_bound();
        Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
    }

    pub fn verify_lemma_suite(&self) -> LemmaReport {
        lemmas::run(self)
    }
}

pub fn torsion_inverse_norms(n: u32, prec: u32) -> Result<(Interval, Interval)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "torsion order must be positive".into(),
        ));
    }
    let pi2 = Interval::pi(prec).sqr();
    let n2 = Interval::from_int(n as i64 * n as i64, prec);
    let a_other = Interval::from_int(2, prec) * sqrt_int(3, prec) * pi2 / n2;
    let a_tilde = a_other.clone() * Interval::from_int(4, prec);
    Ok((a_tilde, a_other))
}
