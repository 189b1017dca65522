use std::sync::OnceLock;

use orbivol::cusp_slopes::{
    canonicalize, census_manifold, enumerate_candidates, fkp_volume_lower_bound, inverse_norm,
    slope_length, Slope,
};
use orbivol::hk_cone::HkCone;
use orbivol::numerics::{invert_monotone, sqrt_int, two_v3, Pointwise};
use orbivol::symmetry::{volume_lower_bound, IndexKind, Setting, SymmetryQuery};
use orbivol::tube_drill::{orbifold_volume_lower_bound, tube_radius, x_value};
use orbivol::{Interval, Settings};
use proptest::prelude::*;

const P: u32 = 60;

fn cone() -> &'static HkCone {
    static CONE: OnceLock<HkCone> = OnceLock::new();
    CONE.get_or_init(|| HkCone::new(&Settings::default()).unwrap())
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::from_f64(a.min(b), P).hull(&Interval::from_f64(a.max(b), P))
}

type Eval<'a> = &'a dyn Fn(&Interval) -> orbivol::Result<Interval>;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg(256))]

    #[test]
    fn arithmetic_encloses_wide_precision(x in -1e3..1e3f64, y in -1e3..1e3f64) {
        let (a, b) = (Interval::from_f64(x, P), Interval::from_f64(y, P));
        let (wa, wb) = (Interval::from_f64(x, 256), Interval::from_f64(y, 256));
        prop_assert!((a.clone() + b.clone()).encloses(&(wa.clone() + wb.clone())));
        prop_assert!((a.clone() - b.clone()).encloses(&(wa.clone() - wb.clone())));
        prop_assert!((a.clone() * b.clone()).encloses(&(wa.clone() * wb.clone())));
        if y != 0.0 {
            prop_assert!((a.clone() / b.clone()).encloses(&(wa.clone() / wb.clone())));
        }
        prop_assert!(a.exp().encloses(&wa.exp()) || x > 700.0);
        prop_assert!(a.sin().encloses(&wa.sin()));
    }

    #[test]
    fn canonical_form_is_idempotent(a in -50i64..50, b in -50i64..50) {
        prop_assume!((a, b) != (0, 0));
        let s = canonicalize(a, b).unwrap();
        prop_assert_eq!(canonicalize(s.a, s.b).unwrap(), s);
        prop_assert_eq!(canonicalize(-a, -b).unwrap(), s);
    }

    #[test]
    fn slope_length_is_homogeneous(a in -20i64..20, b in -20i64..20, k in 1i64..9) {
        prop_assume!((a, b) != (0, 0));
        let m = census_manifold("m003", P).unwrap();
        let base = slope_length(&m.lattice, canonicalize(a, b).unwrap());
        let multiple = slope_length(&m.lattice, canonicalize(k * a, k * b).unwrap());
        prop_assert!(multiple.intersects(&(base * Interval::from_int(k, P))));
    }

    #[test]
    fn symmetry_bound_is_linear_in_order(order in 1u64..10_000, index in 1u64..12) {
        for setting in [Setting::Closed, Setting::Cusped] {
            let q = SymmetryQuery::new(order, index, IndexKind::Torsion, setting).unwrap();
            let unit = SymmetryQuery { group_order: 1, ..q };
            let scaled = volume_lower_bound(&unit, P) * Interval::from_int(order as i64, P);
            prop_assert!(volume_lower_bound(&q, P).intersects(&scaled));
        }
    }
}

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn subdivision_refines_hk_functions(a in 0.45..0.99f64, t in 0.0..1.0f64, w in 0.0..0.01f64) {
        let whole = iv(a, a + w);
        let m = a + t * w;
        let (left, right) = (iv(a, m), iv(m, a + w));
        let h = cone();
        let evals: [Eval; 6] = [
            &|z| h.eval_l(z),
            &|z| h.eval_u(z),
            &|z| h.eval_F(z),
            &|z| h.eval_Ftilde(z),
            &|z| h.eval_f(z),
            &|z| h.eval_ftilde(z),
        ];
        for (k, e) in evals.iter().enumerate() {
            let (whole, l, r) = (e(&whole).unwrap(), e(&left).unwrap(), e(&right).unwrap());
            prop_assert!(whole.encloses(&l) && whole.encloses(&r), "function {}", k);
        }
    }

    #[test]
    fn inversion_round_trip(a in 0.0..0.68f64) {
        let h = cone();
        let target = Interval::from_f64(a, P);
        let z = h.invert_f(&target).unwrap();
        prop_assert!(h.eval_f(&z).unwrap().encloses(&target));
        let z = h.invert_ftilde(&target).unwrap();
        prop_assert!(h.eval_ftilde(&z).unwrap().encloses(&target));
    }

    #[test]
    fn brackets_are_monotone(a in 0.0..0.68f64, b in 0.0..0.68f64) {
        prop_assume!(a < b);
        let h = cone();
        let x = h.delta_v_bracket(&Interval::from_f64(a, P)).unwrap();
        let y = h.delta_v_bracket(&Interval::from_f64(b, P)).unwrap();
        prop_assert!(x.lower_bound().lo() <= y.lower_bound().lo());
        prop_assert!(x.upper_bound().hi() <= y.upper_bound().hi());
        prop_assert!(x.lower_bound().hi() <= x.upper_bound().lo());
    }

    #[test]
    fn inversion_image_contains_target(
        k in 0.1..5.0f64,
        c in -1.0..1.0f64,
        d in 0.0..0.4f64,
        t in 0.05..0.95f64,
    ) {
        // (x³ + kx + c) / (1 + d x) is increasing on [0, 1]
        let g = Pointwise(move |x: &Interval| {
            let one = Interval::one(P);
            (x.powi(3) + Interval::from_f64(k, P) * x.clone() + Interval::from_f64(c, P))
                / (one + Interval::from_f64(d, P) * x.clone())
        });
        let lo = c;
        let hi = (1.0 + k + c) / (1.0 + d);
        let target = Interval::from_f64(lo + t * (hi - lo), P);
        let bracket = iv(0.0, 1.0);
        let z = invert_monotone(&g, &target, &bracket, 1e-10).unwrap();
        prop_assert!(orbivol::numerics::EnclosureFunction::eval(&g, &z).encloses(&target));
        prop_assert!(z.width_f64() <= 1e-10);
    }
}

#[test]
fn brackets_vanish_with_inverse_norm() {
    let h = cone();
    let mut last = f64::INFINITY;
    for e in 1..=8 {
        let a = Interval::from_f64(10f64.powi(-e), P);
        let b = h.delta_v_bracket(&a).unwrap();
        let top = b.upper_bound().mid_f64();
        assert!(top < last && top >= 0.0);
        last = top;
    }
    assert!(last < 1e-8);
}

#[test]
fn closed_form_constants() {
    let x8 = x_value(8, P).unwrap();
    assert!((x8.mid_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-12);
    let z0 = &cone().constants().z0;
    assert!((z0.mid_f64() - (5f64.sqrt() - 2.0).sqrt()).abs() < 1e-12);
}

#[test]
fn tube_radius_recovers_x() {
    for n in 4..=60 {
        let r = tube_radius(n, P).unwrap();
        let back = (r * Interval::from_int(2, P)).cosh();
        assert!(back.intersects(&x_value(n, P).unwrap()), "n = {n}");
    }
}

#[test]
fn large_torsion_beats_figure_eight() {
    let threshold = Interval::parse("2.02989", P).unwrap();
    let parent = Interval::parse("2.568", P).unwrap();
    for n in 11..=300 {
        let b = orbifold_volume_lower_bound(n, &parent).unwrap();
        assert!(b.certainly_gt(&threshold), "n = {n}");
    }
}

#[test]
fn inverse_norm_is_scale_invariant() {
    let m = census_manifold("m004", P).unwrap();
    for t in ["0.5", "2", "7.3"] {
        let scaled = m.lattice.scaled(&Interval::parse(t, P).unwrap()).unwrap();
        for (a, b) in [(1, 0), (3, 2), (-5, 7)] {
            let s = canonicalize(a, b).unwrap();
            assert!(inverse_norm(&scaled, s).intersects(&inverse_norm(&m.lattice, s)));
        }
    }
}

#[test]
fn fkp_bound_increases_with_length() {
    let vol = two_v3(P);
    let mut last: Option<Interval> = None;
    for k in 0..100 {
        let len = Interval::from_f64(6.3 + 0.25 * k as f64, P);
        let b = fkp_volume_lower_bound(&vol, &len).unwrap().unwrap();
        assert!(b.certainly_lt(&vol));
        if let Some(prev) = &last {
            assert!(prev.certainly_lt(&b));
        }
        last = Some(b);
    }
}

#[test]
fn candidates_have_exact_gcd_and_contain_n_zero() {
    let m = census_manifold("m004", P).unwrap();
    for n in 3..=14u32 {
        let len = Interval::from_int(n as i64, P);
        let fkp = fkp_volume_lower_bound(&m.volume, &len).unwrap();
        // any bound above the FKP value of (n, 0) must admit it
        let bound = match fkp {
            Some(b) => b + Interval::parse("1e-3", P).unwrap(),
            None => Interval::parse("0.5", P).unwrap(),
        };
        let got = enumerate_candidates(&m, n, &bound).unwrap();
        assert!(
            got.iter().any(|c| c.slope == Slope { a: n as i64, b: 0 }),
            "n = {n}"
        );
        for c in &got {
            assert_eq!(orbivol::cusp_slopes::gcd(c.slope.a, c.slope.b), n as i64);
        }
    }
}

#[test]
fn sqrt_constants_square_back() {
    for k in [2, 3, 5] {
        let r = sqrt_int(k, P);
        assert!(r.sqr().contains_f64(k as f64));
    }
}
