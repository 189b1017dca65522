use serde::Serialize;

use super::functions::{g_poly, p_poly, r_poly, QUARTIC};
use super::HkCone;
use crate::numerics::{
    certify_sign, EnclosureFunction, IntPoly, Interval, Pointwise, Sign, SignCertificate,
};

/// Distance kept from endpoints where the certified quantity vanishes.
pub const EPSILON: &str = "1e-3";

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub id: String,
    pub statement: String,
    pub domain: Interval,
    pub expected: Sign,
    pub certificate: SignCertificate,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.certificate.sign == self.expected
    }
}

/// A point value reported alongside the sign checks.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaValue {
    pub label: String,
    pub enclosure: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
    pub values: Vec<LemmaValue>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }

    pub fn check(&self, id: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn value(&self, label: &str) -> Option<&Interval> {
        self.values
            .iter()
            .find(|v| v.label == label)
            .map(|v| &v.enclosure)
    }
}

struct Suite<'a> {
    cone: &'a HkCone,
    checks: Vec<LemmaCheck>,
}

impl Suite<'_> {
    fn prove<F: EnclosureFunction>(
        &mut self,
        id: &str,
        statement: &str,
        f: F,
        domain: Interval,
        expected: Sign,
    ) {
        let certificate = certify_sign(&f, &domain, self.cone.settings().sign_depth);
        self.checks.push(LemmaCheck {
            id: id.into(),
            statement: statement.into(),
            domain,
            expected,
            certificate,
        });
    }
}

pub(super) fn run(cone: &HkCone) -> LemmaReport {
    let prec = cone.settings().prec();
    let num = |s: &str| Interval::parse(s, prec).expect("literal decimal");
    let eps = num(EPSILON);
    let one = Interval::one(prec);
    let z0 = cone.constants().z0.clone();
    let span = |a: &Interval, b: &Interval| Interval::new(a.lo().clone(), b.hi().clone());
    let z0_in = z0.clone() + eps.clone();
    let one_in = one.clone() - eps.clone();
    let entire = move || Interval::entire(prec);
    let mut s = Suite {
        cone,
        checks: Vec::new(),
    };

    s.prove(
        "i",
        "p(z) > 0",
        p_poly(),
        span(&z0_in, &one),
        Sign::Positive,
    );
    s.prove(
        "ii.a",
        "4z² − 4 < 0",
        IntPoly::new(vec![-4, 0, 4]),
        span(&z0, &one_in),
        Sign::Negative,
    );
    s.prove(
        "ii.b",
        "z⁴ − 6z² + 1 < 0",
        IntPoly::new(QUARTIC.to_vec()),
        span(&z0, &one_in),
        Sign::Negative,
    );
    s.prove(
        "iii.a",
        "f'(z) < 0",
        Pointwise(|z: &Interval| cone.eval_f_prime(z).unwrap_or_else(|_| entire())),
        span(&z0_in, &one_in),
        Sign::Negative,
    );
    s.prove(
        "iii.b",
        "f̃'(z) < 0",
        Pointwise(|z: &Interval| cone.eval_ftilde_prime(z).unwrap_or_else(|_| entire())),
        span(&z0_in, &one_in),
        Sign::Negative,
    );
    let z83 = num("0.83");
    s.prove("iv", "g(z) > 0", g_poly(), span(&z83, &one), Sign::Positive);
    let r = r_poly();
    let half_to_one = span(&num("0.5"), &one);
    s.prove(
        "v.r4",
        "r⁗(z) > 0",
        r.nth_derivative(4),
        half_to_one.clone(),
        Sign::Positive,
    );
    s.prove(
        "v.r3",
        "r‴(z) < 0",
        r.nth_derivative(3),
        half_to_one.clone(),
        Sign::Negative,
    );
    s.prove(
        "v.r2",
        "r″(z) < 0",
        r.nth_derivative(2),
        half_to_one.clone(),
        Sign::Negative,
    );
    s.prove(
        "v.r1",
        "r′(z) < 0",
        r.derivative(),
        half_to_one,
        Sign::Negative,
    );
    let z83_sq = z83.sqr();
    s.prove(
        "v",
        "r(z) < 0",
        r.clone(),
        span(&z83_sq, &one),
        Sign::Negative,
    );
    // (1 − z) factored out so the endpoint z = 1 does not blur the sign
    let c = cone.constants().c.clone();
    let four = Interval::from_int(4, prec);
    s.prove(
        "vi",
        "f̃(z) − 4f(z) < 0",
        Pointwise(|z: &Interval| {
            let e = cone.growth_f(z);
            let et = cone.growth_ftilde(z);
            match (e, et) {
                (Ok(e), Ok(et)) => (one.clone() - z.clone()) * c.clone() * (et - four.clone() * e),
                _ => entire(),
            }
        }),
        span(&(z83.clone() + eps.clone()), &one_in),
        Sign::Negative,
    );

    let half = num("0.5");
    let values = vec![
        ("r(0.83²)", r.eval(&z83_sq)),
        ("r‴(1)", r.nth_derivative(3).eval(&Interval::one(prec))),
        ("r″(0.5)", r.nth_derivative(2).eval(&half)),
        ("r′(0.5)", r.derivative().eval(&half)),
        (
            "f̃(0.83)",
            cone.eval_ftilde(&z83).unwrap_or_else(|_| entire()),
        ),
        (
            "4f(0.83)",
            four.clone() * cone.eval_f(&z83).unwrap_or_else(|_| entire()),
        ),
    ]
    .into_iter()
    .map(|(label, enclosure)| LemmaValue {
        label: label.into(),
        enclosure,
    })
    .collect();

    LemmaReport {
        checks: s.checks,
        values,
    }
}
