use super::interval::Interval;

const V3_DIGITS: &str = "1.014941606409653625021202554274520285941689307530299792017489106776597";
const V8_DIGITS: &str = "3.663862376708876060218414059729536443096597497126688537065992478487052";
const DIGIT_SLACK: &str = "1e-68";

fn from_digits(digits: &str, prec: u32) -> Interval {
    let mid = Interval::parse(digits, prec).expect("constant literal");
    let slack = Interval::parse(DIGIT_SLACK, prec).expect("constant literal");
    mid.inflate(&slack)
}

/// Volume of the regular ideal tetrahedron.
pub fn v3(prec: u32) -> Interval {
    from_digits(V3_DIGITS, prec)
}

pub fn two_v3(prec: u32) -> Interval {
    v3(prec) * Interval::from_int(2, prec)
}

/// Volume of the regular ideal octahedron.
pub fn v8(prec: u32) -> Interval {
    from_digits(V8_DIGITS, prec)
}

pub fn sqrt_int(k: i64, prec: u32) -> Interval {
    Interval::from_int(k, prec)
        .sqrt()
        .expect("square root of a nonnegative integer")
}
