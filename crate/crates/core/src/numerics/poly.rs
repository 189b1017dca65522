use super::interval::Interval;
use super::jet::{horner, Real};
use super::{EnclosureFunction, RealFn};

/// A polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() == 1 {
            return IntPoly::new(vec![0]);
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as i64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> IntPoly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval<T: Real>(&self, x: &T) -> T {
        horner(x, &self.coeffs)
    }

    pub fn eval_i64(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
}

impl RealFn for IntPoly {
    fn apply<T: Real>(&self, x: &T) -> T {
        self.eval(x)
    }
}

impl EnclosureFunction for IntPoly {
    fn eval(&self, x: &Interval) -> Interval {
        horner(x, &self.coeffs)
    }

    fn taylor(&self, x: &Interval, order: usize) -> Option<super::Jet> {
        Some(horner(&super::Jet::variable(x, order), &self.coeffs))
    }
}
