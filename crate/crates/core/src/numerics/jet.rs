use std::ops::{Add, Div, Mul, Neg, Sub};

use super::interval::Interval;

/// Arithmetic shared by plain interval evaluation and truncated Taylor
/// arithmetic, so one function body yields both values and derivatives.
pub trait Real:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// A constant with the same shape (precision, jet order) as `self`.
    fn constant(&self, c: &Interval) -> Self;
    fn int(&self, k: i64) -> Self;
    fn exp(&self) -> Self;
}

impl Real for Interval {
    fn constant(&self, c: &Interval) -> Self {
        c.clone()
    }
    fn int(&self, k: i64) -> Self {
        Interval::from_int(k, self.prec())
    }
    fn exp(&self) -> Self {
        Interval::exp(self)
    }
}

/// Evaluates the integer polynomial with ascending coefficients `coeffs` at `x`.
pub fn horner<T: Real>(x: &T, coeffs: &[i64]) -> T {
    let mut acc = x.int(0);
    for &c in coeffs.iter().rev() {
        acc = acc * x.clone() + x.int(c);
    }
    acc
}

/// Truncated Taylor series `sum c_k t^k`, `k < len`, with interval
/// coefficients. `c_k` encloses `g^(k)(x) / k!`.
#[derive(Clone, Debug)]
pub struct Jet {
    coeffs: Vec<Interval>,
}

impl Jet {
    /// The independent variable `x + t` expanded at `x`, to `order` terms.
    pub fn variable(x: &Interval, order: usize) -> Jet {
        let mut coeffs = vec![Interval::zero(x.prec()); order.max(1)];
        coeffs[0] = x.clone();
        if order > 1 {
            coeffs[1] = Interval::one(x.prec());
        }
        Jet { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Interval>) -> Jet {
        assert!(!coeffs.is_empty());
        Jet { coeffs }
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Interval {
        &self.coeffs[k]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Enclosure of the `k`-th derivative, `k! c_k`.
    pub fn derivative(&self, k: usize) -> Interval {
        let prec = self.coeffs[k].prec();
        let mut fact = Interval::one(prec);
        for j in 2..=k as i64 {
            fact = fact * Interval::from_int(j, prec);
        }
        &self.coeffs[k] * &fact
    }

    fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    fn zeros(&self) -> Vec<Interval> {
        vec![Interval::zero(self.prec()); self.order()]
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Jet { coeffs }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Jet { coeffs }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let mut out = self.zeros();
        out.truncate(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Jet { coeffs: out }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        // q = a / b  <=>  q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0
        let n = self.order().min(rhs.order());
        let b0 = &rhs.coeffs[0];
        let mut q: Vec<Interval> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = &acc - &(&rhs.coeffs[j] * &q[k - j]);
            }
            q.push(&acc / b0);
        }
        Jet { coeffs: q }
    }
}

impl Real for Jet {
    fn constant(&self, c: &Interval) -> Self {
        let mut coeffs = self.zeros();
        coeffs[0] = c.clone();
        Jet { coeffs }
    }

    fn int(&self, k: i64) -> Self {
        self.constant(&Interval::from_int(k, self.prec()))
    }

    fn exp(&self) -> Self {
        // y = exp(a)  <=>  k y_k = sum_{j=1..k} j a_j y_{k-j}
        let n = self.order();
        let prec = self.prec();
        let mut y: Vec<Interval> = Vec::with_capacity(n);
        y.push(self.coeffs[0].exp());
        for k in 1..n {
            let mut acc = Interval::zero(prec);
            for j in 1..=k {
                let term = &self.coeffs[j] * &y[k - j];
                acc = &acc + &(&term * &Interval::from_int(j as i64, prec));
            }
            y.push(&acc / &Interval::from_int(k as i64, prec));
        }
        Jet { coeffs: y }
    }
}
