//! Multiprecision complex numbers on top of MPFR reals, and root seeding
//! for integer polynomials.

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Float, Integer};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        HpComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn from_real(x: &Float) -> Self {
        HpComplex::new(x.clone(), Float::new(x.prec()))
    }

    pub fn from_int(x: &Integer, prec: u32) -> Self {
        HpComplex::new(Float::with_val(prec, x), Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Self) -> Self {
        HpComplex::new(Float::with_val(self.prec(), &self.re + &o.re), Float::with_val(self.prec(), &self.im + &o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex::new(Float::with_val(self.prec(), &self.re - &o.re), Float::with_val(self.prec(), &self.im - &o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        HpComplex::new(re, im)
    }

    pub fn scale(&self, k: &Float) -> Self {
        HpComplex::new(Float::with_val(self.prec(), &self.re * k), Float::with_val(self.prec(), &self.im * k))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        HpComplex::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let c = self.conj();
        HpComplex::new(Float::with_val(self.prec(), &c.re / &n), Float::with_val(self.prec(), &c.im / &n))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn powu(&self, mut e: u32) -> Self {
        let mut acc = HpComplex::new(Float::with_val(self.prec(), 1), Float::new(self.prec()));
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Horner evaluation of an integer polynomial at a complex point.
pub fn eval_int_poly(coeffs: &[Integer], z: &HpComplex) -> HpComplex {
    let prec = z.prec();
    let mut acc = HpComplex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&HpComplex::from_int(c, prec));
    }
    acc
}

/// Horner evaluation at a real point.
pub fn eval_int_poly_real(coeffs: &[Integer], x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::new(prec);
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// All complex roots of a polynomial with double-precision coefficients
/// (low-to-high, nonzero leading term) by Aberth–Ehrlich iteration.
pub fn aberth_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound for the initial circle
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Newton refinement of a simple real root of an integer polynomial,
/// starting from `seed`, to `prec` bits.
pub fn refine_real_root(coeffs: &[Integer], seed: f64, prec: u32) -> Option<Float> {
    let deriv = crate::intpoly::derivative(coeffs);
    let work = prec + 32;
    let mut t = Float::with_val(work, seed);
    let tol = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 8));
    for _ in 0..200 {
        let f = eval_int_poly_real(coeffs, &t);
        let df = eval_int_poly_real(&deriv, &t);
        if df.is_zero() {
            return None;
        }
        let step = Float::with_val(work, &f / &df);
        t -= &step;
        let scale = Float::with_val(work, t.abs_ref()) + 1u32;
        if Float::with_val(work, step.abs_ref()) <= Float::with_val(work, &tol * &scale) {
            return Some(Float::with_val(prec, &t));
        }
    }
    None
}
