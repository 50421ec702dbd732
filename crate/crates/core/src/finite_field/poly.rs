use std::fmt;

use super::element::same_field;
use super::{FFElement, Field};
use crate::error::{invalid, Result};

/// Polynomial over a finite field, low-to-high, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct FFPoly {
    field: Field,
    coeffs: Vec<FFElement>,
}

impl fmt::Debug for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for FFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_one() && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let t = match i {
                0 => cs,
                1 => format!("{cs}x"),
                _ => format!("{cs}x^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl FFPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FFElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !same_field(c.field(), field)) {
            return invalid("polynomial coefficients must lie in the polynomial's field");
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(FFPoly {
            field: field.clone(),
            coeffs,
        })
    }

    /// Coefficients given as integers in the prime field, low-to-high.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| FFElement::from_int(field, c)).collect();
        Self::new(field, coeffs).expect("same field")
    }

    /// Coefficients given by element index (base-p digits).
    pub fn from_indices(field: &Field, coeffs: &[u64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| FFElement::from_index(field, c))
            .collect();
        Self::new(field, coeffs).expect("same field")
    }

    pub fn zero(field: &Field) -> Self {
        FFPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FFElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(i as i64))
            .collect();
        Self::new(&self.field, coeffs).expect("same field")
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        let zero = FFElement::zero(&self.field);
        let mut quot = vec![zero.clone(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let factor = rem[top].mul(&lead_inv);
            if !factor.is_zero() {
                let shift = top - dd;
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = rem[shift + i].sub(&factor.mul(dc));
                }
                quot[shift] = factor;
            }
            rem.pop();
        }
        Some((
            Self::new(&self.field, quot).expect("same field"),
            Self::new(&self.field, rem).expect("same field"),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        match self.leading().and_then(|l| l.inv()) {
            None => self.clone(),
            Some(inv) => {
                let coeffs = self.coeffs.iter().map(|c| c.mul(&inv)).collect();
                Self::new(&self.field, coeffs).expect("same field")
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![FFElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.field, out).expect("same field")
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: &FFElement) -> Result<FFElement> {
        if !same_field(x.field(), &self.field) {
            return invalid("evaluation point lies in a different field");
        }
        let mut acc = FFElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        Ok(acc)
    }

    /// True iff gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return invalid("the zero polynomial has no squarefree status");
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Element indices of the coefficients.
    pub fn indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }
}

pub fn poly_is_squarefree(f: &FFPoly) -> Result<bool> {
    f.is_squarefree()
}

pub fn poly_eval(f: &FFPoly, x: &FFElement) -> Result<FFElement> {
    f.eval(x)
}
