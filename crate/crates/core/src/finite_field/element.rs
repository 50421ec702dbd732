use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rug::Integer;

use super::Field;
use crate::error::{invalid, Result};

/// Element of F_p[x]/(modulus); `coeffs` are residues in [0, p), low-to-high.
#[derive(Clone)]
pub struct FFElement {
    field: Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 if c == 1 => "a".to_string(),
                1 => format!("{c}*a"),
                _ if c == 1 => format!("a^{i}"),
                _ => format!("{c}*a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})", terms.join("+"))
        }
    }
}

impl PartialEq for FFElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FFElement {}

pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FFElement {
    pub fn zero(field: &Field) -> Self {
        FFElement {
            field: field.clone(),
            coeffs: vec![0; field.degree() as usize],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(field: &Field, v: i64) -> Self {
        let p = field.characteristic() as i64;
        let mut e = Self::zero(field);
        e.coeffs[0] = v.rem_euclid(p) as u32;
        e
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<u32>) -> Result<Self> {
        let p = field.characteristic();
        if coeffs.len() != field.degree() as usize {
            return invalid(format!(
                "element needs {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            ));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return invalid("element coefficients must lie in [0, p)");
        }
        Ok(FFElement {
            field: field.clone(),
            coeffs,
        })
    }

    /// Element with base-p digits of `idx` as coefficients.
    pub fn from_index(field: &Field, idx: u64) -> Self {
        FFElement {
            field: field.clone(),
            coeffs: field.index_to_coeffs(idx),
        }
    }

    pub fn index(&self) -> u64 {
        self.field.coeffs_to_index(&self.coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "finite field elements from different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FFElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FFElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.characteristic();
        FFElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Vec::new();
        self.field.mul_coeffs(&self.coeffs, &other.coeffs, &mut out);
        FFElement {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Multiply by an integer (repeated addition, i.e. via the prime field).
    pub fn scale(&self, k: i64) -> Self {
        let p = self.field.characteristic() as i64;
        let k = k.rem_euclid(p) as u64;
        FFElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&a| (a as u64 * k % p as u64) as u32)
                .collect(),
        }
    }

    pub fn pow(&self, exp: &Integer) -> Self {
        let mut acc = Self::one(&self.field);
        let bits = exp.significant_bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc);
            if exp.get_bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        self.pow(&Integer::from(exp))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let exp = Integer::from(self.field.order() - 2u32);
        Some(self.pow(&exp))
    }

    /// The Frobenius map a ↦ a^p.
    pub fn frobenius(&self) -> Self {
        self.pow_u64(self.field.characteristic() as u64)
    }

    /// a^((Q-1)/2) mapped to {-1, 0, +1}.
    pub fn quadratic_character(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let exp = Integer::from(self.field.order() - 1u32) / 2u32;
        let r = self.pow(&exp);
        if r.is_one() {
            1
        } else {
            debug_assert!(r == Self::one(&self.field).neg());
            -1
        }
    }

}

impl<'a> Add<&'a FFElement> for &'a FFElement {
    type Output = FFElement;
    fn add(self, rhs: &'a FFElement) -> FFElement {
        FFElement::add(self, rhs)
    }
}

impl<'a> Sub<&'a FFElement> for &'a FFElement {
    type Output = FFElement;
    fn sub(self, rhs: &'a FFElement) -> FFElement {
        FFElement::sub(self, rhs)
    }
}

impl<'a> Mul<&'a FFElement> for &'a FFElement {
    type Output = FFElement;
    fn mul(self, rhs: &'a FFElement) -> FFElement {
        FFElement::mul(self, rhs)
    }
}

impl Neg for &FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        FFElement::neg(self)
    }
}
