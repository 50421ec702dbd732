//! Odd-characteristic finite fields F_{p^e} represented as F_p[x]/(modulus),
//! with polynomials over them and the quadratic character used for point
//! counting.

mod element;
mod poly;
pub(crate) mod prime_poly;
mod tables;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rug::ops::Pow;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use element::FFElement;
pub use poly::{poly_eval, poly_is_squarefree, FFPoly};
pub use tables::ZechTables;

/// Fields of at most this many elements get log/Zech tables for fast
/// enumeration.
pub const TABLE_LIMIT: u64 = 1 << 24;

pub type Field = Arc<FieldDesc>;

/// F_{p^(m·n)}: `q = p^m` is the base field size and `Q = q^n` the size of
/// the field itself.
pub struct FieldDesc {
    p: u32,
    m: u32,
    n: u32,
    modulus: Vec<u32>,
    order: Integer,
    tables: OnceLock<Option<Arc<ZechTables>>>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// F_{p^e} with the lexicographically first monic irreducible modulus.
pub fn make_field(p: u32, e: u32) -> Result<Field> {
    make_field_split(p, e, 1)
}

/// F_{p^(m·n)} viewed as the degree-`n` extension of F_{p^m}.
pub fn make_field_split(p: u32, m: u32, n: u32) -> Result<Field> {
    if p % 2 == 0 || !is_prime(p as u64) {
        return invalid(format!("p = {p} must be an odd prime"));
    }
    if m == 0 || n == 0 {
        return invalid("extension degrees must be at least 1");
    }
    let e = m
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidParameter("extension degree overflow".into()))?;
    let modulus = first_irreducible(p, e)?;
    let order = Integer::from(p).pow(e);
    Ok(Arc::new(FieldDesc {
        p,
        m,
        n,
        modulus,
        order,
        tables: OnceLock::new(),
    }))
}

/// Build a field from an explicit modulus (used when deserializing).
pub fn field_from_modulus(p: u32, m: u32, n: u32, modulus: Vec<u32>) -> Result<Field> {
    if p % 2 == 0 || !is_prime(p as u64) {
        return invalid(format!("p = {p} must be an odd prime"));
    }
    let e = (m as usize) * (n as usize);
    if modulus.len() != e + 1 || modulus[e] != 1 || modulus.iter().any(|&c| c >= p) {
        return invalid("modulus must be monic of degree m·n with coefficients in [0, p)");
    }
    if !prime_poly::is_irreducible(&modulus, p) {
        return invalid("modulus is reducible");
    }
    Ok(Arc::new(FieldDesc {
        p,
        m,
        n,
        modulus,
        order: Integer::from(p).pow(e as u32),
        tables: OnceLock::new(),
    }))
}

fn first_irreducible(p: u32, e: u32) -> Result<Vec<u32>> {
    let e = e as usize;
    if e == 1 {
        return Ok(vec![0, 1]);
    }
    // lower coefficients as base-p digits of a counter, most significant
    // digit first in the ordering
    let mut lower = vec![0u32; e];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if prime_poly::is_irreducible(&f, p) {
            return Ok(f);
        }
        let mut i = 0;
        loop {
            if i == e {
                return Err(Error::Internal(format!(
                    "no irreducible polynomial of degree {e} over F_{p}"
                )));
            }
            lower[i] += 1;
            if lower[i] == p {
                lower[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

impl FieldDesc {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// m·n, the degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.m * self.n
    }

    pub fn base_degree(&self) -> u32 {
        self.m
    }

    pub fn ext_degree(&self) -> u32 {
        self.n
    }

    /// Monic modulus, low-to-high coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Q = p^(m·n).
    pub fn order(&self) -> &Integer {
        &self.order
    }

    /// q = p^m.
    pub fn base_order(&self) -> Integer {
        Integer::from(self.p).pow(self.m)
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    /// Log/Zech tables when the field is small enough to tabulate.
    pub fn tables(&self) -> Option<Arc<ZechTables>> {
        self.tables
            .get_or_init(|| match self.order_u64() {
                Some(q) if q <= TABLE_LIMIT => Some(Arc::new(ZechTables::build(self))),
                _ => None,
            })
            .clone()
    }

    /// `out = a·b mod modulus` on raw coefficient slices of length `degree()`.
    pub(crate) fn mul_coeffs(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        let e = self.modulus.len() - 1;
        let p = self.p as u64;
        let mut acc = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (e..acc.len()).rev() {
            let c = acc[top];
            if c == 0 {
                continue;
            }
            // x^e = -(modulus[0] + ... + modulus[e-1] x^(e-1))
            for (k, &mk) in self.modulus[..e].iter().enumerate() {
                let idx = top - e + k;
                acc[idx] = (acc[idx] + (p - mk as u64) * c) % p;
            }
            acc[top] = 0;
        }
        out.clear();
        out.extend(acc[..e].iter().map(|&v| v as u32));
    }

    /// Coefficient vector to the integer index Σ c_i p^i.
    pub(crate) fn coeffs_to_index(&self, coeffs: &[u32]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub(crate) fn index_to_coeffs(&self, mut idx: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.degree())
            .map(|_| {
                let c = (idx % p) as u32;
                idx /= p;
                c
            })
            .collect()
    }

    /// Text form "GF(p^e)".
    pub fn label(&self) -> String {
        format!("GF({}^{})", self.p, self.degree())
    }
}

/// `{p, e, modulus}` plus the (m, n) split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldRecord {
    pub fn of(field: &FieldDesc) -> Self {
        FieldRecord {
            p: field.p,
            e: field.degree(),
            m: field.m,
            n: field.n,
            modulus: field.modulus.clone(),
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        if self.m * self.n != self.e {
            return invalid("e must equal m·n");
        }
        field_from_modulus(self.p, self.m, self.n, self.modulus.clone())
    }
}

/// Quadratic character of `a`: 0, +1 or -1.
pub fn quadratic_character(a: &FFElement) -> i32 {
    a.quadratic_character()
}
