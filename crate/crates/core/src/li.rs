//! Linear independence of {π, θ_1, ..., θ_g} over Q: exact degeneracy
//! certificates from integer polynomial arithmetic, then an integer-relation
//! search by lattice reduction on high-precision angles.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::hp::pi;
use crate::intpoly;
use crate::zeta::ZetaData;

pub const DEFAULT_HEIGHT: u64 = 100;
pub const DEFAULT_PRECISION_BITS: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LiStatus {
    FalseExact,
    RelationNumeric,
    ProbableLi,
}

impl LiStatus {
    pub fn name(self) -> &'static str {
        match self {
            LiStatus::FalseExact => "FALSE_EXACT",
            LiStatus::RelationNumeric => "RELATION_NUMERIC",
            LiStatus::ProbableLi => "PROBABLE_LI",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    RepeatedZero,
    RealZero,
    ImaginaryZero,
    RepeatedAngle,
    None,
}

impl Witness {
    pub fn name(self) -> &'static str {
        match self {
            Witness::RepeatedZero => "repeated-zero",
            Witness::RealZero => "real-zero",
            Witness::ImaginaryZero => "imaginary-zero",
            Witness::RepeatedAngle => "repeated-angle",
            Witness::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LIReport {
    pub status: LiStatus,
    pub witness: Witness,
    /// (c_0, c_1, ..., c_g) with c_0 π + Σ c_j θ_j = 0.
    pub relations: Vec<Vec<i64>>,
    pub height_bound: u64,
    pub precision_bits: u32,
}

impl LIReport {
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.name(),
            "witness": self.witness.name(),
            "relations": self.relations,
            "H": self.height_bound,
            "precision_bits": self.precision_bits,
        })
    }

    pub fn is_probable_li(&self) -> bool {
        self.status == LiStatus::ProbableLi
    }
}

fn nonconstant_gcd(a: &[Integer], b: &[Integer]) -> bool {
    intpoly::degree(&intpoly::gcd(a, b)).unwrap_or(0) > 0
}

/// First exact obstruction to LI found in P, in the order repeated zero,
/// real zero (θ ∈ {0, π}), imaginary zero (θ = π/2), repeated angle.
pub fn exact_degeneracy(p: &[Integer], q: &Integer) -> Witness {
    if nonconstant_gcd(p, &intpoly::derivative(p)) {
        return Witness::RepeatedZero;
    }
    let qu2_minus_1 = [Integer::from(-1), Integer::new(), q.clone()];
    if nonconstant_gcd(p, &qu2_minus_1) {
        return Witness::RealZero;
    }
    let qu2_plus_1 = [Integer::from(1), Integer::new(), q.clone()];
    if nonconstant_gcd(p, &qu2_plus_1) {
        return Witness::ImaginaryZero;
    }
    let r = intpoly::real_weil_polynomial(p, q);
    if nonconstant_gcd(&r, &intpoly::derivative(&r)) {
        return Witness::RepeatedAngle;
    }
    Witness::None
}

/// Something that can produce the eigenangles θ_1..θ_g at a requested
/// precision.
pub trait AngleSource {
    fn angles(&self, prec: u32) -> Result<Vec<Float>>;
}

impl AngleSource for ZetaData {
    fn angles(&self, prec: u32) -> Result<Vec<Float>> {
        if self.precision() >= prec {
            return Ok(self.thetas().iter().map(|t| Float::with_val(prec, t)).collect());
        }
        Ok(self.refined(prec)?.thetas().to_vec())
    }
}

/// Angles given as rational multiples (num/den)·π.
#[derive(Debug, Clone)]
pub struct RationalAngles(pub Vec<(i64, i64)>);

impl AngleSource for RationalAngles {
    fn angles(&self, prec: u32) -> Result<Vec<Float>> {
        let pi = pi(prec);
        self.0
            .iter()
            .map(|&(n, d)| {
                if d == 0 {
                    return invalid("zero denominator");
                }
                Ok(Float::with_val(prec, &pi * n) / d)
            })
            .collect()
    }
}

/// Any closure returning angles at a given precision.
pub struct AngleFn<F>(pub F);

impl<F: Fn(u32) -> Vec<Float>> AngleSource for AngleFn<F> {
    fn angles(&self, prec: u32) -> Result<Vec<Float>> {
        Ok((self.0)(prec))
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::new();
    for (x, y) in a.iter().zip(b) {
        s += Rational::from(x * y);
    }
    s
}

struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    norms: Vec<Rational>,
}

fn gram_schmidt(basis: &[Vec<Integer>]) -> GramSchmidt {
    let n = basis.len();
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|r| r.iter().map(|c| Rational::from(c.clone())).collect())
        .collect();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::new(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            if norms[j] == 0 {
                continue;
            }
            let m = Rational::from(dot(&rows[i], &star[j]) / &norms[j]);
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= Rational::from(&m * sk);
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

/// LLL reduction (δ = 99/100) in exact rational arithmetic.
fn lll(basis: &mut [Vec<Integer>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let delta = Rational::from((99, 100));
    let half = Rational::from((1, 2));
    let mut gs = gram_schmidt(basis);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            if Rational::from(gs.mu[k][j].abs_ref()) > half {
                let r = Integer::from(gs.mu[k][j].round_ref());
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= Integer::from(&r * y);
                }
                let rr = Rational::from(r);
                for l in 0..j {
                    let t = Rational::from(&rr * &gs.mu[j][l]);
                    gs.mu[k][l] -= t;
                }
                gs.mu[k][j] -= &rr;
            }
        }
        let m2 = Rational::from(gs.mu[k][k - 1].square_ref());
        let lhs = gs.norms[k].clone();
        let rhs = Rational::from(&delta - &m2) * &gs.norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            gs = gram_schmidt(basis);
            k = (k - 1).max(1);
        }
    }
}

fn residual(c: &[i64], x: &[Float]) -> Float {
    let prec = x[0].prec();
    let mut acc = Float::new(prec);
    for (ci, xi) in c.iter().zip(x) {
        acc += Float::with_val(prec, xi * *ci);
    }
    acc.abs()
}

/// Sign convention: the first nonzero coefficient among c_1..c_g (or c_0 if
/// they all vanish) is positive.
fn normalize(mut c: Vec<i64>) -> Vec<i64> {
    let lead = c[1..].iter().chain(c[..1].iter()).find(|&&v| v != 0).copied();
    if lead.is_some_and(|v| v < 0) {
        for v in c.iter_mut() {
            *v = -*v;
        }
    }
    c
}

/// Integer relations c_0 π + Σ c_j θ_j = 0 with max |c_i| ≤ H among the
/// vectors of the LLL-reduced relation lattice at scale 2^prec, each checked
/// again at doubled precision.
pub fn relation_search(source: &dyn AngleSource, h: u64, prec: u32) -> Result<LIReport> {
    if h == 0 {
        return invalid("height bound H must be at least 1");
    }
    if prec < 32 {
        return invalid("precision must be at least 32 bits");
    }
    let thetas = source.angles(prec)?;
    let mut x = vec![pi(prec)];
    x.extend(thetas.iter().map(|t| Float::with_val(prec, t)));
    let n = x.len();
    let scale = Float::with_val(prec + 16, Float::i_exp(1, prec as i32));
    let mut basis: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            let mut row = vec![Integer::new(); n + 1];
            row[i] = Integer::from(1);
            let v = Float::with_val(prec + 16, &x[i] * &scale);
            row[n] = v.to_integer().expect("finite angle");
            row
        })
        .collect();
    lll(&mut basis);

    let wide = source.angles(2 * prec)?;
    let mut xw = vec![pi(2 * prec)];
    xw.extend(wide.iter().map(|t| Float::with_val(2 * prec, t)));
    let accept = Float::with_val(2 * prec, Float::i_exp(1, -(prec as i32) / 2));
    let ambiguous = Float::with_val(2 * prec, Float::i_exp(1, -(prec as i32) / 4));

    let mut relations: Vec<Vec<i64>> = Vec::new();
    for row in &basis {
        let c = &row[..n];
        if c.iter().all(|v| *v == 0) {
            continue;
        }
        let within = c.iter().all(|v| Integer::from(v.abs_ref()) <= h);
        if !within {
            continue;
        }
        let c: Vec<i64> = c.iter().map(|v| v.to_i64().expect("bounded by H")).collect();
        let r = residual(&c, &xw);
        if r < accept {
            let c = normalize(c);
            if !relations.contains(&c) {
                relations.push(c);
            }
        } else if r < ambiguous {
            return Err(Error::Indeterminate(format!(
                "candidate relation {c:?} has residual {} at {} bits; increase the precision",
                r.to_f64(),
                2 * prec
            )));
        }
    }
    relations.sort();
    Ok(LIReport {
        status: if relations.is_empty() {
            LiStatus::ProbableLi
        } else {
            LiStatus::RelationNumeric
        },
        witness: Witness::None,
        relations,
        height_bound: h,
        precision_bits: prec,
    })
}

/// Full LI diagnosis of a curve: exact certificates first, then the
/// relation search.
pub fn li_report(z: &ZetaData, h: u64, prec: u32) -> Result<LIReport> {
    let witness = exact_degeneracy(z.p(), z.q());
    if witness != Witness::None {
        // relations are informative only; the verdict is already exact
        let relations = relation_search(z, h, prec)
            .map(|r| r.relations)
            .unwrap_or_default();
        return Ok(LIReport {
            status: LiStatus::FalseExact,
            witness,
            relations,
            height_bound: h,
            precision_bits: prec,
        });
    }
    relation_search(z, h, prec)
}

/// Power 2^bits as an integer, used by tests and callers that scale angles.
pub fn scale(bits: u32) -> Integer {
    Integer::from(2).pow(bits)
}
