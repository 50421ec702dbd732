//! The Mertens constant B of a curve, its bounds in terms of φ, β-Mertens
//! verdicts, and the closed-form theory for elliptic curves.

use rug::{Float, Integer};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{invalid, Error, Result};
use crate::hp::{eval_int_poly, HpComplex};
use crate::intpoly;
use crate::li::{LIReport, LiStatus};
use crate::output::{float_string, int_array, int_value};
use crate::rmt::phi_hp;
use crate::zeta::ZetaData;

pub use crate::rmt::phi as phi_frobenius;

/// Relative slack used for every comparison of real quantities here.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfies,
    Fails,
    UnknownNonLi,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Satisfies => "satisfies",
            Verdict::Fails => "fails",
            Verdict::UnknownNonLi => "unknown-non-LI",
        }
    }
}

fn check_b_inputs(z: &ZetaData) -> Result<()> {
    if z.genus() == 0 {
        return invalid("B is undefined for g = 0");
    }
    if z.has_repeated_zeros() {
        return Err(Error::UnsupportedMultiplicity);
    }
    Ok(())
}

/// B = 2 Σ_j |1/Z'(γ_j^{-1}) · γ_j/(γ_j - 1)|, the limsup of |M(X)|/Q^{X/2}
/// under LI.
pub fn b_value(z: &ZetaData) -> Result<Float> {
    check_b_inputs(z)?;
    let prec = z.precision() + 32;
    let one = HpComplex::from_real(&Float::with_val(prec, 1));
    let mut acc = Float::new(prec);
    for (j, gamma) in z.gammas().iter().enumerate() {
        let gamma = HpComplex::new(Float::with_val(prec, &gamma.re), Float::with_val(prec, &gamma.im));
        let zp = z.zprime_at_inverse_zero(j);
        let factor = gamma.div(&gamma.sub(&one));
        acc += factor.div(&zp).abs();
    }
    Ok(Float::with_val(z.precision(), acc * 2u32))
}

/// 2 Σ_j |1/Z'(γ_j^{-1})|, the amplitude of the localized sums b_{X-1}.
pub fn localized_amplitude(z: &ZetaData) -> Result<Float> {
    check_b_inputs(z)?;
    let prec = z.precision() + 32;
    let mut acc = Float::new(prec);
    for j in 0..z.gammas().len() {
        acc += z.zprime_at_inverse_zero(j).recip().abs();
    }
    Ok(Float::with_val(z.precision(), acc * 2u32))
}

/// Largest relative deviation, over the zeros, from
/// |1/Z'(γ^{-1})| = |q + 1 - 2√q cos θ|/q · |1/Z_ϑ'(θ)| with
/// Z_ϑ(θ) = P(e^{-iθ}/√q), the right side computed from θ alone.
pub fn derivative_identity_residual(z: &ZetaData) -> Result<f64> {
    check_b_inputs(z)?;
    let prec = z.precision() + 32;
    let q = Float::with_val(prec, z.q());
    let sq = Float::with_val(prec, q.sqrt_ref());
    let dp = intpoly::derivative(z.p());
    let mut worst = 0.0f64;
    for (j, theta) in z.thetas().iter().enumerate() {
        let lhs = z.zprime_at_inverse_zero(j).recip().abs();
        let theta = Float::with_val(prec, theta);
        let (s, c) = theta.sin_cos(Float::new(prec));
        // e^{-iθ}/√q and Z_ϑ'(θ) = -i e^{-iθ}/√q · P'(e^{-iθ}/√q)
        let w = HpComplex::new(Float::with_val(prec, &c / &sq), Float::with_val(prec, -s / &sq));
        let minus_i = HpComplex::new(Float::new(prec), Float::with_val(prec, -1));
        let zt = minus_i.mul(&w).mul(&eval_int_poly(&dp, &w));
        let prefactor = Float::with_val(prec, &q + 1u32) - Float::with_val(prec, &sq * &c) * 2u32;
        let rhs = prefactor.abs() / &q / zt.abs();
        let rel = Float::with_val(prec, &lhs - &rhs).abs() / &rhs;
        worst = worst.max(rel.to_f64());
    }
    Ok(worst)
}

/// Trace a_E when the theorem on elliptic curves fixes the true limsup at 1
/// even though LI fails: a_E = 0 or a_E = √q.
fn elliptic_exact_limsup(z: &ZetaData) -> Option<f64> {
    if z.genus() != 1 {
        return None;
    }
    let a = z.trace();
    let exact = a == 0 || (a > 0 && Integer::from(&a * &a) == *z.q());
    exact.then_some(1.0)
}

#[derive(Debug, Clone)]
pub struct MertensReport {
    pub label: String,
    pub q: Integer,
    pub g: u32,
    pub p: Vec<Integer>,
    pub thetas: Vec<Float>,
    /// None encodes φ = +∞ (an angle at 0 or π, or coincident angles).
    pub phi: Option<Float>,
    /// None encodes B = +∞ (repeated zeros).
    pub b_li: Option<Float>,
    pub localized: Option<Float>,
    pub li: LIReport,
    /// Exact limsup known without LI (elliptic a_E ∈ {0, √q}).
    pub exact_limsup: Option<f64>,
}

fn scaled(x: &Option<Float>, factor: &Float) -> Option<Float> {
    x.as_ref().map(|v| Float::with_val(v.prec(), v * factor))
}

impl MertensReport {
    pub fn new(z: &ZetaData, li: LIReport, label: impl Into<String>) -> Result<Self> {
        if z.genus() == 0 {
            return invalid("B is undefined for g = 0");
        }
        let repeated = z.has_repeated_zeros();
        let (b_li, localized) = if repeated {
            (None, None)
        } else {
            (Some(b_value(z)?), Some(localized_amplitude(z)?))
        };
        Ok(MertensReport {
            label: label.into(),
            q: z.q().clone(),
            g: z.genus(),
            p: z.p().to_vec(),
            thetas: z.thetas().to_vec(),
            phi: phi_hp(z.thetas()),
            b_li,
            localized,
            li,
            exact_limsup: elliptic_exact_limsup(z),
        })
    }

    fn prec(&self) -> u32 {
        self.thetas.first().map_or(128, |t| t.prec())
    }

    fn inv_sqrt_q(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, Float::with_val(prec, &self.q).sqrt().recip())
    }

    /// (1 - Q^{-1/2})φ and (1 + Q^{-1/2})φ.
    pub fn bounds(&self) -> (Option<Float>, Option<Float>) {
        let s = self.inv_sqrt_q();
        let lo = Float::with_val(s.prec(), 1 - &s);
        let hi = Float::with_val(s.prec(), 1 + &s);
        (scaled(&self.phi, &lo), scaled(&self.phi, &hi))
    }

    /// (1 - Q^{-1/2})²φ and (1 + Q^{-1/2})²φ.
    pub fn localized_bounds(&self) -> (Option<Float>, Option<Float>) {
        let s = self.inv_sqrt_q();
        let lo = Float::with_val(s.prec(), 1 - &s).square();
        let hi = Float::with_val(s.prec(), 1 + &s).square();
        (scaled(&self.phi, &lo), scaled(&self.phi, &hi))
    }

    pub fn b_f64(&self) -> f64 {
        self.b_li.as_ref().map_or(f64::INFINITY, |b| b.to_f64())
    }

    pub fn phi_f64(&self) -> f64 {
        self.phi.as_ref().map_or(f64::INFINITY, |b| b.to_f64())
    }

    pub fn to_json(&self, betas: &[f64]) -> Value {
        let s = |x: &Option<Float>| x.as_ref().map_or("inf".to_string(), float_string);
        let (lo, hi) = self.bounds();
        let (llo, lhi) = self.localized_bounds();
        let mut verdicts = Map::new();
        for &beta in betas {
            if let Ok(v) = beta_classify(self, beta) {
                verdicts.insert(beta_key(beta), Value::String(v.name().into()));
            }
        }
        json!({
            "curve": self.label,
            "Q": int_value(&self.q),
            "g": self.g,
            "P": int_array(&self.p),
            "thetas": self.thetas.iter().map(float_string).collect::<Vec<_>>(),
            "phi": s(&self.phi),
            "B_LI": s(&self.b_li),
            "bound_low": s(&lo),
            "bound_high": s(&hi),
            "localized_sum": s(&self.localized),
            "loc_bound_low": s(&llo),
            "loc_bound_high": s(&lhi),
            "exact_limsup": self.exact_limsup,
            "li": self.li.to_json(),
            "beta_verdicts": verdicts,
        })
    }

    pub fn csv_header(betas: &[f64]) -> String {
        let mut cols = vec![
            "curve", "Q", "g", "P", "phi", "B_LI", "bound_low", "bound_high", "li_status",
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        cols.extend(betas.iter().map(|b| format!("verdict_{}", beta_key(*b))));
        cols.join(",")
    }

    pub fn csv_row(&self, betas: &[f64]) -> String {
        let s = |x: &Option<Float>| x.as_ref().map_or("inf".to_string(), float_string);
        let (lo, hi) = self.bounds();
        let p: Vec<String> = self.p.iter().map(|c| c.to_string()).collect();
        let mut cols = vec![
            format!("\"{}\"", self.label.replace('"', "'")),
            self.q.to_string(),
            self.g.to_string(),
            p.join(" "),
            s(&self.phi),
            s(&self.b_li),
            s(&lo),
            s(&hi),
            self.li.status.name().to_string(),
        ];
        for &b in betas {
            cols.push(beta_classify(self, b).map_or("invalid", |v| v.name()).to_string());
        }
        cols.join(",")
    }
}

/// Stable textual key for a β value.
pub fn beta_key(beta: f64) -> String {
    if beta.is_infinite() {
        "inf".into()
    } else {
        format!("{beta}")
    }
}

fn within(lo: &Float, x: &Float, hi: &Float) -> bool {
    let slack = |v: &Float| Float::with_val(v.prec(), v.abs_ref()) * REL_TOL;
    let lo_ok = Float::with_val(x.prec(), x - lo) >= -slack(lo);
    let hi_ok = Float::with_val(x.prec(), hi - x) >= -slack(hi);
    lo_ok && hi_ok
}

/// (1 - Q^{-1/2})φ ≤ B ≤ (1 + Q^{-1/2})φ up to the relative slack;
/// vacuously true when φ or B is infinite.
pub fn sandwich_check(report: &MertensReport) -> bool {
    match (report.bounds(), &report.b_li) {
        ((Some(lo), Some(hi)), Some(b)) => within(&lo, b, &hi),
        _ => true,
    }
}

/// (1 - Q^{-1/2})²φ ≤ 2Σ|1/Z'(γ^{-1})| ≤ (1 + Q^{-1/2})²φ.
pub fn localized_check(report: &MertensReport) -> bool {
    match (report.localized_bounds(), &report.localized) {
        ((Some(lo), Some(hi)), Some(s)) => within(&lo, s, &hi),
        _ => true,
    }
}

/// Whether limsup |M(X)|/Q^{X/2} ≤ β holds, fails, or cannot be decided
/// because LI is not established. Ties within the relative slack count as
/// satisfied.
pub fn beta_classify(report: &MertensReport, beta: f64) -> Result<Verdict> {
    if !(beta > 0.0) {
        return invalid("β must be positive");
    }
    if beta.is_infinite() {
        return Ok(Verdict::Satisfies);
    }
    let cmp = |value: f64| {
        if value <= beta * (1.0 + REL_TOL) {
            Verdict::Satisfies
        } else {
            Verdict::Fails
        }
    };
    if report.b_li.is_none() {
        // repeated zeros: the limsup is infinite
        return Ok(Verdict::Fails);
    }
    if let Some(l) = report.exact_limsup {
        return Ok(cmp(l));
    }
    if report.li.status == LiStatus::ProbableLi {
        return Ok(cmp(report.b_f64()));
    }
    Ok(Verdict::UnknownNonLi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticVerdict {
    MertensTrue,
    MertensFalse,
    NotAdmissible,
}

impl EllipticVerdict {
    pub fn name(self) -> &'static str {
        match self {
            EllipticVerdict::MertensTrue => "mertens_true",
            EllipticVerdict::MertensFalse => "mertens_false",
            EllipticVerdict::NotAdmissible => "not_admissible",
        }
    }
}

fn check_prime_power(q: u64, p: u64, m: u32) -> Result<()> {
    if p == 2 {
        return invalid("characteristic 2 is not supported");
    }
    if !crate::finite_field::is_prime(p) {
        return invalid(format!("p = {p} is not prime"));
    }
    if m == 0 || p.checked_pow(m) != Some(q) {
        return invalid(format!("q = {q} is not {p}^{m}"));
    }
    Ok(())
}

fn is_square_of(a: i64, q: u64, k: u64) -> bool {
    // a² = k·q
    (a as i128) * (a as i128) == (k as i128) * (q as i128)
}

/// Whether an elliptic curve over F_q with trace a_E exists, following
/// Waterhouse's list for odd p.
pub fn elliptic_trace_admissible(q: u64, p: u64, m: u32, a: i64) -> Result<bool> {
    check_prime_power(q, p, m)?;
    let ordinary = a.rem_euclid(p as i64) != 0 && (a as i128) * (a as i128) < 4 * q as i128;
    if ordinary {
        return Ok(true);
    }
    if a.rem_euclid(p as i64) != 0 {
        return Ok(false);
    }
    Ok(if m % 2 == 0 {
        is_square_of(a, q, 4)
            || (is_square_of(a, q, 1) && p % 3 != 1)
            || (a == 0 && p % 4 != 1)
    } else {
        a == 0 || (p == 3 && is_square_of(a, q, 3))
    })
}

/// The three cases in which an elliptic curve satisfies the Mertens
/// conjecture: a_E = 2; a_E = √q with m even and p ≢ 1 (mod 3); a_E = 0
/// with m even and p ≢ 1 (mod 4), or m odd.
pub fn elliptic_classify(q: u64, p: u64, m: u32, a: i64) -> Result<EllipticVerdict> {
    if !elliptic_trace_admissible(q, p, m, a)? {
        return Ok(EllipticVerdict::NotAdmissible);
    }
    let case1 = a == 2;
    let case2 = a > 0 && is_square_of(a, q, 1) && m % 2 == 0 && p % 3 != 1;
    let case3 = a == 0 && ((m % 2 == 0 && p % 4 != 1) || m % 2 == 1);
    Ok(if case1 || case2 || case3 {
        EllipticVerdict::MertensTrue
    } else {
        EllipticVerdict::MertensFalse
    })
}

/// Splits q = p^m for a prime power q.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return invalid("q must be a prime power");
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    if r != 1 {
        return invalid(format!("{q} is not a prime power"));
    }
    Ok((p, m))
}

const ELLIPTIC_PREC: u32 = 128;

fn b_elliptic_hp(q: u64, a: i64) -> Result<Float> {
    if (a as i128) * (a as i128) >= 4 * q as i128 {
        return invalid(format!("a_E = {a} needs a_E² < 4q = {}", 4 * q as u128));
    }
    let num = Float::with_val(ELLIPTIC_PREC, Integer::from(q) + 1 - Integer::from(a));
    let den = Float::with_val(ELLIPTIC_PREC, Integer::from(q) * 4 - Integer::from(a) * a);
    Ok((num / den).sqrt() * 2u32)
}

/// B(E/F_q) = 2√((q + 1 - a_E)/(4q - a_E²)).
pub fn b_elliptic(q: u64, a: i64) -> Result<f64> {
    Ok(b_elliptic_hp(q, a)?.to_f64())
}

/// Traces a_E ≢ 0 (mod p), |a_E| < 2√q, in the open interval
/// ((2/b²)(1 - √((qb²-1)(b²-1))), (2/a²)(1 - √((qa²-1)(a²-1)))), each
/// confirmed to give a < B(E) < b.
pub fn trace_window(q: u64, p: u64, a: f64, b: f64) -> Result<Vec<i64>> {
    if !(a > 1.0 && b > a) {
        return invalid("need b > a > 1");
    }
    let m = prime_power(q)?.1;
    check_prime_power(q, p, m)?;
    let prec = ELLIPTIC_PREC;
    let end = |x: f64| -> Float {
        let x2 = Float::with_val(prec, x) * x;
        let r = Float::with_val(prec, &x2 * q) - 1u32;
        let s = Float::with_val(prec, &x2 - 1u32);
        let root = (r * s).sqrt();
        Float::with_val(prec, 2u32 / x2) * (1u32 - root)
    };
    let lo = end(b);
    let hi = end(a);
    let start = Float::with_val(prec, lo.floor_ref()).to_integer().expect("finite").to_i64().unwrap_or(i64::MIN);
    let stop = Float::with_val(prec, hi.ceil_ref()).to_integer().expect("finite").to_i64().unwrap_or(i64::MAX);
    let mut out = Vec::new();
    for t in start..=stop {
        let tf = Float::with_val(prec, t);
        if !(tf > lo && tf < hi) {
            continue;
        }
        if t.rem_euclid(p as i64) == 0 || (t as i128) * (t as i128) >= 4 * q as i128 {
            continue;
        }
        let bv = b_elliptic_hp(q, t)?;
        if bv > a && bv < b {
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::li::{li_report, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS};
    use std::f64::consts::PI;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn report(p: &[i64], q: u64) -> MertensReport {
        let z = ZetaData::from_p(&ints(p), &Integer::from(q), 128).unwrap();
        let li = li_report(&z, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS).unwrap();
        MertensReport::new(&z, li, "test").unwrap()
    }

    #[test]
    fn phi_frobenius_examples() {
        assert!((phi_frobenius(&[PI / 2.0]) - 1.0).abs() < 1e-15);
        assert!((phi_frobenius(&[PI / 4.0, 3.0 * PI / 4.0]) - 1.0).abs() < 1e-14);
        assert!((phi_frobenius(&[PI / 3.0]) - 1.1547005383792515).abs() < 1e-15);
    }

    #[test]
    fn b_value_examples() {
        let z = ZetaData::from_p(&ints(&[1, -2, 5]), &Integer::from(5), 128).unwrap();
        assert!((b_value(&z).unwrap().to_f64() - 1.0).abs() < 1e-15);
        let z = ZetaData::from_p(&ints(&[1, -1, 7]), &Integer::from(7), 128).unwrap();
        let expect = 2.0 * (7.0f64 / 27.0).sqrt();
        assert!((b_value(&z).unwrap().to_f64() - expect).abs() < 1e-14);
        let z0 = ZetaData::from_p(&ints(&[1]), &Integer::from(5), 128).unwrap();
        assert!(b_value(&z0).is_err());
        let zr = ZetaData::from_p(&ints(&[1, -6, 9]), &Integer::from(9), 128).unwrap();
        assert_eq!(b_value(&zr), Err(Error::UnsupportedMultiplicity));
    }

    #[test]
    fn sandwich_example() {
        let r = report(&[1, -2, 5], 5);
        assert!((r.phi_f64() - 5f64.sqrt() / 2.0).abs() < 1e-15);
        let (lo, hi) = r.bounds();
        assert!((lo.unwrap().to_f64() - 0.6180339887498949).abs() < 1e-12);
        assert!((hi.unwrap().to_f64() - 1.618033988749895).abs() < 1e-12);
        assert!(sandwich_check(&r));
        assert!(localized_check(&r));
    }

    #[test]
    fn derivative_identity_holds() {
        for (p, q) in [(vec![1, -2, 5], 5), (vec![1, 3, 11], 11)] {
            let z = ZetaData::from_p(&ints(&p), &Integer::from(q), 128).unwrap();
            assert!(derivative_identity_residual(&z).unwrap() < 1e-30);
        }
        let p = intpoly::mul(&ints(&[1, -1, 9]), &ints(&[1, 4, 9]));
        let z = ZetaData::from_p(&p, &Integer::from(9), 128).unwrap();
        assert!(derivative_identity_residual(&z).unwrap() < 1e-30);
    }

    #[test]
    fn beta_verdicts() {
        let r = report(&[1, -2, 5], 5);
        assert_eq!(beta_classify(&r, 1.0).unwrap(), Verdict::Satisfies);
        let r = report(&[1, -1, 7], 7);
        assert_eq!(beta_classify(&r, 1.0).unwrap(), Verdict::Fails);
        assert_eq!(beta_classify(&r, 1.2).unwrap(), Verdict::Satisfies);
        assert_eq!(beta_classify(&r, f64::INFINITY).unwrap(), Verdict::Satisfies);
        assert!(beta_classify(&r, 0.0).is_err());
        // a = 0 over F_3: not LI, limsup 1 from the elliptic theorem
        let r = report(&[1, 0, 3], 3);
        assert_eq!(r.li.status, LiStatus::FalseExact);
        assert!((r.b_f64() - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(beta_classify(&r, 1.0).unwrap(), Verdict::Satisfies);
        // a = -√q is not covered by the theorem
        let r = report(&[1, 3, 9], 9);
        assert_eq!(beta_classify(&r, 1.0).unwrap(), Verdict::UnknownNonLi);
        // repeated zero
        let r = report(&[1, -6, 9], 9);
        assert_eq!(beta_classify(&r, 100.0).unwrap(), Verdict::Fails);
        assert!(sandwich_check(&r));
    }

    #[test]
    fn elliptic_table() {
        use EllipticVerdict::*;
        assert_eq!(elliptic_classify(5, 5, 1, 2).unwrap(), MertensTrue);
        assert_eq!(elliptic_classify(9, 3, 2, 3).unwrap(), MertensTrue);
        assert_eq!(elliptic_classify(3, 3, 1, 0).unwrap(), MertensTrue);
        assert_eq!(elliptic_classify(25, 5, 2, 5).unwrap(), MertensTrue);
        assert_eq!(elliptic_classify(7, 7, 1, 1).unwrap(), MertensFalse);
        assert_eq!(elliptic_classify(11, 11, 1, 3).unwrap(), MertensFalse);
        // √q with p ≡ 1 (mod 3) does not occur
        assert_eq!(elliptic_classify(49, 7, 2, 7).unwrap(), NotAdmissible);
        assert_eq!(elliptic_classify(9, 3, 2, -3).unwrap(), MertensFalse);
        assert_eq!(elliptic_classify(7, 7, 1, 6).unwrap(), NotAdmissible);
        assert!(elliptic_classify(4, 2, 2, 0).is_err());
        assert!(elliptic_classify(10, 5, 1, 0).is_err());
    }

    #[test]
    fn b_elliptic_examples() {
        for q in [3, 5, 7, 9, 25] {
            assert!((b_elliptic(q, 2).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((b_elliptic(3, 0).unwrap() - 1.1547005383792515).abs() < 1e-15);
        assert!(b_elliptic(9, 6).is_err());
    }

    #[test]
    fn trace_window_example() {
        let w = trace_window(101, 101, 1.5, 2.0).unwrap();
        // oracle: scan every admissible trace. B(t) = c has the two roots
        // (2/c²)(1 ± √((qc²-1)(c²-1))); the window is the lower branch, which
        // here is the negative traces (16 and 17 lie on the upper branch).
        let scan: Vec<i64> = (-20..0)
            .filter(|&t| {
                let b = b_elliptic(101, t).unwrap();
                b > 1.5 && b < 2.0
            })
            .collect();
        assert_eq!(w, scan);
        assert!(!w.is_empty());
        assert!(trace_window(101, 101, 2.0, 1.5).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(81).unwrap(), (3, 4));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(12).is_err());
    }

    #[test]
    fn json_and_csv() {
        let r = report(&[1, -1, 7], 7);
        let v = r.to_json(&[1.0, 1.2]);
        assert_eq!(v["beta_verdicts"]["1"], "fails");
        assert_eq!(v["beta_verdicts"]["1.2"], "satisfies");
        let row = r.csv_row(&[1.0]);
        assert_eq!(row.split(',').count(), MertensReport::csv_header(&[1.0]).split(',').count());
    }
}
