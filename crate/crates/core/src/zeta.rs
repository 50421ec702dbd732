//! The zeta numerator P(u) of a curve from its point counts, its inverse
//! zeros and eigenangles, and the Möbius series
//! Σ_N μ(N) u^deg N = (1-u)(1-Qu)/P(u) with its partial sums M(X).

use rug::ops::Pow;
use rug::{Float, Integer};
use serde_json::{json, Value};

use crate::curve::{HyperellipticCurve, PointCounter};
use crate::error::{invalid, Error, Result};
use crate::hp::{aberth_roots, eval_int_poly, refine_real_root, HpComplex, DEFAULT_PRECISION};
use crate::intpoly::{self, IntPoly};
use crate::output::{float_string, int_array, int_value};

/// P(u) = c_0 + ... + c_{2g} u^{2g} from #C(F_{Q^k}), k = 1..g.
pub fn compute_p(counts: &[Integer], q: &Integer, g: u32) -> Result<IntPoly> {
    let g = g as usize;
    if counts.len() != g {
        return invalid(format!("need exactly g = {g} point counts, got {}", counts.len()));
    }
    let s: Vec<Integer> = (1..=g)
        .map(|k| Integer::from(q.pow(k as u32)) + 1u32 - &counts[k - 1])
        .collect();
    // |s_k| <= 2g Q^{k/2}
    for (k, sk) in s.iter().enumerate() {
        let bound = Integer::from(4 * g * g) * q.clone().pow(k as u32 + 1);
        if Integer::from(sk.square_ref()) > bound {
            return Err(Error::InconsistentCounts(format!(
                "count over F_(Q^{}) violates the Weil bound",
                k + 1
            )));
        }
    }
    let mut c = vec![Integer::new(); 2 * g + 1];
    c[0] = Integer::from(1);
    for k in 1..=g {
        let mut acc = Integer::new();
        for i in 1..=k {
            acc += Integer::from(&c[k - i] * &s[i - 1]);
        }
        acc = -acc;
        if !acc.is_divisible_u(k as u32) {
            return Err(Error::InconsistentCounts(format!(
                "Newton identity at k = {k} does not divide exactly"
            )));
        }
        c[k] = acc / k as u32;
    }
    for i in 0..g {
        c[2 * g - i] = Integer::from(q.pow((g - i) as u32)) * &c[i];
    }
    Ok(c)
}

/// Inverse of `compute_p`: #C(F_{Q^k}) for k = 1..=max_k.
pub fn counts_from_p(p: &[Integer], q: &Integer, max_k: u32) -> Vec<Integer> {
    let coeff = |i: usize| p.get(i).cloned().unwrap_or_default();
    let mut s: Vec<Integer> = Vec::with_capacity(max_k as usize);
    for k in 1..=max_k as usize {
        let mut acc = Integer::from(-(k as i64)) * coeff(k);
        for i in 1..k {
            acc -= coeff(i) * &s[k - i - 1];
        }
        s.push(acc);
    }
    s.iter()
        .enumerate()
        .map(|(k, sk)| Integer::from(q.pow(k as u32 + 1)) + 1u32 - sk)
        .collect()
}

fn check_functional_equation(p: &[Integer], q: &Integer) -> Result<u32> {
    if p.is_empty() || p[0] != 1 {
        return invalid("P must have constant term 1");
    }
    if p.len() % 2 == 0 || p.last().is_some_and(|c| *c == 0) {
        return invalid("P must have even degree 2g");
    }
    let g = (p.len() - 1) / 2;
    for i in 0..g {
        if p[2 * g - i] != Integer::from(q.pow((g - i) as u32)) * &p[i] {
            return invalid(format!("P fails the functional equation at u^{}", 2 * g - i));
        }
    }
    Ok(g as u32)
}

/// Inverse zeros and eigenangles of P.
#[derive(Debug, Clone)]
pub struct Zeros {
    /// t_j = 2√Q cos θ_j, in decreasing order (θ increasing).
    pub weil_roots: Vec<Float>,
    /// γ_j with Im γ_j ≥ 0.
    pub gammas: Vec<HpComplex>,
    pub thetas: Vec<Float>,
    /// gcd(P, P') is nonconstant.
    pub repeated: bool,
}

/// Inverse zeros of P, refined to `prec` bits. Roots are found on the real
/// Weil polynomial (exact real-root count by Sturm sequences, double
/// precision seeds, Newton in MPFR) and lifted to γ = t/2 + i√(Q - t²/4).
pub fn zeta_zeros(p: &[Integer], q: &Integer, prec: u32) -> Result<Zeros> {
    let g = check_functional_equation(p, q)?;
    let repeated = intpoly::degree(&intpoly::gcd(p, &intpoly::derivative(p))).unwrap_or(0) > 0;
    if g == 0 {
        return Ok(Zeros {
            weil_roots: Vec::new(),
            gammas: Vec::new(),
            thetas: Vec::new(),
            repeated,
        });
    }
    let work = prec + 64;
    let qf = Float::with_val(work, q);
    let sqrt_q = Float::with_val(work, qf.sqrt_ref());
    let four_q = Float::with_val(work, &qf * 4u32);
    let slack = Float::with_val(work, Float::i_exp(1, -64)) * &four_q;

    let r = intpoly::real_weil_polynomial(p, q);
    let mut ts: Vec<Float> = Vec::with_capacity(g as usize);
    for (factor, mult) in intpoly::squarefree_factorization(&r) {
        let deg = factor.len() - 1;
        if intpoly::real_root_count(&factor) != deg {
            return Err(Error::WeilViolation(
                "the real Weil polynomial has non-real roots".into(),
            ));
        }
        let seeds = aberth_roots(&factor.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
        let mut roots: Vec<Float> = Vec::with_capacity(deg);
        for s in seeds {
            let t = refine_real_root(&factor, s.re, work)
                .ok_or_else(|| Error::Internal("Newton refinement did not converge".into()))?;
            roots.push(t);
        }
        roots.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));
        let sep = Float::with_val(work, Float::i_exp(1, -(work as i32) / 2)) * &sqrt_q;
        for w in roots.windows(2) {
            if Float::with_val(work, &w[0] - &w[1]) <= sep {
                return Err(Error::Internal("root refinement merged two distinct roots".into()));
            }
        }
        for t in roots {
            for _ in 0..mult {
                ts.push(t.clone());
            }
        }
    }
    ts.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));

    let mut gammas = Vec::with_capacity(ts.len());
    let mut thetas = Vec::with_capacity(ts.len());
    let mut weil_roots = Vec::with_capacity(ts.len());
    for t in ts {
        let t2 = Float::with_val(work, t.square_ref());
        if t2 > Float::with_val(work, &four_q + &slack) {
            return Err(Error::WeilViolation(format!(
                "|γ| deviates from √Q (t = {})",
                t.to_f64()
            )));
        }
        let mut cos = Float::with_val(work, &t / &sqrt_q) / 2u32;
        cos.clamp_mut(&-1i32, &1i32);
        let theta = Float::with_val(work, cos.acos_ref());
        let mut im2 = Float::with_val(work, &qf - Float::with_val(work, &t2 / 4u32));
        if im2.is_sign_negative() {
            im2 = Float::new(work);
        }
        let re = Float::with_val(prec, Float::with_val(work, &t / 2u32));
        let im = Float::with_val(prec, im2.sqrt_ref());
        gammas.push(HpComplex::new(re, im));
        thetas.push(Float::with_val(prec, &theta));
        weil_roots.push(Float::with_val(prec, &t));
    }
    Ok(Zeros {
        weil_roots,
        gammas,
        thetas,
        repeated,
    })
}

/// Zeta data of one curve: counts, P, inverse zeros and eigenangles.
#[derive(Debug, Clone)]
pub struct ZetaData {
    q: Integer,
    g: u32,
    counts: Vec<Integer>,
    p: IntPoly,
    zeros: Zeros,
    prec: u32,
}

impl ZetaData {
    pub fn from_counts(counts: &[Integer], q: &Integer, g: u32, prec: u32) -> Result<Self> {
        let p = compute_p(counts, q, g)?;
        let zeros = zeta_zeros(&p, q, prec).map_err(|e| match e {
            Error::WeilViolation(msg) => Error::InconsistentCounts(msg),
            other => other,
        })?;
        Ok(ZetaData {
            q: q.clone(),
            g,
            counts: counts.to_vec(),
            p,
            zeros,
            prec,
        })
    }

    /// From a numerator satisfying the functional equation; the counts are
    /// recovered from P.
    pub fn from_p(p: &[Integer], q: &Integer, prec: u32) -> Result<Self> {
        let g = check_functional_equation(p, q)?;
        let zeros = zeta_zeros(p, q, prec)?;
        Ok(ZetaData {
            q: q.clone(),
            g,
            counts: counts_from_p(p, q, g),
            p: p.to_vec(),
            zeros,
            prec,
        })
    }

    pub fn from_curve(curve: &HyperellipticCurve, prec: u32) -> Result<Self> {
        let g = curve.genus();
        let counter = PointCounter::new(curve.field(), g)?;
        let counts: Vec<Integer> = counter
            .counts(&curve.f().indices())
            .into_iter()
            .map(Integer::from)
            .collect();
        ZetaData::from_counts(&counts, curve.field().order(), g, prec)
    }

    /// The same curve data with zeros refined to `prec` bits.
    pub fn refined(&self, prec: u32) -> Result<Self> {
        Ok(ZetaData {
            zeros: zeta_zeros(&self.p, &self.q, prec)?,
            prec,
            ..self.clone()
        })
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn counts(&self) -> &[Integer] {
        &self.counts
    }

    pub fn p(&self) -> &[Integer] {
        &self.p
    }

    pub fn gammas(&self) -> &[HpComplex] {
        &self.zeros.gammas
    }

    pub fn thetas(&self) -> &[Float] {
        &self.zeros.thetas
    }

    pub fn thetas_f64(&self) -> Vec<f64> {
        self.zeros.thetas.iter().map(|t| t.to_f64()).collect()
    }

    /// t_j = 2√Q cos θ_j.
    pub fn weil_roots(&self) -> &[Float] {
        &self.zeros.weil_roots
    }

    pub fn has_repeated_zeros(&self) -> bool {
        self.zeros.repeated
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Trace a = Q + 1 - #C(F_Q).
    pub fn trace(&self) -> Integer {
        -self.p.get(1).cloned().unwrap_or_default()
    }

    /// Z'(γ_j^{-1}) = P'(γ_j^{-1}) / ((1 - γ_j^{-1})(1 - Q γ_j^{-1})).
    pub fn zprime_at_inverse_zero(&self, j: usize) -> HpComplex {
        let prec = self.prec + 32;
        let gamma = widen(&self.zeros.gammas[j], prec);
        let rho = gamma.recip();
        let dp = eval_int_poly(&intpoly::derivative(&self.p), &rho);
        let one = HpComplex::from_real(&Float::with_val(prec, 1));
        let qf = Float::with_val(prec, &self.q);
        let denom = one.sub(&rho).mul(&one.sub(&rho.scale(&qf)));
        dp.div(&denom)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "Q": int_value(&self.q),
            "g": self.g,
            "counts": int_array(&self.counts),
            "P": int_array(&self.p),
            "gammas": self.zeros.gammas.iter()
                .map(|z| json!([float_string(&z.re), float_string(&z.im)]))
                .collect::<Vec<_>>(),
            "thetas": self.zeros.thetas.iter().map(float_string).collect::<Vec<_>>(),
            "repeated_zeros": self.zeros.repeated,
            "precision_bits": self.prec,
        })
    }
}

fn widen(z: &HpComplex, prec: u32) -> HpComplex {
    HpComplex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im))
}

/// Zeta data at the default precision.
pub fn zeta_data(curve: &HyperellipticCurve) -> Result<ZetaData> {
    ZetaData::from_curve(curve, DEFAULT_PRECISION)
}

/// Coefficients b_k of Σ μ(N) u^deg N, k < X_max, and prefix sums
/// M(X) = Σ_{k ≤ X-1} b_k.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusSeries {
    q: Integer,
    b: Vec<Integer>,
    m: Vec<Integer>,
}

/// First `len` coefficients of num(u)/den(u), den(0) = 1, exactly.
fn series_divide(num: &[Integer], den: &[Integer], len: usize) -> Vec<Integer> {
    debug_assert!(den[0] == 1);
    let mut out: Vec<Integer> = Vec::with_capacity(len);
    for k in 0..len {
        let mut v = num.get(k).cloned().unwrap_or_default();
        for (i, c) in den.iter().enumerate().skip(1).take(k) {
            v -= Integer::from(c * &out[k - i]);
        }
        out.push(v);
    }
    out
}

impl MobiusSeries {
    fn from_coefficients(q: &Integer, b: Vec<Integer>) -> Self {
        let mut m = Vec::with_capacity(b.len());
        let mut acc = Integer::new();
        for bk in &b {
            acc += bk;
            m.push(acc.clone());
        }
        MobiusSeries { q: q.clone(), b, m }
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn x_max(&self) -> usize {
        self.b.len()
    }

    /// b_0, ..., b_{X_max - 1}.
    pub fn coefficients(&self) -> &[Integer] {
        &self.b
    }

    /// M(X) for X = 1..=X_max.
    pub fn partial_sums(&self) -> &[Integer] {
        &self.m
    }

    pub fn mertens(&self, x: usize) -> Result<&Integer> {
        if x == 0 || x > self.m.len() {
            return invalid(format!("X = {x} outside 1..={}", self.m.len()));
        }
        Ok(&self.m[x - 1])
    }

    /// M(X) / Q^{X/2}.
    pub fn normalized(&self, x: usize) -> Result<f64> {
        let m = self.mertens(x)?;
        let prec = 128;
        let scale = Float::with_val(prec, &self.q).pow(Float::with_val(prec, x) / 2u32);
        Ok(Float::with_val(prec, Float::with_val(prec, m) / scale).to_f64())
    }

    /// Columns X, b_{X-1}, M(X), M(X)/Q^{X/2}.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,b,M,M_normalized\n");
        for x in 1..=self.b.len() {
            out.push_str(&format!(
                "{},{},{},{:e}\n",
                x,
                self.b[x - 1],
                self.m[x - 1],
                self.normalized(x).expect("in range")
            ));
        }
        out
    }
}

/// The Möbius series of a curve with numerator P over F_Q, X_max terms.
pub fn mobius_coefficients(p: &[Integer], q: &Integer, x_max: usize) -> Result<MobiusSeries> {
    if x_max == 0 {
        return invalid("X_max must be at least 1");
    }
    if p.first().map_or(true, |c| *c != 1) {
        return invalid("P must have constant term 1");
    }
    let num = [Integer::from(1), -(Integer::from(q) + 1u32), q.clone()];
    Ok(MobiusSeries::from_coefficients(q, series_divide(&num, p, x_max)))
}

/// The polynomial ring F_q[t]: Σ μ(N) u^deg N = 1 - q u.
pub fn polynomial_ring_series(q: &Integer, x_max: usize) -> Result<MobiusSeries> {
    if x_max == 0 {
        return invalid("X_max must be at least 1");
    }
    let num = [Integer::from(1), -q.clone()];
    Ok(MobiusSeries::from_coefficients(q, series_divide(&num, &[Integer::from(1)], x_max)))
}

/// Σ_{deg N = X-1} μ(N) = b_{X-1}.
pub fn localized_sum(series: &MobiusSeries, x: usize) -> Result<Integer> {
    if x == 0 || x > series.b.len() {
        return invalid(format!("X = {x} outside 1..={}", series.b.len()));
    }
    Ok(series.b[x - 1].clone())
}

fn moebius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number a_d of closed points of degree d for d = 1..=counts.len(), from
/// #C(F_{Q^k}) = Σ_{d | k} d·a_d.
pub fn closed_point_counts(counts: &[Integer]) -> Result<Vec<Integer>> {
    (1..=counts.len() as u32)
        .map(|d| {
            let mut acc = Integer::new();
            for e in (1..=d).filter(|e| d % e == 0) {
                acc += Integer::from(moebius(d / e)) * &counts[e as usize - 1];
            }
            if acc < 0 || !acc.is_divisible_u(d) {
                return Err(Error::InconsistentCounts(format!(
                    "degree-{d} place count is not a nonnegative integer"
                )));
            }
            Ok(acc / d)
        })
        .collect()
}

/// Checks Π_{d ≤ D} (1 - u^d)^{a_d} ≡ (1-u)(1-Qu)/P(u) mod u^{D+1}, with
/// a_d from the given counts (at least max(g, D) of them).
pub fn places_census_check_counts(counts: &[Integer], q: &Integer, g: u32, d: usize) -> Result<bool> {
    if counts.len() < d.max(g as usize) {
        return invalid("not enough point counts for the requested degree bound");
    }
    let p = compute_p(&counts[..g as usize], q, g)?;
    let a = closed_point_counts(&counts[..d])?;
    // Euler product truncated at degree d
    let mut prod = vec![Integer::new(); d + 1];
    prod[0] = Integer::from(1);
    for (deg, ad) in a.iter().enumerate().map(|(i, x)| (i + 1, x)) {
        // (1 - u^deg)^{a_d} = Σ_j binom(a_d, j) (-1)^j u^{deg·j}
        let mut factor = vec![Integer::new(); d + 1];
        let mut j = 0usize;
        while deg * j <= d {
            let mut c = Integer::from(ad.binomial_ref(j as u32));
            if j % 2 == 1 {
                c = -c;
            }
            factor[deg * j] = c;
            j += 1;
        }
        let mut next = vec![Integer::new(); d + 1];
        for (i, x) in prod.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (k, y) in factor.iter().enumerate().take(d + 1 - i) {
                next[i + k] += Integer::from(x * y);
            }
        }
        prod = next;
    }
    let series = mobius_coefficients(&p, q, d + 1)?;
    Ok(prod == series.b)
}

/// Euler-product check for one curve, counting points up to degree D.
pub fn places_census_check(curve: &HyperellipticCurve, d: usize) -> Result<bool> {
    let g = curve.genus();
    let k = (d as u32).max(g);
    let counter = PointCounter::new(curve.field(), k)?;
    let counts: Vec<Integer> = counter
        .counts(&curve.f().indices())
        .into_iter()
        .map(Integer::from)
        .collect();
    places_census_check_counts(&counts, curve.field().order(), g, d)
}

/// -2 Re Σ_j γ_j^X / Z'(γ_j^{-1}), the partial-fraction value of b_{X-1}.
pub fn explicit_local_prediction(z: &ZetaData, x: u32) -> Result<Float> {
    if z.has_repeated_zeros() {
        return Err(Error::UnsupportedMultiplicity);
    }
    let prec = z.precision() + 32;
    let mut acc = Float::new(prec);
    for j in 0..z.gammas().len() {
        let gamma = widen(&z.gammas()[j], prec);
        let term = gamma.powu(x).div(&z.zprime_at_inverse_zero(j));
        acc += &term.re;
    }
    Ok(Float::with_val(z.precision(), acc * -2i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_field;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn p_from_counts_examples() {
        assert_eq!(compute_p(&ints(&[4]), &Integer::from(3), 1).unwrap(), ints(&[1, 0, 3]));
        assert_eq!(compute_p(&ints(&[4]), &Integer::from(5), 1).unwrap(), ints(&[1, -2, 5]));
        assert_eq!(compute_p(&[], &Integer::from(7), 0).unwrap(), ints(&[1]));
    }

    #[test]
    fn counts_roundtrip_through_p() {
        let q = Integer::from(9);
        let p = intpoly::mul(&ints(&[1, -1, 9]), &ints(&[1, 3, 9]));
        let counts = counts_from_p(&p, &q, 2);
        assert_eq!(compute_p(&counts, &q, 2).unwrap(), p);
    }

    #[test]
    fn inconsistent_counts_rejected() {
        // #C(F_5) = 20 breaks the Weil bound
        assert!(matches!(
            compute_p(&ints(&[20]), &Integer::from(5), 1),
            Err(Error::InconsistentCounts(_))
        ));
        // s_1 = 1, s_2 = 0: 2c_2 = -(c_1 s_1 + s_2) = 1 is not even
        let q = Integer::from(9);
        let counts = [Integer::from(9), Integer::from(82)];
        assert!(matches!(compute_p(&counts, &q, 2), Err(Error::InconsistentCounts(_))));
    }

    #[test]
    fn zeros_of_quadratics() {
        let z = zeta_zeros(&ints(&[1, 0, 3]), &Integer::from(3), 128).unwrap();
        assert!(z.gammas[0].re.to_f64().abs() < 1e-30);
        assert!((z.gammas[0].im.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        assert!((z.thetas[0].to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

        let z = zeta_zeros(&ints(&[1, -2, 5]), &Integer::from(5), 128).unwrap();
        assert_eq!(z.gammas[0].to_c64(), num_complex::Complex64::new(1.0, 2.0));
        assert!((z.thetas[0].to_f64() - 1.1071487177940904).abs() < 1e-15);

        assert!(zeta_zeros(&ints(&[1]), &Integer::from(3), 128).unwrap().gammas.is_empty());
    }

    #[test]
    fn weil_violation_detected() {
        // 1 - 5u + 5u^2 has real zeros off the circle |γ| = √5
        assert!(matches!(
            zeta_zeros(&ints(&[1, -5, 5]), &Integer::from(5), 128),
            Err(Error::WeilViolation(_))
        ));
    }

    #[test]
    fn refined_zeros_annihilate_p() {
        let q = Integer::from(9);
        let p = intpoly::mul(&ints(&[1, -1, 9]), &ints(&[1, 3, 9]));
        let z = ZetaData::from_p(&p, &q, 200).unwrap();
        for g in z.gammas() {
            let v = eval_int_poly(&p, &g.recip());
            assert!(v.abs() < Float::with_val(200, Float::i_exp(1, -150)));
            let r = Float::with_val(200, g.abs() - Float::with_val(200, 3)).abs();
            assert!(r < 1e-50);
        }
    }

    #[test]
    fn repeated_zeros_flagged() {
        let q = Integer::from(3);
        let p = intpoly::mul(&ints(&[1, 0, 3]), &ints(&[1, 0, 3]));
        let z = zeta_zeros(&p, &q, 128).unwrap();
        assert!(z.repeated);
        assert_eq!(z.gammas.len(), 2);
        assert_eq!(z.gammas[0], z.gammas[1]);
    }

    #[test]
    fn rational_function_field_table() {
        for q in [3u32, 5, 9, 27] {
            let q = Integer::from(q);
            let s = mobius_coefficients(&[Integer::from(1)], &q, 6).unwrap();
            assert_eq!(s.partial_sums()[0], 1);
            assert_eq!(s.partial_sums()[1], -q.clone());
            assert!(s.partial_sums()[2..].iter().all(|m| *m == 0));
            assert_eq!(localized_sum(&s, 2).unwrap(), -(q.clone() + 1u32));
            assert_eq!(localized_sum(&s, 4).unwrap(), 0);
        }
    }

    #[test]
    fn genus_one_series() {
        // y^2 = x^3 + x over F_3 has 4 places of degree 1 and 6 of degree 2,
        // so the series starts (1-u)^4 (1-u^2)^6 = 1 - 4u + 0u^2 + ...
        let s = mobius_coefficients(&ints(&[1, 0, 3]), &Integer::from(3), 5).unwrap();
        assert_eq!(&s.coefficients()[..3], ints(&[1, -4, 0]).as_slice());
        assert_eq!(localized_sum(&s, 3).unwrap(), 0);
        assert!(localized_sum(&s, 6).is_err());
    }

    #[test]
    fn census_on_projective_line_and_curves() {
        let q = Integer::from(7);
        let counts: Vec<Integer> = (1..=6u32).map(|k| Integer::from((&q).pow(k)) + 1u32).collect();
        assert_eq!(closed_point_counts(&counts).unwrap()[0], 8);
        assert!(places_census_check_counts(&counts, &q, 0, 6).unwrap());

        let f3 = make_field(3, 1).unwrap();
        let c = HyperellipticCurve::from_indices(&f3, &[0, 1, 0, 1]).unwrap();
        assert!(places_census_check(&c, 4).unwrap());
        // D = 1: b_1 = -#C(F_Q)
        let z = zeta_data(&c).unwrap();
        let s = mobius_coefficients(z.p(), z.q(), 2).unwrap();
        assert_eq!(s.coefficients()[1], -Integer::from(4));
        assert!(places_census_check(&c, 1).unwrap());
    }

    #[test]
    fn explicit_formula_matches_series() {
        let q = Integer::from(5);
        let z = ZetaData::from_p(&ints(&[1, -2, 5]), &q, 128).unwrap();
        let s = mobius_coefficients(z.p(), &q, 40).unwrap();
        for x in 2..=40u32 {
            let pred = explicit_local_prediction(&z, x).unwrap();
            let diff = Float::with_val(128, &pred - &s.coefficients()[x as usize - 1]).abs();
            assert!(diff < 1e-20, "X = {x}");
        }
        let q9 = Integer::from(9);
        let p = intpoly::mul(&ints(&[1, -1, 9]), &ints(&[1, 3, 9]));
        let z = ZetaData::from_p(&p, &q9, 128).unwrap();
        let s = mobius_coefficients(&p, &q9, 30).unwrap();
        for x in 1..=30u32 {
            let pred = explicit_local_prediction(&z, x).unwrap();
            let diff = Float::with_val(128, &pred - &s.coefficients()[x as usize - 1]).abs();
            assert!(diff < 1e-10, "X = {x}");
        }
    }

    #[test]
    fn json_record_has_schema_fields() {
        let z = ZetaData::from_p(&ints(&[1, -2, 5]), &Integer::from(5), 128).unwrap();
        let v = z.to_json();
        assert_eq!(v["P"], json!([1, -2, 5]));
        assert_eq!(v["counts"], json!([4]));
        assert_eq!(v["gammas"][0][0], json!("1"));
    }
}
