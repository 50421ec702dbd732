//! Exact univariate polynomials over Z and Q (low-to-high coefficients).

use rug::{Integer, Rational};

pub type IntPoly = Vec<Integer>;
type RatPoly = Vec<Rational>;

pub fn trim_int(a: &mut IntPoly) {
    while a.last().is_some_and(|c| *c == 0) {
        a.pop();
    }
}

fn trim_rat(a: &mut RatPoly) {
    while a.last().is_some_and(|c| *c == 0) {
        a.pop();
    }
}

pub fn from_i64(c: &[i64]) -> IntPoly {
    let mut p: IntPoly = c.iter().map(|&x| Integer::from(x)).collect();
    trim_int(&mut p);
    p
}

pub fn degree(a: &[Integer]) -> Option<usize> {
    let mut d = a.len();
    while d > 0 && a[d - 1] == 0 {
        d -= 1;
    }
    d.checked_sub(1)
}

pub fn derivative(a: &[Integer]) -> IntPoly {
    let mut out: IntPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Integer::from(c * i as u32))
        .collect();
    trim_int(&mut out);
    out
}

pub fn mul(a: &[Integer], b: &[Integer]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Integer::from(x * y);
        }
    }
    trim_int(&mut out);
    out
}

fn to_rat(a: &[Integer]) -> RatPoly {
    let mut r: RatPoly = a.iter().map(|c| Rational::from(c.clone())).collect();
    trim_rat(&mut r);
    r
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive(a: &[Rational]) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut den = Integer::from(1);
    for c in a {
        den.lcm_mut(c.denom());
    }
    let mut ints: IntPoly = a
        .iter()
        .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
        .collect();
    let mut g = Integer::new();
    for c in &ints {
        g.gcd_mut(c);
    }
    if g != 0 {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if ints.last().is_some_and(|c| *c < 0) {
        for c in ints.iter_mut() {
            *c = Integer::from(-&*c);
        }
    }
    trim_int(&mut ints);
    ints
}

fn div_rem_rat(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let mut q = vec![Rational::new(); r.len().saturating_sub(db)];
    while r.len() > db {
        let top = r.len() - 1;
        let factor = Rational::from(&r[top] / &b[db]);
        let shift = top - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&factor * bc);
        }
        q[shift] = factor;
        r.pop();
        trim_rat(&mut r);
    }
    trim_rat(&mut q);
    (q, r)
}

/// gcd over Q, returned as a primitive integer polynomial with positive
/// leading coefficient; `[1]` for coprime inputs.
pub fn gcd(a: &[Integer], b: &[Integer]) -> IntPoly {
    let mut x = to_rat(a);
    let mut y = to_rat(b);
    while !y.is_empty() {
        let (_, r) = div_rem_rat(&x, &y);
        x = y;
        y = r;
    }
    primitive(&x)
}

/// Exact quotient a / b over Q, made primitive.
fn div_exact_rat(a: &[Rational], b: &[Rational]) -> RatPoly {
    let (q, r) = div_rem_rat(a, b);
    debug_assert!(r.is_empty());
    q
}

/// Squarefree factorization over Q (Yun): primitive factors with their
/// multiplicities, each factor of positive degree.
pub fn squarefree_factorization(f: &[Integer]) -> Vec<(IntPoly, u32)> {
    let f = to_rat(f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let fp = rat_derivative(&f);
    let b = to_rat(&gcd(&primitive(&f), &primitive(&fp)));
    let mut c = div_exact_rat(&f, &b);
    let mut d = sub_rat(&div_exact_rat(&fp, &b), &rat_derivative(&c));
    let mut out = Vec::new();
    let mut i = 1;
    while c.len() > 1 {
        let a = to_rat(&gcd(&primitive(&c), &primitive(&d)));
        if a.len() > 1 {
            out.push((primitive(&a), i));
        }
        c = div_exact_rat(&c, &a);
        d = sub_rat(&div_exact_rat(&d, &a), &rat_derivative(&c));
        i += 1;
    }
    out
}

fn rat_derivative(a: &[Rational]) -> RatPoly {
    let mut out: RatPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| Rational::from(c * i as u32))
        .collect();
    trim_rat(&mut out);
    out
}

fn sub_rat(a: &[Rational], b: &[Rational]) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim_rat(&mut out);
    out
}

/// The real Weil polynomial: for P(u) = Π (1 - t_j u + Q u^2) with the
/// functional-equation symmetry, returns the monic R(T) = Π (T - t_j).
///
/// Writing T = 1/u + Q·u, u^{-g} P(u) = c_g + Σ_{k≥1} c_{g-k} W_k(T) with
/// W_0 = 2, W_1 = T, W_k = T·W_{k-1} - Q·W_{k-2}.
pub fn real_weil_polynomial(p: &[Integer], q: &Integer) -> IntPoly {
    let g = p.len().saturating_sub(1) / 2;
    if g == 0 {
        return vec![Integer::from(1)];
    }
    let mut w: Vec<IntPoly> = vec![vec![Integer::from(2)], vec![Integer::new(), Integer::from(1)]];
    for k in 2..=g {
        let shifted: IntPoly = std::iter::once(Integer::new())
            .chain(w[k - 1].iter().cloned())
            .collect();
        let mut next = shifted;
        for (i, c) in w[k - 2].iter().enumerate() {
            next[i] -= Integer::from(c * q);
        }
        trim_int(&mut next);
        w.push(next);
    }
    let mut r = vec![Integer::new(); g + 1];
    r[0] += &p[g];
    for k in 1..=g {
        for (i, c) in w[k].iter().enumerate() {
            r[i] += Integer::from(c * &p[g - k]);
        }
    }
    trim_int(&mut r);
    r
}

/// Number of distinct real roots, by a Sturm sequence evaluated at ±∞.
pub fn real_root_count(f: &[Integer]) -> usize {
    let f = to_rat(f);
    if f.len() <= 1 {
        return 0;
    }
    let mut seq = vec![f.clone(), rat_derivative(&f)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = div_rem_rat(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |signs: Vec<i32>| {
        signs
            .windows(2)
            .filter(|w| w[0] != w[1])
            .count()
    };
    let at_pos: Vec<i32> = seq.iter().map(|s| s.last().unwrap().cmp0() as i32).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|s| {
            let lead = s.last().unwrap().cmp0() as i32;
            if (s.len() - 1) % 2 == 1 {
                -lead
            } else {
                lead
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

pub fn eval_f64(a: &[Integer], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        // gcd(1+3u^2, 3u^2+1)
        assert_eq!(gcd(&from_i64(&[1, 0, 3]), &from_i64(&[1, 0, 3])), from_i64(&[1, 0, 3]));
        assert_eq!(gcd(&from_i64(&[1, -2, 5]), &from_i64(&[-1, 0, 5])), from_i64(&[1]));
        // (u-1)(u-2), (u-1)(u+3)
        assert_eq!(gcd(&from_i64(&[2, -3, 1]), &from_i64(&[-3, 2, 1])), from_i64(&[-1, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (u-1)^3 (u+2)^2 (u^2+1)
        let a = from_i64(&[-1, 1]);
        let b = from_i64(&[2, 1]);
        let c = from_i64(&[1, 0, 1]);
        let f = mul(&mul(&mul(&mul(&mul(&a, &a), &a), &b), &b), &c);
        let mut sf = squarefree_factorization(&f);
        sf.sort_by_key(|(_, m)| *m);
        assert_eq!(sf, vec![(c, 1), (b, 2), (a, 3)]);
    }

    #[test]
    fn sturm_counts_real_roots() {
        // (T-1)(T+3)(T^2+1): two real roots
        let f = mul(&from_i64(&[-3, 2, 1]), &from_i64(&[1, 0, 1]));
        assert_eq!(real_root_count(&f), 2);
        assert_eq!(real_root_count(&from_i64(&[-2, 0, 1])), 2);
        assert_eq!(real_root_count(&from_i64(&[2, 0, 1])), 0);
        // (T-1)^2 (T-2): distinct roots only
        let sq = mul(&mul(&from_i64(&[-1, 1]), &from_i64(&[-1, 1])), &from_i64(&[-2, 1]));
        assert_eq!(real_root_count(&sq), 2);
    }

    #[test]
    fn real_weil_polynomial_genus_one_and_two() {
        let q = Integer::from(5);
        assert_eq!(real_weil_polynomial(&from_i64(&[1, -2, 5]), &q), from_i64(&[-2, 1]));
        // (1 - 1u + 5u^2)(1 + 3u + 5u^2) -> (T - 1)(T + 3)
        let p = mul(&from_i64(&[1, -1, 5]), &from_i64(&[1, 3, 5]));
        assert_eq!(real_weil_polynomial(&p, &q), from_i64(&[-3, 2, 1]));
        // genus 3 with Q = 3: t = 0, 1, -2
        let q3 = Integer::from(3);
        let p = mul(&mul(&from_i64(&[1, 0, 3]), &from_i64(&[1, -1, 3])), &from_i64(&[1, 2, 3]));
        let r = real_weil_polynomial(&p, &q3);
        let expect = mul(&mul(&from_i64(&[0, 1]), &from_i64(&[-1, 1])), &from_i64(&[2, 1]));
        assert_eq!(r, expect);
    }
}
