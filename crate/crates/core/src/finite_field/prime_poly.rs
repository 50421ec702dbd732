//! Dense polynomials over the prime field F_p, low-to-high coefficients.
//! Only what the modulus search and the field multiplication need.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `b` (`b` nonzero).
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % p64;
        if factor != 0 {
            let shift = top - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = factor * bc as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

/// `base^p mod m`.
fn pow_p_mod(base: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test for a monic `f` of degree ≥ 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let mut h = vec![0u32, 1];
    for _ in 1..=deg / 2 {
        h = pow_p_mod(&h, f, p);
        // h - x
        let mut diff = h.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_quadratics_mod_3() {
        // x^2+1, x^2+x+2, x^2+2x+2
        let mut found = Vec::new();
        for c1 in 0..3 {
            for c0 in 0..3 {
                if is_irreducible(&[c0, c1, 1], 3) {
                    found.push((c0, c1));
                }
            }
        }
        found.sort();
        assert_eq!(found, vec![(1, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn reducible_quartic_detected() {
        // (x^2+1)^2 = x^4 + 2x^2 + 1 over F_3
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
    }
}
