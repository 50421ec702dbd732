//! Discrete-log representation of a small field: an element is its log to a
//! fixed primitive root, with `order - 1` standing for zero. Multiplication
//! adds logs and addition goes through the Zech table log(1 + g^i).

use super::FieldDesc;

pub struct ZechTables {
    q: u32,
    p: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ZechTables {
    pub(crate) fn build(field: &FieldDesc) -> Self {
        let q = field.order_u64().expect("tabulated fields are small") as u32;
        let p = field.characteristic();
        let group = (q - 1) as u64;
        let factors = prime_factors(group);
        // first primitive element in index order
        let gen = (1..q as u64)
            .map(|i| field.index_to_coeffs(i))
            .find(|c| {
                factors
                    .iter()
                    .all(|&r| !is_one(&pow_coeffs(field, c, group / r)))
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![q - 1; q as usize];
        let mut cur = field.index_to_coeffs(1);
        let mut buf = Vec::with_capacity(cur.len());
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = field.coeffs_to_index(&cur) as u32;
            *slot = idx;
            log[idx as usize] = i as u32;
            field.mul_coeffs(&cur, &gen, &mut buf);
            std::mem::swap(&mut cur, &mut buf);
        }
        let zech = exp
            .iter()
            .map(|&idx| {
                let c0 = idx % p;
                let shifted = idx - c0 + (c0 + 1) % p;
                log[shifted as usize]
            })
            .collect();
        ZechTables {
            q,
            p,
            exp,
            log,
            zech,
        }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The log standing for zero.
    #[inline]
    pub fn zero(&self) -> u32 {
        self.q - 1
    }

    #[inline]
    pub fn one(&self) -> u32 {
        0
    }

    #[inline]
    pub fn log_of_index(&self, idx: u64) -> u32 {
        self.log[idx as usize]
    }

    #[inline]
    pub fn index_of_log(&self, l: u32) -> u64 {
        if l == self.zero() {
            0
        } else {
            self.exp[l as usize] as u64
        }
    }

    /// Log of the prime-field image of `v`.
    pub fn from_int(&self, v: i64) -> u32 {
        self.log[v.rem_euclid(self.p as i64) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let z = self.zero();
        if a == z || b == z {
            return z;
        }
        let s = a as u64 + b as u64;
        (s % z as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let z = self.zero();
        if a == z {
            return b;
        }
        if b == z {
            return a;
        }
        let d = if b >= a { b - a } else { b + z - a };
        let zd = self.zech[d as usize];
        if zd == z {
            return z;
        }
        ((a as u64 + zd as u64) % z as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let z = self.zero();
        if a == z {
            return z;
        }
        // -1 = g^((q-1)/2)
        ((a as u64 + (z / 2) as u64) % z as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        let z = self.zero();
        if a == z {
            None
        } else {
            Some((z - a) % z)
        }
    }

    /// Quadratic character: the primitive root is a non-square, so the
    /// character is the parity of the log.
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if a == self.zero() {
            0
        } else if a % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Horner evaluation of log-coefficient polynomial at log point `x`.
    #[inline]
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Σ_x χ(f(x)) over the whole field.
    pub fn character_sum(&self, coeffs: &[u32]) -> i64 {
        (0..=self.zero())
            .map(|x| self.chi(self.eval(coeffs, x)) as i64)
            .sum()
    }

    fn trim(&self, a: &mut Vec<u32>) {
        while a.last() == Some(&self.zero()) {
            a.pop();
        }
    }

    fn rem(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        self.trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]).expect("trimmed divisor");
        while r.len() > db {
            let top = r.len() - 1;
            let factor = self.mul(r[top], lead_inv);
            let shift = top - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(factor, bc));
            }
            r.pop();
            self.trim(&mut r);
        }
        r
    }

    /// gcd(f, f') constant, on log coefficients.
    pub fn is_squarefree(&self, coeffs: &[u32]) -> bool {
        let mut a = coeffs.to_vec();
        self.trim(&mut a);
        let mut b: Vec<u32> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, self.from_int(i as i64)))
            .collect();
        self.trim(&mut b);
        if a.len() <= 1 {
            return !a.is_empty();
        }
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a.len() == 1
    }
}

fn pow_coeffs(field: &FieldDesc, base: &[u32], mut exp: u64) -> Vec<u32> {
    let mut acc = field.index_to_coeffs(1);
    let mut b = base.to_vec();
    let mut buf = Vec::new();
    while exp > 0 {
        if exp & 1 == 1 {
            field.mul_coeffs(&acc, &b, &mut buf);
            std::mem::swap(&mut acc, &mut buf);
        }
        field.mul_coeffs(&b, &b, &mut buf);
        std::mem::swap(&mut b, &mut buf);
        exp >>= 1;
    }
    acc
}

fn is_one(c: &[u32]) -> bool {
    c[0] == 1 && c[1..].iter().all(|&x| x == 0)
}
