//! Samplers for the eigenangle density of USp(2g),
//! (2^{g²}/(g! π^g)) Π_{j<k} (cos θ_k - cos θ_j)² Π_l sin² θ_l on [0, π]^g.
//!
//! Draws are organised in streams of `STREAM_LEN` vectors; stream `i` uses
//! the ChaCha8 generator seeded with `seed` on stream number `i`, so a run is
//! a function of (seed, method, count) only, whatever the thread count.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{EigenangleVector, Group};
use crate::error::{invalid, Result};

pub const STREAM_LEN: usize = 1 << 14;
pub const MCMC_STEP: f64 = 0.15;
pub const MCMC_BURN_IN: usize = 10_000;
pub const MCMC_THIN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    ExactG1,
    Rejection,
    Mcmc,
}

impl SamplerKind {
    pub fn name(self) -> &'static str {
        match self {
            SamplerKind::ExactG1 => "exact_g1",
            SamplerKind::Rejection => "rejection",
            SamplerKind::Mcmc => "mcmc",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact_g1" => Ok(SamplerKind::ExactG1),
            "rejection" => Ok(SamplerKind::Rejection),
            "mcmc" => Ok(SamplerKind::Mcmc),
            other => invalid(format!("unknown sampler '{other}'")),
        }
    }
}

fn ln_factorial(g: usize) -> f64 {
    (2..=g).map(|k| (k as f64).ln()).sum()
}

fn log_normalizer(g: usize) -> f64 {
    let gf = g as f64;
    gf * gf * std::f64::consts::LN_2 - ln_factorial(g) - gf * PI.ln()
}

/// Log of the Weyl density; -∞ where it vanishes.
pub fn log_density(thetas: &[f64]) -> f64 {
    let g = thetas.len();
    let mut acc = log_normalizer(g);
    let cos: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
    for j in 0..g {
        acc += 2.0 * thetas[j].sin().abs().ln();
        for k in j + 1..g {
            acc += 2.0 * (cos[k] - cos[j]).abs().ln();
        }
    }
    if acc.is_nan() {
        f64::NEG_INFINITY
    } else {
        acc
    }
}

pub fn density(thetas: &[f64]) -> f64 {
    let g = thetas.len();
    let cos: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
    let mut v = log_normalizer(g).exp();
    for j in 0..g {
        let s = thetas[j].sin();
        v *= s * s;
        for k in j + 1..g {
            let d = cos[k] - cos[j];
            v *= d * d;
        }
    }
    v
}

/// Inverse of F(θ) = (θ - sin θ cos θ)/π by safeguarded Newton.
fn inverse_cdf_g1(u: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, PI);
    let mut x = PI * u;
    for _ in 0..100 {
        let f = (x - x.sin() * x.cos()) / PI - u;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = 2.0 * x.sin().powi(2) / PI;
        let mut next = x - f / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn reflect(mut x: f64) -> f64 {
    loop {
        if x < 0.0 {
            x = -x;
        } else if x > PI {
            x = 2.0 * PI - x;
        } else {
            return x;
        }
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn fill_stream(g: usize, len: usize, seed: u64, stream: u64, method: SamplerKind) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream);
    let mut out = Vec::with_capacity(len * g);
    match method {
        SamplerKind::ExactG1 => {
            for _ in 0..len {
                out.push(inverse_cdf_g1(rng.random::<f64>()));
            }
        }
        SamplerKind::Rejection => {
            let log_envelope = log_normalizer(g) + (g * (g - 1)) as f64 * std::f64::consts::LN_2;
            let mut x = vec![0.0; g];
            while out.len() < len * g {
                for v in x.iter_mut() {
                    *v = PI * rng.random::<f64>();
                }
                let u: f64 = rng.random();
                if u.ln() + log_envelope <= log_density(&x) {
                    out.extend_from_slice(&x);
                }
            }
        }
        SamplerKind::Mcmc => {
            let mut x: Vec<f64> = (0..g).map(|_| PI * rng.random::<f64>()).collect();
            let mut lx = log_density(&x);
            let mut prop = x.clone();
            let step = |x: &mut Vec<f64>, lx: &mut f64, prop: &mut Vec<f64>, rng: &mut ChaCha8Rng| {
                for (p, v) in prop.iter_mut().zip(x.iter()) {
                    *p = reflect(v + MCMC_STEP * standard_normal(rng));
                }
                let lp = log_density(prop);
                let u: f64 = rng.random();
                if lp > f64::NEG_INFINITY && u.ln() < lp - *lx {
                    std::mem::swap(x, prop);
                    *lx = lp;
                }
            };
            for _ in 0..MCMC_BURN_IN {
                step(&mut x, &mut lx, &mut prop, &mut rng);
            }
            for _ in 0..len {
                for _ in 0..MCMC_THIN {
                    step(&mut x, &mut lx, &mut prop, &mut rng);
                }
                out.extend_from_slice(&x);
            }
        }
    }
    out
}

pub(crate) fn check_method(g: usize, method: SamplerKind) -> Result<()> {
    if g == 0 {
        return invalid("g must be at least 1");
    }
    if method == SamplerKind::ExactG1 && g != 1 {
        return invalid("the exact sampler is only available for g = 1");
    }
    Ok(())
}

/// Flat buffer of `count` vectors of length g, stream by stream, computed in
/// parallel and concatenated in stream order.
pub(crate) fn sample_flat(g: usize, count: usize, seed: u64, method: SamplerKind) -> Result<Vec<f64>> {
    check_method(g, method)?;
    let streams = count.div_ceil(STREAM_LEN);
    let parts: Vec<Vec<f64>> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let len = STREAM_LEN.min(count - s * STREAM_LEN);
            fill_stream(g, len, seed, s as u64, method)
        })
        .collect();
    Ok(parts.concat())
}

/// `count` eigenangle vectors drawn from the Weyl measure of USp(2g).
pub fn sample_eigenangles(
    g: usize,
    count: usize,
    seed: u64,
    method: SamplerKind,
) -> Result<Vec<EigenangleVector>> {
    let flat = sample_flat(g, count, seed, method)?;
    Ok(flat
        .chunks(g)
        .map(|c| EigenangleVector {
            group: Group::Symplectic,
            thetas: c.to_vec(),
        })
        .collect())
}
