//! Monte Carlo and tensor-grid quadrature estimates of expectations under
//! the USp(2g) Weyl measure.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::phi;
use super::sampling::{check_method, density, sample_flat, SamplerKind, STREAM_LEN};
use crate::error::{invalid, Error, Result};
use crate::output::f64_value;

/// Batch length (in thinned draws) for the batch-means error of MCMC runs.
const BATCH_LEN: usize = 1024;

/// Largest number of grid cells a quadrature may visit.
const QUADRATURE_BUDGET: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub method: SamplerKind,
}

impl MCEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": f64_value(self.value),
            "stderr": f64_value(self.standard_error),
            "n": self.n_samples,
            "seed": self.seed,
            "method": self.method.name(),
        })
    }

    /// |value - x| in units of the standard error.
    pub fn z_score(&self, x: f64) -> f64 {
        (self.value - x).abs() / self.standard_error
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// |I_m - I_{2m}|.
    pub error: f64,
    pub g: usize,
    pub points_per_axis: usize,
}

impl QuadratureEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": f64_value(self.value),
            "error": f64_value(self.error),
            "g": self.g,
            "points_per_axis": self.points_per_axis,
            "method": "quadrature",
        })
    }
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

fn kahan_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut k = Kahan::default();
    for x in xs {
        k.add(x);
    }
    k.sum
}

/// Mean and standard error. Independent draws use sample-std/√n; MCMC
/// draws use batch means over consecutive batches inside each stream.
fn mean_and_error(values: &[f64], method: SamplerKind) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = kahan_sum(values.iter().copied()) / n as f64;
    let iid = || {
        if n < 2 {
            return f64::NAN;
        }
        let var = kahan_sum(values.iter().map(|v| (v - mean).powi(2))) / (n - 1) as f64;
        (var / n as f64).sqrt()
    };
    if method != SamplerKind::Mcmc {
        return (mean, iid());
    }
    let mut batch_means = Vec::new();
    for stream in values.chunks(STREAM_LEN) {
        for batch in stream.chunks_exact(BATCH_LEN) {
            batch_means.push(kahan_sum(batch.iter().copied()) / BATCH_LEN as f64);
        }
    }
    let b = batch_means.len();
    if b < 10 {
        return (mean, iid());
    }
    let bm = kahan_sum(batch_means.iter().copied()) / b as f64;
    let var = kahan_sum(batch_means.iter().map(|v| (v - bm).powi(2))) / (b - 1) as f64;
    (mean, (var / b as f64).sqrt())
}

/// φ of `n` vectors drawn from the Weyl measure, in draw order.
pub fn phi_samples(g: usize, n: usize, seed: u64, method: SamplerKind) -> Result<Vec<f64>> {
    let flat = sample_flat(g, n, seed, method)?;
    Ok(flat.par_chunks(g).map(phi).collect())
}

/// Fraction of the given φ values that are ≤ β.
pub fn prob_from_samples(phis: &[f64], beta: f64, seed: u64, method: SamplerKind) -> MCEstimate {
    let ind: Vec<f64> = phis.iter().map(|&v| if v <= beta { 1.0 } else { 0.0 }).collect();
    let (value, standard_error) = mean_and_error(&ind, method);
    MCEstimate {
        value,
        standard_error,
        n_samples: phis.len() as u64,
        seed,
        method,
    }
}

/// Mean of f(φ) over the given φ values.
pub fn mc_expectation(
    phis: &[f64],
    seed: u64,
    method: SamplerKind,
    f: impl Fn(f64) -> f64,
) -> MCEstimate {
    let vals: Vec<f64> = phis.iter().map(|&v| f(v)).collect();
    let (value, standard_error) = mean_and_error(&vals, method);
    MCEstimate {
        value,
        standard_error,
        n_samples: phis.len() as u64,
        seed,
        method,
    }
}

/// Monte Carlo estimate of Prob(φ(U) ≤ β) over USp(2g).
pub fn prob_phi_leq(g: usize, beta: f64, n: usize, seed: u64, method: SamplerKind) -> Result<MCEstimate> {
    if !(beta > 0.0) {
        return invalid("β must be positive");
    }
    if n == 0 {
        return invalid("need at least one sample");
    }
    check_method(g, method)?;
    let phis = phi_samples(g, n, seed, method)?;
    Ok(prob_from_samples(&phis, beta, seed, method))
}

/// Prob(φ ≤ β) for g = 1: 1 - 2α/π + sin(2α)/π with α = arcsin(1/β).
pub fn closed_form_prob_g1(beta: f64) -> f64 {
    if beta <= 1.0 {
        return 0.0;
    }
    let a = (1.0 / beta).asin();
    1.0 - 2.0 * a / PI + (2.0 * a).sin() / PI
}

/// Midpoint rule on an m^g tensor grid over [0, π]^g of f·(Weyl density).
pub fn quadrature_integral<F>(g: usize, m: usize, f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if g == 0 || m == 0 {
        return invalid("g and the grid size must be positive");
    }
    let cells = (m as u64).checked_pow(g as u32).unwrap_or(u64::MAX);
    if cells > QUADRATURE_BUDGET {
        return Err(Error::Resource(format!("{m}^{g} grid cells exceed the quadrature budget")));
    }
    let h = PI / m as f64;
    let nodes: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * h).collect();
    let slices: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i0| {
            let mut acc = Kahan::default();
            let mut idx = vec![0usize; g];
            idx[0] = i0;
            let mut x = vec![0.0; g];
            loop {
                for (xk, &ik) in x.iter_mut().zip(idx.iter()) {
                    *xk = nodes[ik];
                }
                let d = density(&x);
                if d > 0.0 {
                    acc.add(f(&x) * d);
                }
                // odometer over axes 1..g
                let mut k = g;
                loop {
                    if k == 1 {
                        return acc.sum;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < m {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        })
        .collect();
    Ok(kahan_sum(slices) * h.powi(g as i32))
}

/// ∫ f dμ by the midpoint rule with m and 2m points per axis.
pub fn expectation_by_quadrature<F>(g: usize, m: usize, f: F) -> Result<QuadratureEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if g > 3 {
        return Err(Error::Unsupported("quadrature is limited to g ≤ 3".into()));
    }
    let coarse = quadrature_integral(g, m, &f)?;
    let fine = quadrature_integral(g, 2 * m, &f)?;
    Ok(QuadratureEstimate {
        value: coarse,
        error: (coarse - fine).abs(),
        g,
        points_per_axis: m,
    })
}

/// Prob(φ ≤ β) by quadrature of the indicator against the Weyl density.
pub fn quadrature_prob(g: usize, beta: f64, m: usize) -> Result<QuadratureEstimate> {
    if !(beta > 0.0) {
        return invalid("β must be positive");
    }
    expectation_by_quadrature(g, m, |x| if phi(x) <= beta { 1.0 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((closed_form_prob_g1(2f64.sqrt()) - (0.5 + 1.0 / PI)).abs() < 1e-15);
        assert_eq!(closed_form_prob_g1(1.0), 0.0);
        let near_one = closed_form_prob_g1(1e6);
        assert!(near_one > 0.999 && near_one <= 1.0);
    }

    #[test]
    fn normalization() {
        for g in 1..=3 {
            let v = quadrature_integral(g, 64, |_| 1.0).unwrap();
            assert!((v - 1.0).abs() < 1e-6, "g = {g}: {v}");
        }
    }

    #[test]
    fn quadrature_g1_matches_closed_form() {
        let q = quadrature_prob(1, 2f64.sqrt(), 10_000).unwrap();
        assert!((q.value - (0.5 + 1.0 / PI)).abs() < 1e-4);
        assert!(q.error < 1e-4);
        assert_eq!(quadrature_prob(1, 1.0, 1000).unwrap().value, 0.0);
        assert!(quadrature_prob(4, 1.5, 10).is_err());
    }

    #[test]
    fn mc_g1_matches_closed_form() {
        let est = prob_phi_leq(1, 2f64.sqrt(), 200_000, 1, SamplerKind::ExactG1).unwrap();
        assert!(est.z_score(0.5 + 1.0 / PI) < 4.0);
        let zero = prob_phi_leq(2, 1.0, 20_000, 1, SamplerKind::Rejection).unwrap();
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn monotone_in_beta_on_shared_samples() {
        let phis = phi_samples(2, 20_000, 9, SamplerKind::Mcmc).unwrap();
        let mut last = 0.0;
        for beta in [1.0, 1.05, 1.2, 1.5, 2.0, 5.0, 1e6] {
            let v = prob_from_samples(&phis, beta, 9, SamplerKind::Mcmc).value;
            assert!(v >= last);
            last = v;
        }
        assert!(last >= 0.999);
    }

    #[test]
    fn batch_means_wider_than_iid_for_mcmc() {
        let phis = phi_samples(2, 60_000, 4, SamplerKind::Mcmc).unwrap();
        let m = prob_from_samples(&phis, 1.2, 4, SamplerKind::Mcmc);
        let naive = (m.value * (1.0 - m.value) / phis.len() as f64).sqrt();
        assert!(m.standard_error > 0.5 * naive);
    }
}
