//! Numerical checks of the global minima of φ and of Σ|Z'|^{2k}.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{min_reference, phi, phi_k_unitary, phi_unitary, unitary_reference};
use crate::error::{invalid, Result};

const VALUE_TOL: f64 = 1e-12;
const NEAR_MIN: f64 = 1e-6;
const LOCATION_TOL: f64 = 1e-2;
const LOCAL_SEARCHES: usize = 32;
const SEARCH_STEPS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "k")]
pub enum MinimumMode {
    Symplectic,
    Unitary,
    UnitaryK(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimumReport {
    pub mode: MinimumMode,
    /// g (symplectic) or N (unitary).
    pub size: usize,
    pub target: f64,
    pub reference_value: f64,
    pub trials: usize,
    pub smallest_value: f64,
    pub near_minimum_hits: usize,
    pub passed: bool,
    pub counterexample: Option<Vec<f64>>,
    pub message: String,
}

impl MinimumMode {
    fn eval(self, x: &[f64]) -> f64 {
        match self {
            MinimumMode::Symplectic => phi(x),
            MinimumMode::Unitary => phi_unitary(x),
            MinimumMode::UnitaryK(k) => phi_k_unitary(x, k),
        }
    }

    /// Value at the evenly spaced configuration: 1 for φ, and N^{2k+1} for
    /// Σ|Z'|^{2k} since every |Z'(θ_j)| equals N there.
    pub fn target(self, size: usize) -> f64 {
        match self {
            MinimumMode::Symplectic | MinimumMode::Unitary => 1.0,
            MinimumMode::UnitaryK(k) => (size as f64).powf(2.0 * k + 1.0),
        }
    }

    fn reference(self, size: usize) -> Vec<f64> {
        match self {
            MinimumMode::Symplectic => min_reference(size).thetas().to_vec(),
            _ => unitary_reference(size).thetas().to_vec(),
        }
    }

    fn random_point(self, size: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..size)
            .map(|_| match self {
                MinimumMode::Symplectic => PI * rng.random::<f64>(),
                _ => PI - 2.0 * PI * rng.random::<f64>(),
            })
            .collect()
    }

    fn clamp(self, x: f64) -> f64 {
        match self {
            MinimumMode::Symplectic => x.clamp(0.0, PI),
            _ => x,
        }
    }
}

/// Distance to the nearest permutation (and, on the circle, rotation) of the
/// reference configuration.
fn distance_to_reference(mode: MinimumMode, x: &[f64]) -> f64 {
    let n = x.len();
    let reference = mode.reference(n);
    match mode {
        MinimumMode::Symplectic => {
            let mut s = x.to_vec();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            s.iter()
                .zip(reference.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        }
        _ => {
            let mut s: Vec<f64> = x.iter().map(|a| a.rem_euclid(2.0 * PI)).collect();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let step = 2.0 * PI / n as f64;
            let offsets: Vec<f64> = s.iter().enumerate().map(|(j, a)| a - step * j as f64).collect();
            let shift = offsets.iter().sum::<f64>() / n as f64;
            offsets.iter().map(|o| (o - shift).abs()).fold(0.0, f64::max)
        }
    }
}

fn local_search(mode: MinimumMode, start: Vec<f64>, rng: &mut ChaCha8Rng) -> (Vec<f64>, f64) {
    let mut x = start;
    let mut fx = mode.eval(&x);
    let mut step = 0.3;
    let mut y = x.clone();
    for _ in 0..SEARCH_STEPS {
        for (yi, xi) in y.iter_mut().zip(x.iter()) {
            *yi = mode.clamp(xi + step * (2.0 * rng.random::<f64>() - 1.0));
        }
        let fy = mode.eval(&y);
        if fy < fx {
            std::mem::swap(&mut x, &mut y);
            fx = fy;
        } else {
            step = (step * 0.98).max(1e-9);
        }
    }
    (x, fx)
}

/// Checks that the reference configuration attains the claimed minimum, that
/// `trials` random configurations and local descents from them never go
/// below it, and that near-minimal values only occur near the reference.
pub fn verify_minimum(size: usize, mode: MinimumMode, trials: usize, seed: u64) -> Result<MinimumReport> {
    if trials == 0 || size == 0 {
        return invalid("need size ≥ 1 and trials ≥ 1");
    }
    if mode != MinimumMode::Symplectic && size < 2 {
        return invalid("the unitary statistics need N ≥ 2");
    }
    if let MinimumMode::UnitaryK(k) = mode {
        if !(k < 0.0) {
            return invalid("k must be negative");
        }
    }
    let target = mode.target(size);
    let reference_value = mode.eval(&mode.reference(size));
    let mut report = MinimumReport {
        mode,
        size,
        target,
        reference_value,
        trials,
        smallest_value: reference_value,
        near_minimum_hits: 0,
        passed: true,
        counterexample: None,
        message: String::new(),
    };
    if (reference_value - target).abs() > VALUE_TOL * target.max(1.0) {
        report.passed = false;
        report.counterexample = Some(mode.reference(size));
        report.message = format!("reference value {reference_value} differs from target {target}");
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    let check = |x: &[f64], v: f64, report: &mut MinimumReport| -> bool {
        report.smallest_value = report.smallest_value.min(v);
        if v < target - VALUE_TOL * target.max(1.0) {
            report.passed = false;
            report.counterexample = Some(x.to_vec());
            report.message = format!("value {v} below target {target}");
            return false;
        }
        if v - target <= NEAR_MIN * target.max(1.0) {
            report.near_minimum_hits += 1;
            if distance_to_reference(mode, x) > LOCATION_TOL {
                report.passed = false;
                report.counterexample = Some(x.to_vec());
                report.message = format!("near-minimal value {v} away from the reference point");
                return false;
            }
        }
        true
    };
    for _ in 0..trials {
        let x = mode.random_point(size, &mut rng);
        let v = mode.eval(&x);
        if !check(&x, v, &mut report) {
            return Ok(report);
        }
        if starts.len() < LOCAL_SEARCHES {
            starts.push(x);
        }
    }
    for x in starts {
        let (y, v) = local_search(mode, x, &mut rng);
        if !check(&y, v, &mut report) {
            return Ok(report);
        }
    }
    // descents started next to the reference must stay at the target
    for _ in 0..4 {
        let start: Vec<f64> = mode
            .reference(size)
            .iter()
            .map(|a| mode.clamp(a + 1e-3 * (2.0 * rng.random::<f64>() - 1.0)))
            .collect();
        let (y, v) = local_search(mode, start, &mut rng);
        if !check(&y, v, &mut report) {
            return Ok(report);
        }
    }
    report.message = "ok".into();
    Ok(report)
}
