//! Random-matrix statistics of eigenangle vectors: |Z_U|, φ and its unitary
//! and negative-moment variants, the minimizing configurations, sampling
//! from the USp(2g) Weyl measure and probability estimates.

mod estimate;
mod minimum;
mod sampling;

use std::f64::consts::PI;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use estimate::{
    closed_form_prob_g1, expectation_by_quadrature, mc_expectation, phi_samples, prob_from_samples,
    prob_phi_leq, quadrature_integral, quadrature_prob, MCEstimate, QuadratureEstimate,
};
pub use minimum::{verify_minimum, MinimumMode, MinimumReport};
pub use sampling::{
    density, log_density, sample_eigenangles, SamplerKind, MCMC_BURN_IN, MCMC_STEP, MCMC_THIN,
    STREAM_LEN,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    /// g angles in [0, π], paired with their negatives.
    Symplectic,
    /// N angles on the full circle (-π, π].
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenangleVector {
    group: Group,
    thetas: Vec<f64>,
}

impl EigenangleVector {
    pub fn new(group: Group, thetas: Vec<f64>) -> Result<Self> {
        if thetas.iter().any(|t| t.is_nan()) {
            return invalid("eigenangles must not be NaN");
        }
        let ok = match group {
            Group::Symplectic => thetas.iter().all(|&t| (0.0..=PI).contains(&t)),
            Group::Unitary => thetas.iter().all(|&t| t > -PI && t <= PI),
        };
        if !ok {
            return invalid("eigenangle outside its domain");
        }
        Ok(EigenangleVector { group, thetas })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn phi(&self) -> f64 {
        match self.group {
            Group::Symplectic => phi(&self.thetas),
            Group::Unitary => phi_unitary(&self.thetas),
        }
    }
}

/// |Z_U(θ)| = 2^g Π |cos θ - cos θ_j|.
pub fn char_poly_abs(thetas: &[f64], theta: f64) -> f64 {
    let c = theta.cos();
    thetas
        .iter()
        .fold(2f64.powi(thetas.len() as i32), |acc, t| acc * (c - t.cos()).abs())
}

/// φ(θ_1..θ_g) = 2^{1-g} Σ_j cosec θ_j Π_{k≠j} 1/|cos θ_k - cos θ_j|;
/// +∞ when an angle is 0 or π or two angles coincide.
pub fn phi(thetas: &[f64]) -> f64 {
    let g = thetas.len();
    if g == 0 {
        return 0.0;
    }
    let cos: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
    let mut sum = 0.0;
    for j in 0..g {
        let s = thetas[j].sin();
        if s <= 0.0 {
            return f64::INFINITY;
        }
        let mut den = s;
        for k in 0..g {
            if k != j {
                den *= (cos[k] - cos[j]).abs();
            }
        }
        if den == 0.0 {
            return f64::INFINITY;
        }
        sum += 1.0 / den;
    }
    sum / 2f64.powi(g as i32 - 1)
}

/// φ in MPFR arithmetic at the precision of the inputs; `None` for a
/// degenerate configuration (φ = +∞).
pub fn phi_hp(thetas: &[Float]) -> Option<Float> {
    let g = thetas.len();
    let prec = thetas.first().map_or(64, |t| t.prec());
    let cos: Vec<Float> = thetas.iter().map(|t| Float::with_val(prec, t.cos_ref())).collect();
    let mut sum = Float::new(prec);
    for j in 0..g {
        let mut den = Float::with_val(prec, thetas[j].sin_ref());
        if den <= 0 {
            return None;
        }
        for k in (0..g).filter(|&k| k != j) {
            den *= Float::with_val(prec, &cos[k] - &cos[j]).abs();
        }
        if den.is_zero() {
            return None;
        }
        sum += Float::with_val(prec, den.recip_ref());
    }
    if g > 0 {
        sum >>= g as u32 - 1;
    }
    Some(sum)
}

/// φ for N angles on the full circle:
/// 2^{1-N} Σ_j Π_{k≠j} |cosec((θ_k - θ_j)/2)|.
pub fn phi_unitary(thetas: &[f64]) -> f64 {
    let n = thetas.len();
    let mut sum = 0.0;
    for j in 0..n {
        let mut den = 1.0;
        for k in 0..n {
            if k != j {
                den *= ((thetas[k] - thetas[j]) / 2.0).sin().abs();
            }
        }
        if den == 0.0 {
            return f64::INFINITY;
        }
        sum += 1.0 / den;
    }
    sum / 2f64.powi(n as i32 - 1)
}

/// Σ_j |Z_U'(θ_j)|^{2k} with |Z_U'(θ_j)| = Π_{l≠j} |1 - e^{i(θ_l - θ_j)}|,
/// meant for k < 0; +∞ on coincident angles.
pub fn phi_k_unitary(thetas: &[f64], k: f64) -> f64 {
    let n = thetas.len();
    let mut sum = 0.0;
    for j in 0..n {
        let mut d = 1.0;
        for l in 0..n {
            if l != j {
                d *= 2.0 * ((thetas[l] - thetas[j]) / 2.0).sin().abs();
            }
        }
        if d == 0.0 && k < 0.0 {
            return f64::INFINITY;
        }
        sum += d.powf(2.0 * k);
    }
    sum
}

/// The minimizing configuration ((2j-1)π/2g)_{j=1..g}.
pub fn min_reference(g: usize) -> EigenangleVector {
    let thetas = (1..=g)
        .map(|j| (2 * j - 1) as f64 * PI / (2 * g) as f64)
        .collect();
    EigenangleVector {
        group: Group::Symplectic,
        thetas,
    }
}

/// N evenly spaced angles 2πj/N, shifted into (-π, π].
pub fn unitary_reference(n: usize) -> EigenangleVector {
    let thetas = (0..n)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / n as f64;
            if a > PI {
                a - 2.0 * PI
            } else {
                a
            }
        })
        .collect();
    EigenangleVector {
        group: Group::Unitary,
        thetas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn char_poly_examples() {
        assert!((char_poly_abs(&[PI / 2.0], 0.0) - 2.0).abs() < 1e-15);
        assert_eq!(char_poly_abs(&[0.7, 1.3], 1.3), 0.0);
        assert!((char_poly_abs(&[PI / 4.0, 3.0 * PI / 4.0], 0.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn phi_examples() {
        assert!((phi(&[PI / 2.0]) - 1.0).abs() < 1e-15);
        assert!((phi(&[PI / 4.0, 3.0 * PI / 4.0]) - 1.0).abs() < 1e-14);
        assert!((phi(&[PI / 3.0]) - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(phi(&[0.0]), f64::INFINITY);
        assert_eq!(phi(&[1.0, 1.0]), f64::INFINITY);
    }

    #[test]
    fn unitary_examples() {
        assert!((phi_unitary(&[-PI / 2.0, PI / 2.0]) - 1.0).abs() < 1e-15);
        assert!((phi_unitary(unitary_reference(3).thetas()) - 1.0).abs() < 1e-14);
        assert!((phi_k_unitary(unitary_reference(2).thetas(), -1.0) - 0.5).abs() < 1e-15);
        // each |Z'| = N = 4
        assert!((phi_k_unitary(unitary_reference(4).thetas(), -1.0) - 0.25).abs() < 1e-14);
        let t = [0.3, 1.9, -2.2, 2.8];
        assert!((phi_k_unitary(&t, -0.5) - phi_unitary(&t)).abs() < 1e-12 * phi_unitary(&t));
    }

    #[test]
    fn reference_points() {
        assert_eq!(min_reference(1).thetas(), &[PI / 2.0]);
        let r = min_reference(3);
        assert!((r.thetas()[0] - PI / 6.0).abs() < 1e-15);
        assert!((r.thetas()[1] - PI / 2.0).abs() < 1e-15);
        assert!((r.thetas()[2] - 5.0 * PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn hp_phi_agrees() {
        let t = [0.4, 1.7, 2.9];
        let hp: Vec<Float> = t.iter().map(|&x| Float::with_val(128, x)).collect();
        let v = phi_hp(&hp).unwrap().to_f64();
        assert!((v - phi(&t)).abs() < 1e-12 * v);
        assert!(phi_hp(&[Float::with_val(64, 0)]).is_none());
    }

    #[test]
    fn eigenangle_vector_validation() {
        assert!(EigenangleVector::new(Group::Symplectic, vec![f64::NAN]).is_err());
        assert!(EigenangleVector::new(Group::Symplectic, vec![-0.1]).is_err());
        assert!(EigenangleVector::new(Group::Unitary, vec![-0.1, 3.0]).is_ok());
        assert!(EigenangleVector::new(Group::Unitary, vec![-PI]).is_err());
    }

    proptest! {
        #[test]
        fn phi_is_symmetric(t in prop::collection::vec(0.01f64..3.13, 1..6), seed in 0u64..1000) {
            let mut s = t.clone();
            // a deterministic permutation
            let n = s.len();
            for i in 0..n {
                s.swap(i, (seed as usize + 7 * i) % n);
            }
            let a = phi(&t);
            let b = phi(&s);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0) || (a.is_infinite() && b.is_infinite()));
        }

        #[test]
        fn phi_unitary_translation_invariant(t in prop::collection::vec(-3.1f64..3.1, 2..7), d in -3.0f64..3.0) {
            let shifted: Vec<f64> = t.iter().map(|x| x + d).collect();
            let a = phi_unitary(&t);
            let b = phi_unitary(&shifted);
            prop_assert!((a - b).abs() <= 1e-9 * a);
        }

        #[test]
        fn symplectic_and_unitary_forms_agree(t in prop::collection::vec(0.05f64..3.09, 1..5)) {
            let full: Vec<f64> = t.iter().copied().chain(t.iter().map(|x| -x)).collect();
            let a = phi(&t);
            let b = phi_unitary(&full);
            prop_assert!((a - b).abs() <= 1e-8 * a, "{} vs {}", a, b);
        }

        #[test]
        fn phi_at_least_one(t in prop::collection::vec(0.0f64..PI, 1..7)) {
            prop_assert!(phi(&t) >= 1.0 - 1e-12);
        }
    }
}
