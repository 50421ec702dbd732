//! Family-wide experiments over H_{2g+1,Q}: every curve (or a uniform
//! sample) goes through counts → P → zeros → LI → φ, B → β verdicts, and
//! the proportions are compared with the USp(2g) predictions.
//!
//! Curves with equal point counts share P, so the analysis runs once per
//! distinct P and is weighted by multiplicity. All reductions are done in
//! the order of the sorted count vectors, which makes the output
//! independent of the number of worker threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use rug::Integer;
use serde_json::{json, Value};

use crate::curve::{exhaustive_indices, sampled_indices, EnsembleSpec, FamilyMode, PointCounter};
use crate::error::{invalid, Result};
use crate::finite_field::make_field;
use crate::hp::DEFAULT_PRECISION;
use crate::li::{li_report, LiStatus, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS};
use crate::mertens::{beta_classify, beta_key, localized_check, sandwich_check, MertensReport, Verdict};
use crate::output::{f64_value, float_string, int_value, SCHEMA_VERSION};
use crate::rmt::{
    closed_form_prob_g1, expectation_by_quadrature, mc_expectation, phi, phi_samples, prob_from_samples,
    quadrature_prob, SamplerKind,
};
use crate::zeta::ZetaData;

/// Grid points per axis for the random-matrix quadrature references.
fn quadrature_grid(g: usize) -> usize {
    match g {
        1 => 20_000,
        2 => 400,
        _ => 64,
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub betas: Vec<f64>,
    pub t_list: Vec<f64>,
    /// Monte Carlo sample count for the random-matrix reference when g ≥ 4.
    pub rmt_samples: usize,
    pub rmt_seed: u64,
    pub li_height: u64,
    pub li_precision: u32,
    /// Keep one row per curve for the CSV export.
    pub keep_curves: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            betas: vec![1.0, std::f64::consts::SQRT_2],
            t_list: vec![],
            rmt_samples: 100_000,
            rmt_seed: 0,
            li_height: DEFAULT_HEIGHT,
            li_precision: DEFAULT_PRECISION_BITS,
            keep_curves: false,
        }
    }
}

/// All curves sharing one count vector.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub counts: Vec<u64>,
    pub multiplicity: u64,
    pub report: std::result::Result<MertensReport, String>,
}

impl ClassEntry {
    fn li_status(&self) -> Option<LiStatus> {
        self.report.as_ref().ok().map(|r| r.li.status)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Proportion {
    pub satisfies: u64,
    pub fails: u64,
    pub unknown: u64,
    /// satisfies + fails; unknown-non-LI curves are left out.
    pub total: u64,
}

impl Proportion {
    pub fn satisfies_fraction(&self) -> f64 {
        self.satisfies as f64 / self.total as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmtReference {
    pub method: &'static str,
    pub value: f64,
    /// Standard error (Monte Carlo) or refinement difference (quadrature).
    pub error: f64,
}

impl RmtReference {
    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method,
            "value": f64_value(self.value),
            "error": f64_value(self.error),
        })
    }
}

#[derive(Debug, Clone)]
pub struct EnsembleResult {
    pub q: Integer,
    pub g: u32,
    pub field_label: String,
    pub mode: FamilyMode,
    pub sample_count: u64,
    pub seed: u64,
    pub config: ScanConfig,
    /// Number of curves scanned.
    pub total: u64,
    pub classes: Vec<ClassEntry>,
    /// (f indices, class number) per curve, when requested.
    pub curves: Vec<(Vec<u64>, usize)>,
    pub proportions: Vec<(f64, Proportion)>,
    pub rmt_reference: Vec<(f64, RmtReference)>,
    pub truncated_reference: Vec<(f64, RmtReference)>,
}

/// Sum with Kahan compensation, in the given order.
fn kahan(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for x in values {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

fn analyse_class(counts: &[u64], q: &Integer, g: u32, cfg: &ScanConfig) -> std::result::Result<MertensReport, String> {
    let ints: Vec<Integer> = counts.iter().map(|&c| Integer::from(c)).collect();
    let z = ZetaData::from_counts(&ints, q, g, DEFAULT_PRECISION).map_err(|e| e.to_string())?;
    let li = li_report(&z, cfg.li_height, cfg.li_precision).map_err(|e| e.to_string())?;
    let label = format!("counts={counts:?}");
    MertensReport::new(&z, li, label).map_err(|e| e.to_string())
}

/// Random-matrix prediction of Prob(φ ≤ β) for USp(2g).
pub fn rmt_probability(g: usize, beta: f64, samples: usize, seed: u64) -> Result<RmtReference> {
    if g == 1 {
        return Ok(RmtReference {
            method: "closed_form",
            value: closed_form_prob_g1(beta),
            error: 0.0,
        });
    }
    if g <= 3 {
        let q = quadrature_prob(g, beta, quadrature_grid(g))?;
        return Ok(RmtReference {
            method: "quadrature",
            value: q.value,
            error: q.error,
        });
    }
    let phis = phi_samples(g, samples, seed, SamplerKind::Mcmc)?;
    let est = prob_from_samples(&phis, beta, seed, SamplerKind::Mcmc);
    Ok(RmtReference {
        method: "monte_carlo",
        value: est.value,
        error: est.standard_error,
    })
}

/// Random-matrix prediction of ∫ min(φ, T) dμ.
pub fn rmt_truncated(g: usize, t: f64, samples: usize, seed: u64) -> Result<RmtReference> {
    if g <= 3 {
        let q = expectation_by_quadrature(g, quadrature_grid(g), |x| phi(x).min(t))?;
        return Ok(RmtReference {
            method: "quadrature",
            value: q.value,
            error: q.error,
        });
    }
    let phis = phi_samples(g, samples, seed, SamplerKind::Mcmc)?;
    let est = mc_expectation(&phis, seed, SamplerKind::Mcmc, |v| v.min(t));
    Ok(RmtReference {
        method: "monte_carlo",
        value: est.value,
        error: est.standard_error,
    })
}

/// Runs the full pipeline on the family described by `spec`.
pub fn run_scan(spec: &EnsembleSpec, cfg: &ScanConfig) -> Result<EnsembleResult> {
    spec.validate()?;
    if cfg.betas.iter().any(|b| !(*b > 0.0)) {
        return invalid("every β must be positive");
    }
    if cfg.t_list.iter().any(|t| !(*t > 0.0)) {
        return invalid("every T must be positive");
    }
    let g = spec.g;
    let q = spec.field.order().clone();
    let indices = match spec.mode {
        FamilyMode::Exhaustive => {
            let n = spec.candidate_count()?;
            let chunk = 1u64 << 14;
            let ranges: Vec<u64> = (0..n.div_ceil(chunk)).collect();
            let parts: Vec<Vec<Vec<u64>>> = ranges
                .par_iter()
                .map(|&i| exhaustive_indices(spec, i * chunk..((i + 1) * chunk).min(n)))
                .collect::<Result<_>>()?;
            parts.concat()
        }
        FamilyMode::Sampled => sampled_indices(spec)?,
    };
    let counter = PointCounter::new(&spec.field, g)?;
    let counts: Vec<Vec<u64>> = indices.par_iter().map(|f| counter.counts(f)).collect();

    let mut mult: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for c in &counts {
        *mult.entry(c.clone()).or_insert(0) += 1;
    }
    let keys: Vec<(Vec<u64>, u64)> = mult.into_iter().collect();
    let classes: Vec<ClassEntry> = keys
        .par_iter()
        .map(|(c, m)| ClassEntry {
            counts: c.clone(),
            multiplicity: *m,
            report: analyse_class(c, &q, g, cfg),
        })
        .collect();

    let curves = if cfg.keep_curves {
        let pos: BTreeMap<&Vec<u64>, usize> = classes.iter().enumerate().map(|(i, c)| (&c.counts, i)).collect();
        indices
            .into_iter()
            .zip(counts.iter())
            .map(|(f, c)| (f, pos[c]))
            .collect()
    } else {
        Vec::new()
    };

    let proportions = cfg
        .betas
        .iter()
        .map(|&beta| {
            let mut p = Proportion::default();
            for c in &classes {
                let Ok(r) = &c.report else { continue };
                match beta_classify(r, beta)? {
                    Verdict::Satisfies => p.satisfies += c.multiplicity,
                    Verdict::Fails => p.fails += c.multiplicity,
                    Verdict::UnknownNonLi => p.unknown += c.multiplicity,
                }
            }
            p.total = p.satisfies + p.fails;
            Ok((beta, p))
        })
        .collect::<Result<Vec<_>>>()?;

    let gi = g as usize;
    let rmt_reference = cfg
        .betas
        .iter()
        .map(|&b| Ok((b, rmt_probability(gi, b, cfg.rmt_samples, cfg.rmt_seed)?)))
        .collect::<Result<Vec<_>>>()?;
    let truncated_reference = cfg
        .t_list
        .iter()
        .map(|&t| Ok((t, rmt_truncated(gi, t, cfg.rmt_samples, cfg.rmt_seed)?)))
        .collect::<Result<Vec<_>>>()?;

    Ok(EnsembleResult {
        q,
        g,
        field_label: spec.field.label(),
        mode: spec.mode,
        sample_count: spec.sample_count,
        seed: spec.seed,
        config: cfg.clone(),
        total: counts.len() as u64,
        classes,
        curves,
        proportions,
        rmt_reference,
        truncated_reference,
    })
}

impl EnsembleResult {
    fn weight_where(&self, pred: impl Fn(&ClassEntry) -> bool) -> u64 {
        self.classes.iter().filter(|c| pred(c)).map(|c| c.multiplicity).sum()
    }

    pub fn li_count(&self, status: LiStatus) -> u64 {
        self.weight_where(|c| c.li_status() == Some(status))
    }

    pub fn li_fraction(&self) -> f64 {
        self.li_count(LiStatus::ProbableLi) as f64 / self.total as f64
    }

    pub fn non_li_fraction(&self) -> f64 {
        1.0 - self.li_fraction()
    }

    pub fn error_count(&self) -> u64 {
        self.weight_where(|c| c.report.is_err())
    }

    fn probable_li(&self) -> impl Iterator<Item = (&ClassEntry, &MertensReport)> {
        self.classes.iter().filter_map(|c| match &c.report {
            Ok(r) if r.li.status == LiStatus::ProbableLi => Some((c, r)),
            _ => None,
        })
    }

    /// Curves (LI-probable) violating (1 ∓ Q^{-1/2})φ bounds on B.
    pub fn sandwich_violations(&self) -> u64 {
        self.probable_li().filter(|(_, r)| !sandwich_check(r)).map(|(c, _)| c.multiplicity).sum()
    }

    /// Curves (LI-probable) violating the (1 ∓ Q^{-1/2})² φ bounds on the
    /// localized amplitude.
    pub fn localized_violations(&self) -> u64 {
        self.probable_li().filter(|(_, r)| !localized_check(r)).map(|(c, _)| c.multiplicity).sum()
    }

    /// Fraction of LI-probable curves with B ≤ β, B taken literally from
    /// the LI formula.
    pub fn fraction_b_leq(&self, beta: f64) -> f64 {
        let total: u64 = self.probable_li().map(|(c, _)| c.multiplicity).sum();
        let hits: u64 = self
            .probable_li()
            .filter(|(_, r)| r.b_f64() <= beta * (1.0 + crate::mertens::REL_TOL))
            .map(|(c, _)| c.multiplicity)
            .sum();
        hits as f64 / total as f64
    }

    pub fn proportion(&self, beta: f64) -> Option<Proportion> {
        self.proportions.iter().find(|(b, _)| *b == beta).map(|(_, p)| *p)
    }

    /// Average of min(B, T) over the LI-probable curves.
    pub fn truncated_average(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return invalid("T must be positive");
        }
        let total: u64 = self.probable_li().map(|(c, _)| c.multiplicity).sum();
        let sum = kahan(self.probable_li().map(|(c, r)| c.multiplicity as f64 * r.b_f64().min(t)));
        Ok(sum / total as f64)
    }

    /// Count, mean and variance of B over the LI-probable curves.
    pub fn digest(&self) -> (u64, f64, f64) {
        let n: u64 = self.probable_li().map(|(c, _)| c.multiplicity).sum();
        let s1 = kahan(self.probable_li().map(|(c, r)| c.multiplicity as f64 * r.b_f64()));
        let mean = s1 / n as f64;
        let s2 = kahan(
            self.probable_li()
                .map(|(c, r)| c.multiplicity as f64 * (r.b_f64() - mean).powi(2)),
        );
        (n, mean, s2 / n as f64)
    }

    pub fn summary_json(&self) -> Value {
        let proportions: Vec<Value> = self
            .proportions
            .iter()
            .zip(&self.rmt_reference)
            .map(|((b, p), (_, r))| {
                json!({
                    "beta": beta_key(*b),
                    "satisfies": p.satisfies,
                    "fails": p.fails,
                    "unknown_non_li": p.unknown,
                    "total": p.total,
                    "satisfies_fraction": f64_value(p.satisfies_fraction()),
                    "B_LI_leq_fraction": f64_value(self.fraction_b_leq(*b)),
                    "rmt_reference": r.to_json(),
                })
            })
            .collect();
        let truncated: Vec<Value> = self
            .truncated_reference
            .iter()
            .map(|(t, r)| {
                json!({
                    "T": f64_value(*t),
                    "average": f64_value(self.truncated_average(*t).unwrap_or(f64::NAN)),
                    "rmt_reference": r.to_json(),
                })
            })
            .collect();
        let mut errors: BTreeMap<String, u64> = BTreeMap::new();
        for c in &self.classes {
            if let Err(e) = &c.report {
                *errors.entry(e.clone()).or_insert(0) += c.multiplicity;
            }
        }
        let (n, mean, var) = self.digest();
        json!({
            "schema": SCHEMA_VERSION,
            "field": self.field_label,
            "Q": int_value(&self.q),
            "g": self.g,
            "mode": match self.mode { FamilyMode::Exhaustive => "exhaustive", FamilyMode::Sampled => "sampled" },
            "sample_count": self.sample_count,
            "seed": self.seed,
            "total": self.total,
            "distinct_P": self.classes.len(),
            "li": {
                "PROBABLE_LI": self.li_count(LiStatus::ProbableLi),
                "RELATION_NUMERIC": self.li_count(LiStatus::RelationNumeric),
                "FALSE_EXACT": self.li_count(LiStatus::FalseExact),
                "probable_li_fraction": f64_value(self.li_fraction()),
                "H": self.config.li_height,
                "precision_bits": self.config.li_precision,
            },
            "errors": errors,
            "sandwich_violations": self.sandwich_violations(),
            "localized_violations": self.localized_violations(),
            "proportions": proportions,
            "truncated_averages": truncated,
            "digest": {"count": n, "mean_B": f64_value(mean), "var_B": f64_value(var)},
        })
    }

    /// One row per curve (needs `keep_curves`): f coefficients, counts, P,
    /// θ, φ, B, LI status and the β verdicts.
    pub fn per_curve_csv(&self) -> String {
        let betas = &self.config.betas;
        let mut out = String::from("f,counts,P,thetas,phi,B_LI,li_status");
        for b in betas {
            let _ = write!(out, ",verdict_{}", beta_key(*b));
        }
        out.push('\n');
        let join = |v: Vec<String>| v.join(" ");
        for (f, k) in &self.curves {
            let class = &self.classes[*k];
            let fs = join(f.iter().map(|x| x.to_string()).collect());
            let cs = join(class.counts.iter().map(|x| x.to_string()).collect());
            match &class.report {
                Ok(r) => {
                    let ps = join(r.p.iter().map(|x| x.to_string()).collect());
                    let ts = join(r.thetas.iter().map(|t| format!("{:.17e}", t.to_f64())).collect());
                    let _ = write!(
                        out,
                        "{fs},{cs},{ps},{ts},{},{},{}",
                        r.phi.as_ref().map_or("inf".into(), float_string),
                        r.b_li.as_ref().map_or("inf".into(), float_string),
                        r.li.status.name()
                    );
                    for b in betas {
                        let v = beta_classify(r, *b).map_or("invalid", |v| v.name());
                        let _ = write!(out, ",{v}");
                    }
                }
                Err(e) => {
                    let _ = write!(out, "{fs},{cs},,,,,error: {}", e.replace(',', ";"));
                    for _ in betas {
                        out.push(',');
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: u32,
    pub q_n: Integer,
    pub total: u64,
    pub satisfies_fraction: f64,
    pub reference: f64,
    pub gap: f64,
}

/// Satisfies-fraction of the exhaustive families over F_{q^n}, n ∈ n_list,
/// against the fixed random-matrix value.
pub fn convergence_table(q: u64, g: u32, n_list: &[u32], beta: f64) -> Result<Vec<ConvergenceRow>> {
    let (p, m) = crate::mertens::prime_power(q)?;
    let cfg = ScanConfig {
        betas: vec![beta],
        ..ScanConfig::default()
    };
    let reference = rmt_probability(g as usize, beta, cfg.rmt_samples, cfg.rmt_seed)?.value;
    n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return invalid("n must be at least 1");
            }
            let field = make_field(p as u32, m * n)?;
            let spec = EnsembleSpec::exhaustive(&field, g);
            let res = run_scan(&spec, &cfg)?;
            let frac = res.proportions[0].1.satisfies_fraction();
            Ok(ConvergenceRow {
                n,
                q_n: field.order().clone(),
                total: res.total,
                satisfies_fraction: frac,
                reference,
                gap: (frac - reference).abs(),
            })
        })
        .collect()
}

pub fn convergence_json(rows: &[ConvergenceRow], beta: f64) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "beta": beta_key(beta),
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "Q": int_value(&r.q_n),
            "total": r.total,
            "satisfies_fraction": f64_value(r.satisfies_fraction),
            "reference": f64_value(r.reference),
            "gap": f64_value(r.gap),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_family_size_and_invariants() {
        let field = make_field(3, 2).unwrap();
        let spec = EnsembleSpec::exhaustive(&field, 1);
        let cfg = ScanConfig {
            betas: vec![1.0, 1.2, std::f64::consts::SQRT_2, 3.0],
            t_list: vec![0.5, 1.0, 100.0],
            keep_curves: true,
            ..ScanConfig::default()
        };
        let r = run_scan(&spec, &cfg).unwrap();
        assert_eq!(r.total, 648);
        assert_eq!(Integer::from(r.total), spec.family_size());
        assert_eq!(r.error_count(), 0);
        assert_eq!(r.sandwich_violations(), 0);
        assert_eq!(r.localized_violations(), 0);
        let mut last = 0;
        for (_, p) in &r.proportions {
            assert!(p.satisfies >= last);
            last = p.satisfies;
            assert_eq!(p.satisfies + p.fails + p.unknown, r.total);
        }
        assert_eq!(r.truncated_average(0.5).unwrap(), 0.5);
        assert_eq!(r.per_curve_csv().lines().count(), 649);
    }

    #[test]
    fn scan_is_reproducible() {
        let field = make_field(5, 1).unwrap();
        let spec = EnsembleSpec::sampled(&field, 2, 30, 7);
        let cfg = ScanConfig::default();
        let a = run_scan(&spec, &cfg).unwrap().summary_json().to_string();
        let b = run_scan(&spec, &cfg).unwrap().summary_json().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn references() {
        let r = rmt_probability(1, std::f64::consts::SQRT_2, 0, 0).unwrap();
        assert!((r.value - 0.8183098861837907).abs() < 1e-15);
        let t = rmt_truncated(1, 1.0, 0, 0).unwrap();
        assert!((t.value - 1.0).abs() < 1e-6);
    }
}
