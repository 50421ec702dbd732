//! Cross-module checks: curve → zeta → li → mertens → ensemble.

use proptest::prelude::*;
use rug::{Float, Integer};

use mertensff::curve::{enumerate_family, EnsembleSpec, HyperellipticCurve};
use mertensff::ensemble::{run_scan, ScanConfig};
use mertensff::finite_field::make_field;
use mertensff::intpoly;
use mertensff::li::{exact_degeneracy, li_report, relation_search, LiStatus, Witness};
use mertensff::mertens::{
    b_elliptic, b_value, beta_classify, derivative_identity_residual, MertensReport, Verdict,
};
use mertensff::zeta::{mobius_coefficients, ZetaData};

fn ints(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| Integer::from(x)).collect()
}

fn family(p: u32, e: u32, g: u32) -> Vec<HyperellipticCurve> {
    let field = make_field(p, e).unwrap();
    enumerate_family(&EnsembleSpec::exhaustive(&field, g)).unwrap().collect()
}

#[test]
fn x3_plus_x_over_f3() {
    let field = make_field(3, 1).unwrap();
    let c = HyperellipticCurve::from_indices(&field, &[0, 1, 0, 1]).unwrap();
    let z = ZetaData::from_curve(&c, 128).unwrap();
    assert_eq!(z.p(), ints(&[1, 0, 3]).as_slice());
    let li = li_report(&z, 100, 256).unwrap();
    assert_eq!(li.witness, Witness::ImaginaryZero);
    let r = MertensReport::new(&z, li, c.label()).unwrap();
    assert_eq!(beta_classify(&r, 1.0).unwrap(), Verdict::Satisfies);
}

#[test]
fn repeated_zero_witness_matches_numerics() {
    // genus 1 over F_9 and genus 2 over F_3
    for curve in family(3, 2, 1).into_iter().chain(family(3, 1, 2)) {
        let z = ZetaData::from_curve(&curve, 128).unwrap();
        let exact = exact_degeneracy(z.p(), z.q()) == Witness::RepeatedZero;
        let tiny = Float::with_val(128, Float::i_exp(1, -64));
        // all 2g inverse zeros: γ_j and their conjugates
        let g: Vec<_> = z.gammas().iter().flat_map(|x| [x.clone(), x.conj()]).collect();
        let mut close = false;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].sub(&g[j]).abs() < tiny {
                    close = true;
                }
            }
        }
        assert_eq!(exact, close, "{curve}");
        assert_eq!(exact, z.has_repeated_zeros());
    }
}

#[test]
fn imaginary_zero_found_by_relation_search() {
    for curve in family(3, 1, 2).into_iter().chain(family(5, 1, 1)) {
        let z = ZetaData::from_curve(&curve, 128).unwrap();
        if exact_degeneracy(z.p(), z.q()) != Witness::ImaginaryZero {
            continue;
        }
        let r = relation_search(&z, 2, 256).unwrap();
        assert_eq!(r.status, LiStatus::RelationNumeric, "{curve}");
    }
}

#[test]
fn closed_form_matches_zeros_for_every_f25_trace() {
    for curve in family(5, 2, 1) {
        let z = ZetaData::from_curve(&curve, 128).unwrap();
        let a = z.trace().to_i64().unwrap();
        if z.has_repeated_zeros() {
            continue;
        }
        let b = b_value(&z).unwrap().to_f64();
        assert!((b - b_elliptic(25, a).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn derivative_identity_on_genus_two() {
    let field = make_field(3, 2).unwrap();
    let spec = EnsembleSpec::sampled(&field, 2, 40, 5);
    for curve in enumerate_family(&spec).unwrap() {
        let z = ZetaData::from_curve(&curve, 128).unwrap();
        if z.has_repeated_zeros() {
            continue;
        }
        assert!(derivative_identity_residual(&z).unwrap() < 1e-9);
    }
}

#[test]
fn scan_independent_of_thread_count() {
    let field = make_field(7, 1).unwrap();
    let spec = EnsembleSpec::exhaustive(&field, 1);
    let cfg = ScanConfig {
        t_list: vec![1.0, 2.0],
        ..ScanConfig::default()
    };
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_scan(&spec, &cfg).unwrap().summary_json().to_string())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn mertens_partial_sums_bounded_by_b() {
    // a = 2 over F_5 satisfies LI, so |M(X)|/5^{X/2} stays at or below B = 1
    let z = ZetaData::from_p(&ints(&[1, -2, 5]), &Integer::from(5), 128).unwrap();
    let s = mobius_coefficients(z.p(), z.q(), 300).unwrap();
    let peak = (1..=300).map(|x| s.normalized(x).unwrap().abs()).fold(0.0, f64::max);
    assert!(peak <= 1.0 + 1e-12, "{peak}");
    assert!(peak > 0.9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn beta_verdict_monotone(a in -8i64..=8, b1 in 0.5f64..3.0, b2 in 0.5f64..3.0) {
        prop_assume!(a * a < 4 * 17);
        let z = ZetaData::from_p(&ints(&[1, -a, 17]), &Integer::from(17), 128).unwrap();
        let li = li_report(&z, 100, 256).unwrap();
        let r = MertensReport::new(&z, li, "").unwrap();
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let v_lo = beta_classify(&r, lo).unwrap();
        let v_hi = beta_classify(&r, hi).unwrap();
        if v_lo == Verdict::Satisfies {
            prop_assert_eq!(v_hi, Verdict::Satisfies);
        }
    }

    #[test]
    fn product_of_weil_quadratics_roundtrips(a1 in -5i64..=5, a2 in -5i64..=5) {
        // (1 - a1 u + 7u²)(1 - a2 u + 7u²) is a genus-2 Weil numerator
        let p = intpoly::mul(&ints(&[1, -a1, 7]), &ints(&[1, -a2, 7]));
        let z = ZetaData::from_p(&p, &Integer::from(7), 128).unwrap();
        let back = ZetaData::from_counts(z.counts(), &Integer::from(7), 2, 128).unwrap();
        prop_assert_eq!(back.p(), z.p());
        prop_assert_eq!(z.has_repeated_zeros(), a1 == a2);
    }
}
