mod common;

use std::f64::consts::PI;

use common::{fd_pcr, random_min_phase, rel};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rirkit::allpass::{marginal_perturbation, optimal_allpass, pcr_upper_bound};
use rirkit::lti::wrap_phase;
use rirkit::models::{cyclic_network, CyclicSpec};
use rirkit::peaks::{local_peaks, PeakInfo};
use rirkit::{AllPassForm, Error};

/// Distance between two angles on the circle.
fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[test]
fn prop1_bound_on_minimum_phase_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut accepted = 0;
    let mut worst = f64::NEG_INFINITY;
    while accepted < 200 {
        let f = random_min_phase(&mut rng);
        let peaks = local_peaks(&f).unwrap();
        let top = &peaks.peaks[0];
        // Interior peak, confirmed against a dense check grid.
        if top.freq <= 0.0 || !top.freq.is_finite() {
            continue;
        }
        let dense_max = (0..20_000)
            .map(|i| {
                f.freq_response(1e-3 * (1e7f64).powf(i as f64 / 19_999.0))
                    .unwrap()
                    .norm()
            })
            .fold(0.0, f64::max);
        if dense_max > top.gain * (1.0 + 1e-9) {
            continue;
        }
        accepted += 1;
        let bound = -(top.phase / top.freq).abs();
        worst = worst.max(top.pcr - bound);
        assert!(
            top.pcr <= bound + 1e-6,
            "θ' = {} exceeds -|θ/ω| = {bound} for {f}",
            top.pcr
        );
    }
    assert!(worst <= 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn prop2_achiever_meets_contracts(w in 1e-2..1e2f64, theta in -PI..PI) {
        let f = optimal_allpass(w, theta).unwrap();
        prop_assert_eq!(f.gain, 1.0);
        let tf = f.to_tf();
        let v = tf.freq_response(w).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-9);
        prop_assert!(angle_gap(v.arg(), theta) < 1e-9, "phase {} vs {theta}", v.arg());
        prop_assert_eq!(f.hinf_norm(), 1.0);
        let expect = -theta.sin().abs() / w;
        prop_assert!((pcr_upper_bound(w, theta).unwrap() - expect).abs() <= 1e-12 * expect.abs().max(1.0));
        let (_, pcr) = tf.phase_and_pcr(w).unwrap();
        prop_assert!((pcr - expect).abs() <= 1e-9 * expect.abs().max(1.0), "pcr {pcr} vs {expect}");
        if let Some(a) = f.a {
            prop_assert!(a > 0.0);
        }
    }

    #[test]
    fn marginal_perturbation_inverts_peak(
        w in 1e-2..1e2f64,
        phase in -PI..PI,
        gain in 0.1..10.0f64,
        pcr in -5.0..5.0f64,
    ) {
        let peak = PeakInfo { freq: w, gain, phase, pcr, is_global: true };
        let d = marginal_perturbation(&peak).unwrap();
        prop_assert_eq!(d.hinf_norm(), 1.0 / gain);
        let gv = Complex64::from_polar(gain, phase);
        let loop_value = gv * d.to_tf().freq_response(w).unwrap();
        prop_assert!((loop_value - 1.0).norm() < 1e-9);
        let poles = d.to_tf().poles().unwrap();
        prop_assert!(poles.iter().all(|p| p.re < 0.0));
    }
}

#[test]
fn dc_phase_constraint() {
    assert_eq!(pcr_upper_bound(0.0, 0.0).unwrap(), 0.0);
    assert_eq!(pcr_upper_bound(0.0, PI).unwrap(), 0.0);
    assert!(matches!(
        pcr_upper_bound(0.0, 1.0),
        Err(Error::InfeasibleDcPhase(_))
    ));
    assert!(matches!(
        optimal_allpass(0.0, -0.5),
        Err(Error::InfeasibleDcPhase(_))
    ));
    assert_eq!(
        optimal_allpass(0.0, 0.0).unwrap().form,
        AllPassForm::PlusOne
    );
}

#[test]
fn zeroth_order_forms() {
    assert_eq!(pcr_upper_bound(1.0, PI / 2.0).unwrap(), -1.0);
    assert_eq!(pcr_upper_bound(3.0, 0.0).unwrap(), 0.0);
    let f = optimal_allpass(2.0, PI).unwrap();
    assert_eq!(f.form, AllPassForm::MinusOne);
    assert_eq!(
        f.to_tf().freq_response(2.0).unwrap(),
        Complex64::new(-1.0, 0.0)
    );
    assert_eq!(
        optimal_allpass(2.0, 0.0).unwrap().form,
        AllPassForm::PlusOne
    );
    let peak = PeakInfo {
        freq: 1.0,
        gain: 4.0,
        phase: PI,
        pcr: 0.0,
        is_global: true,
    };
    let d = marginal_perturbation(&peak).unwrap();
    assert_eq!((d.form, d.gain), (AllPassForm::MinusOne, 0.25));
}

#[test]
fn branch_follows_phase_sign() {
    let lead = optimal_allpass(1.0, -1.0).unwrap();
    assert_eq!(lead.form, AllPassForm::Lead);
    assert!(rel(lead.a.unwrap(), 1.0 / (0.5f64).tan()) < 1e-14);
    let lag = optimal_allpass(1.0, 1.0).unwrap();
    assert_eq!(lag.form, AllPassForm::Lag);
    assert!(rel(lag.a.unwrap(), 1.0 / ((PI - 1.0) / 2.0).tan()) < 1e-14);
    assert_eq!(wrap_phase(3.0 * PI), PI);
}

/// The printed parameters of the cyclic-network perturbations correspond to
/// peak frequencies rounded to three decimals.
#[test]
fn cyclic_allpass_parameters_at_rounded_peaks() {
    let cases = [
        (5, 0, AllPassForm::Lag, 24.426),
        (6, 0, AllPassForm::Lead, 1.2522),
        (8, 1, AllPassForm::Lag, 29.498),
    ];
    for (m, index, form, a) in cases {
        let g = cyclic_network(&CyclicSpec { m, k: 20.0 }).unwrap();
        let w = (local_peaks(&g).unwrap().peaks[index].freq * 1e3).round() / 1e3;
        let (th, _) = g.phase_and_pcr(w).unwrap();
        let f = optimal_allpass(w, -th).unwrap();
        assert_eq!(f.form, form, "m = {m}");
        assert!(rel(f.a.unwrap(), a) < 1e-4, "m = {m}: a = {}", f.a.unwrap());
    }
}

#[test]
fn bound_matches_constructed_allpass_for_g5() {
    let g5 = cyclic_network(&CyclicSpec { m: 5, k: 20.0 }).unwrap();
    let w = 0.322;
    let (th, _) = g5.phase_and_pcr(w).unwrap();
    let bound = pcr_upper_bound(w, -th).unwrap();
    let f = optimal_allpass(w, -th).unwrap().to_tf();
    let (_, pcr) = f.phase_and_pcr(w).unwrap();
    assert!((bound - pcr).abs() < 1e-6);
    assert!((bound - fd_pcr(&f, w, 1e-6)).abs() < 1e-6);
}
