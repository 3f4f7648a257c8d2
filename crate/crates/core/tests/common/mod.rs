#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rirkit::{Polynomial, RationalTF};

/// Eigenvalues of the companion matrix of `p`.
pub fn companion_roots(p: &Polynomial) -> Vec<Complex64> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Greedy nearest matching; returns the worst distance relative to `max(1, |z|)`.
pub fn root_set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut pool: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (i, d) = pool
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        pool.swap_remove(i);
        worst = worst.max(d / z.norm().max(1.0));
    }
    worst
}

/// Horner-free power sum.
pub fn naive_eval(p: &Polynomial, s: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| s.powu(i as u32) * c)
        .sum()
}

/// Unwrapped phase derivative by central differences.
pub fn fd_pcr(g: &RationalTF, w: f64, h: f64) -> f64 {
    let a = g.eval(Complex64::new(0.0, w + h));
    let b = g.eval(Complex64::new(0.0, w - h));
    (a / b).arg() / (2.0 * h)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// One column of the cyclic-network summary table, as computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableColumn {
    pub unstable_poles: usize,
    pub peaks: usize,
    pub unstable_peaks: usize,
    pub stable_peaks: usize,
    pub global_is_stable: bool,
    pub pcr_global: bool,
    /// `None` when there is no local peak.
    pub pcr_local: Option<bool>,
    pub exactness: rirkit::rir::Exactness,
}

pub fn table_column(m: u32) -> TableColumn {
    use rirkit::models::{cyclic_network, CyclicSpec};
    use rirkit::peaks::{local_peaks, peak_pole_attribution, PeakAttribution};
    use rirkit::rir::{pcr_condition, rir_verdict_from_peaks, RirOptions};

    let g = cyclic_network(&CyclicSpec { m, k: 20.0 }).unwrap();
    let peaks = local_peaks(&g).unwrap();
    let attr: Vec<PeakAttribution> = peaks
        .peaks
        .iter()
        .map(|p| peak_pole_attribution(&g, p).unwrap())
        .collect();
    let v = rir_verdict_from_peaks(&g, &peaks, &RirOptions::default()).unwrap();
    TableColumn {
        unstable_poles: g.unstable_poles().unwrap().0,
        peaks: peaks.len(),
        unstable_peaks: attr
            .iter()
            .filter(|a| **a == PeakAttribution::UnstablePolePeak)
            .count(),
        stable_peaks: attr
            .iter()
            .filter(|a| **a == PeakAttribution::StablePolePeak)
            .count(),
        global_is_stable: attr[0] == PeakAttribution::StablePolePeak,
        pcr_global: pcr_condition(&peaks.peaks[0]).holds_strict,
        pcr_local: (peaks.len() > 1).then(|| {
            peaks.peaks[1..]
                .iter()
                .any(|p| pcr_condition(p).holds_strict)
        }),
        exactness: v.exactness(),
    }
}

/// The printed column for `m`.
pub fn printed_column(m: u32) -> TableColumn {
    use rirkit::rir::Exactness::*;
    let (
        unstable_poles,
        peaks,
        unstable_peaks,
        stable_peaks,
        global_is_stable,
        pcr_global,
        pcr_local,
        exactness,
    ) = match m {
        1..=4 => (2, 1, 1, 0, false, true, None, Exact),
        5 => (2, 2, 1, 1, false, true, Some(false), Exact),
        6..=7 => (2, 2, 1, 1, true, false, Some(true), Exceeds),
        8..=13 => (4, 2, 2, 0, false, true, Some(true), Undecided),
        14..=16 => (4, 3, 2, 1, false, true, Some(true), Undecided),
        17..=20 => (4, 3, 2, 1, true, false, Some(true), Exceeds),
        _ => panic!("no printed column for m = {m}"),
    };
    TableColumn {
        unstable_poles,
        peaks,
        unstable_peaks,
        stable_peaks,
        global_is_stable,
        pcr_global,
        pcr_local,
        exactness,
    }
}

/// Random stable, minimum-phase, positive-gain function with lightly damped poles.
pub fn random_min_phase(rng: &mut impl rand::Rng) -> RationalTF {
    let mut den = Polynomial::one();
    for _ in 0..rng.random_range(1..=3) {
        let w = rng.random_range(0.2..5.0);
        let z = rng.random_range(0.05..0.6);
        den = &den * &Polynomial::new(vec![w * w, 2.0 * z * w, 1.0]);
    }
    if rng.random_bool(0.5) {
        den = &den * &Polynomial::linear(rng.random_range(0.1..5.0), 1.0);
    }
    let mut num = Polynomial::constant(rng.random_range(0.5..5.0));
    for _ in 0..rng.random_range(0..=2) {
        num = &num * &Polynomial::linear(rng.random_range(0.05..5.0), 1.0);
    }
    RationalTF::new(num, den).unwrap()
}
