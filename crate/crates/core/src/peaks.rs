//! Local maxima of `ω ↦ |g(jω)|` on `[0, ∞)`.
//!
//! The search grid is a log-spaced sweep over `[1e-4·ω_ref, 1e4·ω_ref]`
//! (with `ω_ref` the largest pole/zero modulus) merged with dense clusters
//! around the imaginary parts of the poles, where resonant peaks sit. Each
//! bracketed grid maximum is refined by bisection on the analytic slope
//! `d/dω log|g(jω)|`, falling back to golden-section search on `|g|` when
//! the slope does not bracket.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::RationalTF;
use crate::poly::on_axis;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakOptions {
    pub grid_points: usize,
    /// Peaks below `rel_floor * global gain` are dropped.
    pub rel_floor: f64,
}

impl Default for PeakOptions {
    fn default() -> Self {
        PeakOptions {
            grid_points: 4096,
            rel_floor: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakInfo {
    pub freq: f64,
    pub gain: f64,
    pub phase: f64,
    pub pcr: f64,
    pub is_global: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub rel_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakList {
    /// Sorted by gain, descending.
    pub peaks: Vec<PeakInfo>,
    pub grid: GridSpec,
    /// Two refined maxima collapsed onto the same frequency.
    pub merged: bool,
}

impl PeakList {
    pub fn global(&self) -> Option<&PeakInfo> {
        self.peaks.first()
    }

    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinfNorm {
    /// Peak frequency; `f64::INFINITY` when the supremum is the limit at infinity.
    pub freq: f64,
    pub gain: f64,
}

fn check_axis_poles(g: &RationalTF) -> Result<Vec<Complex64>> {
    let poles = g.poles()?;
    if let Some(p) = poles.iter().find(|p| on_axis(**p)) {
        return Err(Error::InfiniteNorm(p.im.abs()));
    }
    Ok(poles)
}

/// `‖g‖_{L∞}` and where it is attained.
pub fn linf_norm(g: &RationalTF) -> Result<LinfNorm> {
    linf_norm_with(g, &PeakOptions::default())
}

pub fn linf_norm_with(g: &RationalTF, opts: &PeakOptions) -> Result<LinfNorm> {
    let at_inf = g
        .value_at_infinity()
        .ok_or_else(|| Error::InvalidPlant("improper transfer function".into()))?
        .abs();
    let peaks = local_peaks_with(g, opts)?;
    Ok(match peaks.global() {
        Some(p) if p.gain >= at_inf => LinfNorm {
            freq: p.freq,
            gain: p.gain,
        },
        _ => LinfNorm {
            freq: f64::INFINITY,
            gain: at_inf,
        },
    })
}

pub fn local_peaks(g: &RationalTF) -> Result<PeakList> {
    local_peaks_with(g, &PeakOptions::default())
}

pub fn local_peaks_with(g: &RationalTF, opts: &PeakOptions) -> Result<PeakList> {
    let poles = check_axis_poles(g)?;
    if !g.is_proper() {
        return Err(Error::InvalidPlant("improper transfer function".into()));
    }
    let zeros = g.zeros()?;
    let grid = build_grid(&poles, &zeros, opts.grid_points);
    let spec = GridSpec {
        lo: grid[1],
        hi: *grid.last().unwrap(),
        points: grid.len(),
        rel_floor: opts.rel_floor,
    };
    let mag = |w: f64| g.eval(Complex64::new(0.0, w)).norm();
    let vals: Vec<f64> = grid.iter().map(|&w| mag(w)).collect();

    let mut found: Vec<(f64, f64)> = Vec::new();
    if vals[0] > 0.0 && vals[0] >= vals[1] {
        found.push((0.0, vals[0]));
    }
    for i in 1..grid.len() - 1 {
        if vals[i] >= vals[i - 1] && vals[i] > vals[i + 1] {
            let (w, m) = refine(g, grid[i - 1], grid[i + 1], grid[i], vals[i]);
            found.push((w, m));
        }
    }

    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged = false;
    let mut dedup: Vec<(f64, f64)> = Vec::with_capacity(found.len());
    for (w, m) in found {
        if let Some(last) = dedup.last_mut() {
            if (w - last.0).abs() <= 1e-9 * w.max(1.0) {
                merged = true;
                if m > last.1 {
                    *last = (w, m);
                }
                continue;
            }
        }
        dedup.push((w, m));
    }

    let top = dedup.iter().map(|p| p.1).fold(0.0, f64::max);
    let mut peaks = Vec::with_capacity(dedup.len());
    for (w, m) in dedup {
        if m < opts.rel_floor * top {
            continue;
        }
        let (phase, pcr) = g.phase_and_pcr(w)?;
        peaks.push(PeakInfo {
            freq: w,
            gain: m,
            phase,
            pcr,
            is_global: false,
        });
    }
    // Index-ordered tie break keeps the result independent of evaluation order.
    peaks.sort_by(|a, b| b.gain.total_cmp(&a.gain).then(a.freq.total_cmp(&b.freq)));
    if let Some(p) = peaks.first_mut() {
        p.is_global = true;
    }
    Ok(PeakList {
        peaks,
        grid: spec,
        merged,
    })
}

fn build_grid(poles: &[Complex64], zeros: &[Complex64], points: usize) -> Vec<f64> {
    let w_ref = poles
        .iter()
        .chain(zeros)
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let w_ref = if w_ref > 0.0 { w_ref } else { 1.0 };
    let points = points.max(64);
    let n_log = points * 3 / 4;
    let (lo, hi) = ((1e-4 * w_ref).ln(), (1e4 * w_ref).ln());
    let mut grid: Vec<f64> = (0..n_log)
        .map(|i| (lo + (hi - lo) * i as f64 / (n_log - 1) as f64).exp())
        .collect();

    let upper: Vec<Complex64> = poles.iter().copied().filter(|p| p.im > 0.0).collect();
    if !upper.is_empty() {
        let per_pole = ((points - n_log) / upper.len()).max(16);
        let half = per_pole / 2;
        for p in upper {
            let c = p.im;
            grid.push(c);
            // Resonance-width cluster and a wider neighbourhood cluster.
            for (width, count) in [(6.0 * p.re.abs(), half), (0.1 * c, per_pole - half)] {
                for k in 0..count {
                    let t = -1.0 + 2.0 * k as f64 / (count - 1) as f64;
                    let w = c + t * width;
                    if w > 0.0 {
                        grid.push(w);
                    }
                }
            }
        }
    }
    grid.push(0.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

fn refine(g: &RationalTF, lo: f64, hi: f64, w0: f64, m0: f64) -> (f64, f64) {
    let slope = |w: f64| g.log_derivative(w).re;
    let mag = |w: f64| g.eval(Complex64::new(0.0, w)).norm();
    let (mut a, mut b) = (lo, hi);
    let (sa, sb) = (slope(a), slope(b));
    let w = if sa > 0.0 && sb < 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let s = slope(mid);
            if !s.is_finite() {
                break;
            }
            if s > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 1e-15 * b.max(1e-300) {
                break;
            }
        }
        0.5 * (a + b)
    } else {
        golden_section(&mag, a, b)
    };
    let m = mag(w);
    if m >= m0 {
        (w, m)
    } else {
        (w0, m0)
    }
}

fn golden_section(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-12 * b.abs().max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeakAttribution {
    StablePolePeak,
    UnstablePolePeak,
    Unattributed,
}

/// Attributes a peak to the upper-half-plane pole nearest `jω`, provided its
/// imaginary part is within `0.5 ω` of the peak frequency (a real pole for a
/// DC peak). Equidistant poles resolve toward the unstable one.
pub fn peak_pole_attribution(g: &RationalTF, peak: &PeakInfo) -> Result<PeakAttribution> {
    let poles = g.poles()?;
    let w = peak.freq;
    let jw = Complex64::new(0.0, w);
    let window = if w > 0.0 { 0.5 * w } else { 1e-9 };
    let best = poles.iter().filter(|p| p.im >= 0.0).min_by(|a, b| {
        let (da, db) = ((*a - jw).norm(), (*b - jw).norm());
        if (da - db).abs() <= 1e-12 * da.max(db) {
            b.re.total_cmp(&a.re)
        } else {
            da.total_cmp(&db)
        }
    });
    Ok(match best {
        Some(p) if (p.im - w).abs() <= window => {
            if p.re > 0.0 && !on_axis(*p) {
                PeakAttribution::UnstablePolePeak
            } else {
                PeakAttribution::StablePolePeak
            }
        }
        _ => PeakAttribution::Unattributed,
    })
}
