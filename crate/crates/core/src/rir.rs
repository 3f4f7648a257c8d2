//! Robust instability radius: exact certificates, interval bounds, and
//! necessary-condition violations.
//!
//! The radius `ρ*(g)` is the smallest `‖δ‖_{H∞}` over stable `δ` for which the
//! positive feedback loop `g/(1 - gδ)` is not exponentially unstable. It is
//! always at least `1/‖g‖_{L∞}`. Equality is certified by exhibiting an
//! all-pass `δ` of that norm that places exactly one simple pole pair on the
//! imaginary axis and all others in the open left half plane. Any other peak
//! whose all-pass perturbation does the same yields an upper bound.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::allpass::{marginal_perturbation, AllPassPerturbation};
use crate::error::{Error, Result};
use crate::lti::{classify_with, ClassTag, PeakShape, RationalTF, GAIN_TIE_TOL};
use crate::peaks::{local_peaks_with, PeakInfo, PeakList, PeakOptions};
use crate::poly::{on_axis, Polynomial, StabilityKind, StabilityVerdict};

/// Margins within `±TOL_STRICT` are treated as undecidable.
pub const TOL_STRICT: f64 = 1e-9;

/// Relative distance under which an unstable zero of `δ` is taken to cancel a pole of `g`.
const HIDDEN_MODE_TOL: f64 = 1e-6;

/// Tolerance on the unit-gain peak of `L = gδ` when checking the loop PCR.
const LOOP_PEAK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PcrCondition {
    pub holds_strict: bool,
    pub holds_weak: bool,
    pub margin: f64,
}

impl PcrCondition {
    fn from_margin(margin: f64, tol: f64) -> Self {
        PcrCondition {
            holds_strict: margin > tol,
            holds_weak: margin > -tol,
            margin,
        }
    }

    pub fn in_gray_zone(&self) -> bool {
        self.holds_weak && !self.holds_strict
    }
}

/// `θ'_g(ω_p) - |sin θ_g(ω_p)| / ω_p`, or `θ'_g(0)` for a peak at DC.
pub fn pcr_margin(peak: &PeakInfo) -> f64 {
    if peak.freq == 0.0 {
        peak.pcr
    } else {
        peak.pcr - peak.phase.sin().abs() / peak.freq
    }
}

pub fn pcr_condition(peak: &PeakInfo) -> PcrCondition {
    PcrCondition::from_margin(pcr_margin(peak), TOL_STRICT)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalEvidence {
    pub closed_loop_char_poly: Polynomial,
    /// Frequency of the axis roots when they form a single pair (or a single root at 0).
    pub axis_pair_freq: Option<f64>,
    pub max_real_part: f64,
    pub verdict: StabilityVerdict,
    pub single_axis_pair: bool,
}

impl MarginalEvidence {
    /// One simple axis pair, everything else strictly stable.
    pub fn certifies(&self) -> bool {
        self.verdict.kind == StabilityKind::MarginallyStable && self.single_axis_pair
    }
}

/// Roots `den_g den_δ - num_g num_δ` and classifies the closed loop of `g` and `δ`.
pub fn verify_marginal_stabilization(
    g: &RationalTF,
    delta: &RationalTF,
) -> Result<MarginalEvidence> {
    audit_hidden_modes(g, delta)?;
    let cp = &(g.den() * delta.den()) - &(g.num() * delta.num());
    let roots = match cp.degree() {
        None => return Err(Error::UnityLoop),
        Some(0) => Vec::new(),
        Some(_) => cp.roots()?,
    };
    let verdict = StabilityVerdict::from_roots(&roots);
    let max_real_part = roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let axis_count = roots.iter().filter(|z| on_axis(**z)).count();
    let single_axis_pair = verdict.imaginary_axis_roots.len() == 1
        && axis_count
            == if verdict.imaginary_axis_roots[0] == 0.0 {
                1
            } else {
                2
            };
    let axis_pair_freq = single_axis_pair.then(|| verdict.imaginary_axis_roots[0]);
    Ok(MarginalEvidence {
        closed_loop_char_poly: cp,
        axis_pair_freq,
        max_real_part,
        verdict,
        single_axis_pair,
    })
}

fn audit_hidden_modes(g: &RationalTF, delta: &RationalTF) -> Result<()> {
    let zeros = delta.zeros()?;
    let poles = g.poles()?;
    for z in zeros.iter().filter(|z| z.re > 0.0 && !on_axis(**z)) {
        if poles
            .iter()
            .any(|p| (p - z).norm() <= HIDDEN_MODE_TOL * z.norm().max(1.0))
        {
            return Err(Error::HiddenMode { re: z.re, im: z.im });
        }
    }
    Ok(())
}

/// Phase change rate of `L = gδ` at its peak, when that peak has unit gain.
///
/// Returns `None` if `L` has no unique peak of gain `1 ± 1e-6`.
pub fn loop_pcr_at_unit_peak(
    g: &RationalTF,
    delta: &RationalTF,
    opts: &PeakOptions,
) -> Result<Option<f64>> {
    let l = g.mul(delta);
    let peaks = local_peaks_with(&l, opts)?;
    let Some(top) = peaks.global() else {
        return Ok(None);
    };
    if (top.gain - 1.0).abs() > LOOP_PEAK_TOL {
        return Ok(None);
    }
    Ok(Some(top.pcr))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RirStatus {
    ExactRIR,
    Bounded,
    NecessaryViolated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub peak: PeakInfo,
    pub perturbation: AllPassPerturbation,
    pub evidence: MarginalEvidence,
}

/// Answer to "is ρ* exactly 1/‖g‖?".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    Exceeds,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RirVerdict {
    pub status: RirStatus,
    pub lower: f64,
    pub lower_strict: bool,
    pub upper: Option<f64>,
    pub certificate: Option<Certificate>,
    pub class: ClassTag,
    pub global_margin: f64,
    pub notes: Vec<String>,
}

impl RirVerdict {
    pub fn exactness(&self) -> Exactness {
        if self.status == RirStatus::ExactRIR {
            Exactness::Exact
        } else if self.lower_strict {
            Exactness::Exceeds
        } else {
            Exactness::Undecided
        }
    }

    /// Interval in the `(lo, hi]` / `[lo, ∞)` style.
    pub fn interval(&self) -> String {
        if self.status == RirStatus::ExactRIR {
            return format!("{{{}}}", self.lower);
        }
        let open = if self.lower_strict { '(' } else { '[' };
        match self.upper {
            Some(u) => format!("{open}{}, {u}]", self.lower),
            None => format!("{open}{}, ∞)", self.lower),
        }
    }
}

impl fmt::Display for RirVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ρ* ∈ {}", self.status, self.interval())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RirOptions {
    pub peaks: PeakOptions,
    pub tol_strict: f64,
    pub gain_tie: f64,
}

impl Default for RirOptions {
    fn default() -> Self {
        RirOptions {
            peaks: PeakOptions::default(),
            tol_strict: TOL_STRICT,
            gain_tie: GAIN_TIE_TOL,
        }
    }
}

pub fn rir_verdict(g: &RationalTF) -> Result<RirVerdict> {
    rir_verdict_with(g, &RirOptions::default())
}

pub fn rir_verdict_with(g: &RationalTF, opts: &RirOptions) -> Result<RirVerdict> {
    let peaks = local_peaks_with(g, &opts.peaks)?;
    rir_verdict_from_peaks(g, &peaks, opts)
}

/// Decision procedure on a precomputed peak list.
pub fn rir_verdict_from_peaks(
    g: &RationalTF,
    peaks: &PeakList,
    opts: &RirOptions,
) -> Result<RirVerdict> {
    if !g.is_strictly_proper() {
        return Err(Error::InvalidPlant("plant must be strictly proper".into()));
    }
    let class = classify_with(g, peaks, opts.gain_tie)?;
    if class.n_unstable == 0 {
        return Err(Error::InvalidPlant("plant is stable".into()));
    }
    let global = peaks
        .global()
        .ok_or_else(|| Error::InvalidPlant("no frequency response peak".into()))?;
    let cond = PcrCondition::from_margin(pcr_margin(global), opts.tol_strict);
    let mut v = RirVerdict {
        status: RirStatus::Inconclusive,
        lower: 1.0 / global.gain,
        lower_strict: false,
        upper: None,
        certificate: None,
        class: class.clone(),
        global_margin: cond.margin,
        notes: class.diagnostics.clone(),
    };
    let locals = &peaks.peaks[1..];

    if !class.pip_ok {
        v.lower_strict = true;
        v.status = RirStatus::NecessaryViolated;
        v.notes
            .push("parity interlacing fails: no stable perturbation stabilizes, ρ* = ∞".into());
        return Ok(v);
    }
    if class.shape == PeakShape::Neither {
        v.notes
            .push("no unique L∞ peak; sandwich conditions do not apply".into());
        scan_for_upper(g, locals, &mut v);
        return Ok(v);
    }

    let g1_sharp = class.is(1, PeakShape::PeakAtNonzero);
    if g1_sharp || !cond.holds_weak {
        v.lower_strict = true;
        v.notes.push(if g1_sharp {
            "one unstable pole with a peak at ω > 0: ρ* > 1/‖g‖".into()
        } else {
            format!(
                "PCR condition violated at the global peak (margin {:.6e})",
                cond.margin
            )
        });
        v.status = if scan_for_upper(g, locals, &mut v) {
            RirStatus::Bounded
        } else {
            RirStatus::NecessaryViolated
        };
        return Ok(v);
    }
    if cond.in_gray_zone() {
        v.notes.push(format!(
            "PCR margin {:.3e} within ±{:.0e}: exactness undecidable",
            cond.margin, opts.tol_strict
        ));
        scan_for_upper(g, locals, &mut v);
        return Ok(v);
    }

    let sufficient = class.is(1, PeakShape::PeakAtZero) || class.is(2, PeakShape::PeakAtNonzero);
    if sufficient {
        match certify(g, global) {
            Ok(cert) if cert.evidence.certifies() => {
                v.status = RirStatus::ExactRIR;
                v.upper = Some(v.lower);
                v.certificate = Some(cert);
                return Ok(v);
            }
            Ok(cert) => v.notes.push(format!(
                "global-peak perturbation gave {:?} closed loop",
                cert.evidence.verdict.kind
            )),
            Err(e) => v.notes.push(format!("global-peak perturbation: {e}")),
        }
        v.status = if scan_for_upper(g, locals, &mut v) {
            RirStatus::Bounded
        } else {
            RirStatus::Inconclusive
        };
        return Ok(v);
    }

    // Sufficiency is only established for one or two unstable poles; try every peak.
    v.notes.push(format!(
        "{} unstable poles: PCR condition is necessary only",
        class.n_unstable
    ));
    match certify(g, global) {
        Ok(cert) if cert.evidence.certifies() => {
            v.status = RirStatus::ExactRIR;
            v.upper = Some(v.lower);
            v.certificate = Some(cert);
            return Ok(v);
        }
        Ok(_) | Err(_) => {}
    }
    v.status = if scan_for_upper(g, locals, &mut v) {
        RirStatus::Bounded
    } else {
        RirStatus::Inconclusive
    };
    Ok(v)
}

fn certify(g: &RationalTF, peak: &PeakInfo) -> Result<Certificate> {
    let perturbation = marginal_perturbation(peak)?;
    let evidence = verify_marginal_stabilization(g, &perturbation.to_tf())?;
    Ok(Certificate {
        peak: peak.clone(),
        perturbation,
        evidence,
    })
}

/// Tries the given peaks in order; the first certifying one sets the upper bound.
fn scan_for_upper(g: &RationalTF, candidates: &[PeakInfo], v: &mut RirVerdict) -> bool {
    let results: Vec<Result<Certificate>> = candidates.par_iter().map(|p| certify(g, p)).collect();
    for (peak, res) in candidates.iter().zip(results) {
        match res {
            Ok(cert) if cert.evidence.certifies() => {
                v.upper = Some(1.0 / peak.gain);
                v.notes
                    .push(format!("upper bound from peak at ω = {:.6}", peak.freq));
                v.certificate = Some(cert);
                return true;
            }
            Ok(_) => {}
            Err(e) => v.notes.push(format!("peak at ω = {:.6}: {e}", peak.freq)),
        }
    }
    false
}
