//! End-to-end analysis of a configured plant.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::allpass::{marginal_perturbation, pcr_upper_bound, AllPassPerturbation};
use crate::config::{AnalysisConfig, InputKind, PerturbationConfig};
use crate::error::{Error, Result};
use crate::lti::{ClassTag, RationalTF};
use crate::models::repressilator_perturbation;
use crate::peaks::{
    local_peaks_with, peak_pole_attribution, GridSpec, LinfNorm, PeakAttribution, PeakInfo,
    PeakList,
};
use crate::poly::StabilityVerdict;
use crate::rir::{
    loop_pcr_at_unit_peak, pcr_condition, rir_verdict_from_peaks, verify_marginal_stabilization,
    MarginalEvidence, RirVerdict,
};
use crate::simulate::{closed_loop, max_step, simulate_tf, SimInput, TimeSeries};

/// Bumped whenever a field is renamed, removed, or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantSummary {
    pub tf: RationalTF,
    pub poles: Vec<Complex64>,
    pub zeros: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub peak: PeakInfo,
    pub attribution: PeakAttribution,
    pub pcr_margin: f64,
    pub pcr_holds_strict: bool,
    pub pcr_holds_weak: bool,
    /// Best PCR any unit-peak stable function can have at this peak's phase.
    pub allpass_pcr_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub peak_index: usize,
    pub perturbation: Option<AllPassPerturbation>,
    pub evidence: Option<MarginalEvidence>,
    pub certifies: bool,
    /// PCR of `gδ` at its unit-gain peak, for closed loops in the closed left half plane.
    pub loop_pcr: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: AnalysisConfig,
    pub plant: PlantSummary,
    pub class: ClassTag,
    pub class_label: String,
    pub linf_norm: LinfNorm,
    pub grid: GridSpec,
    pub peaks_merged: bool,
    pub peaks: Vec<PeakReport>,
    pub rir: RirVerdict,
    pub perturbations: Vec<PerturbationReport>,
    pub diagnostics: Vec<String>,
}

pub fn run_analysis(config: &AnalysisConfig) -> Result<AnalysisReport> {
    config.validate()?;
    let (g, mut diagnostics) = config.plant.build()?;
    let opts = config.options.rir_options();
    let peaks = local_peaks_with(&g, &opts.peaks)?;
    let rir = rir_verdict_from_peaks(&g, &peaks, &opts)?;
    if peaks.merged {
        diagnostics.push("two refined peaks merged onto one frequency".into());
    }
    let peak_reports = peaks
        .peaks
        .iter()
        .map(|p| {
            let cond = pcr_condition(p);
            Ok(PeakReport {
                peak: p.clone(),
                attribution: peak_pole_attribution(&g, p)?,
                pcr_margin: cond.margin,
                pcr_holds_strict: cond.holds_strict,
                pcr_holds_weak: cond.holds_weak,
                allpass_pcr_bound: pcr_upper_bound(p.freq, -p.phase).ok(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let perturbations: Vec<PerturbationReport> = peaks
        .peaks
        .par_iter()
        .enumerate()
        .map(|(i, p)| perturbation_report(&g, i, p, &opts.peaks))
        .collect();
    let global = &peaks.peaks[0];
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::current(),
        config: config.clone(),
        plant: PlantSummary {
            poles: g.poles()?,
            zeros: g.zeros()?,
            tf: g,
        },
        class_label: rir.class.label(),
        class: rir.class.clone(),
        linf_norm: LinfNorm {
            freq: global.freq,
            gain: global.gain,
        },
        grid: peaks.grid.clone(),
        peaks_merged: peaks.merged,
        peaks: peak_reports,
        rir,
        perturbations,
        diagnostics,
    })
}

fn perturbation_report(
    g: &RationalTF,
    index: usize,
    peak: &PeakInfo,
    opts: &crate::peaks::PeakOptions,
) -> PerturbationReport {
    let mut rep = PerturbationReport {
        peak_index: index,
        perturbation: None,
        evidence: None,
        certifies: false,
        loop_pcr: None,
        error: None,
    };
    let res = marginal_perturbation(peak).and_then(|d| {
        rep.perturbation = Some(d);
        let tf = d.to_tf();
        let ev = verify_marginal_stabilization(g, &tf)?;
        if ev.verdict.is_clhp() {
            rep.loop_pcr = loop_pcr_at_unit_peak(g, &tf, opts)?;
        }
        rep.certifies = ev.certifies();
        rep.evidence = Some(ev);
        Ok(())
    });
    if let Err(e) = res {
        rep.error = Some(e.to_string());
    }
    rep
}

impl AnalysisReport {
    pub fn peak_list(&self) -> PeakList {
        PeakList {
            peaks: self.peaks.iter().map(|p| p.peak.clone()).collect(),
            grid: self.grid.clone(),
            merged: self.peaks_merged,
        }
    }

    /// Plain-text summary for terminals.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "plant      {}", self.plant.tf);
        let _ = writeln!(
            s,
            "class      {} ({} unstable poles, PIP {})",
            self.class_label,
            self.class.n_unstable,
            if self.class.pip_ok { "ok" } else { "violated" }
        );
        let _ = writeln!(
            s,
            "‖g‖∞       {:.6} at ω = {:.6}",
            self.linf_norm.gain, self.linf_norm.freq
        );
        for (i, p) in self.peaks.iter().enumerate() {
            let _ = writeln!(
                s,
                "peak {i}     ω = {:.6}  |g| = {:.6}  {:?}  PCR margin {:+.4e}",
                p.peak.freq, p.peak.gain, p.attribution, p.pcr_margin
            );
        }
        let _ = writeln!(s, "RIR        {}", self.rir);
        if let Some(c) = &self.rir.certificate {
            let a = c
                .perturbation
                .a
                .map_or(String::new(), |a| format!(" a = {a:.6}"));
            let _ = writeln!(
                s,
                "certificate {:?} gain {:.6}{a} at ω = {:.6}",
                c.perturbation.form, c.perturbation.gain, c.peak.freq
            );
        }
        for n in self.rir.notes.iter().chain(&self.diagnostics) {
            let _ = writeln!(s, "note       {n}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationOutput {
    pub delta: RationalTF,
    pub closed_loop: RationalTF,
    pub verdict: StabilityVerdict,
    pub horizon: f64,
    pub dt: f64,
    pub series: TimeSeries,
}

/// Perturbation described by `cfg`, using `report` for peak-based forms.
pub fn build_perturbation(
    cfg: &PerturbationConfig,
    report: Option<&AnalysisReport>,
) -> Result<RationalTF> {
    match cfg {
        PerturbationConfig::None => Ok(RationalTF::gain(0.0)),
        PerturbationConfig::Explicit { num, den } => {
            RationalTF::from_coeffs(num.clone(), den.clone())
        }
        PerturbationConfig::Allpass {
            index,
            eps,
            dc_block,
        } => {
            let report = report
                .ok_or_else(|| Error::Config("all-pass perturbation needs an analysis".into()))?;
            let base = match index {
                Some(i) => {
                    let p = report.peaks.get(*i).ok_or_else(|| {
                        Error::Config(format!(
                            "peak index {i} out of range ({} peaks)",
                            report.peaks.len()
                        ))
                    })?;
                    marginal_perturbation(&p.peak)?
                }
                None => {
                    report
                        .rir
                        .certificate
                        .as_ref()
                        .ok_or_else(|| Error::Config("no certificate; set a peak index".into()))?
                        .perturbation
                }
            };
            match dc_block {
                Some(c) => repressilator_perturbation(&base, *eps, *c),
                None => Ok(base.to_tf().scale(1.0 + eps)),
            }
        }
    }
}

/// Simulates the configured closed loop. `horizon` and `dt` override the config.
pub fn run_simulation(
    config: &AnalysisConfig,
    horizon: Option<f64>,
    dt: Option<f64>,
) -> Result<SimulationOutput> {
    config.validate()?;
    let sim = config.simulate.clone().unwrap_or_default();
    let (g, _) = config.plant.build()?;
    let report = match sim.perturbation {
        PerturbationConfig::Allpass { .. } => Some(run_analysis(config)?),
        _ => None,
    };
    let delta = build_perturbation(&sim.perturbation, report.as_ref())?;
    let t = closed_loop(&g, &delta)?;
    let verdict = t.den().stability()?;
    let horizon = horizon.unwrap_or(sim.horizon);
    let dt = match dt.or(sim.dt) {
        Some(dt) => dt,
        None => (0.5 * max_step(&t)?).min(horizon / 100.0),
    };
    let input = match sim.input {
        InputKind::Impulse => SimInput::Impulse,
        InputKind::Random => SimInput::RandomInitialState { seed: sim.seed },
    };
    let series = simulate_tf(&t, horizon, dt, input)?;
    Ok(SimulationOutput {
        delta,
        closed_loop: t,
        verdict,
        horizon,
        dt,
        series,
    })
}
