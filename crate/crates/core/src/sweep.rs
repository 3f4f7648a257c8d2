//! One-parameter sweeps with bisection on status changes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{AnalysisConfig, PlantConfig};
use crate::error::{Error, Result};
use crate::peaks::local_peaks_with;
use crate::rir::{pcr_condition, rir_verdict_from_peaks, RirOptions, RirStatus};

/// Bracket width at which refinement stops.
pub const REFINE_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub class_label: String,
    pub n_unstable: Option<usize>,
    pub peak_count: Option<usize>,
    pub global_freq: Option<f64>,
    pub global_gain: Option<f64>,
    pub pcr_margin: Option<f64>,
    pub pcr_holds: Option<bool>,
    pub status: Option<RirStatus>,
    pub lower: Option<f64>,
    pub lower_strict: Option<bool>,
    pub upper: Option<f64>,
    pub refined: bool,
    pub error: Option<String>,
}

impl SweepRow {
    /// Rows with equal keys are in the same qualitative regime.
    pub fn key(&self) -> String {
        match &self.error {
            Some(e) => format!("error: {e}"),
            None => format!(
                "{} / {:?} / pcr {}",
                self.class_label,
                self.status.unwrap_or(RirStatus::Inconclusive),
                if self.pcr_holds == Some(true) {
                    "holds"
                } else {
                    "fails"
                }
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub lo: f64,
    pub hi: f64,
    pub from: String,
    pub to: String,
    pub refined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub param: String,
    pub rows: Vec<SweepRow>,
    pub transitions: Vec<Transition>,
}

pub fn evaluate_point(
    plant: &PlantConfig,
    param: &str,
    value: f64,
    opts: &RirOptions,
) -> Result<SweepRow> {
    let p = plant.with_param(param, value)?;
    let mut row = SweepRow {
        value,
        class_label: String::new(),
        n_unstable: None,
        peak_count: None,
        global_freq: None,
        global_gain: None,
        pcr_margin: None,
        pcr_holds: None,
        status: None,
        lower: None,
        lower_strict: None,
        upper: None,
        refined: false,
        error: None,
    };
    let res = (|| -> Result<()> {
        let (g, _) = p.build()?;
        let peaks = local_peaks_with(&g, &opts.peaks)?;
        row.peak_count = Some(peaks.len());
        if let Some(top) = peaks.global() {
            let c = pcr_condition(top);
            row.global_freq = Some(top.freq);
            row.global_gain = Some(top.gain);
            row.pcr_margin = Some(c.margin);
            row.pcr_holds = Some(c.holds_strict);
        }
        let v = rir_verdict_from_peaks(&g, &peaks, opts)?;
        row.class_label = v.class.label();
        row.n_unstable = Some(v.class.n_unstable);
        row.status = Some(v.status);
        row.lower = Some(v.lower);
        row.lower_strict = Some(v.lower_strict);
        row.upper = v.upper;
        Ok(())
    })();
    if let Err(e) = res {
        row.error = Some(e.to_string());
    }
    Ok(row)
}

pub fn run_sweep(
    config: &AnalysisConfig,
    param: &str,
    lo: f64,
    hi: f64,
    steps: usize,
    refine: bool,
) -> Result<SweepTable> {
    config.validate()?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::Config(format!("invalid range {lo}:{hi}")));
    }
    if steps == 0 {
        return Err(Error::Config("steps must be at least 1".into()));
    }
    let plant = &config.plant;
    plant.with_param(
        param,
        if plant.is_integer_param(param) {
            lo.round().max(1.0)
        } else {
            lo
        },
    )?;
    let opts = config.options.rir_options();
    let integer = plant.is_integer_param(param);
    let mut values: Vec<f64> = if steps == 1 {
        vec![lo]
    } else {
        (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect()
    };
    if integer {
        values.iter_mut().for_each(|v| *v = v.round());
        values.dedup();
    }
    let mut rows = values
        .par_iter()
        .map(|&v| evaluate_point(plant, param, v, &opts))
        .collect::<Result<Vec<_>>>()?;

    let brackets: Vec<(usize, usize)> = (1..rows.len())
        .filter(|&i| rows[i - 1].key() != rows[i].key())
        .map(|i| (i - 1, i))
        .collect();
    let refined: Vec<(Vec<Transition>, Vec<SweepRow>)> = brackets
        .par_iter()
        .map(|&(a, b)| {
            let (left, right) = (rows[a].clone(), rows[b].clone());
            let mut found = (Vec::new(), Vec::new());
            if refine && !integer {
                bisect(plant, param, &opts, left, right, &mut found)?;
            } else {
                found.0.push(Transition {
                    lo: left.value,
                    hi: right.value,
                    from: left.key(),
                    to: right.key(),
                    refined: false,
                });
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut transitions = Vec::with_capacity(refined.len());
    for (t, extra) in refined {
        transitions.extend(t);
        rows.extend(extra);
    }
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(SweepTable {
        param: param.to_string(),
        rows,
        transitions,
    })
}

/// Narrows a bracket whose endpoint keys differ, descending into both halves
/// when the midpoint matches neither end, so adjacent changes are all kept.
fn bisect(
    plant: &PlantConfig,
    param: &str,
    opts: &RirOptions,
    left: SweepRow,
    right: SweepRow,
    found: &mut (Vec<Transition>, Vec<SweepRow>),
) -> Result<()> {
    if right.value - left.value <= REFINE_WIDTH {
        found.0.push(Transition {
            lo: left.value,
            hi: right.value,
            from: left.key(),
            to: right.key(),
            refined: true,
        });
        return Ok(());
    }
    let mut mid = evaluate_point(plant, param, 0.5 * (left.value + right.value), opts)?;
    mid.refined = true;
    found.1.push(mid.clone());
    let key = mid.key();
    if key != left.key() {
        bisect(plant, param, opts, left, mid.clone(), found)?;
    }
    if key != right.key() {
        bisect(plant, param, opts, mid, right, found)?;
    }
    Ok(())
}
