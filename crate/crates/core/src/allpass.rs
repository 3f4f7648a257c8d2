//! Phase change rate bound over unit-peak stable functions and its
//! zeroth/first-order all-pass achievers.
//!
//! For a peak at `ω_p > 0` with prescribed phase `θ_p`, no stable real-rational
//! `f` whose H∞ norm is attained at `ω_p` has a phase slope above
//! `-|sin θ_p| / ω_p`. The bound is met by `(a - s)/(a + s)` for
//! `θ_p ∈ (-π, 0)`, by `(s - a)/(s + a)` for `θ_p ∈ (0, π)`, and by `±1` at the
//! endpoints. At `ω_p = 0` only `θ_p ∈ {0, π}` is feasible and the bound is 0.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::{wrap_phase, RationalTF};
use crate::peaks::PeakInfo;
use crate::poly::Polynomial;

/// Phases within this distance of 0 or π select the zeroth-order forms.
const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllPassForm {
    PlusOne,
    MinusOne,
    /// `(a - s)/(a + s)`
    Lead,
    /// `(s - a)/(s + a)`
    Lag,
}

/// `gain * form(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllPassPerturbation {
    pub gain: f64,
    pub form: AllPassForm,
    pub a: Option<f64>,
}

impl AllPassPerturbation {
    pub fn with_gain(self, gain: f64) -> Self {
        AllPassPerturbation { gain, ..self }
    }

    pub fn to_tf(&self) -> RationalTF {
        let k = self.gain;
        let (num, den) = match (self.form, self.a) {
            (AllPassForm::PlusOne, _) => (Polynomial::constant(k), Polynomial::one()),
            (AllPassForm::MinusOne, _) => (Polynomial::constant(-k), Polynomial::one()),
            (AllPassForm::Lead, Some(a)) => {
                (Polynomial::linear(k * a, -k), Polynomial::linear(a, 1.0))
            }
            (AllPassForm::Lag, Some(a)) => {
                (Polynomial::linear(-k * a, k), Polynomial::linear(a, 1.0))
            }
            (form, None) => unreachable!("{form:?} requires a"),
        };
        RationalTF::new(num, den).expect("all-pass denominator is nonzero")
    }

    pub fn eval(&self, w: f64) -> Complex64 {
        self.to_tf().eval(Complex64::new(0.0, w))
    }

    /// `‖δ‖_{H∞}`.
    pub fn hinf_norm(&self) -> f64 {
        self.gain.abs()
    }
}

/// `sup θ'_f(ω_p)` over stable `f` peaking at `ω_p` with phase `θ_p`.
pub fn pcr_upper_bound(w: f64, theta: f64) -> Result<f64> {
    let th = wrap_phase(theta);
    if w == 0.0 {
        if is_zero_phase(th) || is_pi_phase(th) {
            Ok(0.0)
        } else {
            Err(Error::InfeasibleDcPhase(theta))
        }
    } else {
        Ok(-(th.sin() / w).abs())
    }
}

fn is_zero_phase(th: f64) -> bool {
    th.abs() <= ENDPOINT_TOL
}

fn is_pi_phase(th: f64) -> bool {
    (th.abs() - PI).abs() <= ENDPOINT_TOL
}

/// Unit-gain all-pass with phase `θ_p` at `ω_p` and the largest possible slope there.
pub fn optimal_allpass(w: f64, theta: f64) -> Result<AllPassPerturbation> {
    let th = wrap_phase(theta);
    let unit = |form, a| AllPassPerturbation { gain: 1.0, form, a };
    if is_zero_phase(th) {
        return Ok(unit(AllPassForm::PlusOne, None));
    }
    if is_pi_phase(th) {
        return Ok(unit(AllPassForm::MinusOne, None));
    }
    if w == 0.0 {
        return Err(Error::InfeasibleDcPhase(theta));
    }
    Ok(if th < 0.0 {
        // -2 atan(ω/a) = θ
        unit(AllPassForm::Lead, Some(w / (-th / 2.0).tan()))
    } else {
        // π - 2 atan(ω/a) = θ
        unit(AllPassForm::Lag, Some(w / ((PI - th) / 2.0).tan()))
    })
}

/// All-pass `δ` with `‖δ‖ = 1/peak.gain` and `g(jω_p) δ(jω_p) = 1`.
pub fn marginal_perturbation(peak: &PeakInfo) -> Result<AllPassPerturbation> {
    if peak.gain.is_nan() || peak.gain <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "peak gain {} must be positive",
            peak.gain
        )));
    }
    Ok(optimal_allpass(peak.freq, -peak.phase)?.with_gain(1.0 / peak.gain))
}
