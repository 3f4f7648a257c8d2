//! Proper real-rational SISO transfer functions.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::peaks::PeakList;
use crate::poly::{on_axis, Polynomial};

/// Relative size of `|p(jω)|` against `Σ|a_i|ω^i` below which `p(jω)` counts as zero.
const EVAL_ZERO_TOL: f64 = 1e-13;

/// Default relative tolerance for "strictly dominates" between peak gains.
pub const GAIN_TIE_TOL: f64 = 1e-6;

/// Root-matching tolerance used by [`RationalTF::normalize`].
const CANCEL_TOL: f64 = 1e-8;

/// Transfer function `num(s) / den(s)` with a monic denominator.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalTF {
    num: Polynomial,
    den: Polynomial,
}

impl fmt::Debug for RationalTF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RationalTF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A pole/zero pair removed by [`RationalTF::normalize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cancellation {
    pub pole: Complex64,
    pub zero: Complex64,
    /// The cancelled mode lies in the closed right half plane.
    pub unstable: bool,
}

impl RationalTF {
    /// Canonical form: denominator scaled to be monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let lead = den.leading();
        Ok(RationalTF {
            num: num.scale(1.0 / lead),
            den: den.scale(1.0 / lead),
        })
    }

    pub fn from_coeffs(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        RationalTF::new(Polynomial::new(num), Polynomial::new(den))
    }

    pub fn gain(k: f64) -> Self {
        RationalTF {
            num: Polynomial::constant(k),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalTF::gain(1.0)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    fn num_degree(&self) -> Option<usize> {
        self.num.degree()
    }

    fn den_degree(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    pub fn is_proper(&self) -> bool {
        self.num_degree().is_none_or(|d| d <= self.den_degree())
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.num_degree().is_none_or(|d| d < self.den_degree())
    }

    /// `lim_{|s|→∞} g(s)` for proper `g`; `None` when improper.
    pub fn value_at_infinity(&self) -> Option<f64> {
        if self.is_strictly_proper() {
            Some(0.0)
        } else if self.is_proper() {
            Some(self.num.leading() / self.den.leading())
        } else {
            None
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        RationalTF {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// Product without cancellation.
    pub fn mul(&self, other: &RationalTF) -> Self {
        RationalTF {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// Sum over the product denominator, without cancellation.
    pub fn add(&self, other: &RationalTF) -> Self {
        RationalTF {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    /// `L / (1 - L)` for the loop `L = self`.
    pub fn positive_feedback(&self) -> Result<Self> {
        let den = &self.den - &self.num;
        if den.is_zero() {
            return Err(Error::UnityLoop);
        }
        RationalTF::new(self.num.clone(), den)
    }

    /// Raw evaluation at a complex point.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s)
    }

    fn den_vanishes(&self, w: f64) -> bool {
        let s = Complex64::new(0.0, w);
        self.den.eval(s).norm() <= EVAL_ZERO_TOL * self.den.eval_abs_scale(s)
    }

    fn num_vanishes(&self, w: f64) -> bool {
        let s = Complex64::new(0.0, w);
        self.num.is_zero() || self.num.eval(s).norm() <= EVAL_ZERO_TOL * self.num.eval_abs_scale(s)
    }

    /// `g(jω)`.
    pub fn freq_response(&self, w: f64) -> Result<Complex64> {
        if self.den_vanishes(w) {
            return Err(Error::PoleOnFrequency(w));
        }
        Ok(self.eval(Complex64::new(0.0, w)))
    }

    /// `d/dω log g(jω) = j (N'/N - D'/D)(jω)`.
    ///
    /// The real part is `d/dω log|g(jω)|`, the imaginary part is the phase change rate.
    pub fn log_derivative(&self, w: f64) -> Complex64 {
        let s = Complex64::new(0.0, w);
        let (n, dn) = self.num.eval_with_derivative(s);
        let (d, dd) = self.den.eval_with_derivative(s);
        Complex64::new(0.0, 1.0) * (dn / n - dd / d)
    }

    /// Principal phase `θ ∈ (-π, π]` and its exact derivative at `ω`.
    pub fn phase_and_pcr(&self, w: f64) -> Result<(f64, f64)> {
        if self.den_vanishes(w) || self.num_vanishes(w) {
            return Err(Error::PhaseUndefined(w));
        }
        let v = self.eval(Complex64::new(0.0, w));
        Ok((wrap_phase(v.arg()), self.log_derivative(w).im))
    }

    pub fn poles(&self) -> Result<Vec<Complex64>> {
        match self.den.degree() {
            Some(d) if d >= 1 => self.den.roots(),
            _ => Ok(Vec::new()),
        }
    }

    pub fn zeros(&self) -> Result<Vec<Complex64>> {
        match self.num.degree() {
            Some(d) if d >= 1 => self.num.roots(),
            _ => Ok(Vec::new()),
        }
    }

    /// Open right half plane poles with multiplicity.
    pub fn unstable_poles(&self) -> Result<(usize, Vec<Complex64>)> {
        let poles = self.poles()?;
        if let Some(p) = poles.iter().find(|p| on_axis(**p)) {
            return Err(Error::MarginalPole { re: p.re, im: p.im });
        }
        let unstable: Vec<Complex64> = poles.into_iter().filter(|p| p.re > 0.0).collect();
        Ok((unstable.len(), unstable))
    }

    /// Parity interlacing: every interval between consecutive real closed
    /// right half plane zeros (with `+∞` as a zero when strictly proper)
    /// holds an even number of real open right half plane poles.
    pub fn pip_check(&self) -> Result<bool> {
        let is_real = |z: &Complex64| z.im.abs() <= 1e-6 * z.norm().max(1.0);
        let mut zeros: Vec<f64> = self
            .zeros()?
            .iter()
            .filter(|z| is_real(z) && (z.re >= 0.0 || on_axis(**z)))
            .map(|z| z.re.max(0.0))
            .collect();
        if self.is_strictly_proper() {
            zeros.push(f64::INFINITY);
        }
        zeros.sort_by(f64::total_cmp);
        let poles: Vec<f64> = self
            .poles()?
            .iter()
            .filter(|p| is_real(p) && p.re > 0.0 && !on_axis(**p))
            .map(|p| p.re)
            .collect();
        Ok(zeros.windows(2).all(|w| {
            let count = poles.iter().filter(|&&p| p > w[0] && p < w[1]).count();
            count % 2 == 0
        }))
    }

    /// Explicit common-factor cancellation. Every removed pair is logged
    /// and returned; right half plane cancellations are flagged.
    pub fn normalize(&self) -> Result<(RationalTF, Vec<Cancellation>)> {
        if self.num.is_zero() {
            return Ok((RationalTF::gain(0.0), Vec::new()));
        }
        let mut zeros = self.zeros()?;
        let mut poles = self.poles()?;
        let mut cancelled = Vec::new();
        let mut i = 0;
        while i < poles.len() {
            let p = poles[i];
            let hit = zeros
                .iter()
                .enumerate()
                .filter(|(_, z)| (**z - p).norm() <= CANCEL_TOL * p.norm().max(1.0))
                .min_by(|a, b| (a.1 - p).norm().total_cmp(&(b.1 - p).norm()))
                .map(|(j, _)| j);
            if let Some(j) = hit {
                let z = zeros.remove(j);
                poles.remove(i);
                let unstable = p.re > 0.0 || on_axis(p);
                if unstable {
                    log::warn!("cancelling unstable pole/zero pair near {p}");
                } else {
                    log::info!("cancelling pole/zero pair near {p}");
                }
                cancelled.push(Cancellation {
                    pole: p,
                    zero: z,
                    unstable,
                });
            } else {
                i += 1;
            }
        }
        if cancelled.is_empty() {
            return Ok((self.clone(), cancelled));
        }
        let num = Polynomial::from_roots(&zeros).scale(self.num.leading());
        let den = Polynomial::from_roots(&poles).scale(self.den.leading());
        Ok((RationalTF::new(num, den)?, cancelled))
    }
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeakShape {
    /// Unique L∞ peak at ω = 0.
    PeakAtZero,
    /// Unique L∞ peak at some ω_p > 0.
    PeakAtNonzero,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTag {
    pub n_unstable: usize,
    pub pip_ok: bool,
    pub shape: PeakShape,
    pub peak_freq: f64,
    pub strictly_proper: bool,
    pub diagnostics: Vec<String>,
}

impl ClassTag {
    /// Member of some `G_n^0` or `G_n^#`.
    pub fn in_class(&self) -> bool {
        self.strictly_proper
            && self.n_unstable >= 1
            && self.pip_ok
            && self.shape != PeakShape::Neither
    }

    pub fn is(&self, n: usize, shape: PeakShape) -> bool {
        self.in_class() && self.n_unstable == n && self.shape == shape
    }

    /// Short label such as `G_2^#`, `G_1^0`, or a reason for non-membership.
    pub fn label(&self) -> String {
        if !self.strictly_proper {
            return "not strictly proper".into();
        }
        if self.n_unstable == 0 {
            return "stable".into();
        }
        if !self.pip_ok {
            return format!("G: n={} PIP violated", self.n_unstable);
        }
        match self.shape {
            PeakShape::PeakAtZero => format!("G_{}^0", self.n_unstable),
            PeakShape::PeakAtNonzero => format!("G_{}^#", self.n_unstable),
            PeakShape::Neither => format!("G_{} (no unique peak)", self.n_unstable),
        }
    }
}

/// Class membership from the unstable-pole count, PIP, and the peak list.
pub fn classify(g: &RationalTF, peaks: &PeakList) -> Result<ClassTag> {
    classify_with(g, peaks, GAIN_TIE_TOL)
}

pub fn classify_with(g: &RationalTF, peaks: &PeakList, gain_tie: f64) -> Result<ClassTag> {
    let (n_unstable, _) = g.unstable_poles()?;
    let pip_ok = g.pip_check()?;
    let mut diagnostics = Vec::new();
    let (shape, peak_freq) = match peaks.global() {
        None => {
            diagnostics.push("no peak found".to_string());
            (PeakShape::Neither, 0.0)
        }
        Some(top) => {
            let runner_up = peaks
                .peaks
                .iter()
                .skip(1)
                .map(|p| p.gain)
                .fold(0.0, f64::max);
            let at_inf = g.value_at_infinity().map(f64::abs).unwrap_or(f64::INFINITY);
            let rival = runner_up.max(at_inf);
            if rival >= top.gain * (1.0 - gain_tie) {
                diagnostics.push(format!(
                    "peak tie: global gain {} vs rival {} within relative {}",
                    top.gain, rival, gain_tie
                ));
                (PeakShape::Neither, top.freq)
            } else if top.freq == 0.0 {
                (PeakShape::PeakAtZero, 0.0)
            } else {
                (PeakShape::PeakAtNonzero, top.freq)
            }
        }
    };
    Ok(ClassTag {
        n_unstable,
        pip_ok,
        shape,
        peak_freq,
        strictly_proper: g.is_strictly_proper(),
        diagnostics,
    })
}
