//! Plant families: cyclic networks of identical first-order agents, a
//! magnetic levitation model with its compensator and controller family,
//! and a delayed repressilator loop.

use serde::{Deserialize, Serialize};

use crate::allpass::AllPassPerturbation;
use crate::error::{Error, Result};
use crate::lti::RationalTF;
use crate::poly::Polynomial;

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

/// `2m + 1` identical agents `1/(s + 1)` in a ring with loop gain `-k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub m: u32,
    pub k: f64,
}

impl CyclicSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        positive("k", self.k)
    }

    fn order(&self) -> u32 {
        2 * self.m + 1
    }
}

/// `-k / ((s + 1)^{2m+1} + k)` from the binomial expansion.
pub fn cyclic_network(spec: &CyclicSpec) -> Result<RationalTF> {
    spec.validate()?;
    let n = spec.order() as usize;
    let mut den = vec![0.0; n + 1];
    let mut c = 1.0;
    for (i, d) in den.iter_mut().enumerate() {
        *d = c;
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    den[0] += spec.k;
    RationalTF::new(Polynomial::constant(-spec.k), Polynomial::new(den))
}

/// Same plant assembled as `h / (1 - h)` with `h = -k/(s + 1)^{2m+1}`.
pub fn cyclic_network_via_feedback(spec: &CyclicSpec) -> Result<RationalTF> {
    spec.validate()?;
    let h = RationalTF::new(
        Polynomial::constant(-spec.k),
        Polynomial::linear(1.0, 1.0).pow(spec.order()),
    )?;
    h.positive_feedback()
}

/// Diagonal Padé approximant of `e^{-τs}`.
pub fn pade_delay(tau: f64, order: u32) -> Result<RationalTF> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "delay must be non-negative, got {tau}"
        )));
    }
    if order < 1 {
        return Err(Error::InvalidParameter(
            "Padé order must be at least 1".into(),
        ));
    }
    if tau == 0.0 {
        return Ok(RationalTF::one());
    }
    let n = order as usize;
    let mut num = Vec::with_capacity(n + 1);
    let mut den = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    let mut tk = 1.0;
    for k in 0..=n {
        den.push(c * tk);
        num.push(if k % 2 == 0 { c * tk } else { -c * tk });
        c *= (n - k) as f64 / ((2 * n - k) as f64 * (k + 1) as f64);
        tk *= tau;
    }
    RationalTF::new(Polynomial::new(num), Polynomial::new(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepressilatorSpec {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub k: f64,
    /// Delay in hours.
    pub tau: f64,
    pub pade_order: u32,
}

impl Default for RepressilatorSpec {
    fn default() -> Self {
        RepressilatorSpec {
            alpha1: 0.4621,
            alpha2: 0.5545,
            alpha3: 0.3697,
            k: 2.216,
            tau: 0.0,
            pade_order: 5,
        }
    }
}

impl RepressilatorSpec {
    pub fn validate(&self) -> Result<()> {
        positive("alpha1", self.alpha1)?;
        positive("alpha2", self.alpha2)?;
        positive("alpha3", self.alpha3)?;
        positive("k", self.k)?;
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tau must be non-negative, got {}",
                self.tau
            )));
        }
        if self.pade_order < 1 {
            return Err(Error::InvalidParameter(
                "pade_order must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn with_tau(self, tau: f64) -> Self {
        RepressilatorSpec { tau, ..self }
    }
}

/// `hD / (1 - hD)` with `h = -k/((s+α1)(s+α2)(s+α3))` and `D` the Padé delay.
pub fn repressilator(spec: &RepressilatorSpec) -> Result<RationalTF> {
    Ok(repressilator_checked(spec)?.0)
}

/// As [`repressilator`], also returning a note when the nominal loop is not unstable.
pub fn repressilator_checked(spec: &RepressilatorSpec) -> Result<(RationalTF, Vec<String>)> {
    spec.validate()?;
    let den = &(&Polynomial::linear(spec.alpha1, 1.0) * &Polynomial::linear(spec.alpha2, 1.0))
        * &Polynomial::linear(spec.alpha3, 1.0);
    let h = RationalTF::new(Polynomial::constant(-spec.k), den)?;
    let g = h
        .mul(&pade_delay(spec.tau, spec.pade_order)?)
        .positive_feedback()?;
    let mut notes = Vec::new();
    match g.unstable_poles() {
        Ok((0, _)) => {
            let msg = "nominal repressilator loop is not exponentially unstable".to_string();
            log::warn!("{msg}");
            notes.push(msg);
        }
        Ok((n, _)) => log::debug!("repressilator: {n} unstable poles"),
        Err(e) => {
            log::warn!("repressilator: {e}");
            notes.push(e.to_string());
        }
    }
    Ok((g, notes))
}

/// `(s/(s + cutoff)) (1 + ε) δ_base`, zero DC gain.
pub fn repressilator_perturbation(
    base: &AllPassPerturbation,
    eps: f64,
    cutoff: f64,
) -> Result<RationalTF> {
    positive("cutoff", cutoff)?;
    let blocker = RationalTF::new(
        Polynomial::linear(0.0, 1.0),
        Polynomial::linear(cutoff, 1.0),
    )?;
    Ok(blocker.mul(&base.to_tf()).scale(1.0 + eps))
}

/// Linearized magnetic levitation: unstable pole `p`, coil time constant `τ`, gain `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaglevSpec {
    pub p: f64,
    pub tau: f64,
    pub k: f64,
}

impl MaglevSpec {
    pub fn validate(&self) -> Result<()> {
        positive("p", self.p)?;
        positive("tau", self.tau)?;
        positive("k", self.k)?;
        if self.p * self.tau > 0.3 {
            log::warn!(
                "maglev: p·τ = {} is not small; the reduced model is a poor approximation",
                self.p * self.tau
            );
        }
        Ok(())
    }

    /// `τ_c = 1/(p²τ)`, the largest lead time constant keeping the peak at DC.
    pub fn boundary_tau_c(&self) -> f64 {
        1.0 / (self.p * self.p * self.tau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaglevVariant {
    FullThirdOrder,
    ReducedSecondOrder,
}

/// `k/((p² - s²)(τs + 1))` or `k/(p² - s²)`.
pub fn maglev(spec: &MaglevSpec, variant: MaglevVariant) -> Result<RationalTF> {
    spec.validate()?;
    let unstable = Polynomial::new(vec![spec.p * spec.p, 0.0, -1.0]);
    let den = match variant {
        MaglevVariant::FullThirdOrder => &unstable * &Polynomial::linear(1.0, spec.tau),
        MaglevVariant::ReducedSecondOrder => unstable,
    };
    RationalTF::new(Polynomial::constant(spec.k), den)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TauC {
    Auto,
    Value(f64),
}

impl TauC {
    pub fn resolve(self, spec: &MaglevSpec) -> Result<f64> {
        match self {
            TauC::Auto => Ok(spec.boundary_tau_c()),
            TauC::Value(t) => positive("tau_c", t).map(|_| t),
        }
    }
}

/// Phase-lead compensator `((τ_c + τ)s + 1)/(τ_c s + 1)`.
pub fn maglev_compensator(spec: &MaglevSpec, tau_c: TauC) -> Result<RationalTF> {
    spec.validate()?;
    let tc = tau_c.resolve(spec)?;
    RationalTF::new(
        Polynomial::linear(1.0, tc + spec.tau),
        Polynomial::linear(1.0, tc),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsilonVariant {
    /// `p²/k + ε(s + ε²)/(s + q)` for the reduced model.
    ForReduced,
    /// `p²/k + ε(s + ε²)/(s + q d)` with `d = (τ + τ_c)/(τ τ_c)`, for the compensated plant.
    ForCompensated(TauC),
}

/// Stable controller family approaching the norm `p²/k` as `ε → 0`.
pub fn maglev_epsilon_controller(
    spec: &MaglevSpec,
    eps: f64,
    q: f64,
    variant: EpsilonVariant,
) -> Result<RationalTF> {
    spec.validate()?;
    positive("eps", eps)?;
    positive("q", q)?;
    let pole = match variant {
        EpsilonVariant::ForReduced => q,
        EpsilonVariant::ForCompensated(tau_c) => {
            let tc = tau_c.resolve(spec)?;
            q * (spec.tau + tc) / (spec.tau * tc)
        }
    };
    let base = RationalTF::gain(spec.p * spec.p / spec.k);
    let lead = RationalTF::new(
        Polynomial::linear(eps * eps, 1.0).scale(eps),
        Polynomial::linear(pole, 1.0),
    )?;
    Ok(base.add(&lead))
}

/// A plant family that can be built from a configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModelFamily {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameters accepted by `sweep --param`.
    pub parameters: &'static [&'static str],
}

pub const MODEL_FAMILIES: &[ModelFamily] = &[
    ModelFamily {
        name: "explicit",
        summary: "num/den coefficient lists, lowest degree first",
        parameters: &[],
    },
    ModelFamily {
        name: "cyclic",
        summary: "-k/((s+1)^(2m+1)+k), ring of 2m+1 first-order agents",
        parameters: &["m", "k"],
    },
    ModelFamily {
        name: "maglev",
        summary: "k/((p^2-s^2)(tau s+1)) or its reduced/compensated forms",
        parameters: &["p", "tau", "k", "tau_c"],
    },
    ModelFamily {
        name: "repressilator",
        summary: "hD/(1-hD), h = -k/((s+a1)(s+a2)(s+a3)), D Padé delay",
        parameters: &["tau", "k", "alpha1", "alpha2", "alpha3"],
    },
];
