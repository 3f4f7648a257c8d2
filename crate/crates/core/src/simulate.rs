//! Fixed-step time simulation of the positive feedback loop of `g` and `δ`.
//!
//! The closed loop `N_g D_δ / (D_g D_δ - N_g N_δ)` is realized in
//! controllable canonical form and integrated with classical RK4.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti::RationalTF;
use crate::poly::Polynomial;

/// Step size must stay below this fraction of the fastest time constant.
pub const DT_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimInput {
    /// Unit impulse at `t = 0` (direct feedthrough dropped).
    Impulse,
    /// Zero input from a state drawn uniformly from `[-1, 1)^n`.
    RandomInitialState { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub t: Vec<f64>,
    pub y: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn peak_abs(&self) -> f64 {
        self.y.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max |y|` over samples with `t` in `[from, to)` as fractions of the horizon.
    pub fn window_peak(&self, from: f64, to: f64) -> f64 {
        let end = self.t.last().copied().unwrap_or(0.0);
        self.t
            .iter()
            .zip(&self.y)
            .filter(|(t, _)| **t >= from * end && **t < to * end)
            .fold(0.0, |m, (_, y)| m.max(y.abs()))
    }
}

/// Closed-loop transfer function from an input injected at the plant.
pub fn closed_loop(g: &RationalTF, delta: &RationalTF) -> Result<RationalTF> {
    let den = &(g.den() * delta.den()) - &(g.num() * delta.num());
    if den.is_zero() {
        return Err(Error::UnityLoop);
    }
    RationalTF::new(g.num() * delta.den(), den)
}

/// Largest admissible step for `t`.
pub fn max_step(t: &RationalTF) -> Result<f64> {
    let fastest = t.poles()?.iter().fold(0.0f64, |m, p| m.max(p.norm()));
    Ok(if fastest > 0.0 {
        DT_FRACTION / fastest
    } else {
        f64::INFINITY
    })
}

pub fn simulate_linear(
    g: &RationalTF,
    delta: &RationalTF,
    horizon: f64,
    dt: f64,
    input: SimInput,
) -> Result<TimeSeries> {
    simulate_tf(&closed_loop(g, delta)?, horizon, dt, input)
}

pub fn simulate_tf(t: &RationalTF, horizon: f64, dt: f64, input: SimInput) -> Result<TimeSeries> {
    if !(horizon > 0.0 && dt > 0.0 && dt <= horizon) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < dt <= horizon, got dt = {dt}, horizon = {horizon}"
        )));
    }
    if !t.is_proper() {
        return Err(Error::InvalidPlant("closed loop is improper".into()));
    }
    let limit = max_step(t)?;
    if dt >= limit {
        return Err(Error::StepTooLarge {
            dt,
            suggested: 0.5 * limit,
        });
    }
    let ss = Canonical::new(t);
    let n = ss.a.len();
    let mut x = vec![0.0; n];
    match input {
        SimInput::Impulse => {
            if n > 0 {
                x[n - 1] = 1.0;
            }
        }
        SimInput::RandomInitialState { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for xi in &mut x {
                *xi = rng.random_range(-1.0..1.0);
            }
        }
    }
    let steps = (horizon / dt).round() as usize;
    let mut out = TimeSeries {
        t: Vec::with_capacity(steps + 1),
        y: Vec::with_capacity(steps + 1),
    };
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    for step in 0..=steps {
        out.t.push(step as f64 * dt);
        out.y.push(ss.output(&x));
        if step == steps {
            break;
        }
        ss.deriv(&x, &mut k1);
        axpy(&x, 0.5 * dt, &k1, &mut tmp);
        ss.deriv(&tmp, &mut k2);
        axpy(&x, 0.5 * dt, &k2, &mut tmp);
        ss.deriv(&tmp, &mut k3);
        axpy(&x, dt, &k3, &mut tmp);
        ss.deriv(&tmp, &mut k4);
        for i in 0..n {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(out)
}

fn axpy(x: &[f64], h: f64, k: &[f64], out: &mut [f64]) {
    for i in 0..x.len() {
        out[i] = x[i] + h * k[i];
    }
}

/// `x' = A x + B u`, `y = C x` with `A` the companion matrix of the monic denominator.
struct Canonical {
    /// `a_0 .. a_{n-1}` of the monic denominator.
    a: Vec<f64>,
    c: Vec<f64>,
}

impl Canonical {
    fn new(t: &RationalTF) -> Self {
        let den: &Polynomial = t.den();
        let n = den.degree().unwrap_or(0);
        let lead = den.leading();
        let a: Vec<f64> = (0..n).map(|i| den.coeff(i) / lead).collect();
        let bn = t.num().coeff(n) / lead;
        let c = (0..n)
            .map(|i| t.num().coeff(i) / lead - bn * a[i])
            .collect();
        Canonical { a, c }
    }

    fn deriv(&self, x: &[f64], dx: &mut [f64]) {
        let n = x.len();
        if n == 0 {
            return;
        }
        dx[..n - 1].copy_from_slice(&x[1..]);
        dx[n - 1] = -self.a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>();
    }

    fn output(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_impulse() {
        let g = RationalTF::from_coeffs(vec![1.0], vec![1.0, 1.0]).unwrap();
        let ts = simulate_linear(&g, &RationalTF::gain(0.0), 5.0, 0.01, SimInput::Impulse).unwrap();
        for (t, y) in ts.t.iter().zip(&ts.y) {
            assert!((y - (-t).exp()).abs() < 1e-6);
        }
    }

    #[test]
    fn step_limit_enforced() {
        let g = RationalTF::from_coeffs(vec![1.0], vec![100.0, 1.0]).unwrap();
        match simulate_linear(&g, &RationalTF::gain(0.0), 1.0, 0.01, SimInput::Impulse) {
            Err(Error::StepTooLarge { suggested, .. }) => assert!(suggested < 1e-3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_state_is_seeded() {
        let g = RationalTF::from_coeffs(vec![1.0], vec![2.0, 3.0, 1.0]).unwrap();
        let a = simulate_tf(&g, 1.0, 0.01, SimInput::RandomInitialState { seed: 7 }).unwrap();
        let b = simulate_tf(&g, 1.0, 0.01, SimInput::RandomInitialState { seed: 7 }).unwrap();
        let c = simulate_tf(&g, 1.0, 0.01, SimInput::RandomInitialState { seed: 8 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
