//! Real polynomials in `s`, stored lowest degree first.
//!
//! Root finding uses the Aberth–Ehrlich simultaneous iteration seeded from
//! the Newton polygon of the coefficient magnitudes, followed by one guarded
//! Newton polish per root. For simple roots the backward error
//! `|p(z)| / Σ|a_i||z|^i` is typically below `1e-13`; clustered roots of
//! multiplicity `k` lose accuracy roughly like `ε^(1/k)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Band around the imaginary axis: `|Re z| <= AXIS_TOL * max(1, |z|)`.
pub const AXIS_TOL: f64 = 1e-7;

/// Axis roots closer than this (relative) are treated as repeated.
const REPEAT_TOL: f64 = 1e-6;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => write!(f, "s")?,
                1 => write!(f, "{a}s")?,
                _ if a == 1.0 => write!(f, "s^{i}")?,
                _ => write!(f, "{a}s^{i}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Builds a polynomial from coefficients `[a0, a1, ...]`; trailing exact zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Polynomial::constant(1.0)
    }

    /// `c0 + c1 s`
    pub fn linear(c0: f64, c1: f64) -> Self {
        Polynomial::new(vec![c0, c1])
    }

    /// Monic polynomial with the given roots. Complex roots must come in
    /// conjugate pairs; imaginary residue in the product is discarded.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            acc = next;
        }
        Polynomial::new(acc.into_iter().map(|c| c.re).collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient; `0.0` for the zero polynomial.
    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `s^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn scale(&self, k: f64) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(k s)`
    pub fn scale_arg(&self, k: f64) -> Self {
        let mut f = 1.0;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * f);
            f *= k;
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, s: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * s + p;
            p = p * s + c;
        }
        (p, dp)
    }

    /// `Σ |a_i| |s|^i`, the natural scale for residuals at `s`.
    pub fn eval_abs_scale(&self, s: Complex64) -> f64 {
        let r = s.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// All complex roots with multiplicity, conjugate pairs matched.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        match self.degree() {
            None | Some(0) => return Err(Error::NoRoots),
            _ => {}
        }
        // Exact roots at the origin.
        let shift = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        let reduced = Polynomial::new(self.coeffs[shift..].to_vec());
        let mut roots = vec![Complex64::new(0.0, 0.0); shift];
        let n = reduced.degree().unwrap_or(0);
        match n {
            0 => {}
            1 => roots.push(Complex64::new(-reduced.coeffs[0] / reduced.coeffs[1], 0.0)),
            2 => roots.extend(quadratic_roots(
                reduced.coeffs[2],
                reduced.coeffs[1],
                reduced.coeffs[0],
            )),
            _ => {
                let mut z = aberth(&reduced);
                for zi in z.iter_mut() {
                    *zi = newton_polish(&reduced, *zi);
                }
                roots.extend(z);
            }
        }
        Ok(pair_conjugates(roots))
    }

    /// Routh–Hurwitz test on the coefficient table.
    ///
    /// Returns `Degenerate` when a first-column entry or a whole row vanishes;
    /// callers then fall back to [`Polynomial::roots`].
    pub fn routh_hurwitz(&self) -> Result<StabilityVerdict> {
        let n = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::NoRoots),
            Some(n) => n,
        };
        // Highest degree first.
        let a: Vec<f64> = self.coeffs.iter().rev().copied().collect();
        let width = n / 2 + 1;
        let mut prev: Vec<f64> = (0..width)
            .map(|j| a.get(2 * j).copied().unwrap_or(0.0))
            .collect();
        let mut cur: Vec<f64> = (0..width)
            .map(|j| a.get(2 * j + 1).copied().unwrap_or(0.0))
            .collect();
        let mut first_col = vec![prev[0]];
        let degenerate = || StabilityVerdict {
            kind: StabilityKind::Degenerate,
            unstable_count: 0,
            imaginary_axis_roots: Vec::new(),
        };
        // Error bound carried per entry for the row being consumed.
        let mut cur_bound: Vec<f64> = cur.iter().map(|c| c.abs()).collect();
        for row in 1..=n {
            let lead = cur[0];
            let row_scale = cur_bound.iter().fold(0.0f64, |m, &b| m.max(b));
            if row_scale == 0.0 || lead.abs() <= 1e-10 * cur_bound[0].max(f64::MIN_POSITIVE) {
                return Ok(degenerate());
            }
            first_col.push(lead);
            if row == n {
                break;
            }
            let mut next = vec![0.0; width];
            let mut next_bound = vec![0.0; width];
            for j in 0..width - 1 {
                let t1 = lead * prev[j + 1];
                let t2 = prev[0] * cur[j + 1];
                next[j] = (t1 - t2) / lead;
                next_bound[j] = (t1.abs() + t2.abs()) / lead.abs();
            }
            prev = cur;
            cur = next;
            cur_bound = next_bound;
        }
        let changes = first_col
            .windows(2)
            .filter(|w| w[0].signum() != w[1].signum())
            .count();
        Ok(if changes == 0 {
            StabilityVerdict {
                kind: StabilityKind::Stable,
                unstable_count: 0,
                imaginary_axis_roots: Vec::new(),
            }
        } else {
            StabilityVerdict {
                kind: StabilityKind::Unstable,
                unstable_count: changes,
                imaginary_axis_roots: Vec::new(),
            }
        })
    }

    /// Stability verdict from the computed roots.
    pub fn stability(&self) -> Result<StabilityVerdict> {
        Ok(StabilityVerdict::from_roots(&self.roots()?))
    }
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // Cancellation-free form.
        let sgn = if b >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (b + sgn * sq);
        if q == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a).abs();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Starting points on circles given by the upper convex hull of `(i, log|a_i|)`.
fn newton_polygon_start(p: &Polynomial) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let pts: Vec<(f64, f64)> = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| (i as f64, c.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly above the chord.
            if (y2 - y1) * (pt.0 - x1) <= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    let offset = 0.4;
    for w in hull.windows(2) {
        let (i, yi) = w[0];
        let (j, yj) = w[1];
        let k = (j - i) as usize;
        let r = ((yi - yj) / (j - i)).exp();
        for m in 0..k {
            let ang = 2.0 * std::f64::consts::PI * m as f64 / k as f64
                + offset
                + 2.0 * std::f64::consts::PI * i / n as f64;
            out.push(Complex64::from_polar(r, ang));
        }
    }
    out
}

fn aberth(p: &Polynomial) -> Vec<Complex64> {
    let mut z = newton_polygon_start(p);
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..1000 {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (pv, dpv) = p.eval_with_derivative(z[k]);
            if pv == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let ratio = pv / dpv;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = ratio;
            }
            z[k] -= step;
            // Converged once the correction is at the rounding level of |z|
            // or the residual is inside the evaluation noise.
            let noise = 4.0 * f64::EPSILON * p.eval_abs_scale(z[k]);
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(f64::MIN_POSITIVE)
                || p.eval(z[k]).norm() <= noise
            {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

fn newton_polish(p: &Polynomial, z: Complex64) -> Complex64 {
    let (pv, dpv) = p.eval_with_derivative(z);
    if dpv.norm() == 0.0 {
        return z;
    }
    let cand = z - pv / dpv;
    if cand.re.is_finite() && cand.im.is_finite() && p.eval(cand).norm() < pv.norm() {
        cand
    } else {
        z
    }
}

/// Snaps near-real roots onto the real axis and averages conjugate partners.
fn pair_conjugates(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let z = roots[i];
        let real_tol = 1e-12 * z.norm().max(1.0);
        if z.im.abs() <= real_tol {
            roots[i] = Complex64::new(z.re, 0.0);
            used[i] = true;
            continue;
        }
        let partner = (0..n).filter(|&j| j != i && !used[j]).min_by(|&a, &b| {
            let da = (roots[a] - z.conj()).norm();
            let db = (roots[b] - z.conj()).norm();
            da.total_cmp(&db)
        });
        used[i] = true;
        if let Some(j) = partner {
            let w = roots[j];
            let avg = (z + w.conj()) * 0.5;
            let upper = Complex64::new(avg.re, avg.im.abs());
            roots[i] = upper;
            roots[j] = upper.conj();
            used[j] = true;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Whether `z` lies in the imaginary-axis band.
pub fn on_axis(z: Complex64) -> bool {
    z.re.abs() <= AXIS_TOL * z.norm().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityKind {
    Stable,
    MarginallyStable,
    Unstable,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub kind: StabilityKind,
    pub unstable_count: usize,
    /// Frequencies `ω >= 0` of the axis roots, one entry per conjugate pair.
    pub imaginary_axis_roots: Vec<f64>,
}

impl StabilityVerdict {
    /// Classifies a root set. Repeated axis roots make the verdict `Unstable`
    /// even when no root lies in the open right half plane.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let unstable_count = roots.iter().filter(|z| !on_axis(**z) && z.re > 0.0).count();
        let axis: Vec<Complex64> = roots.iter().copied().filter(|z| on_axis(*z)).collect();
        let mut repeated = false;
        for (i, a) in axis.iter().enumerate() {
            for b in &axis[i + 1..] {
                if (a - b).norm() <= REPEAT_TOL * a.norm().max(1.0) {
                    repeated = true;
                }
            }
        }
        let mut freqs: Vec<f64> = axis.iter().filter(|z| z.im >= 0.0).map(|z| z.im).collect();
        freqs.sort_by(f64::total_cmp);
        let kind = if unstable_count > 0 || repeated {
            StabilityKind::Unstable
        } else if axis.is_empty() {
            StabilityKind::Stable
        } else {
            StabilityKind::MarginallyStable
        };
        StabilityVerdict {
            kind,
            unstable_count,
            imaginary_axis_roots: freqs,
        }
    }

    /// True when every root lies in the closed left half plane.
    pub fn is_clhp(&self) -> bool {
        matches!(
            self.kind,
            StabilityKind::Stable | StabilityKind::MarginallyStable
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn algebra_examples() {
        let p = Polynomial::linear(1.0, 1.0);
        assert_eq!((&p * &p).coeffs(), &[1.0, 2.0, 1.0]);

        let q = Polynomial::new(vec![1.0, 0.0, 1.0]);
        let z = &q - &q;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);

        let p7 = p.pow(3) * p.pow(4);
        let expected: Vec<f64> = (0..=7).map(|k| binomial(7, k)).collect();
        assert_eq!(p7.coeffs(), expected.as_slice());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::new(vec![0.0]).degree(), None);
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        let g1den = &Polynomial::linear(1.0, 1.0).pow(3) + &Polynomial::constant(20.0);
        assert_eq!(g1den.eval(c(0.0, 0.0)), c(21.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[0.0, 2.0]);
        assert!(Polynomial::constant(5.0).derivative().is_zero());
        let d = Polynomial::linear(1.0, 1.0).pow(7).derivative();
        let expected: Vec<f64> = (0..=6).map(|k| 7.0 * binomial(6, k)).collect();
        assert_eq!(d.coeffs(), expected.as_slice());
    }

    #[test]
    fn roots_of_constant_rejected() {
        assert!(matches!(
            Polynomial::constant(3.0).roots(),
            Err(Error::NoRoots)
        ));
        assert!(matches!(Polynomial::zero().roots(), Err(Error::NoRoots)));
    }

    #[test]
    fn roots_unit_circle() {
        let r = Polynomial::new(vec![1.0, 0.0, 1.0]).roots().unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn roots_cyclic_m1() {
        // (s+1)^3 + 20: shifted cube roots of -20.
        let p = &Polynomial::linear(1.0, 1.0).pow(3) + &Polynomial::constant(20.0);
        let r = p.roots().unwrap();
        let cbrt = 20f64.cbrt();
        let real: Vec<_> = r.iter().filter(|z| z.im == 0.0).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re - (-1.0 - cbrt)).abs() < 1e-12);
        assert!((-1.0 - cbrt + 3.7144).abs() < 1e-4);
        let pair: Vec<_> = r.iter().filter(|z| z.im != 0.0).collect();
        assert_eq!(pair.len(), 2);
        let want_re = cbrt * (std::f64::consts::PI / 3.0).cos() - 1.0;
        for z in pair {
            assert!((z.re - want_re).abs() < 1e-12);
            assert!((z.re - 0.3572).abs() < 1e-4);
        }
        assert_eq!(r.iter().filter(|z| z.re > 0.0).count(), 2);
    }

    #[test]
    fn roots_factored_cubic() {
        let p = &Polynomial::linear(2.0, 1.0) * &Polynomial::new(vec![4.0, 0.5, 1.0]);
        let r = p.roots().unwrap();
        let im = (4.0f64 - 0.0625).sqrt();
        let want = [c(-2.0, 0.0), c(-0.25, -im), c(-0.25, im)];
        for w in want {
            assert!(r.iter().any(|z| (z - w).norm() < 1e-9), "missing {w}");
        }
        assert!((im - 1.9843).abs() < 1e-4);
    }

    #[test]
    fn roots_with_zero_root() {
        let p = Polynomial::new(vec![0.0, 0.0, -1.0, 1.0]);
        let r = p.roots().unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn routh_examples() {
        let v = Polynomial::new(vec![1.0, 2.0, 1.0])
            .routh_hurwitz()
            .unwrap();
        assert_eq!(v.kind, StabilityKind::Stable);
        let v = Polynomial::new(vec![-1.0, 0.0, 1.0])
            .routh_hurwitz()
            .unwrap();
        // s^2 - 1 has a zero s^1 row.
        assert_eq!(v.kind, StabilityKind::Degenerate);
        let v = Polynomial::new(vec![-1.0, 1.0, 1.0])
            .routh_hurwitz()
            .unwrap();
        assert_eq!(v.kind, StabilityKind::Unstable);
        assert_eq!(v.unstable_count, 1);
        assert!(matches!(
            Polynomial::zero().routh_hurwitz(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn routh_zero_constant_is_degenerate() {
        let v = Polynomial::new(vec![0.0, 1.0, 1.0])
            .routh_hurwitz()
            .unwrap();
        assert_eq!(v.kind, StabilityKind::Degenerate);
    }

    #[test]
    fn verdict_from_roots() {
        let v = StabilityVerdict::from_roots(&[c(-1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0)]);
        assert_eq!(v.kind, StabilityKind::MarginallyStable);
        assert_eq!(v.imaginary_axis_roots, vec![2.0]);
        let v = StabilityVerdict::from_roots(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(v.kind, StabilityKind::Unstable);
        assert_eq!(v.unstable_count, 0);
        let v = StabilityVerdict::from_roots(&[c(0.5, 1.0), c(0.5, -1.0), c(-1.0, 0.0)]);
        assert_eq!(v.kind, StabilityKind::Unstable);
        assert_eq!(v.unstable_count, 2);
    }

    #[test]
    fn display_reads_naturally() {
        let p = Polynomial::new(vec![-1.0, 0.0, 2.0, 1.0]);
        assert_eq!(p.to_string(), "s^3 + 2s^2 - 1");
    }
}
