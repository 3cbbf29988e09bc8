//! Lévy characteristics `(a₀, b₀, ν₀)` of the integrator Λ and its cumulant
//!
//! ```text
//! K(s) = −i s a₀ + ½ s² b₀ − ∫ (e^{isy} − 1 − i s y 1{|y| ≤ 1}) ν₀(dy)
//! ```
//!
//! Parametric Lévy measures (stable, compound Poisson) are evaluated in
//! closed form. Tabulated densities are piecewise linear between their nodes
//! and integrated exactly cell by cell; below the first node they continue as
//! a power law, handled through its Taylor expansion.
//!
//! `Re K(s) = ψ(s²)` for a Bernstein function ψ; nothing here relies on it.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::quad;
use crate::special::{gamma, EULER_GAMMA};

/// Innermost magnitude a tabulated density may start at.
pub const TABULATED_CUTOFF: f64 = 1e-8;

/// One atom of a compound-Poisson jump law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub atom: f64,
    pub weight: f64,
}

/// Lévy density sampled on a log-spaced magnitude grid, separately for
/// positive and negative jumps. Between nodes the density is linear in `y`;
/// below the first node it continues as the power law through the first
/// two nodes; above the last node it is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedDensity {
    magnitudes: Vec<f64>,
    pos: Vec<f64>,
    neg: Vec<f64>,
    /// density ~ y^{-p} below the first node, per side (pos, neg)
    inner_exponent: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Pos = 0,
    Neg = 1,
}

impl TabulatedDensity {
    /// `magnitudes` must be increasing, log-spaced, start at or above
    /// [`TABULATED_CUTOFF`] and below 1.
    pub fn new(magnitudes: Vec<f64>, pos: Vec<f64>, neg: Vec<f64>) -> Result<Self> {
        let n = magnitudes.len();
        if n < 2 || pos.len() != n || neg.len() != n {
            return Err(invalid!("tabulated density needs ≥ 2 nodes and matching value columns"));
        }
        if magnitudes[0] < TABULATED_CUTOFF * (1.0 - 1e-12) || magnitudes[0] >= 1.0 {
            return Err(invalid!(
                "first tabulated magnitude {} must lie in [{TABULATED_CUTOFF:e}, 1)",
                magnitudes[0]
            ));
        }
        if magnitudes.windows(2).any(|w| !(w[1] > w[0])) || magnitudes.iter().any(|m| !m.is_finite()) {
            return Err(invalid!("tabulated magnitudes must be finite and strictly increasing"));
        }
        let ratio = (magnitudes[1] / magnitudes[0]).ln();
        for w in magnitudes.windows(2) {
            if ((w[1] / w[0]).ln() - ratio).abs() > 1e-6 * ratio.abs().max(1e-12) {
                return Err(invalid!("tabulated magnitudes must be log-spaced"));
            }
        }
        if pos.iter().chain(neg.iter()).any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(invalid!("tabulated densities must be finite and non-negative"));
        }
        let exponent = |d: &[f64]| -> f64 {
            if d[0] > 0.0 && d[1] > 0.0 {
                -(d[1] / d[0]).ln() / (magnitudes[1] / magnitudes[0]).ln()
            } else {
                0.0
            }
        };
        let inner_exponent = [exponent(&pos), exponent(&neg)];
        for (k, p) in inner_exponent.iter().enumerate() {
            let d0 = if k == 0 { pos[0] } else { neg[0] };
            if d0 > 0.0 && *p >= 3.0 {
                return Err(invalid!(
                    "tabulated density grows like |y|^-{p:.3} near 0; ∫ y² ν(dy) diverges"
                ));
            }
        }
        Ok(TabulatedDensity { magnitudes, pos, neg, inner_exponent })
    }

    /// Samples `pos(y)` and `neg(y)` (density at `+y` and `−y`) on `n`
    /// log-spaced magnitudes in `[y_min, y_max]`.
    pub fn log_spaced(
        y_min: f64,
        y_max: f64,
        n: usize,
        pos: impl Fn(f64) -> f64,
        neg: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if n < 2 || !(y_max > y_min && y_min > 0.0) {
            return Err(invalid!("log-spaced grid needs n ≥ 2 and 0 < y_min < y_max"));
        }
        let step = (y_max / y_min).ln() / (n - 1) as f64;
        let mags: Vec<f64> = (0..n).map(|k| y_min * (step * k as f64).exp()).collect();
        let p = mags.iter().map(|&y| pos(y)).collect();
        let q = mags.iter().map(|&y| neg(y)).collect();
        Self::new(mags, p, q)
    }

    /// Builds from signed `(y, density)` samples; the set of `|y|` must be
    /// symmetric about zero.
    pub fn from_signed_samples(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.iter().any(|s| s.0 == 0.0) {
            return Err(invalid!("tabulated Lévy density must exclude y = 0"));
        }
        let mut pos: Vec<(f64, f64)> = samples.iter().filter(|s| s.0 > 0.0).copied().collect();
        let mut neg: Vec<(f64, f64)> =
            samples.iter().filter(|s| s.0 < 0.0).map(|s| (-s.0, s.1)).collect();
        pos.sort_by(|a, b| a.0.total_cmp(&b.0));
        neg.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pos.len() != neg.len()
            || pos.iter().zip(neg.iter()).any(|(a, b)| (a.0 - b.0).abs() > 1e-12 * a.0)
        {
            return Err(invalid!("tabulated Lévy grid must be symmetric about 0"));
        }
        Self::new(
            pos.iter().map(|s| s.0).collect(),
            pos.iter().map(|s| s.1).collect(),
            neg.iter().map(|s| s.1).collect(),
        )
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn is_symmetric(&self) -> bool {
        self.pos == self.neg
    }

    fn values(&self, side: Side) -> &[f64] {
        match side {
            Side::Pos => &self.pos,
            Side::Neg => &self.neg,
        }
    }

    fn y_min(&self) -> f64 {
        self.magnitudes[0]
    }

    fn y_max(&self) -> f64 {
        self.magnitudes[self.magnitudes.len() - 1]
    }

    /// Density at `y` (signed).
    pub fn density(&self, y: f64) -> f64 {
        let side = if y > 0.0 { Side::Pos } else { Side::Neg };
        let y = y.abs();
        let m = &self.magnitudes;
        if y < m[0] {
            return self.inner_law(side).density(y);
        }
        if y > self.y_max() {
            return 0.0;
        }
        let k = m.partition_point(|&x| x <= y).clamp(1, m.len() - 1) - 1;
        self.cell_law(side, k).density(y)
    }

    fn inner_law(&self, side: Side) -> CellLaw {
        let d0 = self.values(side)[0];
        let p = self.inner_exponent[side as usize];
        CellLaw::Power { amp: d0 * self.y_min().powf(p), q: p }
    }

    /// Log-log interpolation where both nodes are positive, linear otherwise.
    fn cell_law(&self, side: Side, k: usize) -> CellLaw {
        let d = self.values(side);
        let m = &self.magnitudes;
        if d[k] > 0.0 && d[k + 1] > 0.0 {
            let q = -(d[k + 1] / d[k]).ln() / (m[k + 1] / m[k]).ln();
            CellLaw::Power { amp: d[k] * m[k].powf(q), q }
        } else {
            let c1 = (d[k + 1] - d[k]) / (m[k + 1] - m[k]);
            CellLaw::Linear { c0: d[k] - c1 * m[k], c1 }
        }
    }

    /// Pieces `(a, b, law)` of the density on `(0, ∞) ∩ [lo, hi]`, including
    /// the power-law region below the grid, split at `y = 1`.
    fn cells(&self, side: Side, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64, CellLaw)> + '_ {
        let m = &self.magnitudes;
        let inner = (0.0, m[0], self.inner_law(side));
        let grid = (0..m.len() - 1).map(move |k| (m[k], m[k + 1], self.cell_law(side, k)));
        core::iter::once(inner)
            .chain(grid)
            .filter(|(_, _, law)| !law.is_zero())
            .flat_map(move |(a, b, law)| {
                let a = a.max(lo);
                let b = b.min(hi);
                let split = a < 1.0 && b > 1.0;
                let first = if split { (a, 1.0) } else { (a, b) };
                let second = if split { Some((1.0, b)) } else { None };
                core::iter::once(first)
                    .chain(second)
                    .filter(|(a, b)| b > a)
                    .map(move |(a, b)| (a, b, law))
            })
    }

    /// `∫_lo^hi y^k ν_side(y) dy` over `(0, ∞)`, exact for the interpolant.
    fn moment(&self, side: Side, k: i32, lo: f64, hi: f64) -> f64 {
        self.cells(side, lo, hi).map(|(a, b, law)| law.moment(a, b, k)).sum()
    }

    fn moment_both(&self, k: i32, lo: f64, hi: f64) -> f64 {
        self.moment(Side::Pos, k, lo, hi) + self.moment(Side::Neg, k, lo, hi)
    }

    /// `(∫ (1 − cos(sy)) ν_side(dy), ∫ (sin(sy) − sy 1{y ≤ 1}) ν_side(dy))`
    /// over `y > 0`, for `s > 0`.
    fn fourier(&self, side: Side, s: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, b, law) in self.cells(side, 0.0, f64::INFINITY) {
            let (r, i) = law.fourier(a, b, s, b <= 1.0);
            re += r;
            im += i;
        }
        (re, im)
    }
}

/// Density on one cell: `c0 + c1·y` or `amp · y^{−q}`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum CellLaw {
    Linear { c0: f64, c1: f64 },
    Power { amp: f64, q: f64 },
}

/// Below this value of `s·y` cell integrals switch to Taylor series.
const SERIES_SWITCH: f64 = 0.5;
/// Above this value of `s·y` power-law cells use the asymptotic expansion.
const ASYMPTOTIC_SWITCH: f64 = 40.0;

impl CellLaw {
    fn is_zero(&self) -> bool {
        match *self {
            CellLaw::Linear { c0, c1 } => c0 == 0.0 && c1 == 0.0,
            CellLaw::Power { amp, .. } => amp == 0.0,
        }
    }

    fn density(&self, y: f64) -> f64 {
        match *self {
            CellLaw::Linear { c0, c1 } => c0 + c1 * y,
            CellLaw::Power { amp, q } => amp * y.powf(-q),
        }
    }

    /// `∫_a^b y^k ν(y) dy`.
    fn moment(&self, a: f64, b: f64, k: i32) -> f64 {
        match *self {
            CellLaw::Linear { c0, c1 } => {
                let p = |n: i32| (b.powi(n) - a.powi(n)) / n as f64;
                c0 * p(k + 1) + c1 * p(k + 2)
            }
            CellLaw::Power { amp, q } => {
                let e = k as f64 + 1.0 - q;
                if e.abs() < 1e-12 {
                    amp * (b / a).ln()
                } else {
                    amp * (b.powf(e) - a.powf(e)) / e
                }
            }
        }
    }

    /// `(∫_a^b (1 − cos(sy)) ν, ∫_a^b (sin(sy) − [compensated]·sy) ν)`.
    fn fourier(&self, a: f64, b: f64, s: f64, compensated: bool) -> (f64, f64) {
        let t1 = (SERIES_SWITCH / s).clamp(a, b);
        let mut re = 0.0;
        let mut im = 0.0;
        if t1 > a {
            let (r, i) = self.taylor(a, t1, s, compensated);
            re += r;
            im += i;
        }
        if t1 < b {
            let (r, i) = match *self {
                CellLaw::Linear { c0, c1 } => linear_fourier(t1, b, c0, c1, s),
                CellLaw::Power { amp, q } => power_fourier(t1, b, amp, q, s),
            };
            re += r;
            im += i;
            if compensated {
                im -= s * self.moment(t1, b, 1);
            }
        }
        (re, im)
    }

    fn taylor(&self, a: f64, b: f64, s: f64, compensated: bool) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let mut sign = 1.0;
        let mut fact = 1.0;
        // n! for n = 1, 2, …; odd n feed sin, even n feed 1 − cos
        for n in 1..=22 {
            fact *= n as f64;
            if n % 2 == 1 {
                if n > 1 || !compensated {
                    im += sign * s.powi(n) / fact * self.moment(a, b, n);
                }
            } else {
                re += sign * s.powi(n) / fact * self.moment(a, b, n);
                sign = -sign;
            }
        }
        (re, im)
    }
}

/// `(∫_a^b (1 − cos(sy))(c0 + c1 y) dy, ∫_a^b sin(sy)(c0 + c1 y) dy)`.
fn linear_fourier(a: f64, b: f64, c0: f64, c1: f64, s: f64) -> (f64, f64) {
    let (sa, ca) = (s * a).sin_cos();
    let (sb, cb) = (s * b).sin_cos();
    let base = c0 * (b - a) + c1 * (b * b - a * a) / 2.0;
    let cos_part = c0 * (sb - sa) / s + c1 * ((cb - ca) / (s * s) + (b * sb - a * sa) / s);
    let sin_part = c0 * (ca - cb) / s + c1 * ((sb - sa) / (s * s) - (b * cb - a * ca) / s);
    (base - cos_part, sin_part)
}

/// `(∫_a^b (1 − cos(sy)) amp y^{−q} dy, ∫_a^b sin(sy) amp y^{−q} dy)` for
/// `s·a ≥ SERIES_SWITCH`: Gauss–Kronrod panels of at most one radian while
/// `s·y < ASYMPTOTIC_SWITCH`, the asymptotic expansion beyond.
fn power_fourier(a: f64, b: f64, amp: f64, q: f64, s: f64) -> (f64, f64) {
    let g = |y: f64| amp * y.powf(-q);
    let t2 = (ASYMPTOTIC_SWITCH / s).clamp(a, b);
    let mut re = 0.0;
    let mut im = 0.0;
    let mut lo = a;
    while lo < t2 {
        let hi = (lo + (1.0 / s).min(lo)).min(t2);
        let (r, i) = quad::gk15_pair(lo, hi, |y| {
            let half = (0.5 * s * y).sin();
            (2.0 * half * half * g(y), (s * y).sin() * g(y))
        });
        re += r;
        im += i;
        lo = hi;
    }
    if t2 < b {
        // ∫ e^{isy} g = [ g(y) e^{isy}/(is) · Σ_k (q)_k / (isy)^k ]
        let antiderivative = |y: f64| -> Complex64 {
            let z = Complex64::new(0.0, s * y).inv();
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = term;
            for k in 0..60 {
                let next = term * z * (q + k as f64);
                if next.norm() >= term.norm() {
                    break;
                }
                term = next;
                sum += term;
                if term.norm() < 1e-18 * sum.norm() {
                    break;
                }
            }
            let (sn, cs) = (s * y).sin_cos();
            Complex64::new(cs, sn) * sum * (g(y) / s) * Complex64::new(0.0, -1.0)
        };
        let e = antiderivative(b) - antiderivative(t2);
        re += CellLaw::Power { amp, q }.moment(t2, b, 0) - e.re;
        im += e.im;
    }
    (re, im)
}

/// The Lévy measure ν₀.
#[derive(Debug, Clone, PartialEq)]
pub enum LevyMeasure {
    None,
    /// `ν(dy) = c₊ y^{−1−α} dy` on `y > 0` and `c₋ |y|^{−1−α} dy` on `y < 0`.
    Stable { alpha: f64, c_pos: f64, c_neg: f64 },
    /// Rate λ times a normalized finite jump law.
    CompoundPoisson { rate: f64, jumps: Vec<Jump> },
    Tabulated(TabulatedDensity),
}

/// `1 − cos u` without cancellation near 0.
fn one_minus_cos(u: f64) -> f64 {
    let h = (0.5 * u).sin();
    2.0 * h * h
}

/// `sin u − u`, by series where the difference cancels.
fn sin_minus_id(u: f64) -> f64 {
    if u.abs() > 0.5 {
        return u.sin() - u;
    }
    let u2 = u * u;
    let mut term = -u * u2 / 6.0;
    let mut sum = term;
    let mut k = 3.0;
    while term.abs() > 1e-17 * sum.abs() {
        term *= -u2 / ((k + 1.0) * (k + 2.0));
        sum += term;
        k += 2.0;
    }
    sum
}

/// `∫_R (1 − cos(sy)) |y|^{−1−α} dy / |s|^α = π / (Γ(1+α) sin(πα/2))`.
pub fn stable_constant(alpha: f64) -> f64 {
    PI / (gamma(1.0 + alpha) * (PI * alpha / 2.0).sin())
}

impl LevyMeasure {
    pub fn symmetric_stable(alpha: f64, scale: f64) -> Self {
        LevyMeasure::Stable { alpha, c_pos: scale, c_neg: scale }
    }

    /// Symmetric stable measure scaled so that `Re K(1) = 1`.
    pub fn calibrated_stable(alpha: f64) -> Self {
        let c = 1.0 / stable_constant(alpha);
        LevyMeasure::symmetric_stable(alpha, c)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LevyMeasure::None => Ok(()),
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                if !(*alpha > 0.0 && *alpha < 2.0) {
                    return Err(invalid!("stable index α = {alpha} must lie in (0, 2)"));
                }
                if !(c_pos.is_finite() && c_neg.is_finite() && *c_pos >= 0.0 && *c_neg >= 0.0)
                    || *c_pos + *c_neg <= 0.0
                {
                    return Err(invalid!("stable scales must be non-negative with positive sum"));
                }
                Ok(())
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                if !(rate.is_finite() && *rate > 0.0) {
                    return Err(invalid!("compound-Poisson rate must be positive"));
                }
                if jumps.is_empty() {
                    return Err(invalid!("compound-Poisson jump law is empty"));
                }
                if jumps.iter().any(|j| !(j.weight > 0.0 && j.atom.is_finite() && j.weight.is_finite())) {
                    return Err(invalid!("jump weights must be positive and atoms finite"));
                }
                let total: f64 = jumps.iter().map(|j| j.weight).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(invalid!("jump weights sum to {total}, not 1"));
                }
                Ok(())
            }
            LevyMeasure::Tabulated(t) => {
                let mass = t.moment_both(2, 0.0, 1.0) + t.moment_both(0, 1.0, f64::INFINITY);
                if !mass.is_finite() {
                    return Err(invalid!("∫ min(1, y²) ν(dy) is not finite"));
                }
                Ok(())
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, LevyMeasure::None)
    }

    /// ν(A) = ν(−A) for all A.
    pub fn is_symmetric(&self) -> bool {
        match self {
            LevyMeasure::None => true,
            LevyMeasure::Stable { c_pos, c_neg, .. } => c_pos == c_neg,
            LevyMeasure::CompoundPoisson { jumps, .. } => {
                let mass_at = |a: f64| -> f64 { jumps.iter().filter(|j| j.atom == a).map(|j| j.weight).sum() };
                jumps.iter().all(|j| (mass_at(j.atom) - mass_at(-j.atom)).abs() <= 1e-14)
            }
            LevyMeasure::Tabulated(t) => t.is_symmetric(),
        }
    }

    /// `(Re, Im)` of `−∫ (e^{isy} − 1 − isy 1{|y|≤1}) ν(dy)` for `s ≥ 0`.
    fn exponent_nonneg(&self, s: f64) -> Result<(f64, f64)> {
        debug_assert!(s >= 0.0);
        if s == 0.0 {
            return Ok((0.0, 0.0));
        }
        Ok(match self {
            LevyMeasure::None => (0.0, 0.0),
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                let re = 0.5 * (c_pos + c_neg) * stable_constant(*alpha) * s.powf(*alpha);
                let im = -(c_pos - c_neg) * stable_odd_integral(*alpha, s);
                (re, im)
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                let mut re = 0.0;
                let mut im = 0.0;
                for j in jumps {
                    let u = s * j.atom;
                    re += j.weight * one_minus_cos(u);
                    im -= j.weight * if j.atom.abs() <= 1.0 { sin_minus_id(u) } else { u.sin() };
                }
                (rate * re, rate * im)
            }
            LevyMeasure::Tabulated(t) => {
                let (re_pos, im_pos) = t.fourier(Side::Pos, s);
                let (re_neg, im_neg) = t.fourier(Side::Neg, s);
                ((re_pos + re_neg).max(0.0), -(im_pos - im_neg))
            }
        })
    }

    /// `∫ min(1, y² v²) ν(dy)`.
    pub fn jump_mass(&self, v: f64) -> Result<f64> {
        let w = v.abs();
        if w == 0.0 {
            return Ok(0.0);
        }
        Ok(match self {
            LevyMeasure::None => 0.0,
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                (c_pos + c_neg) * w.powf(*alpha) * 2.0 / (alpha * (2.0 - alpha))
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                rate * jumps.iter().map(|j| j.weight * (j.atom * w).powi(2).min(1.0)).sum::<f64>()
            }
            LevyMeasure::Tabulated(t) => {
                let cut = 1.0 / w;
                w * w * t.moment_both(2, 0.0, cut) + t.moment_both(0, cut, f64::INFINITY)
            }
        })
    }

    /// `∫ y (1{|y v| ≤ 1} − 1{|y| ≤ 1}) ν(dy)`, the compensator shift a
    /// kernel value `v` induces in the drift condition.
    pub fn drift_shift(&self, v: f64) -> Result<f64> {
        let w = v.abs();
        if w == 0.0 || w == 1.0 {
            return Ok(0.0);
        }
        // y ranges over (1, 1/w] with sign +1 when w < 1, over (1/w, 1] with −1 otherwise.
        let (lo, hi, sign) = if w < 1.0 { (1.0, 1.0 / w, 1.0) } else { (1.0 / w, 1.0, -1.0) };
        Ok(match self {
            LevyMeasure::None => 0.0,
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                let int = if (alpha - 1.0).abs() < 1e-14 {
                    (hi / lo).ln()
                } else {
                    (hi.powf(1.0 - alpha) - lo.powf(1.0 - alpha)) / (1.0 - alpha)
                };
                sign * (c_pos - c_neg) * int
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                rate * jumps
                    .iter()
                    .map(|j| {
                        let a = j.atom.abs();
                        let keep = if (j.atom * v).abs() <= 1.0 { 1.0 } else { 0.0 };
                        let base = if a <= 1.0 { 1.0 } else { 0.0 };
                        j.weight * j.atom * (keep - base)
                    })
                    .sum::<f64>()
            }
            LevyMeasure::Tabulated(t) => {
                sign * (t.moment(Side::Pos, 1, lo, hi) - t.moment(Side::Neg, 1, lo, hi))
            }
        })
    }

    /// Limit of `drift_shift(v)` as `v → 0`, or `None` when it diverges.
    fn drift_shift_at_zero(&self) -> Option<f64> {
        match self {
            LevyMeasure::None => Some(0.0),
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                if c_pos == c_neg {
                    Some(0.0)
                } else if *alpha > 1.0 {
                    Some((c_pos - c_neg) / (alpha - 1.0))
                } else {
                    None
                }
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => Some(
                rate * jumps.iter().filter(|j| j.atom.abs() > 1.0).map(|j| j.weight * j.atom).sum::<f64>(),
            ),
            LevyMeasure::Tabulated(t) => {
                Some(t.moment(Side::Pos, 1, 1.0, f64::INFINITY) - t.moment(Side::Neg, 1, 1.0, f64::INFINITY))
            }
        }
    }
}

/// `I(s) = ∫_0^∞ (sin(sy) − sy 1{y ≤ 1}) y^{−1−α} dy`, odd in `s`.
fn stable_odd_integral(alpha: f64, s: f64) -> f64 {
    let w = s.abs();
    if w == 0.0 {
        return 0.0;
    }
    let val = if (alpha - 1.0).abs() < 1e-14 {
        w * (1.0 - EULER_GAMMA - w.ln())
    } else {
        let a = gamma(1.0 - alpha) * (PI * alpha / 2.0).sin() / alpha;
        w.powf(alpha) * a - w / (1.0 - alpha)
    };
    if s < 0.0 {
        -val
    } else {
        val
    }
}

/// `K(s)`. The real part is non-negative by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantValue {
    pub re: f64,
    pub im: f64,
}

impl CumulantValue {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Lévy characteristics of the integrator.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyTriplet {
    drift: f64,
    gaussian: f64,
    measure: LevyMeasure,
}

impl LevyTriplet {
    pub fn new(drift: f64, gaussian: f64, measure: LevyMeasure) -> Result<Self> {
        if !drift.is_finite() {
            return Err(invalid!("drift a₀ must be finite"));
        }
        if !(gaussian.is_finite() && gaussian >= 0.0) {
            return Err(invalid!("gaussian coefficient b₀ = {gaussian} must be ≥ 0"));
        }
        measure.validate()?;
        if gaussian == 0.0 && drift == 0.0 && measure.is_none() {
            return Err(Error::Degenerate(String::from(
                "a₀ = 0, b₀ = 0 and ν₀ = 0: the field is a.s. constant",
            )));
        }
        Ok(LevyTriplet { drift, gaussian, measure })
    }

    pub fn gaussian(b0: f64) -> Result<Self> {
        Self::new(0.0, b0, LevyMeasure::None)
    }

    pub fn symmetric_stable(alpha: f64, scale: f64) -> Result<Self> {
        Self::new(0.0, 0.0, LevyMeasure::symmetric_stable(alpha, scale))
    }

    /// Symmetric α-stable integrator normalized to `Re K(s) = |s|^α`.
    pub fn calibrated_stable(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(invalid!("stable index α = {alpha} must lie in (0, 2)"));
        }
        Self::new(0.0, 0.0, LevyMeasure::calibrated_stable(alpha))
    }

    pub fn compound_poisson(rate: f64, jumps: Vec<Jump>) -> Result<Self> {
        Self::new(0.0, 0.0, LevyMeasure::CompoundPoisson { rate, jumps })
    }

    /// Named reference integrators used by the validation suites.
    pub fn builtins() -> Vec<(&'static str, LevyTriplet)> {
        let cp = |rate, jumps: &[(f64, f64)]| {
            LevyMeasure::CompoundPoisson {
                rate,
                jumps: jumps.iter().map(|&(atom, weight)| Jump { atom, weight }).collect(),
            }
        };
        vec![
            ("gaussian", Self::gaussian(1.0).unwrap()),
            ("stable-0.7", Self::calibrated_stable(0.7).unwrap()),
            ("stable-1.0", Self::calibrated_stable(1.0).unwrap()),
            ("stable-1.5", Self::calibrated_stable(1.5).unwrap()),
            ("compound-poisson", Self::new(0.0, 0.0, cp(1.0, &[(1.0, 1.0)])).unwrap()),
            (
                "skewed-stable-1.3",
                Self::new(0.4, 0.0, LevyMeasure::Stable { alpha: 1.3, c_pos: 0.8, c_neg: 0.1 }).unwrap(),
            ),
            (
                "mixed",
                Self::new(-0.3, 0.5, cp(2.0, &[(-2.0, 0.25), (0.5, 0.5), (3.0, 0.25)])).unwrap(),
            ),
        ]
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }

    pub fn gaussian_coef(&self) -> f64 {
        self.gaussian
    }

    pub fn measure(&self) -> &LevyMeasure {
        &self.measure
    }

    /// Symmetric law of Λ(A): no drift and a symmetric Lévy measure.
    pub fn is_symmetric(&self) -> bool {
        self.drift == 0.0 && self.measure.is_symmetric()
    }

    /// `Some((κ, γ))` when `Re K(s) = κ |s|^γ` exactly (pure Gaussian or
    /// pure stable integrators).
    pub fn homogeneous_re_k(&self) -> Option<(f64, f64)> {
        match (&self.measure, self.gaussian > 0.0) {
            (LevyMeasure::None, true) => Some((0.5 * self.gaussian, 2.0)),
            (LevyMeasure::Stable { alpha, c_pos, c_neg }, false) => {
                Some((0.5 * (c_pos + c_neg) * stable_constant(*alpha), *alpha))
            }
            _ => None,
        }
    }

    /// `K(s)`.
    pub fn eval_k(&self, s: f64) -> Result<CumulantValue> {
        let w = s.abs();
        let (levy_re, levy_im) = self.measure.exponent_nonneg(w)?;
        let re = 0.5 * w * w * self.gaussian + levy_re;
        let im = -w * self.drift + levy_im;
        Ok(CumulantValue { re: re.max(0.0), im: if s < 0.0 { -im } else { im } })
    }

    /// `Re K(s)`, computed on `|s|` so evenness is exact.
    pub fn eval_re_k(&self, s: f64) -> Result<f64> {
        let w = s.abs();
        let (levy_re, _) = match &self.measure {
            LevyMeasure::Tabulated(_) => self.measure.exponent_nonneg(w)?,
            m => m.exponent_nonneg(w)?,
        };
        Ok((0.5 * w * w * self.gaussian + levy_re).max(0.0))
    }

    /// Terms `(κ, γ)` with `Re K(v) ≤ Σ κ |v|^γ` for every real `v`.
    pub fn re_growth_terms(&self) -> Vec<(f64, f64)> {
        let mut terms = Vec::new();
        if self.gaussian > 0.0 {
            terms.push((0.5 * self.gaussian, 2.0));
        }
        match &self.measure {
            LevyMeasure::None => {}
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                terms.push((0.5 * (c_pos + c_neg) * stable_constant(*alpha), *alpha))
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => terms.push((
                0.5 * rate * jumps.iter().map(|j| j.weight * j.atom * j.atom).sum::<f64>(),
                2.0,
            )),
            LevyMeasure::Tabulated(t) => {
                let m2 = t.moment_both(2, 0.0, f64::INFINITY);
                terms.push((0.5 * m2, 2.0));
            }
        }
        terms
    }

    /// Terms `(κ, γ)` with `|K(v)| ≤ Σ κ |v|^γ` for every real `v`.
    pub fn growth_terms(&self) -> Vec<(f64, f64)> {
        let mut terms = self.re_growth_terms();
        if self.drift != 0.0 {
            terms.push((self.drift.abs(), 1.0));
        }
        match &self.measure {
            LevyMeasure::Stable { alpha, c_pos, c_neg } if c_pos != c_neg => {
                let dc = (c_pos - c_neg).abs();
                if (alpha - 1.0).abs() < 1e-14 {
                    let k = 4.0 / core::f64::consts::E;
                    terms.push((dc * (1.0 - EULER_GAMMA).abs(), 1.0));
                    terms.push((dc * k, 0.75));
                    terms.push((dc * k, 1.25));
                } else {
                    let a = gamma(1.0 - alpha) * (PI * alpha / 2.0).sin() / alpha;
                    terms.push((dc * a.abs(), *alpha));
                    terms.push((dc / (1.0 - alpha).abs(), 1.0));
                }
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                let small: f64 = jumps.iter().filter(|j| j.atom.abs() <= 1.0).map(|j| j.weight * j.atom.abs().powi(3)).sum();
                let large: f64 = jumps.iter().filter(|j| j.atom.abs() > 1.0).map(|j| j.weight * j.atom.abs()).sum();
                if small > 0.0 {
                    terms.push((rate * small / 6.0, 3.0));
                }
                if large > 0.0 {
                    terms.push((rate * large, 1.0));
                }
            }
            LevyMeasure::Tabulated(t) if !t.is_symmetric() => {
                let small = t.moment_both(3, 0.0, 1.0);
                let large = t.moment_both(1, 1.0, f64::INFINITY);
                terms.push((small / 6.0, 3.0));
                terms.push((large, 1.0));
            }
            _ => {}
        }
        terms
    }

    /// Exponent `e` such that the drift-condition integrand behaves like
    /// `|f|^e` as `f → 0`, or `None` when it vanishes identically.
    pub fn drift_tail_order(&self) -> Option<f64> {
        if self.is_symmetric() {
            return None;
        }
        match (&self.measure, self.measure.drift_shift_at_zero()) {
            (LevyMeasure::Stable { alpha, .. }, None) if *alpha < 1.0 => Some(*alpha),
            _ => Some(1.0),
        }
    }

    /// Checks the negative-definite-function inequalities on `n_samples`
    /// random pairs `(x, y)` drawn from a heavy-tailed law on `R²`.
    pub fn check_negdef_inequalities(&self, n_samples: usize, seed: u64) -> Result<NegDefReport> {
        if n_samples == 0 {
            return Err(invalid!("n_samples must be ≥ 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = NegDefReport { pairs: n_samples, ..Default::default() };
        for _ in 0..n_samples {
            let x = heavy_tailed(&mut rng);
            let y = heavy_tailed(&mut rng);
            self.check_pair(x, y, &mut report)?;
        }
        Ok(report)
    }

    fn check_pair(&self, x: f64, y: f64, report: &mut NegDefReport) -> Result<()> {
        let k = |s: f64| self.eval_k(s).map(CumulantValue::to_complex);
        let (kx, ky, kmx) = (k(x)?, k(y)?, k(-x)?);
        let (kp, km) = (k(x + y)?, k(x - y)?);
        let rx = kx.re.max(0.0).sqrt();
        let ry = ky.re.max(0.0).sqrt();
        let bound = 2.0 * rx * ry;
        let mut flag = |check: NegDefCheck, excess: f64, scale: f64| {
            let tol = 1e-9 * (1.0 + scale);
            if excess > tol {
                report.violations += 1;
                report.by_check[check as usize] += 1;
            }
            report.worst_excess = report.worst_excess.max(excess / (1.0 + scale));
        };
        let mags = kx.norm() + ky.norm() + kp.norm().max(km.norm());

        for v in [kx, ky, kmx, kp, km] {
            flag(NegDefCheck::NonNegativeReal, -v.re, v.norm());
        }
        flag(NegDefCheck::Hermitian, (kx - kmx.conj()).norm(), kx.norm());
        // the complex bound for x − y pairs ψ(x − y) with ψ(−y) = conj ψ(y)
        for (ky_signed, ks) in [(ky, kp), (ky.conj(), km)] {
            flag(NegDefCheck::Complex, (kx + ky_signed - ks).norm() - bound, mags);
            flag(NegDefCheck::RealPart, (kx.re + ky.re - ks.re).abs() - bound, mags);
        }
        let lhs = kp.re.min(kx.re + ky.re);
        flag(NegDefCheck::LowerBound, (rx - ry).powi(2) - lhs, mags);
        Ok(())
    }
}

fn heavy_tailed(rng: &mut ChaCha8Rng) -> f64 {
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    if rng.random::<bool>() {
        // log-uniform magnitude over twelve decades
        sign * 10f64.powf(rng.random_range(-6.0..6.0))
    } else {
        // standard Cauchy
        (PI * (rng.random::<f64>() - 0.5)).tan()
    }
}

/// Which inequality failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegDefCheck {
    NonNegativeReal = 0,
    Hermitian = 1,
    Complex = 2,
    RealPart = 3,
    LowerBound = 4,
}

/// Outcome of [`LevyTriplet::check_negdef_inequalities`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NegDefReport {
    pub pairs: usize,
    pub violations: usize,
    /// Indexed by [`NegDefCheck`].
    pub by_check: [usize; 5],
    /// Largest `excess / (1 + magnitude)` seen, violating or not.
    pub worst_excess: f64,
}
