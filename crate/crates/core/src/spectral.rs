//! Spectral quantities of `X(t) = ∫ f(t − x) Λ(dx)`:
//!
//! ```text
//! σ_f²(s)      = ∫ Re K(s f(−x)) dx
//! φ_{X(0)}(u)  = exp(−∫ K(u f(x)) dx)
//! φ_t(s₁, s₂)  = exp(−∫ K(s₁ f(t − x) + s₂ f(−x)) dx)
//! ρ_t(s₁, s₂)  = ∫ √(Re K(s₁ f(t − x)) Re K(s₂ f(−x))) dx / (σ_f(s₁) σ_f(s₂))
//! ρ̃_t          = sup ρ_t(s₁, s₂)
//! ```
//!
//! The supremum is taken over `|s₁|, |s₂|` in a bounded log-spaced box, so a
//! grid-searched `ρ̃_t` is a lower bound of the true supremum. For integrators
//! with `Re K(s) = κ|s|^γ` the ratio does not depend on `(s₁, s₂)` and the
//! search collapses to one evaluation.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::kernels::{Kernel, Point, TAIL_TARGET};
use crate::levy::LevyTriplet;
use crate::par;
use crate::quad::{integrate_region, Estimate, QuadOptions, Region};

/// Tuning for spectral evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    pub quad: QuadOptions,
    /// Searched range of `|s₁|` and `|s₂|`.
    pub s_box: (f64, f64),
    /// Points per axis of the initial log grid.
    pub grid_points: usize,
    /// Local refinement rounds, each halving the log spacing.
    pub refine_rounds: usize,
    /// Largest overshoot of `ρ_t` above 1 that is clamped rather than reported.
    pub clamp_tol: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            // oscillatory cumulants at large |s| put many kinks into the integrands
            quad: QuadOptions { max_subdivisions: 50_000, ..QuadOptions::default() },
            s_box: (1e-3, 1e3),
            grid_points: 25,
            refine_rounds: 3,
            clamp_tol: 1e-9,
        }
    }
}

impl SpectralOptions {
    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        let (lo, hi) = self.s_box;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(invalid!("search box must satisfy 0 < s_min < s_max < ∞"));
        }
        if self.grid_points < 2 {
            return Err(invalid!("sup-search grid needs at least 2 points per axis"));
        }
        if !(self.clamp_tol >= 0.0) {
            return Err(invalid!("clamp tolerance must be non-negative"));
        }
        Ok(())
    }
}

/// How a `ρ̃_t` value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMethod {
    /// `Re K` homogeneous: `ρ_t` is constant in `(s₁, s₂)`, value exact.
    Homogeneous,
    /// Log-grid search plus refinement; a lower bound of the supremum.
    GridSearch,
}

/// Outcome of the `ρ̃_t` search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoTilde {
    pub value: f64,
    pub error: f64,
    pub argmax: (f64, f64),
    /// Final log10 spacing of the search grid (0 for the homogeneous case).
    pub log_step: f64,
    pub method: RhoMethod,
}

/// Both sides of the characteristic-function covariance bound at one
/// `(t, s₁, s₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceBound {
    /// `|φ_t(s₁, s₂) − φ(s₁) φ(s₂)|`.
    pub gap: f64,
    /// `exp(−∫(√ReK₁ − √ReK₂)²) · 2 ∫ √(ReK₁ ReK₂)`.
    pub bound: f64,
    /// `∫ √(ReK₁ ReK₂)`.
    pub cross: f64,
    /// Combined quadrature error of `gap` and `bound`.
    pub error: f64,
}

/// Spectral evaluator for one kernel and one integrator.
#[derive(Debug, Clone)]
pub struct Spectral<'a> {
    kernel: &'a Kernel,
    triplet: &'a LevyTriplet,
    opts: SpectralOptions,
}

impl<'a> Spectral<'a> {
    pub fn new(kernel: &'a Kernel, triplet: &'a LevyTriplet, opts: SpectralOptions) -> Result<Self> {
        opts.validate()?;
        Ok(Spectral { kernel, triplet, opts })
    }

    pub fn kernel(&self) -> &Kernel {
        self.kernel
    }

    pub fn triplet(&self) -> &LevyTriplet {
        self.triplet
    }

    pub fn options(&self) -> &SpectralOptions {
        &self.opts
    }

    fn dim(&self) -> usize {
        self.kernel.dim()
    }

    fn check_point(&self, t: &Point) -> Result<()> {
        if t.dim() != self.dim() || !t.is_finite() {
            return Err(invalid!("lag {t} must be a finite point of R^{}", self.dim()));
        }
        Ok(())
    }

    fn re_k(&self, v: f64) -> f64 {
        self.triplet.eval_re_k(v).unwrap_or(f64::NAN)
    }

    fn k(&self, v: f64) -> Complex64 {
        self.triplet.eval_k(v).map(|c| c.to_complex()).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// Truncation radius and envelope tail for an integrand bounded by
    /// `Σ κ (scale |f|)^γ` over the given growth terms.
    fn truncation(&self, terms: &[(f64, f64)], scale: f64) -> Result<(f64, f64)> {
        let scaled: Vec<(f64, f64)> = terms.iter().map(|&(k, g)| (k * scale.powf(g), g)).collect();
        self.kernel.truncation(&scaled, TAIL_TARGET)
    }

    fn finish<V>(&self, r: Result<Estimate<V>>, tail: f64) -> Result<Estimate<V>>
    where
        V: Copy,
    {
        r.map(|mut e| {
            e.error += tail;
            e
        })
    }

    /// `σ_f²(s)`.
    pub fn sigma_f_sq(&self, s: f64) -> Result<Estimate> {
        if !s.is_finite() {
            return Err(invalid!("s = {s} must be finite"));
        }
        if s == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let (radius, tail) = self.truncation(&self.triplet.re_growth_terms(), s.abs())?;
        let region = self.kernel.reflected_region(&Point::origin(self.dim()), radius);
        let est = self.finish(
            integrate_region(&region, |x| self.re_k(s * self.kernel.eval_at(&neg(x))), &self.opts.quad),
            tail,
        )?;
        if est.value.is_nan() {
            return Err(Error::Unsupported(format!("Re K could not be evaluated along s = {s}")));
        }
        Ok(Estimate { value: est.value.max(0.0), error: est.error })
    }

    /// `∫ K(u f(x)) dx`, the negated log of `φ_{X(0)}(u)`.
    pub fn log_char_exponent(&self, u: f64) -> Result<Estimate<Complex64>> {
        if !u.is_finite() {
            return Err(invalid!("u = {u} must be finite"));
        }
        if u == 0.0 {
            return Ok(Estimate::exact(Complex64::new(0.0, 0.0)));
        }
        let (radius, tail) = self.truncation(&self.triplet.growth_terms(), u.abs())?;
        let region = self.kernel.support_region(radius);
        self.finish(integrate_region(&region, |x| self.k(u * self.kernel.eval_at(x)), &self.opts.quad), tail)
    }

    /// `φ_{X(0)}(u)`.
    pub fn char_x0(&self, u: f64) -> Result<Estimate<Complex64>> {
        Ok(exp_estimate(self.log_char_exponent(u)?))
    }

    /// `∫ K(s₁ f(t − x) + s₂ f(−x)) dx`.
    pub fn log_joint_exponent(&self, t: &Point, s1: f64, s2: f64) -> Result<Estimate<Complex64>> {
        self.check_point(t)?;
        if !(s1.is_finite() && s2.is_finite()) {
            return Err(invalid!("(s₁, s₂) must be finite"));
        }
        if s1 == 0.0 {
            return self.log_char_exponent(s2);
        }
        if s2 == 0.0 {
            return self.log_char_exponent(s1);
        }
        let scale = 2.0 * s1.abs().max(s2.abs());
        let (radius, tail) = self.truncation(&self.triplet.growth_terms(), scale)?;
        let a = self.kernel.reflected_region(t, radius);
        let b = self.kernel.reflected_region(&Point::origin(self.dim()), radius);
        let g = |x: &[f64; 3]| {
            let xt = sub(t, x);
            self.k(s1 * self.kernel.eval_at(&xt) + s2 * self.kernel.eval_at(&neg(x)))
        };
        let q = &self.opts.quad;
        let est = if self.kernel.envelope().is_some() {
            integrate_region(&a.hull(&b), g, q)?
        } else {
            let overlap = a.intersect(&b);
            let ea = integrate_region(&a.clone().with_breaks_of(&b), g, q)?;
            let eb = integrate_region(&b.clone().with_breaks_of(&a), g, q)?;
            if overlap.is_empty() {
                ea + eb
            } else {
                let eo = integrate_region(&overlap, g, q)?;
                Estimate { value: ea.value + eb.value - eo.value, error: ea.error + eb.error + eo.error }
            }
        };
        Ok(Estimate { value: est.value, error: est.error + tail })
    }

    /// `φ_t(s₁, s₂) = E exp(i(s₁ X(t) + s₂ X(0)))`.
    pub fn char_joint(&self, t: &Point, s1: f64, s2: f64) -> Result<Estimate<Complex64>> {
        Ok(exp_estimate(self.log_joint_exponent(t, s1, s2)?))
    }

    /// Region carrying `x ↦ f(t − x) f(−x)`, with its envelope tail at
    /// `(s₁, s₂)`.
    fn overlap_region(&self, t: &Point, s1: f64, s2: f64) -> Result<(Region, f64)> {
        let terms = self.triplet.re_growth_terms();
        let (r1, t1) = self.truncation(&terms, s1.abs())?;
        let (r2, t2) = self.truncation(&terms, s2.abs())?;
        let radius = r1.max(r2);
        let a = self.kernel.reflected_region(t, radius);
        let b = self.kernel.reflected_region(&Point::origin(self.dim()), radius);
        if self.kernel.envelope().is_some() {
            // outside the hull both factors are in their tails: Cauchy–Schwarz
            Ok((a.hull(&b), (t1 * t2).sqrt()))
        } else {
            Ok((a.intersect(&b), 0.0))
        }
    }

    /// `∫ √(Re K(s₁ f(t − x)) Re K(s₂ f(−x))) dx`.
    pub fn rho_numerator(&self, t: &Point, s1: f64, s2: f64) -> Result<Estimate> {
        self.check_point(t)?;
        if s1 == 0.0 || s2 == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let (region, tail) = self.overlap_region(t, s1, s2)?;
        let g = |x: &[f64; 3]| {
            let a = self.re_k(s1 * self.kernel.eval_at(&sub(t, x)));
            if a == 0.0 {
                return 0.0;
            }
            (a * self.re_k(s2 * self.kernel.eval_at(&neg(x)))).sqrt()
        };
        let e = integrate_region(&region, g, &self.opts.quad)?;
        Ok(Estimate { value: e.value.max(0.0), error: e.error + tail })
    }

    /// `ρ_t(s₁, s₂)`, clamped into `[0, 1]` when the overshoot is within
    /// the clamp tolerance.
    pub fn rho_t(&self, t: &Point, s1: f64, s2: f64) -> Result<Estimate> {
        let v1 = self.sigma_f_sq(s1)?;
        let v2 = self.sigma_f_sq(s2)?;
        self.rho_from(t, s1, s2, v1, v2)
    }

    fn rho_from(&self, t: &Point, s1: f64, s2: f64, v1: Estimate, v2: Estimate) -> Result<Estimate> {
        if !(v1.value > 0.0 && v2.value > 0.0) {
            return Err(Error::Degenerate(format!(
                "σ_f(s) vanishes at s = {} (trivial kernel or s = 0)",
                if v1.value > 0.0 { s2 } else { s1 }
            )));
        }
        let num = self.rho_numerator(t, s1, s2)?;
        let denom = (v1.value * v2.value).sqrt();
        let value = num.value / denom;
        let error = num.error / denom + 0.5 * value * (v1.error / v1.value + v2.error / v2.value);
        if value > 1.0 + self.opts.clamp_tol {
            return Err(Error::Quadrature { value, residual: error });
        }
        Ok(Estimate { value: value.clamp(0.0, 1.0), error })
    }

    /// `ρ̃_t`.
    pub fn rho_tilde(&self, t: &Point) -> Result<RhoTilde> {
        self.check_point(t)?;
        if self.triplet.homogeneous_re_k().is_some() {
            let e = self.rho_t(t, 1.0, 1.0)?;
            return Ok(RhoTilde {
                value: e.value,
                error: e.error,
                argmax: (1.0, 1.0),
                log_step: 0.0,
                method: RhoMethod::Homogeneous,
            });
        }
        let (lo, hi) = self.opts.s_box;
        let (llo, lhi) = (lo.log10(), hi.log10());
        let n = self.opts.grid_points;
        let mut step = (lhi - llo) / (n - 1) as f64;
        let axis: Vec<f64> = (0..n).map(|k| llo + k as f64 * step).collect();
        let sig: Vec<Result<Estimate>> = par::map(&axis, |&l| self.sigma_f_sq(10f64.powf(l)));
        let sig: Vec<Estimate> = sig.into_iter().collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let vals: Vec<Result<Estimate>> = par::map(&pairs, |&(i, j)| {
            self.rho_from(t, 10f64.powf(axis[i]), 10f64.powf(axis[j]), sig[i], sig[j])
        });
        let mut best = (Estimate { value: -1.0, error: 0.0 }, axis[0], axis[0]);
        for (&(i, j), v) in pairs.iter().zip(vals) {
            let v = v?;
            if v.value > best.0.value {
                best = (v, axis[i], axis[j]);
            }
        }
        for _ in 0..self.opts.refine_rounds {
            step *= 0.5;
            let (c1, c2) = (best.1, best.2);
            let local: Vec<(f64, f64)> = (-2..=2)
                .flat_map(|a| (-2..=2).map(move |b| (c1 + a as f64 * step, c2 + b as f64 * step)))
                .filter(|(a, b)| *a >= llo && *a <= lhi && *b >= llo && *b <= lhi)
                .collect();
            let vals: Vec<Result<Estimate>> =
                par::map(&local, |&(a, b)| self.rho_t(t, 10f64.powf(a), 10f64.powf(b)));
            for (&(a, b), v) in local.iter().zip(vals) {
                let v = v?;
                if v.value > best.0.value {
                    best = (v, a, b);
                }
            }
        }
        Ok(RhoTilde {
            value: best.0.value,
            error: best.0.error,
            argmax: (10f64.powf(best.1), 10f64.powf(best.2)),
            log_step: step,
            method: RhoMethod::GridSearch,
        })
    }

    /// Both sides of the covariance bound at `(t, s₁, s₂)`, using
    /// `∫(√A − √B)² = σ_f²(s₁) + σ_f²(s₂) − 2∫√(AB)` by stationarity.
    pub fn covariance_bound(&self, t: &Point, s1: f64, s2: f64) -> Result<CovarianceBound> {
        let joint = self.char_joint(t, s1, s2)?;
        let m1 = self.char_x0(s1)?;
        let m2 = self.char_x0(s2)?;
        let product = m1.value * m2.value;
        let gap = (joint.value - product).norm();
        let gap_err = joint.error + m1.error * m2.value.norm() + m2.error * m1.value.norm();
        let v1 = self.sigma_f_sq(s1)?;
        let v2 = self.sigma_f_sq(s2)?;
        let cross = self.rho_numerator(t, s1, s2)?;
        let diff = (v1.value + v2.value - 2.0 * cross.value).max(0.0);
        let damp = (-diff).exp();
        let bound = damp * 2.0 * cross.value;
        let diff_err = v1.error + v2.error + 2.0 * cross.error;
        let bound_err = 2.0 * damp * cross.error + bound * diff_err;
        Ok(CovarianceBound { gap, bound, cross: cross.value, error: gap_err + bound_err })
    }
}

/// `exp(−z)` with the error propagated to first order.
fn exp_estimate(z: Estimate<Complex64>) -> Estimate<Complex64> {
    let value = (-z.value).exp();
    Estimate { value, error: value.norm() * z.error }
}

fn neg(x: &[f64; 3]) -> [f64; 3] {
    [-x[0], -x[1], -x[2]]
}

fn sub(t: &Point, x: &[f64; 3]) -> [f64; 3] {
    let a = t.array();
    [a[0] - x[0], a[1] - x[1], a[2] - x[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::Jump;
    use alloc::vec;

    fn unit_box() -> Kernel {
        Kernel::unit_box(1).unwrap()
    }

    #[test]
    fn stable_sigma_is_homogeneous() {
        let k = unit_box();
        for alpha in [0.5, 1.0, 1.5] {
            let tr = LevyTriplet::calibrated_stable(alpha).unwrap();
            let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
            for s in [0.1, 1.0, 10.0, -3.0] {
                let v = sp.sigma_f_sq(s).unwrap().value;
                let expect = f64::abs(s).powf(alpha);
                assert!((v - expect).abs() <= 1e-12 * expect, "α={alpha} s={s}: {v}");
            }
            assert_eq!(sp.sigma_f_sq(0.0).unwrap().value, 0.0);
        }
    }

    #[test]
    fn gaussian_box_examples() {
        let k = unit_box();
        let g = LevyTriplet::gaussian(1.0).unwrap();
        let sp = Spectral::new(&k, &g, SpectralOptions::default()).unwrap();
        assert!((sp.sigma_f_sq(2.0).unwrap().value - 2.0).abs() < 1e-14);
        let phi = sp.char_x0(1.0).unwrap().value;
        assert!((phi.re - (-0.5f64).exp()).abs() < 1e-14 && phi.im.abs() < 1e-15);
        assert!((phi.re - 0.60653).abs() < 1e-5);
        assert_eq!(sp.char_x0(0.0).unwrap().value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn symmetric_triplets_give_real_char() {
        let k = Kernel::tent(1).unwrap();
        for tr in [
            LevyTriplet::calibrated_stable(0.7).unwrap(),
            LevyTriplet::compound_poisson(1.5, vec![Jump { atom: -2.0, weight: 0.5 }, Jump { atom: 2.0, weight: 0.5 }])
                .unwrap(),
        ] {
            let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
            for u in [0.3, 1.0, 4.0] {
                assert!(sp.log_char_exponent(u).unwrap().value.im.abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn sigma_matches_log_modulus() {
        let k = Kernel::tent(1).unwrap();
        for (_, tr) in LevyTriplet::builtins() {
            let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
            for s in [0.2, 1.0, 3.0] {
                let v = sp.sigma_f_sq(s).unwrap().value;
                let z = sp.log_char_exponent(s).unwrap().value;
                assert!((v - z.re).abs() <= 1e-8 * v, "s={s}: {v} vs {}", z.re);
            }
        }
    }

    #[test]
    fn joint_factorizes_for_distant_lags() {
        let k = Kernel::tent(1).unwrap();
        let tr = LevyTriplet::builtins().remove(5).1;
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let t = Point::scalar(4.5);
        let joint = sp.char_joint(&t, 0.7, -1.3).unwrap().value;
        let prod = sp.char_x0(0.7).unwrap().value * sp.char_x0(-1.3).unwrap().value;
        assert!((joint - prod).norm() <= 1e-8);
        let m = sp.char_joint(&t, 0.0, 1.1).unwrap().value;
        assert_eq!(m, sp.char_x0(1.1).unwrap().value);
        assert_eq!(sp.rho_t(&t, 1.0, 2.0).unwrap().value, 0.0);
    }

    #[test]
    fn joint_against_riemann_sum() {
        // oracle: midpoint sum of K(f(t − x) + f(−x)) over [−1, 0.5] with 3·10^5 cells;
        // K(v) = |v| for the calibrated Cauchy integrator
        let k = unit_box();
        let tr = LevyTriplet::calibrated_stable(1.0).unwrap();
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let t = Point::scalar(0.5);
        let got = sp.char_joint(&t, 1.0, 1.0).unwrap().value;
        let n = 300_000;
        let (a, b) = (-1.0, 0.5);
        let h = (b - a) / n as f64;
        let f = |x: f64| if (0.0..=1.0).contains(&x) { 1.0 } else { 0.0 };
        let mut acc = 0.0;
        for j in 0..n {
            let x = a + (j as f64 + 0.5) * h;
            acc += (f(0.5 - x) + f(-x)).abs() * h;
        }
        let oracle = (-acc).exp();
        assert!((got.re - oracle).abs() < 1e-6 && got.im.abs() < 1e-12, "{got} vs {oracle}");
        assert!((oracle - (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn rho_examples() {
        let k = unit_box();
        let tr = LevyTriplet::calibrated_stable(1.0).unwrap();
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let r = sp.rho_tilde(&Point::scalar(0.4)).unwrap();
        assert!((r.value - 0.6).abs() < 1e-12);
        assert_eq!(r.method, RhoMethod::Homogeneous);
        assert!((sp.rho_t(&Point::scalar(0.0), 2.0, 2.0).unwrap().value - 1.0).abs() < 1e-12);
        assert_eq!(sp.rho_tilde(&Point::scalar(2.0)).unwrap().value, 0.0);
        assert!(matches!(sp.rho_t(&Point::scalar(0.1), 0.0, 1.0), Err(Error::Degenerate(_))));
        let z = Kernel::zero(1).unwrap();
        let sz = Spectral::new(&z, &tr, SpectralOptions::default()).unwrap();
        assert!(matches!(sz.rho_t(&Point::scalar(0.1), 1.0, 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn grid_search_on_mixed_triplet() {
        // Gaussian part plus compound Poisson: ρ_t depends on (s₁, s₂); the sup
        // over a coarse grid is at least the diagonal value and at most 1
        let k = Kernel::tent(1).unwrap();
        let tr = LevyTriplet::builtins().remove(6).1;
        let opts = SpectralOptions { grid_points: 7, refine_rounds: 1, ..Default::default() };
        let sp = Spectral::new(&k, &tr, opts).unwrap();
        let t = Point::scalar(0.5);
        let r = sp.rho_tilde(&t).unwrap();
        assert_eq!(r.method, RhoMethod::GridSearch);
        let diag = sp.rho_t(&t, 1.0, 1.0).unwrap().value;
        assert!(r.value >= diag - 1e-12 && r.value <= 1.0);
        let at0 = sp.rho_tilde(&Point::scalar(0.0)).unwrap();
        assert!((at0.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn covariance_bound_examples() {
        let k = unit_box();
        let tr = LevyTriplet::calibrated_stable(1.0).unwrap();
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let far = sp.covariance_bound(&Point::scalar(3.0), 1.0, 1.0).unwrap();
        assert!(far.gap <= 1e-15 && far.bound == 0.0);
        // t = 0, s₁ = s₂ = 1: gap = |e^{−2} − e^{−2}|·… = e^{−2} − e^{−1}e^{−1} = 0 for stable α = 1
        // since |2s|^1 = 2|s|; bound = 2σ²(1) = 2
        let at0 = sp.covariance_bound(&Point::scalar(0.0), 1.0, 1.0).unwrap();
        assert!(at0.gap < 1e-14);
        assert!((at0.bound - 2.0).abs() < 1e-12);
        // α = 0.5: φ(2) = e^{−√2}, φ(1)² = e^{−2}; gap = e^{−√2} − e^{−2}
        let tr = LevyTriplet::calibrated_stable(0.5).unwrap();
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let c = sp.covariance_bound(&Point::scalar(0.0), 1.0, 1.0).unwrap();
        let expect = (-(2f64.sqrt())).exp() - (-2.0f64).exp();
        assert!((c.gap - expect).abs() < 1e-13);
        assert!(c.gap <= c.bound);
    }

    #[test]
    fn power_decay_kernel_rho() {
        // stable α = 1, f = (1 + |x|)^{-3}: ρ̃_t = ∫ |f(t−x) f(−x)|^{1/2} / ‖f‖_1
        let k = Kernel::power_decay(1, 3.0).unwrap();
        let tr = LevyTriplet::calibrated_stable(1.0).unwrap();
        let sp = Spectral::new(&k, &tr, SpectralOptions::default()).unwrap();
        let t = 1.5;
        let r = sp.rho_tilde(&Point::scalar(t)).unwrap();
        // oracle: dense midpoint rule on [−400, 400] plus nothing (integrand ~ |x|^{-3})
        let n = 800_000;
        let h = 800.0 / n as f64;
        let f = |x: f64| (1.0 + x.abs()).powf(-3.0);
        let mut acc = 0.0;
        for j in 0..n {
            let x = -400.0 + (j as f64 + 0.5) * h;
            acc += (f(t - x) * f(-x)).sqrt() * h;
        }
        // ‖f‖_1 = 2 ∫_0^∞ (1+x)^{-3} = 1
        assert!((r.value - acc).abs() < 1e-5, "{} vs {acc}", r.value);
    }
}
