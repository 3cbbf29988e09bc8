//! The sufficient short-range-dependence condition.
//!
//! `X` is certified SRD when, for some `ρ̄ < 1`,
//!
//! 1. the exceedance set `{t : ρ̃_t > ρ̄}` has finite measure,
//! 2. `∫_0^∞ σ_f(s)/s · e^{−(1−ρ̄)σ_f²(s)} ds < ∞`,
//! 3. `∫ ρ̃_t dt < ∞`.
//!
//! Each condition is evaluated numerically on a [`SpectralProfile`] and only
//! accepted when its numerical evidence is tight; the verdict is otherwise
//! inconclusive. The condition is sufficient only, so no verdict ever claims
//! long-range dependence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::kernels::{IntegrabilityReport, Kernel, Point};
use crate::levy::LevyTriplet;
use crate::par;
use crate::quad::{self, Estimate};
use crate::special::{lower_gamma_half, sphere_area, upper_gamma_half};
use crate::spectral::{RhoMethod, RhoTilde, Spectral, SpectralOptions};

/// Relative error the theorem integral must reach for certification.
pub const THEOREM_REL_ERROR: f64 = 1e-3;
/// Largest share of the SRD integral its tail term may carry.
pub const TAIL_SHARE: f64 = 0.05;

/// Knobs of the certification pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyConfig {
    pub spectral: SpectralOptions,
    /// Candidate levels `ρ̄ ∈ (0, 1)`.
    pub candidates: Vec<f64>,
    /// Half-width of the `t` window; defaults to 1.25 × the support width
    /// for bounded kernels and 20 otherwise.
    pub window: Option<f64>,
    /// Lattice points per half-axis; defaults depend on the dimension and
    /// on whether `ρ̃_t` needs a sup search.
    pub lattice_half_points: Option<usize>,
    /// `σ_f²` profile grid: `(s_min, s_max, points)`, log-spaced.
    pub s_grid: (f64, f64, usize),
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            spectral: SpectralOptions::default(),
            candidates: vec![0.9, 0.75, 0.5, 0.25],
            window: None,
            lattice_half_points: None,
            s_grid: (1e-6, 1e6, 121),
        }
    }
}

impl CertifyConfig {
    pub fn validate(&self) -> Result<()> {
        self.spectral.validate()?;
        if self.candidates.is_empty() || self.candidates.iter().any(|c| !(*c > 0.0 && *c < 1.0)) {
            return Err(invalid!("candidate levels must be a non-empty list in (0, 1)"));
        }
        if let Some(w) = self.window {
            if !(w > 0.0 && w.is_finite()) {
                return Err(invalid!("window half-width must be positive"));
            }
        }
        if self.lattice_half_points == Some(0) {
            return Err(invalid!("lattice needs at least one point per half-axis"));
        }
        let (lo, hi, n) = self.s_grid;
        if !(lo > 0.0 && hi > lo && hi.is_finite() && n >= 8) {
            return Err(invalid!("s grid needs 0 < s_min < s_max and at least 8 points"));
        }
        Ok(())
    }
}

/// Cached `σ_f²` on a log grid and `ρ̃_t` on a cubic lattice `h·Z^d ∩ [−W, W]^d`.
#[derive(Debug, Clone)]
pub struct SpectralProfile {
    pub kernel_label: String,
    pub dim: usize,
    pub s_grid: Vec<f64>,
    pub sigma_sq: Vec<Estimate>,
    /// Lattice spacing `h`.
    pub step: f64,
    /// Lattice points per half-axis `M`; the window is `M·h`.
    pub half_points: usize,
    pub points: Vec<Point>,
    pub rho: Vec<RhoTilde>,
    /// `(κ, γ)` when `Re K(s) = κ|s|^γ`.
    pub homogeneous: Option<(f64, f64)>,
    pub s_box: (f64, f64),
}

impl SpectralProfile {
    /// Evaluates the profile. Fails with [`Error::Degenerate`] when
    /// `σ_f ≡ 0` (a.e. zero kernel).
    pub fn build(spectral: &Spectral<'_>, config: &CertifyConfig) -> Result<Self> {
        config.validate()?;
        let kernel = spectral.kernel();
        let dim = kernel.dim();
        let homogeneous = spectral.triplet().homogeneous_re_k();
        let (lo, hi, n) = config.s_grid;
        let ratio = (hi / lo).ln() / (n - 1) as f64;
        let s_grid: Vec<f64> = (0..n).map(|k| lo * (ratio * k as f64).exp()).collect();
        let sigma_sq: Vec<Estimate> =
            par::map(&s_grid, |&s| spectral.sigma_f_sq(s)).into_iter().collect::<Result<_>>()?;
        if sigma_sq.iter().all(|e| e.value == 0.0) {
            return Err(Error::Degenerate(String::from("σ_f ≡ 0: the kernel vanishes almost everywhere")));
        }

        let window = config.window.unwrap_or_else(|| match kernel.box_widths() {
            Some(w) => 1.25 * w.iter().take(dim).fold(0.0f64, |m, x| m.max(*x)),
            None => 20.0,
        });
        let half_points = config.lattice_half_points.unwrap_or(match (dim, homogeneous.is_some()) {
            (1, true) => 200,
            (2, true) => 40,
            (3, true) => 12,
            (1, false) => 40,
            (2, false) => 10,
            _ => 5,
        });
        let step = window / half_points as f64;
        let m = half_points as i64;
        let side = (2 * m + 1) as usize;
        let total = side.pow(dim as u32);
        let points: Vec<Point> = (0..total)
            .map(|idx| {
                let mut c = [0.0; 3];
                let mut r = idx;
                for k in (0..dim).rev() {
                    c[k] = ((r % side) as i64 - m) as f64 * step;
                    r /= side;
                }
                Point::from_array(c, dim)
            })
            .collect();
        // ρ̃_{−t} = ρ̃_t: evaluate the half lattice whose first non-zero
        // coordinate is positive, plus the origin
        let canonical: Vec<usize> = (0..total)
            .filter(|&i| {
                let c = points[i].coords();
                c.iter().find(|v| **v != 0.0).map_or(true, |v| *v > 0.0)
            })
            .collect();
        let values: Vec<Result<RhoTilde>> = par::map(&canonical, |&i| spectral.rho_tilde(&points[i]));
        let mut rho = vec![None; total];
        for (&i, v) in canonical.iter().zip(values) {
            let v = v?;
            rho[i] = Some(v);
            rho[total - 1 - i] = Some(v);
        }
        let rho = rho.into_iter().map(|v| v.expect("lattice is centrally symmetric")).collect();
        Ok(SpectralProfile {
            kernel_label: kernel.label().to_string(),
            dim,
            s_grid,
            sigma_sq,
            step,
            half_points,
            points,
            rho,
            homogeneous,
            s_box: spectral.options().s_box,
        })
    }

    pub fn window(&self) -> f64 {
        self.step * self.half_points as f64
    }

    fn cell_volume(&self) -> f64 {
        self.step.powi(self.dim as i32)
    }

    /// Sup-norm shell index of lattice point `i`.
    pub fn shell(&self, i: usize) -> usize {
        let p = &self.points[i];
        (p.sup_norm() / self.step).round() as usize
    }

    /// Largest `ρ̃_t` on each shell `0..=M`.
    fn shell_max(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.half_points + 1];
        for (i, r) in self.rho.iter().enumerate() {
            let k = self.shell(i);
            out[k] = out[k].max(r.value);
        }
        out
    }

    /// Whether every `ρ̃_t` came from the exact homogeneous shortcut.
    pub fn rho_exact(&self) -> bool {
        self.rho.iter().all(|r| r.method == RhoMethod::Homogeneous)
    }
}

/// How `|A^c_ρ̄|` was measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcMethod {
    GridCount,
    AnalyticOverlap,
}

impl fmt::Display for AcMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AcMethod::GridCount => "grid-count",
            AcMethod::AnalyticOverlap => "analytic-overlap",
        })
    }
}

/// Outcome of the `ρ̄` selection.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoBarChoice {
    pub rho_bar: f64,
    pub ac_measure: f64,
    pub method: AcMethod,
    /// Every candidate whose exceedance set sits inside the window.
    pub feasible: Vec<f64>,
}

/// Smallest candidate `ρ̄` whose exceedance set `{ρ̃_t > ρ̄}` lies strictly
/// inside the window with `ρ̃_t` non-increasing across the outer shell.
pub fn choose_rho_bar(profile: &SpectralProfile, kernel: &Kernel, candidates: &[f64]) -> Option<RhoBarChoice> {
    let shells = profile.shell_max();
    let m = profile.half_points;
    let outer = shells[m];
    let decreasing = m == 0 || outer <= shells[m - 1];
    let mut sorted: Vec<f64> = candidates.to_vec();
    sorted.sort_by(f64::total_cmp);
    let feasible: Vec<f64> = sorted.iter().copied().filter(|&c| decreasing && outer <= c && m > 0).collect();
    let rho_bar = *feasible.first()?;
    let analytic = profile.homogeneous.is_some() && kernel.indicator_height().is_some();
    let (ac_measure, method) = if analytic {
        let w = kernel.box_widths().expect("indicator kernels are bounded");
        (box_exceedance_measure(&w[..profile.dim], rho_bar), AcMethod::AnalyticOverlap)
    } else {
        let count = profile.rho.iter().filter(|r| r.value > rho_bar).count();
        (count as f64 * profile.cell_volume(), AcMethod::GridCount)
    };
    Some(RhoBarChoice { rho_bar, ac_measure, method, feasible })
}

/// `|{t : ∏ (1 − |t_k|/w_k)₊ > c}| = 2^d ∏w_k · (1 − c Σ_{k<d} ln(1/c)^k / k!)`.
pub fn box_exceedance_measure(widths: &[f64], c: f64) -> f64 {
    let l = (1.0 / c).ln();
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..widths.len() {
        if k > 0 {
            term *= l / k as f64;
        }
        sum += term;
    }
    let vol: f64 = widths.iter().map(|w| 2.0 * w).product();
    vol * (1.0 - c * sum)
}

/// How the theorem integral was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralMethod {
    /// `σ_f²(s) = A s^γ`: the value is `√π / (γ √(1 − ρ̄))`.
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremIntegral {
    pub value: f64,
    pub error: f64,
    pub method: IntegralMethod,
    /// Analytic contributions of `(0, s_min)` and `(s_max, ∞)`.
    pub endpoint_terms: (f64, f64),
    /// Why the integral was judged infinite, if it was.
    pub divergence: Option<String>,
}

impl TheoremIntegral {
    pub fn is_finite(&self) -> bool {
        self.divergence.is_none() && self.value.is_finite()
    }

    pub fn relative_error(&self) -> f64 {
        if self.value > 0.0 {
            self.error / self.value
        } else {
            f64::INFINITY
        }
    }
}

/// Least-squares slope and intercept of `ln y` against `ln x`.
fn power_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(_, y)| **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, (my - slope * mx).exp()))
}

/// Smallest exponent of `σ_f²` growth at large `s` accepted as growth.
const MIN_GROWTH_EXPONENT: f64 = 0.05;
/// Grid points used in each endpoint power-law fit.
const FIT_POINTS: usize = 5;

/// `∫_0^∞ σ_f(s)/s · e^{−(1−ρ̄)σ_f²(s)} ds`.
pub fn theorem_integral(spectral: &Spectral<'_>, profile: &SpectralProfile, rho_bar: f64) -> Result<TheoremIntegral> {
    if !(rho_bar > 0.0 && rho_bar < 1.0) {
        return Err(invalid!("ρ̄ = {rho_bar} must lie in (0, 1)"));
    }
    let c = 1.0 - rho_bar;
    if let Some((_, gamma_exp)) = profile.homogeneous {
        let value = PI.sqrt() / (gamma_exp * c.sqrt());
        return Ok(TheoremIntegral {
            value,
            error: 0.0,
            method: IntegralMethod::ClosedForm,
            endpoint_terms: (0.0, 0.0),
            divergence: None,
        });
    }
    let s = &profile.s_grid;
    let v: Vec<f64> = profile.sigma_sq.iter().map(|e| e.value).collect();
    let n = s.len();
    let head_fit = power_fit(&s[..FIT_POINTS], &v[..FIT_POINTS]);
    let tail_fit = power_fit(&s[n - FIT_POINTS..], &v[n - FIT_POINTS..]);
    let mut divergence = None;
    let head = match head_fit {
        Some((g, a)) if g > 0.0 => lower_gamma_half(c * a * s[0].powf(g)) / (g * c.sqrt()),
        Some((g, _)) => {
            divergence = Some(format!("σ_f(s)/s ~ s^{:.3} near 0 is not integrable", g / 2.0 - 1.0));
            f64::INFINITY
        }
        None => 0.0,
    };
    let tail = match tail_fit {
        Some((g, b)) if g > MIN_GROWTH_EXPONENT => upper_gamma_half(c * b * s[n - 1].powf(g)) / (g * c.sqrt()),
        Some((g, _)) => {
            divergence.get_or_insert(format!(
                "σ_f² grows like s^{g:.3} at large s: e^{{−(1−ρ̄)σ_f²}} does not decay"
            ));
            f64::INFINITY
        }
        None => {
            divergence.get_or_insert(String::from("σ_f² vanishes at large s"));
            f64::INFINITY
        }
    };
    if let Some(reason) = divergence {
        return Ok(TheoremIntegral {
            value: f64::INFINITY,
            error: f64::INFINITY,
            method: IntegralMethod::Quadrature,
            endpoint_terms: (head, tail),
            divergence: Some(reason),
        });
    }
    // substitution s = e^u; the integrand becomes σ_f(s) e^{−(1−ρ̄)σ_f²(s)}
    let opts = quad::QuadOptions { rel_tol: 1e-7, abs_tol: 1e-12, max_subdivisions: 2000 };
    let (ulo, uhi) = (s[0].ln(), s[n - 1].ln());
    let mut pts: Vec<f64> = s.iter().step_by(10).map(|x| x.ln()).collect();
    pts.push(0.0_f64.clamp(ulo, uhi));
    pts.push(uhi);
    pts.sort_by(f64::total_cmp);
    let mid: Estimate = quad::integrate(
        |u: f64| match spectral.sigma_f_sq(u.exp()) {
            Ok(e) => e.value.sqrt() * (-c * e.value).exp(),
            Err(_) => f64::NAN,
        },
        &pts,
        &opts,
    )?;
    if mid.value.is_nan() {
        return Err(Error::Unsupported(String::from("σ_f² evaluation failed inside the theorem integral")));
    }
    let value = head + mid.value + tail;
    // the endpoint terms rest on power-law fits; charge a tenth of each as error
    let error = mid.error + 0.1 * (head + tail);
    Ok(TheoremIntegral {
        value,
        error,
        method: IntegralMethod::Quadrature,
        endpoint_terms: (head, tail),
        divergence: None,
    })
}

/// How the SRD-integral tail beyond the window was bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    /// `ρ̃_t = 0` outside the window (disjoint supports).
    DisjointSupport,
    /// Envelope bound for homogeneous `Re K` through `‖f‖_{γ/2}`.
    Envelope,
    /// Power-law fit over the outer shells.
    ShellFit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SrdIntegral {
    pub lattice_sum: f64,
    pub tail: f64,
    pub error: f64,
    pub method: TailMethod,
    /// Fitted or envelope decay exponent of `ρ̃_t`, when one was used.
    pub decay_exponent: Option<f64>,
    pub divergence: Option<String>,
}

impl SrdIntegral {
    pub fn total(&self) -> f64 {
        self.lattice_sum + self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.divergence.is_none() && self.total().is_finite()
    }
}

/// `∫ ρ̃_t dt` as a lattice sum over the window plus a tail term.
pub fn srd_integral(profile: &SpectralProfile, kernel: &Kernel) -> SrdIntegral {
    let vol = profile.cell_volume();
    let lattice_sum: f64 = profile.rho.iter().map(|r| r.value).sum::<f64>() * vol;
    let lattice_err: f64 = profile.rho.iter().map(|r| r.error).sum::<f64>() * vol;
    let d = profile.dim as f64;
    let window = profile.window();

    if let Some(w) = kernel.box_widths() {
        if (0..profile.dim).all(|k| window >= w[k]) {
            return SrdIntegral {
                lattice_sum,
                tail: 0.0,
                error: lattice_err,
                method: TailMethod::DisjointSupport,
                decay_exponent: None,
                divergence: None,
            };
        }
    }

    if let (Some((_, g)), Some((r0, beta, c))) = (profile.homogeneous, kernel.envelope()) {
        // |t| > R ⇒ |t − x| ≥ R/2 or |x| ≥ R/2, so
        // ρ̃_t ‖f‖_γ^γ ≤ 2 C^{γ/2} (|t|/2)^{−q} ∫|f|^{γ/2} with q = γβ/2
        let q = g * beta / 2.0;
        let mut out = SrdIntegral {
            lattice_sum,
            tail: f64::INFINITY,
            error: lattice_err,
            method: TailMethod::Envelope,
            decay_exponent: Some(-q),
            divergence: None,
        };
        let opts = quad::QuadOptions::default();
        if q <= d {
            out.divergence = Some(format!("ρ̃_t decays like |t|^-{q:.3} with exponent ≤ d = {d}: f ∉ L^{{{}}}", g / 2.0));
            return out;
        }
        let half = match kernel.power_integral(g / 2.0, &opts) {
            Ok(e) => e.value,
            Err(e) => {
                out.divergence = Some(format!("‖f‖_{} is infinite: {e}", g / 2.0));
                return out;
            }
        };
        let full = match kernel.power_integral(g, &opts) {
            Ok(e) => e.value,
            Err(e) => {
                out.divergence = Some(format!("‖f‖_{g} is infinite: {e}"));
                return out;
            }
        };
        let radius = window.max(2.0 * r0);
        let inside = if radius > window { f64::INFINITY } else { 0.0 };
        out.tail = inside
            + 2.0 * half * c.powf(g / 2.0) * sphere_area(profile.dim) * 2f64.powf(q) * radius.powf(d - q)
                / ((q - d) * full);
        return out;
    }

    // power-law fit of the shell means over the outermost quarter of shells
    let m = profile.half_points;
    let first = ((3 * m) / 4).max(1);
    let mut sums = vec![0.0; m + 1];
    let mut counts = vec![0usize; m + 1];
    for (i, r) in profile.rho.iter().enumerate() {
        let k = profile.shell(i);
        sums[k] += r.value;
        counts[k] += 1;
    }
    let radii: Vec<f64> = (first..=m).map(|k| k as f64 * profile.step).collect();
    let means: Vec<f64> = (first..=m).map(|k| sums[k] / counts[k] as f64).collect();
    if means.iter().all(|v| *v == 0.0) {
        return SrdIntegral {
            lattice_sum,
            tail: 0.0,
            error: lattice_err,
            method: TailMethod::DisjointSupport,
            decay_exponent: None,
            divergence: None,
        };
    }
    let mut out = SrdIntegral {
        lattice_sum,
        tail: f64::INFINITY,
        error: lattice_err,
        method: TailMethod::ShellFit,
        decay_exponent: None,
        divergence: None,
    };
    match power_fit(&radii, &means) {
        Some((e, amp)) => {
            out.decay_exponent = Some(e);
            if e >= -d {
                out.divergence = Some(format!("fitted decay |t|^{e:.3} is not integrable in d = {d}"));
            } else {
                // sup-norm shells of radius r have surface d·2^d·r^{d−1}
                let r = window + 0.5 * profile.step;
                out.tail = amp * d * 2f64.powf(d) * r.powf(d + e) / (-(d + e));
            }
        }
        None => out.divergence = Some(String::from("too few positive shells to fit the tail of ρ̃_t")),
    }
    out
}

/// Certification verdict. There is deliberately no long-range variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertifiedSrd,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedSrd => "certified-SRD",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Full record of one certification run.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub kernel_label: String,
    pub integrability: IntegrabilityReport,
    pub choice: Option<RhoBarChoice>,
    pub theorem: Option<TheoremIntegral>,
    pub srd: SrdIntegral,
    pub verdict: Verdict,
    /// Reasons the verdict is inconclusive; empty when certified.
    pub reasons: Vec<String>,
    pub profile: SpectralProfile,
}

impl CertificateReport {
    pub fn rho_bar(&self) -> Option<f64> {
        self.choice.as_ref().map(|c| c.rho_bar)
    }

    /// Whether every `ρ̃_t` is exact rather than a grid-search lower bound.
    pub fn rho_exact(&self) -> bool {
        self.profile.rho_exact()
    }
}

/// Runs integrability, profile, `ρ̄` choice, both integrals and the verdict.
/// Input that fails Λ-integrability or has a trivial kernel is rejected
/// with [`Error::Rejected`].
pub fn certify(kernel: &Kernel, triplet: &LevyTriplet, config: &CertifyConfig) -> Result<CertificateReport> {
    config.validate()?;
    if kernel.is_zero() {
        return Err(Error::Rejected(String::from("kernel is identically zero: the field is constant")));
    }
    let integrability = kernel.check_lambda_integrable(triplet, &config.spectral.quad);
    if let Some((name, status)) = integrability.first_failure() {
        return Err(Error::Rejected(format!("kernel is not Λ-integrable: {name} condition is {status:?}")));
    }
    let spectral = Spectral::new(kernel, triplet, config.spectral)?;
    let profile = match SpectralProfile::build(&spectral, config) {
        Err(Error::Degenerate(msg)) => return Err(Error::Rejected(msg)),
        other => other?,
    };
    let mut reasons = Vec::new();
    let choice = choose_rho_bar(&profile, kernel, &config.candidates);
    let theorem = match &choice {
        Some(c) => Some(theorem_integral(&spectral, &profile, c.rho_bar)?),
        None => {
            reasons.push(format!(
                "no candidate ρ̄ in {:?} has its exceedance set inside the window |t| ≤ {}",
                config.candidates,
                profile.window()
            ));
            None
        }
    };
    if let Some(t) = &theorem {
        if let Some(why) = &t.divergence {
            reasons.push(format!("theorem integral diverges: {why}"));
        } else if !(t.relative_error() < THEOREM_REL_ERROR) {
            reasons.push(format!("theorem integral relative error {:.3e} ≥ {THEOREM_REL_ERROR}", t.relative_error()));
        }
    }
    let srd = srd_integral(&profile, kernel);
    if let Some(why) = &srd.divergence {
        reasons.push(format!("SRD integral diverges: {why}"));
    } else if !(srd.tail < TAIL_SHARE * srd.total()) {
        reasons.push(format!(
            "SRD integral tail {:.3e} is not below {}% of the total {:.3e}",
            srd.tail,
            TAIL_SHARE * 100.0,
            srd.total()
        ));
    }
    let verdict = if reasons.is_empty() { Verdict::CertifiedSrd } else { Verdict::Inconclusive };
    Ok(CertificateReport {
        kernel_label: kernel.label().to_string(),
        integrability,
        choice,
        theorem,
        srd,
        verdict,
        reasons,
        profile,
    })
}
