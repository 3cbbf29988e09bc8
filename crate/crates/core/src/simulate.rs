//! Monte Carlo sampling of `X(t) = ∫ f(t − x) Λ(dx)` and empirical checks of
//! the indicator-covariance bounds.
//!
//! The field is discretized as a Riemann sum `X(t) ≈ Σ_j f(t − x_j) Λ_j` over
//! the cells of side `h` tiling `[−W, W]^d`, with `x_j` the cell centers and
//! `Λ_j` i.i.d. copies of `Λ(cell)`. Replication `k` draws from the ChaCha8
//! stream `k` of the configured seed, so results do not depend on threading.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::distr::weighted::WeightedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use crate::certify::SpectralProfile;
use crate::error::{invalid, Error, Result};
use crate::kernels::{Kernel, Point, Support};
use crate::levy::{LevyMeasure, LevyTriplet};
use crate::par;
use crate::special::norm_inv;
use crate::spectral::{CovarianceBound, Spectral};

/// Riemann-sum simulation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Cell side `h`.
    pub step: f64,
    /// Window half-width `W`.
    pub window: f64,
    pub samples: usize,
    pub seed: u64,
    /// Lags `t₁, …`; column 0 of a sample is always `X(0)`.
    pub lags: Vec<Point>,
}

impl SimConfig {
    /// Checks `h ≤ W`, `N ≥ 1`, lag dimensions, and that every shifted
    /// support stays inside the window with a margin of one diameter.
    pub fn validate(&self, kernel: &Kernel) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite() && self.window.is_finite() && self.step <= self.window) {
            return Err(invalid!("need 0 < h ≤ W, got h = {}, W = {}", self.step, self.window));
        }
        if self.samples == 0 {
            return Err(invalid!("sample count must be positive"));
        }
        let d = kernel.dim();
        if let Some(p) = self.lags.iter().find(|p| p.dim() != d || !p.is_finite()) {
            return Err(invalid!("lag {p} is not a finite point of R^{d}"));
        }
        let reach = self.lags.iter().map(Point::sup_norm).fold(0.0, f64::max);
        let need = match kernel.support() {
            Support::Bounded { lo, hi } => {
                let extent = (0..d).map(|k| lo[k].abs().max(hi[k].abs())).fold(0.0, f64::max);
                reach + extent + kernel.diameter().unwrap_or(0.0)
            }
            Support::Decay { radius, .. } => reach + 10.0 * radius.max(1.0),
        };
        if self.window < need {
            return Err(invalid!("window half-width {} is below the required {need}", self.window));
        }
        let cells = (2.0 * self.window / self.step).ceil();
        if cells.powi(d as i32) > 1e8 {
            return Err(invalid!("{cells}^{d} cells is beyond the simulation budget"));
        }
        Ok(())
    }
}

/// Law of one cell increment `Λ(cell)`.
#[derive(Debug, Clone)]
struct CellLaw {
    mean: f64,
    sd: f64,
    /// `(α, scale)` of a symmetric stable part with `E e^{isS} = e^{−|scale·s|^α}`.
    stable: Option<(f64, f64)>,
    /// `(Poisson(rate), atoms, weights)` of a compound-Poisson part.
    poisson: Option<(Poisson<f64>, Vec<f64>, WeightedIndex<f64>)>,
}

impl CellLaw {
    fn new(triplet: &LevyTriplet, volume: f64) -> Result<Self> {
        let mut mean = triplet.drift() * volume;
        let sd = (triplet.gaussian_coef() * volume).sqrt();
        let mut stable = None;
        let mut poisson = None;
        match triplet.measure() {
            LevyMeasure::None => {}
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                if c_pos != c_neg {
                    return Err(Error::Rejected(String::from(
                        "only symmetric stable integrators can be simulated",
                    )));
                }
                let kappa = triplet.homogeneous_re_k().map(|(k, _)| k).unwrap_or_else(|| {
                    0.5 * (c_pos + c_neg) * crate::levy::stable_constant(*alpha)
                });
                stable = Some((*alpha, (kappa * volume).powf(1.0 / alpha)));
            }
            LevyMeasure::CompoundPoisson { rate, jumps } => {
                // the cumulant compensates jumps with |y| ≤ 1
                mean -= volume * rate * jumps.iter().filter(|j| j.atom.abs() <= 1.0).map(|j| j.weight * j.atom).sum::<f64>();
                let law = Poisson::new(rate * volume).map_err(|e| invalid!("Poisson rate: {e}"))?;
                let atoms = jumps.iter().map(|j| j.atom).collect();
                let pick = WeightedIndex::new(jumps.iter().map(|j| j.weight)).map_err(|e| invalid!("jump weights: {e}"))?;
                poisson = Some((law, atoms, pick));
            }
            LevyMeasure::Tabulated(_) => {
                return Err(Error::Rejected(String::from(
                    "tabulated Lévy densities cannot be simulated; use a parametric family",
                )))
            }
        }
        Ok(CellLaw { mean, sd, stable, poisson })
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let mut x = self.mean;
        if self.sd > 0.0 {
            let z: f64 = StandardNormal.sample(rng);
            x += self.sd * z;
        }
        if let Some((alpha, scale)) = self.stable {
            x += scale * symmetric_stable(alpha, rng);
        }
        if let Some((law, atoms, pick)) = &self.poisson {
            let n = law.sample(rng) as u64;
            for _ in 0..n {
                x += atoms[pick.sample(rng)];
            }
        }
        x
    }
}

/// Chambers–Mallows–Stuck draw with `E e^{isS} = e^{−|s|^α}`.
pub fn symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let v = PI * (rng.random::<f64>() - 0.5);
    if (alpha - 1.0).abs() < 1e-12 {
        return v.tan();
    }
    let w: f64 = Exp1.sample(rng);
    (alpha * v).sin() / v.cos().powf(1.0 / alpha) * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// `N × (1 + #lags)` realizations, row-major; row `k` is `(X(0), X(t₁), …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub rows: usize,
    pub columns: usize,
    pub data: Vec<f64>,
    pub lags: Vec<Point>,
    pub config: SimConfig,
    pub kernel_label: String,
    pub triplet_label: String,
}

impl FieldSample {
    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.columns..(k + 1) * self.columns]
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows).map(move |k| self.data[k * self.columns + c])
    }

    /// Sample variance of column `c`.
    pub fn variance(&self, c: usize) -> f64 {
        let n = self.rows as f64;
        let mean = self.column(c).sum::<f64>() / n;
        self.column(c).map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0).max(1.0)
    }
}

/// Draws `config.samples` realizations of `(X(0), X(t₁), …)`.
pub fn sample_field(kernel: &Kernel, triplet: &LevyTriplet, triplet_label: &str, config: &SimConfig) -> Result<FieldSample> {
    config.validate(kernel)?;
    let d = kernel.dim();
    let h = config.step;
    let law = CellLaw::new(triplet, h.powi(d as i32))?;
    let per_axis = (2.0 * config.window / h).ceil() as usize;
    let total = per_axis.pow(d as u32);
    let center = |j: usize| -> [f64; 3] {
        let mut c = [0.0; 3];
        let mut r = j;
        for k in (0..d).rev() {
            c[k] = -config.window + ((r % per_axis) as f64 + 0.5) * h;
            r /= per_axis;
        }
        c
    };
    let columns = 1 + config.lags.len();
    let shifts: Vec<Point> = core::iter::once(Point::origin(d)).chain(config.lags.iter().copied()).collect();
    // weights[c] = nonzero (cell slot, f(t_c − x_j)); slots index the cells
    // any column touches, in increasing cell order
    let mut used: Vec<usize> = Vec::new();
    let mut raw: Vec<Vec<(usize, f64)>> = vec![Vec::new(); columns];
    for j in 0..total {
        let x = center(j);
        let mut touched = false;
        for (c, t) in shifts.iter().enumerate() {
            let mut y = [0.0; 3];
            for k in 0..d {
                y[k] = t[k] - x[k];
            }
            let v = kernel.eval(&Point::from_array(y, d));
            if v != 0.0 {
                raw[c].push((used.len(), v));
                touched = true;
            }
        }
        if touched {
            used.push(j);
        }
    }
    let cells = used.len();
    let reps: Vec<usize> = (0..config.samples).collect();
    let rows: Vec<Vec<f64>> = par::map(&reps, |&k| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(k as u64);
        let incs: Vec<f64> = (0..cells).map(|_| law.sample(&mut rng)).collect();
        raw.iter().map(|w| w.iter().map(|&(slot, f)| f * incs[slot]).sum()).collect()
    });
    let data: Vec<f64> = rows.into_iter().flatten().collect();
    if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
        return Err(Error::Unsupported(format!("non-finite field value {bad}")));
    }
    Ok(FieldSample {
        rows: config.samples,
        columns,
        data,
        lags: config.lags.clone(),
        config: config.clone(),
        kernel_label: String::from(kernel.label()),
        triplet_label: String::from(triplet_label),
    })
}

/// `(1/N) Σ_k e^{i(s₁ X_k(t) + s₂ X_k(0))}` for the lag in column `lag`.
pub fn empirical_char(sample: &FieldSample, s1: f64, s2: f64, lag: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..sample.rows {
        let row = sample.row(k);
        acc += Complex64::from_polar(1.0, s1 * row[lag] + s2 * row[0]);
    }
    acc / sample.rows as f64
}

/// Empirical `Cov(1{X(t) > u}, 1{X(0) > v})` for the lag in column `lag`.
pub fn indicator_cov(sample: &FieldSample, lag: usize, u: f64, v: f64) -> f64 {
    let (mut a, mut b, mut ab) = (0usize, 0usize, 0usize);
    for k in 0..sample.rows {
        let row = sample.row(k);
        let i = row[lag] > u;
        let j = row[0] > v;
        a += i as usize;
        b += j as usize;
        ab += (i && j) as usize;
    }
    let n = sample.rows as f64;
    ab as f64 / n - (a as f64 / n) * (b as f64 / n)
}

/// Number of equal-weight quantile points representing a Gaussian measure.
pub const GAUSSIAN_TABLE: usize = 512;

/// Threshold distribution `μ` of the dependence functional.
#[derive(Debug, Clone, PartialEq)]
pub enum TestMeasure {
    PointMass(f64),
    Discrete { atoms: Vec<f64>, weights: Vec<f64> },
    /// Normal law, integrated through its 512 mid-quantiles.
    Gaussian { mean: f64, std: f64 },
}

impl TestMeasure {
    pub fn discrete(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(invalid!("discrete measure needs matching non-empty atoms and weights"));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) || atoms.iter().any(|a| !a.is_finite()) {
            return Err(invalid!("weights must be non-negative and atoms finite"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid!("weights sum to {total}, not 1"));
        }
        Ok(TestMeasure::Discrete { atoms, weights })
    }

    pub fn gaussian(mean: f64, std: f64) -> Result<Self> {
        if !(std > 0.0 && std.is_finite() && mean.is_finite()) {
            return Err(invalid!("Gaussian measure needs finite mean and positive std"));
        }
        Ok(TestMeasure::Gaussian { mean, std })
    }

    /// Atoms and weights of the finite representation.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        match self {
            TestMeasure::PointMass(u) => vec![(*u, 1.0)],
            TestMeasure::Discrete { atoms, weights } => atoms.iter().copied().zip(weights.iter().copied()).collect(),
            TestMeasure::Gaussian { mean, std } => {
                let w = 1.0 / GAUSSIAN_TABLE as f64;
                (0..GAUSSIAN_TABLE).map(|k| (mean + std * norm_inv((k as f64 + 0.5) * w), w)).collect()
            }
        }
    }

    /// `μ̂(s) = ∫ e^{isx} μ(dx)` of the finite representation.
    pub fn char_fn(&self, s: f64) -> Complex64 {
        self.atoms().iter().map(|&(a, w)| Complex64::from_polar(w, s * a)).sum()
    }
}

/// Covariance-gap check at one `(t, s₁, s₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCheck {
    pub t: Point,
    pub s1: f64,
    pub s2: f64,
    pub gap: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Tolerance of the characteristic-function covariance inequality.
pub const GAP_TOLERANCE: f64 = 1e-8;

/// `|φ_t(s₁,s₂) − φ(s₁)φ(s₂)|` against its bound.
pub fn lemma3_gap(spectral: &Spectral<'_>, t: &Point, s1: f64, s2: f64) -> Result<GapCheck> {
    let CovarianceBound { gap, bound, .. } = spectral.covariance_bound(t, s1, s2)?;
    Ok(GapCheck { t: *t, s1, s2, gap, bound, holds: gap <= bound + GAP_TOLERANCE })
}

/// Outcome of a randomized inequality sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub draws: usize,
    /// Every check, in draw order.
    pub checks: Vec<GapCheck>,
    pub violations: Vec<GapCheck>,
    /// Largest `gap − bound` seen.
    pub worst_excess: f64,
}

/// `draws` random `(t, s₁, s₂)`: `t` uniform on the cube of half-width
/// `2 × diameter` (or 5 for decaying kernels), `|s|` log-uniform on
/// `[10⁻², 10²]` with a random sign.
pub fn gap_sweep(spectral: &Spectral<'_>, draws: usize, seed: u64) -> Result<SweepReport> {
    let d = spectral.kernel().dim();
    let reach = spectral.kernel().diameter().map_or(5.0, |r| 2.0 * r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = || {
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let t: Vec<f64> = (0..d).map(|_| rng.random_range(-reach..reach)).collect();
        let s1 = sign * 10f64.powf(rng.random_range(-2.0..2.0));
        let s2 = if rng.random::<bool>() { 1.0 } else { -1.0 } * 10f64.powf(rng.random_range(-2.0..2.0));
        (Point::new(&t), s1, s2)
    };
    let inputs: Vec<(Point, f64, f64)> = (0..draws).map(|_| s()).collect();
    let checks: Vec<Result<GapCheck>> = par::map(&inputs, |(t, s1, s2)| lemma3_gap(spectral, t, *s1, *s2));
    let checks: Vec<GapCheck> = checks.into_iter().collect::<Result<_>>()?;
    let violations = checks.iter().filter(|c| !c.holds).copied().collect();
    let worst = checks.iter().map(|c| c.gap - c.bound).fold(f64::NEG_INFINITY, f64::max);
    Ok(SweepReport { draws, checks, violations, worst_excess: worst })
}

/// Monte Carlo side of the averaged indicator-covariance bound.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedCovCheck {
    pub t: Point,
    /// `∫∫ |Cov(1{X(t)>u}, 1{X(0)>v})| μ(du) μ(dv)`.
    pub lhs: f64,
    /// Conservative standard error of `lhs`.
    pub std_error: f64,
    /// `(2/π²) · I(ρ̄)² · ρ̃_t`.
    pub rhs: f64,
    pub holds: bool,
}

impl AveragedCovCheck {
    pub fn margin(&self) -> f64 {
        self.rhs + 3.0 * self.std_error - self.lhs
    }
}

/// Joint and marginal exceedance frequencies of two columns over a
/// threshold grid, from one pass of bucket counts.
struct ExceedanceTable {
    n: f64,
    /// `joint[a][b] = #{X(t) > u_a, X(0) > u_b}`.
    joint: Vec<Vec<f64>>,
    lag: Vec<f64>,
    origin: Vec<f64>,
}

impl ExceedanceTable {
    fn new(sample: &FieldSample, lag: usize, grid: &[f64]) -> Self {
        let m = grid.len();
        // bucket(x) = #{thresholds < x}, so x exceeds exactly the first bucket(x) sorted thresholds
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| grid[i].total_cmp(&grid[j]));
        let sorted: Vec<f64> = order.iter().map(|&i| grid[i]).collect();
        let bucket = |x: f64| sorted.partition_point(|u| *u < x);
        let mut hist = vec![vec![0.0; m + 1]; m + 1];
        for k in 0..sample.rows {
            let row = sample.row(k);
            hist[bucket(row[lag])][bucket(row[0])] += 1.0;
        }
        // cum[a][b] = #{bucket_t > a, bucket_0 > b} = #{X(t) > sorted[a], X(0) > sorted[b]}
        let mut cum = vec![vec![0.0; m + 2]; m + 2];
        for a in (0..=m).rev() {
            for b in (0..=m).rev() {
                cum[a][b] = hist[a][b] + cum[a + 1][b] + cum[a][b + 1] - cum[a + 1][b + 1];
            }
        }
        let mut joint = vec![vec![0.0; m]; m];
        let mut lag_c = vec![0.0; m];
        let mut origin_c = vec![0.0; m];
        for (ra, &ia) in order.iter().enumerate() {
            lag_c[ia] = cum[ra + 1][0];
            origin_c[ia] = cum[0][ra + 1];
            for (rb, &ib) in order.iter().enumerate() {
                joint[ia][ib] = cum[ra + 1][rb + 1];
            }
        }
        ExceedanceTable { n: sample.rows as f64, joint, lag: lag_c, origin: origin_c }
    }

    /// Covariance estimate and its delta-method standard error.
    fn cov(&self, a: usize, b: usize) -> (f64, f64) {
        let p = self.lag[a] / self.n;
        let q = self.origin[b] / self.n;
        let p11 = self.joint[a][b] / self.n;
        let p10 = p - p11;
        let p01 = q - p11;
        let p00 = 1.0 - p - q + p11;
        let c = p11 - p * q;
        let m2 = p11 * (1.0 - p) * (1.0 - p) * (1.0 - q) * (1.0 - q)
            + p10 * (1.0 - p) * (1.0 - p) * q * q
            + p01 * p * p * (1.0 - q) * (1.0 - q)
            + p00 * p * p * q * q;
        (c, ((m2 - c * c).max(0.0) / self.n).sqrt())
    }
}

/// Compares the μ⊗μ-averaged `|Cov|` at lag column `lag` with
/// `(2/π²) · theorem_integral² · ρ̃_t`. `t` must satisfy `ρ̃_t ≤ ρ̄`.
pub fn lemma4_check(
    sample: &FieldSample,
    lag: usize,
    mu: &TestMeasure,
    rho_tilde_t: f64,
    rho_bar: f64,
    theorem_integral: f64,
) -> Result<AveragedCovCheck> {
    if lag == 0 || lag >= sample.columns {
        return Err(invalid!("lag column {lag} out of range 1..{}", sample.columns));
    }
    if rho_tilde_t > rho_bar {
        return Err(Error::Rejected(format!("ρ̃_t = {rho_tilde_t} exceeds ρ̄ = {rho_bar}: t ∉ A_ρ̄")));
    }
    let atoms = mu.atoms();
    let grid: Vec<f64> = atoms.iter().map(|a| a.0).collect();
    let table = ExceedanceTable::new(sample, lag, &grid);
    let (mut lhs, mut se) = (0.0, 0.0);
    for (a, &(_, wa)) in atoms.iter().enumerate() {
        for (b, &(_, wb)) in atoms.iter().enumerate() {
            let (c, e) = table.cov(a, b);
            lhs += wa * wb * c.abs();
            se += wa * wb * e;
        }
    }
    let rhs = 2.0 / (PI * PI) * theorem_integral * theorem_integral * rho_tilde_t;
    Ok(AveragedCovCheck { t: sample.lags[lag - 1], lhs, std_error: se, rhs, holds: lhs <= rhs + 3.0 * se })
}

/// `ρ̃_t` read off a profile lattice point, if `t` is one.
pub fn profile_rho_at(profile: &SpectralProfile, t: &Point) -> Option<f64> {
    profile
        .points
        .iter()
        .position(|p| (0..p.dim()).all(|k| (p[k] - t[k]).abs() <= 1e-9 * profile.step))
        .map(|i| profile.rho[i].value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::Jump;
    use crate::spectral::SpectralOptions;

    fn cfg(n: usize, lags: &[f64]) -> SimConfig {
        SimConfig { step: 0.02, window: 4.0, samples: n, seed: 7, lags: lags.iter().map(|&t| Point::scalar(t)).collect() }
    }

    #[test]
    fn config_validation() {
        let k = Kernel::unit_box(1).unwrap();
        assert!(cfg(10, &[0.5]).validate(&k).is_ok());
        assert!(cfg(10, &[2.5]).validate(&k).is_err());
        assert!(SimConfig { step: 5.0, ..cfg(10, &[]) }.validate(&k).is_err());
        assert!(SimConfig { samples: 0, ..cfg(10, &[]) }.validate(&k).is_err());
    }

    #[test]
    fn zero_kernel_gives_zero_field() {
        let k = Kernel::zero(1).unwrap();
        let t = LevyTriplet::gaussian(1.0).unwrap();
        let s = sample_field(&k, &t, "g", &cfg(50, &[0.3])).unwrap();
        assert!(s.data.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(1.0).unwrap();
        let a = sample_field(&k, &t, "s", &cfg(200, &[0.5])).unwrap();
        let b = sample_field(&k, &t, "s", &cfg(200, &[0.5])).unwrap();
        assert_eq!(a, b);
        let c = sample_field(&k, &t, "s", &SimConfig { seed: 8, ..cfg(200, &[0.5]) }).unwrap();
        assert_ne!(a.data, c.data);
    }

    #[test]
    fn gaussian_variance_matches_discrete_sum() {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::gaussian(1.0).unwrap();
        let n = 20_000;
        let s = sample_field(&k, &t, "g", &cfg(n, &[])).unwrap();
        let v = s.variance(0);
        assert!((v - 1.0).abs() < 3.0 * (2.0 / n as f64).sqrt(), "{v}");
    }

    #[test]
    fn stable_char_at_one() {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(1.0).unwrap();
        let n = 20_000;
        let s = sample_field(&k, &t, "s", &cfg(n, &[])).unwrap();
        let phi = empirical_char(&s, 0.0, 1.0, 0);
        assert!((phi - Complex64::new((-1.0f64).exp(), 0.0)).norm() < 4.0 / (n as f64).sqrt());
        assert_eq!(empirical_char(&s, 0.0, 0.0, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn compound_poisson_compensation() {
        // jumps at ±0.5 and 3: compensator removes the small-jump mean only
        let k = Kernel::unit_box(1).unwrap();
        let jumps = vec![Jump { atom: 0.5, weight: 0.5 }, Jump { atom: 3.0, weight: 0.5 }];
        let t = LevyTriplet::compound_poisson(2.0, jumps).unwrap();
        let n = 20_000;
        let s = sample_field(&k, &t, "cp", &cfg(n, &[])).unwrap();
        let mean = s.column(0).sum::<f64>() / n as f64;
        // E Λ([0,1]) = λ E[Y] − λ E[Y; |Y| ≤ 1] = 2 · 1.5 = 3
        let sd = (2.0f64 * (0.5 * 0.25 + 0.5 * 9.0)).sqrt();
        assert!((mean - 3.0).abs() < 4.0 * sd / (n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn rejects_tabulated_and_skewed() {
        let k = Kernel::unit_box(1).unwrap();
        let skew = LevyTriplet::builtins().remove(5).1;
        assert!(matches!(sample_field(&k, &skew, "x", &cfg(5, &[])), Err(Error::Rejected(_))));
    }

    #[test]
    fn indicator_cov_trivia_and_table_agreement() {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(1.0).unwrap();
        let s = sample_field(&k, &t, "s", &cfg(5000, &[0.5, 2.0])).unwrap();
        assert_eq!(indicator_cov(&s, 1, -1e300, -1e300), 0.0);
        let mu = TestMeasure::discrete(vec![-1.0, 0.0, 1.0], vec![1.0 / 3.0; 3]).unwrap();
        let check = lemma4_check(&s, 1, &mu, 0.5, 0.5, (2.0 * PI).sqrt()).unwrap();
        let mut direct = 0.0;
        for u in [-1.0, 0.0, 1.0] {
            for v in [-1.0, 0.0, 1.0] {
                direct += indicator_cov(&s, 1, u, v).abs() / 9.0;
            }
        }
        assert!((check.lhs - direct).abs() < 1e-12, "{} vs {direct}", check.lhs);
        assert!(check.holds);
        assert!(lemma4_check(&s, 1, &mu, 0.6, 0.5, 1.0).is_err());
    }

    #[test]
    fn test_measures() {
        let g = TestMeasure::gaussian(0.0, 1.0).unwrap();
        let atoms = g.atoms();
        assert_eq!(atoms.len(), GAUSSIAN_TABLE);
        assert!((atoms.iter().map(|a| a.1).sum::<f64>() - 1.0).abs() < 1e-12);
        for s in [0.1, 1.0, 3.0] {
            assert!(g.char_fn(s).norm() <= 1.0 + 1e-12);
            // quantile table reproduces e^{−s²/2} closely at moderate s
            assert!((g.char_fn(s).re - (-s * s / 2.0).exp()).abs() < 2e-3);
        }
        assert!(TestMeasure::discrete(vec![0.0], vec![0.5]).is_err());
        assert_eq!(TestMeasure::PointMass(2.0).char_fn(0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn gap_disjoint_and_sweep() {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(1.0).unwrap();
        let sp = Spectral::new(&k, &t, SpectralOptions::default()).unwrap();
        let c = lemma3_gap(&sp, &Point::scalar(1.5), 1.0, 2.0).unwrap();
        assert!(c.gap.abs() < 1e-12 && c.bound == 0.0 && c.holds);
        let r = gap_sweep(&sp, 100, 3).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations.first());
    }
}
