//! Moving-average kernels `f: R^d → R` for `d ∈ {1, 2, 3}`.
//!
//! Every kernel carries support metadata: either a bounded box outside of
//! which it is exactly zero, or a power-law decay envelope
//! `|f(x)| ≤ C |x|^{−β}` for `|x| > r₀`. Integrals over unbounded supports
//! are truncated to a cube whose radius is chosen from the envelope, and the
//! envelope tail is added to the error estimate.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::ops::{Index, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Error, Result};
use crate::levy::{LevyMeasure, LevyTriplet};
use crate::quad::{integrate_region, Estimate, QuadOptions, Region};
use crate::special::{erf, gamma, sphere_area};

/// Largest truncation radius used for kernels with unbounded support.
pub const MAX_TRUNCATION_RADIUS: f64 = 1e8;

/// A point of `R^d`, `d ≤ 3`. Unused coordinates are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; 3],
    dim: usize,
}

impl Point {
    pub fn new(coords: &[f64]) -> Self {
        assert!((1..=3).contains(&coords.len()), "points live in R^1..R^3");
        let mut c = [0.0; 3];
        c[..coords.len()].copy_from_slice(coords);
        Point { coords: c, dim: coords.len() }
    }

    pub fn scalar(x: f64) -> Self {
        Point::new(&[x])
    }

    pub fn origin(dim: usize) -> Self {
        Point { coords: [0.0; 3], dim }
    }

    pub(crate) fn from_array(coords: [f64; 3], dim: usize) -> Self {
        Point { coords, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub(crate) fn array(&self) -> [f64; 3] {
        self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.coords()[k]
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        let mut c = [0.0; 3];
        for (k, v) in c.iter_mut().enumerate() {
            *v = self.coords[k] - rhs.coords[k];
        }
        Point { coords: c, dim: self.dim.max(rhs.dim) }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point { coords: [-self.coords[0], -self.coords[1], -self.coords[2]], dim: self.dim }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coords().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Where a kernel lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `f = 0` outside `[lo, hi]`.
    Bounded { lo: [f64; 3], hi: [f64; 3] },
    /// `|f(x)| ≤ constant · |x|^{−exponent}` for `|x| > radius`.
    Decay { radius: f64, exponent: f64, constant: f64 },
}

/// Tensor grid with multilinear interpolation; last axis varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridTable {
    axes: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl GridTable {
    pub fn new(axes: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(invalid!("tabulated kernel dimension must be 1, 2 or 3"));
        }
        for ax in &axes {
            if ax.len() < 2 || ax.windows(2).any(|w| !(w[1] > w[0])) || ax.iter().any(|v| !v.is_finite()) {
                return Err(invalid!("each grid axis needs ≥ 2 strictly increasing finite nodes"));
            }
        }
        let n: usize = axes.iter().map(Vec::len).product();
        if values.len() != n {
            return Err(invalid!("grid has {n} nodes but {} values", values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid!("tabulated kernel values must be finite"));
        }
        Ok(GridTable { axes, values })
    }

    /// Builds from scattered rows `(x₁ … x_d, value)` forming a full tensor grid.
    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != dim + 1) {
            return Err(invalid!("every grid row needs {} columns", dim + 1));
        }
        let mut axes: Vec<Vec<f64>> = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut ax: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            ax.sort_by(f64::total_cmp);
            ax.dedup();
            axes.push(ax);
        }
        let n: usize = axes.iter().map(Vec::len).product();
        if rows.len() != n {
            return Err(invalid!("{} rows do not form a full {}-point tensor grid", rows.len(), n));
        }
        let mut values = vec![f64::NAN; n];
        for r in rows {
            let mut idx = 0;
            for k in 0..dim {
                let i = axes[k].binary_search_by(|v| v.total_cmp(&r[k])).unwrap();
                idx = idx * axes[k].len() + i;
            }
            values[idx] = r[dim];
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(invalid!("duplicate grid rows"));
        }
        Self::new(axes, values)
    }

    fn dim(&self) -> usize {
        self.axes.len()
    }

    fn eval(&self, x: &[f64; 3]) -> f64 {
        let d = self.dim();
        let mut base = [0usize; 3];
        let mut frac = [0.0; 3];
        for k in 0..d {
            let ax = &self.axes[k];
            if x[k] < ax[0] || x[k] > ax[ax.len() - 1] {
                return 0.0;
            }
            let i = ax.partition_point(|&v| v <= x[k]).clamp(1, ax.len() - 1) - 1;
            base[k] = i;
            frac[k] = (x[k] - ax[i]) / (ax[i + 1] - ax[i]);
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            let mut idx = 0;
            for k in 0..d {
                let up = (corner >> k) & 1;
                w *= if up == 1 { frac[k] } else { 1.0 - frac[k] };
                idx = idx * self.axes[k].len() + base[k] + up;
            }
            if w != 0.0 {
                acc += w * self.values[idx];
            }
        }
        acc
    }
}

type KernelFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Shape {
    Boxcar { height: f64 },
    Tent,
    GaussianBump,
    PowerDecay { beta: f64 },
    Zero,
    Tabulated(Arc<GridTable>),
    Custom(KernelFn),
}

/// A moving-average kernel with its support metadata.
#[derive(Clone)]
pub struct Kernel {
    dim: usize,
    shape: Shape,
    support: Support,
    breaks: [Vec<f64>; 3],
    continuous: bool,
    label: String,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("support", &self.support)
            .finish()
    }
}

/// Absolute envelope-tail target when truncating unbounded supports.
pub const TAIL_TARGET: f64 = 1e-8;

/// Half-width of the cube the Gaussian bump is cut to; `e^{−625 p}` is
/// negligible for every exponent `p ≥ 0.05`.
const GAUSSIAN_CUTOFF: f64 = 25.0;

fn check_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(invalid!("kernel dimension {dim} not supported (1, 2 or 3)"))
    }
}

impl Kernel {
    /// `height · 1_{[lo, hi]}`.
    pub fn boxcar(lo: &[f64], hi: &[f64], height: f64) -> Result<Self> {
        let dim = lo.len();
        check_dim(dim)?;
        if hi.len() != dim || lo.iter().zip(hi).any(|(a, b)| !(b > a) || !a.is_finite() || !b.is_finite()) {
            return Err(invalid!("box corners must satisfy lo < hi componentwise"));
        }
        if !height.is_finite() {
            return Err(invalid!("box height must be finite"));
        }
        let (mut l, mut h) = ([0.0; 3], [0.0; 3]);
        l[..dim].copy_from_slice(lo);
        h[..dim].copy_from_slice(hi);
        Ok(Kernel {
            dim,
            shape: Shape::Boxcar { height },
            support: Support::Bounded { lo: l, hi: h },
            breaks: Default::default(),
            continuous: false,
            label: format!("box[{lo:?},{hi:?}]x{height}"),
        })
    }

    /// Indicator of `[0, 1]^d`.
    pub fn unit_box(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut k = Self::boxcar(&[0.0; 3][..dim], &[1.0; 3][..dim], 1.0)?;
        k.label = format!("unit-box-{dim}d");
        Ok(k)
    }

    /// `∏ (1 − |x_k|)₊`.
    pub fn tent(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Kernel {
            dim,
            shape: Shape::Tent,
            support: Support::Bounded { lo: [-1.0; 3], hi: [1.0; 3] },
            breaks: [vec![0.0], vec![0.0], vec![0.0]],
            continuous: true,
            label: format!("tent-{dim}d"),
        })
    }

    /// `e^{−|x|²}`, cut to `[−25, 25]^d`.
    pub fn gaussian_bump(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Kernel {
            dim,
            shape: Shape::GaussianBump,
            support: Support::Bounded { lo: [-GAUSSIAN_CUTOFF; 3], hi: [GAUSSIAN_CUTOFF; 3] },
            breaks: [vec![-3.0, 0.0, 3.0], vec![-3.0, 0.0, 3.0], vec![-3.0, 0.0, 3.0]],
            continuous: true,
            label: format!("gaussian-bump-{dim}d"),
        })
    }

    /// `(1 + |x|)^{−β}`: bounded, continuous, with envelope `|x|^{−β}`.
    pub fn power_decay(dim: usize, beta: f64) -> Result<Self> {
        check_dim(dim)?;
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(invalid!("decay exponent β must be positive"));
        }
        Ok(Kernel {
            dim,
            shape: Shape::PowerDecay { beta },
            support: Support::Decay { radius: 0.0, exponent: beta, constant: 1.0 },
            breaks: [vec![0.0], vec![0.0], vec![0.0]],
            continuous: true,
            label: format!("power-decay-{dim}d-beta{beta}"),
        })
    }

    /// `f ≡ 0` on `[0, 1]^d`.
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Kernel {
            dim,
            shape: Shape::Zero,
            support: Support::Bounded { lo: [0.0; 3], hi: [1.0; 3] },
            breaks: Default::default(),
            continuous: true,
            label: format!("zero-{dim}d"),
        })
    }

    /// Multilinear interpolant of a tensor grid, zero outside its bounding box.
    pub fn tabulated(grid: GridTable) -> Result<Self> {
        let dim = grid.dim();
        let (mut lo, mut hi) = ([0.0; 3], [0.0; 3]);
        let mut breaks: [Vec<f64>; 3] = Default::default();
        for k in 0..dim {
            let ax = &grid.axes[k];
            lo[k] = ax[0];
            hi[k] = ax[ax.len() - 1];
            breaks[k] = ax.clone();
        }
        Ok(Kernel {
            dim,
            shape: Shape::Tabulated(Arc::new(grid)),
            support: Support::Bounded { lo, hi },
            breaks,
            continuous: false,
            label: format!("tabulated-{dim}d"),
        })
    }

    /// User-supplied evaluator. For bounded supports the evaluator is only
    /// called inside the box.
    pub fn custom(
        dim: usize,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        support: Support,
        label: &str,
    ) -> Result<Self> {
        check_dim(dim)?;
        if let Support::Decay { radius, exponent, constant } = support {
            if !(radius >= 0.0 && exponent > 0.0 && constant > 0.0) {
                return Err(invalid!("decay envelope needs r₀ ≥ 0, β > 0, C > 0"));
            }
        }
        Ok(Kernel {
            dim,
            shape: Shape::Custom(Arc::new(f)),
            support,
            breaks: Default::default(),
            continuous: false,
            label: String::from(label),
        })
    }

    /// Interior points per axis where the kernel has a kink or jump.
    pub fn with_breakpoints(mut self, axis: usize, points: &[f64]) -> Self {
        self.breaks[axis].extend_from_slice(points);
        self
    }

    /// Unchecked metadata used only for reporting.
    pub fn with_continuity(mut self, continuous: bool) -> Self {
        self.continuous = continuous;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.shape, Shape::Zero) || matches!(self.shape, Shape::Boxcar { height } if height == 0.0)
    }

    /// `Some(h)` when the kernel is `h` times the indicator of its box.
    pub fn indicator_height(&self) -> Option<f64> {
        match self.shape {
            Shape::Boxcar { height } => Some(height),
            _ => None,
        }
    }

    /// Side lengths of the bounded support, if any.
    pub fn box_widths(&self) -> Option<[f64; 3]> {
        match self.support {
            Support::Bounded { lo, hi } => {
                let mut w = [0.0; 3];
                for k in 0..self.dim {
                    w[k] = hi[k] - lo[k];
                }
                Some(w)
            }
            Support::Decay { .. } => None,
        }
    }

    /// Euclidean diameter of the bounded support.
    pub fn diameter(&self) -> Option<f64> {
        self.box_widths().map(|w| w.iter().map(|x| x * x).sum::<f64>().sqrt())
    }

    pub fn eval(&self, x: &Point) -> f64 {
        debug_assert_eq!(x.dim(), self.dim);
        self.eval_at(&x.array())
    }

    pub(crate) fn eval_at(&self, x: &[f64; 3]) -> f64 {
        if let Support::Bounded { lo, hi } = &self.support {
            for k in 0..self.dim {
                if x[k] < lo[k] || x[k] > hi[k] {
                    return 0.0;
                }
            }
        }
        let d = self.dim;
        match &self.shape {
            Shape::Boxcar { height } => *height,
            Shape::Tent => (0..d).map(|k| (1.0 - x[k].abs()).max(0.0)).product(),
            Shape::GaussianBump => (-(0..d).map(|k| x[k] * x[k]).sum::<f64>()).exp(),
            Shape::PowerDecay { beta } => {
                let r = (0..d).map(|k| x[k] * x[k]).sum::<f64>().sqrt();
                (1.0 + r).powf(-beta)
            }
            Shape::Zero => 0.0,
            Shape::Tabulated(g) => g.eval(x),
            Shape::Custom(f) => f(&x[..d]),
        }
    }

    /// Closed-form `∫ |f|^p` when registered for the shape.
    pub fn closed_form_power_integral(&self, p: f64) -> Option<f64> {
        let d = self.dim as f64;
        match self.shape {
            Shape::Boxcar { height } => {
                let vol: f64 = self.box_widths()?.iter().take(self.dim).product();
                Some(if height == 0.0 { 0.0 } else { height.abs().powf(p) * vol })
            }
            Shape::Tent => Some((2.0 / (p + 1.0)).powf(d)),
            Shape::GaussianBump => {
                let one = (PI / p).sqrt() * erf(p.sqrt() * GAUSSIAN_CUTOFF);
                Some(one.powf(d))
            }
            Shape::PowerDecay { beta } => {
                let q = p * beta;
                if q <= d {
                    return None;
                }
                Some(sphere_area(self.dim) * gamma(d) * gamma(q - d) / gamma(q))
            }
            Shape::Zero => Some(0.0),
            _ => None,
        }
    }

    /// Envelope `(r₀, β, C)` for unbounded supports.
    pub fn envelope(&self) -> Option<(f64, f64, f64)> {
        match self.support {
            Support::Decay { radius, exponent, constant } => Some((radius, exponent, constant)),
            Support::Bounded { .. } => None,
        }
    }

    /// Tail bound `∫_{|x|>R} Σ coef · |f(x)|^order dx` from the envelope,
    /// valid for `R ≥ r₀`. Infinite when some `order · β ≤ d`.
    pub fn envelope_tail(&self, terms: &[(f64, f64)], radius: f64) -> f64 {
        let Some((r0, beta, c)) = self.envelope() else { return 0.0 };
        let d = self.dim as f64;
        let r = radius.max(r0);
        terms
            .iter()
            .filter(|(coef, _)| *coef > 0.0)
            .map(|&(coef, order)| {
                let q = order * beta - d;
                if q <= 0.0 {
                    f64::INFINITY
                } else {
                    coef * c.powf(order) * sphere_area(self.dim) * r.powf(-q) / q
                }
            })
            .sum()
    }

    /// Radius `R` for which [`Kernel::envelope_tail`] drops below `tol`,
    /// capped at [`MAX_TRUNCATION_RADIUS`]; returns `(R, tail(R))`.
    pub fn truncation(&self, terms: &[(f64, f64)], tol: f64) -> Result<(f64, f64)> {
        let Some((r0, beta, c)) = self.envelope() else { return Ok((0.0, 0.0)) };
        let d = self.dim as f64;
        let n = terms.len().max(1) as f64;
        let mut radius = r0.max(1.0);
        for &(coef, order) in terms.iter().filter(|t| t.0 > 0.0) {
            let q = order * beta - d;
            if q <= 0.0 {
                return Err(Error::Divergent(format!(
                    "|f|^{order} is not integrable: envelope exponent {beta} · {order} ≤ d = {d}"
                )));
            }
            let need = (n * coef * c.powf(order) * sphere_area(self.dim) / (q * tol)).powf(1.0 / q);
            if need.is_finite() {
                radius = radius.max(need);
            } else {
                radius = MAX_TRUNCATION_RADIUS;
            }
        }
        let radius = radius.min(MAX_TRUNCATION_RADIUS);
        Ok((radius, self.envelope_tail(terms, radius)))
    }

    /// Region carrying `x ↦ f(shift − x)`, with kernel breakpoints mapped.
    /// Unbounded supports use the cube of half-width `radius` around `shift`.
    pub fn reflected_region(&self, shift: &Point, radius: f64) -> Region {
        let s = shift.array();
        let mut region = Region::new(self.dim, [0.0; 3], [0.0; 3]);
        for k in 0..self.dim {
            match self.support {
                Support::Bounded { lo, hi } => {
                    region.lo[k] = s[k] - hi[k];
                    region.hi[k] = s[k] - lo[k];
                }
                Support::Decay { .. } => {
                    region.lo[k] = s[k] - radius;
                    region.hi[k] = s[k] + radius;
                }
            }
            region.breaks[k] = self.breaks[k].iter().map(|b| s[k] - b).collect();
            if matches!(self.support, Support::Decay { .. }) {
                region.breaks[k].extend(geometric_breaks(radius).map(|b| s[k] + b));
            }
        }
        region
    }

    /// Region carrying `f` itself.
    pub fn support_region(&self, radius: f64) -> Region {
        let mut region = Region::new(self.dim, [0.0; 3], [0.0; 3]);
        for k in 0..self.dim {
            match self.support {
                Support::Bounded { lo, hi } => {
                    region.lo[k] = lo[k];
                    region.hi[k] = hi[k];
                }
                Support::Decay { .. } => {
                    region.lo[k] = -radius;
                    region.hi[k] = radius;
                }
            }
            region.breaks[k] = self.breaks[k].clone();
            if matches!(self.support, Support::Decay { .. }) {
                region.breaks[k].extend(geometric_breaks(radius));
            }
        }
        region
    }

    /// `∫ |f|^p`, closed form when registered, else quadrature plus the
    /// envelope tail in the error estimate.
    pub fn power_integral(&self, p: f64, opts: &QuadOptions) -> Result<Estimate> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(invalid!("norm exponent p = {p} must be positive"));
        }
        if let Some((_, beta, _)) = self.envelope() {
            if p * beta <= self.dim as f64 {
                return Err(Error::Divergent(format!(
                    "‖f‖_{p} diverges: p·β = {} ≤ d = {}",
                    p * beta,
                    self.dim
                )));
            }
        }
        if let Some(v) = self.closed_form_power_integral(p) {
            return Ok(Estimate::exact(v));
        }
        let terms = [(1.0, p)];
        let (radius, tail) = self.truncation(&terms, TAIL_TARGET)?;
        let region = self.support_region(radius);
        let mut est = integrate_region(&region, |x| self.eval_at(x).abs().powf(p), opts)?;
        est.error += tail;
        Ok(est)
    }

    /// `‖f‖_p = (∫ |f|^p)^{1/p}` with propagated error.
    pub fn lp_norm(&self, p: f64, opts: &QuadOptions) -> Result<Estimate> {
        let i = self.power_integral(p, opts)?;
        let value = i.value.max(0.0).powf(1.0 / p);
        let error = if i.value > 0.0 { value / (p * i.value) * i.error } else { i.error.powf(1.0 / p) };
        Ok(Estimate { value, error })
    }

    /// The three Λ-integrability integrals.
    pub fn check_lambda_integrable(&self, triplet: &LevyTriplet, opts: &QuadOptions) -> IntegrabilityReport {
        IntegrabilityReport {
            drift: self.drift_condition(triplet, opts),
            gaussian: self.gaussian_condition(triplet, opts),
            jumps: self.jump_condition(triplet, opts),
        }
    }

    fn gaussian_condition(&self, triplet: &LevyTriplet, opts: &QuadOptions) -> Condition {
        let b0 = triplet.gaussian_coef();
        if b0 == 0.0 {
            return Condition::finite(Estimate::exact(0.0));
        }
        Condition::from_result(self.power_integral(2.0, opts).map(|e| e * (b0 * b0)))
    }

    fn jump_condition(&self, triplet: &LevyTriplet, opts: &QuadOptions) -> Condition {
        let measure = triplet.measure();
        match measure {
            LevyMeasure::None => Condition::finite(Estimate::exact(0.0)),
            LevyMeasure::Stable { alpha, c_pos, c_neg } => {
                let factor = (c_pos + c_neg) * 2.0 / (alpha * (2.0 - alpha));
                Condition::from_result(self.power_integral(*alpha, opts).map(|e| e * factor))
            }
            _ => {
                let m2 = triplet.re_growth_terms().iter().map(|t| t.0).sum::<f64>() * 2.0;
                let terms = [(m2, 2.0)];
                self.functional_condition(&terms, opts, |v| measure.jump_mass(v).unwrap_or(f64::NAN))
            }
        }
    }

    fn drift_condition(&self, triplet: &LevyTriplet, opts: &QuadOptions) -> Condition {
        let Some(order) = triplet.drift_tail_order() else {
            return Condition::finite(Estimate::exact(0.0));
        };
        let a0 = triplet.drift();
        let measure = triplet.measure();
        let coef = a0.abs() + drift_coefficient(measure);
        let terms = [(coef, order)];
        self.functional_condition(&terms, opts, |v| {
            if v == 0.0 {
                return 0.0;
            }
            v.abs() * (a0 + measure.drift_shift(v).unwrap_or(f64::NAN)).abs()
        })
    }

    /// `∫ g(f(x)) dx` for `g ≥ 0` dominated by `Σ coef |v|^order`.
    fn functional_condition(
        &self,
        terms: &[(f64, f64)],
        opts: &QuadOptions,
        g: impl Fn(f64) -> f64,
    ) -> Condition {
        let (radius, tail) = match self.truncation(terms, TAIL_TARGET) {
            Ok(rt) => rt,
            Err(Error::Divergent(_)) => return Condition::infinite(),
            Err(e) => return Condition::inconclusive(f64::NAN, e),
        };
        let region = self.support_region(radius);
        let result = integrate_region(&region, |x| g(self.eval_at(x)), opts).map(|mut e| {
            e.error += tail;
            e
        });
        match result {
            Ok(e) if e.value.is_nan() => Condition::inconclusive(f64::NAN, invalid!("integrand evaluation failed")),
            other => Condition::from_result(other),
        }
    }
}

/// `±2^j` inside `(−radius, radius)` for `j ≥ −2`, so panels on a huge
/// truncation cube still resolve the scale of the kernel near the origin.
fn geometric_breaks(radius: f64) -> impl Iterator<Item = f64> {
    (-2..64)
        .map(|j| 2f64.powi(j))
        .take_while(move |&b| b < radius)
        .flat_map(|b| [-b, b])
}

/// Coefficient bounding `|D(v)|` (or `|v|^{α−1}`-type growth) for small `v`.
fn drift_coefficient(measure: &LevyMeasure) -> f64 {
    match measure {
        LevyMeasure::None => 0.0,
        LevyMeasure::Stable { alpha, c_pos, c_neg } => {
            let dc = (c_pos - c_neg).abs();
            if (alpha - 1.0).abs() < 1e-14 {
                dc * 4.0 / core::f64::consts::E
            } else {
                dc / (1.0 - alpha).abs()
            }
        }
        LevyMeasure::CompoundPoisson { rate, jumps } => rate * jumps.iter().map(|j| j.weight * j.atom.abs()).sum::<f64>(),
        LevyMeasure::Tabulated(_) => measure.drift_shift(1e-12).map(f64::abs).unwrap_or(f64::INFINITY),
    }
}

/// Finiteness verdict for one integrability integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
    /// Quadrature exhausted its budget.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub value: f64,
    pub error: f64,
    pub status: Finiteness,
}

impl Condition {
    fn finite(e: Estimate) -> Self {
        Condition { value: e.value, error: e.error, status: Finiteness::Finite }
    }

    fn infinite() -> Self {
        Condition { value: f64::INFINITY, error: 0.0, status: Finiteness::Infinite }
    }

    fn inconclusive(value: f64, _cause: Error) -> Self {
        Condition { value, error: f64::INFINITY, status: Finiteness::Inconclusive }
    }

    fn from_result(r: Result<Estimate>) -> Self {
        match r {
            Ok(e) if e.value.is_finite() => Condition::finite(e),
            Ok(_) | Err(Error::Divergent(_)) => Condition::infinite(),
            Err(Error::Quadrature { value, residual }) => {
                Condition { value, error: residual, status: Finiteness::Inconclusive }
            }
            Err(e) => Condition::inconclusive(f64::NAN, e),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.status == Finiteness::Finite
    }
}

/// The drift, Gaussian and jump integrability integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrabilityReport {
    pub drift: Condition,
    pub gaussian: Condition,
    pub jumps: Condition,
}

impl IntegrabilityReport {
    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|(_, c)| c.is_finite())
    }

    pub fn conditions(&self) -> [(&'static str, &Condition); 3] {
        [("drift", &self.drift), ("gaussian", &self.gaussian), ("jumps", &self.jumps)]
    }

    /// Name of the first condition that is not finite.
    pub fn first_failure(&self) -> Option<(&'static str, Finiteness)> {
        self.conditions().iter().find(|(_, c)| !c.is_finite()).map(|(n, c)| (*n, c.status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::Jump;

    fn opts() -> QuadOptions {
        QuadOptions::default()
    }

    #[test]
    fn evaluation_examples() {
        let b = Kernel::unit_box(1).unwrap();
        assert_eq!(b.eval(&Point::scalar(0.5)), 1.0);
        assert_eq!(b.eval(&Point::scalar(1.5)), 0.0);
        let t = Kernel::tent(1).unwrap();
        assert_eq!(t.eval(&Point::scalar(0.25)), 0.75);
        assert_eq!(t.eval(&Point::scalar(-2.0)), 0.0);
        let z = Kernel::zero(2).unwrap();
        assert_eq!(z.eval(&Point::new(&[0.5, 0.5])), 0.0);
    }

    #[test]
    fn norm_examples() {
        let b2 = Kernel::unit_box(2).unwrap();
        assert_eq!(b2.lp_norm(0.5, &opts()).unwrap().value, 1.0);
        let t = Kernel::tent(1).unwrap();
        assert!((t.lp_norm(1.0, &opts()).unwrap().value - 1.0).abs() < 1e-15);
        let g = Kernel::gaussian_bump(1).unwrap();
        let expect = (PI / 2.0).sqrt().sqrt();
        assert!((g.lp_norm(2.0, &opts()).unwrap().value - expect).abs() < 1e-14);
        assert!((expect - 1.1195).abs() < 1e-4);
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        // the quadrature path, forced through a custom kernel wrapping each builtin
        for k in [
            Kernel::tent(1).unwrap(),
            Kernel::tent(2).unwrap(),
            Kernel::gaussian_bump(2).unwrap(),
            Kernel::power_decay(1, 3.0).unwrap(),
            Kernel::power_decay(2, 3.0).unwrap(),
        ] {
            let inner = k.clone();
            let mut c = Kernel::custom(k.dim(), move |x| inner.eval(&Point::new(x)), *k.support(), "wrap").unwrap();
            c.breaks = k.breaks.clone();
            for p in [0.7, 1.0, 2.0] {
                let exact = k.closed_form_power_integral(p).unwrap();
                let q = c.power_integral(p, &QuadOptions { rel_tol: 1e-9, ..opts() }).unwrap();
                let tol = 1e-7 * exact + q.error;
                assert!((q.value - exact).abs() <= tol, "{} p={p}: {} vs {exact} (err {})", k.label(), q.value, q.error);
            }
        }
    }

    #[test]
    fn indicator_norm_identity_and_monotonicity() {
        let inner = Kernel::boxcar(&[0.2, 0.0], &[0.7, 0.4], 1.0).unwrap();
        let outer = Kernel::boxcar(&[0.0, -0.5], &[1.0, 1.0], 1.0).unwrap();
        for p in [0.3, 1.0, 2.5] {
            let a = inner.lp_norm(p, &opts()).unwrap().value;
            let b = outer.lp_norm(p, &opts()).unwrap().value;
            assert!((a - 0.2f64.powf(1.0 / p)).abs() < 1e-8 * a);
            assert!((b - 1.5f64.powf(1.0 / p)).abs() < 1e-8 * b);
            assert!(a <= b);
        }
    }

    #[test]
    fn divergent_norm_rejected() {
        let k = Kernel::power_decay(1, 1.5).unwrap();
        assert!(matches!(k.lp_norm(0.5, &opts()), Err(Error::Divergent(_))));
        assert!(k.lp_norm(1.0, &opts()).is_ok());
        assert!(k.lp_norm(-1.0, &opts()).is_err());
    }

    #[test]
    fn tabulated_kernel_interpolates() {
        let rows: Vec<Vec<f64>> = [0.0, 0.5, 1.0]
            .iter()
            .flat_map(|&x| [0.0, 1.0].iter().map(move |&y| vec![x, y, x + 2.0 * y]))
            .collect();
        let g = GridTable::from_rows(2, &rows).unwrap();
        let k = Kernel::tabulated(g).unwrap();
        assert!((k.eval(&Point::new(&[0.25, 0.5])) - 1.25).abs() < 1e-15);
        assert_eq!(k.eval(&Point::new(&[1.5, 0.5])), 0.0);
        // ∫∫ (x + 2y) over the unit square = 1/2 + 1
        let i = k.power_integral(1.0, &opts()).unwrap();
        assert!((i.value - 1.5).abs() < 1e-12);
        assert!(GridTable::from_rows(2, &rows[..5]).is_err());
    }

    #[test]
    fn integrability_examples() {
        let b = Kernel::unit_box(1).unwrap();
        let g = LevyTriplet::gaussian(1.0).unwrap();
        let r = b.check_lambda_integrable(&g, &opts());
        assert!(r.passed());
        assert_eq!(r.drift.value, 0.0);
        assert_eq!(r.gaussian.value, 1.0);
        assert_eq!(r.jumps.value, 0.0);

        let s = LevyTriplet::calibrated_stable(1.5).unwrap();
        assert!(b.check_lambda_integrable(&s, &opts()).passed());

        // envelope |x|^{-1.5}, α = 0.5: αβ = 0.75 < d = 1
        let decay = Kernel::power_decay(1, 1.5).unwrap();
        let s05 = LevyTriplet::calibrated_stable(0.5).unwrap();
        let r = decay.check_lambda_integrable(&s05, &opts());
        assert_eq!(r.jumps.status, Finiteness::Infinite);
        assert_eq!(r.first_failure(), Some(("jumps", Finiteness::Infinite)));
        // α = 1: αβ = 1.5 > 1
        let s1 = LevyTriplet::calibrated_stable(1.0).unwrap();
        assert!(decay.check_lambda_integrable(&s1, &opts()).passed());
    }

    #[test]
    fn integrability_drift_and_jumps_by_quadrature() {
        // compound Poisson with one atom at 3 on the tent: the drift integrand is
        // |f| · λ·3 · 1{3 f ≤ 1}, jumps integrand is λ min(1, 9 f²).
        let cp = LevyTriplet::compound_poisson(2.0, vec![Jump { atom: 3.0, weight: 1.0 }]).unwrap();
        let t = Kernel::tent(1).unwrap();
        let r = t.check_lambda_integrable(&cp, &opts());
        assert!(r.passed());
        // drift: ∫_{f ≤ 1/3} 6 f = 6 · 2 ∫_0^{1/3} u du with u = 1 − |x|
        assert!((r.drift.value - 2.0 / 3.0).abs() < 1e-9, "{}", r.drift.value);
        // jumps: 2 [ 2 ∫_0^{1/3} 9u² du + 2 · 2/3 ]
        let expect = 2.0 * (2.0 * 9.0 * (1.0f64 / 3.0).powi(3) / 3.0 + 2.0 * (2.0 / 3.0));
        assert!((r.jumps.value - expect).abs() < 1e-9, "{} vs {expect}", r.jumps.value);
    }
}
