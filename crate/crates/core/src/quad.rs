//! Globally adaptive Gauss–Kronrod (7/15) quadrature over finite intervals,
//! with user breakpoints, and nested product integration over boxes in up
//! to three dimensions.
//!
//! The integrator keeps every subinterval in a max-heap keyed by its error
//! estimate and always bisects the worst one, so breakpoints supplied by the
//! caller become permanent panel edges. Failure to meet the tolerance within
//! the subdivision budget is an error carrying the partial value.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Scalar types the integrator can accumulate.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
    fn real(self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn real(self) -> f64 {
        self
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn real(self) -> f64 {
        self.re
    }
}

/// A value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<V = f64> {
    pub value: V,
    pub error: f64,
}

impl<V: QuadValue> Estimate<V> {
    pub fn exact(value: V) -> Self {
        Estimate { value, error: 0.0 }
    }

    pub fn zero() -> Self {
        Estimate { value: V::default(), error: 0.0 }
    }
}

impl<V: QuadValue> Add for Estimate<V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Estimate { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

impl<V: QuadValue> Sub for Estimate<V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Estimate { value: self.value - rhs.value, error: self.error + rhs.error }
    }
}

impl<V: QuadValue> Mul<f64> for Estimate<V> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Estimate { value: self.value * rhs, error: self.error * rhs.abs() }
    }
}

/// Tolerances and subdivision budget. The target is
/// `max(abs_tol, rel_tol · |I|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-15, rel_tol: 1e-10, max_subdivisions: 4000 }
    }
}

impl QuadOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(crate::error::invalid!("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(crate::error::invalid!("subdivision budget must be at least 1"));
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn gk15<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = fc.magnitude() * WGK[7];
    let mut fv1 = [V::default(); 7];
    let mut fv2 = [V::default(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            res_g = res_g + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).magnitude();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let scale = half.abs();
    res_abs *= scale;
    res_asc *= scale;
    let mut err = ((res_k - res_g) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (res_k * half, err)
}

/// One 15-point Kronrod rule applied to a pair of real integrands.
pub(crate) fn gk15_pair(a: f64, b: f64, f: impl Fn(f64) -> (f64, f64)) -> (f64, f64) {
    let g = |x: f64| {
        let (r, i) = f(x);
        Complex64::new(r, i)
    };
    let (v, _) = gk15(&g, a, b);
    (v.re, v.im)
}

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrate `f` over `[points[0], points[last]]`, treating every interior
/// point as a fixed panel edge. Points need not be sorted or distinct.
pub fn integrate<V, F>(f: F, points: &[f64], opts: &QuadOptions) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let mut pts: Vec<f64> = points.iter().copied().filter(|p| p.is_finite()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.len() < 2 {
        return Ok(Estimate::zero());
    }

    let mut heap = BinaryHeap::with_capacity(pts.len() + 16);
    let mut frozen: Vec<Panel<V>> = Vec::new();
    for w in pts.windows(2) {
        let (value, error) = gk15(&f, w[0], w[1]);
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }

    let mut splits = 0usize;
    let (mut total, mut total_err) = sum_panels(&heap, &frozen);
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.magnitude());
        if total_err <= target {
            // re-sum to shed the rounding drift of the running totals
            let (exact, exact_err) = sum_panels(&heap, &frozen);
            if exact_err <= opts.abs_tol.max(opts.rel_tol * exact.magnitude()) {
                return Ok(Estimate { value: exact, error: exact_err });
            }
            (total, total_err) = (exact, exact_err);
            continue;
        }
        let Some(worst) = heap.pop() else {
            // Every panel is at floating-point resolution; nothing left to refine.
            let (exact, exact_err) = sum_panels(&heap, &frozen);
            return Ok(Estimate { value: exact, error: exact_err });
        };
        if splits >= opts.max_subdivisions {
            heap.push(worst);
            let (exact, exact_err) = sum_panels(&heap, &frozen);
            return Err(Error::Quadrature { value: exact.real(), residual: exact_err });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if width <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE)
            || mid <= worst.a
            || mid >= worst.b
        {
            frozen.push(worst);
            continue;
        }
        splits += 1;
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total = total - worst.value + v1 + v2;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        if splits % 512 == 0 {
            (total, total_err) = sum_panels(&heap, &frozen);
        }
    }
}

fn sum_panels<V: QuadValue>(heap: &BinaryHeap<Panel<V>>, frozen: &[Panel<V>]) -> (V, f64) {
    let mut total = V::default();
    let mut err = 0.0;
    for p in heap.iter().chain(frozen.iter()) {
        total = total + p.value;
        err += p.error;
    }
    (total, err)
}

/// Axis-aligned box in `R^dim` (`dim ≤ 3`) with per-axis panel edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub dim: usize,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub breaks: [Vec<f64>; 3],
}

impl Region {
    pub fn new(dim: usize, lo: [f64; 3], hi: [f64; 3]) -> Self {
        Region { dim, lo, hi, breaks: [Vec::new(), Vec::new(), Vec::new()] }
    }

    pub fn is_empty(&self) -> bool {
        (0..self.dim).any(|k| !(self.hi[k] > self.lo[k]))
    }

    pub fn volume(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        (0..self.dim).map(|k| self.hi[k] - self.lo[k]).product()
    }

    /// Intersection; breakpoints of both inputs are kept.
    pub fn intersect(&self, other: &Region) -> Region {
        let mut out = Region::new(self.dim, [0.0; 3], [0.0; 3]);
        for k in 0..self.dim {
            out.lo[k] = self.lo[k].max(other.lo[k]);
            out.hi[k] = self.hi[k].min(other.hi[k]);
            out.breaks[k] = self.breaks[k].iter().chain(other.breaks[k].iter()).copied().collect();
        }
        out
    }

    /// Smallest box containing both; breakpoints of both plus their edges.
    pub fn hull(&self, other: &Region) -> Region {
        let mut out = Region::new(self.dim, [0.0; 3], [0.0; 3]);
        for k in 0..self.dim {
            out.lo[k] = self.lo[k].min(other.lo[k]);
            out.hi[k] = self.hi[k].max(other.hi[k]);
            let mut b: Vec<f64> = self.breaks[k].iter().chain(other.breaks[k].iter()).copied().collect();
            b.extend_from_slice(&[self.lo[k], self.hi[k], other.lo[k], other.hi[k]]);
            out.breaks[k] = b;
        }
        out
    }

    /// Adds the other region's breakpoints to this one.
    pub fn with_breaks_of(mut self, other: &Region) -> Region {
        for k in 0..self.dim {
            self.breaks[k].extend_from_slice(&other.breaks[k]);
            self.breaks[k].extend_from_slice(&[other.lo[k], other.hi[k]]);
        }
        self
    }

    fn axis_points(&self, axis: usize) -> Vec<f64> {
        let (lo, hi) = (self.lo[axis], self.hi[axis]);
        let mut pts = Vec::with_capacity(self.breaks[axis].len() + 2);
        pts.push(lo);
        pts.extend(self.breaks[axis].iter().copied().filter(|&b| b > lo && b < hi));
        pts.push(hi);
        pts
    }
}

/// Iterated one-dimensional integration over a box. The reported error is
/// the outer estimate plus the largest inner estimate times the outer width.
pub fn integrate_region<V, F>(region: &Region, f: F, opts: &QuadOptions) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: Fn(&[f64; 3]) -> V,
{
    if region.dim == 0 || region.dim > 3 {
        return Err(crate::error::invalid!("integration dimension {} not in 1..=3", region.dim));
    }
    if region.is_empty() {
        return Ok(Estimate::zero());
    }
    let failure = RefCell::new(None);
    let est = integrate_axis(region, 0, [0.0; 3], &f, opts, &failure);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(est),
    }
}

fn integrate_axis<V: QuadValue>(
    region: &Region,
    axis: usize,
    prefix: [f64; 3],
    f: &dyn Fn(&[f64; 3]) -> V,
    opts: &QuadOptions,
    failure: &RefCell<Option<Error>>,
) -> Estimate<V> {
    let pts = region.axis_points(axis);
    let last = axis + 1 == region.dim;
    let inner_err = Cell::new(0.0f64);
    let inner_opts = QuadOptions {
        abs_tol: opts.abs_tol / (region.hi[axis] - region.lo[axis]).max(1.0),
        ..*opts
    };
    let result = integrate(
        |x| {
            let mut p = prefix;
            p[axis] = x;
            if last {
                f(&p)
            } else {
                let e = integrate_axis(region, axis + 1, p, f, &inner_opts, failure);
                if e.error > inner_err.get() {
                    inner_err.set(e.error);
                }
                e.value
            }
        },
        &pts,
        opts,
    );
    match result {
        Ok(mut e) => {
            e.error += inner_err.get() * (region.hi[axis] - region.lo[axis]);
            e
        }
        Err(err) => {
            let partial = match &err {
                Error::Quadrature { residual, .. } => *residual,
                _ => f64::INFINITY,
            };
            failure.borrow_mut().get_or_insert(err);
            Estimate { value: V::default(), error: partial }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let e: Estimate = integrate(|x| x * x * x - 2.0 * x + 1.0, &[0.0, 2.0], &QuadOptions::default()).unwrap();
        assert!((e.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn kink_and_jump_with_breakpoints() {
        let opts = QuadOptions::default();
        let tent: Estimate = integrate(|x: f64| (1.0 - x.abs()).max(0.0), &[-2.0, -1.0, 0.0, 1.0, 2.0], &opts).unwrap();
        assert!((tent.value - 1.0).abs() < 1e-14);
        let step: Estimate = integrate(|x: f64| if x < 0.3 { 1.0 } else { 0.0 }, &[0.0, 0.3, 1.0], &opts).unwrap();
        assert!((step.value - 0.3).abs() < 1e-14);
    }

    #[test]
    fn unresolved_jump_still_converges_adaptively() {
        let opts = QuadOptions { rel_tol: 1e-8, ..Default::default() };
        let step: Estimate = integrate(|x: f64| if x < 0.3 { 1.0 } else { 0.0 }, &[0.0, 1.0], &opts).unwrap();
        assert!((step.value - 0.3).abs() < 1e-7);
    }

    #[test]
    fn oscillatory_and_complex() {
        let opts = QuadOptions::default();
        let e: Estimate<Complex64> =
            integrate(|x| Complex64::new(0.0, 3.0 * x).exp(), &[0.0, PI], &opts).unwrap();
        // ∫ e^{3ix} dx over [0, π] = (e^{3iπ} − 1)/(3i) = 2i/3
        assert!((e.value - Complex64::new(0.0, 2.0 / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let opts = QuadOptions { max_subdivisions: 3, rel_tol: 1e-14, abs_tol: 1e-300 };
        let r: Result<Estimate> = integrate(|x: f64| (1.0 / x).sin(), &[1e-6, 1.0], &opts);
        match r {
            Err(Error::Quadrature { residual, .. }) => assert!(residual > 0.0),
            other => panic!("expected budget failure, got {other:?}"),
        }
    }

    #[test]
    fn box_integration_three_dims() {
        let mut region = Region::new(3, [0.0, -1.0, 0.0], [1.0, 1.0, 2.0]);
        region.breaks[1].push(0.0);
        let e: Estimate = integrate_region(
            &region,
            |p| p[0] * p[1].abs() * (p[2] * p[2]),
            &QuadOptions::default(),
        )
        .unwrap();
        // (1/2) · 1 · (8/3)
        assert!((e.value - 4.0 / 3.0).abs() < 1e-12, "{}", e.value);
    }

    #[test]
    fn empty_region_is_zero() {
        let region = Region::new(2, [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]);
        let e: Estimate = integrate_region(&region, |_| 1.0, &QuadOptions::default()).unwrap();
        assert_eq!(e.value, 0.0);
    }
}
