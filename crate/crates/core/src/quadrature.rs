//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! Works for real- and complex-valued integrands through [`QuadValue`]. The
//! integration range can be pre-split at known breakpoints (kinks of a
//! piecewise density); all panels then share one global error budget.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_800_160,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values that can be integrated: real scalars and complex numbers.
pub trait QuadValue<T: Real>:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Send + Sync
{
    fn magnitude(self) -> T;
    fn is_finite_value(self) -> bool;
}

impl<T: Real> QuadValue<T> for T {
    fn magnitude(self) -> T {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn magnitude(self) -> T {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_panels: usize,
}

impl<T: Real> QuadConfig<T> {
    pub fn new(rel_tol: T, abs_tol: T) -> Self {
        QuadConfig {
            rel_tol,
            abs_tol,
            max_panels: 4000,
        }
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        QuadConfig::new(T::lit(1e-10), T::lit(1e-15))
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T, V> {
    pub value: V,
    pub abs_error: T,
    pub evaluations: usize,
}

struct Panel<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
}

struct ByError<T, V>(Panel<T, V>);

impl<T: Real, V> PartialEq for ByError<T, V> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}

impl<T: Real, V> Eq for ByError<T, V> {}

impl<T: Real, V> PartialOrd for ByError<T, V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real, V> Ord for ByError<T, V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .partial_cmp(&other.0.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T, V, F>(f: &mut F, a: T, b: T) -> Result<Panel<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> V,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);

    let mut fv = [V::zero(); 21];
    fv[10] = f(center);
    for k in 0..10 {
        let dx = half_len * T::lit(XGK[k]);
        fv[k] = f(center - dx);
        fv[20 - k] = f(center + dx);
    }
    if let Some(bad) = fv.iter().position(|v| !v.is_finite_value()) {
        let x = if bad == 10 {
            center
        } else if bad < 10 {
            center - half_len * T::lit(XGK[bad])
        } else {
            center + half_len * T::lit(XGK[20 - bad])
        };
        return Err(Error::numeric(
            "quadrature",
            format!("non-finite integrand at x = {x:e}"),
        ));
    }

    let mut k21 = fv[10] * T::lit(WGK[10]);
    let mut g10 = V::zero();
    for k in 0..10 {
        k21 = k21 + (fv[k] + fv[20 - k]) * T::lit(WGK[k]);
        if k % 2 == 1 {
            g10 = g10 + (fv[k] + fv[20 - k]) * T::lit(WG[k / 2]);
        }
    }
    let value = k21 * half_len;
    let mean = k21 * half;

    let mut res_abs = T::lit(WGK[10]) * fv[10].magnitude();
    let mut res_asc = T::lit(WGK[10]) * (fv[10] - mean).magnitude();
    for k in 0..10 {
        let w = T::lit(WGK[k]);
        res_abs += w * (fv[k].magnitude() + fv[20 - k].magnitude());
        res_asc += w * ((fv[k] - mean).magnitude() + (fv[20 - k] - mean).magnitude());
    }
    let scale = half_len.abs();
    res_abs *= scale;
    res_asc *= scale;

    let mut err = ((k21 - g10) * scale).magnitude();
    if res_asc > T::zero() && err > T::zero() {
        let ratio = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = res_asc * ratio.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > err {
        err = floor;
    }

    Ok(Panel {
        a,
        b,
        value,
        error: err,
    })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T, V, F>(f: F, a: T, b: T, cfg: &QuadConfig<T>) -> Result<Quadrature<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> V,
{
    integrate_partitioned(f, &[a, b], cfg)
}

/// Integrates `f` over `[points[0], points[n-1]]`, starting from the panels
/// delimited by the (sorted) `points`.
pub fn integrate_partitioned<T, V, F>(
    mut f: F,
    points: &[T],
    cfg: &QuadConfig<T>,
) -> Result<Quadrature<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> V,
{
    if points.len() < 2 {
        return Ok(Quadrature {
            value: V::zero(),
            abs_error: T::zero(),
            evaluations: 0,
        });
    }
    if points.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::invalid("quadrature breakpoints must be sorted"));
    }

    let mut heap = BinaryHeap::new();
    let mut frozen_value = V::zero();
    let mut frozen_error = T::zero();
    let mut evaluations = 0usize;

    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(ByError(kronrod(&mut f, w[0], w[1])?));
            evaluations += 21;
        }
    }

    let totals = |heap: &BinaryHeap<ByError<T, V>>, fv: V, fe: T| {
        heap.iter()
            .fold((fv, fe), |(v, e), p| (v + p.0.value, e + p.0.error))
    };

    loop {
        let (value, error) = totals(&heap, frozen_value, frozen_error);
        let target = cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
        if error <= target {
            return Ok(Quadrature {
                value,
                abs_error: error,
                evaluations,
            });
        }
        if heap.len() >= cfg.max_panels {
            return Err(Error::numeric(
                "quadrature",
                format!(
                    "no convergence after {} panels: error {error:e} > target {target:e}",
                    heap.len()
                ),
            ));
        }
        let Some(ByError(worst)) = heap.pop() else {
            // Every panel is at the resolution limit.
            if error <= target * T::lit(1e3) {
                return Ok(Quadrature {
                    value,
                    abs_error: error,
                    evaluations,
                });
            }
            return Err(Error::numeric(
                "quadrature",
                format!("roundoff limit reached: error {error:e} > target {target:e}"),
            ));
        };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        let width = worst.b - worst.a;
        let resolution = T::lit(100.0) * T::epsilon() * worst.a.abs().max(worst.b.abs()).max(T::min_positive_value());
        if width <= resolution {
            frozen_value = frozen_value + worst.value;
            frozen_error += worst.error;
            continue;
        }
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        evaluations += 42;
        heap.push(ByError(left));
        heap.push(ByError(right));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let cfg = QuadConfig::default();
        let q = integrate(|x: f64| x.powi(5) - 3.0 * x * x, 0.0, 2.0, &cfg).unwrap();
        assert!((q.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert_eq!(q.evaluations, 21);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        // d/dr of arccos-type kinks behave like sqrt near the breakpoint.
        let cfg = QuadConfig::new(1e-12, 1e-15);
        let q = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complex_oscillatory() {
        let cfg = QuadConfig::new(1e-12, 1e-15);
        let q = integrate(|x: f64| Complex::new(0.0, 20.0 * x).exp(), 0.0, 1.0, &cfg).unwrap();
        // (e^{20i} - 1) / (20i)
        let want = (Complex::new(0.0, 20.0f64).exp() - 1.0) / Complex::new(0.0, 20.0);
        assert!((q.value - want).norm() < 1e-13);
    }

    #[test]
    fn partitioned_matches_whole() {
        let cfg = QuadConfig::new(1e-12, 1e-15);
        let f = |x: f64| (x - 1.0).abs();
        let q = integrate_partitioned(f, &[0.0, 1.0, 3.0], &cfg).unwrap();
        assert!((q.value - 2.5).abs() < 1e-13);
    }

    #[test]
    fn unsorted_breakpoints_are_rejected() {
        let cfg = QuadConfig::default();
        let q = integrate(|x: f64| x, 1.0, 0.0, &cfg);
        assert!(q.is_err());
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let cfg = QuadConfig::default();
        let q = integrate(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, &cfg);
        // 0.5 is the center node of the first panel
        assert!(matches!(q, Err(Error::NumericFailure { .. })));
    }

    #[test]
    fn works_in_single_precision() {
        let cfg = QuadConfig::new(1e-5f32, 1e-7);
        let q = integrate(|x: f32| x.sin(), 0.0, std::f32::consts::PI, &cfg).unwrap();
        assert!((q.value - 2.0).abs() < 1e-5);
    }
}
