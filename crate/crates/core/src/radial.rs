//! Expectations over the interferer distance law.

use crate::error::Result;
use crate::geometry::DistanceProfile;
use crate::quadrature::{integrate_partitioned, QuadConfig, QuadValue};
use crate::scalar::Real;

pub(crate) struct RadialExpectation<V> {
    pub value: V,
    /// 1 when a sector closed form failed and quadrature took over.
    pub fallbacks: usize,
}

/// `∫ h(r) f_R(r) dr` over `[0, r_max]`.
///
/// When `sector` is given it is asked for the closed form of
/// `Θ/|A| ∫_0^υ r h(r) dr` on the leading constant-angle interval; on failure
/// that piece is integrated numerically instead.
pub(crate) fn radial_expectation<T, V, H, S>(
    profile: &DistanceProfile<T>,
    h: H,
    sector: Option<S>,
    rel_tol: T,
) -> Result<RadialExpectation<V>>
where
    T: Real,
    V: QuadValue<T>,
    H: Fn(T) -> V,
    S: FnOnce(T, T) -> Result<V>,
{
    let points = profile.partition();
    let integrand = |r: T| {
        let w = profile.pdf(r);
        if w == T::zero() {
            V::zero()
        } else {
            h(r) * w
        }
    };

    if let (Some(closed), Some((theta, upsilon))) = (sector, profile.leading_sector()) {
        match closed(theta, upsilon) {
            Ok(head) if head.is_finite_value() => {
                let tail = integrate_pieces(&integrand, &points[1..], rel_tol)?;
                return Ok(RadialExpectation { value: head + tail, fallbacks: 0 });
            }
            Ok(_) => log::debug!("sector closed form not finite, using quadrature"),
            Err(e) => log::debug!("sector closed form unavailable ({e}), using quadrature"),
        }
        let all = integrate_pieces(&integrand, &points, rel_tol)?;
        return Ok(RadialExpectation { value: all, fallbacks: 1 });
    }
    let all = integrate_pieces(&integrand, &points, rel_tol)?;
    Ok(RadialExpectation { value: all, fallbacks: 0 })
}

/// Integrates over consecutive pieces `[points[i], points[i+1]]`, each mapped
/// by `r = a + (b - a)(1 - cos πu)/2`, `u ∈ [i, i+1]`. The distance density
/// has square-root behaviour at every breakpoint; the cosine map makes it
/// smooth, which plain Gauss-Kronrod panels resolve poorly.
fn integrate_pieces<T, V, F>(f: &F, points: &[T], rel_tol: T) -> Result<V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    if points.len() < 2 {
        return Ok(V::zero());
    }
    let cfg = QuadConfig::new(rel_tol, T::min_positive_value()).with_max_panels(2000);
    let half = T::lit(0.5);
    let mapped = |u: T| {
        let i = u.floor().to_usize().unwrap_or(0).min(points.len() - 2);
        let (a, b) = (points[i], points[i + 1]);
        let x = T::PI() * (u - T::from_usize_lossy(i));
        let r = a + (b - a) * half * (T::one() - x.cos());
        let jac = (b - a) * half * T::PI() * x.sin();
        if jac == T::zero() {
            V::zero()
        } else {
            f(r) * jac
        }
    };
    let knots: Vec<T> = (0..points.len()).map(T::from_usize_lossy).collect();
    Ok(integrate_partitioned(mapped, &knots, &cfg)?.value)
}
