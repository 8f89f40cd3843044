//! Outage through numerical Laplace inversion of the CDF of
//! `Z = 1/(ρ0 G0) + r0^α I / G0`, where `I = Σ G_i R_i^{-α}`.
//!
//! Outage is `P(Z > 1/β) = 1 - F_Z(1/β)`. The transform of `Z` factorises
//! over the i.i.d. interferers once `G0` is fixed, so only a one-dimensional
//! radial integral (per `s` and `g0`) and one outer integral over `g0` are
//! needed. Works for any real `m0, m >= 0.5`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::DistanceProfile;
use crate::quadrature::{integrate_partitioned, QuadConfig};
use crate::radial::radial_expectation;
use crate::scalar::Real;
use crate::scenario::{clamp_probability, Method, NumericSettings, OutageResult, Scenario};
use crate::specfun::{gauss_2f1, ln_gamma};

/// Euler-summation parameters. `s_c = (A + 2πic) / (2z)` for
/// `c = 0..=B+C`; the partial sums `C..=C+B` are binomially averaged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerInversionParams<T> {
    pub a: T,
    pub b: usize,
    pub c: usize,
}

impl<T: Real> Default for EulerInversionParams<T> {
    /// `A = 8 ln 10`, `B = 11`, `C = 14`, good for about 1e-8.
    fn default() -> Self {
        EulerInversionParams { a: T::lit(8.0) * T::LN_10(), b: 11, c: 14 }
    }
}

impl<T: Real> EulerInversionParams<T> {
    pub fn new(a: T, b: usize, c: usize) -> Result<Self> {
        let p = EulerInversionParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    /// Smallest parameters meeting the usual guideline for accuracy
    /// `10^{-zeta}`: `A >= ζ ln 10`, `B >= 1.243ζ - 1`, `C >= 1.467ζ`.
    pub fn from_accuracy(zeta: T) -> Result<Self> {
        if !(zeta > T::zero()) || zeta > T::lit(15.0) {
            return Err(Error::invalid(format!("accuracy exponent must lie in (0, 15], got {zeta}")));
        }
        let b = (T::lit(1.243) * zeta - T::one()).ceil().max(T::one());
        let c = (T::lit(1.467) * zeta).ceil().max(T::one());
        Self::new(
            zeta * T::LN_10(),
            b.to_usize().unwrap_or(1),
            c.to_usize().unwrap_or(1),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > T::zero() && self.a.is_finite()) {
            return Err(Error::invalid(format!("inversion A must be positive, got {}", self.a)));
        }
        if self.b == 0 || self.c == 0 || self.b > 60 || self.c > 200 {
            return Err(Error::invalid(format!(
                "inversion B and C must lie in 1..=60 and 1..=200, got {} and {}",
                self.b, self.c
            )));
        }
        Ok(())
    }

    /// The `B + C + 1` transform abscissae for the CDF at `z`.
    pub fn abscissae(&self, z: T) -> Vec<Complex<T>> {
        let two_z = T::lit(2.0) * z;
        (0..=self.b + self.c)
            .map(|c| Complex::new(self.a / two_z, T::two_pi() * T::from_usize_lossy(c) / two_z))
            .collect()
    }

    /// Weight of `D_c`: 2 for `c = 0`, 1 otherwise.
    pub fn d_weight(c: usize) -> T {
        if c == 0 {
            T::lit(2.0)
        } else {
            T::one()
        }
    }

    /// Combines `Re{L_pdf(s_c)/s_c}` values into the CDF estimate at `z`.
    fn assemble(&self, z: T, re_terms: &[T]) -> T {
        // Alternating partial sums S_n for n = 0..=B+C.
        let mut partial = Vec::with_capacity(re_terms.len());
        let mut acc = T::zero();
        for (c, &t) in re_terms.iter().enumerate() {
            let sign = if c % 2 == 0 { T::one() } else { -T::one() };
            acc += sign * t / Self::d_weight(c);
            partial.push(acc);
        }
        let mut binom = T::one();
        let mut avg = T::zero();
        for b in 0..=self.b {
            if b > 0 {
                binom = binom * T::from_usize_lossy(self.b + 1 - b) / T::from_usize_lossy(b);
            }
            avg += binom * partial[self.c + b];
        }
        let scale = (self.a / T::lit(2.0)).exp() / z * T::lit(2.0).powi(-(self.b as i32));
        scale * avg
    }
}

/// CDF at `z > 0` of a nonnegative variable whose density has Laplace
/// transform `laplace_of_pdf`. The transform is evaluated at the `B + C + 1`
/// abscissae in parallel; the sum is assembled in a fixed order.
pub fn euler_invert_cdf<T, L>(laplace_of_pdf: L, z: T, params: &EulerInversionParams<T>) -> Result<T>
where
    T: Real,
    L: Fn(Complex<T>) -> Result<Complex<T>> + Sync,
{
    params.validate()?;
    if !(z > T::zero() && z.is_finite()) {
        return Err(Error::invalid(format!("inversion point must be positive, got {z}")));
    }
    let s = params.abscissae(z);
    let values: Vec<Complex<T>> = s.par_iter().map(|&s| laplace_of_pdf(s)).collect::<Result<_>>()?;
    let mut re_terms = Vec::with_capacity(values.len());
    for (l, s) in values.iter().zip(&s) {
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Err(Error::numeric("Laplace inversion", format!("transform at s = {s} is {l}")));
        }
        re_terms.push((l / s).re);
    }
    let f = params.assemble(z, &re_terms);
    if !f.is_finite() {
        return Err(Error::numeric("Laplace inversion", "non-finite estimate"));
    }
    Ok(f.max(T::zero()).min(T::one()))
}

/// `Θ/|A| ∫_0^υ r (1 + K/(m r^α))^{-m} dr` with `K = r0^α s / g0`, through
/// `₂F₁(m, m + 2/α; m + 2/α + 1; -m υ^α / K)`.
#[allow(clippy::too_many_arguments)]
pub fn phi_closed_form<T: Real>(
    theta: T,
    upsilon: T,
    m: T,
    alpha: T,
    r0: T,
    s: Complex<T>,
    g0: T,
    area: T,
) -> Result<Complex<T>> {
    if !(upsilon >= T::zero()) {
        return Err(Error::invalid(format!("sector radius must be >= 0, got {upsilon}")));
    }
    if upsilon == T::zero() || theta == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let k = s * (r0.powf(alpha) / g0);
    let p = alpha * m + T::lit(2.0);
    let b = m + T::lit(2.0) / alpha;
    let z = -(Complex::from(m * upsilon.powf(alpha)) / k);
    let f = gauss_2f1(m, b, b + T::one(), z)?;
    let ln_pref = Complex::from(theta.ln() + m * m.ln() + p * upsilon.ln() - p.ln() - area.ln())
        - k.ln() * m;
    Ok(ln_pref.exp() * f)
}

/// `E_{G,R}[exp(-s G R^{-α} r0^α / g0)]` for one interferer.
#[allow(clippy::too_many_arguments)]
pub fn inner_expectation<T: Real>(
    profile: &DistanceProfile<T>,
    m: T,
    alpha: T,
    r0: T,
    s: Complex<T>,
    g0: T,
    settings: &NumericSettings<T>,
) -> Result<Complex<T>> {
    Ok(inner_with_fallbacks(profile, m, alpha, r0, s, g0, settings)?.0)
}

#[allow(clippy::too_many_arguments)]
fn inner_with_fallbacks<T: Real>(
    profile: &DistanceProfile<T>,
    m: T,
    alpha: T,
    r0: T,
    s: Complex<T>,
    g0: T,
    settings: &NumericSettings<T>,
) -> Result<(Complex<T>, usize)> {
    if !(s.re > T::zero()) || !(g0 > T::zero()) {
        return Err(Error::Domain(format!("need Re(s) > 0 and g0 > 0, got s = {s}, g0 = {g0}")));
    }
    let k = s * (r0.powf(alpha) / g0);
    let h = |r: T| {
        let w = k / (m * r.powf(alpha));
        (-(Complex::from(T::one()) + w).ln() * m).exp()
    };
    let area = profile.area();
    let sector = settings
        .closed_form_sectors
        .then_some(|theta: T, upsilon: T| phi_closed_form(theta, upsilon, m, alpha, r0, s, g0, area));
    let e = radial_expectation(profile, h, sector, settings.rel_tol)?;
    Ok((e.value, e.fallbacks))
}

/// Transform of the density of `Z` at `s`, plus closed-form fallback count.
fn laplace_of_z<T: Real>(
    scenario: &Scenario<T>,
    profile: &DistanceProfile<T>,
    s: Complex<T>,
    settings: &NumericSettings<T>,
) -> Result<(Complex<T>, usize)> {
    let m0 = scenario.channel.m0;
    let m = scenario.channel.m;
    let mi = scenario.interferers as i32;
    let cfg = QuadConfig::new(settings.rel_tol, settings.rel_tol * T::lit(1e-3));
    let ln_norm = m0 * m0.ln() - ln_gamma(m0)?;
    let tiny = T::lit(1e-300);
    let mut fallbacks = 0usize;
    let mut failure = None;
    let half = T::lit(0.5);

    let integrand = |u: T| -> Complex<T> {
        if failure.is_some() || !(u > T::zero() && u < T::one()) {
            return Complex::new(T::zero(), T::zero());
        }
        let one_m_u = T::one() - u;
        let g0 = u / one_m_u;
        // exp(-s/(ρ0 g0)) · Gamma pdf · Jacobian, in the log domain.
        let ln_weight = -s / (scenario.rho0 * g0)
            + Complex::from(ln_norm + (m0 - T::one()) * g0.ln() - m0 * g0 - T::lit(2.0) * one_m_u.ln());
        if ln_weight.re < tiny.ln() {
            return Complex::new(T::zero(), T::zero());
        }
        let weight = ln_weight.exp();
        if mi == 0 {
            return weight;
        }
        match inner_with_fallbacks(profile, m, scenario.alpha, scenario.r0, s, g0, settings) {
            Ok((e, fb)) => {
                fallbacks += fb;
                weight * e.powi(mi)
            }
            Err(e) => {
                failure = Some(e);
                Complex::new(T::zero(), T::zero())
            }
        }
    };
    let q = integrate_partitioned(integrand, &[T::zero(), half, T::one()], &cfg);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((q?.value, fallbacks))
}

/// Outage probability for any real `m0, m >= 0.5`.
pub fn outage_mgf<T: Real>(
    scenario: &Scenario<T>,
    params: &EulerInversionParams<T>,
    settings: &NumericSettings<T>,
) -> Result<OutageResult<T>> {
    scenario.validate()?;
    params.validate()?;
    let profile = scenario.profile()?;
    let z = T::one() / scenario.beta;
    let s = params.abscissae(z);
    let values: Vec<(Complex<T>, usize)> = s
        .par_iter()
        .map(|&s| laplace_of_z(scenario, &profile, s, settings))
        .collect::<Result<_>>()?;
    let mut re_terms = Vec::with_capacity(values.len());
    let mut fallbacks = 0;
    for ((l, fb), s) in values.iter().zip(&s) {
        if !(l.re.is_finite() && l.im.is_finite()) {
            return Err(Error::numeric("MGF outage", format!("transform at s = {s} is {l}")));
        }
        re_terms.push((l / s).re);
        fallbacks += fb;
    }
    let cdf = params.assemble(z, &re_terms);
    // The inversion itself is only accurate to about e^{-A}; past 1e-3 it is broken.
    let slack = T::lit(1e-9).max(T::lit(10.0) * (-params.a).exp()).min(T::lit(1e-3));
    let outage = clamp_probability(T::one() - cdf, slack, "MGF outage")?;
    let mut r = OutageResult::analytic(outage, Method::Mgf, settings.rel_tol);
    r.inversion = Some((params.a, params.b, params.c));
    r.closed_form_fallbacks = fallbacks;
    Ok(r)
}
