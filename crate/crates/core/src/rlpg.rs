//! Outage through the reference-link power-gain CDF.
//!
//! With `F_{G0}(g) = 1 - Σ a_nk g^k e^{-ng}` the outage `E[F_{G0}(βX)]`,
//! `X = 1/ρ0 + r0^α I`, expands by the binomial and multinomial theorems into
//! products of single-interferer expectations
//! `E[Ω_t] = E[exp(-nβ r0^α G R^{-α}) (G R^{-α})^t]`.
//! Exchangeability collapses the multinomial sum to integer partitions.

use rayon::prelude::*;

use crate::channel::{integer_shape, nakagami_as_general_cdf, GeneralFadingCdf, NakagamiChannel};
use crate::error::{Error, Result};
use crate::geometry::{DistanceProfile, Point, ReferencePoint, Region};
use crate::radial::radial_expectation;
use crate::scalar::Real;
use crate::scenario::{clamp_probability, Method, NumericSettings, OutageResult, Scenario};
use crate::specfun::{enumerate_weighted_partitions, gauss_2f1, ln_gamma};

/// Clamping slack for assembled RLPG probabilities.
const CLAMP_SLACK: f64 = 1e-9;

/// `ψ(θ, υ, τ)`: `Θ/|A| ∫_0^υ r E_G[Ω_τ | r] dr` on a constant-angle sector,
/// with exponential rate `rate` (the reference shape `m0` for Nakagami).
#[allow(clippy::too_many_arguments)]
pub fn psi_closed_form<T: Real>(
    theta: T,
    upsilon: T,
    tau: u32,
    m: T,
    rate: T,
    alpha: T,
    r0: T,
    beta: T,
    area: T,
) -> Result<T> {
    if !(upsilon >= T::zero()) {
        return Err(Error::invalid(format!("sector radius must be >= 0, got {upsilon}")));
    }
    if upsilon == T::zero() || theta == T::zero() {
        return Ok(T::zero());
    }
    let t = T::from_usize_lossy(tau as usize);
    let k = beta * r0.powf(alpha) * rate;
    let p = alpha * m + T::lit(2.0);
    let b = m + T::lit(2.0) / alpha;
    let z = -(m * upsilon.powf(alpha) / k);
    let f = gauss_2f1(m + t, b, b + T::one(), num_complex::Complex::from(z))?;
    if f.re <= T::zero() {
        return Err(Error::numeric("psi", format!("non-positive 2F1 value {}", f.re)));
    }
    let ln = theta.ln() + m * m.ln() + ln_gamma(m + t)? - ln_gamma(m)? - area.ln()
        - (m + t) * k.ln()
        + p * upsilon.ln()
        - p.ln()
        + f.re.ln();
    Ok(ln.exp())
}

/// `E[Ω_t]` for Nakagami-`m` interferers and reference shape `m0` (the
/// exponential rate of the Gamma CDF expansion).
#[allow(clippy::too_many_arguments)]
pub fn expectation_omega<T: Real>(
    profile: &DistanceProfile<T>,
    t: u32,
    m: T,
    m0: u32,
    alpha: T,
    r0: T,
    beta: T,
    settings: &NumericSettings<T>,
) -> Result<T> {
    if t >= m0 {
        return Err(Error::invalid(format!("t must be below m0 = {m0}, got {t}")));
    }
    Ok(omega_with_rate(profile, t, m, T::from_usize_lossy(m0 as usize), alpha, r0, beta, settings)?.0)
}

#[allow(clippy::too_many_arguments)]
fn omega_with_rate<T: Real>(
    profile: &DistanceProfile<T>,
    t: u32,
    m: T,
    rate: T,
    alpha: T,
    r0: T,
    beta: T,
    settings: &NumericSettings<T>,
) -> Result<(T, usize)> {
    let tf = T::from_usize_lossy(t as usize);
    let k = beta * r0.powf(alpha) * rate;
    let ln_c = m * m.ln() + ln_gamma(m + tf)? - ln_gamma(m)?;
    // m^m Γ(m+t)/Γ(m) · r^{αm} (m r^α + K)^{-(m+t)}
    let h = |r: T| {
        let ra = r.powf(alpha);
        (ln_c + m * ra.ln() - (m + tf) * (m * ra + k).ln()).exp()
    };
    let area = profile.area();
    let sector = settings.closed_form_sectors.then_some(|theta: T, upsilon: T| {
        psi_closed_form(theta, upsilon, t, m, rate, alpha, r0, beta, area)
    });
    let e = radial_expectation(profile, h, sector, settings.rel_tol)?;
    if !(e.value > T::zero() && e.value.is_finite()) {
        return Err(Error::numeric("omega expectation", format!("E[Ω_{t}] = {}", e.value)));
    }
    Ok((e.value, e.fallbacks))
}

/// Per-rate tables of `E[Ω_t]`, independent of the number of interferers.
/// Evaluate outage for any `M` with [`OmegaExpectationTable::outage`].
#[derive(Debug, Clone)]
pub struct OmegaExpectationTable<T> {
    terms: GeneralFadingCdf<T>,
    /// `(rate, E[Ω_0..=k_max])` per distinct rate.
    tables: Vec<(u32, Vec<T>)>,
    beta: T,
    rho0: T,
    r0_alpha: T,
    rel_tol: T,
    method: Method,
    fallbacks: usize,
}

impl<T: Real> OmegaExpectationTable<T> {
    /// Tables for a general reference-link CDF and Nakagami-`m` interferers.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        profile: &DistanceProfile<T>,
        reference: &GeneralFadingCdf<T>,
        m: T,
        alpha: T,
        r0: T,
        beta: T,
        rho0: T,
        settings: &NumericSettings<T>,
    ) -> Result<Self> {
        let jobs = table_jobs(reference);
        let results: Vec<(T, usize)> = jobs
            .par_iter()
            .map(|&(n, t)| {
                omega_with_rate(profile, t, m, T::from_usize_lossy(n as usize), alpha, r0, beta, settings)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_values(reference, &jobs, results, alpha, r0, beta, rho0, settings, Method::Rlpg))
    }

    #[allow(clippy::too_many_arguments)]
    fn from_values(
        reference: &GeneralFadingCdf<T>,
        jobs: &[(u32, u32)],
        results: Vec<(T, usize)>,
        alpha: T,
        r0: T,
        beta: T,
        rho0: T,
        settings: &NumericSettings<T>,
        method: Method,
    ) -> Self {
        let mut tables: Vec<(u32, Vec<T>)> = Vec::new();
        let mut fallbacks = 0;
        for (&(n, _), (v, fb)) in jobs.iter().zip(results) {
            fallbacks += fb;
            match tables.last_mut() {
                Some((rate, vals)) if *rate == n => vals.push(v),
                _ => tables.push((n, vec![v])),
            }
        }
        OmegaExpectationTable {
            terms: reference.clone(),
            tables,
            beta,
            rho0,
            r0_alpha: r0.powf(alpha),
            rel_tol: settings.rel_tol,
            method,
            fallbacks,
        }
    }

    /// `E[Ω_t]` at exponential rate `n`.
    pub fn value(&self, n: u32, t: u32) -> Option<T> {
        let (_, vals) = self.tables.iter().find(|(rate, _)| *rate == n)?;
        vals.get(t as usize).copied()
    }

    /// Number of sector closed forms replaced by quadrature while building.
    pub fn closed_form_fallbacks(&self) -> usize {
        self.fallbacks
    }

    /// Outage with `interferers` nodes.
    pub fn outage(&self, interferers: usize) -> Result<T> {
        let mut success = T::zero();
        let br = self.beta / self.rho0;
        let bk = self.beta * self.r0_alpha;
        for term in self.terms.terms() {
            let table = &self.tables.iter().find(|(n, _)| *n == term.n).expect("rate table").1;
            let mut inner = T::zero();
            let mut binom = T::one();
            for j in 0..=term.k {
                if j > 0 {
                    binom = binom * T::from_usize_lossy((term.k + 1 - j) as usize)
                        / T::from_usize_lossy(j as usize);
                }
                let sj = partition_sum(table, j, interferers);
                inner += binom * br.powi((term.k - j) as i32) * bk.powi(j as i32) * sj;
            }
            success += term.a * (-T::from_usize_lossy(term.n as usize) * br).exp() * inner;
        }
        clamp_probability(T::one() - success, T::lit(CLAMP_SLACK), "RLPG outage")
    }

    fn result(&self, interferers: usize) -> Result<OutageResult<T>> {
        let mut r = OutageResult::analytic(self.outage(interferers)?, self.method, self.rel_tol);
        r.closed_form_fallbacks = self.fallbacks;
        Ok(r)
    }
}

/// `(rate, t)` pairs needed by `reference`, grouped by rate, `t` ascending.
fn table_jobs<T: Real>(reference: &GeneralFadingCdf<T>) -> Vec<(u32, u32)> {
    let mut jobs = Vec::new();
    for n in reference.rates() {
        let k_max = reference.terms().iter().filter(|t| t.n == n).map(|t| t.k).max().unwrap_or(0);
        jobs.extend((0..=k_max).map(|t| (n, t)));
    }
    jobs
}

/// `E[I'^j exp(-nβ r0^α I')]` with `I' = Σ G_i R_i^{-α}` over `M` nodes,
/// from the per-node table `E[Ω_0..]`.
fn partition_sum<T: Real>(table: &[T], j: u32, interferers: usize) -> T {
    let e0 = table[0];
    let mut s = T::zero();
    for p in enumerate_weighted_partitions(j, interferers) {
        let mut prod = T::lit(p.multinomial_weight as f64) * T::lit(p.arrangement_count as f64);
        for &part in &p.parts {
            prod *= table[part as usize];
        }
        prod *= e0.powi((interferers - p.parts.len()) as i32);
        s += prod;
    }
    s
}

/// Outage for integer `m0` through the exponential-polynomial form of the
/// Gamma CDF. Non-integer `m0` is unsupported here; use
/// [`crate::mgf::outage_mgf`].
pub fn outage_rlpg<T: Real>(scenario: &Scenario<T>, settings: &NumericSettings<T>) -> Result<OutageResult<T>> {
    rlpg_table(scenario, settings)?.result(scenario.interferers)
}

/// Table for `scenario` that evaluates outage for any number of interferers.
pub fn rlpg_table<T: Real>(
    scenario: &Scenario<T>,
    settings: &NumericSettings<T>,
) -> Result<OmegaExpectationTable<T>> {
    scenario.validate()?;
    if integer_shape(scenario.channel.m0).is_none() {
        return Err(Error::Unsupported(format!(
            "the RLPG framework needs an integer m0, got {}; use the MGF framework",
            scenario.channel.m0
        )));
    }
    let reference = nakagami_as_general_cdf(scenario.channel.m0)?;
    let profile = scenario.profile()?;
    OmegaExpectationTable::build(
        &profile,
        &reference,
        scenario.channel.m,
        scenario.alpha,
        scenario.r0,
        scenario.beta,
        scenario.rho0,
        settings,
    )
}

/// Receiver at the center of a disk of radius `w`: every `E[Ω_t]` is a single
/// full-circle sector closed form.
#[allow(clippy::too_many_arguments)]
pub fn outage_disk_center<T: Real>(
    w: T,
    r0: T,
    interferers: usize,
    m0: T,
    m: T,
    alpha: T,
    beta: T,
    rho0: T,
) -> Result<OutageResult<T>> {
    let region = Region::disk(Point::new(T::zero(), T::zero()), w)?;
    let receiver = ReferencePoint::center(&region);
    let channel = NakagamiChannel::new(m0, m)?;
    let scenario = Scenario::new(region, receiver, r0, interferers, channel, alpha, beta, rho0)?;
    let Some(n) = integer_shape(m0) else {
        return Err(Error::Unsupported(format!(
            "the RLPG framework needs an integer m0, got {m0}; use the MGF framework"
        )));
    };
    let reference = nakagami_as_general_cdf(m0)?;
    let settings = NumericSettings::default();
    let area = T::PI() * w * w;
    let rate = T::from_usize_lossy(n as usize);
    let jobs = table_jobs(&reference);
    let mut values = Vec::with_capacity(jobs.len());
    for &(_, t) in &jobs {
        match psi_closed_form(T::two_pi(), w, t, m, rate, alpha, r0, beta, area) {
            Ok(v) => values.push((v, 0)),
            Err(e) => {
                log::debug!("disk-center closed form unavailable ({e}), using quadrature");
                let profile = scenario.profile()?;
                let quad = settings.quadrature_only();
                let (v, _) = omega_with_rate(&profile, t, m, rate, alpha, r0, beta, &quad)?;
                values.push((v, 1));
            }
        }
    }
    let table = OmegaExpectationTable::from_values(
        &reference, &jobs, values, alpha, r0, beta, rho0, &settings, Method::RlpgDiskCenter,
    );
    table.result(interferers)
}

/// Outage for an arbitrary exponential-polynomial reference-link CDF with
/// Nakagami-`m` interferers (`channel.m0` is ignored).
pub fn outage_general_family<T: Real>(
    scenario: &Scenario<T>,
    reference: &GeneralFadingCdf<T>,
    settings: &NumericSettings<T>,
) -> Result<OutageResult<T>> {
    scenario.validate()?;
    let profile = scenario.profile()?;
    let mut table = OmegaExpectationTable::build(
        &profile,
        reference,
        scenario.channel.m,
        scenario.alpha,
        scenario.r0,
        scenario.beta,
        scenario.rho0,
        settings,
    )?;
    table.method = Method::GeneralFamily;
    table.result(scenario.interferers)
}
