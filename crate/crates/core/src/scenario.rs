//! Problem instances and results.

use crate::channel::NakagamiChannel;
use crate::error::{Error, Result};
use crate::geometry::{DistanceProfile, ReferencePoint, Region};
use crate::scalar::Real;

/// `10^{dB/10}`.
pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

/// A reference link of length `r0` at `receiver`, `M` interferers uniform in
/// `region`, unit transmit powers, path-loss exponent `alpha`, linear SINR
/// threshold `beta` and linear SNR `rho0`.
#[derive(Debug, Clone)]
pub struct Scenario<T> {
    pub region: Region<T>,
    pub receiver: ReferencePoint<T>,
    pub r0: T,
    pub interferers: usize,
    pub channel: NakagamiChannel<T>,
    pub alpha: T,
    pub beta: T,
    pub rho0: T,
}

impl<T: Real> Scenario<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        region: Region<T>,
        receiver: ReferencePoint<T>,
        r0: T,
        interferers: usize,
        channel: NakagamiChannel<T>,
        alpha: T,
        beta: T,
        rho0: T,
    ) -> Result<Self> {
        let s = Scenario { region, receiver, r0, interferers, channel, alpha, beta, rho0 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("r0", self.r0)?;
        positive("beta", self.beta)?;
        positive("rho0", self.rho0)?;
        if !(self.alpha >= T::lit(2.0) && self.alpha <= T::lit(6.0)) {
            return Err(Error::invalid(format!("alpha must lie in [2, 6], got {}", self.alpha)));
        }
        NakagamiChannel::new(self.channel.m0, self.channel.m)?;
        ReferencePoint::new(&self.region, self.receiver.location())?;
        Ok(())
    }

    pub fn profile(&self) -> Result<DistanceProfile<T>> {
        DistanceProfile::new(&self.region, self.receiver.location())
    }

    pub fn with_interferers(&self, m: usize) -> Self {
        Scenario { interferers: m, ..self.clone() }
    }
}

/// Which computation produced an [`OutageResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Mgf,
    Rlpg,
    RlpgDiskCenter,
    GeneralFamily,
    MonteCarlo,
    Ppp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mgf => "mgf",
            Method::Rlpg => "rlpg",
            Method::RlpgDiskCenter => "rlpg-disk-center",
            Method::GeneralFamily => "rlpg-general",
            Method::MonteCarlo => "mc",
            Method::Ppp => "ppp",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerances shared by the analytic frameworks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericSettings<T> {
    /// Relative tolerance of every adaptive quadrature.
    pub rel_tol: T,
    /// Use the sector closed forms on the leading constant-angle interval.
    pub closed_form_sectors: bool,
}

impl<T: Real> Default for NumericSettings<T> {
    fn default() -> Self {
        NumericSettings { rel_tol: T::lit(1e-11), closed_form_sectors: true }
    }
}

impl<T: Real> NumericSettings<T> {
    pub fn quadrature_only(self) -> Self {
        NumericSettings { closed_form_sectors: false, ..self }
    }
}

/// Outage probability with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageResult<T> {
    pub outage: T,
    pub method: Method,
    /// Quadrature tolerance (analytic methods).
    pub rel_tol: Option<T>,
    /// Euler inversion `(A, B, C)` (MGF only).
    pub inversion: Option<(T, usize, usize)>,
    /// Standard error and trial count (Monte Carlo only).
    pub std_error: Option<T>,
    pub trials: Option<u64>,
    /// Number of sector pieces where the closed form was replaced by quadrature.
    pub closed_form_fallbacks: usize,
}

impl<T: Real> OutageResult<T> {
    pub(crate) fn analytic(outage: T, method: Method, rel_tol: T) -> Self {
        OutageResult {
            outage,
            method,
            rel_tol: Some(rel_tol),
            inversion: None,
            std_error: None,
            trials: None,
            closed_form_fallbacks: 0,
        }
    }

    /// 95% normal-approximation interval (Monte Carlo only).
    pub fn confidence_interval(&self) -> Option<(T, T)> {
        let se = self.std_error?;
        let h = T::lit(1.96) * se;
        Some(((self.outage - h).max(T::zero()), (self.outage + h).min(T::one())))
    }
}

/// Clamping policy for assembled probabilities: values within `slack` below 0
/// (or above 1) are round-off and are clamped with a warning; anything
/// further out is a numerical failure.
pub(crate) fn clamp_probability<T: Real>(v: T, slack: T, context: &str) -> Result<T> {
    if !v.is_finite() || v < -slack || v > T::one() + slack {
        return Err(Error::numeric(context, format!("probability {v} outside [0, 1]")));
    }
    if v < T::zero() || v > T::one() {
        log::warn!("{context}: clamping {v} into [0, 1]");
    }
    Ok(v.max(T::zero()).min(T::one()))
}
