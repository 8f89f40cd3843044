//! Fading power-gain laws.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_gamma;

/// Nakagami-m fading on the reference link (`m0`) and on every interfering
/// link (`m`), unit mean power gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiChannel<T> {
    pub m0: T,
    pub m: T,
    /// Set when the shapes come from a Hoyt or Rice mapping.
    pub approximate: bool,
}

impl<T: Real> NakagamiChannel<T> {
    pub fn new(m0: T, m: T) -> Result<Self> {
        for (name, v) in [("m0", m0), ("m", m)] {
            if !(v >= T::lit(0.5)) || !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite and >= 0.5, got {v}")));
            }
        }
        Ok(NakagamiChannel { m0, m, approximate: false })
    }

    pub fn rayleigh() -> Self {
        NakagamiChannel { m0: T::one(), m: T::one(), approximate: false }
    }

    /// Nakagami approximation of Hoyt fading with parameters `q0`, `q` in (0, 1].
    pub fn from_hoyt(q0: T, q: T) -> Result<Self> {
        let mut ch = Self::new(hoyt_to_m(q0)?, hoyt_to_m(q)?)?;
        ch.approximate = true;
        Ok(ch)
    }

    /// Nakagami approximation of Rician fading with parameters `n0`, `n` >= 0.
    pub fn from_rice(n0: T, n: T) -> Result<Self> {
        let mut ch = Self::new(rice_to_m(n0)?, rice_to_m(n)?)?;
        ch.approximate = true;
        Ok(ch)
    }

    /// `m0` as an integer, when it is one.
    pub fn integer_m0(&self) -> Option<u32> {
        integer_shape(self.m0)
    }
}

pub(crate) fn integer_shape<T: Real>(x: T) -> Option<u32> {
    let r = x.round();
    if (x - r).abs() <= T::lit(1e-12) * r.max(T::one()) && r >= T::one() {
        r.to_u32()
    } else {
        None
    }
}

/// Hoyt `q` to Nakagami `m = (1 + q²)² / (2(1 + q⁴))`.
pub fn hoyt_to_m<T: Real>(q: T) -> Result<T> {
    if !(q > T::zero()) || q > T::one() {
        return Err(Error::invalid(format!("Hoyt q must lie in (0, 1], got {q}")));
    }
    let q2 = q * q;
    Ok((T::one() + q2).powi(2) / (T::lit(2.0) * (T::one() + q2 * q2)))
}

/// Rice `n` to Nakagami `m = (1 + n²)² / (1 + 2n²)`.
pub fn rice_to_m<T: Real>(n: T) -> Result<T> {
    if !(n >= T::zero()) || !n.is_finite() {
        return Err(Error::invalid(format!("Rice n must be >= 0, got {n}")));
    }
    let n2 = n * n;
    Ok((T::one() + n2).powi(2) / (T::one() + T::lit(2.0) * n2))
}

/// Unit-mean Gamma density `g^{m-1} m^m e^{-mg} / Γ(m)`.
pub fn nakagami_power_gain_pdf<T: Real>(m: T, g: T) -> Result<T> {
    if !(m >= T::lit(0.5)) || !m.is_finite() {
        return Err(Error::Domain(format!("Nakagami shape must be >= 0.5, got {m}")));
    }
    if !(g >= T::zero()) {
        return Err(Error::Domain(format!("power gain must be >= 0, got {g}")));
    }
    if g == T::zero() {
        return Ok(if m == T::one() {
            T::one()
        } else if m < T::one() {
            T::infinity()
        } else {
            T::zero()
        });
    }
    Ok(((m - T::one()) * g.ln() + m * m.ln() - m * g - ln_gamma(m)?).exp())
}

/// One term `a·g^k·e^{-n·g}` of an exponential-polynomial CDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingTerm<T> {
    pub n: u32,
    pub k: u32,
    pub a: T,
}

/// `F(g) = 1 - Σ a_nk g^k e^{-n g}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralFadingCdf<T> {
    terms: Vec<FadingTerm<T>>,
}

const CDF_SLACK: f64 = 1e-14;

impl<T: Real> GeneralFadingCdf<T> {
    /// Validates the coefficient table: `n >= 1`, finite coefficients,
    /// `F(0) >= 0` and `F` nondecreasing on a test grid.
    pub fn new(terms: Vec<FadingTerm<T>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("fading CDF needs at least one term"));
        }
        if let Some(t) = terms.iter().find(|t| t.n == 0 || !t.a.is_finite()) {
            return Err(Error::invalid(format!(
                "fading CDF term (n = {}, k = {}, a = {}) needs n >= 1 and finite a",
                t.n, t.k, t.a
            )));
        }
        let cdf = GeneralFadingCdf { terms };
        let mut last = cdf.raw(T::zero());
        if last < -T::lit(CDF_SLACK) {
            return Err(Error::ModelInconsistency(format!("F(0) = {last} is negative")));
        }
        for i in 1..=400 {
            let g = T::lit(10f64.powf(-4.0 + 7.0 * i as f64 / 400.0));
            let v = cdf.raw(g);
            if v < last - T::lit(1e-12) || v > T::one() + T::lit(CDF_SLACK) {
                return Err(Error::ModelInconsistency(format!(
                    "fading CDF is not a distribution near g = {g} (F = {v})"
                )));
            }
            last = v;
        }
        Ok(cdf)
    }

    pub fn terms(&self) -> &[FadingTerm<T>] {
        &self.terms
    }

    /// Distinct exponential rates `n`, ascending.
    pub fn rates(&self) -> Vec<u32> {
        let mut n: Vec<u32> = self.terms.iter().map(|t| t.n).collect();
        n.sort_unstable();
        n.dedup();
        n
    }

    fn raw(&self, g: T) -> T {
        let mut s = T::zero();
        for t in &self.terms {
            s += t.a * g.powi(t.k as i32) * (-T::from_usize_lossy(t.n as usize) * g).exp();
        }
        T::one() - s
    }

    /// Evaluates the CDF, absorbing round-off of at most 1e-14 outside [0, 1].
    pub fn eval(&self, g: T) -> Result<T> {
        if !(g >= T::zero()) {
            return Err(Error::Domain(format!("power gain must be >= 0, got {g}")));
        }
        let v = self.raw(g);
        let slack = T::lit(CDF_SLACK);
        if v < -slack || v > T::one() + slack {
            return Err(Error::ModelInconsistency(format!("F({g}) = {v} leaves [0, 1]")));
        }
        Ok(v.max(T::zero()).min(T::one()))
    }
}

/// Gamma CDF with integer shape as an exponential polynomial:
/// `N = {m0}`, `K = {0..m0-1}`, `a_k = m0^k / k!`.
pub fn nakagami_as_general_cdf<T: Real>(m0: T) -> Result<GeneralFadingCdf<T>> {
    let Some(n) = integer_shape(m0) else {
        return Err(Error::Unsupported(format!(
            "the exponential-polynomial form needs an integer m0, got {m0}; use the MGF framework"
        )));
    };
    let mut terms = Vec::with_capacity(n as usize);
    let mut a = T::one();
    for k in 0..n {
        if k > 0 {
            a = a * T::from_usize_lossy(n as usize) / T::from_usize_lossy(k as usize);
        }
        terms.push(FadingTerm { n, k, a });
    }
    GeneralFadingCdf::new(terms)
}

/// Evaluates a general fading CDF at `g`.
pub fn general_cdf_eval<T: Real>(cdf: &GeneralFadingCdf<T>, g: T) -> Result<T> {
    cdf.eval(g)
}
