//! Infinite-plane reference values.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rayleigh outage with interferers drawn from a homogeneous PPP of density
/// `lambda` over the whole plane:
/// `1 - exp(-β/ρ0 - λπ r0² β^{2/α} (2π/α) / sin(2π/α))`.
///
/// Needs `α > 2`; the aggregate interference is infinite otherwise.
pub fn outage_ppp_rayleigh<T: Real>(lambda: T, r0: T, alpha: T, beta: T, rho0: T) -> Result<T> {
    if !(alpha > T::lit(2.0)) || !alpha.is_finite() {
        return Err(Error::Domain(format!("PPP interference diverges for alpha = {alpha} <= 2")));
    }
    if !(lambda >= T::zero()) || !(r0 > T::zero()) || !(beta > T::zero()) || !(rho0 > T::zero()) {
        return Err(Error::invalid("need lambda >= 0 and positive r0, beta, rho0"));
    }
    let delta = T::two_pi() / alpha;
    let interference = lambda * T::PI() * r0 * r0 * beta.powf(T::lit(2.0) / alpha) * delta / delta.sin();
    Ok(T::one() - (-(beta / rho0) - interference).exp())
}
