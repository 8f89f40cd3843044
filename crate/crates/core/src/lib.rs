//! Outage probability of a reference receiver anywhere inside a finite convex
//! wireless network with uniformly placed interferers and Nakagami-m fading.
//!
//! Two exact frameworks are provided: numerical Laplace inversion of the MGF
//! of the interference-plus-noise term ([`mgf`]) and the reference-link power
//! gain CDF expansion ([`rlpg`], integer `m0` only). [`montecarlo`] is an
//! independent simulator and [`baselines`] holds the infinite-plane PPP value.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`, which is what the stated accuracies assume.

pub mod baselines;
pub mod channel;
pub mod error;
pub mod geometry;
pub mod mgf;
pub mod montecarlo;
pub mod quadrature;
mod radial;
pub mod rlpg;
pub mod scalar;
pub mod scenario;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Point = geometry::Point<f64>;
pub type Region = geometry::Region<f64>;
pub type ReferencePoint = geometry::ReferencePoint<f64>;
pub type DistanceProfile = geometry::DistanceProfile<f64>;
pub type NakagamiChannel = channel::NakagamiChannel<f64>;
pub type GeneralFadingCdf = channel::GeneralFadingCdf<f64>;
pub type Scenario = scenario::Scenario<f64>;
pub type OutageResult = scenario::OutageResult<f64>;
pub type NumericSettings = scenario::NumericSettings<f64>;
pub type EulerInversionParams = mgf::EulerInversionParams<f64>;
pub type OmegaExpectationTable = rlpg::OmegaExpectationTable<f64>;

pub use montecarlo::McEstimate;
pub use scenario::{db_to_linear, Method};
