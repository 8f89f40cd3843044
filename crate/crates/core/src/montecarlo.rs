//! Monte Carlo simulator used as an independent check of both frameworks.
//!
//! Trials are grouped in blocks of [`BLOCK`]; block `b` draws from a ChaCha8
//! stream selected by `(seed, b)`, so results do not depend on the number of
//! worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use rayon::prelude::*;

use crate::channel::integer_shape;
use crate::error::{Error, Result};
use crate::geometry::{Point, ReferencePoint, Region};
use crate::scenario::Scenario;

/// Trials per RNG stream.
pub const BLOCK: u64 = 1024;

/// Outage estimate from Bernoulli trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub outage_mean: f64,
    /// `sqrt(p(1-p)/trials)`.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_count(count: u64, trials: u64, seed: u64) -> Self {
        let p = count as f64 / trials as f64;
        McEstimate {
            outage_mean: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
            seed,
        }
    }

    /// `|value - mean| <= k·std_error`.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (value - self.outage_mean).abs() <= k * self.std_error
    }
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Exact uniform sampler: polar for disks, area-weighted fan triangles for
/// polygons.
#[derive(Debug, Clone)]
pub struct RegionSampler {
    kind: SamplerKind,
}

#[derive(Debug, Clone)]
enum SamplerKind {
    Disk { center: Point<f64>, radius: f64 },
    Fan { apex: Point<f64>, edges: Vec<(Point<f64>, Point<f64>)>, cumulative: Vec<f64> },
}

impl RegionSampler {
    pub fn new(region: &Region<f64>) -> Self {
        let kind = match region {
            Region::Disk { center, radius } => SamplerKind::Disk { center: *center, radius: *radius },
            Region::Polygon(poly) => {
                let v = poly.vertices();
                let apex = v[0];
                let mut edges = Vec::with_capacity(v.len() - 2);
                let mut cumulative = Vec::with_capacity(v.len() - 2);
                let mut acc = 0.0;
                for i in 1..v.len() - 1 {
                    let (b, c) = (v[i] - apex, v[i + 1] - apex);
                    acc += 0.5 * b.cross(c);
                    edges.push((b, c));
                    cumulative.push(acc);
                }
                SamplerKind::Fan { apex, edges, cumulative }
            }
        };
        RegionSampler { kind }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<f64> {
        match &self.kind {
            SamplerKind::Disk { center, radius } => {
                let r = radius * rng.random::<f64>().sqrt();
                let phi = std::f64::consts::TAU * rng.random::<f64>();
                *center + Point::new(r * phi.cos(), r * phi.sin())
            }
            SamplerKind::Fan { apex, edges, cumulative } => {
                let total = *cumulative.last().expect("polygon has a triangle");
                let pick = rng.random::<f64>() * total;
                let i = cumulative.partition_point(|&c| c <= pick).min(edges.len() - 1);
                let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
                if u + v > 1.0 {
                    u = 1.0 - u;
                    v = 1.0 - v;
                }
                let (b, c) = edges[i];
                *apex + b * u + c * v
            }
        }
    }
}

/// One uniform point in `region`. Builds the sampler each call; reuse a
/// [`RegionSampler`] for bulk draws.
pub fn sample_uniform_in_region<R: Rng + ?Sized>(region: &Region<f64>, rng: &mut R) -> Point<f64> {
    RegionSampler::new(region).sample(rng)
}

/// Unit-mean Gamma power gain: sum of exponentials for integer shape,
/// `rand_distr::Gamma` otherwise.
#[derive(Debug, Clone, Copy)]
enum GainSampler {
    Erlang(u32),
    Gamma(Gamma<f64>),
}

impl GainSampler {
    fn new(m: f64) -> Result<Self> {
        if let Some(k) = integer_shape(m) {
            return Ok(GainSampler::Erlang(k));
        }
        Gamma::new(m, 1.0 / m)
            .map(GainSampler::Gamma)
            .map_err(|e| Error::invalid(format!("Gamma shape {m}: {e}")))
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            GainSampler::Erlang(k) => {
                let s: f64 = (0..*k).map(|_| Exp1.sample(rng)).fold(0.0, |a, x: f64| a + x);
                s / f64::from(*k)
            }
            GainSampler::Gamma(g) => g.sample(rng),
        }
    }
}

/// Fraction of trials with SINR below `β`.
///
/// Per trial: `M` uniform interferers, unit-mean Gamma gains with shapes `m0`
/// (reference) and `m` (interferers), unit powers, noise `r0^{-α}/ρ0`.
pub fn simulate_outage(scenario: &Scenario<f64>, trials: u64, seed: u64) -> Result<McEstimate> {
    scenario.validate()?;
    if trials == 0 {
        return Err(Error::invalid("at least one trial is needed"));
    }
    let sampler = RegionSampler::new(&scenario.region);
    let g0 = GainSampler::new(scenario.channel.m0)?;
    let gi = GainSampler::new(scenario.channel.m)?;
    let y0 = scenario.receiver.location();
    let alpha = scenario.alpha;
    let signal_scale = scenario.r0.powf(-alpha);
    let noise = signal_scale / scenario.rho0;
    let blocks = trials.div_ceil(BLOCK);

    let count: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let n = BLOCK.min(trials - b * BLOCK);
            let mut outages = 0u64;
            for _ in 0..n {
                let mut interference = 0.0;
                for _ in 0..scenario.interferers {
                    let x = sampler.sample(&mut rng);
                    interference += gi.sample(&mut rng) * x.distance(y0).powf(-alpha);
                }
                let signal = g0.sample(&mut rng) * signal_scale;
                if signal < scenario.beta * (noise + interference) {
                    outages += 1;
                }
            }
            outages
        })
        .sum();
    Ok(McEstimate::from_count(count, trials, seed))
}

/// Sorted sample of distances from a receiver to uniform points.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.samples.partition_point(|&x| x <= r) as f64 / self.samples.len() as f64
    }

    /// Kolmogorov-Smirnov distance to a continuous CDF.
    pub fn ks_statistic<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.samples.len() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Asymptotic KS critical value at the 1% level.
    pub fn ks_critical_1pct(&self) -> f64 {
        1.628 / (self.samples.len() as f64).sqrt()
    }
}

/// Empirical distance law from `y0` to uniform points in `region`.
pub fn simulate_distance_distribution(
    region: &Region<f64>,
    y0: &ReferencePoint<f64>,
    samples: usize,
    seed: u64,
) -> Result<EmpiricalCdf> {
    if samples == 0 {
        return Err(Error::invalid("at least one sample is needed"));
    }
    let sampler = RegionSampler::new(region);
    let p = y0.location();
    let blocks = (samples as u64).div_ceil(BLOCK);
    let mut out: Vec<f64> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut rng = block_rng(seed, b);
            let n = BLOCK.min(samples as u64 - b * BLOCK);
            let sampler = &sampler;
            (0..n).map(move |_| sampler.sample(&mut rng).distance(p)).collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(EmpiricalCdf { samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erlang_and_gamma_are_unit_mean() {
        let mut rng = block_rng(7, 0);
        for m in [1.0, 3.0, 0.5, 2.5] {
            let s = GainSampler::new(m).unwrap();
            let n = 200_000;
            let xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)).collect();
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
            assert!((mean - 1.0).abs() < 0.01, "m = {m}: mean {mean}");
            assert!((var - 1.0 / m).abs() < 0.03 / m, "m = {m}: var {var}");
        }
    }

    #[test]
    fn fan_sampler_stays_inside() {
        let region = Region::fig2(100.0).unwrap();
        let s = RegionSampler::new(&region);
        let mut rng = block_rng(1, 0);
        for _ in 0..10_000 {
            assert!(region.contains(s.sample(&mut rng)));
        }
    }
}
