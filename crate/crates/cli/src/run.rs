//! Method dispatch, single runs, sweeps and the interferer-capacity search.

use outage_core::baselines::outage_ppp_rayleigh;
use outage_core::mgf::outage_mgf;
use outage_core::montecarlo::simulate_outage;
use outage_core::rlpg::{outage_rlpg, rlpg_table};
use outage_core::{EulerInversionParams, Method, NumericSettings, OutageResult, Point, Scenario};
use rayon::prelude::*;

use crate::config::{MethodChoice, ReceiverSpec, RegionSpec, ScenarioFile};
use crate::error::CliError;

/// Largest `M` the capacity search will try before giving up.
pub const MAX_INTERFERERS_SEARCH: usize = 100_000;

/// One evaluated point: the scenario as evaluated and its outage.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub variable: Option<SweepVariable>,
    pub value: Option<f64>,
    pub point: ScenarioFile,
    pub receiver: Point,
    pub result: OutageResult,
    /// Seed used by Monte Carlo rows.
    pub seed: Option<u64>,
}

/// `auto` picks RLPG for integer `m0` and MGF otherwise.
pub fn resolve_method(choice: MethodChoice, m0: f64) -> MethodChoice {
    match choice {
        MethodChoice::Auto if m0.fract() == 0.0 => MethodChoice::Rlpg,
        MethodChoice::Auto => MethodChoice::Mgf,
        other => other,
    }
}

pub fn numeric_settings(file: &ScenarioFile) -> NumericSettings {
    NumericSettings { rel_tol: file.quadrature_rel_tol, ..NumericSettings::default() }
}

pub fn inversion_params(file: &ScenarioFile) -> Result<EulerInversionParams, CliError> {
    Ok(match &file.inversion {
        None => EulerInversionParams::default(),
        Some(inv) => match (inv.zeta, inv.a, inv.b, inv.c) {
            (Some(zeta), ..) => EulerInversionParams::from_accuracy(zeta)?,
            (None, Some(a), Some(b), Some(c)) => EulerInversionParams::new(a, b, c)?,
            _ => unreachable!("checked at parse time"),
        },
    })
}

/// Outage of `file` with an explicit (non-`auto`) method.
pub fn evaluate(file: &ScenarioFile, method: MethodChoice) -> Result<OutageResult, CliError> {
    let scenario = file.to_scenario()?;
    evaluate_scenario(file, &scenario, method)
}

fn evaluate_scenario(file: &ScenarioFile, scenario: &Scenario, method: MethodChoice) -> Result<OutageResult, CliError> {
    let settings = numeric_settings(file);
    match resolve_method(method, file.m0) {
        MethodChoice::Mgf => Ok(outage_mgf(scenario, &inversion_params(file)?, &settings)?),
        MethodChoice::Rlpg => Ok(outage_rlpg(scenario, &settings)?),
        MethodChoice::Mc => {
            let est = simulate_outage(scenario, file.mc.trials, file.mc.seed)?;
            Ok(OutageResult {
                outage: est.outage_mean,
                method: Method::MonteCarlo,
                rel_tol: None,
                inversion: None,
                std_error: Some(est.std_error),
                trials: Some(est.trials),
                closed_form_fallbacks: 0,
            })
        }
        MethodChoice::Ppp => {
            let ch = scenario.channel;
            if ch.m0 != 1.0 || ch.m != 1.0 {
                return Err(CliError::Core(outage_core::error::Error::Unsupported(format!(
                    "the PPP baseline needs Rayleigh fading (m0 = m = 1), got m0 = {}, m = {}",
                    ch.m0, ch.m
                ))));
            }
            let lambda = scenario.interferers as f64 / scenario.region.area();
            let outage = outage_ppp_rayleigh(lambda, scenario.r0, scenario.alpha, scenario.beta, scenario.rho0)?;
            Ok(OutageResult {
                outage,
                method: Method::Ppp,
                rel_tol: None,
                inversion: None,
                std_error: None,
                trials: None,
                closed_form_fallbacks: 0,
            })
        }
        MethodChoice::Auto => unreachable!("resolved above"),
    }
}

fn record(file: &ScenarioFile, method: MethodChoice, variable: Option<(SweepVariable, f64)>) -> Result<Record, CliError> {
    let scenario = file.to_scenario()?;
    let method = resolve_method(method, file.m0);
    let result = evaluate_scenario(file, &scenario, method)?;
    Ok(Record {
        variable: variable.map(|v| v.0),
        value: variable.map(|v| v.1),
        point: file.clone(),
        receiver: scenario.receiver.location(),
        result,
        seed: (method == MethodChoice::Mc).then_some(file.mc.seed),
    })
}

/// Single evaluation with the file's own method.
pub fn run_scenario(file: &ScenarioFile) -> Result<Record, CliError> {
    record(file, file.method, None)
}

/// Scenario parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    /// Receiver offset from the disk center.
    D,
    SnrDb,
    Alpha,
    /// Number of sides of a regular polygon.
    L,
    /// Number of interferers.
    M,
    BetaDb,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::D => "d",
            SweepVariable::SnrDb => "snr_db",
            SweepVariable::Alpha => "alpha",
            SweepVariable::L => "L",
            SweepVariable::M => "M",
            SweepVariable::BetaDb => "beta_db",
        }
    }

    /// Errors when the variable does not apply to `file`.
    pub fn check_applicable(self, file: &ScenarioFile) -> Result<(), CliError> {
        match self {
            SweepVariable::D if !matches!(file.region, RegionSpec::Disk(_)) => {
                Err(CliError::Invalid("sweep variable `d` needs a disk region".into()))
            }
            SweepVariable::L if !matches!(file.region, RegionSpec::RegularPolygon(_)) => {
                Err(CliError::Invalid("sweep variable `L` needs a regular_polygon region".into()))
            }
            _ => Ok(()),
        }
    }

    /// `file` with this variable set to `value`.
    pub fn apply(self, file: &ScenarioFile, value: f64) -> Result<ScenarioFile, CliError> {
        self.check_applicable(file)?;
        let count = |what: &str, min: f64| {
            if value.fract() != 0.0 || value < min || !value.is_finite() {
                Err(CliError::Invalid(format!("{what} must be an integer >= {min}, got {value}")))
            } else {
                Ok(value as usize)
            }
        };
        let mut out = file.clone();
        match self {
            SweepVariable::D => out.receiver = ReceiverSpec::DiskOffsetD { d: value },
            SweepVariable::SnrDb => out.snr_db = value,
            SweepVariable::Alpha => out.alpha = value,
            SweepVariable::BetaDb => out.beta_db = value,
            SweepVariable::M => out.interferers = count("M", 0.0)?,
            SweepVariable::L => {
                if let RegionSpec::RegularPolygon(p) = &mut out.region {
                    p.sides = count("L", 3.0)?;
                }
            }
        }
        Ok(out)
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "d" => SweepVariable::D,
            "snr_db" => SweepVariable::SnrDb,
            "alpha" => SweepVariable::Alpha,
            "L" => SweepVariable::L,
            "M" => SweepVariable::M,
            "beta_db" => SweepVariable::BetaDb,
            _ => {
                return Err(CliError::Invalid(format!(
                    "unknown sweep variable `{s}`, expected one of d, snr_db, alpha, L, M, beta_db"
                )))
            }
        })
    }
}

impl std::fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `start:stop:step` inclusive of `stop` (up to rounding), or a comma list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Invalid(format!("bad grid `{spec}`, expected start:stop:step or a comma list"));
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    if spec.contains(':') {
        let parts: Vec<f64> = spec.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else { return Err(bad()) };
        if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| start + i as f64 * step).collect());
    }
    spec.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

/// One record per grid point and method, grid-major. Points run in parallel;
/// the output order never depends on scheduling.
pub fn sweep(
    file: &ScenarioFile,
    variable: SweepVariable,
    grid: &[f64],
    methods: &[MethodChoice],
) -> Result<Vec<Record>, CliError> {
    variable.check_applicable(file)?;
    let methods = if methods.is_empty() { vec![file.method] } else { methods.to_vec() };
    let points: Vec<ScenarioFile> = grid.iter().map(|&v| variable.apply(file, v)).collect::<Result<_, _>>()?;
    let jobs: Vec<(usize, MethodChoice)> =
        (0..grid.len()).flat_map(|i| methods.iter().map(move |&m| (i, m))).collect();
    jobs.par_iter().map(|&(i, m)| record(&points[i], m, Some((variable, grid[i])))).collect()
}

/// Outcome of the capacity search.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxInterferers {
    /// Largest `M` with outage at most the target (0 when even `M = 0` fails).
    pub m_star: usize,
    /// False when the noise-only outage already exceeds the target.
    pub feasible: bool,
    pub method: Method,
    pub target: f64,
    pub outage_at_m_star: f64,
    /// Outage with `m_star + 1` interferers.
    pub outage_above: f64,
}

/// Largest number of interferers meeting `target`, by incrementing `M`.
/// RLPG reuses one table of per-node expectations for every `M`.
pub fn max_supported_interferers(file: &ScenarioFile, target: f64) -> Result<MaxInterferers, CliError> {
    if !(target > 0.0 && target < 1.0) {
        return Err(CliError::Invalid(format!("target outage must lie in (0, 1), got {target}")));
    }
    let scenario = file.to_scenario()?;
    let settings = numeric_settings(file);
    let (method, eval): (Method, Box<dyn Fn(usize) -> Result<f64, CliError>>) =
        match resolve_method(file.method, file.m0) {
            MethodChoice::Rlpg => {
                let table = rlpg_table(&scenario, &settings)?;
                (Method::Rlpg, Box::new(move |m| Ok(table.outage(m)?)))
            }
            MethodChoice::Mgf => {
                let params = inversion_params(file)?;
                let sc = scenario.clone();
                (Method::Mgf, Box::new(move |m| Ok(outage_mgf(&sc.with_interferers(m), &params, &settings)?.outage)))
            }
            other => {
                return Err(CliError::Invalid(format!(
                    "maxm needs an analytic method (auto, mgf or rlpg), got {}",
                    other.as_str()
                )))
            }
        };
    let mut current = eval(0)?;
    if current > target {
        return Ok(MaxInterferers {
            m_star: 0,
            feasible: false,
            method,
            target,
            outage_at_m_star: current,
            outage_above: eval(1)?,
        });
    }
    for m in 0..MAX_INTERFERERS_SEARCH {
        let next = eval(m + 1)?;
        if next > target {
            return Ok(MaxInterferers {
                m_star: m,
                feasible: true,
                method,
                target,
                outage_at_m_star: current,
                outage_above: next,
            });
        }
        current = next;
    }
    Err(CliError::Core(outage_core::error::Error::NumericFailure {
        context: "interferer capacity search".into(),
        detail: format!("outage stayed below {target} up to M = {MAX_INTERFERERS_SEARCH}"),
    }))
}
