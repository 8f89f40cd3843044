//! JSON scenario files.

use outage_core::{db_to_linear, NakagamiChannel, Point, ReferencePoint, Region, Scenario};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A scenario file as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub region: RegionSpec,
    pub receiver: ReceiverSpec,
    pub r0: f64,
    #[serde(rename = "M")]
    pub interferers: usize,
    pub m0: f64,
    pub m: f64,
    pub alpha: f64,
    pub beta_db: f64,
    pub snr_db: f64,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inversion: Option<InversionSpec>,
    #[serde(default = "default_rel_tol")]
    pub quadrature_rel_tol: f64,
    #[serde(default)]
    pub mc: McSpec,
}

fn default_rel_tol() -> f64 {
    1e-11
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionSpec {
    Disk(DiskParams),
    RegularPolygon(RegularPolygonParams),
    Polygon(PolygonParams),
    Fig2(Fig2Params),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskParams {
    pub radius: f64,
    #[serde(default)]
    pub center: [f64; 2],
}

/// Exactly one of `circumradius` and `area`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularPolygonParams {
    pub sides: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circumradius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
    #[serde(default)]
    pub center: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonParams {
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fig2Params {
    #[serde(rename = "W")]
    pub w: f64,
}

/// Receiver placement. Vertex and edge indices are 1-based, so vertex 2 is
/// `V2` and edge 2 runs from `V2` to `V3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReceiverSpec {
    Coords { x: f64, y: f64 },
    // Struct form so stray fields are rejected.
    Center {},
    VertexIndex { index: usize },
    EdgeMidpointIndex { index: usize },
    DiskOffsetD { d: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Auto,
    Mgf,
    Rlpg,
    Mc,
    Ppp,
}

impl MethodChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Mgf => "mgf",
            MethodChoice::Rlpg => "rlpg",
            MethodChoice::Mc => "mc",
            MethodChoice::Ppp => "ppp",
        }
    }
}

impl std::str::FromStr for MethodChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "mgf" => Ok(MethodChoice::Mgf),
            "rlpg" => Ok(MethodChoice::Rlpg),
            "mc" => Ok(MethodChoice::Mc),
            "ppp" => Ok(MethodChoice::Ppp),
            _ => Err(CliError::Invalid(format!(
                "unknown method `{s}`, expected one of auto, mgf, rlpg, mc, ppp"
            ))),
        }
    }
}

/// Euler inversion settings: either a target accuracy `zeta` (digits) or
/// explicit `A`, `B`, `C`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InversionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSpec {
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
}

fn default_trials() -> u64 {
    1_000_000
}

impl Default for McSpec {
    fn default() -> Self {
        McSpec { trials: default_trials(), seed: 0 }
    }
}

impl ScenarioFile {
    /// Parses JSON text. Errors name the offending field path and the line
    /// and column where parsing stopped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let suffix = format!(" at line {line} column {column}");
            let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
            CliError::Parse { line, column, field: path, message }
        })?;
        file.check()?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical JSON: fields in declaration order, defaults filled in.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("scenario files always serialize")
    }

    fn check(&self) -> Result<(), CliError> {
        if let Some(inv) = &self.inversion {
            match (inv.zeta, inv.a, inv.b, inv.c) {
                (Some(_), None, None, None) | (None, Some(_), Some(_), Some(_)) => {}
                _ => {
                    return Err(CliError::Invalid(
                        "inversion: give either `zeta` alone or all of `A`, `B`, `C`".into(),
                    ))
                }
            }
        }
        if let RegionSpec::RegularPolygon(p) = &self.region {
            if p.circumradius.is_some() == p.area.is_some() {
                return Err(CliError::Invalid(
                    "region.params: regular_polygon needs exactly one of `circumradius` and `area`".into(),
                ));
            }
        }
        if !(self.quadrature_rel_tol > 0.0 && self.quadrature_rel_tol < 1e-2) {
            return Err(CliError::Invalid(format!(
                "quadrature_rel_tol must lie in (0, 1e-2), got {}",
                self.quadrature_rel_tol
            )));
        }
        if self.mc.trials == 0 {
            return Err(CliError::Invalid("mc.trials must be positive".into()));
        }
        Ok(())
    }

    pub fn build_region(&self) -> Result<Region, CliError> {
        let pt = |c: [f64; 2]| Point::new(c[0], c[1]);
        Ok(match &self.region {
            RegionSpec::Disk(p) => Region::disk(pt(p.center), p.radius)?,
            RegionSpec::RegularPolygon(p) => match (p.circumradius, p.area) {
                (Some(w), _) => Region::regular_polygon(p.sides, w, pt(p.center))?,
                (None, Some(a)) => Region::regular_polygon_with_area(p.sides, a, pt(p.center))?,
                (None, None) => unreachable!("checked at parse time"),
            },
            RegionSpec::Polygon(p) => Region::polygon(p.vertices.iter().copied().map(pt).collect())?,
            RegionSpec::Fig2(p) => Region::fig2(p.w)?,
        })
    }

    pub fn build_receiver(&self, region: &Region) -> Result<ReferencePoint, CliError> {
        let one_based = |index: usize, what: &str| {
            index.checked_sub(1).ok_or_else(|| CliError::Invalid(format!("receiver.index: {what} indices start at 1")))
        };
        Ok(match &self.receiver {
            ReceiverSpec::Coords { x, y } => ReferencePoint::new(region, Point::new(*x, *y))?,
            ReceiverSpec::Center {} => ReferencePoint::center(region),
            ReceiverSpec::VertexIndex { index } => ReferencePoint::vertex(region, one_based(*index, "vertex")?)?,
            ReceiverSpec::EdgeMidpointIndex { index } => {
                ReferencePoint::edge_midpoint(region, one_based(*index, "edge")?)?
            }
            ReceiverSpec::DiskOffsetD { d } => ReferencePoint::disk_offset(region, *d)?,
        })
    }

    /// The validated problem instance, with β and ρ0 converted from dB.
    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let region = self.build_region()?;
        let receiver = self.build_receiver(&region)?;
        let channel = NakagamiChannel::new(self.m0, self.m)?;
        Ok(Scenario::new(
            region,
            receiver,
            self.r0,
            self.interferers,
            channel,
            self.alpha,
            db_to_linear(self.beta_db),
            db_to_linear(self.snr_db),
        )?)
    }
}
