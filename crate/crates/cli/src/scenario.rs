//! Scenario files: a flat JSON document describing one far- or near-field setup.
//!
//! The published schema lives in `docs/scenario.schema.json`. A minimal far-field
//! scenario only needs `f_c`, `B`, `R` and `nu0`; everything else has a default.

use std::fmt;
use std::path::Path;

use irs_squint::{
    Design, FarFieldTarget, IrsArray, NearFieldGeometry, Point, Subcarrier, WidebandConfig,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_SUBCARRIERS: usize = 128;
pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// Syntax or schema error; the message carries line and column.
    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Far,
    Near,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Far => "far",
            Regime::Near => "near",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignChoice {
    #[default]
    PhasesOnly,
    Dam,
}

impl From<DesignChoice> for Design {
    fn from(choice: DesignChoice) -> Self {
        match choice {
            DesignChoice::PhasesOnly => Design::PhasesOnly,
            DesignChoice::Dam => Design::Dam,
        }
    }
}

impl fmt::Display for DesignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignChoice::PhasesOnly => "phases_only",
            DesignChoice::Dam => "dam",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    /// Cascade direction `nu` (far field).
    Nu,
    /// All subcarriers of the band.
    Frequency,
    /// Square grid of locations around the user (near field).
    Location,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::Nu => "nu",
            SweepAxis::Frequency => "frequency",
            SweepAxis::Location => "location",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedSubcarrier {
    First,
    Last,
    Fc,
}

/// A subcarrier by 1-based index `m` or by name (`"first"`, `"last"`, `"fc"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubcarrierChoice {
    Index(usize),
    Named(NamedSubcarrier),
}

impl SubcarrierChoice {
    pub fn to_core(self) -> Subcarrier {
        match self {
            SubcarrierChoice::Index(m) => Subcarrier::Index(m - 1),
            SubcarrierChoice::Named(NamedSubcarrier::First) => Subcarrier::First,
            SubcarrierChoice::Named(NamedSubcarrier::Last) => Subcarrier::Last,
            SubcarrierChoice::Named(NamedSubcarrier::Fc) => Subcarrier::Carrier,
        }
    }
}

/// Sweep specification. `range` applies to the `nu` axis, `half_span` to the
/// location axis; `subcarriers` picks the frequencies of angle sweeps and heatmaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub axis: SweepAxis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_span: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subcarriers: Vec<SubcarrierChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Far(FarFieldTarget),
    Near {
        bs: Point,
        user: Point,
        irs_origin: Point,
    },
}

/// A validated scenario. Construct through [`load_scenario`], [`Scenario::from_json`]
/// or deserialization; every numeric field has passed the model's invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario", into = "RawScenario")]
pub struct Scenario {
    carrier: f64,
    bandwidth: f64,
    subcarriers: usize,
    elements: usize,
    spacing: f64,
    geometry: Geometry,
    design: DesignChoice,
    sweep: Option<Sweep>,
    format: Format,
    threshold: f64,
}

/// On-disk layout of a scenario, before validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regime: Option<Regime>,
    f_c: f64,
    #[serde(rename = "B")]
    bandwidth: f64,
    #[serde(rename = "M", default = "default_subcarriers")]
    subcarriers: usize,
    #[serde(rename = "R")]
    elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    psi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bs: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    user: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    irs_origin: Option<[f64; 2]>,
    #[serde(default)]
    design: DesignChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<Sweep>,
    #[serde(default)]
    format: Format,
    #[serde(default = "default_threshold")]
    threshold: f64,
}

fn default_subcarriers() -> usize {
    DEFAULT_SUBCARRIERS
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

impl TryFrom<RawScenario> for Scenario {
    type Error = ScenarioError;

    fn try_from(raw: RawScenario) -> Result<Self, ScenarioError> {
        let cfg = WidebandConfig::new(raw.f_c, raw.bandwidth, raw.subcarriers)
            .map_err(|e| invalid(format!("f_c/B/M: {e}")))?;
        let spacing = match raw.d {
            Some(d) => d,
            None => IrsArray::half_wavelength(raw.elements, &cfg)
                .map_err(|e| invalid(format!("R: {e}")))?
                .spacing(),
        };
        let array =
            IrsArray::new(raw.elements, spacing).map_err(|e| invalid(format!("R/d: {e}")))?;

        let far_keys = raw.nu0.is_some() || raw.chi.is_some() || raw.psi.is_some();
        let near_keys = raw.bs.is_some() || raw.user.is_some() || raw.irs_origin.is_some();
        let regime = match (far_keys, near_keys) {
            (true, true) => {
                return Err(invalid(
                    "exactly one geometry block allowed: far keys (nu0/chi/psi) and near keys (bs/user/irs_origin) are both present",
                ))
            }
            (false, false) => {
                return Err(invalid(
                    "missing geometry: give nu0 or chi+psi (far field), or bs+user+irs_origin (near field)",
                ))
            }
            (true, false) => Regime::Far,
            (false, true) => Regime::Near,
        };
        if let Some(declared) = raw.regime {
            if declared != regime {
                return Err(invalid(format!(
                    "regime is \"{declared}\" but the geometry keys describe a {regime}-field scenario"
                )));
            }
        }

        let geometry = match regime {
            Regime::Far => {
                let target = match (raw.nu0, raw.chi, raw.psi) {
                    (Some(nu0), None, None) => FarFieldTarget::from_direction(nu0),
                    (None, Some(chi), Some(psi)) => FarFieldTarget::from_angles(chi, psi),
                    (Some(nu0), Some(chi), Some(psi)) => FarFieldTarget::new(chi, psi, nu0),
                    _ => return Err(invalid("far-field angles need both chi and psi")),
                };
                Geometry::Far(target.map_err(|e| invalid(format!("far-field target: {e}")))?)
            }
            Regime::Near => {
                let (Some(bs), Some(user), Some(origin)) = (raw.bs, raw.user, raw.irs_origin)
                else {
                    return Err(invalid("near field needs all of bs, user and irs_origin"));
                };
                let (bs, user, irs_origin) = (point(bs), point(user), point(origin));
                NearFieldGeometry::new(bs, user, irs_origin, array)
                    .map_err(|e| invalid(format!("near-field geometry: {e}")))?;
                Geometry::Near {
                    bs,
                    user,
                    irs_origin,
                }
            }
        };

        if !(raw.threshold > 0.0 && raw.threshold < 1.0) {
            return Err(invalid(format!(
                "threshold = {} must lie in (0, 1)",
                raw.threshold
            )));
        }
        if let Some(sweep) = &raw.sweep {
            validate_sweep(sweep, regime, raw.subcarriers)?;
        }

        Ok(Scenario {
            carrier: raw.f_c,
            bandwidth: raw.bandwidth,
            subcarriers: raw.subcarriers,
            elements: raw.elements,
            spacing,
            geometry,
            design: raw.design,
            sweep: raw.sweep,
            format: raw.format,
            threshold: raw.threshold,
        })
    }
}

fn validate_sweep(sweep: &Sweep, regime: Regime, subcarriers: usize) -> Result<(), ScenarioError> {
    match (sweep.axis, regime) {
        (SweepAxis::Nu, Regime::Near) => {
            return Err(invalid("sweep axis \"nu\" needs a far-field scenario"))
        }
        (SweepAxis::Location, Regime::Far) => {
            return Err(invalid(
                "sweep axis \"location\" needs a near-field scenario",
            ))
        }
        _ => {}
    }
    if let Some(step) = sweep.step {
        if !(step.is_finite() && step > 0.0) {
            return Err(invalid(format!("sweep step = {step} must be positive")));
        }
    }
    match sweep.axis {
        SweepAxis::Nu => {
            if sweep.half_span.is_some() {
                return Err(invalid("sweep half_span applies to the location axis only"));
            }
            if let Some([start, stop]) = sweep.range {
                if !(start.is_finite() && stop.is_finite() && start <= stop) {
                    return Err(invalid(format!(
                        "sweep range [{start}, {stop}] must be ordered"
                    )));
                }
                if start < -2.0 || stop > 2.0 {
                    return Err(invalid(format!(
                        "sweep range [{start}, {stop}] must lie in [-2, 2]"
                    )));
                }
            }
        }
        SweepAxis::Location => {
            if sweep.range.is_some() {
                return Err(invalid(
                    "sweep range applies to the nu axis only; use half_span",
                ));
            }
            if let Some(h) = sweep.half_span {
                if !(h.is_finite() && h >= 0.0) {
                    return Err(invalid(format!(
                        "sweep half_span = {h} must be non-negative"
                    )));
                }
            }
        }
        SweepAxis::Frequency => {
            if sweep.range.is_some() || sweep.half_span.is_some() || sweep.step.is_some() {
                return Err(invalid(
                    "a frequency sweep covers every subcarrier and takes no range, half_span or step",
                ));
            }
        }
    }
    for choice in &sweep.subcarriers {
        if let SubcarrierChoice::Index(m) = *choice {
            if m == 0 || m > subcarriers {
                return Err(invalid(format!(
                    "sweep subcarrier m = {m} outside 1..={subcarriers}"
                )));
            }
        }
    }
    Ok(())
}

impl From<Scenario> for RawScenario {
    fn from(s: Scenario) -> Self {
        let mut raw = RawScenario {
            regime: Some(s.regime()),
            f_c: s.carrier,
            bandwidth: s.bandwidth,
            subcarriers: s.subcarriers,
            elements: s.elements,
            d: Some(s.spacing),
            nu0: None,
            chi: None,
            psi: None,
            bs: None,
            user: None,
            irs_origin: None,
            design: s.design,
            sweep: s.sweep,
            format: s.format,
            threshold: s.threshold,
        };
        match s.geometry {
            Geometry::Far(target) => match (target.chi(), target.psi()) {
                (Some(chi), Some(psi)) => {
                    raw.chi = Some(chi);
                    raw.psi = Some(psi);
                }
                _ => raw.nu0 = Some(target.nu()),
            },
            Geometry::Near {
                bs,
                user,
                irs_origin,
            } => {
                raw.bs = Some([bs.x, bs.y]);
                raw.user = Some([user.x, user.y]);
                raw.irs_origin = Some([irs_origin.x, irs_origin.y]);
            }
        }
        raw
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(text)?;
        Scenario::try_from(raw)
    }

    /// Pretty JSON with every default written out.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    pub fn regime(&self) -> Regime {
        match self.geometry {
            Geometry::Far(_) => Regime::Far,
            Geometry::Near { .. } => Regime::Near,
        }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn config(&self) -> WidebandConfig {
        WidebandConfig::new(self.carrier, self.bandwidth, self.subcarriers)
            .expect("validated at load time")
    }

    pub fn array(&self) -> IrsArray {
        IrsArray::new(self.elements, self.spacing).expect("validated at load time")
    }

    pub fn far_target(&self) -> Option<FarFieldTarget> {
        match self.geometry {
            Geometry::Far(target) => Some(target),
            Geometry::Near { .. } => None,
        }
    }

    pub fn near_geometry(&self) -> Option<NearFieldGeometry> {
        match self.geometry {
            Geometry::Far(_) => None,
            Geometry::Near {
                bs,
                user,
                irs_origin,
            } => Some(
                NearFieldGeometry::new(bs, user, irs_origin, self.array())
                    .expect("validated at load time"),
            ),
        }
    }

    pub fn carrier(&self) -> f64 {
        self.carrier
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn design(&self) -> DesignChoice {
        self.design
    }

    pub fn sweep(&self) -> Option<&Sweep> {
        self.sweep.as_ref()
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Scenario::from_json(&text)
}
