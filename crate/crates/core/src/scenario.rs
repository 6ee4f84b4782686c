//! Scenario files: strict TOML documents holding one use case's inputs.
//!
//! ```toml
//! format_version = "1.0"
//! use_case = "uc9"
//! currency_unit = "kEUR"
//! horizon_years = 1
//! discount_rate = 0.0
//!
//! [uc9]
//! drones_per_link = 6
//! # ...
//! ```
//!
//! Exactly one body table, named after `use_case`, must be present. Unknown
//! keys are rejected and every type invariant is re-checked after parsing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::{CostBreakdown, TcoResult};
use crate::deployment::{
    uc1_breakdown, uc1_tco_per_sector, uc4_site_breakdown, uc4_tco_per_km2, uc9_breakdown,
    uc9_tco, DroneChainParams, Uc1Scenario, Uc4Scenario,
};
use crate::error::{ensure, Error, Result, Violation};
use crate::mmtc::Uc3Scenario;

pub const FORMAT_VERSION: &str = "1.0";
pub const SUPPORTED_VERSIONS: &[&str] = &[FORMAT_VERSION];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UseCase {
    Uc1,
    Uc3,
    Uc4,
    Uc9,
}

impl UseCase {
    pub fn as_str(self) -> &'static str {
        match self {
            UseCase::Uc1 => "uc1",
            UseCase::Uc3 => "uc3",
            UseCase::Uc4 => "uc4",
            UseCase::Uc9 => "uc9",
        }
    }
}

impl fmt::Display for UseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UseCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uc1" => Ok(UseCase::Uc1),
            "uc3" => Ok(UseCase::Uc3),
            "uc4" => Ok(UseCase::Uc4),
            "uc9" => Ok(UseCase::Uc9),
            _ => Err(Error::invalid(format!("unknown use case `{s}`"))),
        }
    }
}

// one body per document, so the variant size spread costs nothing
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioBody {
    Uc1(Uc1Scenario),
    Uc3(Uc3Scenario),
    Uc4(Uc4Scenario),
    Uc9(DroneChainParams),
}

impl ScenarioBody {
    pub fn use_case(&self) -> UseCase {
        match self {
            ScenarioBody::Uc1(_) => UseCase::Uc1,
            ScenarioBody::Uc3(_) => UseCase::Uc3,
            ScenarioBody::Uc4(_) => UseCase::Uc4,
            ScenarioBody::Uc9(_) => UseCase::Uc9,
        }
    }

    fn validate(&self) -> Result<(), Violation> {
        let (key, res) = match self {
            ScenarioBody::Uc1(s) => ("uc1", s.validate()),
            ScenarioBody::Uc3(s) => ("uc3", s.validate()),
            ScenarioBody::Uc4(s) => ("uc4", s.validate()),
            ScenarioBody::Uc9(s) => ("uc9", s.validate()),
        };
        res.map_err(|v| v.within(key))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDocument {
    pub format_version: String,
    pub currency_unit: String,
    pub horizon_years: u32,
    pub discount_rate: f64,
    pub body: ScenarioBody,
}

fn default_horizon() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    use_case: UseCase,
    currency_unit: String,
    #[serde(default = "default_horizon")]
    horizon_years: u32,
    #[serde(default)]
    discount_rate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uc1: Option<Uc1Scenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uc3: Option<Uc3Scenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uc4: Option<Uc4Scenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uc9: Option<DroneChainParams>,
}

impl From<&ScenarioDocument> for RawDocument {
    fn from(doc: &ScenarioDocument) -> Self {
        let mut raw = RawDocument {
            format_version: doc.format_version.clone(),
            use_case: doc.use_case(),
            currency_unit: doc.currency_unit.clone(),
            horizon_years: doc.horizon_years,
            discount_rate: doc.discount_rate,
            uc1: None,
            uc3: None,
            uc4: None,
            uc9: None,
        };
        match &doc.body {
            ScenarioBody::Uc1(s) => raw.uc1 = Some(s.clone()),
            ScenarioBody::Uc3(s) => raw.uc3 = Some(s.clone()),
            ScenarioBody::Uc4(s) => raw.uc4 = Some(s.clone()),
            ScenarioBody::Uc9(s) => raw.uc9 = Some(s.clone()),
        }
        raw
    }
}

impl TryFrom<RawDocument> for ScenarioDocument {
    type Error = Error;

    fn try_from(raw: RawDocument) -> Result<Self> {
        if !SUPPORTED_VERSIONS.contains(&raw.format_version.as_str()) {
            return Err(Error::UnsupportedVersion {
                found: raw.format_version,
                supported: SUPPORTED_VERSIONS.join(", "),
            });
        }
        let present: Vec<&str> = [
            raw.uc1.as_ref().map(|_| "uc1"),
            raw.uc3.as_ref().map(|_| "uc3"),
            raw.uc4.as_ref().map(|_| "uc4"),
            raw.uc9.as_ref().map(|_| "uc9"),
        ]
        .into_iter()
        .flatten()
        .collect();
        let wanted = raw.use_case.as_str();
        if let Some(other) = present.iter().find(|k| **k != wanted) {
            return Err(Error::Schema {
                path: (*other).into(),
                message: format!("table does not match use_case `{wanted}`"),
            });
        }
        let body = match raw.use_case {
            UseCase::Uc1 => raw.uc1.map(ScenarioBody::Uc1),
            UseCase::Uc3 => raw.uc3.map(ScenarioBody::Uc3),
            UseCase::Uc4 => raw.uc4.map(ScenarioBody::Uc4),
            UseCase::Uc9 => raw.uc9.map(ScenarioBody::Uc9),
        }
        .ok_or_else(|| Error::Schema {
            path: wanted.into(),
            message: format!("missing table for use_case `{wanted}`"),
        })?;

        let doc = ScenarioDocument {
            format_version: raw.format_version,
            currency_unit: raw.currency_unit,
            horizon_years: raw.horizon_years,
            discount_rate: raw.discount_rate,
            body,
        };
        doc.validate()?;
        Ok(doc)
    }
}

impl ScenarioDocument {
    pub fn use_case(&self) -> UseCase {
        self.body.use_case()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        ensure(self.horizon_years >= 1, "horizon_years", "horizon_years >= 1")?;
        ensure(
            self.discount_rate.is_finite() && self.discount_rate >= 0.0,
            "discount_rate",
            "discount_rate >= 0",
        )?;
        self.body.validate()
    }

    /// Build from an already parsed TOML tree, with full schema and
    /// invariant checking.
    pub fn from_value(value: toml::Value) -> Result<Self> {
        let raw: RawDocument = serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            Error::Schema {
                path: if path == "." { String::new() } else { path },
                message: e.into_inner().message().to_string(),
            }
        })?;
        ScenarioDocument::try_from(raw)
    }

    pub fn to_value(&self) -> Result<toml::Value> {
        toml::Value::try_from(RawDocument::from(self))
            .map_err(|e| Error::invalid(format!("cannot serialize scenario: {e}")))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(&RawDocument::from(self))
            .map_err(|e| Error::invalid(format!("cannot serialize scenario: {e}")))
    }

    /// Cost items behind [`ScenarioDocument::tco`]: network-wide for uc1,
    /// one site for uc4, the whole fleet for uc9.
    pub fn breakdown(&self) -> Result<CostBreakdown> {
        match &self.body {
            ScenarioBody::Uc1(s) => uc1_breakdown(s),
            ScenarioBody::Uc4(s) => uc4_site_breakdown(s),
            ScenarioBody::Uc9(p) => uc9_breakdown(p),
            ScenarioBody::Uc3(_) => Err(Error::invalid(
                "uc3 scenarios have no cost model; use the mmtc report",
            )),
        }
    }

    /// TCO of the document's deployment at the given horizon and rate.
    /// uc1 and uc4 results carry normalizers; uc3 has no cost model.
    pub fn tco(&self, horizon_years: u32, discount_rate: f64) -> Result<TcoResult> {
        match &self.body {
            ScenarioBody::Uc1(s) => uc1_tco_per_sector(s, horizon_years, discount_rate),
            ScenarioBody::Uc4(s) => Ok(uc4_tco_per_km2(s, horizon_years, discount_rate)?.0),
            ScenarioBody::Uc9(p) => uc9_tco(p, horizon_years, discount_rate),
            ScenarioBody::Uc3(_) => Err(Error::invalid(
                "uc3 scenarios have no cost model; use the mmtc report",
            )),
        }
    }
}

/// Parse and fully validate a scenario document.
pub fn load_scenario(text: &str) -> Result<ScenarioDocument> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e
            .span()
            .map(|span| line_column(text, span.start))
            .unwrap_or((1, 1));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    ScenarioDocument::from_value(toml::Value::Table(table))
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Shipped calibration scenarios.
pub mod golden {
    use std::path::PathBuf;

    use super::{load_scenario, ScenarioDocument};
    use crate::error::{Error, Result};

    /// Environment variable that points golden lookups at a directory
    /// instead of the embedded copies.
    pub const DIR_ENV: &str = "VERTCO_GOLDEN_DIR";

    pub const UC1_MEGACITY: &str = include_str!("../golden/uc1_megacity.toml");
    pub const UC1_UNDERSERVED: &str = include_str!("../golden/uc1_underserved.toml");
    pub const UC3_PARIS: &str = include_str!("../golden/uc3_paris.toml");
    pub const UC4_RURAL: &str = include_str!("../golden/uc4_rural.toml");
    pub const UC4_EXTREME_RURAL: &str = include_str!("../golden/uc4_extreme_rural.toml");
    pub const UC9_EMERGENCY: &str = include_str!("../golden/uc9_emergency.toml");

    pub const ALL: [(&str, &str); 6] = [
        ("uc1_megacity", UC1_MEGACITY),
        ("uc1_underserved", UC1_UNDERSERVED),
        ("uc3_paris", UC3_PARIS),
        ("uc4_rural", UC4_RURAL),
        ("uc4_extreme_rural", UC4_EXTREME_RURAL),
        ("uc9_emergency", UC9_EMERGENCY),
    ];

    /// Text of a golden scenario by name (with or without `.toml`), read
    /// from [`DIR_ENV`] when set and embedded otherwise.
    pub fn text(name: &str) -> Result<String> {
        let stem = name.strip_suffix(".toml").unwrap_or(name);
        if let Some(dir) = std::env::var_os(DIR_ENV) {
            let path = PathBuf::from(dir).join(format!("{stem}.toml"));
            return std::fs::read_to_string(&path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            });
        }
        ALL.iter()
            .find(|(n, _)| *n == stem)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::Io {
                path: name.into(),
                message: "no such golden scenario".into(),
            })
    }

    pub fn load(name: &str) -> Result<ScenarioDocument> {
        load_scenario(&text(name)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_load() {
        for (name, text) in golden::ALL {
            let doc = load_scenario(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(name.starts_with(doc.use_case().as_str()));
        }
        assert_eq!(golden::load("uc9_emergency").unwrap().use_case(), UseCase::Uc9);
    }

    #[test]
    fn zero_drones_per_link_names_predicate() {
        let text = golden::UC9_EMERGENCY.replace("drones_per_link = 6", "drones_per_link = 0");
        match load_scenario(&text).unwrap_err() {
            Error::Invariant { path, predicate } => {
                assert_eq!(path, "uc9.drones_per_link");
                assert!(predicate.contains("k ≥ 1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_reports_path() {
        let text = golden::UC9_EMERGENCY.replace("[uc9]\n", "[uc9]\ndronez = 3\n");
        match load_scenario(&text).unwrap_err() {
            Error::Schema { path, message } => {
                assert!(path.starts_with("uc9"), "{path}");
                assert!(message.contains("dronez"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_has_position() {
        let err = load_scenario("format_version = \"1.0\"\nuse_case = = \"uc9\"\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn version_and_body_checks() {
        let text = golden::UC9_EMERGENCY.replace("format_version = \"1.0\"", "format_version = \"9\"");
        assert!(matches!(load_scenario(&text), Err(Error::UnsupportedVersion { .. })));

        let text = golden::UC9_EMERGENCY.replace("use_case = \"uc9\"", "use_case = \"uc1\"");
        assert!(matches!(load_scenario(&text), Err(Error::Schema { path, .. }) if path == "uc9"));
    }

    #[test]
    fn golden_round_trip() {
        for (name, text) in golden::ALL {
            let doc = load_scenario(text).unwrap();
            let again = load_scenario(&doc.to_toml_string().unwrap()).unwrap();
            assert_eq!(doc, again, "{name}");
        }
    }
}
