//! NB-IoT PRB and LTE-M narrowband dimensioning for smart-city device
//! populations.
//!
//! Each (technology, ISD, channel) combination reduces to a single
//! capacity figure: the device density one resource can serve under the
//! scenario's traffic model. Resource counts are always rounded up.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Technology {
    #[serde(rename = "nbiot")]
    NbIot,
    #[serde(rename = "ltem")]
    LteM,
}

impl Technology {
    pub fn as_str(self) -> &'static str {
        match self {
            Technology::NbIot => "nbiot",
            Technology::LteM => "ltem",
        }
    }

    /// Name of the schedulable unit this technology is dimensioned in.
    pub fn resource_name(self) -> &'static str {
        match self {
            Technology::NbIot => "prb",
            Technology::LteM => "narrowband",
        }
    }
}

impl fmt::Display for Technology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtcProfile {
    pub payload_bytes: u32,
    pub period_s: f64,
    pub device_density_per_km2: f64,
}

impl MtcProfile {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(self.payload_bytes > 0, "payload_bytes", "payload_bytes > 0")?;
        ensure(
            self.period_s.is_finite() && self.period_s > 0.0,
            "period_s",
            "period_s > 0",
        )?;
        ensure(
            self.device_density_per_km2.is_finite() && self.device_density_per_km2 >= 0.0,
            "device_density_per_km2",
            "device_density_per_km2 >= 0",
        )
    }

    pub fn with_density(&self, device_density_per_km2: f64) -> Self {
        Self {
            device_density_per_km2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationAnchor {
    pub year: i32,
    pub device_count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DevicePopulation {
    pub city_area_km2: f64,
    pub anchors: Vec<PopulationAnchor>,
}

impl DevicePopulation {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            self.city_area_km2.is_finite() && self.city_area_km2 > 0.0,
            "city_area_km2",
            "city_area_km2 > 0",
        )?;
        ensure(!self.anchors.is_empty(), "anchors", "at least one anchor")?;
        for (i, w) in self.anchors.windows(2).enumerate() {
            ensure(
                w[1].year > w[0].year,
                &format!("anchors.{}.year", i + 1),
                "anchor years strictly increasing",
            )?;
        }
        Ok(())
    }

    pub fn density_at(&self, year: i32) -> Result<f64> {
        Ok(population_at(self, year)? as f64 / self.city_area_km2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityRow {
    pub technology: Technology,
    pub isd_label: String,
    pub channel_label: String,
    /// Devices/km² one PRB (NB-IoT) or one narrowband (LTE-M) serves.
    pub supported_density_per_resource: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrbCapacityTable {
    pub rows: Vec<CapacityRow>,
}

impl PrbCapacityTable {
    pub fn validate(&self) -> Result<(), Violation> {
        let mut keys = HashSet::new();
        for (i, row) in self.rows.iter().enumerate() {
            let path = format!("rows.{i}");
            ensure(
                row.supported_density_per_resource.is_finite()
                    && row.supported_density_per_resource > 0.0,
                &format!("{path}.supported_density_per_resource"),
                "supported_density_per_resource > 0",
            )?;
            ensure(
                keys.insert((row.technology, &row.isd_label, &row.channel_label)),
                &path,
                "(technology, isd_label, channel_label) unique",
            )?;
        }
        Ok(())
    }

    pub fn rows_for(&self, technology: Technology) -> impl Iterator<Item = &CapacityRow> {
        self.rows.iter().filter(move |r| r.technology == technology)
    }
}

/// Device count in `year`, linear between anchors and extrapolated with the
/// nearest segment's slope outside them; rounded half-up, floored at zero.
pub fn population_at(pop: &DevicePopulation, year: i32) -> Result<u64> {
    let anchors = &pop.anchors;
    let (a, b) = match anchors.len() {
        0 => return Err(Error::invalid("device population has no anchors")),
        1 => return Ok(anchors[0].device_count),
        n => {
            let seg = anchors
                .windows(2)
                .position(|w| year <= w[1].year)
                .unwrap_or(n - 2);
            (anchors[seg], anchors[seg + 1])
        }
    };
    if b.year <= a.year {
        return Err(Error::invalid("anchor years must be strictly increasing"));
    }
    let slope = (b.device_count as f64 - a.device_count as f64) / f64::from(b.year - a.year);
    let value = a.device_count as f64 + slope * f64::from(year - a.year);
    Ok((value + 0.5).floor().max(0.0) as u64)
}

/// Messages per second per km².
pub fn message_load(profile: &MtcProfile) -> f64 {
    profile.device_density_per_km2 / profile.period_s
}

pub fn required_resources(
    technology: Technology,
    profile: &MtcProfile,
    row: &CapacityRow,
) -> Result<u32> {
    if row.technology != technology {
        return Err(Error::invalid(format!(
            "capacity row is for {} but {} was requested",
            row.technology, technology
        )));
    }
    let capacity = row.supported_density_per_resource;
    if !(capacity.is_finite() && capacity > 0.0) {
        return Err(Error::invalid(format!(
            "supported density per resource must be > 0, got {capacity}"
        )));
    }
    profile.validate()?;
    let n = (profile.device_density_per_km2 / capacity).ceil();
    if n > f64::from(u32::MAX) {
        return Err(Error::invalid("resource count overflows"));
    }
    Ok(n as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReleaseDelta {
    pub resources_rel15: u32,
    pub resources_rel16: u32,
    pub delta: i64,
}

pub fn release_delta(
    pop: &DevicePopulation,
    rel15_year: i32,
    rel16_year: i32,
    technology: Technology,
    profile: &MtcProfile,
    row: &CapacityRow,
) -> Result<ReleaseDelta> {
    if rel16_year <= rel15_year {
        return Err(Error::invalid(format!(
            "rel16 year {rel16_year} must be after rel15 year {rel15_year}"
        )));
    }
    pop.validate()?;
    let at = |year| -> Result<u32> {
        required_resources(technology, &profile.with_density(pop.density_at(year)?), row)
    };
    let resources_rel15 = at(rel15_year)?;
    let resources_rel16 = at(rel16_year)?;
    Ok(ReleaseDelta {
        resources_rel15,
        resources_rel16,
        delta: i64::from(resources_rel16) - i64::from(resources_rel15),
    })
}

/// Smart-city dimensioning scenario: target traffic profile, city
/// population trajectory and per-row capacities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Uc3Scenario {
    pub rel15_year: i32,
    pub rel16_year: i32,
    pub profile: MtcProfile,
    pub population: DevicePopulation,
    pub capacity_table: PrbCapacityTable,
}

impl Uc3Scenario {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            self.rel16_year > self.rel15_year,
            "rel16_year",
            "rel16_year > rel15_year",
        )?;
        self.profile.validate().map_err(|v| v.within("profile"))?;
        self.population.validate().map_err(|v| v.within("population"))?;
        self.capacity_table
            .validate()
            .map_err(|v| v.within("capacity_table"))
    }
}

/// One capacity-table row dimensioned at the target density and at the
/// two release populations.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionRow {
    pub technology: Technology,
    pub isd_label: String,
    pub channel_label: String,
    pub required_at_target: u32,
    pub release: ReleaseDelta,
}

pub fn dimension(s: &Uc3Scenario) -> Result<Vec<DimensionRow>> {
    s.validate()?;
    s.capacity_table
        .rows
        .iter()
        .map(|row| {
            Ok(DimensionRow {
                technology: row.technology,
                isd_label: row.isd_label.clone(),
                channel_label: row.channel_label.clone(),
                required_at_target: required_resources(row.technology, &s.profile, row)?,
                release: release_delta(
                    &s.population,
                    s.rel15_year,
                    s.rel16_year,
                    row.technology,
                    &s.profile,
                    row,
                )?,
            })
        })
        .collect()
}
