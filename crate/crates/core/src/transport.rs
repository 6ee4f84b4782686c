//! Fronthaul/backhaul capacity per functional split and transport cost
//! models (owned microwave, owned fiber, leased line, last drop).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::{CostBreakdown, CostCategory, MoneyAmount};
use crate::error::{ensure, Error, Result, Violation};

/// Where the gNB is split. D-RAN keeps the full baseband on site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitOption {
    #[serde(rename = "dran")]
    Dran,
    /// C-RAN option 2, PDCP in the central unit.
    #[serde(rename = "split2")]
    Split2Pdcp,
    /// C-RAN option 7, upper PHY split.
    #[serde(rename = "split7")]
    Split7UpperPhy,
}

impl SplitOption {
    pub const ALL: [SplitOption; 3] = [
        SplitOption::Dran,
        SplitOption::Split2Pdcp,
        SplitOption::Split7UpperPhy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitOption::Dran => "dran",
            SplitOption::Split2Pdcp => "split2",
            SplitOption::Split7UpperPhy => "split7",
        }
    }

    pub fn is_centralized(self) -> bool {
        !matches!(self, SplitOption::Dran)
    }
}

impl fmt::Display for SplitOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitOption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SplitOption::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown split option `{s}`")))
    }
}

/// Multipliers from per-sector air-interface peak rate to fronthaul rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitCapacityFactors {
    pub split2: f64,
    pub split7: f64,
}

impl SplitCapacityFactors {
    pub fn new(split2: f64, split7: f64) -> Result<Self> {
        let f = Self { split2, split7 };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), Violation> {
        ensure(self.split2.is_finite() && self.split2 >= 1.0, "split2", "split2 >= 1")?;
        ensure(
            self.split7.is_finite() && self.split7 >= self.split2,
            "split7",
            "split7 >= split2",
        )
    }

    pub fn factor(&self, split: SplitOption) -> f64 {
        match split {
            SplitOption::Dran => 1.0,
            SplitOption::Split2Pdcp => self.split2,
            SplitOption::Split7UpperPhy => self.split7,
        }
    }
}

pub fn fronthaul_rate(
    split: SplitOption,
    sector_peak_rate_mbps: f64,
    factors: &SplitCapacityFactors,
) -> Result<f64> {
    if !(sector_peak_rate_mbps.is_finite() && sector_peak_rate_mbps > 0.0) {
        return Err(Error::invalid(format!(
            "sector peak rate must be > 0 Mbps, got {sector_peak_rate_mbps}"
        )));
    }
    factors.validate()?;
    Ok(sector_peak_rate_mbps * factors.factor(split))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransportKind {
    OwnedMicrowave,
    OwnedFiber,
    LeasedLine,
}

impl TransportKind {
    pub fn is_owned(self) -> bool {
        !matches!(self, TransportKind::LeasedLine)
    }
}

/// Final segment reaching the radio site.
///
/// `Included` means the drop carries no separate cost (a microwave hop
/// landing on the mast, or a leased line whose drop is part of the tariff).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LastDrop {
    #[default]
    Included,
    Leased,
    Owned {
        length_km: f64,
        civil_cost_per_km: MoneyAmount,
        equipment_cost: MoneyAmount,
    },
}

fn one() -> u32 {
    1
}

/// A transport link without a capacity; scenarios carry these as templates
/// and the deployment models attach the capacity they derive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportLink {
    pub kind: TransportKind,
    #[serde(default = "one")]
    pub hops: u32,
    #[serde(default)]
    pub route_length_km: f64,
    #[serde(default)]
    pub last_drop: LastDrop,
}

impl TransportLink {
    pub fn with_capacity(&self, capacity_mbps: f64) -> TransportSegment {
        TransportSegment {
            link: *self,
            capacity_mbps,
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        ensure(self.hops >= 1, "hops", "hops >= 1")?;
        ensure(
            self.route_length_km.is_finite() && self.route_length_km >= 0.0,
            "route_length_km",
            "route_length_km >= 0",
        )?;
        if let LastDrop::Owned { length_km, .. } = self.last_drop {
            ensure(
                length_km.is_finite() && length_km >= 0.0,
                "last_drop.length_km",
                "length_km >= 0",
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportSegment {
    pub link: TransportLink,
    pub capacity_mbps: f64,
}

impl TransportSegment {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            self.capacity_mbps.is_finite() && self.capacity_mbps > 0.0,
            "capacity_mbps",
            "capacity_mbps > 0",
        )?;
        self.link.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicrowaveTier {
    pub max_mbps: f64,
    pub capex: MoneyAmount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportTariff {
    pub leased_cost_per_mbps_per_year: MoneyAmount,
    /// Radio price per hop by capacity tier, strictly increasing.
    #[serde(default)]
    pub microwave_tiers: Vec<MicrowaveTier>,
    #[serde(default)]
    pub fiber_capex_per_km: MoneyAmount,
    #[serde(default)]
    pub maintenance_fraction_per_year: f64,
}

impl TransportTariff {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            (0.0..=1.0).contains(&self.maintenance_fraction_per_year),
            "maintenance_fraction_per_year",
            "0 <= maintenance_fraction_per_year <= 1",
        )?;
        for (i, tier) in self.microwave_tiers.iter().enumerate() {
            let path = format!("microwave_tiers.{i}");
            ensure(
                tier.max_mbps.is_finite() && tier.max_mbps > 0.0,
                &path,
                "max_mbps > 0",
            )?;
            if let Some(prev) = i.checked_sub(1).map(|p| self.microwave_tiers[p]) {
                ensure(
                    tier.max_mbps > prev.max_mbps && tier.capex > prev.capex,
                    &path,
                    "tiers strictly increasing in max_mbps and capex",
                )?;
            }
        }
        Ok(())
    }

    /// Per-hop microwave radio price for a given capacity; zero capacity
    /// needs no radio.
    pub fn microwave_unit_capex(&self, capacity_mbps: f64) -> Result<MoneyAmount> {
        if capacity_mbps <= 0.0 {
            return Ok(MoneyAmount::ZERO);
        }
        match self
            .microwave_tiers
            .iter()
            .find(|t| capacity_mbps <= t.max_mbps)
        {
            Some(t) => Ok(t.capex),
            None => Err(Error::CapacityUnserviceable {
                capacity_mbps,
                max_mbps: self.microwave_tiers.last().map_or(0.0, |t| t.max_mbps),
            }),
        }
    }

    fn leased(&self, mbps: f64) -> MoneyAmount {
        self.leased_cost_per_mbps_per_year.times(mbps)
    }
}

/// Capex and yearly opex of one transport segment.
///
/// Owned capex (radios, fiber build, owned drop) carries a yearly
/// maintenance item at the tariff's maintenance fraction.
pub fn segment_cost(segment: &TransportSegment, tariff: &TransportTariff) -> Result<CostBreakdown> {
    segment.validate()?;
    tariff.validate()?;
    let link = &segment.link;
    let cap = segment.capacity_mbps;
    let mut out = CostBreakdown::new();
    let mut owned_capex = MoneyAmount::ZERO;

    match link.kind {
        TransportKind::LeasedLine => {
            out.push("leased_line", CostCategory::OpexPerYear, tariff.leased(cap))?;
        }
        TransportKind::OwnedMicrowave => {
            let radios = tariff
                .microwave_unit_capex(cap)?
                .times(f64::from(link.hops));
            out.push("microwave_radios", CostCategory::Capex, radios)?;
            owned_capex += radios;
        }
        TransportKind::OwnedFiber => {
            let build = tariff.fiber_capex_per_km.times(link.route_length_km);
            out.push("fiber_build", CostCategory::Capex, build)?;
            owned_capex += build;
        }
    }

    match link.last_drop {
        LastDrop::Included => {}
        // a leased drop behind a leased line is already in the line tariff
        LastDrop::Leased if !link.kind.is_owned() => {}
        LastDrop::Leased => {
            out.push("last_drop_lease", CostCategory::OpexPerYear, tariff.leased(cap))?;
        }
        LastDrop::Owned {
            length_km,
            civil_cost_per_km,
            equipment_cost,
        } => {
            let build = civil_cost_per_km.times(length_km) + equipment_cost;
            out.push("last_drop_build", CostCategory::Capex, build)?;
            owned_capex += build;
        }
    }

    if link.kind.is_owned() || matches!(link.last_drop, LastDrop::Owned { .. }) {
        out.push(
            "maintenance",
            CostCategory::OpexPerYear,
            owned_capex.times(tariff.maintenance_fraction_per_year),
        )?;
    }
    Ok(out)
}

/// Extra cost of growing one link from `before_mbps` to `after_mbps`.
///
/// Microwave deltas are per hop and follow the tier table, so they are
/// path-independent. Owned fiber capacity is free once built.
pub fn incremental_cost(
    before_mbps: f64,
    after_mbps: f64,
    tariff: &TransportTariff,
    kind: TransportKind,
) -> Result<CostBreakdown> {
    if !(before_mbps.is_finite() && before_mbps >= 0.0) {
        return Err(Error::invalid(format!(
            "before capacity must be >= 0, got {before_mbps}"
        )));
    }
    if !(after_mbps.is_finite() && after_mbps >= before_mbps) {
        return Err(Error::invalid(format!(
            "after capacity {after_mbps} must be >= before capacity {before_mbps}"
        )));
    }
    tariff.validate()?;
    let out = CostBreakdown::new();
    match kind {
        TransportKind::LeasedLine => {
            out.with_opex("leased_increment", tariff.leased(after_mbps - before_mbps))
        }
        TransportKind::OwnedMicrowave => {
            let after = tariff.microwave_unit_capex(after_mbps)?.value();
            let before = tariff.microwave_unit_capex(before_mbps)?.value();
            let delta = MoneyAmount::new((after - before).max(0.0))?;
            out.with_capex("microwave_upgrade", delta)?.with_opex(
                "maintenance_increment",
                delta.times(tariff.maintenance_fraction_per_year),
            )
        }
        TransportKind::OwnedFiber => out.with_capex("fiber_upgrade", MoneyAmount::ZERO),
    }
}
