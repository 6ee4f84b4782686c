//! Drone relay chains for emergency coverage.
//!
//! Each concurrent event is served by one drone plus `k` relays back to a
//! ground anchor small cell. An anchor's reach is a disc of radius
//! `k × hop_range_km`, so longer chains need fewer upgraded anchors and
//! less leased fronthaul, at the price of a larger fleet.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cost::{merge, tco, CostBreakdown, MoneyAmount, TcoResult};
use crate::error::{ensure, Error, Result, Violation};
use crate::transport::{
    fronthaul_rate, incremental_cost, SplitCapacityFactors, SplitOption, TransportKind,
    TransportTariff,
};

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DroneChainParams {
    pub split: SplitOption,
    pub service_area_km2: f64,
    pub concurrent_events: u32,
    pub hop_range_km: f64,
    /// Relay drones per chain (k).
    pub drones_per_link: u32,
    /// Spares and battery rotation multiplier on the fleet.
    #[serde(default = "one")]
    pub fleet_overprovision: f64,
    pub serving_drone_rate_mbps: f64,
    pub drone_capex: MoneyAmount,
    pub drone_opex_per_year: MoneyAmount,
    pub radio_kit_capex: MoneyAmount,
    pub anchor_upgrade_capex: MoneyAmount,
    pub tariff: TransportTariff,
    pub factors: SplitCapacityFactors,
}

impl DroneChainParams {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            self.service_area_km2.is_finite() && self.service_area_km2 > 0.0,
            "service_area_km2",
            "area > 0",
        )?;
        ensure(self.concurrent_events >= 1, "concurrent_events", "concurrent_events >= 1")?;
        ensure(
            self.hop_range_km.is_finite() && self.hop_range_km > 0.0,
            "hop_range_km",
            "hop_range > 0",
        )?;
        ensure(self.drones_per_link >= 1, "drones_per_link", "k ≥ 1")?;
        ensure(
            self.fleet_overprovision.is_finite() && self.fleet_overprovision >= 1.0,
            "fleet_overprovision",
            "fleet_overprovision >= 1",
        )?;
        ensure(
            self.serving_drone_rate_mbps.is_finite() && self.serving_drone_rate_mbps > 0.0,
            "serving_drone_rate_mbps",
            "serving_drone_rate_mbps > 0",
        )?;
        self.tariff.validate().map_err(|v| v.within("tariff"))?;
        self.factors.validate().map_err(|v| v.within("factors"))
    }

    pub fn with_drones_per_link(&self, k: u32) -> Self {
        Self {
            drones_per_link: k,
            ..self.clone()
        }
    }

    pub fn anchor_reach_km(&self) -> f64 {
        f64::from(self.drones_per_link) * self.hop_range_km
    }

    pub fn anchors_upgraded(&self) -> u64 {
        let reach = self.anchor_reach_km();
        (self.service_area_km2 / (PI * reach * reach)).ceil().max(1.0) as u64
    }

    pub fn drones_total(&self) -> u64 {
        let per_chain = f64::from(self.drones_per_link) + 1.0;
        (f64::from(self.concurrent_events) * per_chain * self.fleet_overprovision).ceil() as u64
    }
}

/// The three cost factors as separate breakdowns.
#[derive(Debug, Clone, PartialEq)]
pub struct Uc9Terms {
    pub anchors_upgraded: u64,
    pub drones_total: u64,
    pub drones: CostBreakdown,
    pub anchors: CostBreakdown,
    pub fronthaul: CostBreakdown,
}

pub fn uc9_terms(p: &DroneChainParams) -> Result<Uc9Terms> {
    p.validate()?;
    let anchors_upgraded = p.anchors_upgraded();
    let drones_total = p.drones_total();
    let fleet = drones_total as f64;
    let anchors_f = anchors_upgraded as f64;

    let drones = CostBreakdown::new()
        .with_capex("airframes", p.drone_capex.times(fleet))?
        .with_capex("radio_kits", p.radio_kit_capex.times(fleet))?
        .with_opex("operations", p.drone_opex_per_year.times(fleet))?;
    let anchors =
        CostBreakdown::new().with_capex("upgrades", p.anchor_upgrade_capex.times(anchors_f))?;

    let per_anchor_mbps = fronthaul_rate(p.split, p.serving_drone_rate_mbps, &p.factors)?;
    let fronthaul = incremental_cost(0.0, per_anchor_mbps, &p.tariff, TransportKind::LeasedLine)?
        .scaled(anchors_f)?;

    Ok(Uc9Terms {
        anchors_upgraded,
        drones_total,
        drones,
        anchors,
        fronthaul,
    })
}

pub fn uc9_breakdown(p: &DroneChainParams) -> Result<CostBreakdown> {
    let t = uc9_terms(p)?;
    merge(&[
        ("drones", &t.drones),
        ("anchors", &t.anchors),
        ("fronthaul", &t.fronthaul),
    ])
}

pub fn uc9_tco(p: &DroneChainParams, horizon_years: u32, discount_rate: f64) -> Result<TcoResult> {
    tco(&uc9_breakdown(p)?, horizon_years, discount_rate)
}

/// TCO at each chain length with everything else held fixed.
pub fn uc9_sensitivity(
    p: &DroneChainParams,
    k_values: &[u32],
    horizon_years: u32,
    discount_rate: f64,
) -> Result<Vec<(u32, MoneyAmount)>> {
    if k_values.is_empty() {
        return Err(Error::invalid("k_values must be non-empty"));
    }
    k_values
        .iter()
        .map(|&k| Ok((k, uc9_tco(&p.with_drones_per_link(k), horizon_years, discount_rate)?.total)))
        .collect()
}
