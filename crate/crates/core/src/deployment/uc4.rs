//! Long-range macro sites: coverage-driven TCO per km².

use serde::{Deserialize, Serialize};

use crate::cost::{merge, normalize, tco, CostBreakdown, MoneyAmount, TcoResult};
use crate::error::{ensure, Result, Violation};
use crate::linkbudget::{coverage, CoverageResult, LinkBudgetParams, PropagationModel};
use crate::transport::{segment_cost, TransportLink, TransportTariff};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellGeometry {
    #[default]
    Hexagonal,
}

impl CellGeometry {
    /// Area served by one site whose cell circumradius is `r_km`.
    pub fn cell_area_km2(self, r_km: f64) -> f64 {
        match self {
            CellGeometry::Hexagonal => 1.5 * 3f64.sqrt() * r_km * r_km,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteEnergy {
    /// Power-amplifier efficiency turning radiated into drawn power.
    pub pa_efficiency: f64,
    pub overhead_kw_per_sector: f64,
    pub price_per_kw_year: MoneyAmount,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteCosts {
    pub mast_capex_base: MoneyAmount,
    pub mast_capex_per_m: MoneyAmount,
    pub antenna_capex_per_floor_per_sector: MoneyAmount,
    pub radio_capex_per_sector: MoneyAmount,
    /// Yearly maintenance as a fraction of site capex.
    pub site_opex_fraction: f64,
    pub energy: SiteEnergy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Uc4Scenario {
    #[serde(default)]
    pub cell_geometry: CellGeometry,
    pub backhaul_capacity_mbps: f64,
    pub linkbudget: LinkBudgetParams,
    pub model: PropagationModel,
    pub site_costs: SiteCosts,
    pub backhaul: TransportLink,
    pub tariff: TransportTariff,
}

impl Uc4Scenario {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(
            self.backhaul_capacity_mbps.is_finite() && self.backhaul_capacity_mbps > 0.0,
            "backhaul_capacity_mbps",
            "backhaul_capacity_mbps > 0",
        )?;
        let c = &self.site_costs;
        ensure(
            c.mast_capex_per_m.value() > 0.0,
            "site_costs.mast_capex_per_m",
            "mast_capex_per_m > 0",
        )?;
        ensure(
            (0.0..=1.0).contains(&c.site_opex_fraction),
            "site_costs.site_opex_fraction",
            "0 <= site_opex_fraction <= 1",
        )?;
        ensure(
            c.energy.pa_efficiency > 0.0 && c.energy.pa_efficiency <= 1.0,
            "site_costs.energy.pa_efficiency",
            "0 < pa_efficiency <= 1",
        )?;
        ensure(
            c.energy.overhead_kw_per_sector.is_finite() && c.energy.overhead_kw_per_sector >= 0.0,
            "site_costs.energy.overhead_kw_per_sector",
            "overhead_kw_per_sector >= 0",
        )?;
        self.linkbudget.validate().map_err(|v| v.within("linkbudget"))?;
        self.model.validate().map_err(|v| v.within("model"))?;
        self.backhaul.validate().map_err(|v| v.within("backhaul"))?;
        self.tariff.validate().map_err(|v| v.within("tariff"))
    }

    /// Electrical draw of one site in kW.
    pub fn site_power_kw(&self) -> f64 {
        let e = &self.site_costs.energy;
        let radiated_w = 10f64.powf((self.linkbudget.downlink.tx_power_dbm - 30.0) / 10.0);
        f64::from(self.linkbudget.sectors)
            * (radiated_w / 1000.0 / e.pa_efficiency + e.overhead_kw_per_sector)
    }
}

/// Capex and yearly opex of one site including its backhaul.
pub fn uc4_site_breakdown(s: &Uc4Scenario) -> Result<CostBreakdown> {
    s.validate()?;
    let c = &s.site_costs;
    let lb = &s.linkbudget;
    let sectors = f64::from(lb.sectors);

    let mast = c.mast_capex_base + c.mast_capex_per_m.times(lb.mast_height_m);
    let radios = c.radio_capex_per_sector.times(sectors);
    let antennas = c
        .antenna_capex_per_floor_per_sector
        .times(sectors * f64::from(lb.floors));
    let site = CostBreakdown::new()
        .with_capex("mast", mast)?
        .with_capex("radios", radios)?
        .with_capex("antennas", antennas)?
        .with_opex(
            "site_maintenance",
            (mast + radios + antennas).times(c.site_opex_fraction),
        )?
        .with_opex("energy", c.energy.price_per_kw_year.times(s.site_power_kw()))?;

    let backhaul = segment_cost(&s.backhaul.with_capacity(s.backhaul_capacity_mbps), &s.tariff)?;
    merge(&[("", &site), ("backhaul", &backhaul)])
}

/// Site TCO normalized by the hexagonal area the site covers.
pub fn uc4_tco_per_km2(
    s: &Uc4Scenario,
    horizon_years: u32,
    discount_rate: f64,
) -> Result<(TcoResult, CoverageResult)> {
    let breakdown = uc4_site_breakdown(s)?;
    let cov = coverage(&s.linkbudget, &s.model)?;
    let area = s.cell_geometry.cell_area_km2(cov.r_km);
    let result = tco(&breakdown, horizon_years, discount_rate)?;
    Ok((normalize(&result, s.linkbudget.sectors, area)?, cov))
}
