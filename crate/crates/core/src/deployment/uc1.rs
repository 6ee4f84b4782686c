//! V2X with MEC: per-sector TCO under D-RAN and the two C-RAN splits.
//!
//! MEC placement follows the RAN topology: one node per site for D-RAN,
//! one node per central-unit pool for C-RAN.

use serde::{Deserialize, Serialize};

use crate::cost::{merge, normalize, tco, CostBreakdown, MoneyAmount, TcoResult};
use crate::error::{ensure, Result, Violation};
use crate::transport::{
    fronthaul_rate, segment_cost, SplitCapacityFactors, SplitOption, TransportLink,
    TransportTariff,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaType {
    Megacity,
    Underserved,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerSplit<T> {
    pub dran: T,
    pub split2: T,
    pub split7: T,
}

impl<T: Copy> PerSplit<T> {
    pub fn get(&self, split: SplitOption) -> T {
        match split {
            SplitOption::Dran => self.dran,
            SplitOption::Split2Pdcp => self.split2,
            SplitOption::Split7UpperPhy => self.split7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Uc1Hardware {
    pub rru_capex_per_sector: MoneyAmount,
    /// Full baseband per sector (D-RAN).
    pub dran_bbu_capex: MoneyAmount,
    /// Distributed unit per sector for each C-RAN split.
    pub du_capex_split2: MoneyAmount,
    pub du_capex_split7: MoneyAmount,
    /// COTS central unit, one per pool.
    pub cu_cots_capex: MoneyAmount,
    pub cu_power_kw: f64,
    pub mec_node_capex: MoneyAmount,
    pub mec_power_kw: f64,
    pub site_power_kw: PerSplit<f64>,
}

impl Uc1Hardware {
    fn baseband_per_sector(&self, split: SplitOption) -> MoneyAmount {
        match split {
            SplitOption::Dran => self.dran_bbu_capex,
            SplitOption::Split2Pdcp => self.du_capex_split2,
            SplitOption::Split7UpperPhy => self.du_capex_split7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Uc1Scenario {
    pub area_type: AreaType,
    pub split: SplitOption,
    pub site_count: u32,
    pub sectors_per_site: u32,
    pub area_km2: f64,
    pub sector_peak_rate_mbps: f64,
    pub sites_per_cu_pool: u32,
    pub energy_price_per_kw_year: MoneyAmount,
    pub hardware: Uc1Hardware,
    pub transport: TransportLink,
    pub tariff: TransportTariff,
    pub factors: SplitCapacityFactors,
}

impl Uc1Scenario {
    pub fn validate(&self) -> Result<(), Violation> {
        ensure(self.site_count >= 1, "site_count", "site_count >= 1")?;
        ensure(self.sectors_per_site >= 1, "sectors_per_site", "sectors_per_site >= 1")?;
        ensure(self.sites_per_cu_pool >= 1, "sites_per_cu_pool", "sites_per_cu_pool >= 1")?;
        ensure(
            self.area_km2.is_finite() && self.area_km2 > 0.0,
            "area_km2",
            "area_km2 > 0",
        )?;
        ensure(
            self.sector_peak_rate_mbps.is_finite() && self.sector_peak_rate_mbps > 0.0,
            "sector_peak_rate_mbps",
            "sector_peak_rate_mbps > 0",
        )?;
        let hw = &self.hardware;
        ensure(
            hw.du_capex_split7 <= hw.du_capex_split2 && hw.du_capex_split2 <= hw.dran_bbu_capex,
            "hardware",
            "du_capex_split7 <= du_capex_split2 <= dran_bbu_capex",
        )?;
        for (name, v) in [
            ("cu_power_kw", hw.cu_power_kw),
            ("mec_power_kw", hw.mec_power_kw),
            ("site_power_kw.dran", hw.site_power_kw.dran),
            ("site_power_kw.split2", hw.site_power_kw.split2),
            ("site_power_kw.split7", hw.site_power_kw.split7),
        ] {
            ensure(
                v.is_finite() && v >= 0.0,
                &format!("hardware.{name}"),
                &format!("{name} >= 0"),
            )?;
        }
        self.transport.validate().map_err(|v| v.within("transport"))?;
        self.tariff.validate().map_err(|v| v.within("tariff"))?;
        self.factors.validate().map_err(|v| v.within("factors"))
    }

    pub fn sector_count(&self) -> u32 {
        self.site_count * self.sectors_per_site
    }

    pub fn cu_pools(&self) -> u32 {
        self.site_count.div_ceil(self.sites_per_cu_pool)
    }

    pub fn mec_nodes(&self) -> u32 {
        if self.split.is_centralized() {
            self.cu_pools()
        } else {
            self.site_count
        }
    }
}

/// Network-wide capex/opex for the scenario's split.
pub fn uc1_breakdown(s: &Uc1Scenario) -> Result<CostBreakdown> {
    s.validate()?;
    let hw = &s.hardware;
    let sites = f64::from(s.site_count);
    let sectors = f64::from(s.sector_count());
    let mec_nodes = f64::from(s.mec_nodes());
    let pools = if s.split.is_centralized() {
        f64::from(s.cu_pools())
    } else {
        0.0
    };

    let power_kw = sites * hw.site_power_kw.get(s.split)
        + mec_nodes * hw.mec_power_kw
        + pools * hw.cu_power_kw;

    let mut ran = CostBreakdown::new()
        .with_capex("radio_units", hw.rru_capex_per_sector.times(sectors))?
        .with_capex("baseband", hw.baseband_per_sector(s.split).times(sectors))?;
    if s.split.is_centralized() {
        ran = ran.with_capex("cu_pool", hw.cu_cots_capex.times(pools))?;
    }
    let ran = ran
        .with_capex("mec_nodes", hw.mec_node_capex.times(mec_nodes))?
        .with_opex("energy", s.energy_price_per_kw_year.times(power_kw))?;

    let per_site_mbps = fronthaul_rate(s.split, s.sector_peak_rate_mbps, &s.factors)?
        * f64::from(s.sectors_per_site);
    let transport = segment_cost(&s.transport.with_capacity(per_site_mbps), &s.tariff)?
        .scaled(sites)?;

    merge(&[("", &ran), ("transport", &transport)])
}

pub fn uc1_tco_per_sector(
    s: &Uc1Scenario,
    horizon_years: u32,
    discount_rate: f64,
) -> Result<TcoResult> {
    let result = tco(&uc1_breakdown(s)?, horizon_years, discount_rate)?;
    normalize(&result, s.sector_count(), s.area_km2)
}
