//! Maximum allowable path loss, propagation models and coverage radius.
//!
//! A direction's budget is
//!
//! ```text
//! MAPL = P_tx + G_tx + G_rx + G_div − L_feeder − margins − (N_0 + NF + SINR_req)
//! N_0  = −174 dBm/Hz + 10·log10(B)
//! ```
//!
//! Uplink receive diversity adds `coeff·log2(floors)` for stacked antenna
//! floors plus `10·log10(ul_rx)` array gain. Downlink spatial multiplexing
//! lowers the required SINR through the stream count instead of adding a
//! dB gain. Six sectors add `10·log10(6/3)` of base-station antenna gain in
//! both directions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result, Violation};

/// Lowest Shannon SINR requirement reported for vanishing targets.
pub const SINR_FLOOR_DB: f64 = -30.0;

/// Thermal noise density at 290 K.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Free-space constant for distance in km and frequency in MHz.
pub const FREE_SPACE_CONSTANT_DB: f64 = 32.44;

/// Reference base-station height of the rural model's height correction.
pub const REFERENCE_BS_HEIGHT_M: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Downlink,
    Uplink,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Downlink => "downlink",
            Direction::Uplink => "uplink",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Transmitter/receiver figures for one direction. For the downlink the
/// transmitter is the base station; for the uplink it is the terminal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionParams {
    pub tx_power_dbm: f64,
    pub tx_antenna_gain_dbi: f64,
    pub rx_antenna_gain_dbi: f64,
    pub noise_figure_db: f64,
    pub feeder_loss_db: f64,
    #[serde(default)]
    pub implementation_gap_db: f64,
    /// Lowest SINR the direction's physical channels operate at. When set,
    /// the required SINR never drops below it however small the target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_sinr_db: Option<f64>,
}

impl DirectionParams {
    fn validate(&self) -> Result<(), Violation> {
        let finite = [
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_antenna_gain_dbi", self.tx_antenna_gain_dbi),
            ("rx_antenna_gain_dbi", self.rx_antenna_gain_dbi),
            ("noise_figure_db", self.noise_figure_db),
            ("feeder_loss_db", self.feeder_loss_db),
        ];
        for (name, v) in finite {
            ensure(v.is_finite(), name, &format!("{name} finite"))?;
        }
        ensure(
            self.implementation_gap_db.is_finite() && self.implementation_gap_db >= 0.0,
            "implementation_gap_db",
            "implementation_gap_db >= 0",
        )?;
        if let Some(v) = self.min_sinr_db {
            ensure(v.is_finite(), "min_sinr_db", "min_sinr_db finite")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MimoConfig {
    pub dl_tx: u32,
    pub dl_rx: u32,
    pub ul_tx: u32,
    pub ul_rx: u32,
}

impl MimoConfig {
    pub fn spatial_streams(&self, direction: Direction) -> u32 {
        match direction {
            Direction::Downlink => self.dl_tx.min(self.dl_rx),
            Direction::Uplink => self.ul_tx.min(self.ul_rx),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Margins {
    pub shadowing_db: f64,
    pub interference_db: f64,
}

impl Margins {
    pub fn total_db(&self) -> f64 {
        self.shadowing_db + self.interference_db
    }
}

fn default_diversity_coeff() -> f64 {
    3.0
}

fn default_efficiency_cap() -> f64 {
    7.4
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkBudgetParams {
    pub carrier_freq_mhz: f64,
    pub bandwidth_mhz: f64,
    pub mast_height_m: f64,
    pub ue_height_m: f64,
    /// Stacked antenna floors combined for uplink vertical diversity.
    pub floors: u32,
    pub sectors: u32,
    pub target_dl_mbps: f64,
    pub target_ul_mbps: f64,
    /// dB of uplink combining gain per doubling of antenna floors.
    #[serde(default = "default_diversity_coeff")]
    pub diversity_gain_per_doubling_db: f64,
    /// Spectral efficiency ceiling per spatial stream, bps/Hz.
    #[serde(default = "default_efficiency_cap")]
    pub efficiency_cap_bps_hz: f64,
    pub mimo: MimoConfig,
    pub margins: Margins,
    pub downlink: DirectionParams,
    pub uplink: DirectionParams,
}

impl LinkBudgetParams {
    pub fn direction(&self, direction: Direction) -> &DirectionParams {
        match direction {
            Direction::Downlink => &self.downlink,
            Direction::Uplink => &self.uplink,
        }
    }

    pub fn direction_mut(&mut self, direction: Direction) -> &mut DirectionParams {
        match direction {
            Direction::Downlink => &mut self.downlink,
            Direction::Uplink => &mut self.uplink,
        }
    }

    pub fn target_mbps(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Downlink => self.target_dl_mbps,
            Direction::Uplink => self.target_ul_mbps,
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let positive = [
            ("carrier_freq_mhz", self.carrier_freq_mhz),
            ("bandwidth_mhz", self.bandwidth_mhz),
            ("mast_height_m", self.mast_height_m),
            ("ue_height_m", self.ue_height_m),
            ("target_dl_mbps", self.target_dl_mbps),
            ("target_ul_mbps", self.target_ul_mbps),
            ("efficiency_cap_bps_hz", self.efficiency_cap_bps_hz),
        ];
        for (name, v) in positive {
            ensure(v.is_finite() && v > 0.0, name, &format!("{name} > 0"))?;
        }
        ensure((1..=8).contains(&self.floors), "floors", "1 <= floors <= 8")?;
        ensure(
            self.sectors == 3 || self.sectors == 6,
            "sectors",
            "sectors in {3, 6}",
        )?;
        ensure(
            self.diversity_gain_per_doubling_db.is_finite()
                && self.diversity_gain_per_doubling_db >= 0.0,
            "diversity_gain_per_doubling_db",
            "diversity_gain_per_doubling_db >= 0",
        )?;
        let m = self.mimo;
        for (name, v) in [
            ("dl_tx", m.dl_tx),
            ("dl_rx", m.dl_rx),
            ("ul_tx", m.ul_tx),
            ("ul_rx", m.ul_rx),
        ] {
            ensure(v >= 1, &format!("mimo.{name}"), &format!("{name} >= 1"))?;
        }
        ensure(
            self.margins.shadowing_db.is_finite() && self.margins.interference_db.is_finite(),
            "margins",
            "margins finite",
        )?;
        self.downlink.validate().map_err(|v| v.within("downlink"))?;
        self.uplink.validate().map_err(|v| v.within("uplink"))
    }
}

/// Path-loss model.
///
/// `RuralEmpirical` is a log-distance law
/// `offset + slope·log10(d_km) + freq_coeff·log10(f_MHz) − height_coeff·log10(h_bs/30 m)`
/// valid on `[d_min_km, d_max_km]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PropagationModel {
    FreeSpace,
    RuralEmpirical {
        offset_db: f64,
        slope_db_per_decade: f64,
        freq_coeff: f64,
        height_coeff: f64,
        d_min_km: f64,
        d_max_km: f64,
    },
}

impl PropagationModel {
    pub fn validate(&self) -> Result<(), Violation> {
        if let PropagationModel::RuralEmpirical {
            offset_db,
            slope_db_per_decade,
            freq_coeff,
            height_coeff,
            d_min_km,
            d_max_km,
        } = *self
        {
            ensure(
                offset_db.is_finite() && freq_coeff.is_finite() && height_coeff.is_finite(),
                "",
                "coefficients finite",
            )?;
            ensure(
                slope_db_per_decade.is_finite() && slope_db_per_decade > 0.0,
                "slope_db_per_decade",
                "slope_db_per_decade > 0",
            )?;
            ensure(d_min_km.is_finite() && d_min_km > 0.0, "d_min_km", "d_min_km > 0")?;
            ensure(
                d_max_km.is_finite() && d_max_km > d_min_km,
                "d_max_km",
                "d_max_km > d_min_km",
            )?;
        }
        Ok(())
    }

    /// Validity range in km; free space is valid for every positive distance.
    pub fn validity_km(&self) -> Option<(f64, f64)> {
        match *self {
            PropagationModel::FreeSpace => None,
            PropagationModel::RuralEmpirical {
                d_min_km, d_max_km, ..
            } => Some((d_min_km, d_max_km)),
        }
    }

    fn loss_unchecked(&self, d_km: f64, f_mhz: f64, h_bs_m: f64) -> f64 {
        match *self {
            PropagationModel::FreeSpace => {
                FREE_SPACE_CONSTANT_DB + 20.0 * d_km.log10() + 20.0 * f_mhz.log10()
            }
            PropagationModel::RuralEmpirical {
                offset_db,
                slope_db_per_decade,
                freq_coeff,
                height_coeff,
                ..
            } => {
                offset_db + slope_db_per_decade * d_km.log10() + freq_coeff * f_mhz.log10()
                    - height_coeff * (h_bs_m / REFERENCE_BS_HEIGHT_M).log10()
            }
        }
    }
}

/// Path loss in dB. Terminal height is accepted for interface symmetry;
/// neither shipped model uses it.
pub fn path_loss(
    model: &PropagationModel,
    d_km: f64,
    f_mhz: f64,
    h_bs_m: f64,
    _h_ue_m: f64,
) -> Result<f64> {
    model.validate()?;
    if !(d_km.is_finite() && d_km > 0.0) {
        return Err(Error::OutOfRange {
            distance_km: d_km,
            bound: "d > 0".into(),
        });
    }
    if !(f_mhz > 0.0 && h_bs_m > 0.0) {
        return Err(Error::invalid("frequency and mast height must be > 0"));
    }
    if let Some((lo, hi)) = model.validity_km() {
        if d_km < lo {
            return Err(Error::OutOfRange {
                distance_km: d_km,
                bound: format!("d_min_km = {lo}"),
            });
        }
        if d_km > hi {
            return Err(Error::OutOfRange {
                distance_km: d_km,
                bound: format!("d_max_km = {hi}"),
            });
        }
    }
    Ok(model.loss_unchecked(d_km, f_mhz, h_bs_m))
}

/// SINR needed to carry `target_mbps` under a capped Shannon law, plus the
/// implementation gap. The Shannon term is floored at [`SINR_FLOOR_DB`].
pub fn required_sinr(
    target_mbps: f64,
    bandwidth_mhz: f64,
    spatial_streams: u32,
    implementation_gap_db: f64,
    efficiency_cap_bps_hz: f64,
) -> Result<f64> {
    if !(bandwidth_mhz > 0.0 && spatial_streams >= 1 && efficiency_cap_bps_hz > 0.0) {
        return Err(Error::invalid(
            "bandwidth, stream count and efficiency cap must be positive",
        ));
    }
    if !(implementation_gap_db.is_finite() && implementation_gap_db >= 0.0) {
        return Err(Error::invalid("implementation gap must be >= 0 dB"));
    }
    if !(target_mbps.is_finite() && target_mbps >= 0.0) {
        return Err(Error::invalid(format!("target must be >= 0, got {target_mbps}")));
    }
    let streams = f64::from(spatial_streams);
    let limit = efficiency_cap_bps_hz * bandwidth_mhz * streams;
    if target_mbps > limit {
        return Err(Error::TargetUnachievable {
            target_mbps,
            limit_mbps: limit,
        });
    }
    let per_stream = target_mbps / (bandwidth_mhz * streams);
    let shannon = if per_stream > 0.0 {
        10.0 * (per_stream * std::f64::consts::LN_2).exp_m1().log10()
    } else {
        f64::NEG_INFINITY
    };
    Ok(shannon.max(SINR_FLOOR_DB) + implementation_gap_db)
}

pub fn noise_floor_dbm(bandwidth_mhz: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * (bandwidth_mhz * 1e6).log10()
}

pub fn sector_gain_db(sectors: u32) -> f64 {
    10.0 * (f64::from(sectors) / 3.0).log10()
}

/// Receive-side diversity and array gain. Zero on the downlink.
pub fn diversity_gain_db(params: &LinkBudgetParams, direction: Direction) -> f64 {
    match direction {
        Direction::Downlink => 0.0,
        Direction::Uplink => {
            params.diversity_gain_per_doubling_db * f64::from(params.floors).log2()
                + 10.0 * f64::from(params.mimo.ul_rx).log10()
        }
    }
}

pub fn mapl(params: &LinkBudgetParams, direction: Direction, sinr_db: f64) -> f64 {
    let d = params.direction(direction);
    let sector = sector_gain_db(params.sectors);
    let (tx_gain, rx_gain) = match direction {
        Direction::Downlink => (d.tx_antenna_gain_dbi + sector, d.rx_antenna_gain_dbi),
        Direction::Uplink => (d.tx_antenna_gain_dbi, d.rx_antenna_gain_dbi + sector),
    };
    let sensitivity = noise_floor_dbm(params.bandwidth_mhz) + d.noise_figure_db + sinr_db;
    d.tx_power_dbm + tx_gain + rx_gain + diversity_gain_db(params, direction)
        - d.feeder_loss_db
        - params.margins.total_db()
        - sensitivity
}

/// SINR the direction must reach at the cell edge: the Shannon requirement
/// for its throughput target, raised to the channel floor when one is set.
pub fn direction_sinr(params: &LinkBudgetParams, direction: Direction) -> Result<f64> {
    let d = params.direction(direction);
    let shannon = required_sinr(
        params.target_mbps(direction),
        params.bandwidth_mhz,
        params.mimo.spatial_streams(direction),
        d.implementation_gap_db,
        params.efficiency_cap_bps_hz,
    )?;
    Ok(match d.min_sinr_db {
        Some(floor) => shannon.max(floor + d.implementation_gap_db),
        None => shannon,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub distance_km: f64,
    /// The budget exceeded the loss at the top of the validity range and the
    /// distance was clamped there.
    pub saturated: bool,
}

/// Distance at which the model's loss equals `mapl_db`, by bisection on
/// `log10(d)`.
pub fn invert_path_loss(
    model: &PropagationModel,
    mapl_db: f64,
    f_mhz: f64,
    h_bs_m: f64,
    h_ue_m: f64,
) -> Result<Inversion> {
    model.validate()?;
    if !mapl_db.is_finite() {
        return Err(Error::invalid(format!("MAPL must be finite, got {mapl_db}")));
    }
    let loss = |d: f64| model.loss_unchecked(d, f_mhz, h_bs_m);
    let (mut lo, mut hi) = match model.validity_km() {
        Some((d_min, d_max)) => {
            let min_loss = path_loss(model, d_min, f_mhz, h_bs_m, h_ue_m)?;
            if mapl_db < min_loss {
                return Err(Error::RadiusBelowMinimum {
                    mapl_db,
                    d_min_km: d_min,
                    min_loss_db: min_loss,
                });
            }
            if mapl_db >= loss(d_max) {
                return Ok(Inversion {
                    distance_km: d_max,
                    saturated: mapl_db > loss(d_max),
                });
            }
            (d_min, d_max)
        }
        None => {
            if f_mhz.is_nan() || f_mhz <= 0.0 {
                return Err(Error::invalid("frequency must be > 0"));
            }
            let (mut lo, mut hi) = (1.0_f64, 1.0_f64);
            while loss(lo) > mapl_db {
                lo /= 10.0;
            }
            while loss(hi) < mapl_db {
                hi *= 10.0;
            }
            (lo, hi)
        }
    };
    if loss(lo) == mapl_db {
        return Ok(Inversion {
            distance_km: lo,
            saturated: false,
        });
    }
    let (mut log_lo, mut log_hi) = (lo.log10(), hi.log10());
    loop {
        let mid = 0.5 * (log_lo + log_hi);
        if mid <= log_lo || mid >= log_hi {
            break;
        }
        if loss(10f64.powf(mid)) < mapl_db {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
    }
    lo = 10f64.powf(log_lo);
    hi = 10f64.powf(log_hi);
    let d = if (loss(lo) - mapl_db).abs() <= (loss(hi) - mapl_db).abs() {
        lo
    } else {
        hi
    };
    Ok(Inversion {
        distance_km: d,
        saturated: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageResult {
    pub r_dl_km: f64,
    pub r_ul_km: f64,
    pub r_km: f64,
    pub limiting_direction: Direction,
    pub mapl_dl_db: f64,
    pub mapl_ul_db: f64,
    pub saturated: bool,
}

pub fn coverage(params: &LinkBudgetParams, model: &PropagationModel) -> Result<CoverageResult> {
    params.validate()?;
    let radius = |direction| -> Result<(f64, Inversion)> {
        let budget = mapl(params, direction, direction_sinr(params, direction)?);
        let inv = invert_path_loss(
            model,
            budget,
            params.carrier_freq_mhz,
            params.mast_height_m,
            params.ue_height_m,
        )?;
        Ok((budget, inv))
    };
    let (mapl_dl_db, dl) = radius(Direction::Downlink)?;
    let (mapl_ul_db, ul) = radius(Direction::Uplink)?;
    let (r_km, limiting_direction, saturated) = if ul.distance_km <= dl.distance_km {
        (ul.distance_km, Direction::Uplink, ul.saturated)
    } else {
        (dl.distance_km, Direction::Downlink, dl.saturated)
    };
    Ok(CoverageResult {
        r_dl_km: dl.distance_km,
        r_ul_km: ul.distance_km,
        r_km,
        limiting_direction,
        mapl_dl_db,
        mapl_ul_db,
        saturated,
    })
}
