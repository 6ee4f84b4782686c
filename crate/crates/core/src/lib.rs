//! Techno-economic planning engine for 5G vertical deployments.
//!
//! Cost accounting ([`cost`]), transport dimensioning ([`transport`]),
//! link budgets ([`linkbudget`]) and mMTC dimensioning ([`mmtc`]) feed the
//! use-case models in [`deployment`]. Scenarios are loaded from strict TOML
//! ([`scenario`]), explored with [`sweep`] and written out by [`report`].

pub mod cost;
pub mod deployment;
pub mod error;
pub mod linkbudget;
pub mod metrics;
pub mod mmtc;
pub mod report;
pub mod scenario;
pub mod sweep;
pub mod transport;

pub use cost::{
    annuity, merge, normalize, tco, CostBreakdown, CostCategory, CostItem, MoneyAmount,
    Normalizers, TcoResult,
};
pub use deployment::{
    uc1_breakdown, uc1_tco_per_sector, uc4_site_breakdown, uc4_tco_per_km2, uc9_breakdown,
    uc9_sensitivity, uc9_tco, uc9_terms, AreaType, CellGeometry, DroneChainParams, PerSplit,
    SiteCosts, SiteEnergy, Uc1Hardware, Uc1Scenario, Uc4Scenario, Uc9Terms,
};
pub use error::{Error, Result, Violation};
pub use linkbudget::{
    coverage, invert_path_loss, mapl, path_loss, required_sinr, CoverageResult, Direction,
    DirectionParams, LinkBudgetParams, Margins, MimoConfig, PropagationModel,
};
pub use metrics::{evaluate, Evaluation, Metric};
pub use mmtc::{
    dimension, population_at, release_delta, required_resources, CapacityRow, DevicePopulation,
    MtcProfile, PopulationAnchor, PrbCapacityTable, Technology, Uc3Scenario,
};
pub use report::{Format, Report, ReportRow, ReportValue};
pub use scenario::{golden, load_scenario, ScenarioBody, ScenarioDocument, UseCase};
pub use sweep::{
    best_configuration, one_at_a_time, sweep, BestConfiguration, BestQuery, Constraint, Goal,
    ParamPath, ParamValue, SweepResult,
};
pub use transport::{
    fronthaul_rate, incremental_cost, segment_cost, LastDrop, MicrowaveTier, SplitCapacityFactors,
    SplitOption, TransportKind, TransportLink, TransportTariff,
};
