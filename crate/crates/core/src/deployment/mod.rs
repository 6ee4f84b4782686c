//! Costed deployments built from the cost, transport and link-budget
//! models.

mod uc1;
mod uc4;
mod uc9;

pub use uc1::{uc1_breakdown, uc1_tco_per_sector, AreaType, PerSplit, Uc1Hardware, Uc1Scenario};
pub use uc4::{uc4_site_breakdown, uc4_tco_per_km2, CellGeometry, SiteCosts, SiteEnergy, Uc4Scenario};
pub use uc9::{
    uc9_breakdown, uc9_sensitivity, uc9_tco, uc9_terms, DroneChainParams, Uc9Terms,
};
