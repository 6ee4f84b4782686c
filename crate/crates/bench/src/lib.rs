//! Fixtures shared by the engine benchmarks.

use vertco_core::sweep::{parse_grid, BestQuery, Goal};
use vertco_core::{golden, Metric, ParamPath, ParamValue, ScenarioDocument};

/// A shipped scenario; panics if the golden set is broken.
pub fn scenario(name: &str) -> ScenarioDocument {
    golden::load(name).unwrap_or_else(|e| panic!("golden {name}: {e}"))
}

/// Chain lengths 1..=n for the uc9 drone sweep.
pub fn chain_lengths(n: i64) -> (ParamPath, Vec<ParamValue>) {
    let path = "drones_per_link".parse().expect("valid path");
    (path, (1..=n).map(ParamValue::Integer).collect())
}

/// 4 x 4 x 3 x 2 grid over the extreme-rural site, minimizing cost per km2.
pub fn uc4_grid_query() -> BestQuery {
    let grid = parse_grid(
        "linkbudget.mast_height_m=60,75,90,108;linkbudget.floors=1,2,3,4;\
         linkbudget.mimo.ul_rx=2,4,8;linkbudget.sectors=3,6",
    )
    .expect("valid grid");
    BestQuery::new(grid, Metric::TcoPerKm2, Goal::Min)
}
