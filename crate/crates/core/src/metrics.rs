//! Closed registry of scalar metrics a scenario can be evaluated for.

use std::fmt;
use std::str::FromStr;

use crate::deployment::{uc4_tco_per_km2, uc9_terms};
use crate::error::{Error, Result};
use crate::mmtc::{dimension, Technology};
use crate::scenario::{ScenarioBody, ScenarioDocument, UseCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    TcoTotal,
    TcoPerSector,
    TcoPerKm2,
    CapexTotal,
    OpexPerYear,
    CoverageKm,
    CoverageDlKm,
    CoverageUlKm,
    RequiredPrbs,
    RequiredNarrowbands,
    PrbDelta,
    NarrowbandDelta,
    AnchorsUpgraded,
    DronesTotal,
}

impl Metric {
    pub const ALL: [Metric; 14] = [
        Metric::TcoTotal,
        Metric::TcoPerSector,
        Metric::TcoPerKm2,
        Metric::CapexTotal,
        Metric::OpexPerYear,
        Metric::CoverageKm,
        Metric::CoverageDlKm,
        Metric::CoverageUlKm,
        Metric::RequiredPrbs,
        Metric::RequiredNarrowbands,
        Metric::PrbDelta,
        Metric::NarrowbandDelta,
        Metric::AnchorsUpgraded,
        Metric::DronesTotal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::TcoTotal => "tco_total",
            Metric::TcoPerSector => "tco_per_sector",
            Metric::TcoPerKm2 => "tco_per_km2",
            Metric::CapexTotal => "capex_total",
            Metric::OpexPerYear => "opex_per_year",
            Metric::CoverageKm => "coverage_km",
            Metric::CoverageDlKm => "coverage_dl_km",
            Metric::CoverageUlKm => "coverage_ul_km",
            Metric::RequiredPrbs => "required_prbs",
            Metric::RequiredNarrowbands => "required_narrowbands",
            Metric::PrbDelta => "prb_delta",
            Metric::NarrowbandDelta => "narrowband_delta",
            Metric::AnchorsUpgraded => "anchors_upgraded",
            Metric::DronesTotal => "drones_total",
        }
    }

    /// Metrics defined for a use case, in registry order.
    pub fn available(use_case: UseCase) -> &'static [Metric] {
        use Metric::*;
        match use_case {
            UseCase::Uc1 => &[TcoTotal, TcoPerSector, TcoPerKm2, CapexTotal, OpexPerYear],
            UseCase::Uc3 => &[RequiredPrbs, RequiredNarrowbands, PrbDelta, NarrowbandDelta],
            UseCase::Uc4 => &[
                TcoTotal,
                TcoPerSector,
                TcoPerKm2,
                CapexTotal,
                OpexPerYear,
                CoverageKm,
                CoverageDlKm,
                CoverageUlKm,
            ],
            UseCase::Uc9 => &[TcoTotal, CapexTotal, OpexPerYear, AnchorsUpgraded, DronesTotal],
        }
    }

    pub fn check_available(self, use_case: UseCase) -> Result<()> {
        if Metric::available(use_case).contains(&self) {
            Ok(())
        } else {
            Err(Error::MetricUnavailable {
                metric: self.as_str().into(),
                use_case: use_case.as_str().into(),
            })
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMetric(s.into()))
    }
}

/// Every available metric of one scenario at its own horizon and rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub use_case: UseCase,
    pub values: Vec<(Metric, f64)>,
}

impl Evaluation {
    pub fn get(&self, metric: Metric) -> Result<f64> {
        self.values
            .iter()
            .find(|(m, _)| *m == metric)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::MetricUnavailable {
                metric: metric.as_str().into(),
                use_case: self.use_case.as_str().into(),
            })
    }
}

pub fn evaluate(doc: &ScenarioDocument) -> Result<Evaluation> {
    use Metric::*;
    let (h, r) = (doc.horizon_years, doc.discount_rate);
    let values = match &doc.body {
        ScenarioBody::Uc1(_) => {
            let t = doc.tco(h, r)?;
            let n = t.normalizers.expect("uc1 results are normalized");
            vec![
                (TcoTotal, t.total.value()),
                (TcoPerSector, n.per_sector),
                (TcoPerKm2, n.per_km2),
                (CapexTotal, t.capex.value()),
                (OpexPerYear, t.opex_per_year.value()),
            ]
        }
        ScenarioBody::Uc4(s) => {
            let (t, cov) = uc4_tco_per_km2(s, h, r)?;
            let n = t.normalizers.expect("uc4 results are normalized");
            vec![
                (TcoTotal, t.total.value()),
                (TcoPerSector, n.per_sector),
                (TcoPerKm2, n.per_km2),
                (CapexTotal, t.capex.value()),
                (OpexPerYear, t.opex_per_year.value()),
                (CoverageKm, cov.r_km),
                (CoverageDlKm, cov.r_dl_km),
                (CoverageUlKm, cov.r_ul_km),
            ]
        }
        ScenarioBody::Uc9(p) => {
            let t = doc.tco(h, r)?;
            let terms = uc9_terms(p)?;
            vec![
                (TcoTotal, t.total.value()),
                (CapexTotal, t.capex.value()),
                (OpexPerYear, t.opex_per_year.value()),
                (AnchorsUpgraded, terms.anchors_upgraded as f64),
                (DronesTotal, terms.drones_total as f64),
            ]
        }
        ScenarioBody::Uc3(s) => {
            let rows = dimension(s)?;
            let max_of = |tech: Technology, f: &dyn Fn(&crate::mmtc::DimensionRow) -> f64| {
                rows.iter()
                    .filter(|r| r.technology == tech)
                    .map(f)
                    .fold(0.0, f64::max)
            };
            vec![
                (RequiredPrbs, max_of(Technology::NbIot, &|r| f64::from(r.required_at_target))),
                (
                    RequiredNarrowbands,
                    max_of(Technology::LteM, &|r| f64::from(r.required_at_target)),
                ),
                (PrbDelta, max_of(Technology::NbIot, &|r| r.release.delta as f64)),
                (NarrowbandDelta, max_of(Technology::LteM, &|r| r.release.delta as f64)),
            ]
        }
    };
    Ok(Evaluation {
        use_case: doc.use_case(),
        values,
    })
}
