//! Money, cost items and total-cost-of-ownership arithmetic.
//!
//! All amounts share one abstract cost unit per scenario. Capex is paid once
//! at the start of the horizon; opex accrues at the end of each year and is
//! discounted with the ordinary annuity factor returned by [`annuity`].

use std::collections::HashSet;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-negative, finite amount of money in the scenario's cost unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct MoneyAmount(f64);

impl MoneyAmount {
    pub const ZERO: MoneyAmount = MoneyAmount(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            // normalise -0.0 so serialisation is stable
            Ok(Self(value + 0.0))
        } else {
            Err(Error::invalid(format!(
                "money amount must be finite and >= 0, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Multiply by a non-negative finite factor.
    pub fn scale(self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::invalid(format!(
                "scale factor must be finite and >= 0, got {factor}"
            )));
        }
        Self::new(self.0 * factor)
    }

    /// Infallible scaling for factors the caller has already validated
    /// (counts, annuity factors, validated fractions).
    pub(crate) fn times(self, factor: f64) -> Self {
        debug_assert!(factor.is_finite() && factor >= 0.0);
        Self(self.0 * factor)
    }
}

impl TryFrom<f64> for MoneyAmount {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<MoneyAmount> for f64 {
    fn from(m: MoneyAmount) -> f64 {
        m.0
    }
}

impl Add for MoneyAmount {
    type Output = MoneyAmount;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl AddAssign for MoneyAmount {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sum for MoneyAmount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(MoneyAmount::ZERO, Add::add)
    }
}

impl fmt::Display for MoneyAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostCategory {
    Capex,
    OpexPerYear,
}

impl CostCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            CostCategory::Capex => "capex",
            CostCategory::OpexPerYear => "opex_per_year",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostItem {
    pub label: String,
    pub category: CostCategory,
    pub amount: MoneyAmount,
}

/// Ordered list of labelled cost items. Labels are unique and non-empty;
/// totals are always recomputed from the items.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CostBreakdown {
    items: Vec<CostItem>,
}

impl CostBreakdown {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        category: CostCategory,
        amount: MoneyAmount,
    ) -> Result<()> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::invalid("cost item label must be non-empty"));
        }
        if self.items.iter().any(|i| i.label == label) {
            return Err(Error::DuplicateLabel(label));
        }
        self.items.push(CostItem {
            label,
            category,
            amount,
        });
        Ok(())
    }

    pub fn with_capex(mut self, label: &str, amount: MoneyAmount) -> Result<Self> {
        self.push(label, CostCategory::Capex, amount)?;
        Ok(self)
    }

    pub fn with_opex(mut self, label: &str, amount: MoneyAmount) -> Result<Self> {
        self.push(label, CostCategory::OpexPerYear, amount)?;
        Ok(self)
    }

    pub fn items(&self) -> &[CostItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&CostItem> {
        self.items.iter().find(|i| i.label == label)
    }

    pub fn total_capex(&self) -> MoneyAmount {
        self.total_of(CostCategory::Capex)
    }

    pub fn total_opex_per_year(&self) -> MoneyAmount {
        self.total_of(CostCategory::OpexPerYear)
    }

    fn total_of(&self, category: CostCategory) -> MoneyAmount {
        self.items
            .iter()
            .filter(|i| i.category == category)
            .map(|i| i.amount)
            .sum()
    }

    /// Every amount multiplied by `factor` (e.g. a per-site breakdown
    /// replicated over all sites).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let items = self
            .items
            .iter()
            .map(|i| {
                Ok(CostItem {
                    amount: i.amount.scale(factor)?,
                    ..i.clone()
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { items })
    }
}

/// Per-sector and per-km² views of a TCO total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalizers {
    pub sector_count: u32,
    pub area_km2: f64,
    pub per_sector: f64,
    pub per_km2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TcoResult {
    pub horizon_years: u32,
    pub discount_rate: f64,
    pub capex: MoneyAmount,
    pub opex_per_year: MoneyAmount,
    pub total: MoneyAmount,
    /// Each item expanded over the horizon (capex as is, opex times the
    /// annuity factor), in breakdown order.
    pub per_item: Vec<(String, MoneyAmount)>,
    pub normalizers: Option<Normalizers>,
}

impl TcoResult {
    pub fn per_sector(&self) -> Option<f64> {
        self.normalizers.map(|n| n.per_sector)
    }

    pub fn per_km2(&self) -> Option<f64> {
        self.normalizers.map(|n| n.per_km2)
    }

    pub fn item(&self, label: &str) -> Option<MoneyAmount> {
        self.per_item
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, a)| *a)
    }
}

/// Present value of 1 unit paid at the end of each year for `horizon_years`.
///
/// Exactly `horizon_years` when the rate is zero.
pub fn annuity(horizon_years: u32, discount_rate: f64) -> Result<f64> {
    check_horizon(horizon_years, discount_rate)?;
    if discount_rate == 0.0 {
        return Ok(f64::from(horizon_years));
    }
    let base = 1.0 + discount_rate;
    Ok((1..=horizon_years).map(|t| base.powi(-(t as i32))).sum())
}

fn check_horizon(horizon_years: u32, discount_rate: f64) -> Result<()> {
    if horizon_years == 0 {
        return Err(Error::invalid("horizon_years must be >= 1"));
    }
    if !(discount_rate.is_finite() && discount_rate >= 0.0) {
        return Err(Error::invalid(format!(
            "discount_rate must be finite and >= 0, got {discount_rate}"
        )));
    }
    Ok(())
}

pub fn tco(breakdown: &CostBreakdown, horizon_years: u32, discount_rate: f64) -> Result<TcoResult> {
    let factor = annuity(horizon_years, discount_rate)?;
    let per_item = breakdown
        .items()
        .iter()
        .map(|i| {
            let expanded = match i.category {
                CostCategory::Capex => i.amount,
                CostCategory::OpexPerYear => i.amount.times(factor),
            };
            (i.label.clone(), expanded)
        })
        .collect();
    let capex = breakdown.total_capex();
    let opex_per_year = breakdown.total_opex_per_year();
    Ok(TcoResult {
        horizon_years,
        discount_rate,
        capex,
        opex_per_year,
        total: capex + opex_per_year.times(factor),
        per_item,
        normalizers: None,
    })
}

/// Concatenate breakdowns, prefixing each source's labels as `prefix/label`
/// (an empty prefix keeps labels unchanged).
pub fn merge(sources: &[(&str, &CostBreakdown)]) -> Result<CostBreakdown> {
    let mut out = CostBreakdown::new();
    let mut seen = HashSet::new();
    for (prefix, breakdown) in sources {
        for item in breakdown.items() {
            let label = if prefix.is_empty() {
                item.label.clone()
            } else {
                format!("{prefix}/{}", item.label)
            };
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            out.items.push(CostItem {
                label,
                category: item.category,
                amount: item.amount,
            });
        }
    }
    Ok(out)
}

pub fn normalize(result: &TcoResult, sector_count: u32, area_km2: f64) -> Result<TcoResult> {
    if sector_count == 0 {
        return Err(Error::invalid("sector_count must be >= 1"));
    }
    if !(area_km2.is_finite() && area_km2 > 0.0) {
        return Err(Error::invalid(format!(
            "area_km2 must be finite and > 0, got {area_km2}"
        )));
    }
    let total = result.total.value();
    Ok(TcoResult {
        normalizers: Some(Normalizers {
            sector_count,
            area_km2,
            per_sector: total / f64::from(sector_count),
            per_km2: total / area_km2,
        }),
        ..result.clone()
    })
}
