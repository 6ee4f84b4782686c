//! Flat tabular reports emitted as CSV or JSON.
//!
//! A report has a fixed column list and rows holding exactly those columns
//! in that order. Numbers use the shortest decimal form that parses back to
//! the same double, so emitted values are round-trip exact and independent
//! of locale.

use std::fmt;
use std::str::FromStr;

use crate::cost::{CostBreakdown, TcoResult};
use crate::error::{Error, Result};
use crate::linkbudget::CoverageResult;
use crate::metrics::Metric;
use crate::mmtc::DimensionRow;
use crate::sweep::{BestConfiguration, ParamValue, SensitivityRow, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::invalid(format!("format must be csv or json, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Integer(i64),
    Number(f64),
    Flag(bool),
    Text(String),
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Integer(i) => write!(f, "{i}"),
            ReportValue::Number(x) => write!(f, "{x}"),
            ReportValue::Flag(b) => write!(f, "{b}"),
            ReportValue::Text(t) => f.write_str(t),
        }
    }
}

impl From<&ParamValue> for ReportValue {
    fn from(v: &ParamValue) -> Self {
        match v {
            ParamValue::Integer(i) => ReportValue::Integer(*i),
            ParamValue::Float(x) => ReportValue::Number(*x),
            ParamValue::Text(t) => ReportValue::Text(t.clone()),
        }
    }
}

impl From<f64> for ReportValue {
    fn from(x: f64) -> Self {
        ReportValue::Number(x)
    }
}

impl From<i64> for ReportValue {
    fn from(i: i64) -> Self {
        ReportValue::Integer(i)
    }
}

impl From<bool> for ReportValue {
    fn from(b: bool) -> Self {
        ReportValue::Flag(b)
    }
}

impl From<&str> for ReportValue {
    fn from(t: &str) -> Self {
        ReportValue::Text(t.into())
    }
}

/// One row as (column, value) pairs.
pub type ReportRow = Vec<(String, ReportValue)>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    columns: Vec<String>,
    rows: Vec<Vec<ReportValue>>,
}

impl Report {
    pub fn with_columns<S: AsRef<str>>(columns: &[S]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Build from keyed rows; every row must carry the first row's columns
    /// in the same order.
    pub fn from_rows(rows: Vec<ReportRow>) -> Result<Self> {
        let mut report = match rows.first() {
            Some(first) => Report::with_columns(&first.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>()),
            None => Report::default(),
        };
        for row in rows {
            report.push(row)?;
        }
        Ok(report)
    }

    pub fn push(&mut self, row: ReportRow) -> Result<()> {
        let keys: Vec<&str> = row.iter().map(|(k, _)| k.as_str()).collect();
        if keys != self.columns {
            return Err(Error::invalid(format!(
                "row columns [{}] differ from report columns [{}]",
                keys.join(","),
                self.columns.join(",")
            )));
        }
        if let Some((k, _)) = row
            .iter()
            .find(|(_, v)| matches!(v, ReportValue::Number(x) if !x.is_finite()))
        {
            return Err(Error::invalid(format!("column `{k}` holds a non-finite number")));
        }
        self.rows.push(row.into_iter().map(|(_, v)| v).collect());
        Ok(())
    }

    fn push_values(&mut self, values: Vec<ReportValue>) -> Result<()> {
        let row = self.columns.iter().cloned().zip(values).collect();
        self.push(row)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<ReportValue>] {
        &self.rows
    }

    pub fn get(&self, row: usize, column: &str) -> Option<&ReportValue> {
        let j = self.columns.iter().position(|c| c == column)?;
        self.rows.get(row)?.get(j)
    }

    pub fn emit(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::invalid(format!("csv encoding failed: {e}"));
        if !self.columns.is_empty() {
            w.write_record(&self.columns).map_err(io)?;
        }
        for row in &self.rows {
            w.write_record(row.iter().map(ToString::to_string)).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::invalid(format!("csv encoding failed: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::invalid(e.to_string()))
    }

    /// Array of objects, keys in column order, followed by a newline.
    pub fn to_json(&self) -> Result<String> {
        let array: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| {
                        let v = match v {
                            ReportValue::Integer(i) => serde_json::Value::from(*i),
                            ReportValue::Number(x) => serde_json::Value::from(*x),
                            ReportValue::Flag(b) => serde_json::Value::from(*b),
                            ReportValue::Text(t) => serde_json::Value::from(t.as_str()),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&array)
            .map_err(|e| Error::invalid(format!("json encoding failed: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    /// Inverse of [`Report::to_json`]. Columns come from the first object.
    pub fn parse_json(text: &str) -> Result<Self> {
        let bad = |m: String| Error::invalid(format!("report json: {m}"));
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let array = value
            .as_array()
            .ok_or_else(|| bad("top level is not an array".into()))?;
        let rows = array
            .iter()
            .map(|item| {
                let obj = item
                    .as_object()
                    .ok_or_else(|| bad("element is not an object".into()))?;
                obj.iter()
                    .map(|(k, v)| {
                        let v = match v {
                            serde_json::Value::String(s) => ReportValue::Text(s.clone()),
                            serde_json::Value::Bool(b) => ReportValue::Flag(*b),
                            serde_json::Value::Number(n) if n.is_f64() => {
                                ReportValue::Number(n.as_f64().expect("f64 number"))
                            }
                            serde_json::Value::Number(n) => ReportValue::Integer(
                                n.as_i64()
                                    .ok_or_else(|| bad(format!("`{k}` is out of integer range")))?,
                            ),
                            other => return Err(bad(format!("`{k}` holds unsupported value {other}"))),
                        };
                        Ok((k.clone(), v))
                    })
                    .collect::<Result<ReportRow>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Report::from_rows(rows)
    }
}

/// Cost items (one-off or yearly amount, and value over the horizon)
/// followed by summary rows.
pub fn tco_report(breakdown: &CostBreakdown, result: &TcoResult) -> Result<Report> {
    let mut r = Report::with_columns(&["item", "category", "amount", "horizon_value"]);
    for item in breakdown.items() {
        let horizon_value = result
            .item(&item.label)
            .ok_or_else(|| Error::invalid(format!("item `{}` missing from result", item.label)))?;
        r.push_values(vec![
            item.label.as_str().into(),
            item.category.as_str().into(),
            item.amount.value().into(),
            horizon_value.value().into(),
        ])?;
    }
    let annuity_value = result.total.value() - result.capex.value();
    let mut summary = vec![
        ("capex_total", result.capex.value(), result.capex.value()),
        ("opex_per_year_total", result.opex_per_year.value(), annuity_value),
        ("tco_total", result.total.value(), result.total.value()),
    ];
    if let Some(n) = result.normalizers {
        summary.push(("tco_per_sector", n.per_sector, n.per_sector));
        summary.push(("tco_per_km2", n.per_km2, n.per_km2));
    }
    for (label, amount, value) in summary {
        r.push_values(vec![label.into(), "summary".into(), amount.into(), value.into()])?;
    }
    Ok(r)
}

pub fn coverage_report(c: &CoverageResult) -> Result<Report> {
    let mut r = Report::with_columns(&[
        "r_km",
        "r_dl_km",
        "r_ul_km",
        "limiting_direction",
        "mapl_dl_db",
        "mapl_ul_db",
        "saturated",
    ]);
    r.push_values(vec![
        c.r_km.into(),
        c.r_dl_km.into(),
        c.r_ul_km.into(),
        c.limiting_direction.as_str().into(),
        c.mapl_dl_db.into(),
        c.mapl_ul_db.into(),
        c.saturated.into(),
    ])?;
    Ok(r)
}

pub fn mmtc_report(rows: &[DimensionRow]) -> Result<Report> {
    let mut r = Report::with_columns(&[
        "technology",
        "isd",
        "channel",
        "resource",
        "required_at_target",
        "rel15",
        "rel16",
        "delta",
    ]);
    for row in rows {
        r.push_values(vec![
            row.technology.as_str().into(),
            row.isd_label.as_str().into(),
            row.channel_label.as_str().into(),
            row.technology.resource_name().into(),
            i64::from(row.required_at_target).into(),
            i64::from(row.release.resources_rel15).into(),
            i64::from(row.release.resources_rel16).into(),
            row.release.delta.into(),
        ])?;
    }
    Ok(r)
}

/// One row per point: the swept value under the axis path, then each
/// metric. With `metadata`, the scenario hash and engine version are
/// appended to every row.
pub fn sweep_report(result: &SweepResult, metadata: bool) -> Result<Report> {
    let mut columns = vec![result.axis.to_string()];
    columns.extend(result.metrics.iter().map(|m| m.as_str().to_string()));
    if metadata {
        columns.push("scenario_hash".into());
        columns.push("engine_version".into());
    }
    let mut r = Report::with_columns(&columns);
    for p in &result.points {
        let mut values = vec![ReportValue::from(&p.value)];
        values.extend(p.outputs.iter().map(|(_, x)| ReportValue::Number(*x)));
        if metadata {
            values.push(result.metadata.scenario_hash.as_str().into());
            values.push(result.metadata.engine_version.as_str().into());
        }
        r.push_values(values)?;
    }
    Ok(r)
}

pub fn best_report(best: &BestConfiguration, objective: Metric) -> Result<Report> {
    let mut columns: Vec<String> = best.assignment.iter().map(|(p, _)| p.to_string()).collect();
    columns.push(objective.as_str().into());
    let mut r = Report::with_columns(&columns);
    let mut values: Vec<ReportValue> = best.assignment.iter().map(|(_, v)| v.into()).collect();
    values.push(best.value.into());
    r.push_values(values)?;
    Ok(r)
}

pub fn sensitivity_report(rows: &[SensitivityRow], metric: Metric) -> Result<Report> {
    let low = format!("{metric}_low");
    let base = format!("{metric}_base");
    let high = format!("{metric}_high");
    let mut r = Report::with_columns(&["path", low.as_str(), base.as_str(), high.as_str()]);
    for row in rows {
        r.push_values(vec![
            row.path.as_str().into(),
            row.low.into(),
            row.base.into(),
            row.high.into(),
        ])?;
    }
    Ok(r)
}

/// (k, total) series of a chain-length sensitivity.
pub fn series_report(axis: &str, metric: Metric, series: &[(u32, f64)]) -> Result<Report> {
    let mut r = Report::with_columns(&[axis, metric.as_str()]);
    for &(k, x) in series {
        r.push_values(vec![i64::from(k).into(), x.into()])?;
    }
    Ok(r)
}
