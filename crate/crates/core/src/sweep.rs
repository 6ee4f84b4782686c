//! Parameter sweeps, one-at-a-time sensitivity and exhaustive grid search.
//!
//! Every operation works on the serialized tree of a scenario: a point is
//! built by overwriting one scalar in a copy of the tree and re-loading it
//! through the strict schema, so each evaluated point is itself a valid
//! scenario. The base document is never modified.
//!
//! Paths are dotted keys resolved first inside the use-case table and then
//! from the document root (`drones_per_link` and `uc9.drones_per_link` name
//! the same field; `horizon_years` is found at the root). Numeric segments
//! index arrays.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::metrics::{evaluate, Metric};
use crate::scenario::ScenarioDocument;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_GRID_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPath(String);

impl ParamPath {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn segments(&self) -> impl Iterator<Item = &str> {
        self.0.split('.')
    }
}

impl FromStr for ParamPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.split('.').any(str::is_empty) {
            return Err(Error::PathResolution {
                path: s.into(),
                reason: "is not a dotted key path".into(),
            });
        }
        Ok(ParamPath(s.into()))
    }
}

impl fmt::Display for ParamPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A value to assign to a scenario field.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Integer(i64),
    Float(f64),
    Text(String),
}

impl ParamValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ParamValue::Integer(i) => Some(*i as f64),
            ParamValue::Float(f) => Some(*f),
            ParamValue::Text(_) => None,
        }
    }

    /// Numbers before text; numbers by value, text lexicographically.
    pub fn cmp_ascending(&self, other: &Self) -> Ordering {
        match (self.as_f64(), other.as_f64()) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => match (self, other) {
                (ParamValue::Text(a), ParamValue::Text(b)) => a.cmp(b),
                _ => Ordering::Equal,
            },
        }
    }

    /// Convert for assignment over `current`, refusing type changes.
    fn to_toml(&self, path: &ParamPath, current: &toml::Value) -> Result<toml::Value> {
        use toml::Value as V;
        let mismatch = |expected: &str| Error::Schema {
            path: path.to_string(),
            message: format!("expected {expected}, got `{self}`"),
        };
        Ok(match (current, self) {
            (V::Integer(_), ParamValue::Integer(i)) => V::Integer(*i),
            (V::Integer(_), _) => return Err(mismatch("an integer")),
            (V::Float(_), ParamValue::Integer(i)) => V::Float(*i as f64),
            (V::Float(_), ParamValue::Float(f)) => V::Float(*f),
            (V::Float(_), _) => return Err(mismatch("a number")),
            (V::String(_), v) => V::String(v.to_string()),
            (V::Boolean(_), ParamValue::Text(t)) if t == "true" || t == "false" => {
                V::Boolean(t == "true")
            }
            (V::Boolean(_), _) => return Err(mismatch("a boolean")),
            (V::Datetime(_), _) => return Err(mismatch("a datetime")),
            (V::Array(_) | V::Table(_), _) => {
                return Err(Error::PathResolution {
                    path: path.to_string(),
                    reason: "names a table or array, not a scalar field".into(),
                })
            }
        })
    }
}

impl FromStr for ParamValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty parameter value"));
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(ParamValue::Integer(i));
        }
        match s.parse::<f64>() {
            Ok(f) if f.is_finite() => Ok(ParamValue::Float(f)),
            Ok(_) => Err(Error::invalid(format!("non-finite parameter value `{s}`"))),
            Err(_) => Ok(ParamValue::Text(s.into())),
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Integer(i) => write!(f, "{i}"),
            ParamValue::Float(x) => write!(f, "{x}"),
            ParamValue::Text(t) => f.write_str(t),
        }
    }
}

/// Parse a comma-separated value list.
pub fn parse_values(s: &str) -> Result<Vec<ParamValue>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

/// Serialized tree of a base scenario plus resolved field locations.
struct Tree {
    root: toml::Value,
    body_key: &'static str,
}

impl Tree {
    fn new(doc: &ScenarioDocument) -> Result<Self> {
        Ok(Tree {
            root: doc.to_value()?,
            body_key: doc.use_case().as_str(),
        })
    }

    /// Absolute key segments of the unique field `path` names.
    fn resolve(&self, path: &ParamPath) -> Result<Vec<String>> {
        let relative: Vec<String> = path.segments().map(String::from).collect();
        let mut in_body = vec![self.body_key.to_string()];
        in_body.extend(relative.iter().cloned());
        let found: Vec<Vec<String>> = [in_body, relative]
            .into_iter()
            .filter(|segs| lookup(&self.root, segs).is_some())
            .collect();
        match found.len() {
            1 => Ok(found.into_iter().next().expect("one match")),
            0 => Err(Error::PathResolution {
                path: path.to_string(),
                reason: "does not resolve to a scenario field".into(),
            }),
            _ => Err(Error::PathResolution {
                path: path.to_string(),
                reason: "is ambiguous between the use-case table and the document root".into(),
            }),
        }
    }

    fn current(&self, segs: &[String]) -> &toml::Value {
        lookup(&self.root, segs).expect("resolved path")
    }

    fn build(&self, assignments: &[(&[String], &toml::Value)]) -> Result<ScenarioDocument> {
        let mut root = self.root.clone();
        for (segs, value) in assignments {
            *lookup_mut(&mut root, segs).expect("resolved path") = (*value).clone();
        }
        ScenarioDocument::from_value(root)
    }
}

fn lookup<'a>(mut v: &'a toml::Value, segs: &[String]) -> Option<&'a toml::Value> {
    for seg in segs {
        v = match v {
            toml::Value::Table(t) => t.get(seg)?,
            toml::Value::Array(a) => a.get(seg.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(v)
}

fn lookup_mut<'a>(mut v: &'a mut toml::Value, segs: &[String]) -> Option<&'a mut toml::Value> {
    for seg in segs {
        v = match v {
            toml::Value::Table(t) => t.get_mut(seg)?,
            toml::Value::Array(a) => a.get_mut(seg.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(v)
}

/// Resolve `path` to a scalar and convert every value for it up front.
fn prepare(tree: &Tree, path: &ParamPath, values: &[ParamValue]) -> Result<(Vec<String>, Vec<toml::Value>)> {
    let segs = tree.resolve(path)?;
    let current = tree.current(&segs);
    if matches!(current, toml::Value::Table(_) | toml::Value::Array(_)) {
        return Err(Error::PathResolution {
            path: path.to_string(),
            reason: "names a table or array, not a scalar field".into(),
        });
    }
    let converted = values
        .iter()
        .map(|v| v.to_toml(path, current))
        .collect::<Result<_>>()?;
    Ok((segs, converted))
}

/// Copy of `doc` with the field at `path` set to `value`, fully validated.
pub fn assign(doc: &ScenarioDocument, path: &ParamPath, value: &ParamValue) -> Result<ScenarioDocument> {
    let tree = Tree::new(doc)?;
    let (segs, converted) = prepare(&tree, path, std::slice::from_ref(value))?;
    tree.build(&[(&segs, &converted[0])])
}

fn check_metrics(doc: &ScenarioDocument, metrics: &[Metric]) -> Result<()> {
    metrics
        .iter()
        .try_for_each(|m| m.check_available(doc.use_case()))
}

fn metric_values(doc: &ScenarioDocument, metrics: &[Metric]) -> Result<Vec<(Metric, f64)>> {
    let eval = evaluate(doc)?;
    metrics.iter().map(|&m| Ok((m, eval.get(m)?))).collect()
}

/// Hex SHA-256 of the canonical serialization of a scenario.
pub fn scenario_hash(doc: &ScenarioDocument) -> Result<String> {
    let digest = Sha256::digest(doc.to_toml_string()?.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepMetadata {
    pub scenario_hash: String,
    pub engine_version: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: ParamValue,
    /// One entry per requested metric, in request order.
    pub outputs: Vec<(Metric, f64)>,
}

impl SweepPoint {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        self.outputs
            .iter()
            .find(|(m, _)| *m == metric)
            .map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: ParamPath,
    pub metrics: Vec<Metric>,
    /// In input value order.
    pub points: Vec<SweepPoint>,
    pub metadata: SweepMetadata,
}

/// Evaluate `metrics` with `path` set to each of `values` in turn.
pub fn sweep(
    doc: &ScenarioDocument,
    path: &ParamPath,
    values: &[ParamValue],
    metrics: &[Metric],
) -> Result<SweepResult> {
    if metrics.is_empty() {
        return Err(Error::invalid("at least one metric is required"));
    }
    check_metrics(doc, metrics)?;
    let tree = Tree::new(doc)?;
    let (segs, converted) = prepare(&tree, path, values)?;

    let outcomes: Vec<Result<SweepPoint>> = values
        .par_iter()
        .zip(converted.par_iter())
        .map(|(value, tv)| {
            tree.build(&[(&segs, tv)])
                .and_then(|point| metric_values(&point, metrics))
                .map(|outputs| SweepPoint {
                    value: value.clone(),
                    outputs,
                })
                .map_err(|e| Error::PointFailed {
                    path: path.to_string(),
                    value: value.to_string(),
                    source: Box::new(e),
                })
        })
        .collect();

    Ok(SweepResult {
        axis: path.clone(),
        metrics: metrics.to_vec(),
        points: outcomes.into_iter().collect::<Result<_>>()?,
        metadata: SweepMetadata {
            scenario_hash: scenario_hash(doc)?,
            engine_version: ENGINE_VERSION.into(),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityRow {
    pub path: ParamPath,
    pub low: f64,
    pub base: f64,
    pub high: f64,
}

/// Metric at value × (1 − p), value and value × (1 + p) for each path,
/// varying one path at a time. Integer fields are rounded to the nearest
/// integer after scaling.
pub fn one_at_a_time(
    doc: &ScenarioDocument,
    paths: &[ParamPath],
    perturbation: f64,
    metric: Metric,
) -> Result<Vec<SensitivityRow>> {
    if !(perturbation > 0.0 && perturbation < 1.0) {
        return Err(Error::invalid(format!(
            "perturbation must lie in (0, 1), got {perturbation}"
        )));
    }
    metric.check_available(doc.use_case())?;
    let base = evaluate(doc)?.get(metric)?;
    let tree = Tree::new(doc)?;

    paths
        .iter()
        .map(|path| {
            let segs = tree.resolve(path)?;
            let scaled = |factor: f64| -> Result<ParamValue> {
                match tree.current(&segs) {
                    toml::Value::Integer(i) => Ok(ParamValue::Integer((*i as f64 * factor).round() as i64)),
                    toml::Value::Float(x) => Ok(ParamValue::Float(x * factor)),
                    _ => Err(Error::Schema {
                        path: path.to_string(),
                        message: "sensitivity requires a numeric field".into(),
                    }),
                }
            };
            let at = |factor: f64| -> Result<f64> {
                let value = scaled(factor)?;
                let tv = value.to_toml(path, tree.current(&segs))?;
                tree.build(&[(&segs, &tv)])
                    .and_then(|point| evaluate(&point)?.get(metric))
                    .map_err(|e| Error::PointFailed {
                        path: path.to_string(),
                        value: value.to_string(),
                        source: Box::new(e),
                    })
            };
            Ok(SensitivityRow {
                path: path.clone(),
                low: at(1.0 - perturbation)?,
                base,
                high: at(1.0 + perturbation)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Min,
    Max,
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Goal::Min),
            "max" => Ok(Goal::Max),
            _ => Err(Error::invalid(format!("direction must be min or max, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub metric: Metric,
    pub bound: Bound,
    pub value: f64,
}

impl Constraint {
    pub fn holds(&self, x: f64) -> bool {
        match self.bound {
            Bound::AtLeast => x >= self.value,
            Bound::AtMost => x <= self.value,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtLeast => ">=",
            Bound::AtMost => "<=",
        };
        write!(f, "{}{op}{}", self.metric, self.value)
    }
}

impl FromStr for Constraint {
    type Err = Error;

    /// `metric>=bound` or `metric<=bound`.
    fn from_str(s: &str) -> Result<Self> {
        let (metric, bound, value) = if let Some((m, v)) = s.split_once(">=") {
            (m, Bound::AtLeast, v)
        } else if let Some((m, v)) = s.split_once("<=") {
            (m, Bound::AtMost, v)
        } else {
            return Err(Error::invalid(format!(
                "constraint `{s}` must look like metric>=value or metric<=value"
            )));
        };
        let value: f64 = value
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::invalid(format!("constraint bound `{value}` is not a number")))?;
        Ok(Constraint {
            metric: metric.trim().parse()?,
            bound,
            value,
        })
    }
}

pub type Grid = BTreeMap<ParamPath, Vec<ParamValue>>;

/// Parse `path=v1,v2;path2=v3,...`.
pub fn parse_grid(s: &str) -> Result<Grid> {
    let mut grid = Grid::new();
    for axis in s.split(';').map(str::trim).filter(|a| !a.is_empty()) {
        let (path, values) = axis
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("grid axis `{axis}` must look like path=v1,v2")))?;
        let path: ParamPath = path.parse()?;
        let values = parse_values(values)?;
        if grid.insert(path.clone(), values).is_some() {
            return Err(Error::invalid(format!("grid axis `{path}` given twice")));
        }
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestQuery {
    pub grid: Grid,
    pub objective: Metric,
    pub goal: Goal,
    pub constraint: Option<Constraint>,
    pub cap: usize,
}

impl BestQuery {
    pub fn new(grid: Grid, objective: Metric, goal: Goal) -> Self {
        Self {
            grid,
            objective,
            goal,
            constraint: None,
            cap: DEFAULT_GRID_CAP,
        }
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = Some(constraint);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestConfiguration {
    /// One entry per grid path, in path order.
    pub assignment: Vec<(ParamPath, ParamValue)>,
    pub value: f64,
    pub evaluated: usize,
}

/// Exhaustive search over the product of the grid axes.
///
/// Paths are visited in lexicographic order and each axis in ascending
/// value order, the last path varying fastest. On equal objective values
/// the earliest point in that order wins.
pub fn best_configuration(doc: &ScenarioDocument, query: &BestQuery) -> Result<BestConfiguration> {
    if query.grid.is_empty() {
        return Err(Error::invalid("grid must have at least one axis"));
    }
    let points: u128 = query
        .grid
        .values()
        .map(|v| v.len() as u128)
        .try_fold(1u128, u128::checked_mul)
        .unwrap_or(u128::MAX);
    if points > query.cap as u128 {
        return Err(Error::GridTooLarge {
            points,
            cap: query.cap,
        });
    }
    if let Some((path, _)) = query.grid.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::invalid(format!("grid axis `{path}` has no values")));
    }
    query.objective.check_available(doc.use_case())?;
    if let Some(c) = &query.constraint {
        c.metric.check_available(doc.use_case())?;
    }

    let tree = Tree::new(doc)?;
    let mut axes = Vec::with_capacity(query.grid.len());
    for (path, values) in &query.grid {
        let mut values = values.clone();
        values.sort_by(ParamValue::cmp_ascending);
        values.dedup_by(|a, b| a.cmp_ascending(b) == Ordering::Equal);
        let (segs, converted) = prepare(&tree, path, &values)?;
        axes.push((path, segs, values, converted));
    }
    let total: usize = axes.iter().map(|a| a.2.len()).product();

    let indices_of = |mut i: usize| -> Vec<usize> {
        let mut idx = vec![0; axes.len()];
        for (slot, axis) in idx.iter_mut().zip(&axes).rev() {
            *slot = i % axis.2.len();
            i /= axis.2.len();
        }
        idx
    };
    let describe = |idx: &[usize]| -> String {
        axes.iter()
            .zip(idx)
            .map(|(a, &j)| format!("{}={}", a.0, a.2[j]))
            .collect::<Vec<_>>()
            .join(",")
    };

    let outcomes: Vec<Result<(f64, bool)>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let idx = indices_of(i);
            let assignments: Vec<(&[String], &toml::Value)> = axes
                .iter()
                .zip(&idx)
                .map(|(a, &j)| (a.1.as_slice(), &a.3[j]))
                .collect();
            tree.build(&assignments)
                .and_then(|point| {
                    let eval = evaluate(&point)?;
                    let feasible = match &query.constraint {
                        Some(c) => c.holds(eval.get(c.metric)?),
                        None => true,
                    };
                    Ok((eval.get(query.objective)?, feasible))
                })
                .map_err(|e| Error::PointFailed {
                    path: "grid point".into(),
                    value: describe(&idx),
                    source: Box::new(e),
                })
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (x, feasible) = outcome?;
        if !feasible || x.is_nan() {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, b)) => match query.goal {
                Goal::Min => x < b,
                Goal::Max => x > b,
            },
        };
        if better {
            best = Some((i, x));
        }
    }
    let (i, value) = best.ok_or_else(|| {
        Error::NoFeasiblePoint(
            query
                .constraint
                .map_or_else(|| "(none)".to_string(), |c| c.to_string()),
        )
    })?;
    let assignment = axes
        .iter()
        .zip(indices_of(i))
        .map(|(a, j)| (a.0.clone(), a.2[j].clone()))
        .collect();
    Ok(BestConfiguration {
        assignment,
        value,
        evaluated: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{golden, ScenarioBody};

    fn uc9() -> ScenarioDocument {
        golden::load("uc9_emergency").unwrap()
    }

    fn path(s: &str) -> ParamPath {
        s.parse().unwrap()
    }

    #[test]
    fn values_parse_by_shape() {
        assert_eq!("6".parse::<ParamValue>().unwrap(), ParamValue::Integer(6));
        assert_eq!("2.5".parse::<ParamValue>().unwrap(), ParamValue::Float(2.5));
        assert_eq!(
            "split2".parse::<ParamValue>().unwrap(),
            ParamValue::Text("split2".into())
        );
        assert!(parse_values("").unwrap().is_empty());
    }

    #[test]
    fn empty_sweep_is_empty() {
        let r = sweep(&uc9(), &path("drones_per_link"), &[], &[Metric::TcoTotal]).unwrap();
        assert!(r.points.is_empty());
    }

    #[test]
    fn identity_point_matches_direct_evaluation() {
        let doc = uc9();
        let direct = evaluate(&doc).unwrap().get(Metric::TcoTotal).unwrap();
        let r = sweep(
            &doc,
            &path("uc9.drones_per_link"),
            &[ParamValue::Integer(6)],
            &[Metric::TcoTotal],
        )
        .unwrap();
        assert_eq!(r.points[0].get(Metric::TcoTotal), Some(direct));
    }

    #[test]
    fn unresolvable_and_mistyped_paths() {
        let doc = uc9();
        let err = sweep(&doc, &path("dronez"), &[ParamValue::Integer(1)], &[Metric::TcoTotal]);
        assert!(matches!(err, Err(Error::PathResolution { .. })));
        let err = sweep(
            &doc,
            &path("drones_per_link"),
            &[ParamValue::Float(2.5)],
            &[Metric::TcoTotal],
        );
        assert!(matches!(err, Err(Error::Schema { .. })));
        let err = sweep(&doc, &path("tariff"), &[ParamValue::Integer(1)], &[Metric::TcoTotal]);
        assert!(matches!(err, Err(Error::PathResolution { .. })));
    }

    #[test]
    fn failing_point_names_value() {
        let err = sweep(
            &uc9(),
            &path("drones_per_link"),
            &[ParamValue::Integer(3), ParamValue::Integer(0)],
            &[Metric::TcoTotal],
        )
        .unwrap_err();
        match err {
            Error::PointFailed { value, source, .. } => {
                assert_eq!(value, "0");
                assert!(matches!(*source, Error::Invariant { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn root_fields_are_reachable() {
        let r = sweep(
            &uc9(),
            &path("horizon_years"),
            &[ParamValue::Integer(1), ParamValue::Integer(5)],
            &[Metric::TcoTotal],
        )
        .unwrap();
        assert!(r.points[1].outputs[0].1 > r.points[0].outputs[0].1);
    }

    #[test]
    fn assign_sets_one_field() {
        let doc = uc9();
        let k3 = assign(&doc, &path("drones_per_link"), &ParamValue::Integer(3)).unwrap();
        match (&doc.body, &k3.body) {
            (ScenarioBody::Uc9(a), ScenarioBody::Uc9(b)) => {
                assert_eq!(b.drones_per_link, 3);
                assert_eq!(a.with_drones_per_link(3), *b);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn perturbation_bounds() {
        for p in [0.0, 1.0, -0.1] {
            assert!(one_at_a_time(&uc9(), &[path("drone_capex")], p, Metric::TcoTotal).is_err());
        }
        let rows = one_at_a_time(&uc9(), &[path("drone_capex")], 0.1, Metric::TcoTotal).unwrap();
        assert!(rows[0].low < rows[0].base && rows[0].base < rows[0].high);
    }

    #[test]
    fn grid_cap_and_ties() {
        let doc = uc9();
        let mut q = BestQuery::new(
            parse_grid("drones_per_link=1,2,3;concurrent_events=1,2").unwrap(),
            Metric::TcoTotal,
            Goal::Min,
        );
        q.cap = 5;
        assert!(matches!(
            best_configuration(&doc, &q),
            Err(Error::GridTooLarge { points: 6, cap: 5 })
        ));

        // horizon_years does not change anchors_upgraded, so every value ties
        let q = BestQuery::new(
            parse_grid("horizon_years=3,1,2").unwrap(),
            Metric::AnchorsUpgraded,
            Goal::Max,
        );
        let best = best_configuration(&doc, &q).unwrap();
        assert_eq!(best.assignment[0].1, ParamValue::Integer(1));
    }

    #[test]
    fn constraint_parse_and_infeasible() {
        let c: Constraint = "tco_total<=0".parse().unwrap();
        assert_eq!(c.bound, Bound::AtMost);
        let q = BestQuery::new(
            parse_grid("drones_per_link=1,2").unwrap(),
            Metric::TcoTotal,
            Goal::Min,
        )
        .with_constraint(c);
        assert!(matches!(
            best_configuration(&uc9(), &q),
            Err(Error::NoFeasiblePoint(_))
        ));
    }
}
