use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Variants split into two families: input problems (parse, schema,
/// invariant, version, unknown path or metric) and evaluation problems
/// raised while a valid scenario is being computed. The CLI maps the first
/// family to exit code 2 and the second to exit code 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("duplicate cost item label `{0}`")]
    DuplicateLabel(String),

    #[error("capacity {capacity_mbps} Mbps exceeds the largest microwave tier ({max_mbps} Mbps)")]
    CapacityUnserviceable { capacity_mbps: f64, max_mbps: f64 },

    #[error("distance {distance_km} km is outside the model validity range ({bound})")]
    OutOfRange { distance_km: f64, bound: String },

    #[error("target {target_mbps} Mbps exceeds the achievable {limit_mbps} Mbps at the efficiency cap")]
    TargetUnachievable { target_mbps: f64, limit_mbps: f64 },

    #[error(
        "path loss budget {mapl_db:.3} dB is below the loss at the minimum distance \
         {d_min_km} km ({min_loss_db:.3} dB)"
    )]
    RadiusBelowMinimum {
        mapl_db: f64,
        d_min_km: f64,
        min_loss_db: f64,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("invariant violated at `{path}`: {predicate}")]
    Invariant { path: String, predicate: String },

    #[error("unsupported format_version `{found}` (supported: {supported})")]
    UnsupportedVersion { found: String, supported: String },

    #[error("parameter path `{path}` {reason}")]
    PathResolution { path: String, reason: String },

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("metric `{metric}` is not defined for use case {use_case}")]
    MetricUnavailable { metric: String, use_case: String },

    #[error("grid has {points} points, above the cap of {cap}")]
    GridTooLarge { points: u128, cap: usize },

    #[error("no grid point satisfies the constraint {0}")]
    NoFeasiblePoint(String),

    #[error("evaluation failed at {path} = {value}: {source}")]
    PointFailed {
        path: String,
        value: String,
        #[source]
        source: Box<Error>,
    },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for problems with the input document or command arguments, as
    /// opposed to failures while evaluating a well-formed scenario.
    pub fn is_input_error(&self) -> bool {
        if let Error::PointFailed { source, .. } = self {
            return source.is_input_error();
        }
        matches!(
            self,
            Error::Parse { .. }
                | Error::Schema { .. }
                | Error::Invariant { .. }
                | Error::UnsupportedVersion { .. }
                | Error::PathResolution { .. }
                | Error::UnknownMetric(_)
                | Error::MetricUnavailable { .. }
                | Error::Io { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// A failed type invariant, located by a dotted path relative to the value
/// that was validated. Callers nest it under their own field names with
/// [`Violation::within`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub predicate: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, predicate: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            predicate: predicate.into(),
        }
    }

    pub fn within(mut self, prefix: &str) -> Self {
        if prefix.is_empty() {
            return self;
        }
        self.path = if self.path.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix}.{}", self.path)
        };
        self
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invariant {
            path: v.path,
            predicate: v.predicate,
        }
    }
}

pub(crate) fn ensure(cond: bool, path: &str, predicate: &str) -> Result<(), Violation> {
    if cond {
        Ok(())
    } else {
        Err(Violation::new(path, predicate))
    }
}
