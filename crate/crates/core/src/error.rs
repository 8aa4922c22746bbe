use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cannot seed {requested} first sharers on a graph of {nodes} nodes")]
    Seeding { requested: usize, nodes: usize },

    #[error("user polarization undefined: no likes recorded")]
    UndefinedPolarization,

    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("degenerate variance: the first fit has zero estimator variance")]
    DegenerateVariance,

    #[error("density does not integrate to one over [0, 1] (integral = {0})")]
    Density(f64),

    #[error("branching ratio {0} >= 1: expected cascade size diverges")]
    Supercritical(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Tree(#[from] crate::metrics::TreeError),

    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
