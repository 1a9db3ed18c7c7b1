use crate::specfun::SpecFnError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported grid: {0}")]
    UnsupportedGrid(String),
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error("interval {interval}: {source}")]
    Interval {
        interval: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("Green's function E = {energy} a.u., {label}: {source}")]
    Request {
        energy: f64,
        label: String,
        #[source]
        source: Box<Error>,
    },
    #[error("supercritical charge in interval {interval}: alpha*|Z0| = {alpha_z0} >= |kappa| = {kappa_abs}")]
    Supercritical {
        interval: usize,
        alpha_z0: f64,
        kappa_abs: i32,
    },
    #[error("energy out of range in interval {interval}: E + Z1 = {shifted} must lie in (-2c^2, 0)")]
    EnergyRange { interval: usize, shifted: f64 },
    #[error("singular matching system at node {node}")]
    Matching { node: usize },
    #[error("energy {energy} is within numerical reach of a bound eigenvalue (relative Wronskian {rel_wronskian:e})")]
    NearPole { energy: f64, rel_wronskian: f64 },
    #[error("accuracy check failed: {0}")]
    Accuracy(String),
    #[error("bound state not found: {0}")]
    StateNotFound(String),
    #[error("{path}:{line}: {msg}")]
    Format {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("invalid potential: {0}")]
    Potential(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn in_interval(self, interval: usize) -> Error {
        match self {
            e @ (Error::Interval { .. }
            | Error::Supercritical { .. }
            | Error::EnergyRange { .. }) => e,
            e => Error::Interval {
                interval,
                source: Box::new(e),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
