use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("N must be odd and at least 3 (got {n}): the 2h-stick basis and the metric positivity both require odd period")]
    BadPeriod { n: usize },

    #[error("chain has a nonzero infinitesimal part where none is allowed")]
    NonZeroInfinitesimalPart,

    #[error("chain has a nonzero h-stick part where none is allowed")]
    NonZeroStickPart,

    #[error("Poisson right-hand side has nonzero mean {mean:.3e}; the equation is only solvable on zero-mean data")]
    PoissonUnsolvable { mean: f64 },

    #[error("conjugate gradient did not reach residual {tol:.3e} within {iters} iterations (achieved {achieved:.3e})")]
    CgDiverged { tol: f64, iters: usize, achieved: f64 },

    #[error("midpoint fixed-point iteration did not converge: residual {residual:.3e} after {iters} iterations (tol {tol:.3e})")]
    MidpointDiverged { residual: f64, iters: usize, tol: f64 },

    #[error("initial condition generates the zero state; pick a different seed or mode")]
    ZeroInitialState,

    #[error("integration aborted at step {step}: {source}")]
    StepFailed { step: u64, source: Box<Error> },

    #[error("config error for key `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("unknown config key `{key}`")]
    UnknownKey { key: String },

    #[error("snapshot format error: {0}")]
    SnapshotFormat(String),

    #[error("green-set cache format error: {0}")]
    GreenCacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
