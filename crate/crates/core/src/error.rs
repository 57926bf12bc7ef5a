use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the numerical core.
///
/// Every variant is a violated precondition of some operation; none of them
/// is recoverable by retrying with the same inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid internal space: {0}")]
    InvalidInternal(String),

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error(
        "packet centred at {x0} with width {sigma} is closer than 4 sigma to the grid boundary"
    )]
    PacketTooCloseToBoundary { x0: f64, sigma: f64 },

    #[error(
        "packet width {sigma} is not resolvable on a grid with spacing {dx} (need sigma >= 4 dx)"
    )]
    Unresolvable { sigma: f64, dx: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("superposition weights are all zero")]
    ZeroWeights,

    #[error("states live on incompatible grids or internal spaces")]
    IncompatibleSpaces,

    #[error(
        "branch {level} is deformed (fidelity {fidelity}): states differ by more than a phase"
    )]
    BranchDeformed { level: usize, fidelity: f64 },

    #[error("branch {level} has negligible norm {norm}")]
    EmptyBranch { level: usize, norm: f64 },

    #[error("boundary violation on branch {level}: support [{lo}, {hi}] leaves the grid [{x_min}, {x_max}]")]
    BoundaryViolation {
        level: usize,
        lo: f64,
        hi: f64,
        x_min: f64,
        x_max: f64,
    },

    #[error(
        "kinetic phase aliasing on branch {level}: weight {weight:e} sits where dt*T/hbar >= pi"
    )]
    Aliasing { level: usize, weight: f64 },

    #[error("superluminal speed {speed} (c = {c})")]
    Superluminal { speed: f64, c: f64 },

    #[error("trajectory is not closed: xi(0) = {start}, xi(T) = {end}")]
    OpenTrajectory { start: f64, end: f64 },

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("time {t} lies outside the trajectory support [0, {t_end}]")]
    OutsideTrajectory { t: f64, t_end: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("paths do not share endpoints: {0}")]
    MismatchedEndpoints(String),

    #[error("spread-dominated configuration: momentum-spread correction {correction:e} exceeds 10% of the shift {shift:e}")]
    SpreadDominated { correction: f64, shift: f64 },

    #[error("invalid experiment parameter: {0}")]
    InvalidExperiment(String),
}

impl Error {
    /// True when the error reflects bad input rather than a numerical
    /// precondition met during a run.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidGrid(_)
                | Error::InvalidInternal(_)
                | Error::InvalidParams(_)
                | Error::InvalidExperiment(_)
                | Error::InvalidTrajectory(_)
                | Error::MismatchedEndpoints(_)
        )
    }
}
