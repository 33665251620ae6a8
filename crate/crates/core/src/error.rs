use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A consecutive oriented angle fell outside [-pi/2, pi/2].
    #[error("oriented angle at index {index} lies outside [-pi/2, pi/2] (theta = {theta})")]
    DomainViolation { index: usize, theta: f64 },
    /// The scaled energy denominator vanishes at alpha = 4.
    #[error("scaled energy undefined: mu_alpha = 0 at alpha = {alpha}")]
    ScalingUndefined { alpha: f64 },
    /// alpha = 4 is the singular point of the parametrized family; the limit
    /// there depends on the approaching sequence, so evaluation is refused.
    #[error("alpha = {alpha} is at or beyond the singular point alpha = 4")]
    SingularPoint { alpha: f64 },
    #[error("cost guard: brute force over {grid_points}^{n} configurations refused")]
    CostGuard { n: usize, grid_points: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
