use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability component {index} is negative ({value})")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("non-finite component in input")]
    NonFinite,

    #[error("t-vector violates tetrahedron inequality {index} by {violation}")]
    OutsideTetrahedron { index: usize, violation: f64 },

    #[error("matrix is not Hermitian (defect {defect})")]
    NotHermitian { defect: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not entangled")]
    NotEntangled,

    #[error("candidate state is not separable")]
    NotSeparable,

    #[error("problem is infeasible")]
    Infeasible,

    #[error("problem is unbounded")]
    Unbounded,

    #[error("iteration limit reached after {iterations} Newton steps")]
    MaxIterations { iterations: usize },

    #[error("point is not feasible: {0}")]
    NotFeasible(String),

    #[error("decomposition does not reproduce the state (max deviation {deviation})")]
    Mismatch { deviation: f64 },

    #[error("input is not a probability distribution: {0}")]
    NotDistribution(String),

    #[error("no strictly feasible (Slater) point exists")]
    NoSlaterPoint,

    #[error("Newton iteration did not converge (residual {residual})")]
    NewtonDivergence { residual: f64 },

    #[error("value {value} outside the admissible range {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("lattice step {0} outside [1e-4, 1e-1]")]
    StepOutOfRange(f64),

    #[error("malformed input: {0}")]
    Parse(String),
}
