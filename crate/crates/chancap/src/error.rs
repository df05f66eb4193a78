use thiserror::Error;

/// Errors for operator validation, channel algebra and the optimization layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (max |A - A*| entry = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },

    #[error("trace {trace} outside the admissible range [0, 1]")]
    TraceOutOfRange { trace: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("argument {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("not a projector (||P^2 - P||_1 = {defect:e})")]
    NotProjector { defect: f64 },

    #[error("Kraus sum bound violated (max eigenvalue of sum V*V = {max_eig})")]
    KrausBound { max_eig: f64 },

    #[error("reference state is not full rank (min eigenvalue {min_eig:e} below floor {floor:e})")]
    NotFullRank { min_eig: f64, floor: f64 },

    #[error("operator is not a member of the dual set (witness eigenvalue {witness})")]
    NotMember { witness: f64 },

    #[error("invalid ensemble: {reason}")]
    InvalidEnsemble { reason: String },

    #[error("infeasible constraint: {reason}")]
    InfeasibleConstraint { reason: String },

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },

    #[error("internal consistency check failed: {what}")]
    PropertyViolation { what: String },

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
