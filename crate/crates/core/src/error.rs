use thiserror::Error;

/// Errors surfaced by the toolkit. Every cap violation and certification
/// failure is a first-class error; nothing is silently truncated.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("field context mismatch: {0} vs {1}")]
    CtxMismatch(String, String),
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    #[error("no root of unity of order {order} in field of size {q} (order must divide q-1); enlarge the extension degree")]
    NoSuchRoot { order: u64, q: u64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("representations live over different groups")]
    GroupMismatch,
    #[error("inventory is not certified absolutely irreducible")]
    UncertifiedInventory,
    #[error("meataxe random budget exhausted after {attempts} attempts (dim {dim}); result inconclusive")]
    RandomBudgetExhausted { attempts: usize, dim: usize },
    #[error("field of size {q} is not a splitting field: a composition factor of dim {factor_dim} has endomorphism ring of dim {end_dim}; enlarge k to {suggested_k}")]
    SplittingFieldInsufficient {
        q: u64,
        factor_dim: usize,
        end_dim: usize,
        suggested_k: u32,
    },
    #[error("cap exceeded while enumerating submodule lattice: {0}")]
    CapExceeded(String),
    #[error("submodule lattice is incomplete: {0}")]
    IncompleteLattice(String),
    #[error("precondition not established: {0}")]
    PreconditionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
