use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("data error: {0}")]
    Data(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

/// Qubit-count ceilings for matrix realization.
///
/// Overridable through `NOCLID_DENSE_CAP` and `NOCLID_SPARSE_CAP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub dense_qubits: usize,
    pub sparse_qubits: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            dense_qubits: 12,
            sparse_qubits: 16,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_env_usize("NOCLID_DENSE_CAP") {
            caps.dense_qubits = v;
        }
        if let Some(v) = read_env_usize("NOCLID_SPARSE_CAP") {
            caps.sparse_qubits = v;
        }
        caps
    }

    pub fn check_dense(&self, n: usize) -> Result<()> {
        if n > self.dense_qubits {
            return Err(Error::Resource(format!(
                "dense realization of {n} qubits exceeds cap of {}",
                self.dense_qubits
            )));
        }
        Ok(())
    }

    pub fn check_sparse(&self, n: usize) -> Result<()> {
        if n > self.sparse_qubits {
            return Err(Error::Resource(format!(
                "sparse realization of {n} qubits exceeds cap of {}",
                self.sparse_qubits
            )));
        }
        Ok(())
    }
}

fn read_env_usize(key: &str) -> Option<usize> {
    std::env::var(key).ok().and_then(|v| v.trim().parse().ok())
}
