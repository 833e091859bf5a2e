use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: |M[{row}][{col}] - conj(M[{col}][{row}])| = {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("{name} = {value} is outside the supported range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("state is not a density matrix: eigenvalue {eigenvalue:e} is negative")]
    Unphysical { eigenvalue: f64 },

    #[error("eigensolver failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error(
        "{measure} consistency failure at alpha = {alpha}, m = {m}: closed form {closed}, numeric {numeric}"
    )]
    Consistency {
        measure: &'static str,
        alpha: f64,
        m: u32,
        closed: f64,
        numeric: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
