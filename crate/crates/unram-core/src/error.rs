use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group `{0}`")]
    UnsupportedType(String),
    #[error("malformed root datum: {0}")]
    MalformedDatum(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("expected a vector of length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("operation requires {0}")]
    WrongGroup(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no minuscule/quasi-minuscule decomposition found for {0}")]
    NoDecomposition(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(v: &[impl Sized], n: usize) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::Dimension { expected: n, got: v.len() })
    }
}

/// Orbit cap: `KOTTWITZ_CAP` if set and parseable, else one million.
pub fn default_cap() -> usize {
    std::env::var("KOTTWITZ_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(1_000_000)
}
