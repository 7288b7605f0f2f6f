use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("singular basis: {0}")]
    SingularBasis(String),
    #[error("bracket error: {0}")]
    Bracket(String),
    #[error("fit failure (best chi2 = {best_chi2:.3e}): {message}")]
    FitFailure { best_chi2: f64, message: String },
    #[error("pole in rational approximant near R = {0}")]
    Pole(f64),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Parse(String),
}
