use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration: deformation parameter, normalization, tolerance.
    #[error("configuration error: {0}")]
    Config(String),
    /// Input outside the domain of an operation (non-dominant weight, typical
    /// module handed to a factor construction, unknown generator label).
    #[error("domain error: {0}")]
    Domain(String),
    /// Two independent computations disagree structurally.
    #[error("consistency error: {0}")]
    Consistency(String),
    /// A NaN or infinity appeared in a constructed matrix.
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
