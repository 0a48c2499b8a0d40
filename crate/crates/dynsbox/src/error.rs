use thiserror::Error;

/// Errors produced by parameter validation, parsing, and file handling.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric or structural parameter is outside its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Key material (key file or hex key) failed to parse or validate.
    #[error("invalid key: {0}")]
    InvalidKey(String),

    /// Stream does not start with the P5 magic.
    #[error("pgm: bad magic, expected \"P5\"")]
    PgmBadMagic,

    /// Header tokens are missing or malformed.
    #[error("pgm: malformed header: {0}")]
    PgmHeader(String),

    /// Only 8-bit images (maxval 255) are supported.
    #[error("pgm: unsupported maxval {0}, only 255 is supported")]
    PgmUnsupportedMaxval(u32),

    /// Pixel payload is shorter than width * height.
    #[error("pgm: truncated payload: expected {expected} bytes, found {found}")]
    PgmTruncated { expected: usize, found: usize },

    /// Image construction or dimension constraint violated.
    #[error("image: {0}")]
    Image(String),

    /// S-box bank file is malformed or fails validation.
    #[error("s-box bank: {0}")]
    Bank(String),

    /// A 1-based table index is outside its range.
    #[error("index out of range: {0}")]
    Index(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
