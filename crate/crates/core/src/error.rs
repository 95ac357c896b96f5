use thiserror::Error;

/// Errors raised by the numerical kernels, the cipher and the analysis battery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument {value} outside domain {domain}")]
    Domain {
        op: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("image has {pixels} pixels, more than the 2^31 a keystream modulus can address")]
    ImageTooLarge { pixels: u64 },

    #[error("shape mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    ShapeMismatch {
        left_width: u32,
        left_height: u32,
        right_width: u32,
        right_height: u32,
    },

    #[error("keystream ended after {produced} masks, {needed} needed")]
    KeystreamExhausted { produced: usize, needed: usize },

    #[error("{direction} sample has zero variance; correlation is undefined")]
    DegenerateVariance { direction: &'static str },

    #[error("image {width}x{height} has no {direction} neighbour pairs")]
    ImageTooSmall {
        width: u32,
        height: u32,
        direction: &'static str,
    },

    #[error(
        "the literal cipher cannot be inverted: every ciphertext byte is \
         (mx mod 256) xor (my mod 256), the plaintext cancels out of \
         (K1 xor p) xor (K2 xor p)"
    )]
    LiteralNotInvertible,

    #[error("malformed keystream vector file, line {line}: {reason}")]
    VectorFormat { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain { op, value, domain }
}
