use thiserror::Error;

use crate::image_io::MapKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    MaxvalUnsupported(u32),
    #[error("truncated data: expected {expected} samples, found {found}")]
    TruncatedData { expected: usize, found: usize },
    #[error("sample value {value} at index {index} exceeds maxval")]
    SampleOutOfRange { index: usize, value: u32 },
    #[error("malformed data: {0}")]
    MalformedData(String),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported map version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown map kind tag {0}")]
    UnknownMapKind(u8),
    #[error("bad dimensions {width}x{height}")]
    BadDims { width: u64, height: u64 },
    #[error("{0} trailing bytes after payload")]
    TrailingData(usize),
    #[error("non-finite score at index {index}")]
    NonFiniteValue { index: usize },
    #[error("image is {width}x{height}, need at least 2x2")]
    ImageTooSmall { width: usize, height: usize },
    #[error("value count mismatch: expected {expected}, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected:?}, got {found:?}")]
    DimMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("wrong map kind: expected {expected:?}, got {found:?}")]
    WrongKind { expected: MapKind, found: MapKind },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("alpha {0} outside 1..=63")]
    InvalidAlpha(u32),
    #[error("overflow register has {found} flags, image has {expected} ambiguous pixels")]
    RegisterLengthMismatch { expected: usize, found: usize },
    #[error("payload of {0} bits does not fit the 31-bit length field")]
    PayloadTooLarge(u64),
    #[error(
        "capacity exceeded: {embedded} of {needed} framed bits embedded before the route ran out"
    )]
    CapacityExceeded { needed: usize, embedded: usize },
    #[error("frame underflow: route exhausted after {found} of {needed} bits")]
    FrameUnderflow { needed: u64, found: usize },
    #[error("corrupt stego image: {0}")]
    CorruptStego(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("truth plane has no positives")]
    NoPositives,
    #[error("truth plane needs at least one positive and one negative")]
    DegenerateTruth,
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("empty input")]
    EmptyInput,
}
