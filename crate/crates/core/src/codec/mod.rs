//! The reversible core: overflow scaling, payload framing, residual
//! modulation and the encode/decode pipelines.

mod bits;
mod config;
mod frame;
mod modulation;
mod overflow;
mod pipeline;

pub use bits::BitStream;
pub use config::{Alpha, AnalyzerKind, ExternalMaps, PredictorKind, StegoConfig};
pub use frame::{
    decode_register_runs, deconcat, encode_register_runs, frame_payload, framed_register_bits,
    payload_len, read_header, FrameHeader, RegisterCoding, LENGTH_FIELD_BITS, MAX_PAYLOAD_BITS,
    PAD_BITS,
};
pub use modulation::{demodulate_one, modulate_one, Extracted};
pub use overflow::{ambiguous_count, is_ambiguous, scale_down, scale_up, OverflowRegister};
pub use pipeline::{
    capacity_walk, decode, encode, encode_detailed, residual_capacity, Analysis, CapacityReport,
    EncodeOutcome,
};
