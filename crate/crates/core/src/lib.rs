//! Reversible greyscale image steganography by adaptive residual modulation.
//!
//! Query pixels of a chequerboard lattice are predicted from their context
//! neighbours. Prediction residuals are modulated to carry a payload,
//! visiting query pixels from most to least predictable according to a
//! pluggable analyzer. Decoding restores the cover bit-exactly.
//!
//! ```
//! use residmod::{decode, encode, Alpha, AnalyzerKind, BitStream, ExternalMaps, GrayImage, StegoConfig};
//!
//! let cover = GrayImage::new(16, 16, (0..=255).collect()).unwrap();
//! let cfg = StegoConfig::interp(Alpha::new(2).unwrap(), AnalyzerKind::LocalVariance);
//! let message = BitStream::from_bytes(b"hi");
//! let stego = encode(&cover, &message, &cfg, &ExternalMaps::none()).unwrap();
//! let (restored, extracted) = decode(&stego, &cfg, &ExternalMaps::none()).unwrap();
//! assert_eq!((restored, extracted), (cover, message));
//! ```

pub mod analyzer;
pub mod codec;
pub mod error;
pub mod eval;
mod image;
pub mod image_io;
pub mod lattice;
pub mod predictor;

pub use codec::{
    capacity_walk, decode, encode, encode_detailed, Alpha, AnalyzerKind, BitStream, CapacityReport,
    ExternalMaps, PredictorKind, StegoConfig,
};
pub use error::{Error, Result};
pub use image::GrayImage;
pub use image_io::{read_map, read_pgm, write_map, write_pgm, MapFile, MapKind};
