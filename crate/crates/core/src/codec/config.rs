use crate::error::{Error, Result};
use crate::image_io::MapFile;

/// Stego-channel parameter: the carrier threshold and the overflow scaling
/// step. Capped at 63 so the two ambiguity bands stay disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha(u8);

impl Alpha {
    pub const MAX: u32 = 63;

    pub fn new(value: u32) -> Result<Self> {
        if (1..=Self::MAX).contains(&value) {
            Ok(Self(value as u8))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn get(self) -> u32 {
        u32::from(self.0)
    }

    pub fn as_i32(self) -> i32 {
        i32::from(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyzerKind {
    LocalVariance,
    /// Scores from an external QMAP score file.
    ExternalMap,
    /// Ground-truth carrier map. Needs the cover's residuals, so the decoder
    /// cannot rebuild it; decode with the exported map via `ExternalMap`.
    Oracle,
    Raster,
}

impl AnalyzerKind {
    pub fn name(self) -> &'static str {
        match self {
            AnalyzerKind::LocalVariance => "lv",
            AnalyzerKind::ExternalMap => "map",
            AnalyzerKind::Oracle => "oracle",
            AnalyzerKind::Raster => "raster",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictorKind {
    Interp,
    ExternalMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoConfig {
    pub alpha: Alpha,
    pub analyzer: AnalyzerKind,
    pub predictor: PredictorKind,
}

impl StegoConfig {
    pub fn new(alpha: Alpha, analyzer: AnalyzerKind, predictor: PredictorKind) -> Self {
        Self {
            alpha,
            analyzer,
            predictor,
        }
    }

    /// Interpolating predictor with the given analyzer.
    pub fn interp(alpha: Alpha, analyzer: AnalyzerKind) -> Self {
        Self::new(alpha, analyzer, PredictorKind::Interp)
    }
}

/// Externally supplied maps, shared verbatim by encoder and decoder.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExternalMaps<'a> {
    pub prediction: Option<&'a MapFile>,
    pub score: Option<&'a MapFile>,
}

impl<'a> ExternalMaps<'a> {
    pub fn none() -> Self {
        Self::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_bounds() {
        assert_eq!(Alpha::new(0), Err(Error::InvalidAlpha(0)));
        assert_eq!(Alpha::new(64), Err(Error::InvalidAlpha(64)));
        assert_eq!(Alpha::new(1).unwrap().get(), 1);
        assert_eq!(Alpha::new(63).unwrap().as_i32(), 63);
    }
}
