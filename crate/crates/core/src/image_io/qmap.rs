//! QMAP layout, all integers little-endian:
//!
//! ```text
//! offset 0  "QMAP"
//! offset 4  version  u8  (1)
//! offset 5  kind     u8  (0 = prediction u8, 1 = score f32)
//! offset 6  reserved u16 (0)
//! offset 8  width    u32
//! offset 12 height   u32
//! offset 16 row-major payload
//! ```

use crate::error::{Error, Result};

pub const QMAP_MAGIC: &[u8; 4] = b"QMAP";
pub const QMAP_VERSION: u8 = 1;
pub const QMAP_HEADER_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Prediction,
    Score,
}

impl MapKind {
    fn tag(self) -> u8 {
        match self {
            MapKind::Prediction => 0,
            MapKind::Score => 1,
        }
    }

    fn sample_size(self) -> u64 {
        match self {
            MapKind::Prediction => 1,
            MapKind::Score => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapData {
    Prediction(Vec<u8>),
    Score(Vec<f32>),
}

/// A full-image plane of predicted intensities or predictability scores.
#[derive(Debug, Clone, PartialEq)]
pub struct MapFile {
    width: usize,
    height: usize,
    data: MapData,
}

impl MapFile {
    pub fn prediction(width: usize, height: usize, values: Vec<u8>) -> Result<Self> {
        Self::new(width, height, MapData::Prediction(values))
    }

    /// Fails with `NonFiniteValue` on NaN or infinite entries.
    pub fn score(width: usize, height: usize, values: Vec<f32>) -> Result<Self> {
        Self::new(width, height, MapData::Score(values))
    }

    fn new(width: usize, height: usize, data: MapData) -> Result<Self> {
        let count = checked_count(width as u64, height as u64)?;
        let len = match &data {
            MapData::Prediction(v) => v.len(),
            MapData::Score(v) => {
                if let Some(index) = v.iter().position(|s| !s.is_finite()) {
                    return Err(Error::NonFiniteValue { index });
                }
                v.len()
            }
        };
        if len != count {
            return Err(Error::CountMismatch {
                expected: count,
                found: len,
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn kind(&self) -> MapKind {
        match self.data {
            MapData::Prediction(_) => MapKind::Prediction,
            MapData::Score(_) => MapKind::Score,
        }
    }

    pub fn data(&self) -> &MapData {
        &self.data
    }
}

fn checked_count(width: u64, height: u64) -> Result<usize> {
    if width == 0 || height == 0 || width > u64::from(u32::MAX) || height > u64::from(u32::MAX) {
        return Err(Error::BadDims { width, height });
    }
    width
        .checked_mul(height)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or(Error::BadDims { width, height })
}

pub fn read_map(bytes: &[u8]) -> Result<MapFile> {
    let magic_len = bytes.len().min(4);
    if bytes[..magic_len] != QMAP_MAGIC[..magic_len] {
        return Err(Error::BadMagic);
    }
    if bytes.len() < QMAP_HEADER_LEN {
        return Err(Error::MalformedHeader(format!(
            "QMAP header needs {QMAP_HEADER_LEN} bytes, got {}",
            bytes.len()
        )));
    }
    let version = bytes[4];
    if version != QMAP_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let kind = match bytes[5] {
        0 => MapKind::Prediction,
        1 => MapKind::Score,
        other => return Err(Error::UnknownMapKind(other)),
    };
    let reserved = u16::from_le_bytes([bytes[6], bytes[7]]);
    if reserved != 0 {
        return Err(Error::MalformedHeader(format!(
            "reserved field is {reserved}, expected 0"
        )));
    }
    let width = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let height = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
    let count = checked_count(u64::from(width), u64::from(height))?;

    let payload = &bytes[QMAP_HEADER_LEN..];
    let sample = kind.sample_size() as usize;
    let available = payload.len() / sample;
    if available < count {
        return Err(Error::TruncatedData {
            expected: count,
            found: available,
        });
    }
    let used = count * sample;
    if payload.len() > used {
        return Err(Error::TrailingData(payload.len() - used));
    }

    let data = match kind {
        MapKind::Prediction => MapData::Prediction(payload.to_vec()),
        MapKind::Score => MapData::Score(
            payload
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
                .collect(),
        ),
    };
    MapFile::new(width as usize, height as usize, data)
}

pub fn write_map(map: &MapFile) -> Vec<u8> {
    let kind = map.kind();
    let payload_len = map.width * map.height * kind.sample_size() as usize;
    let mut out = Vec::with_capacity(QMAP_HEADER_LEN + payload_len);
    out.extend_from_slice(QMAP_MAGIC);
    out.push(QMAP_VERSION);
    out.push(kind.tag());
    out.extend_from_slice(&0u16.to_le_bytes());
    out.extend_from_slice(&(map.width as u32).to_le_bytes());
    out.extend_from_slice(&(map.height as u32).to_le_bytes());
    match &map.data {
        MapData::Prediction(v) => out.extend_from_slice(v),
        MapData::Score(v) => {
            for s in v {
                out.extend_from_slice(&s.to_le_bytes());
            }
        }
    }
    out
}
