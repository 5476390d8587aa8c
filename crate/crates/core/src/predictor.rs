//! Integer intensity predictions for query pixels, computed from context
//! pixels only.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::image_io::{MapData, MapFile, MapKind};
use crate::lattice::{neighbours4, LatticePartition};

/// Predicted intensity per query pixel, in raster order of the query list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionPlane(Vec<u8>);

impl PredictionPlane {
    pub fn new(values: Vec<u8>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `x_Q - y_Q` per query pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPlane(Vec<i32>);

impl ResidualPlane {
    pub fn new(values: Vec<i32>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `floor(sum / n + 0.5)` in exact integer arithmetic.
#[inline]
pub fn round_half_up_mean(sum: u32, n: u32) -> u32 {
    (2 * sum + n) / (2 * n)
}

/// Mean of the in-bounds 4-connected context neighbours, rounded half up.
/// Border pixels average over two or three neighbours.
pub fn predict_interp(img: &GrayImage, part: &LatticePartition) -> Result<PredictionPlane> {
    check_dims(img.dims(), part)?;
    let (w, h) = part.dims();
    let values = part
        .query_idx()
        .iter()
        .map(|&(r, c)| {
            let (sum, n) = neighbours4(r, c, w, h).fold((0u32, 0u32), |(s, n), (nr, nc)| {
                (s + u32::from(img.get(nr, nc)), n + 1)
            });
            round_half_up_mean(sum, n) as u8
        })
        .collect();
    Ok(PredictionPlane(values))
}

/// Gathers an externally computed prediction map at the query pixels.
pub fn predict_external(map: &MapFile, part: &LatticePartition) -> Result<PredictionPlane> {
    check_dims(map.dims(), part)?;
    let MapData::Prediction(values) = map.data() else {
        return Err(Error::WrongKind {
            expected: MapKind::Prediction,
            found: map.kind(),
        });
    };
    let w = map.width();
    Ok(PredictionPlane(
        part.query_idx()
            .iter()
            .map(|&(r, c)| values[r * w + c])
            .collect(),
    ))
}

pub fn residuals(query_values: &[u8], pred: &PredictionPlane) -> Result<ResidualPlane> {
    if query_values.len() != pred.len() {
        return Err(Error::LengthMismatch {
            left: query_values.len(),
            right: pred.len(),
        });
    }
    Ok(ResidualPlane(
        query_values
            .iter()
            .zip(pred.values())
            .map(|(&x, &y)| i32::from(x) - i32::from(y))
            .collect(),
    ))
}

pub(crate) fn check_dims(found: (usize, usize), part: &LatticePartition) -> Result<()> {
    if found != part.dims() {
        return Err(Error::DimMismatch {
            expected: part.dims(),
            found,
        });
    }
    Ok(())
}
