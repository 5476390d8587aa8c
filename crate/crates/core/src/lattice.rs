//! Chequerboard split of an image into context and query pixels.
//!
//! A pixel `(row, col)` is context iff `row + col` is even, so `(0, 0)` is
//! always context. Both index lists are in raster order. Every in-bounds
//! 4-connected neighbour of a query pixel is a context pixel and vice versa.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Which chequerboard colour a pixel belongs to.
#[inline]
pub fn is_context(row: usize, col: usize) -> bool {
    (row + col).is_multiple_of(2)
}

/// In-bounds 4-connected neighbours of `(row, col)`, in up/left/right/down order.
pub fn neighbours4(
    row: usize,
    col: usize,
    width: usize,
    height: usize,
) -> impl Iterator<Item = (usize, usize)> {
    let up = (row > 0).then(|| (row - 1, col));
    let left = (col > 0).then(|| (row, col - 1));
    let right = (col + 1 < width).then_some((row, col + 1));
    let down = (row + 1 < height).then_some((row + 1, col));
    [up, left, right, down].into_iter().flatten()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePartition {
    width: usize,
    height: usize,
    context: Vec<(usize, usize)>,
    query: Vec<(usize, usize)>,
}

impl LatticePartition {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::ImageTooSmall { width, height });
        }
        let total = width * height;
        let mut context = Vec::with_capacity(total.div_ceil(2));
        let mut query = Vec::with_capacity(total / 2);
        for row in 0..height {
            for col in 0..width {
                if is_context(row, col) {
                    context.push((row, col));
                } else {
                    query.push((row, col));
                }
            }
        }
        Ok(Self {
            width,
            height,
            context,
            query,
        })
    }

    pub fn for_image(img: &GrayImage) -> Result<Self> {
        Self::new(img.width(), img.height())
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

    pub fn context_idx(&self) -> &[(usize, usize)] {
        &self.context
    }

    pub fn query_idx(&self) -> &[(usize, usize)] {
        &self.query
    }

    pub fn query_len(&self) -> usize {
        self.query.len()
    }

    /// Position of each pixel within its own index list, row-major over the image.
    pub fn slot_map(&self) -> Vec<usize> {
        let mut slots = vec![0; self.width * self.height];
        for (i, &(r, c)) in self.context.iter().enumerate() {
            slots[r * self.width + c] = i;
        }
        for (i, &(r, c)) in self.query.iter().enumerate() {
            slots[r * self.width + c] = i;
        }
        slots
    }

    fn check_dims(&self, img: &GrayImage) -> Result<()> {
        if img.dims() != self.dims() {
            return Err(Error::DimMismatch {
                expected: self.dims(),
                found: img.dims(),
            });
        }
        Ok(())
    }

    /// Splits an image laid out like this partition into (context, query) values.
    pub fn gather(&self, img: &GrayImage) -> Result<(Vec<u8>, Vec<u8>)> {
        self.check_dims(img)?;
        let pick = |idx: &[(usize, usize)]| idx.iter().map(|&(r, c)| img.get(r, c)).collect();
        Ok((pick(&self.context), pick(&self.query)))
    }
}

pub fn split(img: &GrayImage) -> Result<(Vec<u8>, Vec<u8>, LatticePartition)> {
    let part = LatticePartition::for_image(img)?;
    let (context, query) = part.gather(img)?;
    Ok((context, query, part))
}

pub fn merge(context: &[u8], query: &[u8], part: &LatticePartition) -> Result<GrayImage> {
    for (values, idx) in [(context, &part.context), (query, &part.query)] {
        if values.len() != idx.len() {
            return Err(Error::CountMismatch {
                expected: idx.len(),
                found: values.len(),
            });
        }
    }
    let mut pixels = vec![0u8; part.width * part.height];
    for (&v, &(r, c)) in context.iter().zip(&part.context) {
        pixels[r * part.width + c] = v;
    }
    for (&v, &(r, c)) in query.iter().zip(&part.query) {
        pixels[r * part.width + c] = v;
    }
    GrayImage::new(part.width, part.height, pixels)
}

/// The canonical predictor input: context intensities with zeros at query pixels.
pub fn masked_context_image(img: &GrayImage, part: &LatticePartition) -> Result<GrayImage> {
    part.check_dims(img)?;
    let mut out = img.clone();
    for &(r, c) in &part.query {
        out.set(r, c, 0);
    }
    Ok(out)
}
