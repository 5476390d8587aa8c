//! Pre-scaling of near-saturated pixels so that a modulation step of at
//! most `alpha` can never leave [0, 255].
//!
//! After scaling, values in the low band `[a, 2a-1]` and the high band
//! `[255-2a+1, 255-a]` are ambiguous: they may be natural or scaled. The
//! register holds one flag per ambiguous pixel of the scaled image, in
//! raster order, set iff that pixel was scaled.

use super::bits::BitStream;
use super::config::Alpha;
use crate::error::{Error, Result};
use crate::image::GrayImage;

const MAX: i32 = 255;

/// Flags for ambiguous-valued pixels, one per such pixel in raster order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverflowRegister {
    pub flags: BitStream,
}

impl OverflowRegister {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Whether a value of the scaled image lies in one of the ambiguity bands.
#[inline]
pub fn is_ambiguous(value: u8, alpha: Alpha) -> bool {
    let v = i32::from(value);
    let a = alpha.as_i32();
    (a..=2 * a - 1).contains(&v) || (MAX - 2 * a + 1..=MAX - a).contains(&v)
}

pub fn ambiguous_count(img: &GrayImage, alpha: Alpha) -> usize {
    img.pixels()
        .iter()
        .filter(|&&p| is_ambiguous(p, alpha))
        .count()
}

pub fn scale_down(img: &GrayImage, alpha: Alpha) -> (GrayImage, OverflowRegister) {
    let a = alpha.as_i32();
    let mut out = img.clone();
    let mut flags = BitStream::new();
    for p in out.pixels_mut() {
        let v = i32::from(*p);
        let scaled = if v < a {
            Some(v + a)
        } else if v > MAX - a {
            Some(v - a)
        } else {
            None
        };
        if let Some(s) = scaled {
            *p = s as u8;
            flags.push(true);
        } else if is_ambiguous(*p, alpha) {
            flags.push(false);
        }
    }
    (out, OverflowRegister { flags })
}

pub fn scale_up(
    processed: &GrayImage,
    register: &OverflowRegister,
    alpha: Alpha,
) -> Result<GrayImage> {
    let expected = ambiguous_count(processed, alpha);
    if expected != register.len() {
        return Err(Error::RegisterLengthMismatch {
            expected,
            found: register.len(),
        });
    }
    let a = alpha.as_i32();
    let mut flags = register.flags.as_slice().iter();
    let mut out = processed.clone();
    for p in out.pixels_mut() {
        if !is_ambiguous(*p, alpha) {
            continue;
        }
        // length checked above
        if *flags.next().unwrap() {
            let v = i32::from(*p);
            *p = if v < 128 { v - a } else { v + a } as u8;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: u32) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn row(px: &[u8]) -> GrayImage {
        GrayImage::new(px.len(), 1, px.to_vec()).unwrap()
    }

    #[test]
    fn scale_down_examples() {
        let (out, reg) = scale_down(&row(&[1, 3, 128, 0, 255, 252, 253, 2]), a(2));
        assert_eq!(out.pixels(), &[3, 3, 128, 2, 253, 252, 253, 2]);
        // 3 scaled, 3 natural, 2 scaled, 253 scaled, 252 natural, 253 natural, 2 natural
        assert_eq!(
            reg.flags.as_slice(),
            &[true, false, true, true, false, false, false]
        );
        assert_eq!(reg.len(), ambiguous_count(&out, a(2)));
    }

    #[test]
    fn scale_up_examples() {
        let img = row(&[3]);
        let one = OverflowRegister {
            flags: vec![true].into(),
        };
        let zero = OverflowRegister {
            flags: vec![false].into(),
        };
        assert_eq!(scale_up(&img, &one, a(2)).unwrap().pixels(), &[1]);
        assert_eq!(scale_up(&img, &zero, a(2)).unwrap().pixels(), &[3]);
        assert_eq!(
            scale_up(&img, &OverflowRegister::default(), a(2)),
            Err(Error::RegisterLengthMismatch {
                expected: 1,
                found: 0
            })
        );
    }

    #[test]
    fn bands_at_max_alpha_are_disjoint() {
        let alpha = a(63);
        let all: Vec<u8> = (0..=255).collect();
        let (out, reg) = scale_down(&row(&all), alpha);
        assert!(out.pixels().iter().all(|&p| (63..=192).contains(&p)));
        assert_eq!(scale_up(&out, &reg, alpha).unwrap(), row(&all));
    }

    #[test]
    fn every_value_round_trips_for_every_alpha() {
        let all: Vec<u8> = (0..=255).collect();
        for v in 1..=Alpha::MAX {
            let alpha = a(v);
            let (out, reg) = scale_down(&row(&all), alpha);
            let lo = alpha.as_i32();
            assert!(out
                .pixels()
                .iter()
                .all(|&p| (lo..=255 - lo).contains(&i32::from(p))));
            assert_eq!(scale_up(&out, &reg, alpha).unwrap(), row(&all), "alpha {v}");
        }
    }
}
