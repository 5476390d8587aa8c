use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::predictor::ResidualPlane;

/// Peak signal-to-noise ratio in dB for 8-bit images. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimMismatch {
            expected: a.dims(),
            found: b.dims(),
        });
    }
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.len() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Message bits per pixel of the cover. Framing and register overhead are
/// not counted.
pub fn embedding_rate(message_bits: usize, img: &GrayImage) -> f64 {
    message_bits as f64 / img.len() as f64
}

/// Population variance of the residuals, optionally restricted to `mask`.
pub fn residual_variance(res: &ResidualPlane, mask: Option<&[bool]>) -> Result<f64> {
    if let Some(m) = mask {
        if m.len() != res.len() {
            return Err(Error::LengthMismatch {
                left: res.len(),
                right: m.len(),
            });
        }
    }
    let selected: Vec<f64> = res
        .values()
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask.is_none_or(|m| m[i]))
        .map(|(_, &e)| f64::from(e))
        .collect();
    if selected.len() < 2 {
        return Err(Error::TooFewSamples(selected.len()));
    }
    let n = selected.len() as f64;
    let mean = selected.iter().sum::<f64>() / n;
    Ok(selected.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveNumberSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quartiles by linear interpolation between order statistics: the
/// p-quantile sits at position `(n - 1) * p` of the sorted values.
pub fn five_number_summary(values: &[f64]) -> Result<FiveNumberSummary> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let quantile = |p: f64| {
        let h = (sorted.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    };
    Ok(FiveNumberSummary {
        min: sorted[0],
        q1: quantile(0.25),
        median: quantile(0.5),
        q3: quantile(0.75),
        max: sorted[sorted.len() - 1],
    })
}

/// Most frequent residual value; ties go to the smaller magnitude, then the positive sign.
pub fn residual_mode(res: &ResidualPlane) -> Option<i32> {
    let mut hist = vec![0usize; 511];
    for &e in res.values() {
        hist[(e.clamp(-255, 255) + 255) as usize] += 1;
    }
    let best = *hist.iter().max()?;
    if best == 0 {
        return None;
    }
    (0..=255)
        .flat_map(|m: i32| [m, -m])
        .find(|&e| hist[(e + 255) as usize] == best)
}
