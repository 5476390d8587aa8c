//! Rate–distortion sweeps with reproducible pseudorandom messages.
//!
//! Messages come from xorshift64* (Vigna 2016): state updated by shifts
//! 12 right, 25 left, 27 right; output multiplied by 0x2545F4914F6CDD1D.
//! A zero seed is replaced by 0x9E3779B97F4A7C15. Each message bit is the
//! most significant bit of one output. Every sweep point restarts the
//! generator from the seed, so shorter messages are prefixes of longer ones.

use crate::codec::{encode, AnalyzerKind, BitStream, ExternalMaps, StegoConfig};
use crate::error::{Error, Result};
use crate::image::GrayImage;

use super::metrics::{embedding_rate, psnr};

pub const DEFAULT_SEED: u64 = 0x00C0_FFEE_D15C_0DE5;

pub const CSV_HEADER: [&str; 6] = [
    "image",
    "analyzer",
    "alpha",
    "target_bpp",
    "actual_bpp",
    "psnr_db",
];

#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 {
            0x9E37_79B9_7F4A_7C15
        } else {
            seed
        };
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn next_bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

pub fn pseudorandom_message(bits: usize, seed: u64) -> BitStream {
    let mut rng = XorShift64Star::new(seed);
    (0..bits).map(|_| rng.next_bit()).collect()
}

/// `ceil(rate * pixels)`, tolerant of float noise just above an integer.
pub fn message_bits_for_rate(rate: f64, img: &GrayImage) -> usize {
    let exact = rate.max(0.0) * img.len() as f64;
    (exact - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateDistortionPoint {
    pub target_bpp: f64,
    pub message_bits: usize,
    /// Message bits per pixel actually attempted.
    pub rate: f64,
    /// `None` when the message did not fit; infinite for an unchanged image.
    pub psnr: Option<f64>,
}

/// One point per target rate, ordered by rate. Points that exceed capacity
/// are kept with `psnr: None`; any other failure aborts the sweep.
pub fn rd_sweep(
    img: &GrayImage,
    cfg: &StegoConfig,
    rates: &[f64],
    maps: &ExternalMaps,
    seed: u64,
) -> Result<Vec<RateDistortionPoint>> {
    let mut rates = rates.to_vec();
    rates.sort_by(f64::total_cmp);
    rates
        .into_iter()
        .map(|target| {
            let bits = message_bits_for_rate(target, img);
            let message = pseudorandom_message(bits, seed);
            let psnr = match encode(img, &message, cfg, maps) {
                Ok(stego) => Some(psnr(img, &stego)?),
                Err(Error::CapacityExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(RateDistortionPoint {
                target_bpp: target,
                message_bits: bits,
                rate: embedding_rate(bits, img),
                psnr,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub image: String,
    pub analyzer: AnalyzerKind,
    pub alpha: u32,
    pub point: RateDistortionPoint,
}

fn format_psnr(psnr: Option<f64>) -> String {
    match psnr {
        None => String::new(),
        Some(p) if p.is_infinite() => "inf".into(),
        Some(p) => format!("{p:.6}"),
    }
}

/// CSV with a header row, UTF-8, LF line endings.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::MalformedData(e.to_string());
    w.write_record(CSV_HEADER).map_err(to_err)?;
    for row in rows {
        w.write_record([
            row.image.clone(),
            row.analyzer.name().to_string(),
            row.alpha.to_string(),
            format!("{}", row.point.target_bpp),
            format!("{:.6}", row.point.rate),
            format_psnr(row.point.psnr),
        ])
        .map_err(to_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::MalformedData(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is built from UTF-8 strings"))
}
