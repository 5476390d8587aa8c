#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use residmod::analyzer::{ground_truth_full_image, truth_to_map};
use residmod::codec::{scale_down, Analysis};
use residmod::{read_pgm, Alpha, GrayImage, MapFile, StegoConfig};

pub const FIXTURES: [&str; 4] = ["camera", "moon", "coins", "clock"];

pub fn fixture(name: &str) -> GrayImage {
    let path = format!("{}/tests/data/{name}.pgm", env!("CARGO_MANIFEST_DIR"));
    read_pgm(&std::fs::read(&path).unwrap_or_else(|e| panic!("{path}: {e}"))).unwrap()
}

pub fn fixtures() -> Vec<(&'static str, GrayImage)> {
    FIXTURES.iter().map(|&n| (n, fixture(n))).collect()
}

pub fn crop(img: &GrayImage, row: usize, col: usize, w: usize, h: usize) -> GrayImage {
    let px = (row..row + h)
        .flat_map(|r| (col..col + w).map(move |c| (r, c)))
        .map(|(r, c)| img.get(r, c))
        .collect();
    GrayImage::new(w, h, px).unwrap()
}

/// Images that stress the codec: flat, saturated, near-saturated, smooth
/// with noise, uniform noise and crops of natural images.
pub fn random_image(rng: &mut ChaCha8Rng, alpha: u32, naturals: &[GrayImage]) -> GrayImage {
    let w = rng.gen_range(2..=48);
    let h = rng.gen_range(2..=48);
    let n = w * h;
    let a = alpha as i32;
    let px: Vec<u8> = match rng.gen_range(0..7) {
        0 => vec![0; n],
        1 => vec![255; n],
        2 => vec![rng.gen(); n],
        3 => {
            // dark and bright halves hugging the limits
            (0..n)
                .map(|i| {
                    let base = if (i % w) < w / 2 { 0 } else { 255 };
                    let jitter = if rng.gen_bool(0.7) {
                        0
                    } else {
                        rng.gen_range(0..=2 * a + 1)
                    };
                    if base == 0 {
                        jitter as u8
                    } else {
                        (255 - jitter) as u8
                    }
                })
                .collect()
        }
        4 => {
            let (gx, gy) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let offset = rng.gen_range(0.0..255.0);
            (0..n)
                .map(|i| {
                    let v = offset
                        + gx * (i % w) as f64
                        + gy * (i / w) as f64
                        + rng.gen_range(-1.5..1.5);
                    v.round().clamp(0.0, 255.0) as u8
                })
                .collect()
        }
        5 => (0..n).map(|_| rng.gen()).collect(),
        _ => {
            let src = &naturals[rng.gen_range(0..naturals.len())];
            let w = w.min(src.width());
            let h = h.min(src.height());
            let r = rng.gen_range(0..=src.height() - h);
            let c = rng.gen_range(0..=src.width() - w);
            return crop(src, r, c, w, h);
        }
    };
    GrayImage::new(w, h, px).unwrap()
}

pub fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> residmod::BitStream {
    (0..len).map(|_| rng.gen::<bool>()).collect()
}

/// Full-image oracle map of the processed cover, usable as an external
/// score map so the decoder can follow the oracle route.
pub fn oracle_route_map(cover: &GrayImage, cfg: &StegoConfig) -> MapFile {
    let (processed, _) = scale_down(cover, cfg.alpha);
    let analysis = Analysis::new(&processed, cfg, &Default::default()).unwrap();
    let truth =
        ground_truth_full_image(&analysis.residuals, &analysis.partition, cfg.alpha).unwrap();
    truth_to_map(&truth, cover.width(), cover.height()).unwrap()
}

pub fn alpha(v: u32) -> Alpha {
    Alpha::new(v).unwrap()
}
