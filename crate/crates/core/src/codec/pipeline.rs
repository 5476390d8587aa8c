//! Encode and decode pipelines.
//!
//! Encoding: scale near-saturated pixels, split on the lattice, predict the
//! query pixels and score them from context pixels, then walk the route
//! modulating residuals until the framed payload is consumed. Pixels after
//! the stopping point are left untouched. Decoding repeats the analysis on
//! the (unchanged) context of the stego image and walks the same route.

use super::bits::BitStream;
use super::config::{Alpha, AnalyzerKind, ExternalMaps, PredictorKind, StegoConfig};
use super::frame::{
    deconcat, frame_payload, framed_register_bits, read_header, FrameHeader, LENGTH_FIELD_BITS,
    PAD_BITS,
};
use super::modulation::{demodulate_one, modulate_one};
use super::overflow::{ambiguous_count, scale_down, scale_up};
use crate::analyzer::{
    analyze_external, analyze_local_variance, make_route, oracle_scores, Route, ScorePlane,
};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::lattice::{merge, LatticePartition};
use crate::predictor::{
    predict_external, predict_interp, residuals, PredictionPlane, ResidualPlane,
};

/// What both endpoints derive from an image before touching residuals.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub partition: LatticePartition,
    pub context: Vec<u8>,
    pub query: Vec<u8>,
    pub prediction: PredictionPlane,
    pub residuals: ResidualPlane,
}

impl Analysis {
    pub fn new(img: &GrayImage, cfg: &StegoConfig, maps: &ExternalMaps) -> Result<Self> {
        let partition = LatticePartition::for_image(img)?;
        let (context, query) = partition.gather(img)?;
        let prediction = match cfg.predictor {
            PredictorKind::Interp => predict_interp(img, &partition)?,
            PredictorKind::ExternalMap => {
                let map = maps.prediction.ok_or_else(|| {
                    Error::Config("external predictor needs a prediction map".into())
                })?;
                predict_external(map, &partition)?
            }
        };
        let residuals = residuals(&query, &prediction)?;
        Ok(Self {
            partition,
            context,
            query,
            prediction,
            residuals,
        })
    }

    /// Route scores for the configured analyzer. The oracle reads residuals
    /// and is therefore only meaningful on the encoder side.
    pub fn scores(
        &self,
        img: &GrayImage,
        cfg: &StegoConfig,
        maps: &ExternalMaps,
    ) -> Result<ScorePlane> {
        match cfg.analyzer {
            AnalyzerKind::LocalVariance => analyze_local_variance(img, &self.partition),
            AnalyzerKind::ExternalMap => {
                let map = maps
                    .score
                    .ok_or_else(|| Error::Config("map analyzer needs a score map".into()))?;
                analyze_external(map, &self.partition)
            }
            AnalyzerKind::Oracle => Ok(oracle_scores(&self.residuals, cfg.alpha)),
            AnalyzerKind::Raster => Ok(ScorePlane::uniform(self.query.len())),
        }
    }
}

/// Residual counts that bound how much a walk can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityReport {
    /// Bits guaranteed whatever the payload: one per carrier.
    pub min_bits: usize,
    pub zero_count: usize,
    /// Residuals with `|e| < alpha`, zeros included.
    pub carrier_count: usize,
    /// Overflow flags, one per ambiguous pixel.
    pub register_len: usize,
    /// Bits the register occupies in the frame (after run-length coding, if shorter).
    pub register_bits: usize,
    pub query_count: usize,
}

impl CapacityReport {
    /// Expected message capacity for uniformly random payload bits, after
    /// the length field, pad and register.
    pub fn expected_message_bits(&self) -> f64 {
        let nonzero = (self.carrier_count - self.zero_count) as f64;
        1.5 * self.zero_count as f64 + nonzero
            - (LENGTH_FIELD_BITS + PAD_BITS) as f64
            - self.register_bits as f64
    }

    /// Message bits that fit no matter what the payload looks like.
    pub fn guaranteed_message_bits(&self) -> usize {
        self.min_bits
            .saturating_sub(LENGTH_FIELD_BITS + PAD_BITS + self.register_bits)
    }
}

/// `(min_bits, zero_count, carrier_count)` of a residual plane.
pub fn residual_capacity(res: &ResidualPlane, alpha: Alpha) -> (usize, usize, usize) {
    let a = alpha.as_i32();
    let zeros = res.values().iter().filter(|&&e| e == 0).count();
    let carriers = res.values().iter().filter(|&&e| e.abs() < a).count();
    (carriers, zeros, carriers)
}

pub fn capacity_walk(
    img: &GrayImage,
    cfg: &StegoConfig,
    maps: &ExternalMaps,
) -> Result<CapacityReport> {
    let (processed, register) = scale_down(img, cfg.alpha);
    let analysis = Analysis::new(&processed, cfg, maps)?;
    let (min_bits, zero_count, carrier_count) = residual_capacity(&analysis.residuals, cfg.alpha);
    Ok(CapacityReport {
        min_bits,
        zero_count,
        carrier_count,
        register_len: register.len(),
        register_bits: framed_register_bits(&register),
        query_count: analysis.query.len(),
    })
}

#[derive(Debug, Clone)]
pub struct EncodeOutcome {
    pub stego: GrayImage,
    /// The cover after overflow scaling.
    pub processed: GrayImage,
    pub register_len: usize,
    /// Header plus payload bits, pad excluded.
    pub frame_bits: usize,
    /// Route positions visited before the payload ran out.
    pub pixels_visited: usize,
    pub route: Route,
    pub scores: ScorePlane,
    pub capacity: CapacityReport,
}

pub fn encode(
    img: &GrayImage,
    message: &BitStream,
    cfg: &StegoConfig,
    maps: &ExternalMaps,
) -> Result<GrayImage> {
    encode_detailed(img, message, cfg, maps).map(|o| o.stego)
}

pub fn encode_detailed(
    img: &GrayImage,
    message: &BitStream,
    cfg: &StegoConfig,
    maps: &ExternalMaps,
) -> Result<EncodeOutcome> {
    let alpha = cfg.alpha.as_i32();
    LatticePartition::for_image(img)?;
    let (processed, register) = scale_down(img, cfg.alpha);
    let framed = frame_payload(message, &register)?;
    let analysis = Analysis::new(&processed, cfg, maps)?;
    let scores = analysis.scores(&processed, cfg, maps)?;
    let route = make_route(&scores);

    let target = framed.len() - PAD_BITS;
    let bits = framed.as_slice();
    let pred = analysis.prediction.values();
    let res = analysis.residuals.values();
    let mut stego_query = analysis.query.clone();
    let mut consumed = 0;
    let mut visited = 0;
    for &qi in route.order() {
        if consumed >= target {
            break;
        }
        let (modulated, used) = modulate_one(res[qi], alpha, &bits[consumed..]);
        let value = i32::from(pred[qi]) + modulated;
        debug_assert!(
            (0..=255).contains(&value),
            "pre-scaling keeps stego in range"
        );
        stego_query[qi] = value as u8;
        consumed += used;
        visited += 1;
    }
    if consumed < target {
        return Err(Error::CapacityExceeded {
            needed: target,
            embedded: consumed,
        });
    }

    let (min_bits, zero_count, carrier_count) = residual_capacity(&analysis.residuals, cfg.alpha);
    let stego = merge(&analysis.context, &stego_query, &analysis.partition)?;
    Ok(EncodeOutcome {
        stego,
        processed,
        register_len: register.len(),
        frame_bits: target,
        pixels_visited: visited,
        route,
        scores,
        capacity: CapacityReport {
            min_bits,
            zero_count,
            carrier_count,
            register_len: register.len(),
            register_bits: framed_register_bits(&register),
            query_count: analysis.query.len(),
        },
    })
}

/// Recovers the cover image and the message.
pub fn decode(
    stego: &GrayImage,
    cfg: &StegoConfig,
    maps: &ExternalMaps,
) -> Result<(GrayImage, BitStream)> {
    if cfg.analyzer == AnalyzerKind::Oracle {
        return Err(Error::Config(
            "the oracle route depends on the cover; decode with the exported oracle map as an external score map"
                .into(),
        ));
    }
    let alpha = cfg.alpha.as_i32();
    let analysis = Analysis::new(stego, cfg, maps)?;
    let route = make_route(&analysis.scores(stego, cfg, maps)?);
    let pred = analysis.prediction.values();
    let res = analysis.residuals.values();

    let mut bits: Vec<bool> = Vec::new();
    let mut header: Option<FrameHeader> = None;
    let mut finished = |bits: &[bool]| {
        if header.is_none() {
            header = read_header(bits);
        }
        matches!(header, Some(h) if bits.len() as u64 >= h.frame_len())
    };
    let mut restored = analysis.query.clone();
    let mut done = finished(&bits);
    for &qi in route.order() {
        if done {
            break;
        }
        let (eps, extracted) = demodulate_one(res[qi], alpha);
        let value = i32::from(pred[qi]) + eps;
        if !(0..=255).contains(&value) {
            return Err(Error::CorruptStego(format!(
                "query pixel {qi} restores to {value}"
            )));
        }
        restored[qi] = value as u8;
        bits.extend_from_slice(extracted.as_slice());
        done = finished(&bits);
    }
    let Some(header) = header.filter(|h| bits.len() as u64 >= h.frame_len()) else {
        return Err(Error::FrameUnderflow {
            needed: header.map_or(LENGTH_FIELD_BITS as u64, |h| h.frame_len()),
            found: bits.len(),
        });
    };

    let processed = merge(&analysis.context, &restored, &analysis.partition)?;
    let payload = &bits[LENGTH_FIELD_BITS..header.frame_len() as usize];
    let (message, register) = deconcat(
        payload,
        ambiguous_count(&processed, cfg.alpha),
        header.coding,
    )?;
    let cover = scale_up(&processed, &register, cfg.alpha)?;
    Ok((cover, message))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alpha: u32, analyzer: AnalyzerKind) -> StegoConfig {
        StegoConfig::interp(Alpha::new(alpha).unwrap(), analyzer)
    }

    #[test]
    fn empty_message_on_constant_image_is_invisible() {
        let img = GrayImage::filled(8, 8, 128).unwrap();
        let c = cfg(2, AnalyzerKind::LocalVariance);
        let out = encode_detailed(&img, &BitStream::new(), &c, &ExternalMaps::none()).unwrap();
        // 32 zero header bits, each on a zero residual: nothing moves
        assert_eq!(out.stego, img);
        assert_eq!(out.pixels_visited, 32);
        let (cover, m) = decode(&out.stego, &c, &ExternalMaps::none()).unwrap();
        assert_eq!(cover, img);
        assert!(m.is_empty());
    }

    #[test]
    fn capacity_of_constant_image() {
        let img = GrayImage::filled(6, 4, 90).unwrap();
        let r = capacity_walk(&img, &cfg(2, AnalyzerKind::Raster), &ExternalMaps::none()).unwrap();
        assert_eq!(
            (r.min_bits, r.zero_count, r.carrier_count, r.query_count),
            (12, 12, 12, 12)
        );
    }

    #[test]
    fn residual_capacity_examples() {
        let a = Alpha::new(2).unwrap();
        assert_eq!(
            residual_capacity(&ResidualPlane::new(vec![0, 1, 5]), a),
            (2, 1, 2)
        );
        assert_eq!(
            residual_capacity(&ResidualPlane::new(vec![2, -7, 9]), a),
            (0, 0, 0)
        );
    }

    #[test]
    fn too_long_message() {
        let img = GrayImage::filled(8, 8, 100).unwrap();
        let msg = BitStream::from(vec![true; 64]);
        assert!(matches!(
            encode(
                &img,
                &msg,
                &cfg(2, AnalyzerKind::Raster),
                &ExternalMaps::none()
            ),
            Err(Error::CapacityExceeded { needed: 96, .. })
        ));
    }

    #[test]
    fn missing_maps_are_config_errors() {
        let img = GrayImage::filled(4, 4, 100).unwrap();
        let m = BitStream::new();
        let none = ExternalMaps::none();
        let map_cfg = cfg(2, AnalyzerKind::ExternalMap);
        assert!(matches!(
            encode(&img, &m, &map_cfg, &none),
            Err(Error::Config(_))
        ));
        let pred_cfg = StegoConfig::new(
            Alpha::new(2).unwrap(),
            AnalyzerKind::Raster,
            PredictorKind::ExternalMap,
        );
        assert!(matches!(
            encode(&img, &m, &pred_cfg, &none),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            decode(&img, &cfg(2, AnalyzerKind::Oracle), &none),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn route_exhausted_while_decoding() {
        // 2x2 image: only two query pixels, cannot hold a 32-bit header
        let img = GrayImage::filled(2, 2, 100).unwrap();
        assert_eq!(
            decode(&img, &cfg(2, AnalyzerKind::Raster), &ExternalMaps::none()),
            Err(Error::FrameUnderflow {
                needed: 32,
                found: 2
            })
        );
    }
}
