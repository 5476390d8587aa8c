//! Predictability scores for query pixels and the embedding route derived
//! from them.
//!
//! Scores follow one convention everywhere: larger means more predictable.
//! Variance-like quantities are negated on the way in.

use crate::codec::Alpha;
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::image_io::{MapData, MapFile, MapKind};
use crate::lattice::{is_context, neighbours4, LatticePartition};
use crate::predictor::{check_dims, ResidualPlane};

/// One finite score per query pixel, raster order of the query list.
#[derive(Debug, Clone, PartialEq)]
pub struct ScorePlane(Vec<f64>);

impl ScorePlane {
    pub fn new(scores: Vec<f64>) -> Result<Self> {
        if let Some(index) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(Self(scores))
    }

    /// Every query pixel equally predictable; routes in raster order.
    pub fn uniform(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Order in which query pixels are visited during embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route(Vec<usize>);

impl Route {
    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Negated population variance of each query pixel's in-bounds context
/// neighbours.
pub fn analyze_local_variance(img: &GrayImage, part: &LatticePartition) -> Result<ScorePlane> {
    check_dims(img.dims(), part)?;
    let (w, h) = part.dims();
    let scores = part
        .query_idx()
        .iter()
        .map(|&(r, c)| {
            let (mut n, mut sum, mut sum_sq) = (0i64, 0i64, 0i64);
            for (nr, nc) in neighbours4(r, c, w, h) {
                let v = i64::from(img.get(nr, nc));
                n += 1;
                sum += v;
                sum_sq += v * v;
            }
            // N*sum(x^2) - (sum x)^2 is exact; one rounding at the division
            let variance = (n * sum_sq - sum * sum) as f64 / (n * n) as f64;
            -variance
        })
        .collect();
    Ok(ScorePlane(scores))
}

/// Gathers an external score map at the query pixels, values used verbatim.
pub fn analyze_external(map: &MapFile, part: &LatticePartition) -> Result<ScorePlane> {
    check_dims(map.dims(), part)?;
    let MapData::Score(values) = map.data() else {
        return Err(Error::WrongKind {
            expected: MapKind::Score,
            found: map.kind(),
        });
    };
    let w = map.width();
    ScorePlane::new(
        part.query_idx()
            .iter()
            .map(|&(r, c)| f64::from(values[r * w + c]))
            .collect(),
    )
}

#[inline]
fn is_carrier(residual: f64, alpha: Alpha) -> bool {
    residual.abs() < f64::from(alpha.get())
}

/// `true` where `|residual| < alpha`, i.e. where the residual is a carrier.
pub fn ground_truth_map(res: &ResidualPlane, alpha: Alpha) -> Vec<bool> {
    res.values()
        .iter()
        .map(|&e| e.abs() < alpha.as_i32())
        .collect()
}

/// The ground-truth map as route scores (1.0 carrier, 0.0 otherwise).
pub fn oracle_scores(res: &ResidualPlane, alpha: Alpha) -> ScorePlane {
    ScorePlane(
        ground_truth_map(res, alpha)
            .into_iter()
            .map(|c| if c { 1.0 } else { 0.0 })
            .collect(),
    )
}

/// Full-image supervised target, row-major.
///
/// Query pixels are thresholded directly. A context pixel takes the mean of
/// its in-bounds query neighbours' residuals, thresholded the same way.
pub fn ground_truth_full_image(
    res: &ResidualPlane,
    part: &LatticePartition,
    alpha: Alpha,
) -> Result<Vec<bool>> {
    if res.len() != part.query_len() {
        return Err(Error::LengthMismatch {
            left: res.len(),
            right: part.query_len(),
        });
    }
    let (w, h) = part.dims();
    let mut full = vec![0i32; w * h];
    for (&(r, c), &e) in part.query_idx().iter().zip(res.values()) {
        full[r * w + c] = e;
    }
    let mut truth = vec![false; w * h];
    for r in 0..h {
        for c in 0..w {
            truth[r * w + c] = if is_context(r, c) {
                let (sum, n) = neighbours4(r, c, w, h).fold((0i64, 0i64), |(s, n), (nr, nc)| {
                    (s + i64::from(full[nr * w + nc]), n + 1)
                });
                is_carrier(sum as f64 / n as f64, alpha)
            } else {
                full[r * w + c].abs() < alpha.as_i32()
            };
        }
    }
    Ok(truth)
}

/// Full-image binary map as a QMAP score file (0.0 / 1.0).
pub fn truth_to_map(truth: &[bool], width: usize, height: usize) -> Result<MapFile> {
    MapFile::score(
        width,
        height,
        truth.iter().map(|&t| if t { 1.0 } else { 0.0 }).collect(),
    )
}

/// Descending score, ties by ascending raster index.
pub fn make_route(scores: &ScorePlane) -> Route {
    let s = scores.values();
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]).then(a.cmp(&b)));
    Route(order)
}

/// Marks the `k` highest-ranked query pixels.
pub fn binarize_top_k(scores: &ScorePlane, k: usize) -> Vec<bool> {
    let mut out = vec![false; scores.len()];
    for &i in make_route(scores).order().iter().take(k) {
        out[i] = true;
    }
    out
}

/// Marks the top `floor(p * |Q|)` query pixels in route order.
///
/// A product within rounding error of an integer counts as that integer,
/// so `p = k / |Q|` marks exactly `k` pixels.
pub fn binarize_at_proportion(scores: &ScorePlane, p: f64) -> Vec<bool> {
    let p = p.clamp(0.0, 1.0);
    let exact = p * scores.len() as f64;
    let nearest = exact.round();
    let k = if (exact - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        exact.floor()
    };
    binarize_top_k(scores, (k as usize).min(scores.len()))
}
