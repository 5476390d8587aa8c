//! How well a score plane separates carriers from non-carriers.

use crate::analyzer::{binarize_top_k, make_route, ScorePlane};
use crate::error::{Error, Result};

fn check_len(scores: &ScorePlane, truth: &[bool]) -> Result<()> {
    if scores.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: scores.len(),
            right: truth.len(),
        });
    }
    Ok(())
}

/// Precision and recall when exactly as many pixels are called predictable
/// as there are true carriers. The two are then equal by construction.
pub fn precision_recall_at_match(scores: &ScorePlane, truth: &[bool]) -> Result<(f64, f64)> {
    check_len(scores, truth)?;
    let positives = truth.iter().filter(|&&t| t).count();
    if positives == 0 {
        return Err(Error::NoPositives);
    }
    let called = binarize_top_k(scores, positives);
    let tp = called.iter().zip(truth).filter(|&(&c, &t)| c && t).count();
    let fp = positives - tp;
    let fn_ = positives - tp;
    let precision = tp as f64 / (tp + fp) as f64;
    let recall = tp as f64 / (tp + fn_) as f64;
    Ok((precision, recall))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// `(false_positive_rate, true_positive_rate)` from (0, 0) to (1, 1).
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// ROC over every distinct score threshold; equal scores form one step.
pub fn roc_auc(scores: &ScorePlane, truth: &[bool]) -> Result<RocCurve> {
    check_len(scores, truth)?;
    let positives = truth.iter().filter(|&&t| t).count();
    let negatives = truth.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::DegenerateTruth);
    }
    let s = scores.values();
    let order = make_route(scores);
    let order = order.order();

    let (p, n) = (positives as f64, negatives as f64);
    let mut points = vec![(0.0, 0.0)];
    // doubled trapezoid area in count units, exact in u128
    let mut area2: u128 = 0;
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let threshold = s[order[i]];
        let (tp0, fp0) = (tp, fp);
        while i < order.len() && s[order[i]] == threshold {
            if truth[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        area2 += (fp - fp0) as u128 * (tp + tp0) as u128;
        points.push((fp as f64 / n, tp as f64 / p));
    }
    let auc = area2 as f64 / (2.0 * p * n);
    Ok(RocCurve { points, auc })
}
