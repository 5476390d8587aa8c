//! Distortion, capacity and classification metrics, plus rate–distortion sweeps.

mod classification;
mod metrics;
mod sweep;

pub use classification::{precision_recall_at_match, roc_auc, RocCurve};
pub use metrics::{
    embedding_rate, five_number_summary, psnr, residual_mode, residual_variance, FiveNumberSummary,
};
pub use sweep::{
    message_bits_for_rate, pseudorandom_message, rd_sweep, sweep_csv, RateDistortionPoint,
    SweepRow, XorShift64Star, CSV_HEADER, DEFAULT_SEED,
};
