//! Simulated homodyne records and criteria estimated from them.

mod batch;
mod draw;
mod estimate;

pub use batch::{read_batch, write_batch, SampleBatch, CSV_HEADER};
pub use draw::{draw_samples, draw_samples_labeled, CHUNK_ROWS};
pub use estimate::{
    estimate_criteria, estimate_criteria_at, plug_in_report, sample_moments, Estimate,
    EstimatedCriteria, JACKKNIFE_BLOCKS,
};
