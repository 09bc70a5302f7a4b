pub mod analytic;
pub mod cli;
pub mod construction;
pub mod geometry;
pub mod hilbert;
pub mod measures;
pub mod quad;
pub mod simulate;
pub mod stats;
pub mod transform;
pub mod uniqueness;
