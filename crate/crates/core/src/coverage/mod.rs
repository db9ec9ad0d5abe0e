//! Searcher trajectories and per-mode coverage of the line.
//!
//! A [`Trajectory`] is a time-ordered list of [`MotionSegment`]s. Each
//! segment either explores one mode at speed 1, sweeps all modes at once
//! at the reduced speed of an idealized thorough search, or is plain
//! transit. Queries use exact segment arithmetic; coverage is closed, so a
//! pass covers both endpoints of its spatial extent.

mod query;
mod trajectory;

pub use query::{Interval, IslandSnapshot};
pub use trajectory::{all_modes_slowdown, MotionSegment, SearchMode, Trajectory};
