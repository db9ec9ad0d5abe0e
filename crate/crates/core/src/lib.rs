//! Multimodal search on a line.
//!
//! A single searcher starting at the origin looks for a target that can
//! only be detected by passing over it in the right one of `p` modes. This
//! crate builds searcher trajectories for the round-based strategies,
//! computes their optimal parameters, evaluates competitive ratios both
//! analytically and by replaying traces, and audits the necessary
//! conditions any strategy must satisfy.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod coverage;
pub mod solver;
pub mod strategies;

mod error;

pub use error::{Error, Result};
