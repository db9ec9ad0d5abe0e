use alloc::vec;
use alloc::vec::Vec;

use crate::coverage::{SearchMode, Trajectory};
use crate::error::{Error, Result};

/// Period boundaries and island endpoints of a trajectory.
///
/// Period `i` runs from `t_i` to `t_{i+1}`; during it the central island
/// grows only in direction `(-1)^i`, reaching `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSequences {
    /// `x_{-2} = 1, x_{-1} = -1, x_0, x_1, …`
    pub x_seq: Vec<f64>,
    /// `t_0, t_1, …, t_horizon`
    pub t_seq: Vec<f64>,
    /// Number of complete periods.
    pub horizon: usize,
}

impl WitnessSequences {
    /// `x_i` for `i ≥ -2`.
    pub fn x(&self, i: isize) -> f64 {
        self.x_seq[(i + 2) as usize]
    }

    /// `t_i` for `i ≥ 0`.
    pub fn t(&self, i: usize) -> f64 {
        self.t_seq[i]
    }

    /// Sum of `|x_j|` for `0 ≤ j ≤ i`; zero for `i < 0`.
    pub fn x_hat(&self, i: isize) -> f64 {
        (0..=i).map(|j| self.x(j).abs()).sum()
    }

    /// Checks the structural invariants: seeds, alternating signs, strictly
    /// growing sides, and periods of at least 2 time units.
    pub fn validate(&self) -> Result<()> {
        let bad = |index, reason| Err(Error::MalformedWitness { index, reason });
        if self.x_seq.len() != self.horizon + 2 || self.t_seq.len() != self.horizon + 1 {
            return bad(0, "sequence lengths do not match the horizon");
        }
        if self.x_seq[0] != 1.0 || self.x_seq[1] != -1.0 {
            return bad(0, "seeds must be x_-2 = 1 and x_-1 = -1");
        }
        if self.x_seq.iter().chain(&self.t_seq).any(|v| !v.is_finite()) {
            return bad(0, "non-finite value");
        }
        for i in 0..self.horizon {
            let x = self.x(i as isize);
            if (x > 0.0) != (i % 2 == 0) {
                return bad(i, "sign of x_i must be (-1)^i");
            }
            if x.abs() <= self.x(i as isize - 2).abs() {
                return bad(i, "|x_i| must exceed |x_{i-2}|");
            }
        }
        for (i, w) in self.t_seq.windows(2).enumerate() {
            if w[1] - w[0] < 2.0 {
                return bad(i, "a period must last at least 2 time units");
            }
        }
        Ok(())
    }
}

/// First time the searcher stands at `x = 1`.
fn first_reach_one(traj: &Trajectory) -> Option<f64> {
    traj.segments().iter().find_map(|s| s.pass_time(1.0))
}

/// Extracts the witness sequences of `traj` up to `horizon_time`.
///
/// `t_0` is the first time the searcher reaches 1. Period `i` ends when the
/// island starts growing on side `i+1`, that is at the one-sided exploration
/// limit of the side's endpoint, and `x_i` is the endpoint on side `i` at
/// that moment. Only periods ending by `horizon_time` are emitted.
pub fn extract_witness(traj: &Trajectory, horizon_time: f64) -> Result<WitnessSequences> {
    if !(horizon_time >= 0.0 && horizon_time <= traj.end_time()) {
        return Err(Error::OutOfRange {
            t: horizon_time,
            end: traj.end_time(),
        });
    }
    if traj
        .segments()
        .iter()
        .all(|s| s.search == SearchMode::NoSearch)
    {
        return Err(Error::NeverReachesOne);
    }
    let t0 = first_reach_one(traj).ok_or(Error::NeverReachesOne)?;
    if t0 > horizon_time {
        return Err(Error::NeverReachesOne);
    }
    let mut x_seq: Vec<f64> = vec![1.0, -1.0];
    let mut t_seq = vec![t0];
    let mut snap = traj.coverage_islands(t0)?;
    let mut i = 0;
    loop {
        let t_i = t_seq[i];
        let Some(t_next) = traj.outer_limit_time(snap.end(i + 1)) else {
            break;
        };
        if t_next > horizon_time {
            break;
        }
        if t_next <= t_i {
            return Err(Error::AmbiguousSide { period: i });
        }
        if t_next - t_i < 2.0 {
            return Err(Error::MalformedWitness {
                index: i,
                reason: "a period must last at least 2 time units",
            });
        }
        snap = traj.coverage_islands(t_next)?;
        let x_i = snap.end(i);
        if x_i.abs() <= x_seq[i].abs() {
            return Err(Error::MalformedWitness {
                index: i,
                reason: "|x_i| must exceed |x_{i-2}|",
            });
        }
        x_seq.push(x_i);
        t_seq.push(t_next);
        i += 1;
    }
    let w = WitnessSequences {
        x_seq,
        t_seq,
        horizon: i,
    };
    w.validate()?;
    Ok(w)
}
