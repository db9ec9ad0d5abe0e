use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Relative slack used when validating speeds of deserialized segments.
const SPEED_RTOL: f64 = 1e-9;

/// What the searcher is doing while it moves along a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Searching in a single mode `k`, `0 <= k < p`, at speed 1.
    Mode(u32),
    /// Idealized thorough sweep: every mode at once, at the reduced speed.
    AllModes,
    /// Transit at speed 1 without detecting anything.
    NoSearch,
}

impl SearchMode {
    /// Whether a pass in this state explores the line in mode `k`.
    #[inline]
    pub fn covers(self, k: u32) -> bool {
        match self {
            SearchMode::Mode(m) => m == k,
            SearchMode::AllModes => true,
            SearchMode::NoSearch => false,
        }
    }
}

/// Time it takes to sweep one unit of length in every mode at once.
///
/// Odd `p` finishes each infinitesimal cell on the far side, so the sweep
/// costs `p`; even `p` has to cross each cell one extra time.
#[inline]
pub fn all_modes_slowdown(p: u32) -> f64 {
    if p % 2 == 1 {
        f64::from(p)
    } else {
        f64::from(p) + 1.0
    }
}

/// One piece of the searcher's piecewise-linear motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionSegment {
    pub t_start: f64,
    pub t_end: f64,
    pub x_start: f64,
    pub x_end: f64,
    pub search: SearchMode,
}

impl MotionSegment {
    #[inline]
    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }

    #[inline]
    pub fn length(&self) -> f64 {
        (self.x_end - self.x_start).abs()
    }

    /// Spatial extent as `(lo, hi)`.
    #[inline]
    pub fn extent(&self) -> (f64, f64) {
        if self.x_start <= self.x_end {
            (self.x_start, self.x_end)
        } else {
            (self.x_end, self.x_start)
        }
    }

    /// Position at time `t`, clamped to the segment.
    pub fn position_at(&self, t: f64) -> f64 {
        if t <= self.t_start {
            self.x_start
        } else if t >= self.t_end {
            self.x_end
        } else {
            let frac = (t - self.t_start) / self.duration();
            self.x_start + frac * (self.x_end - self.x_start)
        }
    }

    /// Time at which the segment passes through `x` (closed extent).
    pub fn pass_time(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.extent();
        if x < lo || x > hi {
            return None;
        }
        if x == self.x_start {
            Some(self.t_start)
        } else if x == self.x_end {
            Some(self.t_end)
        } else {
            let frac = (x - self.x_start) / (self.x_end - self.x_start);
            Some(self.t_start + frac * self.duration())
        }
    }
}

/// Time-stamped motion of a single searcher with `p` search modes.
///
/// Starts at the origin at time 0; segments are contiguous in both time
/// and space. Once built, a trajectory is only read.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    p: u32,
    segments: Vec<MotionSegment>,
}

impl Trajectory {
    /// An empty trajectory: the searcher sits at the origin at time 0.
    pub fn new(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("mode count p must be positive"));
        }
        Ok(Self {
            p,
            segments: Vec::new(),
        })
    }

    /// Builds a trajectory from raw segments, checking every invariant.
    pub fn from_segments(p: u32, segments: Vec<MotionSegment>) -> Result<Self> {
        let mut traj = Self::new(p)?;
        let (mut t, mut x) = (0.0, 0.0);
        for (index, seg) in segments.iter().enumerate() {
            let bad = |reason| Err(Error::InvalidSegment { index, reason });
            if !(seg.t_start.is_finite()
                && seg.t_end.is_finite()
                && seg.x_start.is_finite()
                && seg.x_end.is_finite())
            {
                return bad("non-finite field");
            }
            if seg.t_start != t {
                return bad("not contiguous in time");
            }
            if seg.x_start != x {
                return bad("not contiguous in position");
            }
            if seg.t_end <= seg.t_start {
                return bad("empty or reversed time span");
            }
            if let SearchMode::Mode(k) = seg.search {
                if k >= p {
                    return bad("mode index out of range");
                }
            }
            let dt = seg.duration();
            let scale = dt.max(1.0);
            let expected = match seg.search {
                SearchMode::AllModes => seg.length() * all_modes_slowdown(p),
                _ => seg.length(),
            };
            if (expected - dt).abs() > SPEED_RTOL * scale {
                return bad("speed does not match the search state");
            }
            t = seg.t_end;
            x = seg.x_end;
        }
        traj.segments = segments;
        Ok(traj)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn segments(&self) -> &[MotionSegment] {
        &self.segments
    }

    /// Time at which the last segment ends (0 for an empty trajectory).
    pub fn end_time(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.t_end)
    }

    /// Current (final) position of the searcher.
    pub fn position(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.x_end)
    }

    /// Appends a straight move to `x` in the given search state.
    ///
    /// The duration follows from the distance: speed 1, or the all-modes
    /// slowdown for [`SearchMode::AllModes`]. A move to the current
    /// position is a no-op.
    pub fn travel_to(&mut self, x: f64, search: SearchMode) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("target position must be finite"));
        }
        if let SearchMode::Mode(k) = search {
            if k >= self.p {
                return Err(Error::InvalidArgument("mode index out of range"));
            }
        }
        let from = self.position();
        if x == from {
            return Ok(());
        }
        let length = (x - from).abs();
        let duration = match search {
            SearchMode::AllModes => length * all_modes_slowdown(self.p),
            _ => length,
        };
        let t_start = self.end_time();
        self.segments.push(MotionSegment {
            t_start,
            t_end: t_start + duration,
            x_start: from,
            x_end: x,
            search,
        });
        Ok(())
    }

    /// Position of the searcher at time `t`.
    pub fn position_at(&self, t: f64) -> Result<f64> {
        let end = self.end_time();
        if !(0.0..=end).contains(&t) {
            return Err(Error::OutOfRange { t, end });
        }
        let idx = self.segments.partition_point(|s| s.t_end < t);
        Ok(self.segments.get(idx).map_or(0.0, |s| s.position_at(t)))
    }
}
