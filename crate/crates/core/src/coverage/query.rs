use alloc::vec;
use alloc::vec::Vec;

use super::trajectory::{SearchMode, Trajectory};
use crate::error::{Error, Result};

/// A closed interval of the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Fully explored parts of the line at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct IslandSnapshot {
    pub t: f64,
    /// Endpoint of the central island on the negative side.
    pub neg_end: f64,
    /// Endpoint of the central island on the positive side.
    pub pos_end: f64,
    /// All maximal fully-explored intervals, sorted and disjoint.
    pub islands: Vec<Interval>,
}

impl IslandSnapshot {
    /// Central-island endpoint on side `side` (even: positive, odd: negative).
    pub fn end(&self, side: usize) -> f64 {
        if side.is_multiple_of(2) {
            self.pos_end
        } else {
            self.neg_end
        }
    }
}

impl Trajectory {
    /// Earliest time at which `x` is covered in mode `k`, if ever.
    pub fn mode_cover_time(&self, x: f64, k: u32) -> Option<f64> {
        if k >= self.p() {
            return None;
        }
        self.segments()
            .iter()
            .filter(|s| s.search.covers(k))
            .find_map(|s| s.pass_time(x))
    }

    /// Time at which `x` has been explored in all modes.
    ///
    /// Points with `|x| < 1` count as explored from the start.
    pub fn exploration_time(&self, x: f64) -> Option<f64> {
        if x.abs() < 1.0 {
            return Some(0.0);
        }
        self.all_mode_time(|s| s.pass_time(x))
    }

    /// One-sided limit of [`exploration_time`](Self::exploration_time) as
    /// the query point approaches `x` from the side away from the origin.
    ///
    /// This is the exploration time of "`x` plus an arbitrarily small
    /// outward offset", and the instant at which an island ending at `x`
    /// starts to grow past it. `x = 0` is treated as positive.
    pub fn outer_limit_time(&self, x: f64) -> Option<f64> {
        if x.abs() < 1.0 {
            return Some(0.0);
        }
        let outward_positive = x >= 0.0;
        self.all_mode_time(|s| {
            let (lo, hi) = s.extent();
            let reaches_beyond = if outward_positive {
                lo <= x && x < hi
            } else {
                lo < x && x <= hi
            };
            if reaches_beyond {
                s.pass_time(x)
            } else {
                None
            }
        })
    }

    /// Max over modes of the earliest per-mode time reported by `hit`.
    fn all_mode_time(
        &self,
        hit: impl Fn(&super::trajectory::MotionSegment) -> Option<f64>,
    ) -> Option<f64> {
        let p = self.p() as usize;
        let mut first = vec![f64::NAN; p];
        let mut missing = p;
        for seg in self.segments() {
            let modes = match seg.search {
                SearchMode::NoSearch => continue,
                SearchMode::Mode(k) if first[k as usize].is_nan() => k as usize..k as usize + 1,
                SearchMode::Mode(_) => continue,
                SearchMode::AllModes => 0..p,
            };
            let Some(t) = hit(seg) else { continue };
            for slot in &mut first[modes] {
                if slot.is_nan() {
                    *slot = t;
                    missing -= 1;
                }
            }
            if missing == 0 {
                // Segments are time-ordered, so the last one filled is the max.
                return Some(t);
            }
        }
        None
    }

    /// Maximal fully-explored intervals at time `t`.
    pub fn coverage_islands(&self, t: f64) -> Result<IslandSnapshot> {
        let end = self.end_time();
        if !(0.0..=end).contains(&t) {
            return Err(Error::OutOfRange { t, end });
        }
        let p = self.p() as usize;
        let mut shared = Vec::new();
        let mut per_mode: Vec<Vec<Interval>> = vec![Vec::new(); p];
        for seg in self.segments().iter().take_while(|s| s.t_start <= t) {
            let reach = seg.position_at(t);
            let piece = Interval::new(seg.x_start.min(reach), seg.x_start.max(reach));
            match seg.search {
                SearchMode::NoSearch => {}
                SearchMode::AllModes => shared.push(piece),
                SearchMode::Mode(k) => per_mode[k as usize].push(piece),
            }
        }

        let mut explored: Option<Vec<Interval>> = None;
        for mut pieces in per_mode {
            pieces.extend_from_slice(&shared);
            let covered = merge(pieces);
            explored = Some(match explored {
                None => covered,
                Some(acc) => intersect(&acc, &covered),
            });
        }
        let mut islands = explored.unwrap_or_default();
        // (-1, 1) is explored by convention.
        islands.push(Interval::new(-1.0, 1.0));
        let islands = merge(islands);
        let central = islands
            .iter()
            .find(|iv| iv.contains(0.0))
            .copied()
            .expect("the unit interval is always present");
        Ok(IslandSnapshot {
            t,
            neg_end: central.lo,
            pos_end: central.hi,
            islands,
        })
    }
}

/// Sorts and merges overlapping or touching intervals.
fn merge(mut pieces: Vec<Interval>) -> Vec<Interval> {
    pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
    for iv in pieces {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// Intersection of two sorted, disjoint interval lists.
fn intersect(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = a[i].lo.max(b[j].lo);
        let hi = a[i].hi.min(b[j].hi);
        if lo <= hi {
            out.push(Interval::new(lo, hi));
        }
        if a[i].hi < b[j].hi {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}
