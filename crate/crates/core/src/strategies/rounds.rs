use alloc::vec::Vec;

use libm::pow;

use super::primitives::{compliant_plan, CompliantPlan};
use super::StrategyParams;
use crate::coverage::{SearchMode, Trajectory};
use crate::error::{Error, Result};

/// Where one round goes. Magnitudes are distances from the origin; the
/// round moves in direction `sign`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundGeometry {
    pub index: usize,
    pub sign: f64,
    /// `a^(i-1)`: the frontier the round starts from.
    pub inner: f64,
    /// `a^(i+1)`: the frontier the round ends at.
    pub outer: f64,
    /// End of the thorough phase, `a^(i-1)(r(a²-1)+1)`; equals `outer`
    /// for odd variants.
    pub mid: f64,
}

impl RoundGeometry {
    /// Every round of `params` up to `rounds`, sharing one table of powers
    /// so consecutive rounds in the same direction meet exactly.
    pub fn all(params: &StrategyParams, rounds: usize) -> Vec<RoundGeometry> {
        let powers: Vec<f64> = (0..rounds + 2)
            .map(|j| pow(params.a, j as f64 - 1.0))
            .collect();
        (0..rounds)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let (inner, outer) = (powers[i], powers[i + 2]);
                let mid = if params.variant.for_odd_p() {
                    outer
                } else {
                    let r = params.split();
                    ((1.0 - r) * sign * inner + r * sign * outer).abs()
                };
                RoundGeometry {
                    index: i,
                    sign,
                    inner,
                    outer,
                    mid,
                }
            })
            .collect()
    }

    /// Compliant-cell plan replacing this round's thorough phase, if the
    /// variant is practical and the phase is non-empty.
    pub fn plan(&self, params: &StrategyParams) -> Result<Option<CompliantPlan>> {
        if !params.variant.is_practical() || self.mid == self.inner {
            return Ok(None);
        }
        let (Some(c), Some(eps)) = (params.c, params.eps) else {
            return Err(Error::InvalidArgument("practical variants need eps and c"));
        };
        compliant_plan(
            self.sign * self.inner,
            self.mid - self.inner,
            params.p,
            c,
            eps,
        )
        .map(Some)
    }
}

/// What happened in one round of a generated strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundLog {
    pub geometry: RoundGeometry,
    pub t_start: f64,
    pub t_end: f64,
    /// Number of compliant cell searches in the thorough phase (0 when the
    /// phase is an idealized sweep or empty).
    pub compliant_cells: usize,
    /// Distance from the origin where each compliant cell starts.
    pub cell_starts: Vec<f64>,
}

impl RoundLog {
    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }
}

/// A generated strategy: its parameters, trajectory and per-round log.
#[derive(Debug, Clone, PartialEq)]
pub struct Strategy {
    pub params: StrategyParams,
    pub trajectory: Trajectory,
    pub rounds: Vec<RoundLog>,
}

/// Generates the first `round_limit` rounds of the strategy.
pub fn build(params: &StrategyParams, round_limit: usize) -> Result<Strategy> {
    params.validate()?;
    if round_limit == 0 {
        return Err(Error::InvalidArgument("round limit must be at least 1"));
    }
    let mut traj = Trajectory::new(params.p)?;
    let mut logs = Vec::with_capacity(round_limit);
    for geom in RoundGeometry::all(params, round_limit) {
        let t_start = traj.end_time();
        let near = geom.sign * geom.inner;
        let mid = geom.sign * geom.mid;
        let far = geom.sign * geom.outer;
        traj.travel_to(near, SearchMode::NoSearch)?;

        let mut cell_starts = Vec::new();
        if geom.mid > geom.inner {
            match geom.plan(params)? {
                Some(plan) => {
                    cell_starts = plan.offsets()[..plan.n]
                        .iter()
                        .map(|o| geom.inner + o)
                        .collect();
                    traj.run_plan(&plan, mid)?;
                }
                None => traj.travel_to(mid, SearchMode::AllModes)?,
            }
        }
        if !params.variant.for_odd_p() && geom.outer > geom.mid {
            // The remainder is one cell; even p ends it back at `mid`.
            traj.cell_between(mid, far)?;
        }
        traj.travel_to(0.0, SearchMode::NoSearch)?;
        logs.push(RoundLog {
            geometry: geom,
            t_start,
            t_end: traj.end_time(),
            compliant_cells: cell_starts.len(),
            cell_starts,
        });
    }
    Ok(Strategy {
        params: *params,
        trajectory: traj,
        rounds: logs,
    })
}

/// Odd-`p` strategy with growth factor `a`.
pub fn odd_search(p: u32, a: f64, round_limit: usize) -> Result<Strategy> {
    build(&StrategyParams::odd(p, a)?, round_limit)
}

/// Even-`p` strategy with growth factor `a` and split `r`.
pub fn even_search(p: u32, a: f64, r: f64, round_limit: usize) -> Result<Strategy> {
    build(&StrategyParams::even(p, a, r)?, round_limit)
}

/// Optimal strategy for `p` with finite cells, within `eps` of optimal.
pub fn practical_search(p: u32, eps: f64, round_limit: usize) -> Result<Strategy> {
    build(&StrategyParams::practical(p, eps)?, round_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn doubling_round_times() {
        let s = odd_search(1, 2.0, 4).unwrap();
        let durations: Vec<f64> = s.rounds.iter().map(RoundLog::duration).collect();
        assert_eq!(durations, [4.0, 8.0, 16.0, 32.0]);
        let ends: Vec<f64> = s.rounds.iter().map(|r| r.t_end).collect();
        assert_eq!(ends, [4.0, 12.0, 28.0, 60.0]);
        assert_eq!(s.trajectory.segments().len(), 12);
        let t = &s.trajectory;
        assert_eq!(t.position_at(0.0).unwrap(), 0.0);
        assert_eq!(t.position_at(0.5).unwrap(), 0.5);
        assert_eq!(t.position_at(2.0).unwrap(), 2.0);
        assert_eq!(t.exploration_time(1.0), Some(1.0));
        assert_eq!(t.exploration_time(-1.0), Some(5.0));
        // Just past 2 in round 2: T -> 14, CR -> 7.
        let x = 2.0 + 1e-9;
        let cr = t.exploration_time(x).unwrap() / x;
        assert!((cr - 7.0).abs() < 1e-8);
    }

    #[test]
    fn odd_round_duration_formula() {
        for (p, a) in [(1u32, 1.5), (3, 1.0 + 0.5f64.sqrt()), (5, 2.5), (7, 1.5)] {
            let s = odd_search(p, a, 12).unwrap();
            let pf = f64::from(p);
            for log in &s.rounds {
                let i = log.geometry.index as i32;
                let want = a.powi(i - 1) * ((pf + 1.0) * (a * a - 1.0) + 2.0);
                assert!(rel(log.duration(), want) < 1e-12, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn odd_island_invariant() {
        let s = odd_search(3, 1.7, 8).unwrap();
        for log in &s.rounds {
            let snap = s.trajectory.coverage_islands(log.t_end).unwrap();
            let i = log.geometry.index as i32;
            let (ahead, behind) = (1.7f64.powi(i + 1), 1.7f64.powi(i).max(1.0));
            let (this_side, other) = if i % 2 == 0 {
                (snap.pos_end, -snap.neg_end)
            } else {
                (-snap.neg_end, snap.pos_end)
            };
            assert!(rel(this_side, ahead) < 1e-12);
            assert!(rel(other, behind) < 1e-12, "i={i}: {other} vs {behind}");
        }
    }

    #[test]
    fn even_round_structure_and_time() {
        let e = solver::even_optimal(2, 1e-12).unwrap();
        let s = even_search(2, e.a, e.r, 6).unwrap();
        let kinds: Vec<SearchMode> = s.trajectory.segments()[..5]
            .iter()
            .map(|g| g.search)
            .collect();
        assert_eq!(
            kinds,
            [
                SearchMode::NoSearch,
                SearchMode::AllModes,
                SearchMode::Mode(0),
                SearchMode::Mode(1),
                SearchMode::NoSearch
            ]
        );
        let k = 2.0 + (2.0 + 2.0 * e.r) * (e.a * e.a - 1.0);
        let mut total = 0.0;
        for log in &s.rounds {
            let i = log.geometry.index as i32;
            assert!(rel(log.duration(), e.a.powi(i - 1) * k) < 1e-12);
            total += log.duration();
            let cumulative = (e.a.powi(i + 1) - 1.0) / (e.a * (e.a - 1.0)) * k;
            assert!(rel(total, cumulative) < 1e-12);
            assert!(rel(log.t_end, cumulative) < 1e-12);
            let m = e.a.powi(i - 1) * (e.r * (e.a * e.a - 1.0) + 1.0);
            assert!(rel(log.geometry.mid, m) < 1e-12);
        }
    }

    #[test]
    fn even_phase_two_ends_at_mid() {
        let s = even_search(4, 1.7, 0.3, 3).unwrap();
        let segs = s.trajectory.segments();
        // transit, sweep, 4 passes, return
        assert_eq!(segs.len(), 3 * 7);
        let g = s.rounds[1].geometry;
        assert_eq!(segs[7 + 5].x_end, -g.mid);
    }

    #[test]
    fn even_without_thorough_phase() {
        let s = even_search(2, 1.9, 0.0, 3).unwrap();
        assert!(s
            .trajectory
            .segments()
            .iter()
            .all(|g| g.search != SearchMode::AllModes));
        assert_eq!(s.trajectory.segments().len(), 3 * 4);
        let s = even_search(2, 1.9, 1.0, 3).unwrap();
        assert_eq!(s.trajectory.segments().len(), 3 * 3);
    }

    #[test]
    fn practical_rounds_match_idealized_time() {
        for (p, eps) in [(3u32, 0.1), (1, 0.5), (2, 0.1), (4, 0.01)] {
            let prac = practical_search(p, eps, 6).unwrap();
            let ideal = build(&StrategyParams::optimal(p).unwrap(), 6).unwrap();
            for (a, b) in prac.rounds.iter().zip(&ideal.rounds) {
                assert!(rel(a.duration(), b.duration()) < 1e-12);
                assert!(a.compliant_cells >= 1);
                assert!(a.compliant_cells <= solver::practical_cell_ceiling(p, eps) || p == 1);
            }
            assert!(prac
                .trajectory
                .segments()
                .iter()
                .all(|g| g.search != SearchMode::AllModes));
        }
    }

    #[test]
    fn practical_cell_ceiling_example() {
        let s = practical_search(3, 0.1, 4).unwrap();
        let ceiling = libm::ceil(libm::log2(4.0 + 18.0 * 3.0 / 0.1)) as usize;
        assert!(s.rounds.iter().all(|r| r.compliant_cells <= ceiling));
    }

    #[test]
    fn parity_is_checked() {
        assert!(odd_search(2, 2.0, 3).is_err());
        assert!(even_search(3, 2.0, 0.5, 3).is_err());
        assert!(odd_search(1, 2.0, 0).is_err());
        assert!(practical_search(3, -1.0, 3).is_err());
    }
}
