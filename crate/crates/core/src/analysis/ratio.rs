use alloc::vec::Vec;

use libm::pow;

use crate::coverage::Trajectory;
use crate::error::{Error, Result};
use crate::strategies::{RoundGeometry, Strategy, StrategyParams};

/// Default relative outward offset of critical targets.
pub const DEFAULT_ETA: f64 = 1e-9;

/// Exploration time and ratio of one target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRatio {
    pub x: f64,
    pub time: f64,
    pub ratio: f64,
}

/// Empirical competitive ratio of a trajectory over a target set.
#[derive(Debug, Clone, PartialEq)]
pub struct CrReport {
    pub params: StrategyParams,
    /// Sorted by `x`.
    pub targets: Vec<TargetRatio>,
    pub empirical_sup: f64,
    pub analytic_limit: f64,
    pub rounds_used: usize,
}

/// Limiting worst ratios of one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundRatio {
    pub index: usize,
    /// Worst ratio just past the round's starting frontier (for practical
    /// variants: the worst compliant cell start).
    pub phase1: f64,
    /// Worst ratio just past the end of the thorough phase, for even
    /// variants with a single-cell remainder.
    pub phase2: Option<f64>,
}

impl RoundRatio {
    pub fn worst(&self) -> f64 {
        self.phase2.map_or(self.phase1, |p2| p2.max(self.phase1))
    }
}

fn offset(geom: &RoundGeometry, magnitude: f64, eta: f64) -> f64 {
    geom.sign * magnitude.max(1.0) * (1.0 + eta)
}

fn sort_dedup(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Points just past every round's critical boundaries, all with `|x| ≥ 1`.
///
/// Odd variants: the starting frontier `a^(i-1)` of round `i`. Even variants
/// add the end `m_i` of the thorough phase. Practical variants use every
/// compliant cell start instead of the frontier alone.
pub fn worst_case_targets(params: &StrategyParams, rounds: usize, eta: f64) -> Result<Vec<f64>> {
    params.validate()?;
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be at least 1"));
    }
    if !(eta > 0.0 && eta < 1e-3) {
        return Err(Error::InvalidArgument("eta must lie in (0, 1e-3)"));
    }
    let mut xs = Vec::new();
    for geom in RoundGeometry::all(params, rounds) {
        xs.push(offset(&geom, geom.inner, eta));
        if geom.outer > geom.mid {
            xs.push(offset(&geom, geom.mid, eta));
        }
        if let Some(plan) = geom.plan(params)? {
            for o in &plan.offsets()[..plan.n] {
                xs.push(offset(&geom, geom.inner + o, eta));
            }
        }
    }
    Ok(sort_dedup(xs))
}

/// `per_round` evenly spaced targets over each round's fresh interval
/// `(max(a^(i-1), 1), a^(i+1)]`.
pub fn grid_targets(params: &StrategyParams, rounds: usize, per_round: usize) -> Result<Vec<f64>> {
    params.validate()?;
    if per_round == 0 {
        return Err(Error::InvalidArgument("per_round must be positive"));
    }
    let mut xs = Vec::with_capacity(rounds * per_round);
    for geom in RoundGeometry::all(params, rounds) {
        let lo = geom.inner.max(1.0);
        let span = geom.outer - lo;
        if span <= 0.0 {
            continue;
        }
        for k in 1..per_round {
            xs.push(geom.sign * (lo + span * k as f64 / per_round as f64));
        }
        xs.push(geom.sign * geom.outer);
    }
    Ok(sort_dedup(xs))
}

/// Exploration times and ratios of `targets` on `traj`.
pub fn empirical_cr(
    params: &StrategyParams,
    traj: &Trajectory,
    rounds_used: usize,
    targets: &[f64],
) -> Result<CrReport> {
    let mut out = Vec::with_capacity(targets.len());
    for &x in targets {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("targets must be finite"));
        }
        let time = traj
            .exploration_time(x)
            .ok_or(Error::InsufficientHorizon { target: x })?;
        let ratio = if x.abs() < 1.0 { 0.0 } else { time / x.abs() };
        out.push(TargetRatio { x, time, ratio });
    }
    out.sort_by(|a, b| a.x.total_cmp(&b.x));
    let empirical_sup = out.iter().map(|t| t.ratio).fold(0.0, f64::max);
    Ok(CrReport {
        params: *params,
        targets: out,
        empirical_sup,
        analytic_limit: analytic_cr_limit(params)?,
        rounds_used,
    })
}

/// Limits of the phase-1 and phase-2 worst ratios as the round index grows.
///
/// For odd variants the second value equals the first.
pub fn phase_limits(params: &StrategyParams) -> Result<(f64, f64)> {
    params.validate()?;
    let a = params.a;
    let p = f64::from(params.p);
    let g = a * a - 1.0;
    if params.variant.for_odd_p() {
        let l = 1.0 + ((p + 1.0) * g + 2.0) / (a - 1.0);
        return Ok((l, l));
    }
    let r = params.split();
    let phase1 = 1.0 + 2.0 / (a - 1.0) + (p + 2.0 * r) * (a + 1.0);
    let phase2 = if r < 1.0 {
        (a / (a - 1.0)) * p * g / (r * g + 1.0) + 2.0 * a / (a - 1.0) - 1.0
    } else {
        phase1
    };
    Ok((phase1, phase2))
}

/// Supremum of the ratio over all targets, for the infinite strategy.
///
/// Practical variants are within `eps` of their target ratio.
pub fn analytic_cr_limit(params: &StrategyParams) -> Result<f64> {
    let (l1, l2) = phase_limits(params)?;
    Ok(l1.max(l2) + params.eps.unwrap_or(0.0))
}

/// Closed-form worst ratios of rounds `1..=rounds` for the idealized
/// strategy with the same `a` and `r`.
pub fn cr_convergence_series(params: &StrategyParams, rounds: usize) -> Result<Vec<RoundRatio>> {
    params.validate()?;
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be at least 1"));
    }
    let a = params.a;
    let p = f64::from(params.p);
    let g = a * a - 1.0;
    let odd = params.variant.for_odd_p();
    let r = params.split();
    let k = if odd {
        (p + 1.0) * g + 2.0
    } else {
        2.0 + (p + 2.0 * r) * g
    };
    Ok((1..=rounds)
        .map(|i| {
            let scale = pow(a, i as f64 - 1.0);
            let before = (pow(a, i as f64) - 1.0) / (a * (a - 1.0)) * k;
            let phase1 = 1.0 + before / scale;
            let phase2 = (!odd && r < 1.0).then(|| {
                let m = scale * (r * g + 1.0);
                let t = before + scale + (p + 1.0) * (m - scale) + p * (scale * a * a - m);
                t / m
            });
            RoundRatio {
                index: i,
                phase1,
                phase2,
            }
        })
        .collect())
}

/// Worst per-round ratios replayed on a generated strategy, from one-sided
/// exploration-time limits. Rounds whose frontier lies inside `(-1, 1)` are
/// skipped.
pub fn replay_round_ratios(strategy: &Strategy) -> Result<Vec<RoundRatio>> {
    let traj = &strategy.trajectory;
    let limit = |magnitude: f64, sign: f64| -> Result<f64> {
        let x = sign * magnitude;
        traj.outer_limit_time(x)
            .map(|t| t / magnitude)
            .ok_or(Error::InsufficientHorizon { target: x })
    };
    let mut out = Vec::new();
    for log in &strategy.rounds {
        let g = log.geometry;
        if g.inner < 1.0 {
            continue;
        }
        let mut phase1 = limit(g.inner, g.sign)?;
        for &start in &log.cell_starts {
            phase1 = phase1.max(limit(start, g.sign)?);
        }
        let phase2 = if g.outer > g.mid {
            Some(limit(g.mid, g.sign)?)
        } else {
            None
        };
        out.push(RoundRatio {
            index: g.index,
            phase1,
            phase2,
        });
    }
    Ok(out)
}
