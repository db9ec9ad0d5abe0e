//! Closed-form and root-finding parameter computations.
//!
//! Odd `p` has a closed-form optimum. For even `p` the optimal competitive
//! ratio `c*` is the unique root of
//!
//! ```text
//! D_p(c) = (c - 1)^4 - 4p (c + 1)^2 (c - p - 1)
//! ```
//!
//! on `[2p + 1 + sqrt(8p), inf)`, and it always lies in the bracket
//! `[2p + 3 + sqrt(8(p - 1)), 2p + 3 + sqrt(8p)]`, so plain bisection on
//! that bracket is enough.

use alloc::vec::Vec;

use libm::{ceil, log, log2, sqrt};

use crate::error::{Error, Result};

/// Default bisection tolerance on `c*`.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[inline]
pub fn is_odd(p: u32) -> bool {
    p % 2 == 1
}

/// `p` for odd `p`, `p + 1` for even `p`: the time per unit length of a
/// thorough sweep.
#[inline]
pub fn effective_modes(p: u32) -> u32 {
    if is_odd(p) {
        p
    } else {
        p + 1
    }
}

fn require_odd(p: u32) -> Result<()> {
    if is_odd(p) {
        Ok(())
    } else {
        Err(Error::ParityMismatch {
            p,
            expected_odd: true,
        })
    }
}

fn require_even(p: u32) -> Result<()> {
    if p >= 2 && !is_odd(p) {
        Ok(())
    } else {
        Err(Error::ParityMismatch {
            p,
            expected_odd: false,
        })
    }
}

/// Evaluates `D_p(c)` in factored form.
pub fn discriminant_poly(p: u32, c: f64) -> f64 {
    let p = f64::from(p);
    let cm1 = c - 1.0;
    let cp1 = c + 1.0;
    let sq = cm1 * cm1;
    sq * sq - 4.0 * p * cp1 * cp1 * (c - p - 1.0)
}

/// `2p + 1 + sqrt(8p)`: the start of the domain on which `D_p` is studied.
pub fn discriminant_domain_start(p: u32) -> f64 {
    let p = f64::from(p);
    2.0 * p + 1.0 + sqrt(8.0 * p)
}

/// Closed-form bracket `(2p+3+sqrt(8(p-1)), 2p+3+sqrt(8p))` around `c*`.
pub fn even_bracket(p: u32) -> (f64, f64) {
    let pf = f64::from(p);
    let lo = 2.0 * pf + 3.0 + sqrt(8.0 * (pf - 1.0).max(0.0));
    let hi = 2.0 * pf + 3.0 + sqrt(8.0 * pf);
    (lo, hi)
}

/// A sign transition of `D_p` between two adjacent grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignChange {
    pub from: f64,
    pub to: f64,
    pub negative_to_positive: bool,
}

/// Result of scanning `D_p` for sign changes.
#[derive(Debug, Clone, PartialEq)]
pub struct SignChangeReport {
    pub p: u32,
    pub start: f64,
    pub end: f64,
    pub step: f64,
    pub changes: Vec<SignChange>,
}

impl SignChangeReport {
    /// Exactly one transition, and it goes from negative to positive.
    pub fn passed(&self) -> bool {
        self.changes.len() == 1 && self.changes[0].negative_to_positive
    }
}

/// Scans `D_p` on `[2p+1+sqrt(8p), hi + 10]` with the given step and
/// records every sign transition.
pub fn sign_change_audit(p: u32, grid_step: f64) -> Result<SignChangeReport> {
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::InvalidArgument("grid step must be positive"));
    }
    let start = discriminant_domain_start(p);
    let end = even_bracket(p).1 + 10.0;
    let steps = ceil((end - start) / grid_step) as usize;
    let mut changes = Vec::new();
    let mut prev_c = start;
    let mut prev_pos = discriminant_poly(p, start) >= 0.0;
    for i in 1..=steps {
        let c = (start + i as f64 * grid_step).min(end);
        let pos = discriminant_poly(p, c) >= 0.0;
        if pos != prev_pos {
            changes.push(SignChange {
                from: prev_c,
                to: c,
                negative_to_positive: pos,
            });
        }
        prev_c = c;
        prev_pos = pos;
    }
    Ok(SignChangeReport {
        p,
        start,
        end,
        step: grid_step,
        changes,
    })
}

/// Optimal parameters for odd `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalOdd {
    pub p: u32,
    pub a: f64,
    pub cr: f64,
}

/// `a = 1 + sqrt(2/(p+1))`, `CR = 2p + 3 + sqrt(8(p+1))`.
pub fn odd_optimal(p: u32) -> Result<OptimalOdd> {
    require_odd(p)?;
    let pf = f64::from(p);
    Ok(OptimalOdd {
        p,
        a: 1.0 + sqrt(2.0 / (pf + 1.0)),
        cr: 2.0 * pf + 3.0 + sqrt(8.0 * (pf + 1.0)),
    })
}

/// Optimal parameters for even `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalEven {
    pub p: u32,
    pub c_star: f64,
    pub a: f64,
    pub r: f64,
    pub bracket: (f64, f64),
}

/// Split coefficient that balances the two phase ratios for growth `a`.
///
/// Positive root of `2(a²-1) r² + (p(a²-1)+2) r + p(1-a) = 0`.
pub fn balanced_split(p: u32, a: f64) -> f64 {
    let pf = f64::from(p);
    let g = a * a - 1.0;
    let lin = pf * g + 2.0;
    (sqrt(lin * lin + 8.0 * pf * g * (a - 1.0)) - 2.0) / (4.0 * g) - pf / 4.0
}

/// Bisects `D_p` on its guaranteed bracket until the bracket is at most
/// `tol` wide, then derives `a` and `r`.
pub fn even_optimal(p: u32, tol: f64) -> Result<OptimalEven> {
    require_even(p)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("root tolerance must be positive"));
    }
    let bracket = even_bracket(p);
    let (mut lo, mut hi) = bracket;
    debug_assert!(discriminant_poly(p, lo) < 0.0 && discriminant_poly(p, hi) > 0.0);
    // 200 halvings exhaust any f64 bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if discriminant_poly(p, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c_star = 0.5 * (lo + hi);
    let pf = f64::from(p);
    let a = (c_star - 1.0) * (c_star - 1.0) / (2.0 * pf * (c_star + 1.0));
    let r = balanced_split(p, a);
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidArgument("split coefficient left [0, 1]"));
    }
    Ok(OptimalEven {
        p,
        c_star,
        a,
        r,
        bracket,
    })
}

/// Optimal competitive ratio for any `p >= 1`.
pub fn optimal_cr(p: u32) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidArgument("mode count p must be positive"));
    }
    if is_odd(p) {
        Ok(odd_optimal(p)?.cr)
    } else {
        Ok(even_optimal(p, DEFAULT_ROOT_TOL)?.c_star)
    }
}

/// Coarse lower bound on the competitive ratio.
///
/// Odd `p`: the tight `2p+3+sqrt(8(p+1))`. Even `p`: the odd bound for
/// `p - 1` modes, `2p+1+sqrt(8p)`, since dropping a mode only helps.
pub fn lower_bound_floor(p: u32) -> f64 {
    let pf = f64::from(p);
    if is_odd(p) {
        2.0 * pf + 3.0 + sqrt(8.0 * (pf + 1.0))
    } else {
        discriminant_domain_start(p)
    }
}

/// Number of cells a compliant thorough search uses on an interval of
/// length `delta` starting at distance `x_init_abs` from the origin.
///
/// `n = ceil( ln(1 + (c+eps-p')·delta / (eps·|x|)) / ln((c+eps-1)/(p'-1)) )`.
/// With `p' = 1` (a single mode) one cell covers the whole interval.
pub fn compliant_cell_count(
    p: u32,
    c: f64,
    eps: f64,
    x_init_abs: f64,
    delta: f64,
) -> Result<usize> {
    validate_compliant(p, c, eps, x_init_abs, delta)?;
    let pp = f64::from(effective_modes(p));
    if pp == 1.0 {
        return Ok(1);
    }
    let growth = (c + eps - 1.0) / (pp - 1.0);
    let span = 1.0 + (c + eps - pp) * delta / (eps * x_init_abs);
    Ok((ceil(log(span) / log(growth)) as usize).max(1))
}

pub(crate) fn validate_compliant(
    p: u32,
    c: f64,
    eps: f64,
    x_init_abs: f64,
    delta: f64,
) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidArgument("mode count p must be positive"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument("eps must be positive and finite"));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument("delta must be positive and finite"));
    }
    if !(x_init_abs > 0.0 && x_init_abs.is_finite()) {
        return Err(Error::InvalidArgument("x_init must be nonzero and finite"));
    }
    if !(c.is_finite() && c + eps > f64::from(effective_modes(p))) {
        return Err(Error::InvalidArgument(
            "c + eps must exceed p' for the cells to grow",
        ));
    }
    Ok(())
}

/// Per-round ceiling on compliant cell calls at the optimal ratio:
/// `ceil(log2(4 + 18p/eps))` for odd `p`, `ceil(log2(81 + 400p/eps))` for
/// even `p`.
pub fn practical_cell_ceiling(p: u32, eps: f64) -> usize {
    let pf = f64::from(p);
    let arg = if is_odd(p) {
        4.0 + 18.0 * pf / eps
    } else {
        81.0 + 400.0 * pf / eps
    };
    ceil(log2(arg)) as usize
}
