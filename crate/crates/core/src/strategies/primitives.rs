//! Cell-level search procedures, as trajectory extensions.

use alloc::vec::Vec;

use libm::ceil;

use crate::coverage::{SearchMode, Trajectory};
use crate::error::{Error, Result};
use crate::solver::{compliant_cell_count, effective_modes, is_odd, validate_compliant};

/// Geometric cell partition used by one compliant thorough search.
#[derive(Debug, Clone, PartialEq)]
pub struct CompliantPlan {
    pub x_init: f64,
    pub delta: f64,
    /// `p` for odd `p`, `p + 1` for even `p`.
    pub p_prime: u32,
    /// `eps·|x_init| / (p' - 1)`, or `delta` when `p' = 1`.
    pub first_width: f64,
    /// Growth `(c + eps - 1) / (p' - 1)` between consecutive cells;
    /// infinite when `p' = 1`.
    pub ratio: f64,
    pub widths: Vec<f64>,
    pub n: usize,
}

impl CompliantPlan {
    /// Cumulative offsets from `x_init`: `0, s_0, s_0 + s_1, …, delta`.
    pub fn offsets(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.n + 1);
        out.push(0.0);
        for w in &self.widths[..self.n - 1] {
            acc += w;
            out.push(acc);
        }
        out.push(self.delta);
        out
    }
}

/// Plans the cells of a compliant thorough search.
///
/// Widths grow geometrically from `eps·|x_init|/(p'-1)` by
/// `(c+eps-1)/(p'-1)`; the last cell is clipped so the widths sum to
/// `delta`. The cell count is the closed-form ceiling of
/// [`compliant_cell_count`].
pub fn compliant_plan(x_init: f64, delta: f64, p: u32, c: f64, eps: f64) -> Result<CompliantPlan> {
    validate_compliant(p, c, eps, x_init.abs(), delta)?;
    let p_prime = effective_modes(p);
    if p_prime == 1 {
        return Ok(CompliantPlan {
            x_init,
            delta,
            p_prime,
            first_width: delta,
            ratio: f64::INFINITY,
            widths: alloc::vec![delta],
            n: 1,
        });
    }
    let pp = f64::from(p_prime);
    let first_width = eps * x_init.abs() / (pp - 1.0);
    let ratio = (c + eps - 1.0) / (pp - 1.0);
    let mut n = compliant_cell_count(p, c, eps, x_init.abs(), delta)?;

    let mut widths = Vec::with_capacity(n);
    let mut s = first_width;
    let mut covered = 0.0;
    for _ in 0..n - 1 {
        widths.push(s);
        covered += s;
        s *= ratio;
    }
    let last = delta - covered;
    if n > 1 && last <= delta * 1e-12 {
        // The ceiling landed one past an exact boundary in floating point.
        n -= 1;
        let tail = widths.pop().expect("n > 1");
        widths.push(tail + last);
    } else {
        widths.push(last);
    }
    Ok(CompliantPlan {
        x_init,
        delta,
        p_prime,
        first_width,
        ratio,
        widths,
        n,
    })
}

fn direction(x_init: f64) -> Result<f64> {
    if x_init == 0.0 || !x_init.is_finite() {
        return Err(Error::InvalidArgument("x_init must be nonzero and finite"));
    }
    Ok(x_init.signum())
}

fn positive(v: f64, what: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(what))
    }
}

impl Trajectory {
    fn require_at(&self, x: f64) -> Result<()> {
        if self.position() == x {
            Ok(())
        } else {
            Err(Error::InvalidArgument("searcher is not at x_init"))
        }
    }

    /// Explores `[near, far]` in every mode with `p` alternating passes.
    /// Ends at `far` for odd `p` and back at `near` for even `p`.
    pub(crate) fn cell_between(&mut self, near: f64, far: f64) -> Result<()> {
        for k in 0..self.p() {
            let to = if k % 2 == 0 { far } else { near };
            self.travel_to(to, SearchMode::Mode(k))?;
        }
        Ok(())
    }

    /// Runs cells over consecutive boundaries; even `p` hops to the far
    /// side of each cell before starting the next one.
    pub(crate) fn cells_through(&mut self, bounds: &[f64]) -> Result<()> {
        for w in bounds.windows(2) {
            self.cell_between(w[0], w[1])?;
            if !is_odd(self.p()) {
                self.travel_to(w[1], SearchMode::NoSearch)?;
            }
        }
        Ok(())
    }

    /// Searches the cell of length `delta` beyond `x_init` (away from the
    /// origin) with one pass per mode, starting from `x_init`.
    pub fn cell_search(&mut self, x_init: f64, delta: f64) -> Result<()> {
        let dir = direction(x_init)?;
        positive(delta, "cell length must be positive")?;
        self.require_at(x_init)?;
        self.cell_between(x_init, x_init + dir * delta)
    }

    /// Fixed-width cells of size `cell` over `delta`, the last one clipped.
    pub fn discrete_thorough_search(&mut self, x_init: f64, delta: f64, cell: f64) -> Result<()> {
        let dir = direction(x_init)?;
        positive(delta, "delta must be positive")?;
        positive(cell, "cell size must be positive")?;
        self.require_at(x_init)?;
        let mut count = ceil(delta / cell) as usize;
        while count > 1 && (count - 1) as f64 * cell >= delta {
            count -= 1;
        }
        let mut bounds: Vec<f64> = (0..count)
            .map(|j| x_init + dir * (j as f64 * cell))
            .collect();
        bounds.push(x_init + dir * delta);
        self.cells_through(&bounds)
    }

    /// Idealized sweep of `delta` in all modes at once.
    pub fn thorough_search(&mut self, x_init: f64, delta: f64) -> Result<()> {
        let dir = direction(x_init)?;
        positive(delta, "delta must be positive")?;
        self.require_at(x_init)?;
        self.travel_to(x_init + dir * delta, SearchMode::AllModes)
    }

    /// Thorough search with geometrically growing cells; takes exactly as
    /// long as [`thorough_search`](Self::thorough_search) on the same
    /// interval. Returns the plan it executed.
    pub fn compliant_thorough_search(
        &mut self,
        x_init: f64,
        delta: f64,
        c: f64,
        eps: f64,
    ) -> Result<CompliantPlan> {
        direction(x_init)?;
        self.require_at(x_init)?;
        let plan = compliant_plan(x_init, delta, self.p(), c, eps)?;
        self.run_plan(&plan, x_init + x_init.signum() * delta)?;
        Ok(plan)
    }

    /// Executes `plan` from the current position, ending exactly at `end`.
    pub(crate) fn run_plan(&mut self, plan: &CompliantPlan, end: f64) -> Result<()> {
        let dir = plan.x_init.signum();
        let offsets = plan.offsets();
        let mut bounds: Vec<f64> = offsets[..plan.n]
            .iter()
            .map(|o| plan.x_init + dir * o)
            .collect();
        bounds.push(end);
        self.cells_through(&bounds)
    }
}
