//! Searcher strategies.
//!
//! [`primitives`] holds the cell-level procedures (single cell, fixed-width
//! cells, idealized thorough sweep, geometric "compliant" cells). The
//! round-based strategies in this module alternate direction every round,
//! moving the explored frontier from `a^(i-1)` to `a^(i+1)` in direction
//! `(-1)^i`. They are infinite loops in principle and are generated up to
//! a round limit here.

pub mod primitives;
mod rounds;

pub use primitives::{compliant_plan, CompliantPlan};
pub use rounds::{
    build, even_search, odd_search, practical_search, RoundGeometry, RoundLog, Strategy,
};

use crate::error::{Error, Result};
use crate::solver::{self, effective_modes, is_odd};

/// Which round-based algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Odd `p`: one thorough sweep per round.
    OddOptimal,
    /// Even `p`: a thorough sweep over a fraction `r` of the round
    /// interval, then the rest as one cell.
    EvenOptimal,
    /// [`Variant::OddOptimal`] with compliant cells instead of sweeps.
    PracticalOdd,
    /// [`Variant::EvenOptimal`] with compliant cells instead of sweeps.
    PracticalEven,
}

impl Variant {
    pub fn for_odd_p(self) -> bool {
        matches!(self, Variant::OddOptimal | Variant::PracticalOdd)
    }

    pub fn is_practical(self) -> bool {
        matches!(self, Variant::PracticalOdd | Variant::PracticalEven)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::OddOptimal => "OddOptimal",
            Variant::EvenOptimal => "EvenOptimal",
            Variant::PracticalOdd => "PracticalOdd",
            Variant::PracticalEven => "PracticalEven",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Variant::OddOptimal,
            Variant::EvenOptimal,
            Variant::PracticalOdd,
            Variant::PracticalEven,
        ]
        .into_iter()
        .find(|v| v.name().eq_ignore_ascii_case(name))
    }
}

/// Parameters of a round-based strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyParams {
    pub p: u32,
    pub variant: Variant,
    /// Growth factor, `> 1`.
    pub a: f64,
    /// Split coefficient in `[0, 1]`; even variants only.
    pub r: Option<f64>,
    /// Allowed ratio margin; practical variants only.
    pub eps: Option<f64>,
    /// Target ratio handed to the compliant cells; practical variants only.
    pub c: Option<f64>,
}

impl StrategyParams {
    /// Odd-`p` rounds with growth factor `a`.
    pub fn odd(p: u32, a: f64) -> Result<Self> {
        let params = Self {
            p,
            variant: Variant::OddOptimal,
            a,
            r: None,
            eps: None,
            c: None,
        };
        params.validate()?;
        Ok(params)
    }

    /// Even-`p` rounds with growth factor `a` and split `r`.
    pub fn even(p: u32, a: f64, r: f64) -> Result<Self> {
        let params = Self {
            p,
            variant: Variant::EvenOptimal,
            a,
            r: Some(r),
            eps: None,
            c: None,
        };
        params.validate()?;
        Ok(params)
    }

    /// The optimal idealized strategy for `p`.
    pub fn optimal(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidArgument("mode count p must be positive"));
        }
        if is_odd(p) {
            Self::odd(p, solver::odd_optimal(p)?.a)
        } else {
            let e = solver::even_optimal(p, solver::DEFAULT_ROOT_TOL)?;
            Self::even(p, e.a, e.r)
        }
    }

    /// The optimal strategy with every sweep replaced by compliant cells
    /// targeting the optimal ratio plus `eps`.
    pub fn practical(p: u32, eps: f64) -> Result<Self> {
        let base = Self::optimal(p)?;
        let c = solver::optimal_cr(p)?;
        let params = Self {
            variant: if is_odd(p) {
                Variant::PracticalOdd
            } else {
                Variant::PracticalEven
            },
            eps: Some(eps),
            c: Some(c),
            ..base
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks parity, ranges and the presence of variant-specific fields.
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidArgument("mode count p must be positive"));
        }
        if self.variant.for_odd_p() != is_odd(self.p) {
            return Err(Error::ParityMismatch {
                p: self.p,
                expected_odd: self.variant.for_odd_p(),
            });
        }
        if !(self.a > 1.0 && self.a.is_finite()) {
            return Err(Error::InvalidArgument("growth factor a must exceed 1"));
        }
        match (self.variant.for_odd_p(), self.r) {
            (false, Some(r)) if (0.0..=1.0).contains(&r) => {}
            (false, _) => return Err(Error::InvalidArgument("split r must lie in [0, 1]")),
            (true, Some(_)) => return Err(Error::InvalidArgument("split r is for even p only")),
            (true, None) => {}
        }
        if self.variant.is_practical() {
            let (Some(eps), Some(c)) = (self.eps, self.c) else {
                return Err(Error::InvalidArgument("practical variants need eps and c"));
            };
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(Error::InvalidArgument("eps must be positive and finite"));
            }
            if !(c.is_finite() && c + eps > f64::from(effective_modes(self.p))) {
                return Err(Error::InvalidArgument("c + eps must exceed p'"));
            }
        } else if self.eps.is_some() || self.c.is_some() {
            return Err(Error::InvalidArgument(
                "eps and c are for practical variants only",
            ));
        }
        Ok(())
    }

    /// Split coefficient, 0 for odd variants.
    pub fn split(&self) -> f64 {
        self.r.unwrap_or(0.0)
    }
}
