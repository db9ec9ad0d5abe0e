use alloc::vec::Vec;

use libm::pow;

use super::witness::WitnessSequences;
use crate::error::{Error, Result};
use crate::solver::is_odd;

/// Relative slack allowed before an inequality counts as violated.
const AUDIT_REL_TOL: f64 = 1e-9;

/// One checked inequality `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditEntry {
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`; negative beyond tolerance means violated.
    pub margin: f64,
}

impl AuditEntry {
    fn new(index: usize, lhs: f64, rhs: f64) -> Self {
        Self {
            index,
            lhs,
            rhs,
            margin: lhs - rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.margin >= -AUDIT_REL_TOL * self.rhs.abs().max(1.0)
    }
}

/// Per-index results of a necessary-condition audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub name: &'static str,
    pub entries: Vec<AuditEntry>,
    pub first_violation: Option<usize>,
}

impl AuditReport {
    fn from_entries(name: &'static str, entries: Vec<AuditEntry>) -> Self {
        let first_violation = entries.iter().find(|e| !e.holds()).map(|e| e.index);
        Self {
            name,
            entries,
            first_violation,
        }
    }

    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.margin).reduce(f64::min)
    }
}

/// Time needed to finish period `i+1` of an odd-`p` search:
///
/// `t_{i+2} ≥ (p+1)(|x_{i+1}|+|x_i|) + |x_i| + 2·x̂_{i-1} + |x_{-1}| - 2p`
///
/// i.e. the productive time `p(|x_{i+1}|+|x_i|-2)` plus at least
/// `|x_j|+|x_{j-1}|` of retreading per period `j ≤ i+1`.
pub fn audit_odd_lower_bound(w: &WitnessSequences, p: u32) -> Result<AuditReport> {
    if !is_odd(p) {
        return Err(Error::InvalidArgument("the odd lower bound needs odd p"));
    }
    w.validate()?;
    let pf = f64::from(p);
    let entries = (0..w.horizon.saturating_sub(1))
        .map(|i| {
            let ii = i as isize;
            let (xi, xn) = (w.x(ii).abs(), w.x(ii + 1).abs());
            let rhs =
                (pf + 1.0) * (xn + xi) + xi + 2.0 * w.x_hat(ii - 1) + w.x(-1).abs() - 2.0 * pf;
            AuditEntry::new(i, w.t(i + 2), rhs)
        })
        .collect();
    Ok(AuditReport::from_entries("odd-lower-bound", entries))
}

/// Minimum growth of a search with ratio at most `claimed_cr`:
/// `|x_i| ≥ (2/c)(c/(c-2))^i`.
pub fn audit_min_growth(w: &WitnessSequences, claimed_cr: f64) -> Result<AuditReport> {
    if !(claimed_cr > 2.0) {
        return Err(Error::InvalidArgument("claimed ratio must exceed 2"));
    }
    w.validate()?;
    let c = claimed_cr;
    let entries = (0..w.horizon)
        .map(|i| {
            let rhs = if c.is_infinite() {
                0.0
            } else {
                2.0 / c * pow(c / (c - 2.0), i as f64)
            };
            AuditEntry::new(i, w.x(i as isize).abs(), rhs)
        })
        .collect();
    Ok(AuditReport::from_entries("min-growth", entries))
}

/// Iterates `y_{i+2} = a·y_{i+1} - b·y_i` from positive seeds and returns
/// the first index with `y_i ≤ 0`, or `None` if the sequence stays positive
/// for `max_steps` indices.
///
/// The sequence is rescaled as it grows; only signs matter.
pub fn recurrence_collapse(
    a: f64,
    b: f64,
    y0: f64,
    y1: f64,
    max_steps: usize,
) -> Result<Option<usize>> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument(
            "coefficients must be positive and finite",
        ));
    }
    if !(y0 > 0.0 && y1 > 0.0 && y0.is_finite() && y1.is_finite()) {
        return Err(Error::InvalidArgument("seeds must be positive and finite"));
    }
    let (mut prev, mut cur) = (y0, y1);
    for i in 2..=max_steps {
        let next = a * cur - b * prev;
        if next <= 0.0 {
            return Ok(Some(i));
        }
        prev = cur;
        cur = next;
        if cur > 1e100 {
            prev /= cur;
            cur = 1.0;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::extract_witness;
    use crate::solver;
    use crate::strategies::odd_search;
    use alloc::vec;
    use proptest::prelude::*;

    fn witness(p: u32, a: f64, rounds: usize) -> WitnessSequences {
        let s = odd_search(p, a, rounds).unwrap();
        extract_witness(&s.trajectory, s.trajectory.end_time()).unwrap()
    }

    #[test]
    fn odd_bound_holds_on_doubling() {
        let w = witness(1, 2.0, 12);
        let rep = audit_odd_lower_bound(&w, 1).unwrap();
        assert!(rep.entries.len() >= 10);
        assert!(rep.passed());
        // t_2 = 14 against 2·(4+2) + 2 + 0 + 1 - 2 = 13.
        assert_eq!(rep.entries[0].rhs, 13.0);
        assert_eq!(rep.entries[0].margin, 1.0);
        assert!(audit_odd_lower_bound(&witness(1, 3.0, 12), 1)
            .unwrap()
            .passed());
    }

    #[test]
    fn odd_bound_margin_is_constant() {
        for p in [1u32, 3, 5, 7] {
            let a = solver::odd_optimal(p).unwrap().a;
            let rep = audit_odd_lower_bound(&witness(p, a, 14), p).unwrap();
            let pf = f64::from(p);
            let want = (pf * a + 1.0 - pf) / a;
            for e in &rep.entries[1..] {
                assert!((e.margin - want).abs() < 1e-9 * e.rhs, "p={p} {e:?}");
            }
        }
    }

    #[test]
    fn shrunk_times_fail_at_reported_index() {
        let mut w = witness(1, 2.0, 10);
        w.t_seq[4] -= 2.0;
        let rep = audit_odd_lower_bound(&w, 1).unwrap();
        assert_eq!(rep.first_violation, Some(2));
        assert!(audit_odd_lower_bound(&w, 2).is_err());
    }

    #[test]
    fn min_growth() {
        let w = witness(1, 2.0, 12);
        assert!(audit_min_growth(&w, 9.0).unwrap().passed());
        let rep = audit_min_growth(&w, 3.0).unwrap();
        assert_eq!(rep.first_violation, Some(3));
        assert!(audit_min_growth(&w, f64::INFINITY).unwrap().passed());
        assert!(audit_min_growth(&w, 2.0).is_err());
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(
            recurrence_collapse(3.0, 9.0, 1.0, 1.0, 100).unwrap(),
            Some(2)
        );
        assert_eq!(
            recurrence_collapse(3.0, 2.0, 1.0, 2.0, 10_000).unwrap(),
            None
        );
        assert!(recurrence_collapse(3.0, 2.0, 0.0, 2.0, 10).is_err());
        assert!(recurrence_collapse(-1.0, 2.0, 1.0, 2.0, 10).is_err());
    }

    #[test]
    fn report_lists_every_index() {
        let w = WitnessSequences {
            x_seq: vec![1.0, -1.0, 2.0, -4.0, 8.0],
            t_seq: vec![1.0, 5.0, 14.0, 20.0],
            horizon: 3,
        };
        let rep = audit_odd_lower_bound(&w, 1).unwrap();
        assert_eq!(rep.entries.len(), 2);
        // t_3 = 20 against 2·(8+4) + 4 + 2·2 + 1 - 2 = 31.
        assert_eq!(rep.first_violation, Some(1));
        assert_eq!(rep.min_margin(), Some(-11.0));
    }

    proptest! {
        #[test]
        fn odd_bound_holds_for_any_growth(p in (0u32..5).prop_map(|k| 2 * k + 1), a in 1.05f64..4.0) {
            let rep = audit_odd_lower_bound(&witness(p, a, 10), p).unwrap();
            prop_assert!(rep.passed(), "{:?}", rep.entries);
        }

        #[test]
        fn complex_roots_always_collapse(p in (0u32..6).prop_map(|k| 2 * k + 1), c in 0.1f64..2.8, y0 in 1e-3f64..1e3, y1 in 1e-3f64..1e3) {
            let s = f64::from(p + 1).sqrt();
            let (a, b) = (c / s + 2.0, 2.0 / f64::from(p + 1) + c / s + 1.0);
            prop_assert!(a * a - 4.0 * b < 0.0);
            prop_assert!(recurrence_collapse(a, b, y0, y1, 1_000_000).unwrap().is_some());
        }
    }
}
