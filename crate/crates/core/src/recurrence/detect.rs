use log::warn;
use num_traits::Zero;

use super::linsolve::{solve, Solution};
use super::verify::residual;
use super::Recurrence;
use crate::error::{Error, Result};
use crate::numbers::Rational;
use crate::structure::{SequenceKind, StructureFunction};

/// Solves the `k` equations at `n = k-1 ..= 2k-2` for an order-`k` relation.
///
/// Rank-deficient systems return the particular solution with free
/// coefficients set to zero; callers must still check it on a longer window.
pub fn fit_at_order(values: &[Rational], k: usize) -> Option<Vec<Rational>> {
    if k == 0 || values.len() < 2 * k {
        return None;
    }
    let (rows, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = (k - 1..=2 * k - 2)
        .map(|n| ((0..k).map(|i| values[n - i].clone()).collect(), values[n + 1].clone()))
        .unzip();
    match solve(&rows, &rhs, k) {
        Solution::Unique(x) | Solution::Particular { x, .. } => Some(x),
        Solution::Inconsistent => None,
    }
}

/// Smallest-order relation satisfied by `values`, trying `k = 1..=max_order`.
///
/// A candidate is accepted once its residual vanishes at `window` consecutive
/// levels starting from `n = k-1`. Orders whose window would run past the end
/// of `values` are not tried.
pub fn detect_in_sequence(values: &[Rational], max_order: usize, window: usize) -> Option<Recurrence> {
    for k in 1..=max_order {
        if values.len() < (k + window).max(2 * k) {
            break;
        }
        let Some(coeffs) = fit_at_order(values, k) else {
            continue;
        };
        let rec = Recurrence::new(coeffs).expect("k >= 1");
        let clean = (k - 1..k - 1 + window).all(|n| residual(values, &rec, n).is_zero());
        if clean {
            return Some(rec);
        }
    }
    None
}

/// Minimal-order constant-coefficient relation for `phi` or `E` of `sf`,
/// searching orders up to `max_order`. `None` means no relation of order
/// `<= max_order` exists.
///
/// Minimality holds for the concrete parameters of `sf`. When p,q bases
/// `p^a q^b` coincide the order can drop below the generic value; a warning
/// is logged in that case.
pub fn detect_minimal_recurrence(
    sf: &StructureFunction,
    max_order: usize,
    apply_to: SequenceKind,
) -> Result<Option<Recurrence>> {
    if max_order == 0 {
        return Err(Error::Domain("max_order must be >= 1".into()));
    }
    let collisions = sf.basis_collisions();
    if !collisions.is_empty() {
        warn!(
            "{} has {} coincident exponential bases (first: p^{}q^{} = p^{}q^{}); \
             the detected order may be below the generic prediction",
            sf.bracket(),
            collisions.len(),
            collisions[0].0 .0,
            collisions[0].0 .1,
            collisions[0].1 .0,
            collisions[0].1 .1,
        );
    }
    let cancelled = sf.cancelled_bases();
    if !cancelled.is_empty() {
        warn!(
            "{} with mu = {:?}: the exponential term(s) {} cancel; the detected order drops by {}",
            sf.bracket(),
            sf.mu().iter().map(ToString::to_string).collect::<Vec<_>>(),
            cancelled
                .iter()
                .map(|b| format!("({b})^n"))
                .collect::<Vec<_>>()
                .join(", "),
            cancelled.len(),
        );
    }
    let window = sf.sequence_space_dimension() + 1;
    let values = sf.sequence(apply_to, max_order + window + 1);
    Ok(detect_in_sequence(&values, max_order, window))
}
