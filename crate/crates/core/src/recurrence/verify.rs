use num_traits::Zero;

use super::{Recurrence, VerificationReport};
use crate::error::{Error, Result};
use crate::numbers::Rational;
use crate::structure::{SequenceKind, StructureFunction};

/// `s_(n+1) - sum_i lambda_i s_(n-i)`; needs `k - 1 <= n` and `n + 1 < values.len()`.
pub fn residual(values: &[Rational], rec: &Recurrence, n: usize) -> Rational {
    let k = rec.order();
    assert!(n + 1 >= k && n + 1 < values.len(), "level {n} outside sequence");
    rec.coefficients()
        .iter()
        .enumerate()
        .fold(values[n + 1].clone(), |acc, (i, l)| {
            if l.is_zero() {
                acc
            } else {
                acc - l * &values[n - i]
            }
        })
}

/// Checks `rec` against `sf` over its certification window
/// `n = k-1 ..= k-1+D`, where `D` bounds the dimension of the sequence space.
pub fn verify_recurrence(sf: &StructureFunction, rec: &Recurrence, apply_to: SequenceKind) -> VerificationReport {
    let start = rec.order() as u64 - 1;
    let end = start + sf.sequence_space_dimension() as u64;
    verify_recurrence_window(sf, rec, apply_to, start, end).expect("certification window starts at k-1")
}

/// Checks `rec` on an explicit inclusive window. Windows shorter than the
/// certification length can only fail or come back inconclusive.
pub fn verify_recurrence_window(
    sf: &StructureFunction,
    rec: &Recurrence,
    apply_to: SequenceKind,
    start: u64,
    end: u64,
) -> Result<VerificationReport> {
    let k = rec.order() as u64;
    if start + 1 < k {
        return Err(Error::Coverage(format!(
            "window start {start} precedes the first admissible level {}",
            k - 1
        )));
    }
    if end < start {
        return Err(Error::Coverage(format!("empty window ({start}, {end})")));
    }
    let values = sf.sequence(apply_to, end as usize + 2);
    let residuals = (start..=end).map(|n| (n, residual(&values, rec, n as usize)));
    Ok(VerificationReport::from_residuals(
        (start, end),
        sf.sequence_space_dimension(),
        residuals,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::int;
    use crate::recurrence::{kbonacci_classical, pentanacci_pq};

    #[test]
    fn quadratic_is_tribonacci_not_fibonacci() {
        let sf = StructureFunction::classical(vec![int(1)]).unwrap();
        let ok = verify_recurrence(&sf, &kbonacci_classical(3).unwrap(), SequenceKind::Phi);
        assert!(ok.holds && !ok.inconclusive);
        assert_eq!(ok.window, (2, 5));
        let bad = verify_recurrence(&sf, &kbonacci_classical(2).unwrap(), SequenceKind::Phi);
        assert!(!bad.holds && !bad.inconclusive);
        let fail = bad.first_failure.unwrap();
        // phi = n + n^2: phi_2 - 2 phi_1 + phi_0 = 6 - 4 = 2
        assert_eq!((fail.n, fail.residual), (1, int(2)));
    }

    #[test]
    fn pentanacci_on_energy() {
        let sf = StructureFunction::pq_deformed(int(2), int(3), vec![int(1)]).unwrap();
        let r = verify_recurrence(&sf, &pentanacci_pq(&int(2), &int(3)).unwrap(), SequenceKind::Energy);
        assert!(r.holds);
        assert_eq!(r.certification_length, 5);
    }

    #[test]
    fn short_window_is_inconclusive() {
        let sf = StructureFunction::classical(vec![int(1)]).unwrap();
        let rec = kbonacci_classical(3).unwrap();
        let r = verify_recurrence_window(&sf, &rec, SequenceKind::Phi, 2, 3).unwrap();
        assert!(!r.holds && r.inconclusive && r.first_failure.is_none());
        // a false relation still fails conclusively on a short window
        let r = verify_recurrence_window(&sf, &kbonacci_classical(2).unwrap(), SequenceKind::Phi, 1, 1).unwrap();
        assert!(!r.holds && !r.inconclusive);
        assert!(verify_recurrence_window(&sf, &rec, SequenceKind::Phi, 1, 9).is_err());
        assert!(verify_recurrence_window(&sf, &rec, SequenceKind::Phi, 5, 4).is_err());
    }
}
