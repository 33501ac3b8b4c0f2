//! Constant-coefficient linear recurrences
//! `s_(n+1) = lambda_0 s_n + lambda_1 s_(n-1) + ... + lambda_(k-1) s_(n-k+1)`:
//! closed-form generators, exact verification, minimal-order detection and
//! extension by shifted copies.

pub mod closed_form;
mod detect;
pub mod linsolve;
mod verify;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{serde_rational, Rational};

pub use closed_form::{
    kbonacci_classical, kbonacci_q, ninebonacci_pq, ninebonacci_qlimit, pentanacci_pq, predicted_order_pq,
};
pub use detect::{detect_in_sequence, detect_minimal_recurrence, fit_at_order};
pub use verify::{residual, verify_recurrence, verify_recurrence_window};

/// Order `k` relation with coefficients `lambda_0 .. lambda_(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    order: usize,
    #[serde(with = "serde_rational::vec")]
    coefficients: Vec<Rational>,
}

impl Recurrence {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain("a recurrence needs at least one coefficient".into()));
        }
        Ok(Recurrence {
            order: coefficients.len(),
            coefficients,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Rational> {
        self.coefficients
    }

    /// Characteristic polynomial `x^k - lambda_0 x^(k-1) - ... - lambda_(k-1)`,
    /// coefficients listed from the leading term down.
    pub fn characteristic(&self) -> Vec<Rational> {
        std::iter::once(Rational::one())
            .chain(self.coefficients.iter().map(|c| -c))
            .collect()
    }

    fn from_characteristic(chr: &[Rational]) -> Self {
        debug_assert!(chr[0].is_one());
        Recurrence {
            order: chr.len() - 1,
            coefficients: chr[1..].iter().map(|c| -c).collect(),
        }
    }

    /// Adds `m_j` times the relation shifted by `n -> n - j`, for each
    /// multiplier in order, to the original relation.
    ///
    /// The result has order `k + multipliers.len()` and holds wherever `self`
    /// does. With a single `kappa` the coefficients are
    /// `(l0 - kappa, l1 + l0 kappa, ..., l_(k-1) + l_(k-2) kappa, l_(k-1) kappa)`.
    pub fn extend(&self, multipliers: &[Rational]) -> Result<Recurrence> {
        if multipliers.is_empty() {
            return Err(Error::Domain("extend needs at least one multiplier".into()));
        }
        let base = self.characteristic();
        let mut row = base.clone();
        row.resize(base.len() + multipliers.len(), Rational::from_integer(0.into()));
        for (j, m) in multipliers.iter().enumerate() {
            let shift = j + 1;
            for (i, c) in base.iter().enumerate() {
                row[i + shift] += m * c;
            }
        }
        Ok(Recurrence::from_characteristic(&row))
    }
}

impl<'de> Deserialize<'de> for Recurrence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            #[serde(with = "serde_rational::vec")]
            coefficients: Vec<Rational>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.order != raw.coefficients.len() {
            return Err(D::Error::custom(format!(
                "order {} does not match {} coefficients",
                raw.order,
                raw.coefficients.len()
            )));
        }
        Recurrence::new(raw.coefficients).map_err(D::Error::custom)
    }
}

/// Convenience for [`Recurrence::extend`].
pub fn extend_recurrence(rec: &Recurrence, multipliers: &[Rational]) -> Result<Recurrence> {
    rec.extend(multipliers)
}

/// Where a verification first failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub residual: Rational,
}

/// Result of checking a relation over a window of levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// True only when every residual is zero and the window certifies the
    /// identity for all levels.
    pub holds: bool,
    /// No residual was nonzero, but the window was too short to certify.
    pub inconclusive: bool,
    /// Inclusive `(n_start, n_end)`.
    pub window: (u64, u64),
    /// Number of consecutive levels needed for certification.
    pub certification_length: usize,
    pub first_failure: Option<Failure>,
}

impl VerificationReport {
    pub(crate) fn from_residuals<I>(window: (u64, u64), certification_length: usize, residuals: I) -> Self
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        use num_traits::Zero;
        let first_failure = residuals
            .into_iter()
            .find(|(_, r)| !r.is_zero())
            .map(|(n, residual)| Failure { n, residual });
        let points = (window.1 + 1).saturating_sub(window.0) as usize;
        let certified = points >= certification_length;
        VerificationReport {
            holds: first_failure.is_none() && certified,
            inconclusive: first_failure.is_none() && !certified,
            window,
            certification_length,
            first_failure,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, ratio};

    fn rec(cs: &[i64]) -> Recurrence {
        Recurrence::new(cs.iter().copied().map(int).collect()).unwrap()
    }

    #[test]
    fn extend_single_kappa_pattern() {
        let base = rec(&[3, -3, 1]);
        let k = ratio(2, 5);
        let ext = base.extend(std::slice::from_ref(&k)).unwrap();
        let l: Vec<Rational> = base.coefficients().to_vec();
        assert_eq!(
            ext.coefficients(),
            &[&l[0] - &k, &l[1] + &l[0] * &k, &l[2] + &l[1] * &k, &l[2] * &k,]
        );
    }

    #[test]
    fn extend_by_zero_appends_zero() {
        let base = rec(&[24, -215, 900, -1764, 1296]);
        let ext = base.extend(&[int(0)]).unwrap();
        let mut expect = base.coefficients().to_vec();
        expect.push(int(0));
        assert_eq!(ext.coefficients(), expect.as_slice());
    }

    #[test]
    fn tribonacci_to_tetranacci_with_unit_kappa() {
        // phi_(n+1) = 2 phi_n + 0 phi_(n-1) - 2 phi_(n-2) + phi_(n-3)
        let ext = rec(&[3, -3, 1]).extend(&[int(1)]).unwrap();
        assert_eq!(ext, rec(&[2, 0, -2, 1]));
    }

    #[test]
    fn json_round_trip_and_guards() {
        let r = rec(&[3, -3, 1]);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"order":3,"coefficients":["3","-3","1"]}"#);
        assert_eq!(serde_json::from_str::<Recurrence>(&text).unwrap(), r);
        assert!(serde_json::from_str::<Recurrence>(r#"{"order":2,"coefficients":["1"]}"#).is_err());
        assert!(Recurrence::new(vec![]).is_err());
        assert!(r.extend(&[]).is_err());
    }
}
