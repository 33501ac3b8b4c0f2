//! Level-dependent two-term coefficients `E_(n+1) = lambda_n E_n + rho_n E_(n-1)`.
//!
//! Two constructions are provided. The ratio method solves
//!
//! ```text
//! phi(n+1) = lambda_n phi(n)   + rho_n phi(n-1)
//! phi(n+2) = lambda_n phi(n+1) + rho_n phi(n)
//! ```
//!
//! for each `n`; averaging the two lines gives the energy relation. The
//! recursive method fixes `rho_n = lambda_(n-1)` and `lambda_0 = c`, so that
//! `lambda_(n+1) = (E_(n+2) - E_n lambda_n) / E_(n+1)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{format_rational, serde_rational, Rational};
use crate::recurrence::VerificationReport;
use crate::structure::StructureFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiMethod {
    Ratio,
    Recursive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPoint {
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    #[serde(with = "serde_rational")]
    pub rho: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiCoefficientTrack {
    pub method: QuasiMethod,
    /// `lambda_0` for the recursive method.
    #[serde(
        rename = "c",
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_rational::option"
    )]
    pub initial_c: Option<Rational>,
    /// Consecutive levels in increasing `n`.
    pub points: Vec<QuasiPoint>,
}

impl QuasiCoefficientTrack {
    pub fn lambda_seq(&self) -> Vec<(u64, Rational)> {
        self.points.iter().map(|p| (p.n, p.lambda.clone())).collect()
    }

    pub fn rho_seq(&self) -> Vec<(u64, Rational)> {
        self.points.iter().map(|p| (p.n, p.rho.clone())).collect()
    }

    /// Inclusive `(first n, last n)`, `None` when empty.
    pub fn range(&self) -> Option<(u64, u64)> {
        Some((self.points.first()?.n, self.points.last()?.n))
    }

    pub fn point(&self, n: u64) -> Option<&QuasiPoint> {
        let first = self.points.first()?.n;
        self.points.get(n.checked_sub(first)? as usize).filter(|p| p.n == n)
    }

    /// CSV with header `n,lambda,rho`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,lambda,rho\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{}\n",
                p.n,
                format_rational(&p.lambda),
                format_rational(&p.rho)
            ));
        }
        out
    }
}

/// Ratio-method pair from four consecutive values `phi(n-1) .. phi(n+2)`.
pub fn quasi_ratio_from_values(n: u64, phi: [&Rational; 4]) -> Result<(Rational, Rational)> {
    let [prev, cur, next, next2] = phi;
    if cur.is_zero() {
        return Err(Error::SingularPoint {
            n,
            expression: "phi(n)",
        });
    }
    let denom = cur * cur - next * prev;
    if denom.is_zero() {
        return Err(Error::SingularPoint {
            n,
            expression: "phi(n)^2 - phi(n+1) phi(n-1)",
        });
    }
    let rho = (next2 * cur - next * next) / denom;
    let lambda = (next - &rho * prev) / cur;
    Ok((lambda, rho))
}

/// `(lambda_n, rho_n)` solving both structure-function equations at `n`.
pub fn quasi_ratio(sf: &StructureFunction, n: u64) -> Result<(Rational, Rational)> {
    if n < 1 {
        return Err(Error::Domain("quasi_ratio needs n >= 1".into()));
    }
    let v: Vec<Rational> = (n - 1..=n + 2).map(|m| sf.phi(m)).collect();
    quasi_ratio_from_values(n, [&v[0], &v[1], &v[2], &v[3]])
}

/// Ratio-method track on `n_start ..= n_end`; fails at the first singular level.
pub fn quasi_ratio_track(sf: &StructureFunction, n_start: u64, n_end: u64) -> Result<QuasiCoefficientTrack> {
    check_range(n_start, n_end)?;
    let points = (n_start..=n_end)
        .map(|n| quasi_ratio(sf, n).map(|(lambda, rho)| QuasiPoint { n, lambda, rho }))
        .collect::<Result<_>>()?;
    Ok(QuasiCoefficientTrack {
        method: QuasiMethod::Ratio,
        initial_c: None,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Singularity {
    pub n: u64,
    pub expression: &'static str,
}

/// Ratio-method results over a range, singular levels collected rather than fatal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiRangeReport {
    pub points: Vec<QuasiPoint>,
    pub singular: Vec<Singularity>,
}

pub fn quasi_ratio_range(sf: &StructureFunction, n_start: u64, n_end: u64) -> Result<QuasiRangeReport> {
    check_range(n_start, n_end)?;
    let mut report = QuasiRangeReport {
        points: Vec::new(),
        singular: Vec::new(),
    };
    for n in n_start..=n_end {
        match quasi_ratio(sf, n) {
            Ok((lambda, rho)) => report.points.push(QuasiPoint { n, lambda, rho }),
            Err(Error::SingularPoint { n, expression }) => report.singular.push(Singularity { n, expression }),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn check_range(n_start: u64, n_end: u64) -> Result<()> {
    if n_start < 1 || n_end < n_start {
        return Err(Error::Domain(format!(
            "level range ({n_start}, {n_end}) must satisfy 1 <= start <= end"
        )));
    }
    Ok(())
}

/// Recursive-method `lambda_0 ..= lambda_(n_max)`.
fn recursive_lambdas(sf: &StructureFunction, c: &Rational, n_max: u64) -> Result<Vec<Rational>> {
    let mut lambdas = vec![c.clone()];
    let mut e = [sf.energy(0), sf.energy(1)];
    for n in 0..n_max {
        let e2 = sf.energy(n + 2);
        if e[1].is_zero() {
            return Err(Error::SingularPoint {
                n: n + 1,
                expression: "E_n",
            });
        }
        let next = (&e2 - &e[0] * &lambdas[n as usize]) / &e[1];
        lambdas.push(next);
        e = [std::mem::take(&mut e[1]), e2];
    }
    Ok(lambdas)
}

/// Recursive-method track on `n = 1 ..= n_max`, with `lambda_0 = c`.
pub fn quasi_recursive(sf: &StructureFunction, c: &Rational, n_max: u64) -> Result<QuasiCoefficientTrack> {
    check_range(1, n_max)?;
    let lambdas = recursive_lambdas(sf, c, n_max)?;
    let points = (1..=n_max)
        .map(|n| QuasiPoint {
            n,
            lambda: lambdas[n as usize].clone(),
            rho: lambdas[n as usize - 1].clone(),
        })
        .collect();
    Ok(QuasiCoefficientTrack {
        method: QuasiMethod::Recursive,
        initial_c: Some(c.clone()),
        points,
    })
}

/// `E_(n+1) - lambda_n E_n - rho_n E_(n-1)`.
pub fn quasi_residual(sf: &StructureFunction, point: &QuasiPoint) -> Rational {
    let n = point.n;
    sf.energy(n + 1) - &point.lambda * sf.energy(n) - &point.rho * sf.energy(n - 1)
}

/// Checks the energy relation at every level of the inclusive window.
pub fn verify_quasi(
    sf: &StructureFunction,
    track: &QuasiCoefficientTrack,
    window: (u64, u64),
) -> Result<VerificationReport> {
    let (start, end) = window;
    let covered = track
        .range()
        .is_some_and(|(a, b)| a <= start && start <= end && end <= b);
    if !covered {
        return Err(Error::Coverage(format!(
            "window ({start}, {end}) is not inside the track range {:?}",
            track.range()
        )));
    }
    let residuals = (start..=end)
        .map(|n| {
            let point = track
                .point(n)
                .ok_or_else(|| Error::Coverage(format!("track has no level n = {n}")))?;
            Ok((n, quasi_residual(sf, point)))
        })
        .collect::<Result<Vec<_>>>()?;
    // each level is its own identity, so every point of the window certifies itself
    let len = (end - start + 1) as usize;
    Ok(VerificationReport::from_residuals((start, end), len, residuals))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormPoint {
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub recursive: Rational,
    /// `(sum_(j=2)^(n+1) (-1)^(n+1-j) E_j + (-1)^n c E_0) / E_n`
    #[serde(with = "serde_rational")]
    pub energy_form: Rational,
    /// The same sum with `phi` in place of `E`.
    #[serde(with = "serde_rational::option")]
    pub phi_form: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    #[serde(with = "serde_rational")]
    pub c: Rational,
    pub points: Vec<ClosedFormPoint>,
    pub energy_form_agrees: bool,
    pub phi_form_agrees: bool,
}

/// Compares the recursive `lambda_n` with the two alternating-sum forms.
///
/// The energy form always agrees. In the `phi` form the initial value enters
/// through `c phi(0) = 0`, so it agrees only for special `c`.
pub fn closed_form_report(sf: &StructureFunction, c: &Rational, n_max: u64) -> Result<ClosedFormReport> {
    check_range(1, n_max)?;
    let lambdas = recursive_lambdas(sf, c, n_max)?;
    let alt = |f: &dyn Fn(u64) -> Rational, n: u64| {
        let mut acc: Rational = (2..=n + 1)
            .map(|j| if (n + 1 - j).is_multiple_of(2) { f(j) } else { -f(j) })
            .sum();
        let tail = c * f(0);
        acc += if n.is_multiple_of(2) { tail } else { -tail };
        acc
    };
    let points: Vec<ClosedFormPoint> = (1..=n_max)
        .map(|n| {
            let energy_form = alt(&|m| sf.energy(m), n) / sf.energy(n);
            let phi_n = sf.phi(n);
            let phi_form = (!phi_n.is_zero()).then(|| alt(&|m| sf.phi(m), n) / phi_n);
            ClosedFormPoint {
                n,
                recursive: lambdas[n as usize].clone(),
                energy_form,
                phi_form,
            }
        })
        .collect();
    let energy_form_agrees = points.iter().all(|p| p.recursive == p.energy_form);
    let phi_form_agrees = points.iter().all(|p| p.phi_form.as_ref() == Some(&p.recursive));
    Ok(ClosedFormReport {
        c: c.clone(),
        points,
        energy_form_agrees,
        phi_form_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, ratio};
    use proptest::prelude::*;

    fn classical(mu: &[i64]) -> StructureFunction {
        StructureFunction::classical(mu.iter().copied().map(int).collect()).unwrap()
    }

    #[test]
    fn undeformed_ratio_is_constant() {
        let sf = classical(&[]);
        for n in 2..=30 {
            assert_eq!(quasi_ratio(&sf, n).unwrap(), (int(2), int(-1)));
        }
    }

    #[test]
    fn quadratic_ratio_at_two() {
        let sf = classical(&[1]);
        let (l, r) = quasi_ratio(&sf, 2).unwrap();
        assert_eq!((l.clone(), r.clone()), (ratio(8, 3), int(-2)));
        assert_eq!(sf.phi(3), &l * sf.phi(2) + &r * sf.phi(1));
        assert_eq!(sf.phi(4), &l * sf.phi(3) + &r * sf.phi(2));
    }

    #[test]
    fn level_one_uses_phi_zero() {
        let sf = classical(&[1]);
        let (l, r) = quasi_ratio(&sf, 1).unwrap();
        assert_eq!(l, sf.phi(2) / sf.phi(1));
        // phi = (0, 2, 6, 12): rho_1 = (12*2 - 36) / 4
        assert_eq!(r, int(-3));
        assert!(quasi_ratio(&sf, 0).is_err());
    }

    #[test]
    fn singular_values() {
        let z = int(0);
        let one = int(1);
        let err = quasi_ratio_from_values(4, [&one, &z, &one, &one]).unwrap_err();
        assert_eq!(
            err,
            Error::SingularPoint {
                n: 4,
                expression: "phi(n)"
            }
        );
        let two = int(2);
        let four = int(4);
        // 2^2 - 4 * 1 = 0
        let err = quasi_ratio_from_values(3, [&one, &two, &four, &one]).unwrap_err();
        assert!(matches!(err, Error::SingularPoint { n: 3, .. }));
    }

    #[test]
    fn recursive_first_step() {
        let sf = classical(&[]);
        let c = ratio(2, 7);
        let track = quasi_recursive(&sf, &c, 3).unwrap();
        assert_eq!(track.points[0].lambda, ratio(5, 3) - &c / int(3));
        assert_eq!(track.points[0].rho, c);
        assert!(verify_quasi(&sf, &track, (1, 3)).unwrap().holds);
    }

    #[test]
    fn perturbed_track_fails_at_that_level() {
        let sf = classical(&[1, 1]);
        let mut track = quasi_ratio_track(&sf, 2, 20).unwrap();
        assert!(verify_quasi(&sf, &track, (2, 20)).unwrap().holds);
        track.points[5].lambda += int(1);
        let rep = verify_quasi(&sf, &track, (2, 20)).unwrap();
        assert_eq!(rep.first_failure.unwrap().n, 7);
        assert!(matches!(verify_quasi(&sf, &track, (1, 20)), Err(Error::Coverage(_))));
        assert!(matches!(verify_quasi(&sf, &track, (5, 21)), Err(Error::Coverage(_))));
        track.points.remove(3);
        assert!(matches!(verify_quasi(&sf, &track, (2, 10)), Err(Error::Coverage(_))));
    }

    #[test]
    fn q_family_recursive() {
        let sf = StructureFunction::q_deformed(ratio(3, 2), vec![int(1)]).unwrap();
        let track = quasi_recursive(&sf, &int(1), 15).unwrap();
        assert!(verify_quasi(&sf, &track, (1, 15)).unwrap().holds);
    }

    #[test]
    fn closed_forms() {
        let sf = classical(&[1]);
        let rep = closed_form_report(&sf, &ratio(1, 3), 8).unwrap();
        assert!(rep.energy_form_agrees);
        assert!(!rep.phi_form_agrees);
    }

    #[test]
    fn range_runner_and_csv() {
        let sf = classical(&[]);
        let rep = quasi_ratio_range(&sf, 1, 3).unwrap();
        assert!(rep.singular.is_empty());
        assert_eq!(rep.points.len(), 3);
        let track = quasi_ratio_track(&sf, 2, 3).unwrap();
        assert_eq!(track.to_csv(), "n,lambda,rho\n2,2,-1\n3,2,-1\n");
    }

    #[test]
    fn json_round_trip() {
        let sf = classical(&[1]);
        let track = quasi_recursive(&sf, &ratio(1, 2), 2).unwrap();
        let text = serde_json::to_string(&track).unwrap();
        assert!(text.starts_with(r#"{"method":"recursive","c":"1/2","points":[{"n":1,"#));
        assert_eq!(serde_json::from_str::<QuasiCoefficientTrack>(&text).unwrap(), track);
        let ratio_track = quasi_ratio_track(&sf, 1, 2).unwrap();
        let text = serde_json::to_string(&ratio_track).unwrap();
        assert!(text.starts_with(r#"{"method":"ratio","points""#));
        assert_eq!(
            serde_json::from_str::<QuasiCoefficientTrack>(&text).unwrap(),
            ratio_track
        );
    }

    proptest! {
        #[test]
        fn ratio_pairs_solve_both_equations(mu in prop::collection::vec(1i64..6, 0..4), n in 1u64..25) {
            let sf = classical(&mu);
            let (l, r) = quasi_ratio(&sf, n).unwrap();
            prop_assert_eq!(sf.phi(n + 1), &l * sf.phi(n) + &r * sf.phi(n - 1));
            prop_assert_eq!(sf.phi(n + 2), &l * sf.phi(n + 1) + &r * sf.phi(n));
        }

        #[test]
        fn recursive_chain_links(mu in prop::collection::vec(1i64..6, 0..4), c in -5i64..5, n_max in 1u64..20) {
            let sf = classical(&mu);
            let track = quasi_recursive(&sf, &int(c), n_max).unwrap();
            for w in track.points.windows(2) {
                prop_assert_eq!(&w[1].rho, &w[0].lambda);
            }
            prop_assert!(verify_quasi(&sf, &track, (1, n_max)).unwrap().holds);
        }
    }
}
