//! Two-term relations with a polynomial inhomogeneity for classical
//! (polynomial in `n`) structure functions.
//!
//! For `phi` of degree `r + 1` in `n` the second differences
//!
//! ```text
//! phi(n+1) - 2 phi(n) + phi(n-1) = sum_i at_i n^i
//! phi(n+2) - 2 phi(n+1) + phi(n) = sum_i att_i n^i
//! ```
//!
//! are polynomials of degree `r - 1`. Adding them gives the relation
//!
//! ```text
//! S_(n+1) = 2 S_n - S_(n-1) + sum_i alpha_i n^i,   alpha_i = at_i + att_i,
//! ```
//!
//! for `S_n = phi(n) + phi(n+1) = 2 E_n`. With the normalised energies the
//! inhomogeneity is `alpha / 2`, see [`InhomogeneousRelation::energy_alpha`].

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{format_rational, int, serde_rational, BracketKind, Rational};
use crate::poly::Polynomial;
use crate::recurrence::VerificationReport;
use crate::structure::StructureFunction;

/// `(alpha_tilde, alpha_tilde_tilde)` for one unit `mu`.
type UnitPair = (Vec<Rational>, Vec<Rational>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InhomogeneousRelation {
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    #[serde(with = "serde_rational")]
    pub rho: Rational,
    #[serde(with = "serde_rational::vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub alpha_tilde: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub alpha_tilde_tilde: Vec<Rational>,
}

impl InhomogeneousRelation {
    /// Builds a relation from its two halves, with `alpha` their sum.
    pub fn from_parts(
        lambda: Rational,
        rho: Rational,
        alpha_tilde: Vec<Rational>,
        alpha_tilde_tilde: Vec<Rational>,
    ) -> Result<Self> {
        if alpha_tilde.len() != alpha_tilde_tilde.len() {
            return Err(Error::Domain(format!(
                "alpha_tilde has {} entries but alpha_tilde_tilde has {}",
                alpha_tilde.len(),
                alpha_tilde_tilde.len()
            )));
        }
        let alpha = alpha_tilde.iter().zip(&alpha_tilde_tilde).map(|(a, b)| a + b).collect();
        Ok(InhomogeneousRelation {
            lambda,
            rho,
            alpha,
            alpha_tilde,
            alpha_tilde_tilde,
        })
    }

    /// Inhomogeneity degree `k`: the number of `alpha_i`.
    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    /// `alpha_i / 2`, the inhomogeneity for `E_n = (phi(n) + phi(n+1)) / 2`.
    pub fn energy_alpha(&self) -> Vec<Rational> {
        let half = Rational::new(1.into(), 2.into());
        self.alpha.iter().map(|a| a * &half).collect()
    }

    fn check(&self) -> Result<()> {
        let ok = self.alpha.len() == self.alpha_tilde.len()
            && self.alpha.len() == self.alpha_tilde_tilde.len()
            && self
                .alpha
                .iter()
                .zip(self.alpha_tilde.iter().zip(&self.alpha_tilde_tilde))
                .all(|(a, (t, tt))| *a == t + tt);
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(
                "alpha must equal alpha_tilde + alpha_tilde_tilde entrywise".into(),
            ))
        }
    }
}

impl<'de> Deserialize<'de> for InhomogeneousRelation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "serde_rational")]
            lambda: Rational,
            #[serde(with = "serde_rational")]
            rho: Rational,
            #[serde(with = "serde_rational::vec")]
            alpha: Vec<Rational>,
            #[serde(with = "serde_rational::vec")]
            alpha_tilde: Vec<Rational>,
            #[serde(with = "serde_rational::vec")]
            alpha_tilde_tilde: Vec<Rational>,
        }
        let raw = Raw::deserialize(d)?;
        let rel = InhomogeneousRelation {
            lambda: raw.lambda,
            rho: raw.rho,
            alpha: raw.alpha,
            alpha_tilde: raw.alpha_tilde,
            alpha_tilde_tilde: raw.alpha_tilde_tilde,
        };
        rel.check().map_err(D::Error::custom)?;
        Ok(rel)
    }
}

fn require_classical(sf: &StructureFunction, operation: &'static str) -> Result<()> {
    if *sf.bracket() == BracketKind::Classical {
        Ok(())
    } else {
        Err(Error::UnsupportedFamily {
            operation,
            required: "classical bracket",
            got: sf.bracket().to_string(),
        })
    }
}

/// `phi` as a polynomial in `n` from raw `mu` (no admissibility checks).
fn phi_polynomial(mu: &[Rational]) -> Polynomial {
    let mut coeffs = vec![Rational::zero(), Rational::one()];
    coeffs.extend(mu.iter().cloned());
    Polynomial::new(coeffs)
}

/// `(at, att)` padded to `degree` entries.
fn second_differences(mu: &[Rational], degree: usize) -> (Vec<Rational>, Vec<Rational>) {
    let phi = phi_polynomial(mu);
    let two = int(2);
    let d = |h: i64| &(&phi.shift(h + 1) - &phi.shift(h).scale(&two)) + &phi.shift(h - 1);
    let (at, att) = (d(0), d(1));
    let pad = |p: &Polynomial| (0..degree).map(|i| p.coeff(i)).collect();
    (pad(&at), pad(&att))
}

/// Minimal-degree relation: `k = r`, `lambda = 2`, `rho = -1`.
pub fn solve_inhomogeneous(sf: &StructureFunction) -> Result<InhomogeneousRelation> {
    solve_inhomogeneous_with_degree(sf, sf.r())
}

/// Relation with inhomogeneity degree `degree`. Degrees above `r` pad with
/// zeros; below `r` no choice of `alpha` works.
pub fn solve_inhomogeneous_with_degree(sf: &StructureFunction, degree: usize) -> Result<InhomogeneousRelation> {
    require_classical(sf, "solve_inhomogeneous")?;
    if degree < sf.r() {
        return Err(Error::Unsolvable(format!(
            "phi of degree {} in n needs an inhomogeneity of degree >= {}, got {degree}",
            sf.r() + 1,
            sf.r()
        )));
    }
    let (at, att) = second_differences(sf.mu(), degree);
    InhomogeneousRelation::from_parts(int(2), int(-1), at, att)
}

/// Residual of `S_(n+1) = lambda S_n + rho S_(n-1) + sum alpha_i n^i` at `n`
/// with `S_n = phi(n) + phi(n+1)`.
pub fn inhomogeneous_residual(sf: &StructureFunction, rel: &InhomogeneousRelation, n: u64) -> Rational {
    assert!(n >= 1, "the relation starts at n = 1");
    let s = |m: u64| sf.phi(m) + sf.phi(m + 1);
    let nn = Rational::from_integer(n.into());
    let inhom = Polynomial::new(rel.alpha.clone()).eval(&nn);
    s(n + 1) - &rel.lambda * s(n) - &rel.rho * s(n - 1) - inhom
}

/// Number of levels that certify the relation: the residual is a
/// polynomial in `n` of degree at most `max(r + 1, k - 1)`.
pub fn inhomogeneous_certification_length(sf: &StructureFunction, rel: &InhomogeneousRelation) -> usize {
    (sf.r() + 2).max(rel.degree())
}

/// Checks the relation at `n = 1 ..= L`, `L` the certification length.
pub fn verify_inhomogeneous(sf: &StructureFunction, rel: &InhomogeneousRelation) -> Result<VerificationReport> {
    let end = inhomogeneous_certification_length(sf, rel) as u64;
    verify_inhomogeneous_window(sf, rel, 1, end)
}

pub fn verify_inhomogeneous_window(
    sf: &StructureFunction,
    rel: &InhomogeneousRelation,
    start: u64,
    end: u64,
) -> Result<VerificationReport> {
    require_classical(sf, "verify_inhomogeneous")?;
    rel.check()?;
    if start < 1 || end < start {
        return Err(Error::Coverage(format!(
            "window ({start}, {end}) must satisfy 1 <= start <= end"
        )));
    }
    let residuals = (start..=end).map(|n| (n, inhomogeneous_residual(sf, rel, n)));
    Ok(VerificationReport::from_residuals(
        (start, end),
        inhomogeneous_certification_length(sf, rel),
        residuals,
    ))
}

/// `sum_j c_j mu_j` with `c_j` at index `j - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(pub Vec<Rational>);

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mag = c.abs();
            let coef = if mag.is_one() {
                String::new()
            } else {
                format_rational(&mag)
            };
            write!(f, "{sep}{coef}mu{}", j + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One row of the coefficient table: every entry as a linear form in `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub alpha_tilde: Vec<LinearForm>,
    pub alpha_tilde_tilde: Vec<LinearForm>,
    pub alpha: Vec<LinearForm>,
}

/// Row for `phi = n + mu_1 n^2 + ... + mu_k n^(k+1)`, read off by solving at
/// the unit vectors `mu = e_j` (the entries are linear in `mu`).
pub fn table_row(k: usize) -> Result<TableRow> {
    if k == 0 {
        return Err(Error::Domain("table rows start at k = 1".into()));
    }
    let units: Vec<(Vec<Rational>, Vec<Rational>)> = (0..k)
        .map(|j| {
            let e: Vec<Rational> = (0..k).map(|i| if i == j { int(1) } else { int(0) }).collect();
            second_differences(&e, k)
        })
        .collect();
    let column = |pick: &dyn Fn(&UnitPair, usize) -> Rational| {
        (0..k)
            .map(|i| LinearForm(units.iter().map(|u| pick(u, i)).collect()))
            .collect::<Vec<_>>()
    };
    Ok(TableRow {
        k,
        alpha_tilde: column(&|u, i| u.0[i].clone()),
        alpha_tilde_tilde: column(&|u, i| u.1[i].clone()),
        alpha: column(&|u, i| &u.0[i] + &u.1[i]),
    })
}

pub fn table(k_max: usize) -> Result<Vec<TableRow>> {
    (1..=k_max).map(table_row).collect()
}

/// Plain-text layout with one line per `i` inside each row.
pub fn render_table(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 4]> = rows
        .iter()
        .flat_map(|row| {
            (0..row.k).map(move |i| {
                [
                    if i == 0 { format!("k={}", row.k) } else { String::new() },
                    format!("at{i} = {}", row.alpha_tilde[i]),
                    format!("att{i} = {}", row.alpha_tilde_tilde[i]),
                    format!("a{i} = {}", row.alpha[i]),
                ]
            })
        })
        .collect();
    let header = [
        String::new(),
        "alpha_tilde".to_string(),
        "alpha_tilde_tilde".to_string(),
        "alpha".to_string(),
    ];
    let widths: Vec<usize> = (0..4)
        .map(|c| cells.iter().chain([&header]).map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let line = |r: &[String; 4]| {
        let mut s = (0..4)
            .map(|c| format!("{:<w$}", r[c], w = widths[c]))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&header);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}
