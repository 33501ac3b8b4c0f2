//! Structure functions `phi(n)` and the energy levels they induce.
//!
//! A structure function is a polynomial without constant term in one of three
//! deformed numbers `B(n)`:
//!
//! ```text
//! phi(n) = B(n) + mu_1 B(n)^2 + ... + mu_r B(n)^(r+1)
//! ```
//!
//! with `B(n)` equal to `n`, `[n]_q` or `[n]_{p,q}`. The oscillator energies
//! are `E_n = (phi(n) + phi(n+1)) / 2`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numbers::{binomial, format_rational, parse_rational, pow, serde_rational, BracketKind, Rational};

/// `phi(n)` as a polynomial in a bracket, with `mu[j-1]` multiplying `B^(j+1)`.
///
/// The leading `mu_0 = 1` on the bare bracket is implicit and never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFunction {
    bracket: BracketKind,
    mu: Vec<Rational>,
}

impl StructureFunction {
    /// Every `mu_i` must be non-negative, and the last one nonzero.
    pub fn new(bracket: BracketKind, mu: Vec<Rational>) -> Result<Self> {
        bracket.validate()?;
        if let Some(i) = mu.iter().position(Signed::is_negative) {
            return Err(Error::InvalidStructureFunction(format!(
                "mu_{} = {} is negative",
                i + 1,
                mu[i]
            )));
        }
        if mu.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidStructureFunction(format!(
                "senior parameter mu_{} must be nonzero",
                mu.len()
            )));
        }
        Ok(StructureFunction { bracket, mu })
    }

    pub fn classical(mu: Vec<Rational>) -> Result<Self> {
        Self::new(BracketKind::Classical, mu)
    }

    pub fn q_deformed(q: Rational, mu: Vec<Rational>) -> Result<Self> {
        Self::new(BracketKind::q(q)?, mu)
    }

    pub fn pq_deformed(p: Rational, q: Rational, mu: Vec<Rational>) -> Result<Self> {
        Self::new(BracketKind::pq(p, q)?, mu)
    }

    pub fn bracket(&self) -> &BracketKind {
        &self.bracket
    }

    /// `mu_1 .. mu_r`.
    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    /// `r`, the number of stored deformation parameters.
    pub fn r(&self) -> usize {
        self.mu.len()
    }

    /// Degree `K = r + 1` of `phi` as a polynomial in its bracket.
    pub fn bracket_degree(&self) -> usize {
        self.mu.len() + 1
    }

    /// Upper bound on the order of the minimal constant-coefficient recurrence
    /// satisfied by `phi(n)` and `E_n`.
    ///
    /// Both sequences lie in a shift-invariant space spanned by exponential
    /// terms: `n^0..n^K` (classical), `q^(jn)` for `j = 0..K` (q-bracket), or
    /// `(p^a q^b)^n` with `1 <= a + b <= K` (p,q-bracket). Any sequence in such
    /// a space that vanishes at this many consecutive levels vanishes
    /// identically, so it doubles as the certification length.
    pub fn sequence_space_dimension(&self) -> usize {
        let k = self.bracket_degree();
        match self.bracket {
            BracketKind::Classical | BracketKind::QBracket { .. } => k + 1,
            BracketKind::PQBracket { .. } => k * (k + 3) / 2,
        }
    }

    /// Pairs of exponents `(a, b)`, `(a', b')` whose bases `p^a q^b` coincide
    /// for a p,q family. Coincident bases can lower the minimal order below
    /// the generic prediction.
    pub fn basis_collisions(&self) -> Vec<((usize, usize), (usize, usize))> {
        let BracketKind::PQBracket { p, q } = &self.bracket else {
            return Vec::new();
        };
        let k = self.bracket_degree();
        let exps: Vec<(usize, usize)> = (1..=k).flat_map(|d| (0..=d).map(move |a| (a, d - a))).collect();
        let bases: Vec<Rational> = exps.iter().map(|&(a, b)| pow(p, a as u64) * pow(q, b as u64)).collect();
        let mut out = Vec::new();
        for i in 0..exps.len() {
            for j in i + 1..exps.len() {
                if bases[i] == bases[j] {
                    out.push((exps[i], exps[j]));
                }
            }
        }
        out
    }

    /// `phi(n)` written as `sum_i c_i base_i^n` with pairwise distinct bases,
    /// merging coincident bases and keeping terms whose coefficient cancels.
    ///
    /// `None` for families with polynomial multiplicities (`n`-polynomials,
    /// `q = 1`, `p = q`), where no such pure-exponential form exists.
    pub fn exponential_terms(&self) -> Option<Vec<(Rational, Rational)>> {
        let k = self.bracket_degree();
        let mu_full: Vec<Rational> = std::iter::once(Rational::one())
            .chain(self.mu.iter().cloned())
            .collect();
        let mut terms: Vec<(Rational, Rational)> = Vec::new();
        let mut add = |base: Rational, c: Rational| match terms.iter_mut().find(|(b, _)| *b == base) {
            Some((_, acc)) => *acc += c,
            None => terms.push((base, c)),
        };
        match &self.bracket {
            BracketKind::Classical => return None,
            BracketKind::QBracket { q } if q.is_one() => return None,
            BracketKind::PQBracket { p, q } if p == q => return None,
            BracketKind::QBracket { q } => {
                // [n]_q^d = (1 - q^n)^d / (1 - q)^d
                let scale = (Rational::one() - q).recip();
                for (d, m) in (1..=k).zip(&mu_full) {
                    let lead = m * pow(&scale, d as u64);
                    for j in 0..=d {
                        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
                        add(pow(q, j as u64), &lead * sign * binomial(d as u64, j as u64));
                    }
                }
            }
            BracketKind::PQBracket { p, q } => {
                // [n]_{p,q}^d = sum_a C(d,a) (-1)^(d-a) (p^a q^(d-a))^n / (p - q)^d
                let scale = (p - q).recip();
                for (d, m) in (1..=k).zip(&mu_full) {
                    let lead = m * pow(&scale, d as u64);
                    for a in 0..=d {
                        let sign = if (d - a) % 2 == 0 {
                            Rational::one()
                        } else {
                            -Rational::one()
                        };
                        let base = pow(p, a as u64) * pow(q, (d - a) as u64);
                        add(base, &lead * sign * binomial(d as u64, a as u64));
                    }
                }
            }
        }
        Some(terms)
    }

    /// Exponential bases of `phi` whose merged coefficient is exactly zero.
    /// Each one lowers the minimal recurrence order by one.
    pub fn cancelled_bases(&self) -> Vec<Rational> {
        self.exponential_terms()
            .unwrap_or_default()
            .into_iter()
            .filter(|(_, c)| c.is_zero())
            .map(|(b, _)| b)
            .collect()
    }

    /// `phi(n) = B + sum_j mu_j B^(j+1)`.
    pub fn phi(&self, n: u64) -> Rational {
        let b = self
            .bracket
            .value(n)
            .expect("bracket parameters validated at construction");
        // Horner in B: B * (1 + B * (mu_1 + B * (mu_2 + ...)))
        let inner = self.mu.iter().rev().fold(Rational::zero(), |acc, m| (acc + m) * &b);
        &b * (Rational::one() + inner)
    }

    /// `E_n = (phi(n) + phi(n+1)) / 2`.
    pub fn energy(&self, n: u64) -> Rational {
        (self.phi(n) + self.phi(n + 1)) / Rational::from_integer(2.into())
    }

    /// Values of the requested sequence at levels `0..len`.
    pub fn sequence(&self, kind: SequenceKind, len: usize) -> Vec<Rational> {
        match kind {
            SequenceKind::Phi => (0..len as u64).map(|n| self.phi(n)).collect(),
            SequenceKind::Energy => {
                let phis: Vec<Rational> = (0..=len as u64).map(|n| self.phi(n)).collect();
                phis.windows(2)
                    .map(|w| (&w[0] + &w[1]) / Rational::from_integer(2.into()))
                    .collect()
            }
        }
    }

    /// Levels `0..=n_max` with their structure-function values and energies.
    pub fn spectrum(&self, n_max: u64) -> Result<Spectrum> {
        if n_max < 1 {
            return Err(Error::Domain("n_max must be >= 1".into()));
        }
        let phis: Vec<Rational> = (0..=n_max + 1).map(|n| self.phi(n)).collect();
        let two = Rational::from_integer(2.into());
        let levels: Vec<Level> = (0..=n_max as usize)
            .map(|n| Level {
                n: n as u64,
                phi: phis[n].clone(),
                energy: (&phis[n] + &phis[n + 1]) / &two,
            })
            .collect();
        let increasing = levels.windows(2).all(|w| w[1].energy > w[0].energy);
        Ok(Spectrum { levels, increasing })
    }

    /// Coefficients `alpha_0 .. alpha_(r+1)` of
    /// `phi(n+1) - q phi(n) = sum_l alpha_l n^l` for a classical family.
    ///
    /// Binomial terms with `s < l` are taken as zero.
    pub fn q_commutator_coefficients(&self, q: &Rational) -> Result<Vec<Rational>> {
        if self.bracket != BracketKind::Classical {
            return Err(Error::UnsupportedFamily {
                operation: "q_commutator_coefficients",
                required: "classical bracket",
                got: self.bracket.to_string(),
            });
        }
        let r = self.r();
        // mu_0 = 1 prepended
        let mu_full: Vec<Rational> = std::iter::once(Rational::one())
            .chain(self.mu.iter().cloned())
            .collect();
        let mut alpha = Vec::with_capacity(r + 2);
        alpha.push(mu_full.iter().sum());
        for l in 1..=r + 1 {
            let mut a = -(q * &mu_full[l - 1]);
            for s in l..=r + 1 {
                a += binomial(s as u64, l as u64) * &mu_full[s - 1];
            }
            alpha.push(a);
        }
        Ok(alpha)
    }
}

/// Which sequence a recurrence is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Phi,
    Energy,
}

impl SequenceKind {
    pub fn tag(self) -> &'static str {
        match self {
            SequenceKind::Phi => "phi",
            SequenceKind::Energy => "energy",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub n: u64,
    #[serde(with = "serde_rational")]
    pub phi: Rational,
    #[serde(with = "serde_rational")]
    pub energy: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    /// Whether the energies are strictly increasing over the listed levels.
    pub increasing: bool,
}

impl Spectrum {
    /// CSV with header `n,phi,energy` and exact rational cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,phi,energy\n");
        for level in &self.levels {
            let _ = writeln!(
                out,
                "{},{},{}",
                level.n,
                format_rational(&level.phi),
                format_rational(&level.energy)
            );
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct StructureFunctionJson {
    bracket: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    q: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    p: Option<Rational>,
    #[serde(default, with = "serde_rational::vec")]
    mu: Vec<Rational>,
}

impl Serialize for StructureFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (q, p) = match &self.bracket {
            BracketKind::Classical => (None, None),
            BracketKind::QBracket { q } => (Some(q.clone()), None),
            BracketKind::PQBracket { p, q } => (Some(q.clone()), Some(p.clone())),
        };
        StructureFunctionJson {
            bracket: self.bracket.tag().to_string(),
            q,
            p,
            mu: self.mu.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = StructureFunctionJson::deserialize(d)?;
        let bracket = bracket_from_parts(&raw.bracket, raw.p, raw.q).map_err(D::Error::custom)?;
        StructureFunction::new(bracket, raw.mu).map_err(D::Error::custom)
    }
}

/// Assembles a bracket from its family tag and optional parameters.
pub fn bracket_from_parts(tag: &str, p: Option<Rational>, q: Option<Rational>) -> Result<BracketKind> {
    let missing = |name: &str| Error::Domain(format!("bracket {tag:?} requires {name}"));
    match tag {
        "classical" => Ok(BracketKind::Classical),
        "q" => BracketKind::q(q.ok_or_else(|| missing("q"))?),
        "pq" => BracketKind::pq(p.ok_or_else(|| missing("p"))?, q.ok_or_else(|| missing("q"))?),
        other => Err(Error::Domain(format!(
            "unknown bracket {other:?}; expected classical, q or pq"
        ))),
    }
}

/// Parses a comma-separated list of rationals, e.g. `1,1/2,3`.
pub fn parse_mu_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}
