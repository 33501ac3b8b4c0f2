//! Exact rational scalars and the bracket special functions.
//!
//! Every scalar in the crate is a [`Rational`], always held in reduced form
//! with a positive denominator. Rationals travel through JSON and the command
//! line as `"a"` or `"a/b"` strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;

/// Builds `numer/denom` from machine integers. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a"` or `"a/b"`.
///
/// The numerator may carry a leading `-`; the denominator must be a positive
/// decimal integer. Whitespace, `+` signs and zero denominators are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(text.to_string());
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut result = Rational::one();
    let mut square = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &square;
        }
        e >>= 1;
        if e > 0 {
            square = &square * &square;
        }
    }
    result
}

fn require_positive(name: &str, value: &Rational) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be > 0, got {value}")))
    }
}

/// Basic number `[n]_q = (1 - q^n)/(1 - q)`, equal to `n` at `q = 1`.
pub fn q_bracket(n: u64, q: &Rational) -> Result<Rational> {
    require_positive("q", q)?;
    if q.is_one() {
        return Ok(Rational::from_integer(BigInt::from(n)));
    }
    let one = Rational::one();
    Ok((&one - pow(q, n)) / (&one - q))
}

/// Two-parameter number `[n]_{p,q} = (p^n - q^n)/(p - q)`, equal to
/// `n p^(n-1)` at `p = q`.
pub fn pq_bracket(n: u64, p: &Rational, q: &Rational) -> Result<Rational> {
    require_positive("p", p)?;
    require_positive("q", q)?;
    if p == q {
        if n == 0 {
            return Ok(Rational::zero());
        }
        return Ok(Rational::from_integer(BigInt::from(n)) * pow(p, n - 1));
    }
    Ok((pow(p, n) - pow(q, n)) / (p - q))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u64, q: &Rational) -> Result<Rational> {
    (1..=n).try_fold(Rational::one(), |acc, i| Ok(acc * q_bracket(i, q)?))
}

/// Gaussian binomial `[k]! / ([m]! [k-m]!)`; zero when `m > k`.
pub fn q_binomial(k: u64, m: u64, q: &Rational) -> Result<Rational> {
    require_positive("q", q)?;
    if m > k {
        return Ok(Rational::zero());
    }
    Ok(q_factorial(k, q)? / (q_factorial(m, q)? * q_factorial(k - m, q)?))
}

/// Ordinary binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Which deformed number the structure function is a polynomial in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketKind {
    /// The plain level index `n`.
    Classical,
    /// `[n]_q`, requires `q > 0`.
    QBracket { q: Rational },
    /// `[n]_{p,q}`, requires `p, q > 0`.
    PQBracket { p: Rational, q: Rational },
}

impl BracketKind {
    /// Checked `q`-bracket family.
    pub fn q(q: Rational) -> Result<Self> {
        require_positive("q", &q)?;
        Ok(BracketKind::QBracket { q })
    }

    /// Checked `p,q`-bracket family.
    pub fn pq(p: Rational, q: Rational) -> Result<Self> {
        require_positive("p", &p)?;
        require_positive("q", &q)?;
        Ok(BracketKind::PQBracket { p, q })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BracketKind::Classical => Ok(()),
            BracketKind::QBracket { q } => require_positive("q", q),
            BracketKind::PQBracket { p, q } => {
                require_positive("p", p)?;
                require_positive("q", q)
            }
        }
    }

    /// Bracket value of level `n`.
    pub fn value(&self, n: u64) -> Result<Rational> {
        match self {
            BracketKind::Classical => Ok(Rational::from_integer(BigInt::from(n))),
            BracketKind::QBracket { q } => q_bracket(n, q),
            BracketKind::PQBracket { p, q } => pq_bracket(n, p, q),
        }
    }

    /// Short family tag used by the JSON schema and CLI.
    pub fn tag(&self) -> &'static str {
        match self {
            BracketKind::Classical => "classical",
            BracketKind::QBracket { .. } => "q",
            BracketKind::PQBracket { .. } => "pq",
        }
    }
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketKind::Classical => write!(f, "classical"),
            BracketKind::QBracket { q } => write!(f, "q(q={q})"),
            BracketKind::PQBracket { p, q } => write!(f, "pq(p={p}, q={q})"),
        }
    }
}

/// Serde adapters that carry rationals as `"a/b"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let texts: Vec<String> = values.iter().map(format_rational).collect();
            texts.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            value.as_ref().map(format_rational).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod option_vec {
        use super::*;

        pub fn serialize<S: Serializer>(values: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
            values
                .as_ref()
                .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
            Option::<Vec<String>>::deserialize(d)?
                .map(|ts| {
                    ts.iter()
                        .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                        .collect()
                })
                .transpose()
        }
    }
}

/// Newtype wrapper so a single rational can sit in derived serde structs
/// without an attribute. Serializes as its string form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalText(#[serde(with = "serde_rational")] pub Rational);
