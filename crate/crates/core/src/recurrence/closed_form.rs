//! Closed-form coefficient families.
//!
//! | family                          | order          | generator              |
//! |---------------------------------|----------------|------------------------|
//! | polynomial in `n`, degree `k-1` | `k`            | [`kbonacci_classical`] |
//! | polynomial in `[n]_q`           | `k`            | [`kbonacci_q`]         |
//! | quadratic in `[n]_{p,q}`        | 5              | [`pentanacci_pq`]      |
//! | cubic in `[n]_{p,q}`            | 9              | [`ninebonacci_pq`]     |
//! | cubic in `[n]_{p,q}`, `p -> 1`  | 9              | [`ninebonacci_qlimit`] |
//!
//! Two of the published Nine-bonacci coefficient lists contain misprints. The
//! literal typeset expressions are kept in [`printed`] so that the
//! differences against the verified coefficients can be reported.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Recurrence;
use crate::error::{Error, Result};
use crate::numbers::{binomial, pow, pq_bracket, q_binomial, q_bracket, serde_rational, Rational};

fn n_int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `c_0 + c_1 s + c_2 s^2 + ...`
fn poly(s: &Rational, cs: &[i64]) -> Rational {
    cs.iter().rev().fold(Rational::zero(), |acc, &c| acc * s + n_int(c))
}

/// `lambda_i = (-1)^i C(k, i+1)`.
pub fn kbonacci_classical(k: usize) -> Result<Recurrence> {
    if k < 2 {
        return Err(Error::Domain(format!("k-bonacci order must be >= 2, got {k}")));
    }
    let coeffs = (0..k)
        .map(|i| {
            let c = binomial(k as u64, i as u64 + 1);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Recurrence::new(coeffs)
}

/// `lambda_i(q) = (-1)^i q^(i(i+1)/2) [k choose i+1]_q`.
pub fn kbonacci_q(k: usize, q: &Rational) -> Result<Recurrence> {
    if k < 2 {
        return Err(Error::Domain(format!("k-bonacci order must be >= 2, got {k}")));
    }
    let coeffs = (0..k as u64)
        .map(|i| {
            let c = pow(q, i * (i + 1) / 2) * q_binomial(k as u64, i + 1, q)?;
            Ok(if i % 2 == 0 { c } else { -c })
        })
        .collect::<Result<Vec<_>>>()?;
    Recurrence::new(coeffs)
}

/// Pentanacci coefficients `(lambda, rho, sigma, gamma, delta)` for `phi`
/// quadratic in `[n]_{p,q}`.
pub fn pentanacci_pq(p: &Rational, q: &Rational) -> Result<Recurrence> {
    pq_bracket(1, p, q)?;
    let pp = |e| pow(p, e);
    let qq = |e| pow(q, e);
    let pq = |a, b| pow(p, a) * pow(q, b);
    let two = n_int(2);
    let lambda = pp(2) + qq(2) + p + q + p * q;
    let rho = -(pq(3, 1) + pp(3) + &two * pq(2, 1) + pq(2, 2) + pq(1, 3) + &two * pq(1, 2) + pq(1, 1) + qq(3));
    let sigma = &two * pq(3, 2) + &two * pq(2, 3) + pq(4, 1) + pq(1, 4) + pq(3, 1) + pq(1, 3) + pq(2, 2) + pq(3, 3);
    let gamma = -(pq(2, 1) + pp(2) + pq(1, 2) + pq(1, 1) + qq(2)) * pq(2, 2);
    let delta = pq(4, 4);
    Recurrence::new(vec![lambda, rho, sigma, gamma, delta])
}

/// Nine-bonacci coefficients `A_0 .. A_8` for `phi` cubic in `[n]_{p,q}`.
///
/// Written in the `[m]_{p,q}` basis with coefficients polynomial in `s = pq`.
pub fn ninebonacci_pq(p: &Rational, q: &Rational) -> Result<Recurrence> {
    nine_in_brackets(p, q, false)
}

fn nine_in_brackets(p: &Rational, q: &Rational, as_printed: bool) -> Result<Recurrence> {
    let b: Vec<Rational> = (0..=8).map(|m| pq_bracket(m, p, q)).collect::<Result<_>>()?;
    let s = &(p * q);
    let sp = |e| pow(s, e);
    let c = |cs: &[i64]| poly(s, cs);

    let a0 = &b[4] + &b[3] + &b[2];
    let a1 = -(&b[6]
        + c(&[1, 1]) * &b[5]
        + c(&[1, 1]) * &b[4]
        + c(&[0, 2]) * &b[3]
        + c(&[0, 1, 1]) * &b[2]
        + c(&[0, 1, 0, 1]));
    // the typeset [4] coefficient reads pq(2+4pq+p^2q^2)
    let a2_b4 = if as_printed { c(&[0, 2, 4, 1]) } else { c(&[0, 2, 2, 1]) };
    let a2 = c(&[1, 1]) * &b[7]
        + c(&[0, 2]) * &b[6]
        + c(&[0, 2, 1]) * &b[5]
        + a2_b4 * &b[4]
        + c(&[0, 1, 2, 2]) * &b[3]
        + c(&[0, 0, 1, 2]) * &b[2]
        + c(&[0, 0, 0, 2]);
    let a3 = -(s
        * (&b[8]
            + c(&[1, 1]) * &b[7]
            + c(&[1, 2, 1]) * &b[6]
            + c(&[0, 3, 2]) * &b[5]
            + c(&[0, 1, 4, 1]) * &b[4]
            + c(&[0, 1, 2, 3]) * &b[3]
            + c(&[0, 0, 2, 2, 1]) * &b[2]
            + c(&[0, 0, 0, 2, 0, 1])));
    let a4 = sp(2) * (&b[8] + c(&[1, 1]) * &b[7] + c(&[1, 2, 1]) * &b[6])
        + sp(3) * (c(&[2, 3]) * &b[5] + c(&[1, 4, 1]) * &b[4])
        + sp(4) * (c(&[3, 2, 1]) * &b[3] + c(&[1, 2, 2]) * &b[2] + c(&[1, 0, 2]));
    let a5 = -(sp(3)
        * (c(&[1, 1]) * &b[7]
            + c(&[0, 2]) * &b[6]
            + c(&[0, 1, 2]) * &b[5]
            + c(&[0, 1, 2, 2]) * &b[4]
            + c(&[0, 0, 2, 2, 1]) * &b[3]
            + c(&[0, 0, 0, 2, 1]) * &b[2]
            + c(&[0, 0, 0, 0, 2])));
    // typeset: p^7q^7([6] + 2[3] + (1+pq)[2] + (2+p^2q^2)) + ...
    let (a6_b6, a6_const) = if as_printed {
        (sp(7), c(&[2, 0, 1]))
    } else {
        (sp(5), c(&[1, 0, 1]))
    };
    let a6 = a6_b6 * &b[6]
        + sp(7) * (n_int(2) * &b[3] + c(&[1, 1]) * &b[2] + a6_const)
        + sp(5) * c(&[1, 1]) * &b[5]
        + sp(6) * c(&[1, 1]) * &b[4];
    let a7 = -(sp(7) * (&b[4] + s * &b[3] + sp(2) * &b[2]));
    let a8 = sp(10);
    Recurrence::new(vec![a0, a1, a2, a3, a4, a5, a6, a7, a8])
}

/// Nine-bonacci coefficients of the cubic p,q family in the limit `p -> 1`.
///
/// At `p = 1` the nine bases `p^a q^b` collapse onto `q^b`, with `1` and `q`
/// three times, `q^2` twice and `q^3` once; the coefficients are read off the
/// product of the corresponding linear factors.
pub fn ninebonacci_qlimit(q: &Rational) -> Result<Recurrence> {
    q_bracket(1, q)?;
    let roots: Vec<Rational> = [(0, 3), (1, 3), (2, 2), (3, 1)]
        .iter()
        .flat_map(|&(e, mult)| std::iter::repeat_n(pow(q, e), mult))
        .collect();
    Ok(from_roots(&roots))
}

/// Relation whose characteristic polynomial is `prod (x - root)`.
pub fn from_roots(roots: &[Rational]) -> Recurrence {
    // descending coefficients of the monic product
    let mut chr = vec![Rational::one()];
    for root in roots {
        let mut next = chr.clone();
        next.push(Rational::zero());
        for (i, c) in chr.iter().enumerate() {
            next[i + 1] -= root * c;
        }
        chr = next;
    }
    Recurrence::new(chr[1..].iter().map(|c| -c).collect()).expect("at least one root")
}

/// Multipliers `(m_1..m_4)` that extend `pentanacci_pq(1, q)` to
/// `ninebonacci_qlimit(q)`: the negated Tetranacci q-coefficients.
pub fn qlimit_multipliers(q: &Rational) -> Result<Vec<Rational>> {
    Ok(kbonacci_q(4, q)?.coefficients().iter().map(|c| -c).collect())
}

/// `m = K(K+3)/2` for `phi` of degree `K` in `[n]_{p,q}`.
pub fn predicted_order_pq(poly_order: usize) -> Result<usize> {
    if poly_order < 1 {
        return Err(Error::Domain("polynomial order must be >= 1".into()));
    }
    Ok(poly_order * (poly_order + 3) / 2)
}

/// Coefficient expressions exactly as typeset, including misprints.
pub mod printed {
    use super::*;

    /// Nine-bonacci `A_0..A_8` for the cubic p,q family as typeset.
    pub fn ninebonacci_pq(p: &Rational, q: &Rational) -> Result<Recurrence> {
        nine_in_brackets(p, q, true)
    }

    /// Typeset `p -> 1` coefficients `A_0(q)..A_8(q)`. The unbalanced
    /// parenthesis in `A_5` is closed at the end of the expression.
    pub fn ninebonacci_qlimit(q: &Rational) -> Result<Recurrence> {
        let b: Vec<Rational> = (0..=8).map(|m| q_bracket(m, q)).collect::<Result<_>>()?;
        let qp = |e| pow(q, e);
        let k = |v: i64| n_int(v);
        let a0 = &b[4] + &b[3] + &b[2];
        let a1 = -(k(2) * qp(2) * (&b[4] + &b[3] + k(2) * q)) - qp(2) * &b[2];
        let a2 = &b[8]
            + k(5) * q * &b[6]
            + k(2) * q * &b[5]
            + q * &b[4]
            + k(6) * qp(2) * &b[3]
            + qp(3) * &b[2]
            + k(6) * qp(3);
        let a3 = -(q
            * (k(3) * &b[8]
                + k(6) * q * &b[6]
                + k(2) * q * &b[5]
                + k(5) * qp(2) * &b[4]
                + k(6) * qp(3) * &b[3]
                + k(8) * qp(3) * &b[2]
                + k(2) * qp(4)));
        let a4 = k(3) * qp(2) * &b[8]
            + k(6) * qp(3) * &b[6]
            + k(2) * qp(4) * &b[5]
            + k(11) * qp(4) * &b[4]
            + k(4) * qp(5) * &b[2]
            + k(4) * qp(6);
        let a5 = -(qp(3)
            * (&b[8]
                + k(6) * q * &b[6]
                + q * &b[5]
                + k(4) * qp(2) * &b[4]
                + k(3) * qp(3) * &b[3]
                + k(3) * qp(3) * &b[2]
                + k(4) * qp(4)));
        let a6 = k(2) * qp(5) * &b[6]
            + qp(6) * &b[5]
            + qp(6) * &b[4]
            + k(2) * qp(7) * &b[3]
            + k(3) * qp(8) * &b[2]
            + k(3) * qp(9);
        let a7 = -(qp(7) * (&b[4] + q * &b[3] + qp(2) * &b[2]));
        let a8 = qp(10);
        Recurrence::new(vec![a0, a1, a2, a3, a4, a5, a6, a7, a8])
    }

    /// The typeset shift multipliers `(t, x, y, z)` for building the
    /// `p -> 1` Nine-bonacci relation from the Pentanacci one.
    pub fn qlimit_multipliers(q: &Rational) -> Result<Vec<Rational>> {
        let b: Vec<Rational> = (0..=8).map(|m| q_bracket(m, q)).collect::<Result<_>>()?;
        let qp = |e| pow(q, e);
        let k = |v: i64| n_int(v);
        let t = -(&b[2] + &b[3]);
        let x = -((k(2) * qp(2) + k(1)) * (&b[4] + &b[3])) - &b[2] * (qp(2) - k(1)) - k(4) * qp(3);
        let y = -b[8].clone() - k(5) * q * &b[6] - k(2) * q * &b[5]
            + &b[4] * (k(2) * qp(2) - q + k(2))
            + &b[3] * (k(-4) * qp(2) + k(2))
            + &b[2] * (-qp(3) + qp(2) - k(1))
            - k(2) * qp(3);
        let z = k(3) * q * &b[8]
            + &b[6] * (k(6) * qp(2) + k(5) * q)
            + k(2) * q * &b[5] * (q + k(1))
            + &b[4] * q * (k(5) * qp(2) + k(1))
            + &b[3] * (k(6) * qp(4) + k(6) * qp(2) + k(4))
            + &b[2] * (k(8) * qp(4) + qp(3) + k(1))
            + k(2) * qp(5)
            + k(6) * qp(3);
        Ok(vec![t, x, y, z])
    }

    /// Single-multiplier six-term pattern as typeset:
    /// `(l - k, r + l k, s + r k, g + s k, d + g k, k)`.
    pub fn six_term_pattern(penta: &Recurrence, kappa: &Rational) -> Result<Recurrence> {
        let c = penta.coefficients();
        if c.len() != 5 {
            return Err(Error::Domain(
                "the six-term pattern starts from an order-5 relation".into(),
            ));
        }
        Recurrence::new(vec![
            &c[0] - kappa,
            &c[1] + &c[0] * kappa,
            &c[2] + &c[1] * kappa,
            &c[3] + &c[2] * kappa,
            &c[4] + &c[3] * kappa,
            kappa.clone(),
        ])
    }
}

/// One coefficient where a typeset value disagrees with the verified one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDiff {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub printed: Rational,
    #[serde(with = "serde_rational")]
    pub oracle: Rational,
}

/// Entry-by-entry comparison; `labels[i]` names entry `i`.
pub fn diff_coefficients(labels: &[String], printed: &[Rational], oracle: &[Rational]) -> Vec<CoefficientDiff> {
    labels
        .iter()
        .zip(printed.iter().zip(oracle))
        .filter(|(_, (a, b))| a != b)
        .map(|(label, (a, b))| CoefficientDiff {
            label: label.clone(),
            printed: a.clone(),
            oracle: b.clone(),
        })
        .collect()
}

/// Labels `A_0 .. A_(n-1)`.
pub fn a_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("A_{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().copied().map(int).collect()
    }

    #[test]
    fn classical_examples() {
        assert_eq!(kbonacci_classical(2).unwrap().coefficients(), ints(&[2, -1]).as_slice());
        assert_eq!(
            kbonacci_classical(3).unwrap().coefficients(),
            ints(&[3, -3, 1]).as_slice()
        );
        assert_eq!(
            kbonacci_classical(4).unwrap().coefficients(),
            ints(&[4, -6, 4, -1]).as_slice()
        );
        assert!(kbonacci_classical(1).is_err());
    }

    #[test]
    fn q_examples() {
        let q = ratio(2, 3);
        let b3 = q_bracket(3, &q).unwrap();
        assert_eq!(
            kbonacci_q(3, &q).unwrap().coefficients(),
            &[b3.clone(), -(&q * &b3), pow(&q, 3)]
        );
        assert_eq!(kbonacci_q(5, &int(1)).unwrap(), kbonacci_classical(5).unwrap());
        assert_eq!(
            kbonacci_q(2, &int(2)).unwrap().coefficients(),
            ints(&[3, -2]).as_slice()
        );
        assert!(kbonacci_q(3, &int(0)).is_err());
        assert!(kbonacci_q(1, &int(2)).is_err());
    }

    #[test]
    fn q_degenerates_to_classical() {
        for k in 2..=8 {
            assert_eq!(kbonacci_q(k, &int(1)).unwrap(), kbonacci_classical(k).unwrap());
        }
    }

    #[test]
    fn pentanacci_examples() {
        assert_eq!(pentanacci_pq(&int(1), &int(1)).unwrap(), kbonacci_classical(5).unwrap());
        let (p, q) = (ratio(3, 5), ratio(7, 2));
        let c = pentanacci_pq(&p, &q).unwrap().into_coefficients();
        assert_eq!(c[4], pow(&p, 4) * pow(&q, 4));
        let b = |m| pq_bracket(m, &p, &q).unwrap();
        assert_eq!(c[0], b(2) + b(3));
        let s = &p * &q;
        // alternative bracket forms listed alongside the expanded ones
        assert_eq!(c[1], -(b(3) * b(2) + &s * (int(1) + b(3))));
        assert_eq!(c[2], &s * (b(3) * (b(2) + int(1)) + &s * &s));
        assert_eq!(c[3], -(&s * &s * (b(3) + &s * b(2))));
        assert!(pentanacci_pq(&int(0), &int(1)).is_err());
    }

    #[test]
    fn pentanacci_frozen_two_three() {
        // characteristic polynomial (x-2)(x-3)(x-4)(x-6)(x-9)
        assert_eq!(
            pentanacci_pq(&int(2), &int(3)).unwrap().coefficients(),
            ints(&[24, -215, 900, -1764, 1296]).as_slice()
        );
    }

    #[test]
    fn ninebonacci_edges() {
        let (p, q) = (int(2), int(3));
        let c = ninebonacci_pq(&p, &q).unwrap().into_coefficients();
        assert_eq!(c[8], pow(&p, 10) * pow(&q, 10));
        let b = |m| pq_bracket(m, &p, &q).unwrap();
        assert_eq!(c[0], b(4) + b(3) + b(2));
        let ql = ninebonacci_qlimit(&ratio(3, 2)).unwrap().into_coefficients();
        let qb = |m| q_bracket(m, &ratio(3, 2)).unwrap();
        assert_eq!(ql[8], pow(&ratio(3, 2), 10));
        assert_eq!(ql[0], qb(4) + qb(3) + qb(2));
    }

    #[test]
    fn ninebonacci_frozen() {
        // (x-2)(x-3)(x-4)(x-6)(x-9)(x-8)(x-12)(x-18)(x-27)
        assert_eq!(
            ninebonacci_pq(&int(2), &int(3)).unwrap().coefficients(),
            ints(&[89, -3257, 64483, -762510, 5588100, -25365528, 68677632, -100497024, 60466176]).as_slice()
        );
        assert_eq!(
            ninebonacci_qlimit(&int(2)).unwrap().coefficients(),
            ints(&[25, -257, 1439, -4866, 10356, -13928, 11456, -5248, 1024]).as_slice()
        );
    }

    #[test]
    fn qlimit_is_p_one_evaluation() {
        for q in [int(2), ratio(3, 2), ratio(1, 3)] {
            assert_eq!(ninebonacci_qlimit(&q).unwrap(), ninebonacci_pq(&int(1), &q).unwrap());
        }
    }

    #[test]
    fn qlimit_from_pentanacci_extension() {
        for q in [int(2), ratio(3, 2)] {
            let ext = pentanacci_pq(&int(1), &q)
                .unwrap()
                .extend(&qlimit_multipliers(&q).unwrap())
                .unwrap();
            assert_eq!(ext, ninebonacci_qlimit(&q).unwrap());
        }
    }

    #[test]
    fn printed_nine_differs_only_in_a2_a6() {
        let (p, q) = (int(2), int(3));
        let diffs = diff_coefficients(
            &a_labels(9),
            printed::ninebonacci_pq(&p, &q).unwrap().coefficients(),
            ninebonacci_pq(&p, &q).unwrap().coefficients(),
        );
        let labels: Vec<&str> = diffs.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, ["A_2", "A_6"]);
    }

    #[test]
    fn printed_qlimit_diffs() {
        let q = int(2);
        let diffs = diff_coefficients(
            &a_labels(9),
            printed::ninebonacci_qlimit(&q).unwrap().coefficients(),
            ninebonacci_qlimit(&q).unwrap().coefficients(),
        );
        let labels: Vec<&str> = diffs.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, ["A_1", "A_2", "A_3", "A_5", "A_6"]);
    }

    #[test]
    fn printed_multipliers_agree_only_in_t() {
        let q = ratio(3, 2);
        let printed = printed::qlimit_multipliers(&q).unwrap();
        let derived = qlimit_multipliers(&q).unwrap();
        assert_eq!(printed.len(), 4);
        // t = -([2] + [3]) against -[4]
        assert_ne!(printed[0], derived[0]);
        assert_eq!(printed[0], -(q_bracket(2, &q).unwrap() + q_bracket(3, &q).unwrap()));
    }

    #[test]
    fn predicted_orders() {
        assert_eq!(predicted_order_pq(1).unwrap(), 2);
        assert_eq!(predicted_order_pq(2).unwrap(), 5);
        assert_eq!(predicted_order_pq(3).unwrap(), 9);
        assert_eq!(predicted_order_pq(4).unwrap(), 14);
        assert!(predicted_order_pq(0).is_err());
    }

    #[test]
    fn from_roots_matches_expansion() {
        assert_eq!(
            from_roots(&ints(&[1, 2, 4])).coefficients(),
            ints(&[7, -14, 8]).as_slice()
        );
    }
}
