#![allow(dead_code)]

//! Independent oracles and frozen reference values shared by the
//! integration targets.

use kbonacci::numbers::{int, parse_rational, ratio, Rational};
use kbonacci::StructureFunction;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(s: &str) -> Rational {
    parse_rational(s).expect("frozen literal")
}

pub fn rats(items: &[&str]) -> Vec<Rational> {
    items.iter().map(|s| rat(s)).collect()
}

pub fn ints(items: &[i64]) -> Vec<Rational> {
    items.iter().copied().map(int).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-negative `a/b`, with a nonzero last entry.
pub fn random_mu(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rational> {
    (0..r)
        .map(|i| {
            let lo = if i + 1 == r { 1 } else { 0 };
            ratio(rng.gen_range(lo..12), rng.gen_range(1..7))
        })
        .collect()
}

/// Nonzero rational in `[-6, 6]`.
pub fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = ratio(rng.gen_range(-30..=30), rng.gen_range(1..6));
        if !v.is_zero() {
            return v;
        }
    }
}

/// Berlekamp-Massey over the rationals: the shortest `(lambda_0..lambda_(L-1))`
/// with `s_(n+1) = sum_i lambda_i s_(n-i)` for every index covered by `s`.
/// Only meaningful when `s.len() >= 2L`.
pub fn berlekamp_massey(s: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Rational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Rational::zero());
    c[1..].iter().map(|x| -x).collect()
}

/// `lambda` with characteristic polynomial `prod (x - root)`, expanded
/// by elementary symmetric functions.
pub fn char_from_roots(roots: &[Rational]) -> Vec<Rational> {
    // e[j] = e_j(roots seen so far)
    let mut e = vec![Rational::one()];
    for root in roots {
        e.push(Rational::zero());
        for j in (1..e.len()).rev() {
            let prev = e[j - 1].clone();
            e[j] += root * prev;
        }
    }
    (1..e.len())
        .map(|j| if j % 2 == 1 { e[j].clone() } else { -e[j].clone() })
        .collect()
}

/// Bases `p^a q^b`, `1 <= a + b <= k`.
pub fn pq_bases(p: &Rational, q: &Rational, k: usize) -> Vec<Rational> {
    let pw = |x: &Rational, e: usize| (0..e).fold(Rational::one(), |acc, _| acc * x);
    (1..=k)
        .flat_map(|d| (0..=d).map(move |a| (a, d - a)))
        .map(|(a, b)| pw(p, a) * pw(q, b))
        .collect()
}

/// Value at `x` of the interpolating polynomial through `(xs[i], ys[i])`.
pub fn lagrange_at(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                term = term * (x - xj) / (xi - xj);
            }
        }
        total += term;
    }
    total
}

/// Energies or structure-function values from first principles.
pub fn direct_sequence(sf: &StructureFunction, energy: bool, len: usize) -> Vec<Rational> {
    (0..len as u64)
        .map(|n| if energy { sf.energy(n) } else { sf.phi(n) })
        .collect()
}

/// Reference values computed once by an independent computer-algebra
/// expansion of `prod (x - base)` over the exponential bases of each family.
pub mod frozen {
    use super::*;

    pub fn pentanacci(p: &str, q: &str) -> Option<Vec<Rational>> {
        let v: &[&str] = match (p, q) {
            ("2", "3") => &["24", "-215", "900", "-1764", "1296"],
            ("1/2", "3") => &["57/4", "-221/4", "1215/16", "-36", "81/16"],
            ("3/5", "7/2") => &[
                "1881/100",
                "-46651/500",
                "1668051/10000",
                "-257103/2500",
                "194481/10000",
            ],
            _ => return None,
        };
        Some(rats(v))
    }

    pub fn ninebonacci(p: &str, q: &str) -> Option<Vec<Rational>> {
        let v: &[&str] = match (p, q) {
            ("2", "3") => &[
                "89",
                "-3257",
                "64483",
                "-762510",
                "5588100",
                "-25365528",
                "68677632",
                "-100497024",
                "60466176",
            ],
            ("1", "2") => &[
                "25", "-257", "1439", "-4866", "10356", "-13928", "11456", "-5248", "1024",
            ],
            ("1", "3/2") => &[
                "123/8",
                "-1641/16",
                "49943/128",
                "-239121/256",
                "747927/512",
                "-1529739/1024",
                "987309/1024",
                "-365229/1024",
                "59049/1024",
            ],
            _ => return None,
        };
        Some(rats(v))
    }

    /// First and last coefficient of the order-14 relation at `(2, 3)`.
    pub const QUARTIC_PQ_2_3_ENDS: (&str, &str) = ("300", "-3656158440062976");

    pub fn kbonacci_q(k: usize, q: &str) -> Option<Vec<Rational>> {
        let v: &[&str] = match (k, q) {
            (3, "1/2") => &["7/4", "-7/8", "1/8"],
            (4, "1/2") => &["15/8", "-35/32", "15/64", "-1/64"],
            (5, "1/2") => &["31/16", "-155/128", "155/512", "-31/1024", "1/1024"],
            (6, "1/2") => &["63/32", "-651/512", "1395/4096", "-651/16384", "63/32768", "-1/32768"],
            (3, "2/3") => &["19/9", "-38/27", "8/27"],
            (4, "2/3") => &["65/27", "-494/243", "520/729", "-64/729"],
            (5, "2/3") => &["211/81", "-5486/2187", "21944/19683", "-13504/59049", "1024/59049"],
            (6, "2/3") => &[
                "665/243",
                "-56126/19683",
                "768040/531441",
                "-1796032/4782969",
                "680960/14348907",
                "-32768/14348907",
            ],
            (3, "2") => &["7", "-14", "8"],
            (4, "2") => &["15", "-70", "120", "-64"],
            (5, "2") => &["31", "-310", "1240", "-1984", "1024"],
            (6, "2") => &["63", "-1302", "11160", "-41664", "64512", "-32768"],
            _ => return None,
        };
        Some(rats(v))
    }

    /// Ratio-method pair for `phi = n + n^2` at `n = 2`.
    pub const QUASI_RATIO_QUADRATIC_N2: (&str, &str) = ("8/3", "-2");

    /// `kbonacci spectrum --bracket classical --mu 1 --n-max 2 --format csv`.
    pub const SPECTRUM_CSV: &str = "n,phi,energy\n0,0,1\n1,2,4\n2,6,9\n";
}
