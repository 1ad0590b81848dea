//! Dimension counting for free Lie algebras.
//!
//! All arithmetic is exact. `i128` holds every multinomial reached for
//! degrees up to 30, far past any order this crate can solve.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::conditions::{condition_multisets, Scheme};
use crate::{Error, Rational, Result};

/// Möbius function.
pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined for positive integers");
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

fn multinomial(parts: &[u64]) -> i128 {
    let mut total = 0u64;
    let mut acc: i128 = 1;
    for &k in parts {
        for i in 1..=k {
            total += 1;
            acc = acc * total as i128 / i as i128;
        }
    }
    acc
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    multinomial(&[k, n - k])
}

/// Dimension of the degree-`n` part of the free Lie algebra on `r`
/// generators, `(1/n) Σ_{d|n} μ(d) r^{n/d}`.
pub fn witt_count(r: u64, n: u64) -> u128 {
    assert!(r >= 1 && n >= 1, "witt_count needs r >= 1 and n >= 1");
    let sum: i128 = divisors(n)
        .map(|d| mobius(d) as i128 * (r as i128).pow((n / d) as u32))
        .sum();
    (sum / n as i128) as u128
}

/// Dimension of the multidegree `(n_1, ..., n_r)` part of the free Lie
/// algebra. Zero entries are allowed; the empty multidegree has dimension 0.
pub fn witt_multi(multidegree: &[u64]) -> u128 {
    let nonzero: Vec<u64> = multidegree.iter().copied().filter(|&n| n > 0).collect();
    let total: u64 = nonzero.iter().sum();
    if total == 0 {
        return 0;
    }
    let g = nonzero.iter().fold(0u64, |acc, &n| acc.gcd(&n));
    let sum: i128 = divisors(g)
        .map(|d| {
            let scaled: Vec<u64> = nonzero.iter().map(|n| n / d).collect();
            mobius(d) as i128 * multinomial(&scaled)
        })
        .sum();
    (sum / total as i128) as u128
}

/// Either kind of Witt query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountQuery {
    RankDegree { r: u64, n: u64 },
    Multidegree(Vec<u64>),
}

impl CountQuery {
    pub fn count(&self) -> u128 {
        match self {
            CountQuery::RankDegree { r, n } => witt_count(*r, *n),
            CountQuery::Multidegree(ns) => witt_multi(ns),
        }
    }
}

/// Minimal number of stage parameters for order `m`:
/// one plus the Witt dimension of every multiset in the cumulative
/// condition set through order `m`.
pub fn s_min(scheme: Scheme, m: usize) -> Result<u128> {
    let sets = condition_multisets(scheme, m)?;
    Ok(1 + sets
        .iter()
        .map(|ms| witt_multi(&ms.multiplicities()))
        .sum::<u128>())
}

/// Dimension identities that serve as independent cross-checks of
/// [`witt_multi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `Σ_{Σ_l (1+(l-1)k) n_l = m} M(n) = Σ_{j=1}^{⌊m/k⌋} M(m-kj, j)`.
    Stride { k: u64, m: u64 },
    /// `Σ_{n_1+2n_2+...+m n_m = m} M(n) = M_2(m)`.
    AllGrades { m: u64 },
    /// `Σ_{Σ_l (2l-1) n_l = m} M(n) = Σ_{j=1}^{⌊m/2⌋} M(m-2j, j)`.
    OddGrades { m: u64 },
    /// For prime `p`: `Σ_{Σ k_i n_i = p} M(n) = Σ (Σn)!/(Σn · Π n_i!)` over
    /// multidegrees whose entries are coprime.
    PrimeWeights { weights: Vec<u64>, p: u64 },
    /// For prime `p`: `Σ_j M(p-2j, j) = Σ_j C(p-j, j)/(p-j)`.
    PrimeTwoGrades { p: u64 },
}

/// All multiplicity vectors `n` (one entry per weight) with `Σ w_i n_i = m`.
fn weighted_compositions(weights: &[u64], m: u64) -> Vec<Vec<u64>> {
    fn rec(weights: &[u64], left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[cur.len()];
        for n in 0..=left / w {
            cur.push(n);
            rec(weights, left - n * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, m, &mut Vec::new(), &mut out);
    out
}

fn sum_witt_over(weights: &[u64], m: u64) -> i128 {
    weighted_compositions(weights, m)
        .iter()
        .map(|n| witt_multi(n) as i128)
        .sum()
}

fn integral(q: Rational) -> Result<i128> {
    if !q.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "right side {q} is not an integer"
        )));
    }
    q.to_integer()
        .to_i128()
        .ok_or_else(|| Error::InvalidArgument("right side overflows".into()))
}

/// Evaluates both sides of a dimension identity independently:
/// the left side by enumerating constrained multidegrees, the right side by
/// its closed form.
///
/// For `m <= k` the two sides differ by the lone generator of grade `k`, so
/// those orders are rejected.
pub fn corollary_identity(id: &Identity) -> Result<(i128, i128)> {
    match id {
        Identity::Stride { k, m } => {
            if *k == 0 || *m <= *k {
                return Err(Error::InvalidArgument("Stride needs k >= 1 and m > k".into()));
            }
            let weights: Vec<u64> = (1..)
                .map(|l| 1 + (l - 1) * k)
                .take_while(|w| w <= m)
                .collect();
            let lhs = sum_witt_over(&weights, *m);
            let rhs = (1..=m / k).map(|j| witt_multi(&[m - k * j, j]) as i128).sum();
            Ok((lhs, rhs))
        }
        Identity::AllGrades { m } => {
            if *m < 2 {
                return Err(Error::InvalidArgument("AllGrades needs m >= 2".into()));
            }
            let weights: Vec<u64> = (1..=*m).collect();
            Ok((sum_witt_over(&weights, *m), witt_count(2, *m) as i128))
        }
        Identity::OddGrades { m } => {
            if *m < 3 {
                return Err(Error::InvalidArgument("OddGrades needs m >= 3".into()));
            }
            let weights: Vec<u64> = (1..).map(|l| 2 * l - 1).take_while(|w| w <= m).collect();
            let lhs = sum_witt_over(&weights, *m);
            let rhs = (1..=m / 2).map(|j| witt_multi(&[m - 2 * j, j]) as i128).sum();
            Ok((lhs, rhs))
        }
        Identity::PrimeWeights { weights, p } => {
            if !is_prime(*p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            if weights.is_empty() || weights.contains(&0) {
                return Err(Error::InvalidArgument("weights must be positive".into()));
            }
            let comps = weighted_compositions(weights, *p);
            let lhs = comps.iter().map(|n| witt_multi(n) as i128).sum();
            let mut rhs = Rational::zero();
            for n in &comps {
                let g = n.iter().fold(0u64, |acc, &x| acc.gcd(&x));
                if g != 1 {
                    continue;
                }
                let total: u64 = n.iter().sum();
                rhs += Rational::new(multinomial(n).into(), (total as i128).into());
            }
            Ok((lhs, integral(rhs)?))
        }
        Identity::PrimeTwoGrades { p } => {
            if !is_prime(*p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            let lhs = (1..=p / 2).map(|j| witt_multi(&[p - 2 * j, j]) as i128).sum();
            let mut rhs = Rational::zero();
            for j in 1..=p / 2 {
                rhs += Rational::new(binomial(p - j, j).into(), ((p - j) as i128).into());
            }
            Ok((lhs, integral(rhs)?))
        }
    }
}
