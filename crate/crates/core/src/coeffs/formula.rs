use std::collections::HashMap;

use itertools::Itertools;
use num_traits::One;

use super::{inverse_factorial_product, ParamPoly};
use crate::conditions::Scheme;
use crate::{Error, Rational, Result};

/// All compositions `(t_1, ..., t_α)` of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=left {
            cur.push(first);
            rec(left - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Sums of `idx` over consecutive runs of lengths `parts`.
pub fn block_sums(idx: &[u32], parts: &[usize]) -> Vec<u32> {
    debug_assert_eq!(parts.iter().sum::<usize>(), idx.len());
    let mut pos = 0;
    parts
        .iter()
        .map(|&t| {
            let s = idx[pos..pos + t].iter().sum();
            pos += t;
            s
        })
        .collect()
}

/// `Σ_{k_1<⋯<k_α≤r} Π_β p_{k_β}^{e_β}`, optionally signed by
/// `Π_β (-1)^{(k_β-1) s_β}` (stage indices one-based).
pub fn esum(r: usize, exponents: &[u32], sign_parities: Option<&[u32]>) -> ParamPoly {
    let mut out = ParamPoly::zero(r);
    if exponents.len() > r {
        return out;
    }
    for ks in (0..r).combinations(exponents.len()) {
        let mut e = vec![0; r];
        let mut odd = false;
        for (beta, &k) in ks.iter().enumerate() {
            e[k] += exponents[beta];
            if let Some(s) = sign_parities {
                odd ^= (k as u32 * s[beta]) % 2 == 1;
            }
        }
        let c = if odd { -Rational::one() } else { Rational::one() };
        out.add_term(e, c);
    }
    out
}

fn g_impl(idx: &[u32], r: usize, tilde: bool) -> ParamPoly {
    let mut out = ParamPoly::zero(r);
    for t in compositions(idx.len()) {
        let blocks = block_sums(idx, &t);
        let parities: Vec<u32> = blocks
            .iter()
            .zip(&t)
            .map(|(&b, &tb)| b - tb as u32)
            .collect();
        let term = esum(r, &blocks, tilde.then_some(parities.as_slice()));
        out += &term.scale(&inverse_factorial_product(&t));
    }
    out
}

/// Coefficient `g(i_1, ..., i_n)` for stages `p_1..p_r` when every stage
/// carries the same operators `R_j`.
pub fn g_plain(idx: &[u32], r: usize) -> ParamPoly {
    assert!(!idx.is_empty(), "index sequence must be nonempty");
    g_impl(idx, r, false)
}

/// Coefficient `g(i_1, ..., i_n)` when stage `k` carries
/// `(-1)^{(j-1)(k-1)} R_j`, as in the alternating `F_1`/`F̃_1` scheme.
pub fn g_tilde(idx: &[u32], r: usize) -> ParamPoly {
    assert!(!idx.is_empty(), "index sequence must be nonempty");
    g_impl(idx, r, true)
}

/// [`g_tilde`] for tilde schemes, [`g_plain`] otherwise.
pub fn g_for_scheme(idx: &[u32], scheme: Scheme, r: usize) -> ParamPoly {
    if scheme.is_tilde() {
        g_tilde(idx, r)
    } else {
        g_plain(idx, r)
    }
}

#[derive(Clone, Copy)]
enum Rule {
    Complex,
    Tilde,
    Symmetric,
}

impl Rule {
    fn subtracts(self, parts: &[usize], n: usize) -> bool {
        let alpha = parts.len();
        match self {
            Rule::Complex => alpha < n,
            Rule::Tilde => alpha + 2 <= n && parts.iter().all(|t| t % 2 == 1),
            Rule::Symmetric => {
                alpha + 2 <= n && alpha % 2 == 1 && parts.iter().all(|t| t % 2 == 1)
            }
        }
    }
}

struct Simplifier {
    rule: Rule,
    tilde: bool,
    r: usize,
    memo: HashMap<Vec<u32>, ParamPoly>,
}

impl Simplifier {
    fn f(&mut self, idx: &[u32]) -> ParamPoly {
        if let Some(hit) = self.memo.get(idx) {
            return hit.clone();
        }
        let n = idx.len();
        let mut out = g_impl(idx, self.r, self.tilde);
        if n >= 2 {
            for t in compositions(n) {
                if !self.rule.subtracts(&t, n) {
                    continue;
                }
                let merged = block_sums(idx, &t);
                let sub = self.f(&merged).scale(&inverse_factorial_product(&t));
                out -= &sub;
            }
        }
        self.memo.insert(idx.to_vec(), out.clone());
        out
    }
}

/// Simplified coefficient `f(i_1, ..., i_n)`: `g` minus the scheme's
/// recursive lower-length corrections.
///
/// Defined for the nonsymmetric complex, nonsymmetric tilde and symmetric
/// schemes.
pub fn f_simplified(idx: &[u32], scheme: Scheme, r: usize) -> Result<ParamPoly> {
    if idx.is_empty() {
        return Err(Error::InvalidArgument("index sequence must be nonempty".into()));
    }
    let rule = match scheme {
        Scheme::NonsymmetricComplex => Rule::Complex,
        Scheme::NonsymmetricTilde => Rule::Tilde,
        Scheme::Symmetric => Rule::Symmetric,
        other => {
            return Err(Error::InvalidArgument(format!(
                "no simplified coefficients for scheme {}",
                other.name()
            )))
        }
    };
    let mut s = Simplifier {
        rule,
        tilde: scheme.is_tilde(),
        r,
        memo: HashMap::new(),
    };
    Ok(s.f(idx))
}
