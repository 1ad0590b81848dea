//! `a`/`b` stage functions and coset reduction modulo lower
//! modules of simplified coefficients.

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{f_simplified, ratio, ParamPoly};
use crate::conditions::Scheme;
use crate::{Error, Rational, Result};

fn check_stage(k: usize, r: usize) -> Result<()> {
    if k == 0 || k > r {
        return Err(Error::InvalidArgument(format!(
            "stage index {k} outside 1..={r}"
        )));
    }
    Ok(())
}

fn pow_var(r: usize, j: usize, e: u32) -> ParamPoly {
    let mut v = vec![0; r];
    v[j] = e;
    ParamPoly::monomial(v, Rational::one())
}

/// `a_{αk} = Σ_{j<k} p_j^α + ½ p_k^α` (stage `k` one-based).
pub fn stage_a(alpha: u32, k: usize, r: usize) -> Result<ParamPoly> {
    check_stage(k, r)?;
    let mut out = ParamPoly::zero(r);
    for j in 0..k - 1 {
        out += &pow_var(r, j, alpha);
    }
    out += &pow_var(r, k - 1, alpha).scale(&ratio(1, 2));
    Ok(out)
}

/// `b_{βk} = Σ_{j>k} p_j^β + ½ p_k^β`.
pub fn stage_b(beta: u32, k: usize, r: usize) -> Result<ParamPoly> {
    check_stage(k, r)?;
    let mut out = ParamPoly::zero(r);
    for j in k..r {
        out += &pow_var(r, j, beta);
    }
    out += &pow_var(r, k - 1, beta).scale(&ratio(1, 2));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbKind {
    A,
    B,
}

/// Two-variable functions `a_k[α,β]` and `b_k[α,β]`.
///
/// `a_k[α,β] = Σ_{i<j<k} p_i^α p_j^β + ½ Σ_{j<k} p_j^α p_k^β
///            + ½ Σ_{j<k} p_j^{α+β} + ⅛ p_k^{α+β}`,
/// and `b` uses the mirrored ranges `k<i<j`, `k<j`.
pub fn ab_two_var(kind: AbKind, k: usize, alpha: u32, beta: u32, r: usize) -> Result<ParamPoly> {
    check_stage(k, r)?;
    let k0 = k - 1;
    let half = ratio(1, 2);
    let mut out = ParamPoly::zero(r);
    let range: Vec<usize> = match kind {
        AbKind::A => (0..k0).collect(),
        AbKind::B => (k0 + 1..r).collect(),
    };
    for (&i, &j) in range.iter().tuple_combinations() {
        out += &(&pow_var(r, i, alpha) * &pow_var(r, j, beta));
    }
    for &j in &range {
        let cross = match kind {
            AbKind::A => &pow_var(r, j, alpha) * &pow_var(r, k0, beta),
            AbKind::B => &pow_var(r, k0, alpha) * &pow_var(r, j, beta),
        };
        out += &cross.scale(&half);
        out += &pow_var(r, j, alpha + beta).scale(&half);
    }
    out += &pow_var(r, k0, alpha + beta).scale(&ratio(1, 8));
    Ok(out)
}

/// Result of [`coset_reduce`]. `coordinates` holds one solution of
/// `target = Σ c_i gen_i` when the target is in the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReduction {
    pub member: bool,
    pub coordinates: Option<Vec<Rational>>,
}

/// Decides whether `target` lies in the rational span of `generators` by
/// exact elimination over monomial coordinates.
pub fn coset_reduce(target: &ParamPoly, generators: &[ParamPoly]) -> Result<CosetReduction> {
    let r = target.num_vars();
    let mut degree = None;
    for p in std::iter::once(target).chain(generators) {
        if p.num_vars() != r {
            return Err(Error::ShapeMismatch(format!(
                "polynomials over {} and {r} variables",
                p.num_vars()
            )));
        }
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree().ok_or_else(|| {
            Error::InvalidArgument(format!("polynomial {p} is not homogeneous"))
        })?;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::InvalidArgument(format!(
                    "degree mismatch: {e} and {d}"
                )))
            }
            _ => {}
        }
    }

    let monomials: Vec<&Vec<u32>> = std::iter::once(target)
        .chain(generators)
        .flat_map(|p| p.terms().map(|(e, _)| e))
        .sorted()
        .dedup()
        .collect();
    let cols = generators.len();
    // augmented matrix: one row per monomial, last column is the target
    let mut rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|e| {
            generators
                .iter()
                .chain(std::iter::once(target))
                .map(|p| p.coefficient(e))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(found) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, found);
        let inv = rows[row][col].recip();
        for v in rows[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i == row || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..=cols {
                let delta = &factor * &rows[row][j];
                rows[i][j] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let consistent = rows[row..].iter().all(|r| r[cols].is_zero());
    if !consistent {
        return Ok(CosetReduction {
            member: false,
            coordinates: None,
        });
    }
    let mut coords = vec![Rational::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        coords[col] = rows[i][cols].clone();
    }
    Ok(CosetReduction {
        member: true,
        coordinates: Some(coords),
    })
}

/// Generators of `C_m`: `f(m)`.
pub fn c_module(m: u32, r: usize) -> Vec<ParamPoly> {
    vec![ParamPoly::power_sum(r, m)]
}

/// Generators of `D_m`: `f(m)` and the symmetric-scheme `f(α,β,γ)` over odd
/// `α+β+γ = m`.
pub fn d_module(m: u32, r: usize) -> Result<Vec<ParamPoly>> {
    let mut gens = c_module(m, r);
    for a in (1..m).step_by(2) {
        for b in (1..m).step_by(2) {
            if a + b >= m {
                continue;
            }
            let c = m - a - b;
            if c % 2 == 1 {
                gens.push(f_simplified(&[a, b, c], Scheme::Symmetric, r)?);
            }
        }
    }
    Ok(gens)
}

/// A coset congruence of stage sums. Exponent tuples are
/// `(α,β,γ)` for the three-factor forms and `(i_1,…,i_5)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Congruence {
    /// `Σ_k a_α a_β a_γ ≡ 0 mod C_m`.
    Aaa([u32; 3]),
    /// `Σ_k a_α p_k^β b_γ ≡ f(α,β,γ) mod C_m`.
    ApB([u32; 3]),
    /// `Σ_k a_{i1}⋯a_{i5} ≡ 0 mod D_m`.
    Aaaaa([u32; 5]),
    /// `Σ_k a_{i1}⋯a_{i4} p_k^{i5} ≡ Σ_{S_4} f(i_σ1..i_σ4, i5) mod D_m`.
    AaaaP([u32; 5]),
    /// `Σ_k a_{i1}a_{i2}a_{i3} p_k^{i4} b_{i5} ≡ Σ_{S_3} f(…, i4, i5) mod D_m`.
    AaapB([u32; 5]),
    /// `Σ_k a_{i1}a_{i2} p_k^{i3} b_{i4}b_{i5} ≡ Σ_X f(…) mod D_m`.
    AapBb([u32; 5]),
}

/// Outcome of [`check_congruence`]: `member` is the coset claim; `mirror`
/// the claimed equality of the `a`-form with its `b`-form, checked under
/// the symmetric ties `p_{r+1-j} = p_j` (absent for forms without one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceOutcome {
    pub member: bool,
    pub mirror: Option<bool>,
}

fn product(polys: &[ParamPoly], r: usize) -> ParamPoly {
    polys
        .iter()
        .fold(ParamPoly::constant(r, Rational::one()), |acc, p| &acc * p)
}

/// `Σ_k Π a_{α k} · p_k^s · Π b_{β k}`.
fn stage_sum(a: &[u32], s: Option<u32>, b: &[u32], r: usize) -> Result<ParamPoly> {
    let mut out = ParamPoly::zero(r);
    for k in 1..=r {
        let mut factors = Vec::new();
        for &x in a {
            factors.push(stage_a(x, k, r)?);
        }
        if let Some(s) = s {
            factors.push(pow_var(r, k - 1, s));
        }
        for &x in b {
            factors.push(stage_b(x, k, r)?);
        }
        out += &product(&factors, r);
    }
    Ok(out)
}

fn sym_f(idx: &[u32], r: usize) -> Result<ParamPoly> {
    f_simplified(idx, Scheme::Symmetric, r)
}

fn tie(p: &ParamPoly) -> Result<ParamPoly> {
    let r = p.num_vars();
    let map: Vec<usize> = (0..r).map(|j| j.min(r - 1 - j)).collect();
    p.substitute_vars(&map, r.div_ceil(2))
}

fn ties_equal(x: &ParamPoly, y: &ParamPoly) -> Result<bool> {
    Ok(tie(x)? == tie(y)?)
}

fn rev<const N: usize>(v: &[u32; N]) -> Vec<u32> {
    v.iter().rev().copied().collect()
}

/// Sum of `f` over all orderings of `head` followed by `tail`.
fn permuted_sum(head: &[u32], tail: &[u32], r: usize) -> Result<ParamPoly> {
    let mut out = ParamPoly::zero(r);
    for perm in head.iter().permutations(head.len()) {
        let idx: Vec<u32> = perm.into_iter().copied().chain(tail.iter().copied()).collect();
        out += &sym_f(&idx, r)?;
    }
    Ok(out)
}

/// Checks one congruence for `r` stages with exact linear algebra.
pub fn check_congruence(c: &Congruence, r: usize) -> Result<CongruenceOutcome> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one stage".into()));
    }
    let (lhs, expected, gens, mirror) = match c {
        Congruence::Aaa(e) => {
            let m = e.iter().sum();
            let lhs = stage_sum(e, None, &[], r)?;
            let mirror = stage_sum(&[], None, &rev(e), r)?;
            (lhs, ParamPoly::zero(r), c_module(m, r), Some(mirror))
        }
        Congruence::ApB([a, b, g]) => {
            let m = a + b + g;
            let lhs = stage_sum(&[*a], Some(*b), &[*g], r)?;
            (lhs, sym_f(&[*a, *b, *g], r)?, c_module(m, r), None)
        }
        Congruence::Aaaaa(e) => {
            let m = e.iter().sum();
            let lhs = stage_sum(e, None, &[], r)?;
            let mirror = stage_sum(&[], None, &rev(e), r)?;
            (lhs, ParamPoly::zero(r), d_module(m, r)?, Some(mirror))
        }
        Congruence::AaaaP(e) => {
            let m = e.iter().sum();
            let lhs = stage_sum(&e[..4], Some(e[4]), &[], r)?;
            let mirror = stage_sum(&[], Some(e[4]), &rev(e)[1..], r)?;
            let expected = permuted_sum(&e[..4], &e[4..], r)?;
            (lhs, expected, d_module(m, r)?, Some(mirror))
        }
        Congruence::AaapB(e) => {
            let m = e.iter().sum();
            let lhs = stage_sum(&e[..3], Some(e[3]), &e[4..], r)?;
            let mirror = stage_sum(&e[4..], Some(e[3]), &rev(e)[2..], r)?;
            let expected = permuted_sum(&e[..3], &e[3..], r)?;
            (lhs, expected, d_module(m, r)?, Some(mirror))
        }
        Congruence::AapBb(e) => {
            let m = e.iter().sum();
            let lhs = stage_sum(&e[..2], Some(e[2]), &e[3..], r)?;
            let mut expected = ParamPoly::zero(r);
            for (x, y) in [(e[0], e[1]), (e[1], e[0])] {
                for (u, v) in [(e[3], e[4]), (e[4], e[3])] {
                    expected += &sym_f(&[x, y, e[2], u, v], r)?;
                }
            }
            (lhs, expected, d_module(m, r)?, None)
        }
    };
    let member = coset_reduce(&(&lhs - &expected), &gens)?.member;
    let mirror = match mirror {
        Some(m) => Some(ties_equal(&lhs, &m)?),
        None => None,
    };
    Ok(CongruenceOutcome { member, mirror })
}

/// `Σ_k a_k[1]² p_k³ b_k[1,3] - 2 f(1,1,3,1,3)` lies in `D_9`.
pub fn mod_d9_relation(r: usize) -> Result<bool> {
    let mut lhs = ParamPoly::zero(r);
    for k in 1..=r {
        let a = stage_a(1, k, r)?;
        let b = ab_two_var(AbKind::B, k, 1, 3, r)?;
        lhs += &product(&[a.clone(), a, pow_var(r, k - 1, 3), b], r);
    }
    let target = &lhs - &sym_f(&[1, 1, 3, 1, 3], r)?.scale(&ratio(2, 1));
    Ok(coset_reduce(&target, &d_module(9, r)?)?.member)
}

/// Exploratory look at the ninth-order content `{1:3, 3:2}`: how much of
/// the span of `β₁ = f(1,1,1,3,3)` and `β₂ = f(1,1,3,1,3)` the one-variable
/// `a`/`b` stage sums reach modulo `D_9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TenthOrderReport {
    pub stages: usize,
    /// Number of distinct `a⋯a p^s b⋯b` stage sums built from the content.
    pub expressions: usize,
    /// Rank they add on top of `D_9`.
    pub rank_mod_d9: usize,
    pub beta1_reached: bool,
    pub beta2_reached: bool,
}

fn rank(polys: &[ParamPoly]) -> Result<usize> {
    let mut basis: Vec<ParamPoly> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if !coset_reduce(p, &basis)?.member {
            basis.push(p.clone());
        }
    }
    Ok(basis.len())
}

pub fn tenth_order_report(r: usize) -> Result<TenthOrderReport> {
    let content = [1u32, 1, 1, 3, 3];
    let d9 = d_module(9, r)?;
    let mut exprs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for perm in content.iter().copied().permutations(5) {
        // pure a and pure b products
        for na in [5usize, 0] {
            let key = (na, None, sorted(&perm[..na]), sorted(&perm[na..]));
            if seen.insert(key) {
                let (a, b) = perm.split_at(na);
                exprs.push(stage_sum(a, None, b, r)?);
            }
        }
        for na in 0..5 {
            let (a, rest) = perm.split_at(na);
            let (s, b) = rest.split_first().expect("five factors");
            let key = (na, Some(*s), sorted(a), sorted(b));
            if seen.insert(key) {
                exprs.push(stage_sum(a, Some(*s), b, r)?);
            }
        }
    }
    let base = rank(&d9)?;
    let mut all = d9.clone();
    all.extend(exprs.iter().cloned());
    let total = rank(&all)?;
    let beta1 = sym_f(&[1, 1, 1, 3, 3], r)?;
    let beta2 = sym_f(&[1, 1, 3, 1, 3], r)?;
    Ok(TenthOrderReport {
        stages: r,
        expressions: exprs.len(),
        rank_mod_d9: total - base,
        beta1_reached: coset_reduce(&beta1, &all)?.member,
        beta2_reached: coset_reduce(&beta2, &all)?.member,
    })
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}
