use itertools::Itertools;
use num_traits::One;

use super::{factorial, ParamPoly};
use crate::{Error, Rational, Result};

/// Which term is taken from factor `s` of the normal-ordered product:
/// the leading `1` or `p_{k_s}^{i_s + ⋯ + i_{s+u-1}} / u!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorChoice {
    Unit,
    Run(usize),
}

/// Contribution of one choice of terms from the normal-ordered product
/// `:(Σ_u p_{k_1}^{…}/u!)(1 + Σ_u p_{k_2}^{…}/u!)⋯(1 + p_{k_n}^{i_n}):`.
///
/// A term contributes only when every exponent `i_j` appears exactly once.
/// Surviving terms are summed over strictly increasing stage indices of the
/// non-unit factors. With `tilde`, each factor picks up
/// `(-1)^{(i_s+⋯-u) k_s}` and the product `(-1)^{M-n}`.
pub fn normal_order_term(
    idx: &[u32],
    choices: &[FactorChoice],
    r: usize,
    tilde: bool,
) -> Result<ParamPoly> {
    let n = idx.len();
    if choices.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} factor choices for {n} indices",
            choices.len()
        )));
    }
    if choices[0] == FactorChoice::Unit {
        return Err(Error::InvalidArgument("the first factor has no unit term".into()));
    }
    let mut runs: Vec<(u32, usize)> = Vec::new();
    let mut covered = 0;
    for (s, &c) in choices.iter().enumerate() {
        let FactorChoice::Run(u) = c else { continue };
        if u == 0 || s + u > n {
            return Err(Error::InvalidArgument(format!(
                "factor {} has no run of length {u}",
                s + 1
            )));
        }
        if s != covered {
            // repeats or skips an exponent
            return Ok(ParamPoly::zero(r));
        }
        covered = s + u;
        runs.push((idx[s..s + u].iter().sum(), u));
    }
    if covered != n {
        return Ok(ParamPoly::zero(r));
    }

    let mut coeff = runs
        .iter()
        .fold(Rational::one(), |acc, &(_, u)| acc / factorial(u));
    if tilde {
        let total: u32 = idx.iter().sum();
        if (total as usize - n) % 2 == 1 {
            coeff = -coeff;
        }
    }
    let mut out = ParamPoly::zero(r);
    for ks in (0..r).combinations(runs.len()) {
        let mut e = vec![0; r];
        let mut negative = false;
        for (&(sum, u), &k) in runs.iter().zip(&ks) {
            e[k] += sum;
            negative ^= tilde && ((sum as usize - u) * (k + 1)) % 2 == 1;
        }
        out.add_term(e, if negative { -coeff.clone() } else { coeff.clone() });
    }
    Ok(out)
}

/// Full expansion of the normal-ordered product over every choice of terms.
pub fn normal_order_form(idx: &[u32], r: usize, tilde: bool) -> Result<ParamPoly> {
    let n = idx.len();
    if n == 0 {
        return Err(Error::InvalidArgument("index sequence must be nonempty".into()));
    }
    let options: Vec<Vec<FactorChoice>> = (0..n)
        .map(|s| {
            let first = (s > 0).then_some(FactorChoice::Unit);
            first
                .into_iter()
                .chain((1..=n - s).map(FactorChoice::Run))
                .collect()
        })
        .collect();
    let mut out = ParamPoly::zero(r);
    for choice in options.into_iter().multi_cartesian_product() {
        out += &normal_order_term(idx, &choice, r, tilde)?;
    }
    Ok(out)
}
