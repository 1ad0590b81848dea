use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;

use super::{factorial, ParamPoly};
use crate::conditions::ConditionMultiset;
use crate::{Error, Rational, Result};

pub const ORACLE_MAX_FACTORS: usize = 6;
pub const ORACLE_MAX_STAGES: usize = 4;

/// Brute-force expansion of `PS(Y_1^{n_1} Y_2^{n_2} ⋯) / (n_1! n_2! ⋯)`
/// with `Y_j = Σ_k p_k^j R_{jk}`.
///
/// Every assignment of a stage to each of the `n` factors is enumerated.
/// The factors are then time-ordered by stage (stable) and each equal-stage
/// block is averaged over all of its orderings. With `tilde`, stage `k`
/// carries `R_{jk} = (-1)^{(j-1)(k-1)} R_j`. Returns the coefficient
/// polynomial of every operator word that occurs.
pub fn ps_oracle(
    content: &ConditionMultiset,
    r: usize,
    tilde: bool,
) -> Result<BTreeMap<Vec<u32>, ParamPoly>> {
    let n = content.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty content".into()));
    }
    if n > ORACLE_MAX_FACTORS || r > ORACLE_MAX_STAGES || r == 0 {
        return Err(Error::CostGuard(format!(
            "oracle needs 1 <= r <= {ORACLE_MAX_STAGES} and n <= {ORACLE_MAX_FACTORS} (got r={r}, n={n})"
        )));
    }
    let factors: Vec<u32> = content
        .content()
        .iter()
        .flat_map(|(&g, &c)| std::iter::repeat_n(g, c))
        .collect();
    let norm = Rational::from_integer(content.factorial_product().into());

    let mut out: BTreeMap<Vec<u32>, ParamPoly> = BTreeMap::new();
    for stages in (0..n).map(|_| 0..r).multi_cartesian_product() {
        let mut e = vec![0u32; r];
        let mut negative = false;
        for (&g, &k) in factors.iter().zip(&stages) {
            e[k] += g;
            negative ^= tilde && ((g - 1) as usize * k) % 2 == 1;
        }
        let sign = if negative { -Rational::one() } else { Rational::one() };

        // P: stable reorder by stage.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&f| stages[f]);
        let blocks: Vec<Vec<u32>> = order
            .iter()
            .chunk_by(|&&f| stages[f])
            .into_iter()
            .map(|(_, fs)| fs.map(|&f| factors[f]).collect())
            .collect();

        // S: average each block over its orderings.
        let mut words: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), sign / &norm)];
        for block in &blocks {
            let w = factorial(block.len()).recip();
            let mut next = Vec::new();
            for perm in block.iter().permutations(block.len()) {
                for (prefix, c) in &words {
                    let mut word = prefix.clone();
                    word.extend(perm.iter().copied());
                    next.push((word, c * &w));
                }
            }
            words = next;
        }
        for (word, c) in words {
            out.entry(word)
                .or_insert_with(|| ParamPoly::zero(r))
                .add_term(e.clone(), c);
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}
