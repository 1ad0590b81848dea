//! Closed-form coefficients of the correction-operator expansion against
//! brute-force stage enumeration.

use splitgen::coeffs::{f_simplified, g_plain, g_tilde, ps_oracle, ParamPoly};
use splitgen::conditions::{ConditionMultiset, Scheme};

fn main() -> splitgen::Result<()> {
    let r = 3;
    let content = ConditionMultiset::of_indices(&[1, 1, 3]);
    for tilde in [false, true] {
        let oracle = ps_oracle(&content, r, tilde)?;
        println!("tilde = {tilde}");
        for idx in [[1, 1, 3], [1, 3, 1], [3, 1, 1]] {
            let closed = if tilde { g_tilde(&idx, r) } else { g_plain(&idx, r) };
            let brute = oracle.get(idx.as_slice()).cloned().unwrap_or_else(|| ParamPoly::zero(r));
            let agree = if closed == brute { "agree" } else { "DIFFER" };
            println!("  g{idx:?}: {agree}, {} terms", closed.num_terms());
        }
    }

    println!("\nsimplified symmetric forms, r = {r}");
    for idx in [vec![3], vec![1, 1, 3], vec![1, 3, 1]] {
        println!("  f{idx:?} = {}", f_simplified(&idx, Scheme::Symmetric, r)?);
    }
    Ok(())
}
