//! Determining-equation polynomials in the stage parameters.
//!
//! [`g_plain`] and [`g_tilde`] give the coefficient of `R_{i_1}⋯R_{i_n}` in
//! the normalized time-ordered, symmetrized expansion. [`ps_oracle`]
//! computes the same coefficients by brute force and [`normal_order_form`]
//! through the normal-ordered product representation; the three are kept
//! independent so they can check each other.

mod formula;
mod normal_order;
mod oracle;
pub mod poly;
pub mod stage_sums;

pub use formula::{block_sums, compositions, esum, f_simplified, g_plain, g_tilde, g_for_scheme};
pub use normal_order::{normal_order_form, normal_order_term, FactorChoice};
pub use oracle::{ps_oracle, ORACLE_MAX_FACTORS, ORACLE_MAX_STAGES};
pub use poly::{format_rational, parse_rational, ratio, Exponents, ParamPoly};
pub use stage_sums::{
    ab_two_var, c_module, check_congruence, coset_reduce, d_module, mod_d9_relation,
    stage_a, stage_b, tenth_order_report, AbKind, Congruence, CosetReduction,
    TenthOrderReport,
};

use num_traits::One;

use crate::Rational;

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k.into()))
}

/// `1 / (t_1! t_2! ⋯)`.
pub(crate) fn inverse_factorial_product(parts: &[usize]) -> Rational {
    parts
        .iter()
        .fold(Rational::one(), |acc, &t| acc / factorial(t))
}
