//! Determining systems, numerical solution, and order verification of
//! concrete compositions.

mod ladder;
mod newton;
mod numeric;
mod series;
mod system;

pub use ladder::{Coef, Ladder, Op, Step};
pub use newton::{solve_newton, solve_newton_real, Solution};
pub use numeric::{verify_order_numeric, NumericFit, DEFAULT_STEPS};
pub use series::{
    expand_product, verify_order_approx, verify_order_exact, OrderVerdict, Scalar,
    TruncatedSeries, MAX_SERIES_GRADE,
};
pub use system::{build_system, build_system_with_ties, DeterminingSystem, Equation, Ties};
