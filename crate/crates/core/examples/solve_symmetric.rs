//! Fourth-order symmetric composition of three Strang steps: build the
//! determining system, solve it and check the resulting ladder.

use splitgen::conditions::Scheme;
use splitgen::solver::{
    build_system, solve_newton_real, verify_order_approx, verify_order_numeric, Ladder,
    DEFAULT_STEPS,
};

fn main() -> splitgen::Result<()> {
    let sys = build_system(Scheme::Symmetric, 4, 3, true)?;
    for (i, p) in sys.reduced_polys()?.iter().enumerate() {
        println!("eq {i}: {p} = 0");
    }

    let sol = solve_newton_real(&sys, &[1.0, -1.0, 1.0], 1e-12, 100)?;
    println!("\n{} iterations, residual {:.1e}", sol.iterations, sol.residual);
    for (j, p) in sol.real_values().iter().enumerate() {
        println!("  p{} = {p:.15}", j + 1);
    }
    println!("closed form p1 = 1/(2 - 2^(1/3)) = {:.15}", 1.0 / (2.0 - 2f64.cbrt()));

    let ladder = Ladder::from_scheme(Scheme::Symmetric, &Ladder::coefs_from_complex(&sol.values))?;
    println!("\n{ladder}");
    let v = verify_order_approx(&ladder, 4, 1e-12)?;
    println!("order 4: {}, first defect at grade {:?}", v.ok, v.first_defect_grade);
    let fit = verify_order_numeric(&ladder, 4, 0, &DEFAULT_STEPS)?;
    println!("local error slope {:.3}", fit.slope);
    Ok(())
}
