//! Order of a six-factor exact ladder, exactly and from matrix products.
//! Run with a path to check another ladder file.

use splitgen::lyndon::GradedAlphabet;
use splitgen::solver::{verify_order_exact, verify_order_numeric, Ladder, DEFAULT_STEPS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/six_factor.json").to_string()
    });
    let ladder = Ladder::from_json(&std::fs::read_to_string(&path)?)?;
    println!("{ladder}");
    for m in 1..=4 {
        let v = verify_order_exact(&ladder, m)?;
        println!(
            "order {m}: {:<5} first defect {:?}",
            v.ok,
            v.first_defect_grade
        );
        if !v.ok {
            let ab = GradedAlphabet::uniform(&["A", "B"]);
            println!("  defect {}", v.defect.render(&ab));
            break;
        }
    }
    let fit = verify_order_numeric(&ladder, 4, 11, &DEFAULT_STEPS)?;
    println!("local error slope {:.3} over {:?}", fit.slope, fit.trial_slopes);
    Ok(())
}
